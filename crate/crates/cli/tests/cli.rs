use std::process::{Command, Output};

use serde_json::Value;

fn wlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wlab"))
        .args(args)
        .output()
        .expect("spawn wlab")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn checks(v: &Value) -> Vec<&Value> {
    v["results"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["kind"] == "check")
        .collect()
}

#[test]
fn moebius_verify_henneberg_passes_three_laws() {
    let out = wlab(&["moebius-verify", "--surface", "henneberg", "--tol", "1e-8"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let names: Vec<&str> = checks(&v).iter().map(|c| c["check_name"].as_str().unwrap()).collect();
    assert_eq!(names, ["deck_invariance", "gauss_law", "f_law", "hopf_law"]);
    assert!(checks(&v).iter().all(|c| c["passed"] == true));
    let ids = v["results"].as_array().unwrap().last().unwrap();
    assert_eq!(ids["exact_identities"], serde_json::json!([true, true, true]));
}

#[test]
fn catenoid_fails_the_f_law_only() {
    let out = wlab(&["moebius-verify", "--surface", "catenoid"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let passed: Vec<bool> = checks(&v).iter().map(|c| c["passed"].as_bool().unwrap()).collect();
    // deck, Gauss, f, Hopf
    assert_eq!(passed, [false, true, false, false]);
}

#[test]
fn impossibility_certificate_concludes_c0_zero() {
    let out = wlab(&["impossibility", "--R", "2", "--c0", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let cert = &v["results"][0];
    assert_eq!(cert["kind"], "certificate");
    assert_eq!(cert["conclusion"], "C0 must be 0");
    assert_eq!(cert["verdict"], "inconsistent unless C0 = 0");
    assert_eq!(cert["mismatch_samples"].as_array().unwrap().len(), 16);
    assert_eq!(cert["R"].as_f64(), Some(2.0));
}

#[test]
fn impossibility_rejects_r_at_most_one() {
    let out = wlab(&["impossibility", "--R", "1", "--c0", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("`R`"));
}

#[test]
fn noncritical_catenoid_fails_free_boundary() {
    let out = wlab(&["check", "--surface", "catenoid", "--suite", "free-boundary"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let c = checks(&v);
    assert_eq!(c.len(), 1);
    assert_eq!(c[0]["check_name"], "free_boundary");
    assert_eq!(c[0]["passed"], false);
}

#[test]
fn free_boundary_surfaces_pass_every_suite() {
    for s in ["critical_catenoid", "equatorial_disk", "cerezo"] {
        let out = wlab(&["check", "--surface", s, "--suite", "all"]);
        assert_eq!(out.status.code(), Some(0), "{s}: {}", String::from_utf8_lossy(&out.stdout));
        assert_eq!(checks(&json(&out)).len(), 3);
    }
}

#[test]
fn report_shape() {
    let out = wlab(&["check", "--surface", "equatorial_disk", "--suite", "minimal"]);
    let v = json(&out);
    assert_eq!(v["version"], 1);
    assert_eq!(v["surface"], "equatorial_disk");
    let c = checks(&v)[0];
    for key in ["check_name", "samples", "max_residual", "tolerance", "passed", "worst_point"] {
        assert!(c.get(key).is_some(), "missing {key}");
    }
    // every float carries 17 significant digits
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"tolerance\": 1.0000000000000000e-4"), "{text}");
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = wlab(&["hopf", "--surface", "meeks", "--out", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
    }
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["check", "--surface", "klein_bottle"],
        &["check", "--surface", "henneberg", "--param", "scale=2"],
        &["check", "--surface", "henneberg", "--n-theta", "1"],
        &["check", "--surface", "henneberg", "--r-min", "3"],
        &["check", "--surface", "henneberg", "--tol-deck", "0"],
        &["eval", "--surface", "equatorial_disk", "--z", "1.5i"],
        &["moebius-verify", "--surface", "equatorial_disk"],
        &["steklov", "--L", "1", "--weights", "1,2", "--quotient", "moebius"],
        &["steklov", "--L", "1", "--max-mode", "2", "--count", "50"],
        &["steklov"],
        &["no-such-command"],
    ];
    for args in cases {
        let out = wlab(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    let out = wlab(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("moebius-verify"));
}

#[test]
fn henneberg_mesh_has_one_vertex_per_grid_point() {
    let dir = tempfile::tempdir().unwrap();
    let obj = dir.path().join("h.obj");
    let out = wlab(&[
        "mesh",
        "--surface",
        "henneberg",
        "--obj",
        obj.to_str().unwrap(),
        "--n-r",
        "16",
        "--n-theta",
        "64",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&obj).unwrap();
    let verts = text.lines().filter(|l| l.starts_with("v ")).count();
    let faces: Vec<&str> = text.lines().filter(|l| l.starts_with("f ")).collect();
    assert_eq!(verts, 1024);
    assert!(text.lines().all(|l| l.starts_with("v ") || l.starts_with("f ")));
    let v = json(&out);
    assert_eq!(v["results"][0]["vertices"], 1024);
    assert_eq!(v["results"][0]["faces"].as_u64().unwrap() as usize, faces.len());
    // the four branch points cut cells out of the surface
    assert!(v["results"][0]["dropped_faces"].as_u64().unwrap() > 0);
    for f in faces {
        for idx in f.split_whitespace().skip(1) {
            let k: usize = idx.parse().unwrap();
            assert!((1..=1024).contains(&k));
        }
    }
}

fn vertices(path: &std::path::Path) -> Vec<[f64; 3]> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter_map(|l| l.strip_prefix("v "))
        .map(|l| {
            let c: Vec<f64> = l.split_whitespace().map(|t| t.parse().unwrap()).collect();
            [c[0], c[1], c[2]]
        })
        .collect()
}

#[test]
fn meeks_mesh_is_finite_and_disk_mesh_is_flat() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.obj");
    let d = dir.path().join("d.obj");
    assert_eq!(wlab(&["mesh", "--surface", "meeks", "--obj", m.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(wlab(&["mesh", "--surface", "equatorial_disk", "--obj", d.to_str().unwrap()]).status.code(), Some(0));
    let mv = vertices(&m);
    assert_eq!(mv.len(), 8 * 32);
    assert!(mv.iter().all(|v| v.iter().all(|x| x.is_finite())));
    assert!(vertices(&d).iter().all(|v| v[2] == 0.0));
}

#[test]
fn steklov_csv_and_report_agree() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let out = wlab(&["steklov", "--R", "2", "--count", "7", "--csv", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let spec = &v["results"][0];
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(!text.contains('\r'));
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "index,sigma,mode,parity,multiplicity");
    let entries = spec["entries"].as_array().unwrap();
    assert_eq!(rows.len() - 1, entries.len());
    for (row, e) in rows[1..].iter().zip(entries) {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols[1].parse::<f64>().unwrap(), e["sigma"].as_f64().unwrap());
        assert_eq!(cols[3], e["parity"].as_str().unwrap());
    }
    // σ1 = 0.6 with multiplicity 2 for L = log 2 and unit weights
    assert!((spec["normalized_sigma1"].as_f64().unwrap() - 0.6 * 4.0 * std::f64::consts::PI).abs() < 1e-12);
    assert_eq!(spec["multiplicity1"], 2);
}

#[test]
fn disk_spectrum_normalizes_to_two_pi() {
    let out = wlab(&["steklov", "--disk"]);
    let v = json(&out);
    let s = v["results"][0]["normalized_sigma1"].as_f64().unwrap();
    assert!((s - 2.0 * std::f64::consts::PI).abs() < 1e-12);
}

#[test]
fn eval_reports_symbolic_and_oracle_hopf() {
    let out = wlab(&["eval", "--surface", "henneberg", "--z", "0.5,1.2"]);
    let v = json(&out);
    let e = &v["results"][0];
    assert_eq!(e["hopf_source"], "symbolic");
    assert!(e["conformal_factor"].as_f64().unwrap() > 0.0);
    // Henneberg: φ = (1 - z⁴)/(2z⁴)
    let z = (0.5f64, 1.2f64);
    let z2 = (z.0 * z.0 - z.1 * z.1, 2.0 * z.0 * z.1);
    let z4 = (z2.0 * z2.0 - z2.1 * z2.1, 2.0 * z2.0 * z2.1);
    let n = z4.0 * z4.0 + z4.1 * z4.1;
    let inv = (z4.0 / n, -z4.1 / n);
    let phi = (0.5 * inv.0 - 0.5, 0.5 * inv.1);
    assert!((e["hopf"][0].as_f64().unwrap() - phi.0).abs() < 1e-14);
    assert!((e["hopf"][1].as_f64().unwrap() - phi.1).abs() < 1e-14);

    let out = wlab(&["eval", "--surface", "cerezo", "--z", "0.3,0.2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"][0]["hopf_source"], "symbolic");
}

#[test]
fn fit_classifies_the_catalog() {
    let class = |s: &str| {
        let out = wlab(&["fit-c0", "--surface", s]);
        let v = json(&out);
        (out.status.code(), v["results"][0]["class"].as_str().unwrap().to_string())
    };
    assert_eq!(class("critical_catenoid"), (Some(0), "regular_free_of_umbilics".into()));
    assert_eq!(class("equatorial_disk"), (Some(0), "totally_geodesic".into()));
    assert_eq!(class("henneberg"), (Some(1), "not_free_boundary_form".into()));
}

#[test]
fn catalog_lists_every_surface() {
    let v = json(&wlab(&["catalog"]));
    assert_eq!(v["results"][0]["surfaces"].as_array().unwrap().len(), 6);
    let v = json(&wlab(&["catalog", "--surface", "catenoid", "--param", "scale=2"]));
    let params = &v["results"][0]["params"];
    assert_eq!(params[0]["name"], "scale");
    assert_eq!(params[0]["value"].as_f64(), Some(2.0));
}
