use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;


use super::Poly;
use crate::error::{Error, Result};
use crate::C64;
#[allow(unused_imports)]
use num_traits::Float;

/// Roots closer than this (relative to `max(1, |r|)`) are one cluster.
pub const CLUSTER_TOL: f64 = 1e-6;

const MAX_ABERTH_ITER: usize = 500;
/// Radius within which clusters are re-examined as one multiple root.
const MERGE_RADIUS: f64 = 1e-3;

/// A root together with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RootCluster {
    pub root: C64,
    pub multiplicity: u32,
}

impl fmt::Display for RootCluster {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (x{})", self.root, self.multiplicity)
    }
}

/// All roots of `p`, counted with multiplicity.
///
/// Roots at the origin are read off the vanishing low-order coefficients.
/// The rest come from an Aberth–Ehrlich simultaneous iteration; if that
/// stalls, the eigenvalues of the companion matrix are used instead. Each
/// returned root satisfies `|p(root)| <= tol * sum |a_k| |root|^k`.
pub fn poly_roots(p: &Poly<C64>, tol: f64) -> Result<Vec<RootCluster>> {
    let Some(_) = p.degree() else {
        return Err(Error::Convergence(format!("the zero polynomial has no root set")));
    };
    let k0 = p.low_order_zeros();
    let q = p.shift_down(k0);
    let mut clusters = Vec::new();
    if k0 > 0 {
        clusters.push(RootCluster {
            root: C64::new(0.0, 0.0),
            multiplicity: k0 as u32,
        });
    }
    let n = q.degree().unwrap_or(0);
    if n == 0 {
        return Ok(clusters);
    }

    let attempt = |raw: Option<Vec<C64>>| -> Option<Vec<RootCluster>> {
        let mut raw = raw?;
        for z in raw.iter_mut() {
            *z = polish(&q, *z);
        }
        let found = cluster(raw, &q);
        let ok = found
            .iter()
            .all(|c| q.eval_c64(c.root).norm() <= tol * q.magnitude_at(c.root));
        ok.then_some(found)
    };

    let found = attempt(aberth(&q))
        .or_else(|| attempt(companion_eigenvalues(&q)))
        .ok_or_else(|| {
            Error::Convergence(format!("no root set of degree {n} met tolerance {tol:e}"))
        })?;
    clusters.extend(found);
    clusters.sort_by(|a, b| {
        a.root
            .re
            .total_cmp(&b.root.re)
            .then(a.root.im.total_cmp(&b.root.im))
    });
    Ok(clusters)
}

fn aberth(p: &Poly<C64>) -> Option<Vec<C64>> {
    let n = p.degree()?;
    let dp = p.derivative();
    let a0 = p.coeffs()[0].norm();
    let an = p.coeffs()[n].norm();
    let radius = (a0 / an).powf(1.0 / n as f64);
    let mut z: Vec<C64> = (0..n)
        .map(|k| {
            let t = 2.0 * core::f64::consts::PI * k as f64 / n as f64 + 0.4;
            C64::from_polar(radius, t)
        })
        .collect();
    let mut done = vec![false; n];

    for _ in 0..MAX_ABERTH_ITER {
        let mut all = true;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let pz = p.eval_c64(z[k]);
            if pz.norm() <= 8.0 * f64::EPSILON * p.magnitude_at(z[k]) {
                done[k] = true;
                continue;
            }
            all = false;
            let dpz = dp.eval_c64(z[k]);
            let ratio = if dpz.norm() == 0.0 {
                C64::new(f64::EPSILON * (1.0 + z[k].norm()), 0.0)
            } else {
                pz / dpz
            };
            let mut s = C64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    let diff = z[k] - z[j];
                    if diff.norm() > 0.0 {
                        s += C64::new(1.0, 0.0) / diff;
                    }
                }
            }
            let w = ratio / (C64::new(1.0, 0.0) - ratio * s);
            if !w.is_finite() {
                return None;
            }
            z[k] -= w;
            if w.norm() <= 2.0 * f64::EPSILON * z[k].norm() {
                done[k] = true;
            }
        }
        if all {
            return Some(z);
        }
    }
    // Multiple roots converge linearly; accept iterates sitting at the
    // rounding floor even when the step test never fired.
    z.iter()
        .all(|&zk| p.eval_c64(zk).norm() <= 1e4 * f64::EPSILON * p.magnitude_at(zk))
        .then_some(z)
}

/// A few Newton steps, kept only while they reduce the residual.
fn polish(p: &Poly<C64>, mut z: C64) -> C64 {
    let dp = p.derivative();
    let mut best = p.eval_c64(z).norm();
    for _ in 0..3 {
        let d = dp.eval_c64(z);
        if d.norm() == 0.0 {
            break;
        }
        let cand = z - p.eval_c64(z) / d;
        let r = p.eval_c64(cand).norm();
        if r < best {
            best = r;
            z = cand;
        } else {
            break;
        }
    }
    z
}

fn cluster(roots: Vec<C64>, p: &Poly<C64>) -> Vec<RootCluster> {
    let n = roots.len();
    let mut group: Vec<usize> = (0..n).collect();
    fn find(g: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while g[r] != r {
            r = g[r];
        }
        g[i] = r;
        r
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let scale = roots[i].norm().max(1.0);
            if (roots[i] - roots[j]).norm() <= CLUSTER_TOL * scale {
                let (a, b) = (find(&mut group, i), find(&mut group, j));
                if a != b {
                    group[b] = a;
                }
            }
        }
    }
    let mut members: Vec<Vec<C64>> = Vec::new();
    let mut index_of: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let r = find(&mut group, i);
        match index_of[r] {
            Some(m) => members[m].push(roots[i]),
            None => {
                index_of[r] = Some(members.len());
                members.push(vec![roots[i]]);
            }
        }
    }

    // A root of multiplicity m is only resolved to about eps^(1/m); merge
    // nearby clusters whose spread is consistent with that.
    loop {
        let mut merged = false;
        'outer: for a in 0..members.len() {
            for b in (a + 1)..members.len() {
                let ca = mean(&members[a]);
                let cb = mean(&members[b]);
                if (ca - cb).norm() > MERGE_RADIUS * ca.norm().max(1.0) {
                    continue;
                }
                let mut all = members[a].clone();
                all.extend(members[b].iter().copied());
                if consistent_multiple_root(&all, p) {
                    members[a] = all;
                    members.remove(b);
                    merged = true;
                    break 'outer;
                }
            }
        }
        if !merged {
            break;
        }
    }

    members
        .iter()
        .map(|m| RootCluster {
            root: mean(m),
            multiplicity: m.len() as u32,
        })
        .collect()
}

fn mean(zs: &[C64]) -> C64 {
    zs.iter().fold(C64::new(0.0, 0.0), |a, &b| a + b) / zs.len() as f64
}

fn consistent_multiple_root(zs: &[C64], p: &Poly<C64>) -> bool {
    let m = zs.len();
    let c = mean(zs);
    let spread = zs.iter().map(|z| (z - c).norm()).fold(0.0, f64::max);
    let mut d = p.clone();
    let mut factorial = 1.0;
    for k in 1..=m {
        d = d.derivative();
        factorial *= k as f64;
    }
    let taylor = d.eval_c64(c).norm() / factorial;
    if taylor == 0.0 {
        return false;
    }
    let expected = (f64::EPSILON * p.magnitude_at(c) / taylor).powf(1.0 / m as f64);
    spread <= 100.0 * expected
}

/// Eigenvalues of the companion matrix by shifted complex QR.
fn companion_eigenvalues(p: &Poly<C64>) -> Option<Vec<C64>> {
    let n = p.degree()?;
    let a = p.coeffs();
    let lead = a[n];
    let zero = C64::new(0.0, 0.0);
    let mut h = vec![vec![zero; n]; n];
    for j in 0..n {
        h[0][j] = -a[n - 1 - j] / lead;
    }
    for i in 1..n {
        h[i][i - 1] = C64::new(1.0, 0.0);
    }
    hessenberg_eigenvalues(h)
}

fn hessenberg_eigenvalues(mut h: Vec<Vec<C64>>) -> Option<Vec<C64>> {
    let n = h.len();
    let mut eigs = Vec::with_capacity(n);
    let mut hi = n;
    let mut iter = 0usize;
    let mut total = 0usize;
    while hi > 0 {
        if hi == 1 {
            eigs.push(h[0][0]);
            break;
        }
        let mut l = hi - 1;
        while l > 0 {
            let s = h[l][l].norm() + h[l - 1][l - 1].norm();
            if h[l][l - 1].norm() <= f64::EPSILON * s.max(f64::MIN_POSITIVE) {
                h[l][l - 1] = C64::new(0.0, 0.0);
                break;
            }
            l -= 1;
        }
        if l == hi - 1 {
            eigs.push(h[hi - 1][hi - 1]);
            hi -= 1;
            iter = 0;
            continue;
        }
        total += 1;
        if total > 60 * n {
            return None;
        }
        let a = h[hi - 2][hi - 2];
        let b = h[hi - 2][hi - 1];
        let c = h[hi - 1][hi - 2];
        let d = h[hi - 1][hi - 1];
        let mu = if iter > 0 && iter % 10 == 0 {
            d + C64::new(c.norm(), 0.0)
        } else {
            let half = (a + d) / 2.0;
            let disc = (half * half - (a * d - b * c)).sqrt();
            let m1 = half + disc;
            let m2 = half - disc;
            if (m1 - d).norm() < (m2 - d).norm() {
                m1
            } else {
                m2
            }
        };
        iter += 1;

        for k in l..hi {
            h[k][k] -= mu;
        }
        let mut rots = Vec::with_capacity(hi - l);
        for k in l..hi - 1 {
            let x = h[k][k];
            let y = h[k + 1][k];
            let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
            let (cs, sn) = if r == 0.0 {
                (C64::new(1.0, 0.0), C64::new(0.0, 0.0))
            } else {
                (x / r, y / r)
            };
            for j in k..hi {
                let u = h[k][j];
                let v = h[k + 1][j];
                h[k][j] = cs.conj() * u + sn.conj() * v;
                h[k + 1][j] = -sn * u + cs * v;
            }
            rots.push((cs, sn));
        }
        for (idx, &(cs, sn)) in rots.iter().enumerate() {
            let k = l + idx;
            for row in h.iter_mut().take(hi).skip(l) {
                let u = row[k];
                let v = row[k + 1];
                row[k] = u * cs + v * sn;
                row[k + 1] = -u * sn.conj() + v * cs.conj();
            }
        }
        for k in l..hi {
            h[k][k] += mu;
        }
    }
    Some(eigs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn from_real(cs: &[f64]) -> Poly<C64> {
        Poly::new(cs.iter().map(|&r| c(r, 0.0)).collect())
    }

    fn has_root(rs: &[RootCluster], z: C64, m: u32, tol: f64) -> bool {
        rs.iter().any(|r| (r.root - z).norm() <= tol && r.multiplicity == m)
    }

    #[test]
    fn fourth_roots_of_unity() {
        let rs = poly_roots(&from_real(&[-1., 0., 0., 0., 1.]), 1e-10).unwrap();
        assert_eq!(rs.len(), 4);
        for z in [c(1., 0.), c(-1., 0.), c(0., 1.), c(0., -1.)] {
            assert!(has_root(&rs, z, 1, 1e-12), "{z} missing from {rs:?}");
        }
    }

    #[test]
    fn golden_ratio_pair() {
        let rs = poly_roots(&from_real(&[-1., -1., 1.]), 1e-10).unwrap();
        let s5 = 5f64.sqrt();
        assert!(has_root(&rs, c((1. + s5) / 2., 0.), 1, 1e-12));
        assert!(has_root(&rs, c((1. - s5) / 2., 0.), 1, 1e-12));
    }

    #[test]
    fn double_and_triple_roots() {
        let rs = poly_roots(&from_real(&[4., -4., 1.]), 1e-10).unwrap();
        assert_eq!(rs, vec![RootCluster { root: rs[0].root, multiplicity: 2 }]);
        assert!((rs[0].root - c(2., 0.)).norm() < 1e-7);

        // (z - 2)^3 (z + 1)
        let p = &from_real(&[-8., 12., -6., 1.]) * &from_real(&[1., 1.]);
        let rs = poly_roots(&p, 1e-10).unwrap();
        assert!(has_root(&rs, c(2., 0.), 3, 1e-4), "{rs:?}");
        assert!(has_root(&rs, c(-1., 0.), 1, 1e-12), "{rs:?}");
    }

    #[test]
    fn zero_roots_are_exact() {
        let rs = poly_roots(&Poly::monomial(c(3., 0.), 4), 1e-10).unwrap();
        assert_eq!(rs, vec![RootCluster { root: c(0., 0.), multiplicity: 4 }]);
    }

    #[test]
    fn companion_fallback_agrees() {
        let p = from_real(&[6., -5., -2., 1.]); // (z-1)(z+2)(z-3)
        let mut eig = companion_eigenvalues(&p).unwrap();
        eig.sort_by(|a, b| a.re.total_cmp(&b.re));
        for (z, want) in eig.iter().zip([-2., 1., 3.]) {
            assert!((z - c(want, 0.)).norm() < 1e-10, "{eig:?}");
        }
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(matches!(poly_roots(&Poly::zero(), 1e-10), Err(Error::Convergence(_))));
    }
}
