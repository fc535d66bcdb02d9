//! Globally adaptive Gauss–Kronrod (7/15) quadrature for complex 3-vector
//! valued integrands on `[0, 1]`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::vec3::{cadd, cnorm, cscale, CVec3};
use crate::C64;
#[allow(unused_imports)]
use num_traits::Float;

/// Absolute error target for one path segment.
pub const ABS_TOL: f64 = 1e-12;
/// Relative error target, relevant only for very large integrals.
pub const REL_TOL: f64 = 1e-13;
/// Maximum number of interval bisections per segment.
pub const MAX_SUBDIVISIONS: usize = 10_000;

const XK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd Kronrod nodes XK[1], XK[3], XK[5], XK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Clone, Copy)]
struct Piece {
    a: f64,
    b: f64,
    value: CVec3,
    error: f64,
    // Integral of |F|, used for the roundoff floor.
    abs: f64,
}

fn zero3() -> CVec3 {
    [C64::new(0.0, 0.0); 3]
}

fn kronrod<F>(f: &mut F, a: f64, b: f64) -> Result<Piece>
where
    F: FnMut(f64) -> Result<CVec3>,
{
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let centre = f(mid)?;
    let mut k = cscale(C64::new(WK[7], 0.0), centre);
    let mut g = cscale(C64::new(WG[3], 0.0), centre);
    let mut abs = WK[7] * cnorm(centre);
    for j in 0..7 {
        let dx = half * XK[j];
        let lo = f(mid - dx)?;
        let hi = f(mid + dx)?;
        let pair = cadd(lo, hi);
        k = cadd(k, cscale(C64::new(WK[j], 0.0), pair));
        abs += WK[j] * (cnorm(lo) + cnorm(hi));
        if j % 2 == 1 {
            g = cadd(g, cscale(C64::new(WG[j / 2], 0.0), pair));
        }
    }
    let h = C64::new(half, 0.0);
    let value = cscale(h, k);
    let gauss = cscale(h, g);
    let diff = [value[0] - gauss[0], value[1] - gauss[1], value[2] - gauss[2]];
    Ok(Piece {
        a,
        b,
        value,
        error: cnorm(diff),
        abs: half.abs() * abs,
    })
}

/// Integrate `f` over `[0, 1]`.
///
/// Intervals are bisected in order of decreasing error estimate until the
/// summed estimate drops below `max(ABS_TOL, REL_TOL |I|)`. The target is
/// floored at a small multiple of machine precision times `∫|f|`, below
/// which the estimate measures roundoff rather than truncation.
pub fn integrate<F>(mut f: F) -> Result<CVec3>
where
    F: FnMut(f64) -> Result<CVec3>,
{
    let mut pieces: Vec<Piece> = alloc::vec![kronrod(&mut f, 0.0, 1.0)?];
    let mut subdivisions = 0;
    loop {
        let total = pieces.iter().fold(zero3(), |acc, p| cadd(acc, p.value));
        let error: f64 = pieces.iter().map(|p| p.error).sum();
        let abs: f64 = pieces.iter().map(|p| p.abs).sum();
        let target = ABS_TOL
            .max(REL_TOL * cnorm(total))
            .max(50.0 * f64::EPSILON * abs);
        if error <= target {
            return Ok(total);
        }
        if subdivisions >= MAX_SUBDIVISIONS {
            return Err(Error::Quadrature {
                tolerance: target,
                estimate: error,
                subdivisions,
            });
        }
        let (worst, _) = pieces
            .iter()
            .enumerate()
            .fold((0, -1.0), |(bi, be), (i, p)| if p.error > be { (i, p.error) } else { (bi, be) });
        let p = pieces.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        pieces.push(kronrod(&mut f, p.a, mid)?);
        pieces.push(kronrod(&mut f, mid, p.b)?);
        subdivisions += 1;
    }
}
