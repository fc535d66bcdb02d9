//! Complex rational functions with exact symbolic differentiation.
//!
//! Two coefficient fields are supported through [`Coeff`]: double precision
//! complex numbers ([`C64`]) and exact Gaussian rationals ([`ExactComplex`]).
//! The exact field is what lets the transformation-law identities be
//! certified with a residual of literally zero.

mod bivariate;
mod poly;
mod roots;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use bivariate::{HermitianRational, Poly2};
pub use poly::Poly;
pub use roots::{poly_roots, RootCluster, CLUSTER_TOL};

use crate::error::{Error, Result};
use crate::C64;
#[allow(unused_imports)]
use num_traits::Float;

/// Exact complex scalar: a pair of arbitrary precision rationals.
pub type ExactComplex = Complex<BigRational>;

pub type ComplexPoly = Poly<C64>;
pub type RationalComplexFunction = RationalFunction<C64>;
pub type ExactRationalFunction = RationalFunction<ExactComplex>;

/// Relative size of `|den(z)|` below which evaluation reports a pole.
pub const POLE_TOL: f64 = 1e-12;

/// Coefficient field for [`Poly`] and [`RationalFunction`].
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_int(n: i64) -> Self;
    fn conjugate(&self) -> Self;
    fn to_c64(&self) -> C64;
    fn magnitude(&self) -> f64;
    /// Whether the value is cancellation noise relative to `scale`.
    fn negligible(&self, scale: f64) -> bool;
    fn display(&self) -> String;
    /// Remove the common factors of a numerator/denominator pair and
    /// normalize the denominator to be monic.
    fn cancel(num: &Poly<Self>, den: &Poly<Self>) -> Result<(Poly<Self>, Poly<Self>)>;
}

impl Coeff for C64 {
    fn from_int(n: i64) -> Self {
        C64::new(n as f64, 0.0)
    }

    fn conjugate(&self) -> Self {
        self.conj()
    }

    fn to_c64(&self) -> C64 {
        *self
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn negligible(&self, scale: f64) -> bool {
        self.norm() <= 16.0 * f64::EPSILON * scale
    }

    fn display(&self) -> String {
        alloc::format!("{}{:+}i", self.re, self.im)
    }

    fn cancel(num: &Poly<Self>, den: &Poly<Self>) -> Result<(Poly<Self>, Poly<Self>)> {
        cancel_float(num, den)
    }
}

impl Coeff for ExactComplex {
    fn from_int(n: i64) -> Self {
        Complex::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    fn conjugate(&self) -> Self {
        self.conj()
    }

    fn to_c64(&self) -> C64 {
        C64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }

    fn negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }

    fn display(&self) -> String {
        let sign = if self.im.is_negative() { "-" } else { "+" };
        alloc::format!("{}{}{}i", self.re, sign, self.im.abs())
    }

    fn cancel(num: &Poly<Self>, den: &Poly<Self>) -> Result<(Poly<Self>, Poly<Self>)> {
        let g = poly_gcd_exact(num, den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let lead = d.leading().cloned().ok_or(Error::ZeroDenominator)?;
        let inv = ExactComplex::one() / lead;
        Ok((n.scale(&inv), d.scale(&inv)))
    }
}

/// Build an exact complex number from integer real and imaginary parts.
pub fn exact(re: i64, im: i64) -> ExactComplex {
    Complex::new(
        BigRational::from_integer(BigInt::from(re)),
        BigRational::from_integer(BigInt::from(im)),
    )
}

/// Build an exact complex number `(re_n/re_d) + i (im_n/im_d)`.
pub fn exact_ratio(re_n: i64, re_d: i64, im_n: i64, im_d: i64) -> ExactComplex {
    Complex::new(
        BigRational::new(BigInt::from(re_n), BigInt::from(re_d)),
        BigRational::new(BigInt::from(im_n), BigInt::from(im_d)),
    )
}

fn poly_gcd_exact(a: &Poly<ExactComplex>, b: &Poly<ExactComplex>) -> Poly<ExactComplex> {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b);
        a = b;
        b = r;
    }
    if a.is_zero() {
        Poly::constant(ExactComplex::one())
    } else {
        a.monic()
    }
}

/// Floating point cancellation by root matching.
///
/// Roots at the origin are removed exactly through the low-order zero
/// coefficients; the remaining roots of numerator and denominator are
/// clustered and matched within [`CLUSTER_TOL`], and each matched factor is
/// divided out of both polynomials by synthetic division.
fn cancel_float(num: &Poly<C64>, den: &Poly<C64>) -> Result<(Poly<C64>, Poly<C64>)> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if num.is_zero() {
        return Ok((Poly::zero(), Poly::constant(C64::one())));
    }
    let k = num.low_order_zeros().min(den.low_order_zeros());
    let mut n = num.shift_down(k);
    let mut d = den.shift_down(k);

    if d.degree().unwrap_or(0) > 0 && n.degree().unwrap_or(0) > 0 {
        let droots = poly_roots(&d, 1e-8)?;
        let nroots = poly_roots(&n, 1e-8)?;
        for dr in &droots {
            let matched = nroots.iter().find(|nr| {
                (nr.root - dr.root).norm() <= CLUSTER_TOL * dr.root.norm().max(1.0)
            });
            if let Some(nr) = matched {
                // Each side is deflated at its own estimate: the cluster mean
                // of a multiple root is far more accurate than its members.
                let m = nr.multiplicity.min(dr.multiplicity);
                for _ in 0..m {
                    n = n.deflate(&nr.root);
                    d = d.deflate(&dr.root);
                }
            }
        }
    }
    let lead = *d.leading().ok_or(Error::ZeroDenominator)?;
    let inv = C64::one() / lead;
    let d = d.monic();
    let n = if lead == C64::one() { n } else { n.scale(&inv) };
    Ok((n, d))
}

/// Quotient of two polynomials.
#[derive(Clone, PartialEq)]
pub struct RationalFunction<T> {
    num: Poly<T>,
    den: Poly<T>,
}

impl<T: Coeff> RationalFunction<T> {
    pub fn new(num: Poly<T>, den: Poly<T>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: Poly<T>) -> Self {
        RationalFunction {
            num: p,
            den: Poly::constant(T::one()),
        }
    }

    pub fn constant(c: T) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    /// The identity function `z`.
    pub fn identity() -> Self {
        Self::from_poly(Poly::monomial(T::one(), 1))
    }

    /// `c z^k` for any integer `k`.
    pub fn monomial(c: T, k: i32) -> Self {
        if k >= 0 {
            Self::from_poly(Poly::monomial(c, k as usize))
        } else {
            RationalFunction {
                num: Poly::constant(c),
                den: Poly::monomial(T::one(), (-k) as usize),
            }
        }
    }

    pub fn numerator(&self) -> &Poly<T> {
        &self.num
    }

    pub fn denominator(&self) -> &Poly<T> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Evaluate at `z` in double precision.
    pub fn eval(&self, z: C64) -> Result<C64> {
        let d = self.den.eval_c64(z);
        if d.norm() <= POLE_TOL * self.den.magnitude_at(z) {
            return Err(Error::Pole { z });
        }
        Ok(self.num.eval_c64(z) / d)
    }

    /// Exact evaluation in the coefficient field.
    pub fn eval_exact(&self, z: &T) -> Result<T> {
        let d = self.den.eval(z);
        if d.is_zero() {
            return Err(Error::Pole { z: z.to_c64() });
        }
        Ok(self.num.eval(z) / d)
    }

    pub fn simplify(&self) -> Result<Self> {
        let (num, den) = T::cancel(&self.num, &self.den)?;
        Ok(RationalFunction { num, den })
    }

    /// Quotient rule `(n'd - nd')/d^2`, simplified.
    pub fn derivative(&self) -> Result<Self> {
        let n1 = &self.num.derivative() * &self.den;
        let n2 = &self.num * &self.den.derivative();
        let num = &n1 - &n2;
        let den = &self.den * &self.den;
        RationalFunction { num, den }.simplify()
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RationalFunction { num, den }.simplify()
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.try_add(&rhs.neg())
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        let num = &self.num * &rhs.num;
        let den = &self.den * &rhs.den;
        RationalFunction { num, den }.simplify()
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let num = &self.num * &rhs.den;
        let den = &self.den * &rhs.num;
        RationalFunction { num, den }.simplify()
    }

    pub fn recip(&self) -> Result<Self> {
        RationalFunction::new(self.den.clone(), self.num.clone())?.simplify()
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// `conj(r(conj z))`: conjugate every coefficient.
    pub fn conj_coeffs(&self) -> Self {
        RationalFunction {
            num: self.num.conj_coeffs(),
            den: self.den.conj_coeffs(),
        }
    }

    /// `r(c / z)`, simplified.
    pub fn compose_scaled_inverse(&self, c: &T) -> Result<Self> {
        let n = self.num.degree().unwrap_or(0);
        let m = self.den.degree().unwrap_or(0);
        let top = self.num.reflect(c, n);
        let bottom = self.den.reflect(c, m);
        let (num, den) = if n >= m {
            (top, bottom.shift_up(n - m))
        } else {
            (top.shift_up(m - n), bottom)
        };
        RationalFunction { num, den }.simplify()
    }

    /// `r(c z)`
    pub fn scale_argument(&self, c: &T) -> Self {
        RationalFunction {
            num: self.num.scale_argument(c),
            den: self.den.scale_argument(c),
        }
    }

    /// The constant value, when the simplified function has degree zero.
    pub fn as_constant(&self) -> Option<T> {
        if self.num.is_zero() {
            return Some(T::zero());
        }
        match (self.num.degree(), self.den.degree()) {
            (Some(0), Some(0)) => Some(self.num.coeffs()[0].clone() / self.den.coeffs()[0].clone()),
            _ => None,
        }
    }

    /// Largest coefficient magnitude of `self.num * rhs.den - rhs.num * self.den`;
    /// zero exactly when the two functions agree as rational functions.
    pub fn identity_residual(&self, rhs: &Self) -> f64 {
        let cross = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        cross.max_coeff_magnitude()
    }

    pub fn to_c64(&self) -> RationalFunction<C64> {
        RationalFunction {
            num: self.num.to_c64(),
            den: self.den.to_c64(),
        }
    }
}

impl RationalFunction<C64> {
    /// Zeros of the numerator, clustered with multiplicity.
    pub fn zeros(&self) -> Result<Vec<RootCluster>> {
        if self.num.is_zero() {
            return Ok(Vec::new());
        }
        poly_roots(&self.num, 1e-8)
    }

    /// Zeros of the denominator, clustered with multiplicity.
    pub fn poles(&self) -> Result<Vec<RootCluster>> {
        poly_roots(&self.den, 1e-8)
    }
}

impl<T: Coeff> fmt::Debug for RationalFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<T: Coeff> fmt::Display for RationalFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) && self.den.coeffs()[0] == T::one() {
            return write!(f, "{}", self.num);
        }
        write!(f, "[{}] / [{}]", self.num, self.den)
    }
}

impl<T: Coeff> From<Poly<T>> for RationalFunction<T> {
    fn from(p: Poly<T>) -> Self {
        RationalFunction::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn poly(cs: &[(f64, f64)]) -> Poly<C64> {
        Poly::new(cs.iter().map(|&(r, i)| c(r, i)).collect())
    }

    fn henneberg_f() -> RationalComplexFunction {
        RationalFunction::new(
            poly(&[(-1., 0.), (0., 0.), (0., 0.), (0., 0.), (1., 0.)]),
            Poly::monomial(c(1., 0.), 4),
        )
        .unwrap()
    }

    fn meeks_g() -> RationalComplexFunction {
        RationalFunction::new(
            poly(&[(0., 0.), (0., 0.), (1., 0.), (1., 0.)]),
            poly(&[(-1., 0.), (1., 0.)]),
        )
        .unwrap()
    }

    #[test]
    fn eval_examples() {
        assert_eq!(henneberg_f().eval(c(1., 0.)).unwrap(), c(0., 0.));
        let id = RationalComplexFunction::identity();
        assert_eq!(id.eval(c(3., 4.)).unwrap(), c(3., 4.));
        assert_eq!(meeks_g().eval(c(2., 0.)).unwrap(), c(12., 0.));
    }

    #[test]
    fn eval_at_pole_is_an_error() {
        assert!(matches!(henneberg_f().eval(c(0., 0.)), Err(Error::Pole { .. })));
        assert!(matches!(meeks_g().eval(c(1., 0.)), Err(Error::Pole { .. })));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalComplexFunction::new(Poly::constant(c(1., 0.)), Poly::zero()).unwrap_err(),
            Error::ZeroDenominator
        );
    }

    #[test]
    fn derivative_examples() {
        let id = RationalComplexFunction::identity();
        assert_eq!(id.derivative().unwrap().as_constant(), Some(c(1., 0.)));
        let k = RationalComplexFunction::constant(c(2., -5.));
        assert!(k.derivative().unwrap().is_zero());
        // d/dz (z^4 - 1)/z^4 = 4/z^5
        let d = henneberg_f().derivative().unwrap();
        let expected = RationalComplexFunction::monomial(c(4., 0.), -5);
        assert_eq!(d.identity_residual(&expected), 0.0);
    }

    #[test]
    fn simplify_examples() {
        // (z^2 - 1)/(z - 1) = z + 1
        let r = RationalFunction::new(poly(&[(-1., 0.), (0., 0.), (1., 0.)]), poly(&[(-1., 0.), (1., 0.)]))
            .unwrap()
            .simplify()
            .unwrap();
        assert_eq!(r.denominator().degree(), Some(0));
        assert!(r.identity_residual(&RationalFunction::from_poly(poly(&[(1., 0.), (1., 0.)]))) < 1e-14);
        // z/z = 1
        let id = RationalComplexFunction::identity();
        let one = id.try_div(&id).unwrap();
        assert_eq!(one.as_constant(), Some(c(1., 0.)));
    }

    #[test]
    fn meeks_fg2_cancels_the_pole_at_one() {
        let f = RationalFunction::new(
            poly(&[(0., 2.), (0., -4.), (0., 2.)]),
            Poly::monomial(c(1., 0.), 4),
        )
        .unwrap();
        let g = meeks_g();
        let fg2 = f.try_mul(&g).unwrap().try_mul(&g).unwrap();
        assert_eq!(fg2.denominator().degree(), Some(0));
        let expected = RationalFunction::from_poly(poly(&[(0., 2.), (0., 4.), (0., 2.)]));
        assert!(fg2.identity_residual(&expected) < 1e-12);
    }

    #[test]
    fn exact_meeks_fg2() {
        let f = ExactRationalFunction::new(
            Poly::new(vec![exact(0, 2), exact(0, -4), exact(0, 2)]),
            Poly::monomial(exact(1, 0), 4),
        )
        .unwrap();
        let g = ExactRationalFunction::new(
            Poly::new(vec![exact(0, 0), exact(0, 0), exact(1, 0), exact(1, 0)]),
            Poly::new(vec![exact(-1, 0), exact(1, 0)]),
        )
        .unwrap();
        let fg2 = f.try_mul(&g).unwrap().try_mul(&g).unwrap();
        let expected = ExactRationalFunction::from_poly(Poly::new(vec![exact(0, 2), exact(0, 4), exact(0, 2)]));
        assert_eq!(fg2, expected);
        assert_eq!(fg2.identity_residual(&expected), 0.0);
    }

    #[test]
    fn compose_scaled_inverse_matches_pointwise() {
        let g = meeks_g();
        let gt = g.compose_scaled_inverse(&c(-1., 0.)).unwrap();
        for z in [c(0.3, 0.7), c(-1.4, 0.2), c(2.0, -0.5)] {
            let lhs = gt.eval(z).unwrap();
            let rhs = g.eval(-C64::one() / z).unwrap();
            assert!((lhs - rhs).norm() <= 1e-13 * rhs.norm().max(1.0));
        }
    }
}
