use alloc::collections::BTreeMap;

use super::{Coeff, Poly, RationalFunction};
use crate::C64;

/// Polynomial in `z` and `w`, where `w` stands for `conj(z)`.
///
/// Enough structure to state identities between real-valued expressions
/// such as `|f|^2` exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly2<T> {
    terms: BTreeMap<(u32, u32), T>,
}

impl<T: Coeff> Poly2<T> {
    pub fn zero() -> Self {
        Poly2 {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: T) -> Self {
        let mut p = Self::zero();
        p.insert(0, 0, c);
        p
    }

    fn insert(&mut self, i: u32, j: u32, c: T) {
        let sum = match self.terms.remove(&(i, j)) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert((i, j), sum);
        }
    }

    /// Embed a polynomial in `z`.
    pub fn from_z(p: &Poly<T>) -> Self {
        let mut out = Self::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            out.insert(k as u32, 0, c.clone());
        }
        out
    }

    /// Embed a polynomial in `w = conj(z)`.
    pub fn from_w(p: &Poly<T>) -> Self {
        let mut out = Self::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            out.insert(0, k as u32, c.clone());
        }
        out
    }

    /// `|p(z)|^2 = p(z) * conj(p)(w)`
    pub fn abs_sq(p: &Poly<T>) -> Self {
        Self::from_z(p).mul(&Self::from_w(&p.conj_coeffs()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.insert(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&-T::one()))
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            out.insert(i, j, c.clone() * s.clone());
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.insert(i + k, j + l, a.clone() * b.clone());
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::constant(T::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, z: C64) -> C64 {
        let w = z.conj();
        self.terms.iter().fold(C64::new(0.0, 0.0), |acc, (&(i, j), c)| {
            acc + c.to_c64() * z.powu(i) * w.powu(j)
        })
    }

    pub fn max_coeff_magnitude(&self) -> f64 {
        self.terms.values().map(Coeff::magnitude).fold(0.0, f64::max)
    }
}

/// Rational function of `z` and `conj(z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianRational<T> {
    pub num: Poly2<T>,
    pub den: Poly2<T>,
}

impl<T: Coeff> HermitianRational<T> {
    pub fn new(num: Poly2<T>, den: Poly2<T>) -> Self {
        HermitianRational { num, den }
    }

    /// `|r(z)|^2`
    pub fn abs_sq(r: &RationalFunction<T>) -> Self {
        HermitianRational {
            num: Poly2::abs_sq(r.numerator()),
            den: Poly2::abs_sq(r.denominator()),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        HermitianRational {
            num: self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            den: self.den.mul(&rhs.den),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        HermitianRational {
            num: self.num.scale(s),
            den: self.den.clone(),
        }
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.num.eval(z) / self.den.eval(z)
    }

    /// Largest coefficient of `num * rhs.den - rhs.num * den`; zero exactly
    /// when the two expressions agree identically.
    pub fn identity_residual(&self, rhs: &Self) -> f64 {
        self.num
            .mul(&rhs.den)
            .sub(&rhs.num.mul(&self.den))
            .max_coeff_magnitude()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{exact, ExactComplex};
    use alloc::vec;

    #[test]
    fn abs_sq_of_linear_factor() {
        // |z - i|^2 = z w + i z - i w + 1
        let p: Poly<ExactComplex> = Poly::new(vec![exact(0, -1), exact(1, 0)]);
        let sq = Poly2::abs_sq(&p);
        let z = C64::new(0.3, -1.2);
        let direct = (z - C64::new(0.0, 1.0)).norm_sqr();
        assert!((sq.eval(z).re - direct).abs() < 1e-14);
        assert!(sq.eval(z).im.abs() < 1e-14);
    }
}
