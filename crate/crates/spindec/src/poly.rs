//! Dense univariate polynomials over exact rationals.
//!
//! Coefficients are stored in ascending degree order: `coeffs[k]` multiplies
//! s^k. The representation is canonical: the vector is empty for the zero
//! polynomial and the last element is nonzero otherwise. Degrees reach
//! 2S = p^M - 1, so the inverse-polynomial machinery keeps everything dense.

use crate::half_int::HalfInt;
use crate::rational::{format_rational, BigRational};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Sub};
use num_traits::{One, Zero};

/// A dense polynomial with `BigRational` coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    // ---- constructors ----

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![BigRational::one()] }
    }

    /// The monomial s.
    pub fn identity() -> Self {
        Poly { coeffs: vec![BigRational::zero(), BigRational::one()] }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// c * s^degree.
    pub fn monomial(c: BigRational, degree: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[degree] = c;
        Poly { coeffs }
    }

    /// From ascending coefficients; trailing zeros are stripped.
    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    /// Test helper: ascending integer coefficients.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| crate::rational::int(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    // ---- queries ----

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of s^k (zero beyond the stored degree).
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// True when every even-power coefficient vanishes, i.e. p(-s) = -p(s).
    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().step_by(2).all(Zero::is_zero)
    }

    // ---- arithmetic ----

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_half(&self, x: HalfInt) -> BigRational {
        self.eval(&x.to_rational())
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|k| k * c).collect() }
    }

    /// Quotient and remainder of division by (s - root).
    pub fn div_linear(&self, root: &BigRational) -> (Poly, BigRational) {
        if self.coeffs.is_empty() {
            return (Poly::zero(), BigRational::zero());
        }
        let mut quotient = vec![BigRational::zero(); self.coeffs.len() - 1];
        let mut carry = BigRational::zero();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            let value = c + &carry * root;
            if k == 0 {
                return (Poly::from_coeffs(quotient), value);
            }
            quotient[k - 1] = value.clone();
            carry = value;
        }
        unreachable!()
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

/// Prints the wire form: `[c0, c1, ...]` with rationals as `n` or `n/d`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        }
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(c))?;
        }
        write!(f, "]")
    }
}

/// Parse the wire form produced by `Display`.
pub fn parse_poly(text: &str) -> Result<Poly, crate::Error> {
    let inner = text
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| crate::Error::ParseRational(String::from(text)))?;
    let mut coeffs = Vec::new();
    for part in inner.split(", ") {
        coeffs.push(crate::rational::parse_rational(part)?);
    }
    Ok(Poly::from_coeffs(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use alloc::string::ToString;
    use proptest::prelude::*;

    #[test]
    fn eval_printed_pair_polynomial() {
        // [0, 13/12, 0, -1/3] at s = 3/2 is the top digit of the S = 3/2 pair.
        let p = Poly::from_coeffs(vec![int(0), frac(13, 12), int(0), frac(-1, 3)]);
        assert_eq!(p.eval(&frac(3, 2)), frac(1, 2));
        let q = Poly::from_coeffs(vec![int(0), frac(-7, 6), int(0), frac(2, 3)]);
        assert_eq!(q.eval(&frac(1, 2)), frac(-1, 2));
    }

    #[test]
    fn eval_zero_polynomial() {
        assert_eq!(Poly::zero().eval(&int(7)), int(0));
    }

    #[test]
    fn arith_examples() {
        assert_eq!(&Poly::from_i64(&[1]) + &Poly::from_i64(&[0, 1]), Poly::from_i64(&[1, 1]));
        assert_eq!(
            &Poly::from_i64(&[-1, 1]) * &Poly::from_i64(&[1, 1]),
            Poly::from_i64(&[-1, 0, 1])
        );
        assert_eq!(Poly::from_i64(&[0, 2]).scale(&frac(1, 2)), Poly::from_i64(&[0, 1]));
    }

    #[test]
    fn div_linear_splits_roots() {
        // (s-1)(s+2) = s^2 + s - 2
        let p = Poly::from_i64(&[-2, 1, 1]);
        let (q, r) = p.div_linear(&int(1));
        assert!(r.is_zero());
        assert_eq!(q, Poly::from_i64(&[2, 1]));
        let (_, r2) = p.div_linear(&int(3));
        assert_eq!(r2, int(10));
    }

    #[test]
    fn display_parse_roundtrip() {
        let p = Poly::from_coeffs(vec![int(0), frac(-7, 6), int(0), frac(2, 3)]);
        assert_eq!(p.to_string(), "[0, -7/6, 0, 2/3]");
        assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }

    fn arb_rational() -> impl Strategy<Value = BigRational> {
        (-40i64..40, 1i64..12).prop_map(|(n, d)| frac(n, d))
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec(arb_rational(), 0..8).prop_map(Poly::from_coeffs)
    }

    proptest! {
        #[test]
        fn field_laws(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        }

        #[test]
        fn eval_is_multiplicative(p in arb_poly(), q in arb_poly(), x in arb_rational()) {
            prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
        }

        #[test]
        fn mul_then_deflate(p in arb_poly(), root in arb_rational()) {
            let lin = Poly::from_coeffs(vec![-&root, BigRational::one()]);
            let (q, r) = (&p * &lin).div_linear(&root);
            prop_assert!(r.is_zero());
            prop_assert_eq!(q, p);
        }
    }
}
