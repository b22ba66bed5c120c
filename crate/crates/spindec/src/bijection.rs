//! The base-p digit bijection between one spin-S value and a cluster of M
//! spins sigma = (p-1)/2.
//!
//! A spin value s in {-S, ..., S} with S = (p^M - 1)/2 corresponds to the
//! configuration index j = s + S in {0, ..., p^M - 1}; the base-p digits of
//! j, shifted by -(p-1)/2, are the cluster digits. Digit index i is counted
//! from the least significant side throughout: digit i carries weight
//! p^(i-1), so that s = sum_i p^(i-1) sigma_i. Published inverse-polynomial
//! tables label the digits from the most significant side instead; see
//! [`crate::errata`] for the reconciliation.

use crate::half_int::HalfInt;
use crate::poly::Poly;
use crate::rational::BigRational;
use crate::Error;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Default bound on p^M for table materialization.
pub const DEFAULT_LIMIT: u64 = 1 << 20;

/// A cluster shape: p levels per digit, M digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClusterSpec {
    p: u32,
    m: u32,
    size: u64,
}

impl ClusterSpec {
    pub fn new(p: u32, m: u32) -> Result<Self, Error> {
        Self::with_limit(p, m, DEFAULT_LIMIT)
    }

    /// Like [`ClusterSpec::new`] with an explicit bound on p^M.
    pub fn with_limit(p: u32, m: u32, limit: u64) -> Result<Self, Error> {
        if p < 2 || m < 1 {
            return Err(Error::InvalidSpec { p, m });
        }
        let limit = limit.min(1 << 40);
        let mut size: u64 = 1;
        for _ in 0..m {
            size = size
                .checked_mul(u64::from(p))
                .filter(|&s| s <= limit)
                .ok_or(Error::LimitExceeded { limit })?;
        }
        Ok(ClusterSpec { p, m, size })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// p^M, the number of configurations (and of spin eigenvalues).
    pub fn size(&self) -> u64 {
        self.size
    }

    /// S = (p^M - 1)/2.
    pub fn spin(&self) -> HalfInt {
        HalfInt::from_doubled(self.size as i64 - 1)
    }

    /// sigma = (p-1)/2, the digit bound.
    pub fn digit_bound(&self) -> HalfInt {
        HalfInt::from_doubled(i64::from(self.p) - 1)
    }

    fn check_digit(&self, index: usize, d: HalfInt) -> Result<(), Error> {
        let bound = self.digit_bound().doubled();
        // valid digits have doubled values -(p-1), -(p-3), ..., (p-1)
        if d.doubled().abs() > bound || (d.doubled() - bound) % 2 != 0 {
            return Err(Error::DigitOutOfRange { index });
        }
        Ok(())
    }

    /// s = sum_i p^(i-1) sigma_i.
    pub fn compose(&self, digits: &DigitVector) -> Result<HalfInt, Error> {
        if digits.len() != self.m as usize {
            return Err(Error::ShapeMismatch { expected: self.m as usize, found: digits.len() });
        }
        let mut doubled: i64 = 0;
        let mut weight: i64 = 1;
        for (i, &d) in digits.iter().enumerate() {
            self.check_digit(i, d)?;
            doubled += weight * d.doubled();
            weight *= i64::from(self.p);
        }
        Ok(HalfInt::from_doubled(doubled))
    }

    /// The unique digit vector with `compose(digits) == s`.
    pub fn decompose(&self, s: HalfInt) -> Result<DigitVector, Error> {
        let s2 = self.spin().doubled();
        if (s.doubled() - s2) % 2 != 0 {
            return Err(Error::ParityMismatch);
        }
        if s.doubled().abs() > s2 {
            return Err(Error::SpinOutOfRange);
        }
        let mut j = ((s.doubled() + s2) / 2) as u64;
        let shift = i64::from(self.p) - 1;
        let digits = (0..self.m)
            .map(|_| {
                let d = (j % u64::from(self.p)) as i64;
                j /= u64::from(self.p);
                HalfInt::from_doubled(2 * d - shift)
            })
            .collect();
        Ok(DigitVector::new(digits))
    }

    /// All digits of all configurations: `rows()[i-1][j]` is the weight
    /// p^(i-1) digit of configuration j.
    pub fn projection_table(&self) -> ProjectionTable {
        let n = self.size as usize;
        let shift = i64::from(self.p) - 1;
        let mut rows = Vec::with_capacity(self.m as usize);
        let mut period = 1u64;
        for _ in 0..self.m {
            let row = (0..n as u64)
                .map(|j| {
                    let d = (j / period % u64::from(self.p)) as i64;
                    HalfInt::from_doubled(2 * d - shift)
                })
                .collect();
            rows.push(row);
            period *= u64::from(self.p);
        }
        ProjectionTable { p: self.p, m: self.m, rows }
    }

    /// The M polynomials sigma_i(s), weight order: polynomial i evaluated at
    /// any eigenvalue s gives the weight p^(i-1) digit of s.
    pub fn inverse_polynomials(&self) -> Vec<Poly> {
        let table = self.projection_table();
        general_inverse(self.spin(), &table.rows).expect("table rows have length 2S+1")
    }

    /// Exhaustive check of the bijection and its polynomial form.
    pub fn verify_roundtrip(&self) -> RoundtripReport {
        let spin = self.spin();
        let polys = self.inverse_polynomials();
        let mut failure = None;

        // coefficient-wise: sum_i p^(i-1) sigma_i(s) must be the monomial s
        let mut composed = Poly::zero();
        let mut weight = BigRational::one();
        for poly in &polys {
            composed = &composed + &poly.scale(&weight);
            weight *= BigRational::from_integer(BigInt::from(self.p));
        }
        if composed != Poly::identity() {
            failure = Some(format!("sum of weighted inverse polynomials is {composed}, not s"));
        }

        let mut checked = 0u64;
        for j in 0..self.size {
            let s = HalfInt::from_doubled(2 * j as i64 - (self.size as i64 - 1));
            debug_assert!(s.abs().doubled() <= spin.doubled());
            let digits = match self.decompose(s) {
                Ok(d) => d,
                Err(e) => {
                    failure.get_or_insert_with(|| format!("decompose({s}) failed: {e}"));
                    break;
                }
            };
            match self.compose(&digits) {
                Ok(back) if back == s => {}
                Ok(back) => {
                    failure.get_or_insert_with(|| format!("compose(decompose({s})) = {back}"));
                }
                Err(e) => {
                    failure.get_or_insert_with(|| format!("compose(decompose({s})) failed: {e}"));
                }
            }
            for (i, poly) in polys.iter().enumerate() {
                if poly.eval_half(s) != digits[i].to_rational() {
                    failure.get_or_insert_with(|| {
                        format!("polynomial {} at s={s} gives {}, digit is {}", i + 1, poly.eval_half(s), digits[i])
                    });
                }
            }
            checked += 1;
            if failure.is_some() {
                break;
            }
        }

        RoundtripReport {
            p: self.p,
            m: self.m,
            eigenvalues_checked: checked,
            first_failure: failure,
        }
    }
}

/// M cluster digits, least significant first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitVector {
    digits: Vec<HalfInt>,
}

impl DigitVector {
    pub fn new(digits: Vec<HalfInt>) -> Self {
        DigitVector { digits }
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, HalfInt> {
        self.digits.iter()
    }

    pub fn digits(&self) -> &[HalfInt] {
        &self.digits
    }
}

impl core::ops::Index<usize> for DigitVector {
    type Output = HalfInt;
    fn index(&self, i: usize) -> &HalfInt {
        &self.digits[i]
    }
}

/// M x p^M digit table; row i-1 holds the weight p^(i-1) digits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectionTable {
    p: u32,
    m: u32,
    rows: Vec<Vec<HalfInt>>,
}

impl ProjectionTable {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn rows(&self) -> &[Vec<HalfInt>] {
        &self.rows
    }

    /// Row for digit weight p^(i-1), 1-based i.
    pub fn row_by_weight(&self, i: usize) -> Option<&[HalfInt]> {
        if i == 0 {
            return None;
        }
        self.rows.get(i - 1).map(Vec::as_slice)
    }
}

/// Pass/fail outcome of [`ClusterSpec::verify_roundtrip`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundtripReport {
    pub p: u32,
    pub m: u32,
    pub eigenvalues_checked: u64,
    pub first_failure: Option<String>,
}

impl RoundtripReport {
    pub fn pass(&self) -> bool {
        self.first_failure.is_none()
    }
}

fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Full node product N(s) = prod_{i=0}^{2S} (s + S - i); nodes are i - S.
fn node_product(spin: HalfInt) -> Poly {
    let two_s = spin.doubled() as u64;
    let mut acc = Poly::one();
    for i in 0..=two_s {
        let node = HalfInt::from_doubled(2 * i as i64 - spin.doubled());
        let lin = Poly::from_coeffs([-node.to_rational(), BigRational::one()].into());
        acc = &acc * &lin;
    }
    acc
}

/// Denominator of the j-th basis: prod_{i != j} (j - i) = (-1)^(2S-j) j! (2S-j)!.
fn basis_denominator(two_s: u64, j: u64) -> BigRational {
    let mut d = factorial(j) * factorial(two_s - j);
    if (two_s - j) % 2 == 1 {
        d = -d;
    }
    BigRational::from_integer(d)
}

/// The degree-2S basis polynomial equal to 1 at eigenvalue j - S and 0 at
/// every other eigenvalue.
pub fn lagrange_basis(spin: HalfInt, j: u64) -> Result<Poly, Error> {
    if spin.doubled() < 0 {
        return Err(Error::SpinOutOfRange);
    }
    let two_s = spin.doubled() as u64;
    if j > two_s {
        return Err(Error::IndexOutOfRange);
    }
    let node = HalfInt::from_doubled(2 * j as i64 - spin.doubled());
    let (quotient, remainder) = node_product(spin).div_linear(&node.to_rational());
    debug_assert!(remainder.is_zero());
    Ok(quotient.scale(&basis_denominator(two_s, j).recip()))
}

/// sigma_m(s) = sum_j table[m][j] A_j(s) for an arbitrary digit table with
/// rows of length 2S+1. The special projection-table input reproduces
/// [`ClusterSpec::inverse_polynomials`].
pub fn general_inverse(spin: HalfInt, table: &[Vec<HalfInt>]) -> Result<Vec<Poly>, Error> {
    if spin.doubled() < 0 {
        return Err(Error::SpinOutOfRange);
    }
    let two_s = spin.doubled() as u64;
    let n = (two_s + 1) as usize;
    for row in table {
        if row.len() != n {
            return Err(Error::ShapeMismatch { expected: n, found: row.len() });
        }
    }
    let product = node_product(spin);
    let mut out = Vec::with_capacity(table.len());
    let mut bases = Vec::with_capacity(n);
    for j in 0..two_s + 1 {
        let node = HalfInt::from_doubled(2 * j as i64 - spin.doubled());
        let (quotient, remainder) = product.div_linear(&node.to_rational());
        debug_assert!(remainder.is_zero());
        bases.push(quotient.scale(&basis_denominator(two_s, j).recip()));
    }
    for row in table {
        let mut acc = Poly::zero();
        for (j, &value) in row.iter().enumerate() {
            if value.doubled() != 0 {
                acc = &acc + &bases[j].scale(&value.to_rational());
            }
        }
        out.push(acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use alloc::vec;
    use num_traits::Signed;

    fn hi(doubled: i64) -> HalfInt {
        HalfInt::from_doubled(doubled)
    }

    #[test]
    fn spec_counting_identity() {
        let spec = ClusterSpec::new(3, 3).unwrap();
        assert_eq!(spec.size(), 27);
        assert_eq!(spec.spin(), hi(26)); // S = 13
        assert!(ClusterSpec::with_limit(2, 5, 16).is_err());
    }

    #[test]
    fn compose_examples() {
        let spec = ClusterSpec::new(3, 3).unwrap();
        let d = DigitVector::new(vec![hi(2), hi(2), hi(2)]);
        assert_eq!(spec.compose(&d).unwrap(), hi(26)); // sigma = (1,1,1) -> 13

        let spec = ClusterSpec::new(2, 2).unwrap();
        let d = DigitVector::new(vec![hi(-1), hi(-1)]);
        assert_eq!(spec.compose(&d).unwrap(), hi(-3)); // all-minimum -> -S

        let spec = ClusterSpec::new(2, 3).unwrap();
        let d = DigitVector::new(vec![hi(1), hi(-1), hi(1)]);
        assert_eq!(spec.compose(&d).unwrap(), hi(3)); // 1/2 - 1 + 2 = 3/2

        let bad = DigitVector::new(vec![hi(3), hi(-1), hi(1)]);
        assert_eq!(spec.compose(&bad), Err(Error::DigitOutOfRange { index: 0 }));
        // digit with the wrong parity (0 for p = 2) is also out of range
        let bad = DigitVector::new(vec![hi(0), hi(-1), hi(1)]);
        assert_eq!(spec.compose(&bad), Err(Error::DigitOutOfRange { index: 0 }));
    }

    #[test]
    fn decompose_examples() {
        let spec = ClusterSpec::new(2, 2).unwrap();
        assert_eq!(spec.decompose(hi(-3)).unwrap().digits(), &[hi(-1), hi(-1)]);

        let spec = ClusterSpec::new(3, 2).unwrap();
        assert_eq!(spec.decompose(hi(8)).unwrap().digits(), &[hi(2), hi(2)]); // s = 4 -> (1, 1)

        // j = 4 = 100 base 2, least-significant-first digits (0,0,1)
        let spec = ClusterSpec::new(2, 3).unwrap();
        assert_eq!(spec.decompose(hi(1)).unwrap().digits(), &[hi(-1), hi(-1), hi(1)]);

        assert_eq!(spec.decompose(hi(2)), Err(Error::ParityMismatch));
        assert_eq!(spec.decompose(hi(9)), Err(Error::SpinOutOfRange));
    }

    #[test]
    fn projection_table_examples() {
        let spec = ClusterSpec::new(2, 2).unwrap();
        let table = spec.projection_table();
        assert_eq!(table.rows()[0], vec![hi(-1), hi(1), hi(-1), hi(1)]);
        assert_eq!(table.rows()[1], vec![hi(-1), hi(-1), hi(1), hi(1)]);

        let spec = ClusterSpec::new(2, 3).unwrap();
        let table = spec.projection_table();
        for row in table.rows() {
            assert_eq!(row[7], hi(1)); // j = 7 = 111 base 2
            assert_eq!(row[0], hi(-1)); // j = 0 has all-zero digits
        }
    }

    #[test]
    fn projection_rows_match_floor_formula() {
        // entry[i][j] = floor(j p^(1-i)) - p floor(j p^(-i)) - (p-1)/2,
        // written with the most-significant index relabeled away.
        for (p, m) in [(2u32, 3u32), (3, 2), (5, 2)] {
            let spec = ClusterSpec::new(p, m).unwrap();
            let table = spec.projection_table();
            for i in 1..=m as usize {
                for j in 0..spec.size() {
                    let p64 = u64::from(p);
                    let lo = j / p64.pow(i as u32 - 1);
                    let hi_part = j / p64.pow(i as u32);
                    let expect = 2 * (lo as i64 - p as i64 * hi_part as i64) - (p as i64 - 1);
                    assert_eq!(table.rows()[i - 1][j as usize].doubled(), expect);
                }
            }
        }
    }

    #[test]
    fn projection_row_periodicity() {
        let spec = ClusterSpec::new(3, 3).unwrap();
        let table = spec.projection_table();
        for (i, row) in table.rows().iter().enumerate() {
            let period = 3usize.pow(i as u32 + 1);
            for j in 0..row.len() {
                assert_eq!(row[j], row[j % period]);
            }
            // each value appears equally often
            for v in [-2i64, 0, 2] {
                let count = row.iter().filter(|d| d.doubled() == v).count();
                assert_eq!(count, row.len() / 3);
            }
        }
    }

    #[test]
    fn lagrange_basis_examples() {
        // S = 3/2, j = 3: 1 at s = 3/2, 0 elsewhere
        let a3 = lagrange_basis(hi(3), 3).unwrap();
        assert_eq!(a3.eval(&frac(3, 2)), int(1));
        assert_eq!(a3.eval(&frac(1, 2)), int(0));

        // S = 1/2, j = 0: A_0(s) = 1/2 - s
        let a0 = lagrange_basis(hi(1), 0).unwrap();
        assert_eq!(a0, Poly::from_coeffs(vec![frac(1, 2), int(-1)]));

        assert_eq!(lagrange_basis(hi(3), 4), Err(Error::IndexOutOfRange));
    }

    #[test]
    fn lagrange_partition_of_unity() {
        for two_s in [1i64, 3, 4, 7] {
            let mut sum = Poly::zero();
            for j in 0..=two_s as u64 {
                sum = &sum + &lagrange_basis(hi(two_s), j).unwrap();
            }
            assert_eq!(sum, Poly::one());
        }
    }

    #[test]
    fn kronecker_property_exhaustive() {
        // all S up to 31/2
        for two_s in 1i64..=31 {
            let spin = hi(two_s);
            for j in 0..=two_s as u64 {
                let basis = lagrange_basis(spin, j).unwrap();
                for k in 0..=two_s as u64 {
                    let node = hi(2 * k as i64 - two_s);
                    let expect = if k == j { int(1) } else { int(0) };
                    assert_eq!(basis.eval_half(node), expect, "S={spin} j={j} k={k}");
                }
            }
        }
    }

    #[test]
    fn inverse_polynomials_printed_pair() {
        let spec = ClusterSpec::new(2, 2).unwrap();
        let polys = spec.inverse_polynomials();
        assert_eq!(polys[0], Poly::from_coeffs(vec![int(0), frac(-7, 6), int(0), frac(2, 3)]));
        assert_eq!(polys[1], Poly::from_coeffs(vec![int(0), frac(13, 12), int(0), frac(-1, 3)]));
    }

    #[test]
    fn inverse_polynomial_identity_for_single_digit() {
        let spec = ClusterSpec::new(2, 1).unwrap();
        assert_eq!(spec.inverse_polynomials(), vec![Poly::identity()]);
    }

    #[test]
    fn inverse_polynomials_three_ising_spins() {
        // derived independently by Lagrange interpolation over 8 nodes; the
        // published table for this case carries an overall sign misprint
        let spec = ClusterSpec::new(2, 3).unwrap();
        let polys = spec.inverse_polynomials();
        let w1 = vec![int(0), frac(-2161, 1680), int(0), frac(217, 180), int(0), frac(-11, 45), int(0), frac(4, 315)];
        let w2 = vec![int(0), frac(-14887, 13440), int(0), frac(637, 1440), int(0), frac(-17, 360), int(0), frac(1, 630)];
        let w4 = vec![int(0), frac(30251, 26880), int(0), frac(-301, 576), int(0), frac(61, 720), int(0), frac(-1, 252)];
        assert_eq!(polys[0], Poly::from_coeffs(w1));
        assert_eq!(polys[1], Poly::from_coeffs(w2));
        assert_eq!(polys[2], Poly::from_coeffs(w4));
    }

    #[test]
    fn general_inverse_special_rows() {
        let spin = hi(7); // S = 7/2
        let n = 8;
        // constant row interpolates the constant 1
        let ones = vec![vec![hi(2); n]];
        let polys = general_inverse(spin, &ones).unwrap();
        assert_eq!(polys[0], Poly::constant(int(1)));

        // row j - S interpolates s itself
        let idrow = vec![(0..n).map(|j| hi(2 * j as i64 - 7)).collect::<Vec<_>>()];
        let polys = general_inverse(spin, &idrow).unwrap();
        assert_eq!(polys[0], Poly::identity());

        let bad = vec![vec![hi(1); 3]];
        assert!(matches!(general_inverse(spin, &bad), Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn general_inverse_matches_inverse_polynomials() {
        for (p, m) in [(2u32, 3u32), (3, 2), (4, 2)] {
            let spec = ClusterSpec::new(p, m).unwrap();
            let table = spec.projection_table();
            let general = general_inverse(spec.spin(), table.rows()).unwrap();
            assert_eq!(general, spec.inverse_polynomials());
        }
    }

    #[test]
    fn roundtrip_reports() {
        let report = ClusterSpec::new(2, 2).unwrap().verify_roundtrip();
        assert!(report.pass());
        assert_eq!(report.eigenvalues_checked, 4);

        let report = ClusterSpec::new(3, 3).unwrap().verify_roundtrip();
        assert!(report.pass());
        assert_eq!(report.eigenvalues_checked, 27);

        let report = ClusterSpec::new(5, 1).unwrap().verify_roundtrip();
        assert!(report.pass());
    }

    #[test]
    fn inverse_polynomials_are_odd_and_bounded() {
        for (p, m) in [(2u32, 2u32), (2, 3), (3, 2), (5, 1)] {
            let spec = ClusterSpec::new(p, m).unwrap();
            let bound = spec.digit_bound().to_rational();
            for poly in spec.inverse_polynomials() {
                assert!(poly.is_odd(), "p={p} M={m}");
                for j in 0..spec.size() {
                    let s = hi(2 * j as i64 - (spec.size() as i64 - 1));
                    let v = poly.eval_half(s);
                    assert!(v.clone().abs() <= bound.clone().abs());
                }
            }
        }
    }
}
