//! The periodic spin-1/2 Ising chain as a single particle of spin
//! S = (2^M - 1)/2.
//!
//! Under the digit bijection the 2^M chain configurations are the 2S + 1
//! momenta of one large spin, and the chain energy becomes the diagonal of
//! an exactly computable matrix F: the per-momentum energy is an exact
//! linear form a*J + b*h, so the partition function is a finite multiset of
//! exponentials. Everything here is exact up to the explicitly numeric
//! functions, which evaluate in f64.
//!
//! Two misprint corrections are applied and documented in [`crate::errata`]:
//! the closed two-eigenvalue form uses the off-diagonal product e^(-J/2)
//! (the literal gap factors give e^(+J/2)), and the free-energy radical uses
//! sinh^2(h/2) (printed unsquared).

use crate::bijection::ClusterSpec;
use crate::half_int::HalfInt;
use crate::rational::{format_rational, BigRational};
use crate::Error;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_traits::{Float, Signed, ToPrimitive, Zero};

/// F matrices are (2^M)^2 dense; keep M small for them.
pub const F_MATRIX_LIMIT: u32 = 20;

/// Symbolic enumeration walks all 2^M states.
pub const SYMBOLIC_LIMIT: u32 = 24;

/// A periodic uniform chain of M spin-1/2 sites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainSpec {
    m: u32,
}

impl ChainSpec {
    pub fn new(m: u32) -> Result<Self, Error> {
        if m < 2 {
            return Err(Error::InvalidSpec { p: 2, m });
        }
        Ok(ChainSpec { m })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    fn cluster(&self) -> Result<ClusterSpec, Error> {
        ClusterSpec::with_limit(2, self.m, 1 << 30).map_err(|_| Error::LimitExceeded { limit: 1 << 30 })
    }
}

/// An exact energy a*J + b*h.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LinearForm {
    j_coeff: BigRational,
    h_coeff: BigRational,
}

impl LinearForm {
    pub fn new(j_coeff: BigRational, h_coeff: BigRational) -> Self {
        LinearForm { j_coeff, h_coeff }
    }

    pub fn zero() -> Self {
        LinearForm::new(BigRational::zero(), BigRational::zero())
    }

    pub fn j_coeff(&self) -> &BigRational {
        &self.j_coeff
    }

    pub fn h_coeff(&self) -> &BigRational {
        &self.h_coeff
    }

    pub fn flip_field(&self) -> LinearForm {
        LinearForm::new(self.j_coeff.clone(), -&self.h_coeff)
    }

    /// Numeric value of the exponent at concrete couplings.
    pub fn eval(&self, j: f64, h: f64) -> f64 {
        rational_to_f64(&self.j_coeff) * j + rational_to_f64(&self.h_coeff) * h
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().expect("chain coefficients are tiny")
}

/// Prints `a J + b h` with explicit signs on the field part.
impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = if self.h_coeff.is_negative() {
            alloc::format!("- {} h", format_rational(&-&self.h_coeff))
        } else {
            alloc::format!("+ {} h", format_rational(&self.h_coeff))
        };
        write!(f, "{} J {}", format_rational(&self.j_coeff), field)
    }
}

/// An exact partition function: a multiset of energy forms.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymbolicZ {
    terms: BTreeMap<LinearForm, u64>,
}

impl SymbolicZ {
    pub fn new() -> Self {
        SymbolicZ::default()
    }

    pub fn insert(&mut self, form: LinearForm, multiplicity: u64) {
        if multiplicity == 0 {
            return;
        }
        *self.terms.entry(form).or_insert(0) += multiplicity;
    }

    /// Terms in canonical order (ascending J coefficient, then field).
    pub fn terms(&self) -> impl Iterator<Item = (&LinearForm, u64)> {
        self.terms.iter().map(|(form, &m)| (form, m))
    }

    pub fn distinct_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.terms.values().sum()
    }

    /// Numeric evaluation sum_k mult_k * exp(form_k).
    pub fn eval(&self, j: f64, h: f64) -> f64 {
        self.terms
            .iter()
            .map(|(form, &mult)| mult as f64 * Float::exp(form.eval(j, h)))
            .sum()
    }

    /// The field-reversal image Z(J, -h).
    pub fn flip_field(&self) -> SymbolicZ {
        let mut out = SymbolicZ::new();
        for (form, &mult) in &self.terms {
            out.insert(form.flip_field(), mult);
        }
        out
    }
}

/// One line per term: `mult * exp(a J + b h)`, canonical order.
impl fmt::Display for SymbolicZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (form, mult)) in self.terms().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{mult} * exp({form})")?;
        }
        Ok(())
    }
}

/// Projection value of chain site m (1-based, counted from the most
/// significant digit) for configuration index `idx`.
fn site_value(rows: &[Vec<HalfInt>], m_sites: u32, site: u32, idx: usize) -> HalfInt {
    // chain site m corresponds to digit weight 2^(M-m)
    let weight_index = (m_sites - site) as usize;
    rows[weight_index][idx]
}

/// The full (2^M) x (2^M) matrix F with
/// F[j][j'] = sum_m [ J P(j,m) P(j',m+1) + (h/2)(P(j,m) + P(j',m+1)) ],
/// site M+1 wrapping to site 1.
pub fn f_matrix(chain: &ChainSpec) -> Result<Vec<Vec<LinearForm>>, Error> {
    if chain.m > F_MATRIX_LIMIT {
        return Err(Error::LimitExceeded { limit: F_MATRIX_LIMIT as u64 });
    }
    let spec = chain.cluster()?;
    let table = spec.projection_table();
    let rows = table.rows();
    let n = spec.size() as usize;
    let m_sites = chain.m;
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let mut row = Vec::with_capacity(n);
        for jp in 0..n {
            let mut j_coeff = BigRational::zero();
            let mut h_coeff = BigRational::zero();
            for site in 1..=m_sites {
                let next = site % m_sites + 1;
                let p_here = site_value(rows, m_sites, site, j);
                let p_next = site_value(rows, m_sites, next, jp);
                j_coeff += p_here.to_rational() * p_next.to_rational();
                h_coeff += &half * (p_here.to_rational() + p_next.to_rational());
            }
            row.push(LinearForm::new(j_coeff, h_coeff));
        }
        out.push(row);
    }
    Ok(out)
}

/// General-graph variant: F[j][j'] = sum over bonds (m, m') of
/// [ w J P(j,m) P(j',m') + (2 h_scale / gamma) h (P(j,m) + P(j',m')) ],
/// where w is the bond's weight (its coupling in units of J). Site indices
/// are 1-based in the most-significant-first chain convention.
pub fn f_matrix_general(
    spec: &ClusterSpec,
    bonds: &[(u32, u32, BigRational)],
    h_scale: &BigRational,
    gamma: u32,
) -> Result<Vec<Vec<LinearForm>>, Error> {
    if spec.m() > F_MATRIX_LIMIT {
        return Err(Error::LimitExceeded { limit: F_MATRIX_LIMIT as u64 });
    }
    if gamma == 0 {
        return Err(Error::InvalidCouplingKey(String::from("gamma")));
    }
    for &(a, b, _) in bonds {
        if a < 1 || a > spec.m() || b < 1 || b > spec.m() {
            return Err(Error::IndexOutOfRange);
        }
    }
    let table = spec.projection_table();
    let rows = table.rows();
    let n = spec.size() as usize;
    let field_weight = BigRational::new(BigInt::from(2), BigInt::from(gamma)) * h_scale;
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let mut row = Vec::with_capacity(n);
        for jp in 0..n {
            let mut j_coeff = BigRational::zero();
            let mut h_coeff = BigRational::zero();
            for (a, b, weight) in bonds {
                let p_here = site_value(rows, spec.m(), *a, j);
                let p_next = site_value(rows, spec.m(), *b, jp);
                j_coeff += weight * (p_here.to_rational() * p_next.to_rational());
                h_coeff += &field_weight * (p_here.to_rational() + p_next.to_rational());
            }
            row.push(LinearForm::new(j_coeff, h_coeff));
        }
        out.push(row);
    }
    Ok(out)
}

/// The energy of one spin-S momentum: the diagonal entry F[s+S][s+S],
/// computed directly (the basis polynomials are eigenvalue indicators, so
/// off-diagonal entries never contribute).
pub fn single_particle_energy(chain: &ChainSpec, s: HalfInt) -> Result<LinearForm, Error> {
    let spec = chain.cluster()?;
    let digits = spec.decompose(s)?;
    let m_sites = chain.m;
    let value = |site: u32| digits[(m_sites - site) as usize];
    let mut j_coeff = BigRational::zero();
    let mut h_doubled: i64 = 0;
    for site in 1..=m_sites {
        let next = site % m_sites + 1;
        j_coeff += value(site).to_rational() * value(next).to_rational();
        h_doubled += value(site).doubled();
    }
    Ok(LinearForm::new(j_coeff, HalfInt::from_doubled(h_doubled).to_rational()))
}

/// The exact partition function: the multiset of per-momentum energies over
/// all 2^M spin-S momenta.
pub fn partition_symbolic(chain: &ChainSpec) -> Result<SymbolicZ, Error> {
    if chain.m > SYMBOLIC_LIMIT {
        return Err(Error::LimitExceeded { limit: SYMBOLIC_LIMIT as u64 });
    }
    let spec = chain.cluster()?;
    let n = spec.size() as i64;
    let mut z = SymbolicZ::new();
    for idx in 0..n {
        let s = HalfInt::from_doubled(2 * idx - (n - 1));
        z.insert(single_particle_energy(chain, s)?, 1);
    }
    Ok(z)
}

/// The exact exponents of the closed-form ingredients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapFactors {
    /// Exponents of the extreme-momentum factors: J/4 +- h/2.
    pub a_plus: LinearForm,
    pub a_minus: LinearForm,
    /// Exponents of the next-to-extreme factors:
    /// ((M-4)/(4M)) J +- ((M-2)/(2M)) h.
    pub c_plus: LinearForm,
    pub c_minus: LinearForm,
    /// Gap energies J +- h.
    pub delta_e_plus: LinearForm,
    pub delta_e_minus: LinearForm,
    /// Literal published gap factors exp(+(J +- h)/4); their product
    /// exp(J/2) contradicts the exact M = 2 table.
    pub b_plus_literal: LinearForm,
    pub b_minus_literal: LinearForm,
    /// Corrected off-diagonal product exponent, -J/2, used by
    /// [`partition_closed_form`].
    pub b_product: LinearForm,
}

pub fn gap_factors(chain: &ChainSpec) -> GapFactors {
    let m = chain.m as i64;
    let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    GapFactors {
        a_plus: LinearForm::new(q(1, 4), q(1, 2)),
        a_minus: LinearForm::new(q(1, 4), q(-1, 2)),
        c_plus: LinearForm::new(q(m - 4, 4 * m), q(m - 2, 2 * m)),
        c_minus: LinearForm::new(q(m - 4, 4 * m), q(-(m - 2), 2 * m)),
        delta_e_plus: LinearForm::new(q(1, 1), q(1, 1)),
        delta_e_minus: LinearForm::new(q(1, 1), q(-1, 1)),
        b_plus_literal: LinearForm::new(q(1, 4), q(1, 4)),
        b_minus_literal: LinearForm::new(q(1, 4), q(-1, 4)),
        b_product: LinearForm::new(q(-1, 2), q(0, 1)),
    }
}

fn finite(v: f64) -> Result<f64, Error> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow)
    }
}

/// Closed two-eigenvalue form:
/// lambda_pm = (a+ + a- +- sqrt((a+ - a-)^2 + 4 e^(-J/2)))/2,
/// Z = lambda_+^M + lambda_-^M.
pub fn partition_closed_form(chain: &ChainSpec, j: f64, h: f64) -> Result<f64, Error> {
    let a_plus = Float::exp(j / 4.0 + h / 2.0);
    let a_minus = Float::exp(j / 4.0 - h / 2.0);
    let gap = (a_plus - a_minus) * (a_plus - a_minus) + 4.0 * Float::exp(-j / 2.0);
    let root = Float::sqrt(gap);
    let lambda_plus = (a_plus + a_minus + root) / 2.0;
    let lambda_minus = (a_plus + a_minus - root) / 2.0;
    finite(Float::powi(lambda_plus, chain.m as i32) + Float::powi(lambda_minus, chain.m as i32))
}

/// Independent oracle: Z = trace(T^M) for the symmetric 2 x 2 transfer
/// matrix with diagonal e^(J/4 +- h/2) and off-diagonal e^(-J/4), evaluated
/// by repeated matrix multiplication.
pub fn transfer_matrix_partition(chain: &ChainSpec, j: f64, h: f64) -> Result<f64, Error> {
    let t = [
        [Float::exp(j / 4.0 + h / 2.0), Float::exp(-j / 4.0)],
        [Float::exp(-j / 4.0), Float::exp(j / 4.0 - h / 2.0)],
    ];
    let mut acc = t;
    for _ in 1..chain.m {
        let mut next = [[0.0f64; 2]; 2];
        for (r, next_row) in next.iter_mut().enumerate() {
            for (c, slot) in next_row.iter_mut().enumerate() {
                *slot = acc[r][0] * t[0][c] + acc[r][1] * t[1][c];
            }
        }
        acc = next;
    }
    finite(acc[0][0] + acc[1][1])
}

/// Thermodynamic free energy per site:
/// ln( e^(J/4) cosh(h/2) + sqrt(e^(J/2) sinh^2(h/2) + e^(-J/2)) ).
pub fn free_energy(j: f64, h: f64) -> f64 {
    let sh = Float::sinh(h / 2.0);
    let radical = Float::exp(j / 2.0) * sh * sh + Float::exp(-j / 2.0);
    Float::ln(Float::exp(j / 4.0) * Float::cosh(h / 2.0) + Float::sqrt(radical))
}
