//! The spin-7/2 <-> three-layer spin-1/2 equivalence.
//!
//! The up-down-symmetric spin-7/2 model has 16 exchange couplings J_{alpha,
//! beta} (alpha <= beta, alpha + beta even) and three even fields h_2, h_4,
//! h_6 on a gamma-regular lattice. Substituting s = sigma_1 + 2 sigma_2 +
//! 4 sigma_3 (layer a carries digit weight 2^(a-1)) turns each bond energy
//! into a multilinear expression in the six sigma variables, and collecting
//! monomials yields 19 layer constants: 9 two-spin K's, 3 + 6 four-spin R's
//! and one six-spin R. [`reduce_couplings`] evaluates the reference table,
//! [`derive::derive_reduction`] re-derives it from scratch for any (p, M),
//! and [`equivalence_check`] verifies the result bond-by-bond over all 64^2
//! configurations.
//!
//! Normalization: every layer constant multiplies its symmetrized pattern
//! directly (no extra 1/2), so each constant is the coefficient of each
//! monomial in its pattern. This is the normalization under which the
//! reference table is exact; dividing the symmetrized groups by two instead
//! would double every cross, glue and triple constant.

pub mod derive;
pub mod forms;
pub mod solve;

pub use derive::{derive_reduction, DerivedReduction, Pattern};
pub use forms::{spin72_forms, CouplingForm, CouplingKey};
pub use solve::{solve_exact, solve_free, solve_periodic, ExactSolution, FreeSolution, PeriodicSolution};

use crate::bijection::{ClusterSpec, DigitVector};
use crate::half_int::HalfInt;
use crate::rational::BigRational;
use crate::Error;
use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_traits::Zero;

/// The 16 exchange keys (alpha, beta) with alpha <= beta and even sum.
pub const J_KEYS: [(u8, u8); 16] = [
    (1, 1), (1, 3), (1, 5), (1, 7), (2, 2), (2, 4), (2, 6), (3, 3),
    (3, 5), (3, 7), (4, 4), (4, 6), (5, 5), (5, 7), (6, 6), (7, 7),
];

/// The three even field keys 2a.
pub const H_KEYS: [u8; 3] = [2, 4, 6];

/// Couplings of the up-down-symmetric spin-7/2 model (19 constants + gamma).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinCouplings {
    j: BTreeMap<(u8, u8), BigRational>,
    h: BTreeMap<u8, BigRational>,
    gamma: u32,
}

impl SpinCouplings {
    pub fn new(gamma: u32) -> Self {
        SpinCouplings { j: BTreeMap::new(), h: BTreeMap::new(), gamma }
    }

    pub fn gamma(&self) -> u32 {
        self.gamma
    }

    /// Set J_{alpha,beta}; either index order is accepted and normalized.
    pub fn set_j(&mut self, alpha: u8, beta: u8, value: BigRational) -> Result<(), Error> {
        let key = (alpha.min(beta), alpha.max(beta));
        if !J_KEYS.contains(&key) {
            return Err(Error::InvalidCouplingKey(alloc::format!("J{alpha}{beta}")));
        }
        if value.is_zero() {
            self.j.remove(&key);
        } else {
            self.j.insert(key, value);
        }
        Ok(())
    }

    pub fn set_h(&mut self, idx: u8, value: BigRational) -> Result<(), Error> {
        if !H_KEYS.contains(&idx) {
            return Err(Error::InvalidCouplingKey(alloc::format!("h{idx}")));
        }
        if value.is_zero() {
            self.h.remove(&idx);
        } else {
            self.h.insert(idx, value);
        }
        Ok(())
    }

    pub fn j(&self, alpha: u8, beta: u8) -> BigRational {
        let key = (alpha.min(beta), alpha.max(beta));
        self.j.get(&key).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn h(&self, idx: u8) -> BigRational {
        self.h.get(&idx).cloned().unwrap_or_else(BigRational::zero)
    }
}

/// Names of the 19 layer constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LayerKey {
    /// K_{a,b}: diagonal bond (a = b), inter-site cross (a < b), on-site
    /// glue (a > b).
    K(u8, u8),
    /// R_{a,b} four-spin constant, a < b.
    RPair(u8, u8),
    /// R_{a,b,c} four-spin constant: sigma_a on both sites, then sigma_b
    /// sigma_c across sites (b < c) or on one site (b > c).
    RTriple(u8, u8, u8),
    /// The six-spin constant R.
    RSix,
}

impl LayerKey {
    /// All 19 keys in the documented output order.
    pub const ALL: [LayerKey; 19] = [
        LayerKey::K(1, 1), LayerKey::K(1, 2), LayerKey::K(1, 3),
        LayerKey::K(2, 2), LayerKey::K(2, 3), LayerKey::K(3, 3),
        LayerKey::K(2, 1), LayerKey::K(3, 1), LayerKey::K(3, 2),
        LayerKey::RPair(1, 2), LayerKey::RPair(1, 3), LayerKey::RPair(2, 3),
        LayerKey::RTriple(1, 2, 3), LayerKey::RTriple(2, 1, 3), LayerKey::RTriple(3, 1, 2),
        LayerKey::RTriple(1, 3, 2), LayerKey::RTriple(2, 3, 1), LayerKey::RTriple(3, 2, 1),
        LayerKey::RSix,
    ];

    fn is_valid(self) -> bool {
        LayerKey::ALL.contains(&self)
    }
}

impl fmt::Display for LayerKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LayerKey::K(a, b) => write!(f, "K{a}{b}"),
            LayerKey::RPair(a, b) => write!(f, "R{a}{b}"),
            LayerKey::RTriple(a, b, c) => write!(f, "R{a}{b}{c}"),
            LayerKey::RSix => write!(f, "R"),
        }
    }
}

/// The 19 constants of the three-layer model.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LayerCouplings {
    values: BTreeMap<LayerKey, BigRational>,
}

impl LayerCouplings {
    pub fn new() -> Self {
        LayerCouplings::default()
    }

    pub fn set(&mut self, key: LayerKey, value: BigRational) -> Result<(), Error> {
        if !key.is_valid() {
            return Err(Error::InvalidCouplingKey(key.to_string()));
        }
        if value.is_zero() {
            self.values.remove(&key);
        } else {
            self.values.insert(key, value);
        }
        Ok(())
    }

    pub fn get(&self, key: LayerKey) -> BigRational {
        self.values.get(&key).cloned().unwrap_or_else(BigRational::zero)
    }
}

/// Evaluate the 19 reference linear forms at concrete couplings.
pub fn reduce_couplings(c: &SpinCouplings) -> LayerCouplings {
    let mut out = LayerCouplings::new();
    for (key, form) in spin72_forms() {
        out.set(key, form.eval(c)).expect("reference keys are valid");
    }
    out
}

fn check_spin72(s: HalfInt) -> Result<(), Error> {
    if s.doubled().abs() > 7 {
        return Err(Error::SpinOutOfRange);
    }
    if s.doubled() % 2 == 0 {
        return Err(Error::ParityMismatch);
    }
    Ok(())
}

/// Powers s^1..s^7 of a spin value.
fn spin_powers(s: HalfInt) -> [BigRational; 8] {
    let v = s.to_rational();
    let mut out: [BigRational; 8] = Default::default();
    out[0] = BigRational::from_integer(BigInt::from(1));
    for k in 1..8 {
        out[k] = &out[k - 1] * &v;
    }
    out
}

/// Per-bond energy of the spin-7/2 model:
/// sum_{alpha <= beta} (J/2)(s_i^a s_j^b + s_i^b s_j^a)
/// + sum_a (gamma h_{2a}/2)(s_i^{2a} + s_j^{2a}).
pub fn bond_energy_spin(s_i: HalfInt, s_j: HalfInt, c: &SpinCouplings) -> Result<BigRational, Error> {
    check_spin72(s_i)?;
    check_spin72(s_j)?;
    let pi = spin_powers(s_i);
    let pj = spin_powers(s_j);
    let mut acc = BigRational::zero();
    for &(a, b) in &J_KEYS {
        let coupling = c.j(a, b);
        if coupling.is_zero() {
            continue;
        }
        let (a, b) = (a as usize, b as usize);
        acc += coupling / BigRational::from_integer(BigInt::from(2)) * (&pi[a] * &pj[b] + &pi[b] * &pj[a]);
    }
    let gamma = BigRational::from_integer(BigInt::from(c.gamma));
    for &idx in &H_KEYS {
        let field = c.h(idx);
        if field.is_zero() {
            continue;
        }
        let n = idx as usize;
        acc += &gamma * field / BigRational::from_integer(BigInt::from(2)) * (&pi[n] + &pj[n]);
    }
    Ok(acc)
}

fn layer_values(d: &DigitVector) -> Result<[BigRational; 3], Error> {
    if d.len() != 3 {
        return Err(Error::ShapeMismatch { expected: 3, found: d.len() });
    }
    let mut out: [BigRational; 3] = Default::default();
    for (i, &digit) in d.iter().enumerate() {
        if digit.doubled().abs() != 1 {
            return Err(Error::DigitOutOfRange { index: i });
        }
        out[i] = digit.to_rational();
    }
    Ok(out)
}

/// Per-bond energy of the three-layer model, in the normalization described
/// at the module level (each constant multiplies its symmetrized pattern
/// directly).
pub fn bond_energy_layers(d_i: &DigitVector, d_j: &DigitVector, k: &LayerCouplings) -> Result<BigRational, Error> {
    let si = layer_values(d_i)?;
    let sj = layer_values(d_j)?;
    let mut acc = BigRational::zero();

    // two-spin: diagonal, inter-site cross, on-site glue
    for a in 0..3 {
        acc += k.get(LayerKey::K(a as u8 + 1, a as u8 + 1)) * (&si[a] * &sj[a]);
    }
    for (a, b) in [(0usize, 1usize), (0, 2), (1, 2)] {
        let cross = k.get(LayerKey::K(a as u8 + 1, b as u8 + 1));
        if !cross.is_zero() {
            acc += cross * (&si[a] * &sj[b] + &si[b] * &sj[a]);
        }
        let glue = k.get(LayerKey::K(b as u8 + 1, a as u8 + 1));
        if !glue.is_zero() {
            acc += glue * (&si[a] * &si[b] + &sj[a] * &sj[b]);
        }
    }

    // four-spin: same-pair product, cross triples (b < c), on-site triples
    for (a, b) in [(0usize, 1usize), (0, 2), (1, 2)] {
        let r = k.get(LayerKey::RPair(a as u8 + 1, b as u8 + 1));
        if !r.is_zero() {
            acc += r * (&si[a] * &si[b] * &sj[a] * &sj[b]);
        }
    }
    for (a, b, c) in [(0usize, 1usize, 2usize), (1, 0, 2), (2, 0, 1)] {
        let r = k.get(LayerKey::RTriple(a as u8 + 1, b as u8 + 1, c as u8 + 1));
        if !r.is_zero() {
            acc += r * (&si[a] * &sj[a]) * (&si[b] * &sj[c] + &sj[b] * &si[c]);
        }
        let r = k.get(LayerKey::RTriple(a as u8 + 1, c as u8 + 1, b as u8 + 1));
        if !r.is_zero() {
            acc += r * (&si[a] * &sj[a]) * (&si[b] * &si[c] + &sj[b] * &sj[c]);
        }
    }

    // six-spin
    let r = k.get(LayerKey::RSix);
    if !r.is_zero() {
        acc += r * (&si[0] * &si[1] * &si[2] * &sj[0] * &sj[1] * &sj[2]);
    }
    Ok(acc)
}

/// Outcome of the exhaustive bond-energy comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivalenceOutcome {
    /// Spin and layer energies differ by this constant on every one of the
    /// 64 x 64 bond configurations.
    Constant(BigRational),
    /// First configuration whose difference deviates from the rest.
    Mismatch { s_i: HalfInt, s_j: HalfInt, difference: BigRational, expected: BigRational },
}

impl EquivalenceOutcome {
    pub fn constant(&self) -> Option<&BigRational> {
        match self {
            EquivalenceOutcome::Constant(c) => Some(c),
            EquivalenceOutcome::Mismatch { .. } => None,
        }
    }
}

/// Sweep all 64^2 bond configurations (s_i, s_j) of the spin-7/2 chain...
/// of the spin-7/2 bond, comparing `bond_energy_spin` against
/// `bond_energy_layers` on the decomposed digits.
pub fn equivalence_check(c: &SpinCouplings, k: &LayerCouplings) -> EquivalenceOutcome {
    let spec = ClusterSpec::new(2, 3).expect("2^3 is within every limit");
    let spins: Vec<HalfInt> = (0..8).map(|t| HalfInt::from_doubled(2 * t - 7)).collect();
    let digits: Vec<DigitVector> = spins.iter().map(|&s| spec.decompose(s).expect("in range")).collect();
    let mut offset: Option<BigRational> = None;
    for (ti, &s_i) in spins.iter().enumerate() {
        for (tj, &s_j) in spins.iter().enumerate() {
            let spin_energy = bond_energy_spin(s_i, s_j, c).expect("valid spins");
            let layer_energy = bond_energy_layers(&digits[ti], &digits[tj], k).expect("valid digits");
            let difference = spin_energy - layer_energy;
            match &offset {
                None => offset = Some(difference),
                Some(expected) if *expected == difference => {}
                Some(expected) => {
                    return EquivalenceOutcome::Mismatch {
                        s_i,
                        s_j,
                        difference,
                        expected: expected.clone(),
                    };
                }
            }
        }
    }
    EquivalenceOutcome::Constant(offset.expect("at least one configuration"))
}
