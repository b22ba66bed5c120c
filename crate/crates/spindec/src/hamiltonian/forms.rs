//! Symbolic linear forms over the spin-model coupling constants, and the
//! reference table expressing the 19 layer constants of the spin-7/2 model
//! in terms of them.
//!
//! The field h_{2a} only ever enters bond energies through the product
//! gamma * h_{2a}, so that product is a single symbol here.

use super::{LayerKey, SpinCouplings};
use crate::rational::{format_rational, format_signed, frac, BigRational};
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// One coupling symbol of the up-down-symmetric spin model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CouplingKey {
    /// J_{alpha,beta}, normalized to alpha <= beta.
    J(u8, u8),
    /// gamma * h_{2a}, keyed by the (even) power 2a.
    GammaH(u8),
}

impl fmt::Display for CouplingKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CouplingKey::J(a, b) => write!(f, "J{a}{b}"),
            CouplingKey::GammaH(n) => write!(f, "gamma*h{n}"),
        }
    }
}

/// An exact linear combination of coupling symbols.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CouplingForm {
    terms: BTreeMap<CouplingKey, BigRational>,
}

impl CouplingForm {
    pub fn zero() -> Self {
        CouplingForm::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (CouplingKey, BigRational)>>(terms: I) -> Self {
        let mut form = CouplingForm::zero();
        for (key, coeff) in terms {
            form.add_term(key, coeff);
        }
        form
    }

    pub fn add_term(&mut self, key: CouplingKey, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coeff(&self, key: &CouplingKey) -> BigRational {
        self.terms.get(key).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CouplingKey, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sub(&self, other: &CouplingForm) -> CouplingForm {
        let mut out = self.clone();
        for (key, coeff) in &other.terms {
            out.add_term(*key, -coeff);
        }
        out
    }

    /// Evaluate at concrete couplings; `GammaH(2a)` takes gamma * h_{2a}.
    pub fn eval(&self, c: &SpinCouplings) -> BigRational {
        let gamma = BigRational::from_integer(BigInt::from(c.gamma()));
        let mut acc = BigRational::zero();
        for (key, coeff) in &self.terms {
            let value = match key {
                CouplingKey::J(a, b) => c.j(*a, *b),
                CouplingKey::GammaH(n) => &gamma * c.h(*n),
            };
            acc += coeff * value;
        }
        acc
    }
}

impl fmt::Display for CouplingForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (key, coeff)) in self.terms.iter().enumerate() {
            let mag: String = if coeff.clone().abs().is_one() {
                String::new()
            } else {
                alloc::format!("{} ", format_rational(&coeff.clone().abs()))
            };
            if k == 0 {
                let sign = if coeff.is_negative() { "-" } else { "" };
                write!(f, "{sign}{mag}{key}")?;
            } else {
                let signed = format_signed(coeff);
                let sign = &signed[..1];
                write!(f, " {sign} {mag}{key}")?;
            }
        }
        Ok(())
    }
}

fn j(a: u8, b: u8, n: i64, d: i64) -> (CouplingKey, BigRational) {
    (CouplingKey::J(a, b), frac(n, d))
}

fn gh(idx: u8, n: i64, d: i64) -> (CouplingKey, BigRational) {
    (CouplingKey::GammaH(idx), frac(n, d))
}

/// The 19 layer constants of the spin-7/2 model as linear forms in the 16
/// exchange couplings and the three field products gamma*h_{2a}.
///
/// Each constant equals the coefficient of each monomial in its interaction
/// pattern (the symmetrized groups carry no extra 1/2); under that
/// normalization this table makes the spin and layer bond energies equal up
/// to a configuration-independent constant, which `derive_reduction`
/// re-derives and `equivalence_check` verifies exhaustively.
pub fn spin72_forms() -> BTreeMap<LayerKey, CouplingForm> {
    let mut forms = BTreeMap::new();
    let mut put = |key: LayerKey, terms: Vec<(CouplingKey, BigRational)>| {
        forms.insert(key, CouplingForm::from_terms(terms));
    };

    put(LayerKey::K(1, 1), alloc::vec![
        j(1, 1, 1, 1), j(1, 3, 61, 4), j(1, 5, 3481, 16), j(1, 7, 186901, 64),
        j(3, 3, 3721, 16), j(3, 5, 212341, 64), j(3, 7, 11400961, 256),
        j(5, 5, 12117361, 256), j(5, 7, 650602381, 1024), j(7, 7, 34931983801, 4096),
    ]);
    put(LayerKey::K(1, 2), alloc::vec![
        j(1, 1, 2, 1), j(1, 3, 29, 1), j(1, 5, 2971, 8), j(1, 7, 37417, 8),
        j(3, 3, 3355, 8), j(3, 5, 42697, 8), j(3, 7, 8569045, 128),
        j(5, 5, 8566741, 128), j(5, 7, 212837399, 256), j(7, 7, 21014213935, 2048),
    ]);
    put(LayerKey::K(1, 3), alloc::vec![
        j(1, 1, 4, 1), j(1, 3, 46, 1), j(1, 5, 2371, 4), j(1, 7, 7606, 1),
        j(3, 3, 1891, 4), j(3, 5, 5776, 1), j(3, 7, 4619941, 64),
        j(5, 5, 4389541, 64), j(5, 7, 108081833, 128), j(7, 7, 10558224391, 1024),
    ]);
    put(LayerKey::K(2, 2), alloc::vec![
        j(1, 1, 4, 1), j(1, 3, 55, 1), j(1, 5, 2461, 4), j(1, 7, 112435, 16),
        j(3, 3, 3025, 4), j(3, 5, 135355, 16), j(3, 7, 6183925, 64),
        j(5, 5, 6056521, 64), j(5, 7, 276702535, 256), j(7, 7, 12641629225, 1024),
    ]);
    put(LayerKey::K(2, 3), alloc::vec![
        j(1, 1, 8, 1), j(1, 3, 86, 1), j(1, 5, 1861, 2), j(1, 7, 84463, 8),
        j(3, 3, 1705, 2), j(3, 5, 72823, 8), j(3, 7, 3296245, 32),
        j(5, 5, 3103321, 32), j(5, 7, 140402443, 128), j(7, 7, 6351565585, 512),
    ]);
    put(LayerKey::K(3, 3), alloc::vec![
        j(1, 1, 16, 1), j(1, 3, 124, 1), j(1, 5, 1261, 1), j(1, 7, 56491, 4),
        j(3, 3, 961, 1), j(3, 5, 39091, 4), j(3, 7, 1751221, 16),
        j(5, 5, 1590121, 16), j(5, 7, 71235151, 64), j(7, 7, 3191233081, 256),
    ]);
    put(LayerKey::K(2, 1), alloc::vec![
        j(2, 2, 21, 1), j(2, 4, 3003, 8), j(2, 6, 41613, 8), j(4, 4, 41181, 8),
        j(4, 6, 8470293, 128), j(6, 6, 212094831, 256),
        gh(2, 2, 1), gh(4, 53, 1), gh(6, 6331, 8),
    ]);
    put(LayerKey::K(3, 1), alloc::vec![
        j(2, 2, 42, 1), j(2, 4, 1995, 4), j(2, 6, 25233, 4), j(4, 4, 22533, 4),
        j(4, 6, 4438005, 64), j(6, 6, 107571711, 128),
        gh(2, 4, 1), gh(4, 58, 1), gh(6, 3211, 4),
    ]);
    put(LayerKey::K(3, 2), alloc::vec![
        j(2, 2, 84, 1), j(2, 4, 1743, 2), j(2, 6, 9624, 1), j(4, 4, 17871, 2),
        j(4, 6, 3150213, 32), j(6, 6, 69380571, 64),
        gh(2, 8, 1), gh(4, 92, 1), gh(6, 2071, 2),
    ]);
    put(LayerKey::RPair(1, 2), alloc::vec![
        j(2, 2, 16, 1), j(2, 4, 424, 1), j(2, 6, 6331, 1), j(4, 4, 11236, 1),
        j(4, 6, 335543, 2), j(6, 6, 40081561, 16),
    ]);
    put(LayerKey::RPair(1, 3), alloc::vec![
        j(2, 2, 64, 1), j(2, 4, 928, 1), j(2, 6, 12844, 1), j(4, 4, 13456, 1),
        j(4, 6, 186238, 1), j(6, 6, 10310521, 4),
    ]);
    put(LayerKey::RPair(2, 3), alloc::vec![
        j(2, 2, 256, 1), j(2, 4, 2944, 1), j(2, 6, 33136, 1), j(4, 4, 33856, 1),
        j(4, 6, 381064, 1), j(6, 6, 4289041, 1),
    ]);
    put(LayerKey::RTriple(1, 2, 3), alloc::vec![
        j(2, 2, 32, 1), j(2, 4, 656, 1), j(2, 6, 9542, 1), j(4, 4, 12296, 1),
        j(4, 6, 176891, 1), j(6, 6, 20328841, 8),
    ]);
    put(LayerKey::RTriple(2, 1, 3), alloc::vec![
        j(2, 2, 64, 1), j(2, 4, 1216, 1), j(2, 6, 16804, 1), j(4, 4, 19504, 1),
        j(4, 6, 255376, 1), j(6, 6, 13111501, 4),
    ]);
    put(LayerKey::RTriple(3, 1, 2), alloc::vec![
        j(2, 2, 128, 1), j(2, 4, 1664, 1), j(2, 6, 21128, 1), j(4, 4, 21344, 1),
        j(4, 6, 267824, 1), j(6, 6, 6649981, 2),
    ]);
    put(LayerKey::RTriple(1, 3, 2), alloc::vec![
        j(1, 3, 24, 1), j(1, 5, 420, 1), j(1, 7, 11613, 2), j(3, 3, 732, 1),
        j(3, 5, 23253, 2), j(3, 7, 158637, 1), j(5, 5, 365505, 2),
        j(5, 7, 79674063, 32), j(7, 7, 2170481313, 64),
    ]);
    put(LayerKey::RTriple(2, 3, 1), alloc::vec![
        j(1, 3, 48, 1), j(1, 5, 840, 1), j(1, 7, 11613, 1), j(3, 3, 1320, 1),
        j(3, 5, 18933, 1), j(3, 7, 244005, 1), j(5, 5, 258405, 1),
        j(5, 7, 52190943, 16), j(7, 7, 1305707655, 32),
    ]);
    put(LayerKey::RTriple(3, 2, 1), alloc::vec![
        j(1, 3, 96, 1), j(1, 5, 1680, 1), j(1, 7, 23226, 1), j(3, 3, 1488, 1),
        j(3, 5, 20586, 1), j(3, 7, 264738, 1), j(5, 5, 264810, 1),
        j(5, 7, 26507103, 8), j(7, 7, 656029983, 16),
    ]);
    // overall factor 9; the published form indexes three couplings in
    // reversed order (J53, J73, J75), normalized here to alpha <= beta
    put(LayerKey::RSix, alloc::vec![
        j(3, 3, 9 * 256, 1), j(3, 5, 9 * 4480, 1), j(5, 5, 9 * 78400, 1),
        j(3, 7, 9 * 61936, 1), j(5, 7, 9 * 1083880, 1), j(7, 7, 9 * 14984641, 1),
    ]);

    forms
}
