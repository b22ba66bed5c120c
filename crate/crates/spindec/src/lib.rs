//! Exact spin-cluster decomposition toolkit.
//!
//! A spin variable with S = (p^M - 1)/2 takes exactly p^M values, the same
//! count as a cluster of M spins sigma = (p - 1)/2. Writing the spin value in
//! base p turns that counting identity into a bijection, and this crate works
//! out everything that follows from it with exact rational arithmetic:
//!
//! * [`bijection`] — the digit map, projection tables, Lagrange bases and the
//!   inverse polynomials sigma_m(s), for arbitrary p >= 2, M >= 1.
//! * [`hamiltonian`] — the spin-7/2 <-> three-layer spin-1/2 equivalence:
//!   bond energies, the 19 layer coupling constants, a generic derivation
//!   engine that re-derives them for any (p, M), and the constrained families
//!   (periodic, free-boundary, exactly solvable).
//! * [`partition`] — the 1D Ising chain rewritten as a single particle of
//!   spin S = (2^M - 1)/2: exact symbolic partition functions, the closed
//!   two-eigenvalue form, a transfer-matrix oracle and the free energy.
//! * [`errata`] — machine-verified corrections to misprints in the published
//!   closed-form expressions these modules reproduce.
//!
//! Everything is exact until the explicitly numeric boundary in
//! [`partition`]; there `f64` is used and documented as such. The crate is
//! `no_std`-compatible (with `alloc`) when built without the `std` feature.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bijection;
pub mod errata;
pub mod half_int;
pub mod hamiltonian;
pub mod linalg;
pub mod partition;
pub mod poly;
pub mod rational;

pub use half_int::HalfInt;
pub use poly::Poly;
pub use rational::BigRational;

use alloc::string::String;
use core::fmt;

/// Error type shared by all modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// p < 2 or M < 1.
    InvalidSpec { p: u32, m: u32 },
    /// p^M exceeds the configured limit (or overflows u64).
    LimitExceeded { limit: u64 },
    /// A cluster digit lies outside {-(p-1)/2, ..., (p-1)/2}.
    DigitOutOfRange { index: usize },
    /// A spin eigenvalue lies outside {-S, ..., S}.
    SpinOutOfRange,
    /// 2s does not have the parity of 2S.
    ParityMismatch,
    /// Lagrange index j outside 0..=2S, or a site index outside 1..=M.
    IndexOutOfRange,
    /// A projection table row has the wrong length.
    ShapeMismatch { expected: usize, found: usize },
    /// Coupling key outside the allowed index set.
    InvalidCouplingKey(String),
    /// Linear system has no unique solution.
    Singular,
    /// Linear system has no solution.
    Inconsistent,
    /// Numeric evaluation left the finite f64 range.
    Overflow,
    /// Malformed rational literal.
    ParseRational(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidSpec { p, m } => {
                write!(f, "invalid cluster spec p={p}, M={m} (need p >= 2, M >= 1)")
            }
            Error::LimitExceeded { limit } => {
                write!(f, "p^M exceeds the configured limit {limit}")
            }
            Error::DigitOutOfRange { index } => {
                write!(f, "cluster digit {index} outside {{-(p-1)/2, ..., (p-1)/2}}")
            }
            Error::SpinOutOfRange => write!(f, "spin eigenvalue outside {{-S, ..., S}}"),
            Error::ParityMismatch => write!(f, "2s does not have the parity of 2S"),
            Error::IndexOutOfRange => write!(f, "index out of range"),
            Error::ShapeMismatch { expected, found } => {
                write!(f, "row length {found} does not match 2S+1 = {expected}")
            }
            Error::InvalidCouplingKey(k) => write!(f, "invalid coupling key `{k}`"),
            Error::Singular => write!(f, "linear system has no unique solution"),
            Error::Inconsistent => write!(f, "linear system is inconsistent"),
            Error::Overflow => write!(f, "numeric result exceeds the finite f64 range"),
            Error::ParseRational(s) => write!(f, "malformed rational literal `{s}`"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
