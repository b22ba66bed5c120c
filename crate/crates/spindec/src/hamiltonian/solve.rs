//! Constrained coupling families of the spin-7/2 model.
//!
//! Imposing conditions on the 19 layer constants (kill the six-spin and
//! four-spin interactions, the inter-site cross terms, and shape the glue)
//! gives exact linear systems over the 16 exchange couplings and the fields.
//! Three closed families result: a periodic three-layer chain coupling, a
//! free-boundary variant, and a fully decoupled (exactly solvable) case.

use super::forms::{spin72_forms, CouplingForm, CouplingKey};
use super::{equivalence_check, reduce_couplings, LayerCouplings, LayerKey, SpinCouplings};
use crate::linalg::{solve, Matrix};
use crate::rational::BigRational;
use crate::Error;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::Zero;

/// Periodic family: equal-diagonal, equal-glue layer couplings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicSolution {
    pub couplings: SpinCouplings,
    /// Common intra-layer bond constant K_{a,a}.
    pub k1: BigRational,
    /// Common glue constant per unit of coordination number.
    pub k2: BigRational,
}

/// Free-boundary family: equal diagonals, K_{2,1} = K_{3,2}, K_{3,1} = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeSolution {
    pub couplings: SpinCouplings,
    pub k1: BigRational,
    /// Glue constant between adjacent layers, per unit of coordination.
    pub k3: BigRational,
}

/// Fully decoupled family: three independent layer couplings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSolution {
    pub couplings: SpinCouplings,
    pub k11: BigRational,
    pub k22: BigRational,
    pub k33: BigRational,
}

/// Conditions shared by all three families: no six-spin, four-spin or
/// inter-site cross interactions.
fn common_conditions(forms: &BTreeMap<LayerKey, CouplingForm>) -> Vec<CouplingForm> {
    [
        LayerKey::RPair(1, 2), LayerKey::RPair(1, 3), LayerKey::RPair(2, 3),
        LayerKey::RTriple(1, 2, 3), LayerKey::RTriple(2, 1, 3), LayerKey::RTriple(3, 1, 2),
        LayerKey::RTriple(1, 3, 2), LayerKey::RTriple(2, 3, 1), LayerKey::RTriple(3, 2, 1),
        LayerKey::RSix,
        LayerKey::K(1, 2), LayerKey::K(1, 3), LayerKey::K(2, 3),
    ]
    .iter()
    .map(|key| forms[key].clone())
    .collect()
}

fn solve_conditions(
    equations: &[CouplingForm],
    unknowns: &[CouplingKey],
    knowns: &[(CouplingKey, BigRational)],
) -> Result<Vec<BigRational>, Error> {
    let mut a = Matrix::zeros(equations.len(), unknowns.len());
    let mut b = vec![BigRational::zero(); equations.len()];
    for (r, eq) in equations.iter().enumerate() {
        for (c, key) in unknowns.iter().enumerate() {
            a.set(r, c, eq.coeff(key));
        }
        let mut rhs = BigRational::zero();
        for (key, value) in knowns {
            rhs -= eq.coeff(key) * value;
        }
        b[r] = rhs;
    }
    solve(&a, &b)
}

fn assemble_couplings(
    unknowns: &[CouplingKey],
    values: Vec<BigRational>,
    knowns: &[(CouplingKey, BigRational)],
    gamma: u32,
) -> Result<SpinCouplings, Error> {
    let inv_gamma = BigRational::new(BigInt::from(1), BigInt::from(gamma));
    let mut c = SpinCouplings::new(gamma);
    let solved = unknowns.iter().copied().zip(values);
    for (key, value) in solved.chain(knowns.iter().cloned()) {
        match key {
            CouplingKey::J(a, b) => c.set_j(a, b, value)?,
            CouplingKey::GammaH(idx) => c.set_h(idx, value * &inv_gamma)?,
        }
    }
    Ok(c)
}

fn check_gamma(gamma: u32) -> Result<(), Error> {
    if gamma == 0 {
        return Err(Error::InvalidCouplingKey(alloc::string::String::from("gamma")));
    }
    Ok(())
}

/// J and field unknowns of the periodic/free systems (everything except the
/// given J_{7,7} and gamma*h_6).
fn chain_unknowns() -> Vec<CouplingKey> {
    let mut unknowns: Vec<CouplingKey> = super::J_KEYS
        .iter()
        .filter(|&&k| k != (7, 7))
        .map(|&(a, b)| CouplingKey::J(a, b))
        .collect();
    unknowns.push(CouplingKey::GammaH(2));
    unknowns.push(CouplingKey::GammaH(4));
    unknowns
}

/// Solve the periodic family: diagonals equal, glue constants equal.
/// Parameterized by J_{7,7} and h_6 at coordination number gamma.
pub fn solve_periodic(j77: &BigRational, h6: &BigRational, gamma: u32) -> Result<PeriodicSolution, Error> {
    check_gamma(gamma)?;
    let forms = spin72_forms();
    let mut equations = common_conditions(&forms);
    equations.push(forms[&LayerKey::K(1, 1)].sub(&forms[&LayerKey::K(2, 2)]));
    equations.push(forms[&LayerKey::K(2, 2)].sub(&forms[&LayerKey::K(3, 3)]));
    equations.push(forms[&LayerKey::K(2, 1)].sub(&forms[&LayerKey::K(3, 2)]));
    equations.push(forms[&LayerKey::K(3, 2)].sub(&forms[&LayerKey::K(3, 1)]));

    let unknowns = chain_unknowns();
    let gamma_rat = BigRational::from_integer(BigInt::from(gamma));
    let knowns = [
        (CouplingKey::J(7, 7), j77.clone()),
        (CouplingKey::GammaH(6), &gamma_rat * h6),
    ];
    let values = solve_conditions(&equations, &unknowns, &knowns)?;
    let couplings = assemble_couplings(&unknowns, values, &knowns, gamma)?;
    let k1 = forms[&LayerKey::K(1, 1)].eval(&couplings);
    let k2 = forms[&LayerKey::K(2, 1)].eval(&couplings) / &gamma_rat;
    Ok(PeriodicSolution { couplings, k1, k2 })
}

/// Solve the free-boundary family: diagonals equal, K_{2,1} = K_{3,2},
/// K_{3,1} = 0.
pub fn solve_free(j77: &BigRational, h6: &BigRational, gamma: u32) -> Result<FreeSolution, Error> {
    check_gamma(gamma)?;
    let forms = spin72_forms();
    let mut equations = common_conditions(&forms);
    equations.push(forms[&LayerKey::K(1, 1)].sub(&forms[&LayerKey::K(2, 2)]));
    equations.push(forms[&LayerKey::K(2, 2)].sub(&forms[&LayerKey::K(3, 3)]));
    equations.push(forms[&LayerKey::K(2, 1)].sub(&forms[&LayerKey::K(3, 2)]));
    equations.push(forms[&LayerKey::K(3, 1)].clone());

    let unknowns = chain_unknowns();
    let gamma_rat = BigRational::from_integer(BigInt::from(gamma));
    let knowns = [
        (CouplingKey::J(7, 7), j77.clone()),
        (CouplingKey::GammaH(6), &gamma_rat * h6),
    ];
    let values = solve_conditions(&equations, &unknowns, &knowns)?;
    let couplings = assemble_couplings(&unknowns, values, &knowns, gamma)?;
    let k1 = forms[&LayerKey::K(1, 1)].eval(&couplings);
    let k3 = forms[&LayerKey::K(2, 1)].eval(&couplings) / &gamma_rat;
    Ok(FreeSolution { couplings, k1, k3 })
}

/// Solve the decoupled family: every glue, cross and multi-spin constant
/// vanishes, leaving three independent diagonal couplings driven by
/// J_{5,5}, J_{5,7} and J_{7,7}.
pub fn solve_exact(
    j55: &BigRational,
    j57: &BigRational,
    j77: &BigRational,
    gamma: u32,
) -> Result<ExactSolution, Error> {
    check_gamma(gamma)?;
    let forms = spin72_forms();
    let mut equations = common_conditions(&forms);
    equations.push(forms[&LayerKey::K(2, 1)].clone());
    equations.push(forms[&LayerKey::K(3, 1)].clone());
    equations.push(forms[&LayerKey::K(3, 2)].clone());

    let mut unknowns: Vec<CouplingKey> = super::J_KEYS
        .iter()
        .filter(|&&k| k != (5, 5) && k != (5, 7) && k != (7, 7))
        .map(|&(a, b)| CouplingKey::J(a, b))
        .collect();
    unknowns.extend([CouplingKey::GammaH(2), CouplingKey::GammaH(4), CouplingKey::GammaH(6)]);
    let knowns = [
        (CouplingKey::J(5, 5), j55.clone()),
        (CouplingKey::J(5, 7), j57.clone()),
        (CouplingKey::J(7, 7), j77.clone()),
    ];
    let values = solve_conditions(&equations, &unknowns, &knowns)?;
    let couplings = assemble_couplings(&unknowns, values, &knowns, gamma)?;

    // the layer model must decouple exactly: only the diagonals survive
    let reduced = reduce_couplings(&couplings);
    let mut diag_only = LayerCouplings::new();
    for a in 1..=3u8 {
        diag_only.set(LayerKey::K(a, a), reduced.get(LayerKey::K(a, a)))?;
    }
    for key in LayerKey::ALL {
        let expect_zero = !matches!(key, LayerKey::K(a, b) if a == b);
        if expect_zero && !reduced.get(key).is_zero() {
            return Err(Error::Inconsistent);
        }
    }
    if equivalence_check(&couplings, &diag_only).constant().is_none() {
        return Err(Error::Inconsistent);
    }

    Ok(ExactSolution {
        couplings,
        k11: reduced.get(LayerKey::K(1, 1)),
        k22: reduced.get(LayerKey::K(2, 2)),
        k33: reduced.get(LayerKey::K(3, 3)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use num_traits::One;

    #[test]
    fn periodic_printed_fractions() {
        let sol = solve_periodic(&int(1), &int(1), 2).unwrap();
        let c = &sol.couplings;
        assert_eq!(c.j(1, 1), frac(8991341559, 389120));
        assert_eq!(c.j(1, 3), frac(-1424553921, 48640));
        assert_eq!(c.j(1, 5), frac(62601021, 12160));
        assert_eq!(c.j(1, 7), frac(-764019, 3040));
        assert_eq!(c.j(3, 3), frac(52080091, 4864));
        assert_eq!(c.j(3, 5), frac(-12187819, 3040));
        assert_eq!(c.j(3, 7), frac(30625, 152));
        assert_eq!(c.j(5, 5), frac(30821, 80));
        assert_eq!(c.j(5, 7), frac(-7441, 190));
        for key in [(2u8, 2u8), (2, 4), (2, 6), (4, 4), (4, 6), (6, 6)] {
            assert_eq!(c.j(key.0, key.1), int(0));
        }
        assert_eq!(c.h(2), frac(259, 16));
        assert_eq!(c.h(4), frac(-35, 4));
        assert_eq!(sol.k1, frac(105840, 19));
        assert_eq!(sol.k2, int(360));
    }

    #[test]
    fn periodic_field_scaling() {
        let sol = solve_periodic(&int(0), &int(16), 4).unwrap();
        assert_eq!(sol.couplings.h(2), int(259));
        assert_eq!(sol.couplings.h(4), int(-140));
        assert_eq!(sol.k2, int(360 * 16));

        let zero = solve_periodic(&int(0), &int(0), 2).unwrap();
        assert_eq!(zero.k1, int(0));
        assert_eq!(zero.k2, int(0));
        assert_eq!(zero.couplings, SpinCouplings::new(2));
    }

    #[test]
    fn periodic_solution_closes_constraints() {
        let sol = solve_periodic(&frac(3, 7), &frac(-2, 5), 6).unwrap();
        let k = reduce_couplings(&sol.couplings);
        for key in [LayerKey::RSix, LayerKey::K(1, 2), LayerKey::RPair(2, 3), LayerKey::RTriple(2, 3, 1)] {
            assert_eq!(k.get(key), int(0), "{key}");
        }
        assert_eq!(k.get(LayerKey::K(1, 1)), k.get(LayerKey::K(2, 2)));
        assert_eq!(k.get(LayerKey::K(2, 2)), k.get(LayerKey::K(3, 3)));
        assert_eq!(k.get(LayerKey::K(2, 1)), k.get(LayerKey::K(3, 2)));
        assert_eq!(k.get(LayerKey::K(3, 2)), k.get(LayerKey::K(3, 1)));
        assert!(equivalence_check(&sol.couplings, &k).constant().is_some());
    }

    #[test]
    fn free_printed_fractions() {
        let sol = solve_free(&int(0), &int(16), 2).unwrap();
        assert_eq!(sol.couplings.h(2), int(1429));
        assert_eq!(sol.couplings.h(4), int(-320));
        assert_eq!(sol.k3, int(-90 * 16));

        let sol = solve_free(&int(19), &int(0), 2).unwrap();
        assert_eq!(sol.k1, int(105840));
        // the exchange sector is shared with the periodic family
        assert_eq!(sol.couplings.j(1, 1), int(19) * frac(8991341559, 389120));

        let k = reduce_couplings(&solve_free(&int(2), &int(3), 4).unwrap().couplings);
        assert_eq!(k.get(LayerKey::K(3, 1)), int(0));
        assert_eq!(k.get(LayerKey::K(2, 1)), k.get(LayerKey::K(3, 2)));
    }

    #[test]
    fn exact_printed_values() {
        let sol = solve_exact(&int(0), &int(0), &int(64), 2).unwrap();
        assert_eq!(sol.k11, int(11432925));
        assert_eq!(sol.k22, int(118364400));
        assert_eq!(sol.k33, int(-131947200));
        for idx in super::super::H_KEYS {
            assert_eq!(sol.couplings.h(idx), int(0));
        }
        for key in [(2u8, 2u8), (2, 4), (2, 6), (4, 4), (4, 6), (6, 6)] {
            assert_eq!(sol.couplings.j(key.0, key.1), int(0));
        }

        let zero = solve_exact(&int(0), &int(0), &int(0), 2).unwrap();
        assert_eq!(zero.k11, int(0));
        assert_eq!(zero.couplings, SpinCouplings::new(2));
    }

    #[test]
    fn exact_exchange_sector_integrality() {
        // at J77 = 389120 every solved exchange coupling is an integer
        let sol = solve_exact(&int(0), &int(0), &int(389120), 2).unwrap();
        for (a, b) in super::super::J_KEYS {
            assert!(sol.couplings.j(a, b).denom().is_one(), "J{a}{b}");
        }
        assert_eq!(sol.couplings.j(1, 1), int(-47629545) * int(380));
    }

    #[test]
    fn gamma_zero_rejected() {
        assert!(solve_periodic(&int(1), &int(1), 0).is_err());
    }
}
