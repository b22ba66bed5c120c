//! Documented misprints in the published closed-form expressions this
//! library reproduces, each backed by a machine check: the expression read
//! literally fails, the corrected form passes.
//!
//! The printed coefficient tables are kept verbatim in [`published`] so the
//! comparisons stay reproducible.

use crate::bijection::ClusterSpec;
use crate::partition::{self, ChainSpec};
use crate::poly::Poly;
use crate::rational::BigRational;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{Float, One, Zero};

/// Printed reference tables, transcribed as published.
pub mod published {
    use super::*;
    use crate::rational::{frac, parse_rational};
    use alloc::vec;

    /// S = 3/2 pair: two cubic polynomials, listed most-significant-first.
    pub fn pair_ising() -> [Poly; 2] {
        [
            Poly::from_coeffs(vec![frac(0, 1), frac(13, 12), frac(0, 1), frac(-1, 3)]),
            Poly::from_coeffs(vec![frac(0, 1), frac(-7, 6), frac(0, 1), frac(2, 3)]),
        ]
    }

    /// S = 7/2 triple: three degree-7 polynomials, most-significant-first.
    pub fn three_ising() -> [Poly; 3] {
        [
            Poly::from_coeffs(vec![
                frac(0, 1), frac(-30251, 26880), frac(0, 1), frac(301, 576),
                frac(0, 1), frac(-61, 720), frac(0, 1), frac(1, 252),
            ]),
            Poly::from_coeffs(vec![
                frac(0, 1), frac(14887, 13440), frac(0, 1), frac(-637, 1440),
                frac(0, 1), frac(17, 360), frac(0, 1), frac(-1, 630),
            ]),
            Poly::from_coeffs(vec![
                frac(0, 1), frac(2161, 1680), frac(0, 1), frac(-217, 180),
                frac(0, 1), frac(11, 45), frac(0, 1), frac(-4, 315),
            ]),
        ]
    }

    /// S = 4 pair (three-level digits): printed in factored form
    /// s (s^2 - 1)(c4 s^4 + c2 s^2 + c0) and s (s^2 - 9)(...).
    pub fn pair_spin1() -> [Poly; 2] {
        let factored = |roots_sq: i64, c4: BigRational, c2: BigRational, c0: BigRational| {
            let base = Poly::from_coeffs(vec![
                BigRational::zero(),
                -BigRational::from_integer(BigInt::from(roots_sq)),
                BigRational::zero(),
                BigRational::one(),
            ]); // s^3 - roots_sq * s
            let pre = Poly::from_coeffs(vec![c0, BigRational::zero(), c2, BigRational::zero(), c4]);
            &base * &pre
        };
        [
            factored(1, frac(1, 560), frac(-27, 560), frac(139, 420)),
            factored(9, frac(-3, 560), frac(57, 560), frac(-31, 140)),
        ]
    }

    /// S = 13 triple, reading the corrupted doubled '+' signs as '+'.
    /// Each entry is an even degree-16 prefactor (coefficients of
    /// s^0..s^16) times s (s^2 - r1^2)...(s^2 - r4^2).
    pub fn three_spin1() -> [Poly; 3] {
        let build = |coeffs: [&str; 9], roots: [i64; 4]| {
            let mut pre = vec![BigRational::zero(); 17];
            for (k, text) in coeffs.iter().enumerate() {
                pre[2 * k] = parse_rational(text).expect("printed literal");
            }
            let mut factor = Poly::identity();
            for r in roots {
                // s^2 - r^2
                let quad = Poly::from_coeffs(vec![
                    BigRational::from_integer(BigInt::from(-r * r)),
                    BigRational::zero(),
                    BigRational::one(),
                ]);
                factor = &factor * &quad;
            }
            &Poly::from_coeffs(pre) * &factor
        };
        [
            build(
                [
                    "-17330419/226767340800",
                    "15184387919/1918955630592000",
                    "-66791923009387/192008442802176000000",
                    "22371900997/2643031196467200000",
                    "-5057645209/40579872915456000000",
                    "2967383/2608706115993600000",
                    "-664843/105721247858688000000",
                    "883/45812540738764800000",
                    "-1/39836991946752000000",
                ],
                [1, 2, 3, 4],
            ),
            build(
                [
                    "148211081/128501493120000",
                    "-192181663909/624923050752000000",
                    "15276178774039/427447366714368000000",
                    "-3162180475127/1496065783500288000000",
                    "88912189981/1329836252000256000000",
                    "-13780223389/11968526268002304000000",
                    "126626341/11968526268002304000000",
                    "-193309/3989508756000768000000",
                    "173/1994754378000384000000",
                ],
                [1, 8, 9, 10],
            ),
            build(
                [
                    "-15097/23796572800",
                    "841457709/2345390215168000",
                    "-627741171441/16417731506176000000",
                    "25815639/14857675571200000",
                    "-77436279/1836948979712000000",
                    "7713/13121064140800000",
                    "-47463/10103219388416000000",
                    "261/13134185204940800000",
                    "-9/262683704098816000000",
                ],
                [3, 6, 9, 12],
            ),
        ]
    }
}

/// Relation between a derived polynomial table (weight-ascending) and a
/// printed one (most-significant-first).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableComparison {
    /// Printed polynomial m equals derived weight p^(M-m) exactly.
    Equal,
    /// Equal after negating every printed polynomial, nothing else.
    GlobalSign,
    Different,
}

/// Compare derived inverse polynomials against a printed table, applying
/// the most-significant-first relabeling.
pub fn compare_with_printed(derived: &[Poly], printed: &[Poly]) -> TableComparison {
    if derived.len() != printed.len() {
        return TableComparison::Different;
    }
    let m = derived.len();
    let relabeled: Vec<&Poly> = (0..m).map(|idx| &printed[m - 1 - idx]).collect();
    if derived.iter().zip(&relabeled).all(|(d, p)| d == *p) {
        return TableComparison::Equal;
    }
    if derived.iter().zip(&relabeled).all(|(d, p)| d == &p.neg()) {
        return TableComparison::GlobalSign;
    }
    TableComparison::Different
}

/// One documented misprint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Erratum {
    pub id: &'static str,
    /// What the printed form says.
    pub printed: &'static str,
    /// Why it cannot be right as printed.
    pub problem: &'static str,
    /// The correction this library applies.
    pub correction: &'static str,
}

/// Outcome of running an erratum's literal and corrected checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ErratumCheck {
    pub id: &'static str,
    /// Does the expression hold as printed? (Expected: no.)
    pub literal_holds: bool,
    /// Does the corrected form hold? (Expected: yes.)
    pub corrected_holds: bool,
}

impl ErratumCheck {
    /// The misprint is confirmed: literal fails and the correction passes.
    pub fn confirmed(&self) -> bool {
        !self.literal_holds && self.corrected_holds
    }
}

pub const ENTRIES: [Erratum; 5] = [
    Erratum {
        id: "inverse-index-order",
        printed: "inverse digit polynomials are labeled with the same index \
                  the forward sum uses, pairing polynomial m with weight p^(m-1)",
        problem: "composing the polynomials as labeled does not invert the \
                  forward map: for the S = 3/2 pair it sends s = 1/2 to -1/2",
        correction: "the listing is most-significant-first: pair polynomial m \
                     with weight p^(M-m); every round trip then closes",
    },
    Erratum {
        id: "three-spin-inverse-sign",
        printed: "an explicit table of the three inverse polynomials for \
                  S = 7/2 (p = 2, M = 3)",
        problem: "the printed polynomials give -1/2 at s = 7/2, where every \
                  digit is +1/2: the whole table carries a global factor -1",
        correction: "negate all three polynomials; the result matches the \
                     interpolated inverse exactly",
    },
    Erratum {
        id: "spin13-table-corruption",
        printed: "an explicit table of the three inverse polynomials for \
                  S = 13 (p = 3, M = 3)",
        problem: "the coefficient lists contain doubled '+' signs, and read \
                  as '+' the polynomials give -1 at s = 13 where the digit \
                  is +1 (the same global sign flip as the S = 7/2 table)",
        correction: "use the interpolated polynomials, validated by \
                     exhaustive round-trip over all 27 eigenvalues",
    },
    Erratum {
        id: "gap-factor-sign",
        printed: "closed-form gap factors exp(+(J +- h)/4), putting \
                  4 exp(J/2) under the square root",
        problem: "the exact two-site partition function forces the \
                  off-diagonal product 4 exp(-J/2); with the printed sign \
                  the closed form disagrees with every exact table",
        correction: "use exp(-(J +- h)/4), i.e. off-diagonal product \
                     exp(-J/2); the closed form then matches the exact \
                     tables and the transfer matrix",
    },
    Erratum {
        id: "free-energy-sinh-square",
        printed: "free energy ln(e^(J/4) cosh(h/2) + sqrt(e^(J/2) sinh(h/2) \
                  + e^(-J/2))) with the sinh unsquared",
        problem: "the expression disagrees with the leading transfer \
                  eigenvalue and its radicand goes negative for h < 0",
        correction: "square the sinh: the radical is \
                     sqrt(e^(J/2) sinh^2(h/2) + e^(-J/2))",
    },
];

fn spec(p: u32, m: u32) -> ClusterSpec {
    ClusterSpec::new(p, m).expect("small spec")
}

/// Does s = sum_m p^(m-1) printed_m(s) hold on every eigenvalue, i.e. the
/// literal pairing of printed polynomial m with forward weight p^(m-1)?
fn literal_pairing_inverts(printed: &[Poly], p: u32) -> bool {
    let n = p.pow(printed.len() as u32) as i64;
    for idx in 0..n {
        let s = BigRational::new(BigInt::from(2 * idx - (n - 1)), BigInt::from(2));
        let mut acc = BigRational::zero();
        let mut weight = BigRational::one();
        for poly in printed {
            acc += poly.eval(&s) * &weight;
            weight *= BigRational::from_integer(BigInt::from(p));
        }
        if acc != s {
            return false;
        }
    }
    true
}

fn check_inverse_index_order() -> ErratumCheck {
    let printed = published::pair_ising();
    let literal = literal_pairing_inverts(&printed, 2);
    // corrected: reversed pairing equals the interpolated table exactly
    let derived = spec(2, 2).inverse_polynomials();
    let corrected = compare_with_printed(&derived, &printed) == TableComparison::Equal
        && spec(2, 2).verify_roundtrip().pass();
    ErratumCheck { id: "inverse-index-order", literal_holds: literal, corrected_holds: corrected }
}

fn check_three_spin_sign() -> ErratumCheck {
    let printed = published::three_ising();
    let derived = spec(2, 3).inverse_polynomials();
    let literal = compare_with_printed(&derived, &printed) == TableComparison::Equal;
    let corrected = compare_with_printed(&derived, &printed) == TableComparison::GlobalSign
        && spec(2, 3).verify_roundtrip().pass();
    ErratumCheck { id: "three-spin-inverse-sign", literal_holds: literal, corrected_holds: corrected }
}

fn check_spin13_corruption() -> ErratumCheck {
    let printed = published::three_spin1();
    // literal: the top-weight polynomial must give digit +1 at s = 13
    let top = &printed[0];
    let literal = top.eval(&BigRational::from_integer(BigInt::from(13))).is_one();
    let corrected = spec(3, 3).verify_roundtrip().pass();
    ErratumCheck { id: "spin13-table-corruption", literal_holds: literal, corrected_holds: corrected }
}

/// The closed form with the literal (uncorrected) gap-factor product
/// 4 exp(+J/2) under the root.
fn closed_form_literal_gap(m: u32, j: f64, h: f64) -> f64 {
    let a_plus = Float::exp(j / 4.0 + h / 2.0);
    let a_minus = Float::exp(j / 4.0 - h / 2.0);
    let root = Float::sqrt((a_plus - a_minus) * (a_plus - a_minus) + 4.0 * Float::exp(j / 2.0));
    Float::powi((a_plus + a_minus + root) / 2.0, m as i32)
        + Float::powi((a_plus + a_minus - root) / 2.0, m as i32)
}

fn check_gap_factor_sign() -> ErratumCheck {
    let (j, h) = (1.0, 0.5);
    let mut literal = true;
    let mut corrected = true;
    for m in 2..=5u32 {
        let chain = ChainSpec::new(m).expect("m >= 2");
        let exact = partition::partition_symbolic(&chain).expect("small M").eval(j, h);
        let lit = closed_form_literal_gap(m, j, h);
        let cor = partition::partition_closed_form(&chain, j, h).expect("finite");
        literal &= (lit - exact).abs() <= 1e-9 * exact;
        corrected &= (cor - exact).abs() <= 1e-12 * exact;
    }
    ErratumCheck { id: "gap-factor-sign", literal_holds: literal, corrected_holds: corrected }
}

/// Leading transfer-matrix eigenvalue, the reference for the free energy.
fn leading_eigenvalue_log(j: f64, h: f64) -> f64 {
    let a_plus = Float::exp(j / 4.0 + h / 2.0);
    let a_minus = Float::exp(j / 4.0 - h / 2.0);
    let root = Float::sqrt((a_plus - a_minus) * (a_plus - a_minus) + 4.0 * Float::exp(-j / 2.0));
    Float::ln((a_plus + a_minus + root) / 2.0)
}

fn free_energy_literal(j: f64, h: f64) -> f64 {
    let radical = Float::exp(j / 2.0) * Float::sinh(h / 2.0) + Float::exp(-j / 2.0);
    Float::ln(Float::exp(j / 4.0) * Float::cosh(h / 2.0) + Float::sqrt(radical))
}

fn check_free_energy_sinh() -> ErratumCheck {
    let literal_at_field = free_energy_literal(1.0, 1.0);
    let reference = leading_eigenvalue_log(1.0, 1.0);
    let literal = (literal_at_field - reference).abs() <= 1e-12
        && free_energy_literal(0.0, -3.0).is_finite();
    let mut corrected = true;
    for (j, h) in [(1.0, 1.0), (0.0, -3.0), (-2.0, 0.1), (2.0, -1.7)] {
        corrected &= (partition::free_energy(j, h) - leading_eigenvalue_log(j, h)).abs() <= 1e-14;
    }
    ErratumCheck { id: "free-energy-sinh-square", literal_holds: literal, corrected_holds: corrected }
}

/// Run every erratum's literal and corrected checks.
pub fn verify_all() -> Vec<ErratumCheck> {
    alloc::vec![
        check_inverse_index_order(),
        check_three_spin_sign(),
        check_spin13_corruption(),
        check_gap_factor_sign(),
        check_free_energy_sinh(),
    ]
}

/// Run one erratum's checks by id.
pub fn verify(id: &str) -> Option<ErratumCheck> {
    verify_all().into_iter().find(|check| check.id == id)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_entries_and_checks_line_up() {
        assert_eq!(ENTRIES.len(), 5);
        let checks = verify_all();
        assert_eq!(checks.len(), 5);
        for (entry, check) in ENTRIES.iter().zip(&checks) {
            assert_eq!(entry.id, check.id);
        }
    }

    #[test]
    fn every_literal_fails_and_correction_passes() {
        for check in verify_all() {
            assert!(!check.literal_holds, "{} holds literally", check.id);
            assert!(check.corrected_holds, "{} correction fails", check.id);
            assert!(check.confirmed());
        }
    }

    #[test]
    fn pair_table_is_exact_after_relabeling() {
        let derived = ClusterSpec::new(2, 2).unwrap().inverse_polynomials();
        assert_eq!(compare_with_printed(&derived, &published::pair_ising()), TableComparison::Equal);
    }

    #[test]
    fn spin1_pair_table_is_exact_after_relabeling() {
        let derived = ClusterSpec::new(3, 2).unwrap().inverse_polynomials();
        assert_eq!(compare_with_printed(&derived, &published::pair_spin1()), TableComparison::Equal);
    }

    #[test]
    fn three_spin_table_is_off_by_global_sign_only() {
        let derived = ClusterSpec::new(2, 3).unwrap().inverse_polynomials();
        assert_eq!(
            compare_with_printed(&derived, &published::three_ising()),
            TableComparison::GlobalSign
        );
    }

    #[test]
    fn spin13_table_sign_relation() {
        // documentation of the corruption finding: '++' read as '+' plus a
        // global negation reproduces the interpolated table
        let derived = ClusterSpec::new(3, 3).unwrap().inverse_polynomials();
        assert_eq!(
            compare_with_printed(&derived, &published::three_spin1()),
            TableComparison::GlobalSign
        );
    }

    #[test]
    fn unknown_id_is_none() {
        assert!(verify("no-such-entry").is_none());
    }
}
