//! The cosmetic-surgery obstruction pipeline.
//!
//! Four gates run in order: the Alexander-form gate (family polynomial,
//! genus 2, signature 0, candidate slopes +-1 and +-2), the second Conway
//! coefficient, the SL(2,C) Casson surgery difference at slopes 1 and 2,
//! and the finite-type gate on the twist family [4n,-2n,-2n,4n].  The first
//! gate that excludes settles the verdict; a knot passing every gate would
//! contradict the classification and is reported as undetermined.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::Error;
use crate::jones::{j4, jones_two_bridge};
use crate::laurent::LaurentPoly;
use crate::rational::{canonical_knots, frac, Fraction, TwoBridgeKnot};
use crate::seifert::{determinant, genus_alternating, knot_alexander, knot_conway, knot_signature};
use crate::slopes::casson_difference;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateOutcome {
    /// The gate rules out purely cosmetic surgeries.
    Excludes,
    /// The gate is consistent with a cosmetic pair; later gates decide.
    Passes,
    /// Not evaluated (short-circuited or not applicable).
    Skipped,
}

impl GateOutcome {
    pub fn as_str(self) -> &'static str {
        match self {
            GateOutcome::Excludes => "excludes",
            GateOutcome::Passes => "passes",
            GateOutcome::Skipped => "skipped",
        }
    }
}

/// Witness data of the Alexander-form gate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HanselmanCheck {
    pub matches_family: bool,
    /// The n with Delta = n t^2 - 4n t + (6n+1) - 4n t^-1 + n t^-2.
    pub n_coefficient: Option<BigInt>,
    /// Surgery slopes compatible with a cosmetic pair when the gate passes.
    pub allowed_slopes: Vec<Fraction>,
    pub genus_ok: bool,
    pub signature_ok: bool,
    /// Heegaard Floer thickness; zero for alternating knots.
    pub thickness: i64,
}

impl HanselmanCheck {
    pub fn outcome(&self) -> GateOutcome {
        if self.matches_family && self.genus_ok && self.signature_ok {
            GateOutcome::Passes
        } else {
            GateOutcome::Excludes
        }
    }
}

/// Test Delta against the family form n t^2 - 4n t + (6n+1) - 4n/t + n/t^2
/// with n a positive integer, plus the genus and signature conditions.
///
/// With thickness 0 the slope-1 genus bound 1 <= (t + 2g)/(2g(g-1)) forces
/// g <= 2, so both slope cases land on genus exactly 2 once the form
/// matches.
pub fn hanselman_gate(alexander: &LaurentPoly, sigma: i64, genus: i64) -> HanselmanCheck {
    let n = alexander.coeff(2);
    let matches_family = n.is_positive() && {
        let expected = family_alexander(&n);
        *alexander == expected
    };
    let genus_ok = genus == 2;
    let signature_ok = sigma == 0;
    let allowed_slopes = if matches_family && genus_ok && signature_ok {
        vec![frac(1, 1), frac(-1, 1), frac(2, 1), frac(-2, 1)]
    } else {
        Vec::new()
    };
    HanselmanCheck {
        matches_family,
        n_coefficient: if matches_family { Some(n) } else { None },
        allowed_slopes,
        genus_ok,
        signature_ok,
        thickness: 0,
    }
}

/// n t^2 - 4n t + (6n + 1) - 4n t^-1 + n t^-2.
pub fn family_alexander(n: &BigInt) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    p.add_term(4, n.clone());
    p.add_term(2, -BigInt::from(4) * n);
    p.add_term(0, BigInt::from(6) * n + 1);
    p.add_term(-2, -BigInt::from(4) * n);
    p.add_term(-4, n.clone());
    p
}

/// Excludes unless the z^2 coefficient of the Conway polynomial vanishes.
pub fn boyer_lines_gate(conway: &LaurentPoly) -> (GateOutcome, BigInt) {
    let a2 = conway.coeff(2);
    let outcome = if a2.is_zero() { GateOutcome::Passes } else { GateOutcome::Excludes };
    (outcome, a2)
}

/// Excludes when the Casson surgery difference is nonzero at slope 1 or 2.
pub fn casson_gate(knot: &TwoBridgeKnot) -> Result<(GateOutcome, BigRational, BigRational)> {
    let d1 = casson_difference(knot, 1, 1)?;
    let d2 = casson_difference(knot, 2, 1)?;
    let outcome = if d1.is_zero() && d2.is_zero() {
        GateOutcome::Passes
    } else {
        GateOutcome::Excludes
    };
    Ok((outcome, d1, d2))
}

/// Finite-type data on the twist family [4n,-2n,-2n,4n].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ItoCheck {
    pub n: i64,
    pub j4: BigRational,
    /// p^2 (j4/4 + 19 n^4) - 10 n^4 - 80 q^2 n^4 at (p^2, q^2) = (1, 1).
    pub eval_1_1: BigRational,
    /// The same expression at (p^2, q^2) = (4, 1).
    pub eval_4_1: BigRational,
}

impl ItoCheck {
    pub fn outcome(&self) -> GateOutcome {
        if self.eval_1_1.is_zero() || self.eval_4_1.is_zero() {
            GateOutcome::Passes
        } else {
            GateOutcome::Excludes
        }
    }
}

/// Evaluate the finite-type obstruction for the family member with
/// parameter n, given its Conway polynomial and j4.
///
/// The hypotheses a2 = a6 = 0 are checked; then v4 = -2n^4,
/// w4 = j4/96 + 3n^4/8 and v6 = -n^4/3 reduce the degree-4/6 test to
/// `p^2 (j4/4 + 19 n^4) - 10 n^4 - 80 q^2 n^4 = 0`, evaluated on the two
/// candidate slope squares.
pub fn ito_gate(n: i64, conway: &LaurentPoly, j4_value: &BigRational) -> Result<ItoCheck> {
    if !conway.coeff(2).is_zero() {
        return Err(Error::HypothesisViolation("a2 != 0".into()));
    }
    if !conway.coeff(6).is_zero() {
        return Err(Error::HypothesisViolation("a6 != 0".into()));
    }
    let n4 = BigRational::from(BigInt::from(n).pow(4));
    let quarter_j4 = j4_value / BigRational::from(BigInt::from(4));
    let eval = |p2: i64, q2: i64| {
        BigRational::from(BigInt::from(p2)) * (&quarter_j4 + BigRational::from(BigInt::from(19)) * &n4)
            - BigRational::from(BigInt::from(10)) * &n4
            - BigRational::from(BigInt::from(80 * q2)) * &n4
    };
    Ok(ItoCheck {
        n,
        j4: j4_value.clone(),
        eval_1_1: eval(1, 1),
        eval_4_1: eval(4, 1),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    NoCosmeticSurgeries,
    Undetermined,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::NoCosmeticSurgeries => "NO_COSMETIC_SURGERIES",
            Verdict::Undetermined => "UNDETERMINED",
        }
    }
}

/// One pipeline stage with its outcome and witness values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageReport {
    pub name: &'static str,
    pub outcome: GateOutcome,
    pub witness: Vec<(String, String)>,
}

/// The aggregated verdict for one knot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    pub knot: TwoBridgeKnot,
    pub stages: Vec<StageReport>,
    pub verdict: Verdict,
}

impl ObstructionReport {
    /// Name of the first excluding stage, if any.
    pub fn deciding_stage(&self) -> Option<&'static str> {
        self.stages
            .iter()
            .find(|s| s.outcome == GateOutcome::Excludes)
            .map(|s| s.name)
    }
}

/// Run the pipeline.  With `full` every gate runs for reporting; otherwise
/// the first exclusion short-circuits the rest.
pub fn cosmetic_verdict(knot: &TwoBridgeKnot, full: bool) -> Result<ObstructionReport> {
    let conway = knot_conway(knot);
    let alexander = knot_alexander(knot);
    let sigma = knot_signature(knot);
    let genus = genus_alternating(&alexander)?;
    let mut stages = Vec::new();
    let mut excluded = false;

    let check = hanselman_gate(&alexander, sigma, genus);
    let outcome = check.outcome();
    excluded |= outcome == GateOutcome::Excludes;
    stages.push(StageReport {
        name: "hanselman",
        outcome,
        witness: vec![
            ("matches_family".into(), check.matches_family.to_string()),
            (
                "n".into(),
                check.n_coefficient.as_ref().map_or("-".into(), |n| n.to_string()),
            ),
            ("signature".into(), sigma.to_string()),
            ("genus".into(), genus.to_string()),
            ("determinant".into(), determinant(&alexander).to_string()),
        ],
    });

    if !excluded || full {
        let (outcome, a2) = boyer_lines_gate(&conway);
        excluded |= outcome == GateOutcome::Excludes;
        stages.push(StageReport {
            name: "boyer_lines",
            outcome,
            witness: vec![("a2".into(), a2.to_string())],
        });
    } else {
        stages.push(StageReport { name: "boyer_lines", outcome: GateOutcome::Skipped, witness: vec![] });
    }

    if !excluded || full {
        let (outcome, d1, d2) = casson_gate(knot)?;
        excluded |= outcome == GateOutcome::Excludes;
        stages.push(StageReport {
            name: "casson",
            outcome,
            witness: vec![
                ("difference_slope_1".into(), d1.to_string()),
                ("difference_slope_2".into(), d2.to_string()),
            ],
        });
    } else {
        stages.push(StageReport { name: "casson", outcome: GateOutcome::Skipped, witness: vec![] });
    }

    if !excluded || full {
        match knot.family_n() {
            Some(n) => {
                let v = jones_two_bridge(knot)?.v;
                let j4_value = j4(&v)?;
                let check = ito_gate(n, &conway, &j4_value)?;
                let outcome = check.outcome();
                excluded |= outcome == GateOutcome::Excludes;
                stages.push(StageReport {
                    name: "ito",
                    outcome,
                    witness: vec![
                        ("n".into(), n.to_string()),
                        ("j4".into(), check.j4.to_string()),
                        ("eval_1_1".into(), check.eval_1_1.to_string()),
                        ("eval_4_1".into(), check.eval_4_1.to_string()),
                    ],
                });
            }
            None => {
                stages.push(StageReport {
                    name: "ito",
                    outcome: GateOutcome::Skipped,
                    witness: vec![("family".into(), "false".into())],
                });
            }
        }
    } else {
        stages.push(StageReport { name: "ito", outcome: GateOutcome::Skipped, witness: vec![] });
    }

    let verdict = if excluded { Verdict::NoCosmeticSurgeries } else { Verdict::Undetermined };
    Ok(ObstructionReport { knot: knot.clone(), stages, verdict })
}

/// Verdicts for every canonical two-bridge knot with p <= max_p.
pub fn scan_verdicts(max_p: i64) -> Result<Vec<ObstructionReport>> {
    canonical_knots(max_p)
        .iter()
        .map(|k| cosmetic_verdict(k, false))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;
    use crate::rational::Cf;
    use crate::seifert::SeifertData;

    fn knot(p: i64, q: i64) -> TwoBridgeKnot {
        TwoBridgeKnot::normalize(p, q).unwrap()
    }

    #[test]
    fn hanselman_examples() {
        // Family member at n = 1: form coefficient 4.
        let k = knot(65, 18);
        let delta = knot_alexander(&k);
        let check = hanselman_gate(&delta, 0, 2);
        assert!(check.matches_family);
        assert_eq!(check.n_coefficient, Some(BigInt::from(4)));
        assert_eq!(check.outcome(), GateOutcome::Passes);
        assert_eq!(check.allowed_slopes.len(), 4);

        // Trefoil: wrong form and wrong genus.
        let trefoil = LaurentPoly::from_terms(&[(1, 1), (0, -1), (-1, 1)]);
        let check = hanselman_gate(&trefoil, -2, 1);
        assert_eq!(check.outcome(), GateOutcome::Excludes);
        assert!(!check.matches_family);

        // The 6_3 polynomial: n = 1 would need -4t, it has -3t.
        let sixthree = LaurentPoly::from_terms(&[(2, 1), (1, -3), (0, 5), (-1, -3), (-2, 1)]);
        let check = hanselman_gate(&sixthree, 0, 2);
        assert!(!check.matches_family);
        assert_eq!(check.outcome(), GateOutcome::Excludes);
    }

    #[test]
    fn boyer_lines_examples() {
        let trefoil = LaurentPoly::from_terms(&[(2, 1), (0, 1)]);
        assert_eq!(boyer_lines_gate(&trefoil).0, GateOutcome::Excludes);
        let family = LaurentPoly::from_terms(&[(4, 4), (0, 1)]);
        assert_eq!(boyer_lines_gate(&family).0, GateOutcome::Passes);
        let fig8 = LaurentPoly::from_terms(&[(2, -1), (0, 1)]);
        assert_eq!(boyer_lines_gate(&fig8).0, GateOutcome::Excludes);
    }

    #[test]
    fn casson_gate_examples() {
        // (x, y) = (3, -1): difference 23 at slope 1.
        let k = TwoBridgeKnot::from_cf(&Cf::inverse(vec![6, -2, -4, 6]).unwrap()).unwrap();
        let (outcome, d1, _) = casson_gate(&k).unwrap();
        assert_eq!(outcome, GateOutcome::Excludes);
        assert_eq!(d1, BigRational::from(BigInt::from(23)));

        // Amphichiral member (65, 18) passes.
        let (outcome, d1, d2) = casson_gate(&knot(65, 18)).unwrap();
        assert_eq!(outcome, GateOutcome::Passes);
        assert!(d1.is_zero() && d2.is_zero());

        // Mirror pair: outcomes agree.
        let k = TwoBridgeKnot::from_cf(&Cf::inverse(vec![6, -4, -2, 6]).unwrap()).unwrap();
        let m = k.mirror();
        assert_eq!(casson_gate(&k).unwrap().0, casson_gate(&m).unwrap().0);
    }

    #[test]
    fn ito_gate_arithmetic() {
        let conway = SeifertData::from_even_cf(&Cf::inverse(vec![4, -2, -2, 4]).unwrap())
            .unwrap()
            .conway();
        let j4_value = BigRational::from(BigInt::from(-12));
        let check = ito_gate(1, &conway, &j4_value).unwrap();
        assert_eq!(check.eval_1_1, BigRational::from(BigInt::from(-74)));
        assert_eq!(check.eval_4_1, BigRational::from(BigInt::from(-26)));
        assert_eq!(check.outcome(), GateOutcome::Excludes);

        // The two vanishing thresholds pass the gate instead.
        let check = ito_gate(1, &conway, &BigRational::from(BigInt::from(284))).unwrap();
        assert!(check.eval_1_1.is_zero());
        assert_eq!(check.outcome(), GateOutcome::Passes);
        let check = ito_gate(1, &conway, &BigRational::from(BigInt::from(14))).unwrap();
        assert!(check.eval_4_1.is_zero());
        assert_eq!(check.outcome(), GateOutcome::Passes);

        // Violated hypotheses are rejected.
        let trefoil = LaurentPoly::from_terms(&[(2, 1), (0, 1)]);
        assert!(matches!(
            ito_gate(1, &trefoil, &j4_value),
            Err(Error::HypothesisViolation(_))
        ));
    }

    #[test]
    fn verdict_examples() {
        let r = cosmetic_verdict(&knot(3, 2), false).unwrap();
        assert_eq!(r.verdict, Verdict::NoCosmeticSurgeries);
        assert_eq!(r.deciding_stage(), Some("hanselman"));

        let r = cosmetic_verdict(&knot(65, 18), false).unwrap();
        assert_eq!(r.verdict, Verdict::NoCosmeticSurgeries);
        assert_eq!(r.deciding_stage(), Some("ito"));

        // Mirror stability.
        let k = TwoBridgeKnot::from_cf(&Cf::inverse(vec![6, -4, -2, 6]).unwrap()).unwrap();
        let a = cosmetic_verdict(&k, false).unwrap();
        let b = cosmetic_verdict(&k.mirror(), false).unwrap();
        assert_eq!(a.verdict, b.verdict);
        assert_eq!(a.deciding_stage(), b.deciding_stage());
    }

    #[test]
    fn family_narrative_n1() {
        // The n = 1 member passes the first three gates and the finite-type
        // gate excludes.
        let r = cosmetic_verdict(&knot(65, 18), true).unwrap();
        let outcomes: Vec<(&str, GateOutcome)> =
            r.stages.iter().map(|s| (s.name, s.outcome)).collect();
        assert_eq!(
            outcomes,
            vec![
                ("hanselman", GateOutcome::Passes),
                ("boyer_lines", GateOutcome::Passes),
                ("casson", GateOutcome::Passes),
                ("ito", GateOutcome::Excludes),
            ]
        );
    }

    #[test]
    fn small_scan_is_clean() {
        for report in scan_verdicts(45).unwrap() {
            assert_eq!(
                report.verdict,
                Verdict::NoCosmeticSurgeries,
                "undetermined verdict for {}",
                report.knot
            );
        }
    }
}
