//! Jones polynomials of two-bridge knots via a transfer-matrix Kauffman
//! bracket, closed forms for the twist families, and the h^4 coefficient
//! of V(e^h).
//!
//! Bracket conventions: the A-smoothing of a crossing joins the two regions
//! swept by rotating the over-strand counterclockwise, a free loop
//! contributes delta = -A^2 - A^-2, and V(t) = (-A^3)^(-w) <D> under
//! t = A^-4.  The A-variable and t-variable both live in `LaurentPoly`;
//! A-exponents are integers (doubled keys divisible by 4 map onto the
//! integer t-grid, knots; doubled keys 2 mod 4 onto the half grid, links).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::Error;
use crate::laurent::LaurentPoly;
use crate::plat::{build_plat, build_tangle_ops, positive_cf, PlatDiagram};
use crate::rational::{Cf, TwoBridgeKnot};
use crate::Result;

/// Jones polynomial together with the writhe of the diagram it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JonesResult {
    pub v: LaurentPoly,
    pub writhe: i64,
}

/// delta = -A^2 - A^-2.
fn loop_value() -> LaurentPoly {
    LaurentPoly::from_terms(&[(2, -1), (-2, -1)])
}

fn a(exp: i64) -> LaurentPoly {
    LaurentPoly::monomial(exp, 1)
}

/// Skein coefficients of one crossing: `(on_extend, on_cap)` where the
/// extending smoothing keeps the tangle shape and the capping one closes
/// its open side.  `a_extends` says whether the A-smoothing is the
/// extending one.
fn skein_coeffs(a_extends: bool) -> (LaurentPoly, LaurentPoly) {
    if a_extends {
        (a(1), a(-1))
    } else {
        (a(-1), a(1))
    }
}

/// Bracket state of a 2-string tangle in the 0/infinity basis.
#[derive(Debug, Clone)]
struct BracketState {
    v0: LaurentPoly,
    vinf: LaurentPoly,
}

impl BracketState {
    fn zero_tangle() -> Self {
        BracketState { v0: LaurentPoly::one(), vinf: LaurentPoly::zero() }
    }

    fn inf_tangle() -> Self {
        BracketState { v0: LaurentPoly::zero(), vinf: LaurentPoly::one() }
    }

    /// One crossing composed on the right of the tangle.
    ///
    /// The horizontal smoothing extends; the vertical one caps the right
    /// side, turning 0 into infinity and closing a loop on infinity.
    fn push_horizontal(&mut self, a_is_horizontal: bool) {
        let (ext, cap) = skein_coeffs(a_is_horizontal);
        let delta = loop_value();
        let v0 = &ext * &self.v0;
        let vinf = &(&cap * &self.v0) + &(&(&ext + &(&cap * &delta)) * &self.vinf);
        self.v0 = v0;
        self.vinf = vinf;
    }

    /// One crossing composed on the bottom; roles of 0 and infinity swap.
    fn push_vertical(&mut self, a_is_vertical: bool) {
        let (ext, cap) = skein_coeffs(a_is_vertical);
        let delta = loop_value();
        let vinf = &ext * &self.vinf;
        let v0 = &(&cap * &self.vinf) + &(&(&ext + &(&cap * &delta)) * &self.v0);
        self.v0 = v0;
        self.vinf = vinf;
    }

    /// Numerator closure: <N(T)> = delta v0 + vinf.
    fn close_numerator(&self) -> LaurentPoly {
        &(&loop_value() * &self.v0) + &self.vinf
    }
}

/// Kauffman bracket of the 4-plat closure of `cf`, by transfer matrices
/// over the twist regions (linear in the crossing number).
pub fn bracket_cf(cf: &Cf) -> Result<LaurentPoly> {
    let ops = build_tangle_ops(cf);
    let mut state = if ops.first().map(|&(h, _)| h).unwrap_or(true) {
        BracketState::zero_tangle()
    } else {
        BracketState::inf_tangle()
    };
    for (horizontal, count) in ops {
        if count == 0 {
            return Err(Error::InvalidCf("zero twist count".into()));
        }
        for _ in 0..count.abs() {
            if horizontal {
                // Positive horizontal twists carry the NW-SE over-diagonal,
                // whose A-smoothing is the horizontal (extending) one.
                state.push_horizontal(count > 0);
            } else {
                // Positive vertical twists also carry NW-SE; horizontally
                // smoothing caps a bottom composition, so A extends exactly
                // when the twist is negative.
                state.push_vertical(count < 0);
            }
        }
    }
    Ok(state.close_numerator())
}

/// `(-A^3)^(-w) <D>` followed by the substitution t = A^-4.
pub fn normalize_bracket(bracket: &LaurentPoly, writhe: i64) -> Result<LaurentPoly> {
    let sign = if writhe % 2 == 0 { 1 } else { -1 };
    let normalized = bracket.mul_monomial(-6 * writhe, &BigInt::from(sign));
    normalized.map_exponents(-1, 4)
}

/// Jones polynomial of the knot diagram of a continued fraction
/// (direct convention, one component required).
pub fn jones_cf(cf: &Cf) -> Result<JonesResult> {
    let diagram = build_plat(cf)?;
    let writhe = diagram.writhe()?;
    let v = normalize_bracket(&bracket_cf(cf)?, writhe)?;
    Ok(JonesResult { v, writhe })
}

/// Jones polynomial of a two-bridge knot.
pub fn jones_two_bridge(knot: &TwoBridgeKnot) -> Result<JonesResult> {
    let cf = positive_cf(&knot.fraction().recip())?;
    let mut result = jones_cf(&cf)?;
    if knot.mirrored() {
        result.v = result.v.mirror_var();
        result.writhe = -result.writhe;
    }
    debug_assert!(result.v.eval_one().is_one(), "V(1) != 1 for {knot}");
    Ok(result)
}

/// Jones polynomial of the coherently oriented torus link on two strands
/// with |m| crossings, m even, labelled as in the twist-family computations:
/// one positive-skein step per pair of crossings starting from the trivial
/// two-component link.
pub fn jones_torus_2m(m: i64) -> Result<LaurentPoly> {
    if m % 2 != 0 || m == 0 {
        return Err(Error::NotALink(format!("T(2,{m}) is not a two-component link")));
    }
    let mut v = LaurentPoly::from_terms(&[]);
    v.add_term(1, BigInt::from(-1));
    v.add_term(-1, BigInt::from(-1));
    let step = {
        let mut s = LaurentPoly::zero();
        s.add_term(3, BigInt::one()); // t^(3/2)
        s.add_term(1, -BigInt::one()); // -t^(1/2)
        s
    };
    let t2 = LaurentPoly::monomial(2, 1);
    for _ in 0..(m.abs() / 2) {
        v = &(&t2 * &v) + &step;
    }
    Ok(v)
}

/// Closed form `(-t^(1/2)/(1+t)) (t^(4n)(t + 1 + t^-1) + 1)`, expanded
/// exactly.
pub fn torus_closed_form(n: i64) -> Result<LaurentPoly> {
    assert!(n >= 1);
    let core = &LaurentPoly::monomial(4 * n, 1) * &LaurentPoly::from_terms(&[(1, 1), (0, 1), (-1, 1)]);
    let numerator = &core + &LaurentPoly::one();
    let denominator = LaurentPoly::from_terms(&[(0, 1), (1, 1)]);
    let quotient = numerator
        .divides_exactly(&denominator)?
        .ok_or_else(|| Error::GridViolation("torus closed form does not divide".into()))?;
    let mut neg_sqrt_t = LaurentPoly::zero();
    neg_sqrt_t.add_term(1, BigInt::from(-1));
    Ok(&neg_sqrt_t * &quotient)
}

/// The three closed forms feeding the twist-family Jones computation:
/// `(V of C[4n,-2n], V of C[4n,2n], V of the connected sum L_n)`.
pub fn jones_family_pieces(n: i64) -> Result<(LaurentPoly, LaurentPoly, LaurentPoly)> {
    assert!(n >= 1);
    let tail = &(&LaurentPoly::monomial(-4 * n, 1)
        * &LaurentPoly::from_terms(&[(1, 1), (0, 1), (-1, 1)]))
        + &LaurentPoly::one();
    let den = &LaurentPoly::from_terms(&[(0, 1), (1, 1)])
        * &LaurentPoly::from_terms(&[(0, 1), (-1, 1)]);

    let minus = {
        let lead = LaurentPoly::monomial(-2 * n, 1);
        let num = &(&LaurentPoly::one() - &lead) * &tail;
        let q = num
            .divides_exactly(&den)?
            .ok_or_else(|| Error::GridViolation("C[4n,-2n] form does not divide".into()))?;
        &lead + &q
    };
    let plus = {
        let lead = LaurentPoly::monomial(2 * n, 1);
        let num = &(&LaurentPoly::one() - &lead) * &tail;
        let q = num
            .divides_exactly(&den)?
            .ok_or_else(|| Error::GridViolation("C[4n,2n] form does not divide".into()))?;
        &lead + &q
    };
    let link = &minus * &torus_closed_form(n)?;
    Ok((minus, plus, link))
}

/// Closed form for V of the amphichiral family member C[4n,-2n,-2n,4n]:
/// `1 + (1-t^(2n))(1-t^(-2n))(t^(2n)-t^(-2n))^2 (t+1+t^-1) / ((1+t)^2 (1+t^-1)^2)`.
pub fn family_closed_v(n: i64) -> Result<LaurentPoly> {
    assert!(n >= 1);
    let one = LaurentPoly::one();
    let f1 = &one - &LaurentPoly::monomial(2 * n, 1);
    let f2 = &one - &LaurentPoly::monomial(-2 * n, 1);
    let f3 = &LaurentPoly::monomial(2 * n, 1) - &LaurentPoly::monomial(-2 * n, 1);
    let f4 = LaurentPoly::from_terms(&[(1, 1), (0, 1), (-1, 1)]);
    let num = &(&(&f1 * &f2) * &(&f3 * &f3)) * &f4;
    let d1 = LaurentPoly::from_terms(&[(0, 1), (1, 1)]);
    let d2 = LaurentPoly::from_terms(&[(0, 1), (-1, 1)]);
    let den = &(&d1 * &d1) * &(&d2 * &d2);
    let q = num
        .divides_exactly(&den)?
        .ok_or_else(|| Error::GridViolation("family closed form does not divide".into()))?;
    Ok(&one + &q)
}

/// Coefficient of h^4 in V(e^h).
pub fn j4(v: &LaurentPoly) -> Result<BigRational> {
    Ok(v.exp_series(4)?.coeff(4))
}

/// Exponential state sums kept as an independent oracle for the
/// transfer-matrix route.
pub mod oracle {
    use super::*;

    /// Kauffman bracket by brute force over all 2^c smoothing states.
    pub fn bracket_state_sum(diagram: &PlatDiagram) -> LaurentPoly {
        let c = diagram.crossing_count();
        let delta = loop_value();
        let mut total = LaurentPoly::zero();
        for mask in 0..(1u64 << c) {
            let choices: Vec<bool> = (0..c).map(|i| (mask >> i) & 1 == 1).collect();
            let a_count = choices.iter().filter(|&&x| x).count() as i64;
            let exponent = a_count - (c as i64 - a_count);
            let circles = diagram.state_circles(&choices);
            let mut term = LaurentPoly::monomial(exponent, 1);
            for _ in 1..circles {
                term = &term * &delta;
            }
            total = &total + &term;
        }
        total
    }

    /// Jones polynomial of a knot diagram via the state sum.
    pub fn jones_state_sum(diagram: &PlatDiagram) -> Result<LaurentPoly> {
        let writhe = diagram.writhe()?;
        normalize_bracket(&bracket_state_sum(diagram), writhe)
    }

    /// Jones polynomial of a link diagram under the orientation with the
    /// most positive crossings (the coherent orientation of the twist-region
    /// closures used here, where every crossing comes out positive).
    pub fn jones_state_sum_positive(diagram: &PlatDiagram) -> Result<LaurentPoly> {
        let writhe = diagram
            .writhes_all_orientations()
            .into_iter()
            .max()
            .ok_or_else(|| Error::InvalidInput("empty diagram".into()))?;
        normalize_bracket(&bracket_state_sum(diagram), writhe)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn knot(p: i64, q: i64) -> TwoBridgeKnot {
        TwoBridgeKnot::normalize(p, q).unwrap()
    }

    #[test]
    fn trefoil_and_figure_eight() {
        let v = jones_two_bridge(&knot(3, 2)).unwrap().v;
        assert_eq!(v, LaurentPoly::from_terms(&[(-4, -1), (-3, 1), (-1, 1)]));

        let v = jones_two_bridge(&knot(5, 2)).unwrap().v;
        assert_eq!(
            v,
            LaurentPoly::from_terms(&[(2, 1), (1, -1), (0, 1), (-1, -1), (-2, 1)])
        );
        assert_eq!(v, v.mirror_var());
    }

    #[test]
    fn mirror_flag_mirrors_v() {
        let k = knot(3, 2);
        let m = k.mirror();
        let vk = jones_two_bridge(&k).unwrap().v;
        let vm = jones_two_bridge(&m).unwrap().v;
        assert_eq!(vm, vk.mirror_var());
        assert_eq!(vm, LaurentPoly::from_terms(&[(4, -1), (3, 1), (1, 1)]));
    }

    #[test]
    fn transfer_matches_state_sum_small() {
        for (p, q) in [(3, 2), (5, 2), (7, 2), (7, 4), (9, 2), (9, 4), (11, 4), (13, 8)] {
            let k = knot(p, q);
            let cf = positive_cf(&k.fraction().recip()).unwrap();
            let d = build_plat(&cf).unwrap();
            let via_transfer = jones_cf(&cf).unwrap().v;
            let via_sum = oracle::jones_state_sum(&d).unwrap();
            assert_eq!(via_transfer, via_sum, "mismatch for b({p},{q})");
        }
    }

    #[test]
    fn torus_link_values() {
        // One positive-skein step: the positively linked Hopf link.
        let hopf = jones_torus_2m(2).unwrap();
        let mut expected = LaurentPoly::zero();
        expected.add_term(1, BigInt::from(-1));
        expected.add_term(5, BigInt::from(-1));
        assert_eq!(hopf, expected);

        // Closed form agrees with the recurrence at n = 1 and 2.
        assert_eq!(jones_torus_2m(-4).unwrap(), torus_closed_form(1).unwrap());
        assert_eq!(jones_torus_2m(-8).unwrap(), torus_closed_form(2).unwrap());
        assert!(jones_torus_2m(3).is_err());
    }

    #[test]
    fn torus_closed_form_matches_plat_state_sum() {
        // The twist-region diagram of T(2,-8), coherently oriented so that
        // all eight crossings are positive.
        let cf = Cf::direct(vec![-8]).unwrap();
        let d = build_plat(&cf).unwrap();
        assert_eq!(d.component_count(), 2);
        let v = oracle::jones_state_sum_positive(&d).unwrap();
        assert_eq!(v, torus_closed_form(2).unwrap());

        // The Hopf value from the recurrence is the two-crossing diagram's.
        let d = build_plat(&Cf::direct(vec![-2]).unwrap()).unwrap();
        assert_eq!(
            oracle::jones_state_sum_positive(&d).unwrap(),
            jones_torus_2m(2).unwrap()
        );
    }

    #[test]
    fn family_pieces_n1() {
        let (minus, plus, _link) = jones_family_pieces(1).unwrap();
        // C[4,-2] is b(7,2) and C[4,2] is b(9,2).
        let k = TwoBridgeKnot::from_cf(&Cf::inverse(vec![4, -2]).unwrap()).unwrap();
        assert_eq!((k.p(), k.q()), (7, 2));
        assert_eq!(jones_two_bridge(&k).unwrap().v, minus);

        let k = TwoBridgeKnot::from_cf(&Cf::inverse(vec![4, 2]).unwrap()).unwrap();
        assert_eq!((k.p(), k.q()), (9, 2));
        assert_eq!(jones_two_bridge(&k).unwrap().v, plus);
    }

    #[test]
    fn family_closed_form_and_j4() {
        for n in 1..=2i64 {
            let cf = Cf::inverse(vec![4 * n, -2 * n, -2 * n, 4 * n]).unwrap();
            let k = TwoBridgeKnot::from_cf(&cf).unwrap();
            let v = jones_two_bridge(&k).unwrap().v;
            assert_eq!(v, family_closed_v(n).unwrap(), "closed form at n={n}");
            let expected = BigRational::from(BigInt::from(-12 * n.pow(4)));
            assert_eq!(j4(&v).unwrap(), expected, "j4 at n={n}");
        }
        assert_eq!(j4(&LaurentPoly::one()).unwrap(), BigRational::from(BigInt::from(0)));
    }

    #[test]
    fn coefficient_sum_is_one() {
        for (p, q) in [(3, 2), (5, 2), (7, 2), (9, 2), (11, 2), (13, 8), (65, 18)] {
            let v = jones_two_bridge(&knot(p, q)).unwrap().v;
            assert!(v.eval_one().is_one(), "V(1) != 1 for b({p},{q})");
        }
    }

    #[test]
    fn normalize_bracket_rejects_bad_grid() {
        // A bare A-monomial of odd exponent cannot land on the half grid.
        let b = LaurentPoly::monomial(1, 1);
        assert!(normalize_bracket(&b, 0).is_err());
        let _ = frac(1, 2);
    }
}
