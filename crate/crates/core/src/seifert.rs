//! Seifert-matrix route to the Conway and Alexander polynomials, the
//! signature, the genus, the determinant, and fiberedness.
//!
//! From the canonical all-even expansion `[2c_1, ..., 2c_{2m}]` the Seifert
//! matrix is the upper bidiagonal `V` with `V[i][i] = d_i`, `V[i][i+1] = 1`,
//! `V[i+1][i] = 0`, where `d_i = (-1)^(i+1) c_i`.  The alternating-sign rule
//! and the off-diagonal convention are pinned by the signature and Conway
//! fixtures of the four-term family.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::laurent::LaurentPoly;
use crate::rational::{Cf, TwoBridgeKnot};
use crate::Result;

/// Diagonal data of the Seifert matrix built from an all-even expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertData {
    diag: Vec<i64>,
}

impl SeifertData {
    /// Build from an all-even inverse expansion `[2c_1, ..., 2c_{2m}]`.
    pub fn from_even_cf(cf: &Cf) -> Result<Self> {
        let terms = cf.terms();
        if terms.len() % 2 != 0 {
            return Err(Error::InvalidCf("even expansion must have even length".into()));
        }
        if terms.iter().any(|&t| t % 2 != 0 || t == 0) {
            return Err(Error::InvalidCf("expansion terms must be even and nonzero".into()));
        }
        let diag = terms
            .iter()
            .enumerate()
            .map(|(i, &t)| if i % 2 == 0 { t / 2 } else { -t / 2 })
            .collect();
        Ok(SeifertData { diag })
    }

    pub fn from_knot(knot: &TwoBridgeKnot) -> Self {
        Self::from_even_cf(knot.even_cf()).expect("canonical expansion is valid")
    }

    /// Signed half-terms d_1..d_{2m}.
    pub fn diag(&self) -> &[i64] {
        &self.diag
    }

    /// Genus of the associated Seifert surface (m for a 2m-term expansion).
    pub fn genus(&self) -> i64 {
        (self.diag.len() / 2) as i64
    }

    /// Conway polynomial in z via the tridiagonal recurrence
    /// `D_k = d_k z D_{k-1} + D_{k-2}`, `D_0 = 1`, `D_{-1} = 0`.
    pub fn conway(&self) -> LaurentPoly {
        let z = LaurentPoly::monomial(1, 1);
        let mut prev = LaurentPoly::zero(); // D_{-1}
        let mut cur = LaurentPoly::one(); // D_0
        for &d in &self.diag {
            let next = &(&(&z * &cur) * &LaurentPoly::constant(d)) + &prev;
            prev = cur;
            cur = next;
        }
        cur
    }

    /// Alexander polynomial: the Conway polynomial at `z = t^(1/2) - t^(-1/2)`,
    /// symmetric with value 1 at t = 1.
    pub fn alexander(&self) -> LaurentPoly {
        conway_to_alexander(&self.conway())
    }

    /// Signature of V + V^T, exactly.
    ///
    /// The symmetrized matrix is tridiagonal with diagonal `2 d_i` and
    /// off-diagonal 1; the principal-minor recurrence with sign-change
    /// counting handles the generic case and an exact congruence
    /// diagonalization over the rationals takes over when a minor vanishes.
    pub fn signature(&self) -> i64 {
        let n = self.diag.len();
        let mut minors = Vec::with_capacity(n + 1);
        minors.push(BigInt::one());
        let mut p_prev = BigInt::one(); // P_0
        let mut p_prev2 = BigInt::one(); // placeholder, P_{-1} = 1 by convention
        for (k, &d) in self.diag.iter().enumerate() {
            let p_next = if k == 0 {
                BigInt::from(2 * d)
            } else {
                BigInt::from(2 * d) * &p_prev - &p_prev2
            };
            minors.push(p_next.clone());
            p_prev2 = std::mem::replace(&mut p_prev, p_next);
        }
        if minors.iter().any(|m| m.is_zero()) {
            return self.signature_by_diagonalization();
        }
        let mut sign_changes = 0i64;
        for w in minors.windows(2) {
            if (w[0].is_positive()) != (w[1].is_positive()) {
                sign_changes += 1;
            }
        }
        n as i64 - 2 * sign_changes
    }

    /// Fallback: symmetric Gaussian congruence over Q, sound for any
    /// symmetric integer matrix.
    fn signature_by_diagonalization(&self) -> i64 {
        let n = self.diag.len();
        let mut m = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            m[i][i] = BigRational::from(BigInt::from(2 * self.diag[i]));
            if i + 1 < n {
                m[i][i + 1] = BigRational::one();
                m[i + 1][i] = BigRational::one();
            }
        }
        signature_of_symmetric(m)
    }
}

/// Signature of a symmetric rational matrix by congruence diagonalization.
pub(crate) fn signature_of_symmetric(mut m: Vec<Vec<BigRational>>) -> i64 {
    let n = m.len();
    let mut sig = 0i64;
    let mut row = 0;
    while row < n {
        if m[row][row].is_zero() {
            // Bring a nonzero diagonal entry into position, or split a
            // hyperbolic pair.
            if let Some(j) = (row + 1..n).find(|&j| !m[j][j].is_zero()) {
                m.swap(row, j);
                for r in m.iter_mut() {
                    r.swap(row, j);
                }
            } else if let Some(j) = (row + 1..n).find(|&j| !m[row][j].is_zero()) {
                // All remaining diagonal entries are zero; m[row][j] != 0
                // gives a +1/-1 pair after the congruence row_i += row_j.
                for k in 0..n {
                    let v = m[j][k].clone();
                    m[row][k] += v;
                }
                for k in 0..n {
                    let v = m[k][j].clone();
                    m[k][row] += v;
                }
            } else {
                // Zero row: contributes nothing.
                row += 1;
                continue;
            }
            if m[row][row].is_zero() {
                row += 1;
                continue;
            }
        }
        let pivot = m[row][row].clone();
        sig += if pivot.is_positive() { 1 } else { -1 };
        for j in row + 1..n {
            if m[row][j].is_zero() {
                continue;
            }
            let factor = &m[row][j] / &pivot;
            for k in 0..n {
                let v = &m[row][k] * &factor;
                m[j][k] -= v;
            }
            for k in 0..n {
                let v = &m[k][row] * &factor;
                m[k][j] -= v;
            }
        }
        row += 1;
    }
    sig
}

/// Conway polynomial of a knot (canonical form; mirror-invariant).
pub fn knot_conway(knot: &TwoBridgeKnot) -> LaurentPoly {
    SeifertData::from_knot(knot).conway()
}

/// Alexander polynomial of a knot (mirror-invariant).
pub fn knot_alexander(knot: &TwoBridgeKnot) -> LaurentPoly {
    SeifertData::from_knot(knot).alexander()
}

/// Signature of the denoted knot; the chirality flag negates the canonical
/// value.
pub fn knot_signature(knot: &TwoBridgeKnot) -> i64 {
    let s = SeifertData::from_knot(knot).signature();
    if knot.mirrored() {
        -s
    } else {
        s
    }
}

/// Determinant |Delta(-1)|.
pub fn determinant(alexander: &LaurentPoly) -> BigInt {
    alexander.eval_minus_one().expect("Alexander lives on the integer grid").abs()
}

/// Substitute `z = t^(1/2) - t^(-1/2)` into a Conway polynomial.
pub fn conway_to_alexander(conway: &LaurentPoly) -> LaurentPoly {
    // Knots only produce even powers of z, and z^2 = t - 2 + 1/t.
    let z2 = LaurentPoly::from_terms(&[(1, 1), (0, -2), (-1, 1)]);
    let mut out = LaurentPoly::zero();
    for (half, c) in conway.iter() {
        assert!(half % 4 == 0, "Conway polynomial of a knot has only even z powers");
        let j = (half / 4) as u32;
        out = &out + &z2.pow(j).mul_monomial(0, c);
    }
    out
}

/// Half the exponent breadth of the Alexander polynomial of an alternating
/// knot.
pub fn genus_alternating(alexander: &LaurentPoly) -> Result<i64> {
    let breadth = alexander.breadth().ok_or(Error::DegenerateAlexander)?;
    if breadth == 0 {
        return Err(Error::DegenerateAlexander);
    }
    Ok(breadth / 2)
}

/// Monic leading coefficient: fibered, for alternating knots.
pub fn is_fibered_alternating(alexander: &LaurentPoly) -> bool {
    alexander.leading_coeff().abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::canonical_knots;

    fn even(terms: &[i64]) -> SeifertData {
        SeifertData::from_even_cf(&Cf::inverse(terms.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn conway_examples() {
        assert_eq!(even(&[4, -2, -2, 4]).diag(), &[2, 1, -1, -2]);
        assert_eq!(
            even(&[4, -2, -2, 4]).conway(),
            LaurentPoly::from_terms(&[(4, 4), (0, 1)])
        );
        assert_eq!(even(&[2, -2]).conway(), LaurentPoly::from_terms(&[(2, 1), (0, 1)]));
        assert_eq!(even(&[2, 2]).conway(), LaurentPoly::from_terms(&[(2, -1), (0, 1)]));
    }

    #[test]
    fn alexander_examples() {
        assert_eq!(
            even(&[4, -2, -2, 4]).alexander(),
            LaurentPoly::from_terms(&[(2, 4), (1, -16), (0, 25), (-1, -16), (-2, 4)])
        );
        assert_eq!(
            even(&[2, -2]).alexander(),
            LaurentPoly::from_terms(&[(1, 1), (0, -1), (-1, 1)])
        );
        assert_eq!(
            even(&[2, 2]).alexander(),
            LaurentPoly::from_terms(&[(1, -1), (0, 3), (-1, -1)])
        );
    }

    #[test]
    fn signature_trichotomy_fixtures() {
        // (x, y) = (1, 1), (1, -3), (2, -1) in the family [2x, 2y, -2(x+y), 2x].
        assert_eq!(even(&[2, 2, -4, 2]).signature(), -2);
        assert_eq!(even(&[2, -6, 4, 2]).signature(), 2);
        assert_eq!(even(&[4, -2, -2, 4]).signature(), 0);
    }

    #[test]
    fn genus_examples() {
        let family = even(&[4, -2, -2, 4]).alexander();
        assert_eq!(genus_alternating(&family).unwrap(), 2);
        let trefoil = even(&[2, -2]).alexander();
        assert_eq!(genus_alternating(&trefoil).unwrap(), 1);
        // Connected sum 4_1 # 4_1 by multiplicativity.
        let fig8 = even(&[2, 2]).alexander();
        assert_eq!(genus_alternating(&(&fig8 * &fig8)).unwrap(), 2);
        assert!(matches!(
            genus_alternating(&LaurentPoly::one()),
            Err(Error::DegenerateAlexander)
        ));
    }

    #[test]
    fn fibered_examples() {
        let sixthree = LaurentPoly::from_terms(&[(2, 1), (1, -3), (0, 5), (-1, -3), (-2, 1)]);
        assert!(is_fibered_alternating(&sixthree));
        let family = even(&[4, -2, -2, 4]).alexander();
        assert!(!is_fibered_alternating(&family));
        let trefoil = even(&[2, -2]).alexander();
        assert!(is_fibered_alternating(&trefoil));
    }

    #[test]
    fn six_three_from_fraction() {
        let k = TwoBridgeKnot::normalize(13, 5).unwrap();
        assert_eq!(
            knot_alexander(&k),
            LaurentPoly::from_terms(&[(2, 1), (1, -3), (0, 5), (-1, -3), (-2, 1)])
        );
        assert_eq!(knot_signature(&k), 0);
    }

    #[test]
    fn determinant_matches_p_small_scan() {
        for k in canonical_knots(60) {
            let delta = knot_alexander(&k);
            assert_eq!(determinant(&delta), BigInt::from(k.p()), "det != p for {k}");
            assert_eq!(delta.eval_one(), BigInt::one(), "Delta(1) != 1 for {k}");
            assert_eq!(delta, delta.mirror_var(), "Delta not symmetric for {k}");
        }
    }

    #[test]
    fn signature_negates_under_mirror() {
        for k in canonical_knots(60) {
            let m = k.mirror();
            assert_eq!(knot_signature(&k), -knot_signature(&m), "mirror signature for {k}");
        }
    }

    #[test]
    fn diagonalization_fallback_agrees() {
        // Matrices small enough to check both routes on mirror pairs.
        for k in canonical_knots(60) {
            let s = SeifertData::from_knot(&k);
            assert_eq!(s.signature(), s.signature_by_diagonalization(), "routes differ for {k}");
        }
    }
}
