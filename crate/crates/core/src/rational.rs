//! Exact rationals, continued-fraction algebra, and two-bridge knot
//! normalization.
//!
//! A two-bridge knot is stored as a canonical pair `(p, q)` with `p` odd,
//! `0 < q < p`, `q` even, together with a chirality flag saying whether the
//! knot the caller named is the mirror image of the stored form.  The
//! canonical all-even continued-fraction expansion of `q/p` is cached on the
//! knot; every other invariant in the crate is derived from it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::Result;

/// Exact rational number with arbitrary-precision numerator/denominator.
pub type Fraction = BigRational;

/// Build a `Fraction` from machine integers.
pub fn frac(num: i64, den: i64) -> Fraction {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Evaluation convention of a finite continued fraction.
///
/// `Inverse` evaluates `[a1, ..., ak]` to `1/(a1 + 1/(a2 + ... + 1/ak))`,
/// `Direct` to `a1 + 1/(a2 + ... + 1/ak)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    Inverse,
    Direct,
}

/// Finite continued fraction with nonzero integer terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cf {
    terms: Vec<i64>,
    convention: Convention,
}

impl Cf {
    pub fn new(terms: Vec<i64>, convention: Convention) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidCf("empty term list".into()));
        }
        if terms.iter().any(|&t| t == 0) {
            return Err(Error::InvalidCf("zero term".into()));
        }
        Ok(Cf { terms, convention })
    }

    pub fn inverse(terms: Vec<i64>) -> Result<Self> {
        Cf::new(terms, Convention::Inverse)
    }

    pub fn direct(terms: Vec<i64>) -> Result<Self> {
        Cf::new(terms, Convention::Direct)
    }

    pub fn terms(&self) -> &[i64] {
        &self.terms
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same terms under the other convention.
    pub fn with_convention(&self, convention: Convention) -> Cf {
        Cf { terms: self.terms.clone(), convention }
    }

    /// Term-wise negation (the mirror image on the level of expansions).
    pub fn negated(&self) -> Cf {
        Cf {
            terms: self.terms.iter().map(|&t| -t).collect(),
            convention: self.convention,
        }
    }

    /// Exact value under the stored convention.
    ///
    /// Evaluates innermost to outermost; fails with `DivisionByZero` if an
    /// intermediate tail evaluates to 0 where a reciprocal is required.
    pub fn eval(&self) -> Result<Fraction> {
        // tail = a_k, then repeatedly a_i + 1/tail.
        let mut iter = self.terms.iter().rev();
        let first = *iter.next().expect("nonempty");
        let mut tail = BigRational::from(BigInt::from(first));
        for &a in iter {
            if tail.is_zero() {
                return Err(Error::DivisionByZero);
            }
            tail = BigRational::from(BigInt::from(a)) + tail.recip();
        }
        match self.convention {
            Convention::Direct => Ok(tail),
            Convention::Inverse => {
                if tail.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(tail.recip())
            }
        }
    }
}

impl std::fmt::Display for Cf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "]")
    }
}

/// The unique all-even inverse-convention expansion of a two-bridge fraction.
///
/// The input is `q/p` with `p` odd positive, `0 < |q| < p`, `gcd(p, q) = 1`.
/// When `q` is odd the expansion of the even representative `(q - p)/p` is
/// returned instead (the two denote the same knot).  A two-bridge link
/// (`p` even) is rejected.
pub fn even_expansion(f: &Fraction) -> Result<Cf> {
    let p = f.denom().clone();
    let q = f.numer().clone();
    if p.is_even() {
        return Err(Error::NotAKnot(format!("denominator {p} is even")));
    }
    if q.abs() >= p || q.is_zero() {
        return Err(Error::InvalidFraction(format!(
            "{q}/{p} is not in the two-bridge range 0 < |q| < p"
        )));
    }
    let q = if q.is_odd() { q - &p } else { q };
    // Greedy: at each step pick the unique even a with |u - a| < 1.
    let mut num = p.clone();
    let mut den = q;
    let mut terms: Vec<i64> = Vec::new();
    loop {
        // u = num/den with den != 0; floored division puts u - floor(u)
        // = rem/den in [0, 1).
        let (floor, rem) = num.div_mod_floor(&den);
        if rem.is_zero() {
            // u is an integer.
            if floor.is_even() {
                terms.push(big_to_i64(&floor)?);
                break;
            }
            return Err(Error::NotAKnot(format!(
                "tail reached odd integer {floor}; no all-even expansion"
            )));
        }
        let a = if floor.is_even() { floor } else { floor + 1u8 };
        terms.push(big_to_i64(&a)?);
        // r = u - a = (num - a*den)/den, next u = den/(num - a*den).
        let next_den = &num - BigInt::from(terms[terms.len() - 1]) * &den;
        num = den;
        den = next_den;
    }
    debug_assert!(terms.len() % 2 == 0, "all-even expansion of a knot has even length");
    debug_assert!(terms.iter().all(|t| t.abs() >= 2 && t % 2 == 0));
    Cf::inverse(terms)
}

fn big_to_i64(b: &BigInt) -> Result<i64> {
    i64::try_from(b).map_err(|_| {
        Error::InvalidInput(format!("continued-fraction term {b} exceeds machine range"))
    })
}

/// A two-bridge knot in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwoBridgeKnot {
    p: i64,
    q: i64,
    mirrored: bool,
    even_cf: Cf,
}

impl TwoBridgeKnot {
    /// Normalize an arbitrary two-bridge pair.
    ///
    /// Accepts any `q` coprime to odd `p >= 3` with `q` not a multiple of
    /// `p`.  The canonical representative has the smallest even `q` in
    /// `(0, p)` among `{q, q^{-1} mod p}`; if neither is even the knot is the
    /// mirror of a canonical form and the chirality flag records that.
    pub fn normalize(p: i64, q: i64) -> Result<Self> {
        if p < 3 {
            return Err(Error::InvalidFraction(format!("p = {p} must be at least 3")));
        }
        if p % 2 == 0 {
            return Err(Error::NotAKnot(format!("p = {p} is even (two-bridge link)")));
        }
        let q0 = q.rem_euclid(p);
        if q0 == 0 {
            return Err(Error::InvalidFraction("q is a multiple of p".into()));
        }
        if gcd_i64(p, q0) != 1 {
            return Err(Error::InvalidFraction(format!("gcd({p}, {q}) != 1")));
        }
        let r0 = mod_inverse(q0, p).expect("coprime");
        let own_even = [q0, r0].into_iter().filter(|v| v % 2 == 0).min();
        let (qc, mirrored) = match own_even {
            Some(e) => (e, false),
            None => {
                // Both residues odd: the mirror class holds the even ones.
                let e = [p - q0, p - r0].into_iter().filter(|v| v % 2 == 0).min().unwrap();
                (e, true)
            }
        };
        let even_cf = even_expansion(&frac(qc, p))?;
        Ok(TwoBridgeKnot { p, q: qc, mirrored, even_cf })
    }

    /// Knot named by an inverse-convention continued fraction.
    pub fn from_cf(cf: &Cf) -> Result<Self> {
        let v = cf.with_convention(Convention::Inverse).eval()?;
        let p = v.denom().clone();
        let q = v.numer().clone();
        if p.is_one() {
            return Err(Error::InvalidFraction(
                "continued fraction evaluates to an integer".into(),
            ));
        }
        TwoBridgeKnot::normalize(big_to_i64(&p)?, big_to_i64(&q)?)
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    /// Canonical even q in (0, p).
    pub fn q(&self) -> i64 {
        self.q
    }

    /// True when the knot the caller named is the mirror of the stored
    /// canonical form.
    pub fn mirrored(&self) -> bool {
        self.mirrored
    }

    /// Canonical all-even expansion of `q/p` (inverse convention).  For a
    /// mirrored knot the denoted knot's expansion is the negation.
    pub fn even_cf(&self) -> &Cf {
        &self.even_cf
    }

    /// All-even expansion of the knot actually denoted, mirror included.
    pub fn denoted_even_cf(&self) -> Cf {
        if self.mirrored {
            self.even_cf.negated()
        } else {
            self.even_cf.clone()
        }
    }

    pub fn fraction(&self) -> Fraction {
        frac(self.q, self.p)
    }

    /// q^2 = -1 (mod p), the two-bridge amphichirality criterion.
    pub fn is_amphichiral(&self) -> bool {
        let p = BigInt::from(self.p);
        let q = BigInt::from(self.q);
        (&q * &q + 1) % p == BigInt::zero()
    }

    /// The mirror image, renormalized.  Amphichiral knots are fixed points.
    pub fn mirror(&self) -> TwoBridgeKnot {
        if self.mirrored {
            let mut k = self.clone();
            k.mirrored = false;
            return k;
        }
        TwoBridgeKnot::normalize(self.p, self.p - self.q).expect("mirror of a valid knot")
    }

    /// Parameters `(x, y)` when the canonical expansion matches the
    /// four-term family `[2x, 2y, -2(x+y), 2x]` (x > 0), reversal included.
    pub fn family_params(&self) -> Option<(i64, i64)> {
        let t = self.even_cf.terms();
        if t.len() != 4 || t[0] != t[3] || t[0] <= 0 {
            return None;
        }
        if t.iter().any(|&a| a % 2 != 0) {
            return None;
        }
        let x = t[0] / 2;
        // [2x, 2y, -2(x+y), 2x] or its reversal [2x, -2(x+y), 2y, 2x].
        if t[2] == -(t[0] + t[1]) {
            return Some((x, t[1] / 2));
        }
        if t[1] == -(t[0] + t[2]) {
            return Some((x, t[2] / 2));
        }
        None
    }

    /// n >= 1 when the canonical expansion is `[4n, -2n, -2n, 4n]` (the
    /// amphichiral line x = -2y of the family).
    pub fn family_n(&self) -> Option<i64> {
        let (x, y) = self.family_params()?;
        if x == -2 * y && x % 2 == 0 && x > 0 {
            Some(x / 2)
        } else {
            None
        }
    }
}

impl std::fmt::Display for TwoBridgeKnot {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "b({},{})", self.p, self.q)?;
        if self.mirrored {
            write!(f, "*")?;
        }
        Ok(())
    }
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Inverse of a modulo m (m > 0), when it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let (mut r0, mut r1) = (m as i128, a.rem_euclid(m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (s0, s1) = (s1, s0 - k * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some((s0.rem_euclid(m as i128)) as i64)
}

/// All canonical two-bridge knots with determinant at most `max_p`.
pub fn canonical_knots(max_p: i64) -> Vec<TwoBridgeKnot> {
    let mut out = Vec::new();
    let mut p = 3;
    while p <= max_p {
        for q in (2..p).step_by(2) {
            if gcd_i64(p, q) != 1 {
                continue;
            }
            let k = TwoBridgeKnot::normalize(p, q).expect("valid pair");
            if k.q() == q && !k.mirrored() {
                out.push(k);
            }
        }
        p += 2;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn icf(terms: &[i64]) -> Cf {
        Cf::inverse(terms.to_vec()).unwrap()
    }

    #[test]
    fn eval_inverse_examples() {
        assert_eq!(icf(&[2, 2]).eval().unwrap(), frac(2, 5));
        assert_eq!(icf(&[4, -2, -2, 4]).eval().unwrap(), frac(18, 65));
        // [2x, 2y, -2(x+y), 2x] at (x, y) = (2, -1) is the same sequence.
        assert_eq!(icf(&[2 * 2, 2 * -1, -2 * (2 - 1), 2 * 2]).eval().unwrap(), frac(18, 65));
    }

    #[test]
    fn eval_direct_is_reciprocal_of_inverse() {
        let cf = icf(&[3, 2, -2, 5]);
        let inv = cf.eval().unwrap();
        let dir = cf.with_convention(Convention::Direct).eval().unwrap();
        assert_eq!(inv, dir.recip());
    }

    #[test]
    fn eval_division_by_zero() {
        // 1 + 1/(-1) = 0, then the outer reciprocal fails.
        let cf = icf(&[1, -1]);
        assert_eq!(cf.eval().unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn even_expansion_examples() {
        assert_eq!(even_expansion(&frac(18, 65)).unwrap().terms(), &[4, -2, -2, 4]);
        assert_eq!(even_expansion(&frac(2, 5)).unwrap().terms(), &[2, 2]);
        assert_eq!(even_expansion(&frac(2, 3)).unwrap().terms(), &[2, -2]);
    }

    #[test]
    fn even_expansion_rejects_links() {
        assert!(matches!(even_expansion(&frac(1, 4)), Err(Error::NotAKnot(_))));
    }

    #[test]
    fn even_expansion_odd_numerator_uses_even_representative() {
        // 5/13 and -8/13 denote the same knot; the expansion must evaluate
        // to the even representative.
        let cf = even_expansion(&frac(5, 13)).unwrap();
        assert_eq!(cf.eval().unwrap(), frac(-8, 13));
    }

    #[test]
    fn normalize_examples() {
        let k = TwoBridgeKnot::normalize(65, 18).unwrap();
        assert_eq!((k.p(), k.q(), k.mirrored()), (65, 18, false));

        let k = TwoBridgeKnot::normalize(5, 3).unwrap();
        assert_eq!((k.p(), k.q(), k.mirrored()), (5, 2, false));

        let k = TwoBridgeKnot::normalize(3, 1).unwrap();
        assert_eq!((k.p(), k.q(), k.mirrored()), (3, 2, true));
    }

    #[test]
    fn normalize_rejects_bad_input() {
        assert!(matches!(TwoBridgeKnot::normalize(4, 2), Err(Error::NotAKnot(_))));
        assert!(matches!(TwoBridgeKnot::normalize(9, 3), Err(Error::InvalidFraction(_))));
        assert!(matches!(TwoBridgeKnot::normalize(9, 0), Err(Error::InvalidFraction(_))));
    }

    #[test]
    fn amphichirality() {
        assert!(TwoBridgeKnot::normalize(65, 18).unwrap().is_amphichiral());
        assert!(!TwoBridgeKnot::normalize(3, 2).unwrap().is_amphichiral());
        assert!(TwoBridgeKnot::normalize(5, 2).unwrap().is_amphichiral());
    }

    #[test]
    fn mirror_examples() {
        // The trefoil and its mirror share the canonical pair (3, 2).
        let k = TwoBridgeKnot::normalize(3, 2).unwrap();
        let m = k.mirror();
        assert_eq!((m.p(), m.q(), m.mirrored()), (3, 2, true));
        assert_eq!(m.mirror(), k);

        // Amphichiral: the mirror is the knot itself.
        let k = TwoBridgeKnot::normalize(65, 18).unwrap();
        assert_eq!(k.mirror(), k);

        // Negating the expansion mirrors on the level of fractions.
        assert_eq!(icf(&[2, 2]).negated().terms(), &[-2, -2]);
    }

    #[test]
    fn mirror_is_an_involution() {
        for k in canonical_knots(45) {
            assert_eq!(k.mirror().mirror(), k, "mirror^2 != id for {k}");
        }
    }

    #[test]
    fn mirror_pair_without_flag() {
        // b(9,2) and b(9,4) are mirror images, both canonical.
        let k = TwoBridgeKnot::normalize(9, 2).unwrap();
        let m = k.mirror();
        assert_eq!((m.p(), m.q(), m.mirrored()), (9, 4, false));
        assert_eq!(m.mirror(), k);
    }

    #[test]
    fn family_detection() {
        let k = TwoBridgeKnot::normalize(65, 18).unwrap();
        assert_eq!(k.family_params(), Some((2, -1)));
        assert_eq!(k.family_n(), Some(1));

        let k = TwoBridgeKnot::from_cf(&icf(&[6, -4, -2, 6])).unwrap();
        assert_eq!(k.family_params(), Some((3, -2)));
        assert_eq!(k.family_n(), None);

        let k = TwoBridgeKnot::normalize(5, 2).unwrap();
        assert_eq!(k.family_params(), None);
    }

    #[test]
    fn even_cf_roundtrip_on_small_knots() {
        for k in canonical_knots(99) {
            let v = k.even_cf().eval().unwrap();
            assert_eq!(v, k.fraction(), "even_cf of {k} evaluates wrong");
            assert!(k.even_cf().terms().iter().all(|t| t % 2 == 0 && t.abs() >= 2));
            assert!(k.even_cf().len() % 2 == 0);
        }
    }
}
