//! Boundary-slope enumeration for two-bridge knots and the surgery
//! difference of the SL(2,C) Casson invariant.
//!
//! Boundary slopes correspond to the continued-fraction expansions of the
//! knot fraction with all terms of absolute value at least two; the
//! expansions of p/q and p/(q-p) together give one record per slope
//! datum.  Each record carries the counts `n+`/`n-` of terms fitting the
//! alternating sign pattern +,-,+,-,..., the even slope
//! `N = 2[(n+ - n-) - (n0+ - n0-)]` measured against the all-even
//! (longitude) expansion, and the weight `W = prod(|a_i| - 1)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::rational::{frac, Cf, Convention, Fraction, TwoBridgeKnot};
use crate::Result;

/// One boundary-slope datum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeRecord {
    /// Direct-convention expansion with all |terms| >= 2.
    pub expansion: Cf,
    pub n_plus: usize,
    pub n_minus: usize,
    /// Even integer N.
    pub slope: i64,
    /// prod(|a_i| - 1) over all terms.
    pub weight: BigInt,
}

/// All slope records of one knot with the two weighted sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeSummary {
    pub records: Vec<SlopeRecord>,
    /// Sum of weights over records with positive slope.
    pub s_plus: BigInt,
    /// Sum of weights over records with negative slope.
    pub s_minus: BigInt,
}

/// All finite direct-convention expansions `[a_1, ..., a_k]` of `u` with
/// every `|a_i| >= 2`.
///
/// Depth-first search over the floor/ceil candidates at each tail; the
/// tail denominators strictly decrease, so the search terminates, and
/// distinct branches give distinct expansions.
pub fn enumerate_expansions(u: &Fraction) -> Result<Vec<Cf>> {
    if u.abs() <= BigRational::one() {
        return Err(Error::InvalidInput(format!("|{u}| <= 1 has no expansion")));
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    dfs(u.clone(), &mut prefix, &mut out)?;
    Ok(out)
}

fn dfs(v: Fraction, prefix: &mut Vec<i64>, out: &mut Vec<Cf>) -> Result<()> {
    if v.denom().is_one() {
        let a = i64::try_from(v.numer())
            .map_err(|_| Error::InvalidInput("term exceeds machine range".into()))?;
        prefix.push(a);
        out.push(Cf::direct(prefix.clone())?);
        prefix.pop();
        return Ok(());
    }
    let floor = v.numer().div_floor(v.denom());
    let floor = i64::try_from(&floor)
        .map_err(|_| Error::InvalidInput("term exceeds machine range".into()))?;
    for a in [floor, floor + 1] {
        if a.abs() < 2 {
            continue;
        }
        let tail = (&v - frac(a, 1)).recip();
        prefix.push(a);
        dfs(tail, prefix, out)?;
        prefix.pop();
    }
    Ok(())
}

/// Terms fitting the alternating pattern +,-,+,- counted from position 1.
fn pattern_counts(terms: &[i64]) -> (usize, usize) {
    let n_plus = terms
        .iter()
        .enumerate()
        .filter(|&(i, &a)| (a > 0) == (i % 2 == 0))
        .count();
    (n_plus, terms.len() - n_plus)
}

fn weight_of(terms: &[i64]) -> BigInt {
    terms.iter().map(|&a| BigInt::from(a.abs() - 1)).product()
}

/// Slope records measured against an all-even longitude expansion
/// (inverse convention).
fn records_for_longitude(longitude: &Cf) -> Result<SlopeSummary> {
    let value = longitude.with_convention(Convention::Inverse).eval()?;
    let p = value.denom().clone();
    let q = value.numer().clone();
    if p.is_even() {
        return Err(Error::NotAKnot(format!("denominator {p} is even")));
    }
    let (n0_plus, n0_minus) = pattern_counts(longitude.terms());
    let baseline = n0_plus as i64 - n0_minus as i64;

    let target_a = BigRational::new(p.clone(), q.clone());
    let target_b = BigRational::new(p.clone(), q - p);
    let mut records = Vec::new();
    for target in [target_a, target_b] {
        for expansion in enumerate_expansions(&target)? {
            let (n_plus, n_minus) = pattern_counts(expansion.terms());
            let slope = 2 * ((n_plus as i64 - n_minus as i64) - baseline);
            let weight = weight_of(expansion.terms());
            records.push(SlopeRecord { expansion, n_plus, n_minus, slope, weight });
        }
    }
    sort_records(&mut records);
    Ok(summarize(records))
}

fn sort_records(records: &mut [SlopeRecord]) {
    records.sort_by(|a, b| {
        a.slope
            .cmp(&b.slope)
            .then(a.expansion.len().cmp(&b.expansion.len()))
            .then(a.expansion.terms().cmp(b.expansion.terms()))
    });
}

fn summarize(records: Vec<SlopeRecord>) -> SlopeSummary {
    let mut s_plus = BigInt::zero();
    let mut s_minus = BigInt::zero();
    for r in &records {
        if r.slope > 0 {
            s_plus += &r.weight;
        } else if r.slope < 0 {
            s_minus += &r.weight;
        }
    }
    SlopeSummary { records, s_plus, s_minus }
}

/// All slope records of a normalized knot.  For a mirrored knot every
/// expansion negates term-wise, so slopes negate and weights persist.
pub fn slope_records(knot: &TwoBridgeKnot) -> Result<SlopeSummary> {
    let summary = records_for_longitude(knot.even_cf())?;
    if !knot.mirrored() {
        return Ok(summary);
    }
    let mut records: Vec<SlopeRecord> = summary
        .records
        .into_iter()
        .map(|r| SlopeRecord {
            expansion: r.expansion.negated(),
            n_plus: r.n_minus,
            n_minus: r.n_plus,
            slope: -r.slope,
            weight: r.weight,
        })
        .collect();
    sort_records(&mut records);
    Ok(summarize(records))
}

/// Difference of the SL(2,C) Casson invariant between p/q and -p/q
/// surgery: `1/4 sum_i W_i (|p - q N_i| - |-p - q N_i|)`.
pub fn casson_difference(knot: &TwoBridgeKnot, p: i64, q: i64) -> Result<BigRational> {
    if q == 0 {
        return Err(Error::InvalidSlope("slope denominator is zero".into()));
    }
    let g = p.gcd(&q);
    let (p, q) = if q < 0 { (-p / g, -q / g) } else { (p / g, q / g) };
    let summary = slope_records(knot)?;
    let mut total = BigInt::zero();
    for r in &summary.records {
        let a = BigInt::from(p - q * r.slope).abs();
        let b = BigInt::from(-p - q * r.slope).abs();
        total += &r.weight * (a - b);
    }
    Ok(BigRational::new(total, BigInt::from(4)))
}

/// Slope records of the family knot `[2x, 2y, -2(x+y), 2x]`, enumerated
/// against the family's own longitude expansion (no renormalization).
pub fn family_slope_summary(x: i64, y: i64) -> Result<SlopeSummary> {
    if x <= 0 || y == 0 || x + y == 0 {
        return Err(Error::OutOfRegion(format!(
            "(x, y) = ({x}, {y}) needs x > 0, y != 0, x + y != 0"
        )));
    }
    let longitude = Cf::inverse(vec![2 * x, 2 * y, -2 * (x + y), 2 * x])?;
    records_for_longitude(&longitude)
}

/// `S- - S+` for the family knot `[2x, 2y, -2(x+y), 2x]`, by full
/// enumeration on the family's own longitude expansion.
pub fn s_difference_family(x: i64, y: i64) -> Result<BigInt> {
    if y >= 0 || x + y <= 0 {
        return Err(Error::OutOfRegion(format!(
            "(x, y) = ({x}, {y}) needs x > 0, y < 0, x + y > 0"
        )));
    }
    let summary = family_slope_summary(x, y)?;
    Ok(&summary.s_minus - &summary.s_plus)
}

/// The closed form `2 (x + 2y) (4x^2 - 6x + 5)` the enumeration must match
/// on the region of `s_difference_family`.
pub fn s_difference_closed_form(x: i64, y: i64) -> BigInt {
    BigInt::from(2 * (x + 2 * y)) * BigInt::from(4 * x * x - 6 * x + 5)
}
