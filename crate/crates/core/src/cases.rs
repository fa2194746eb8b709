//! Reference tables for the boundary-slope enumeration of the family
//! `[2x, 2y, -2(x+y), 2x]` on the region y < 0 < x + y.
//!
//! Twelve symbolic expansion templates cover the whole region; which of
//! them instantiate to valid expansions (all |terms| >= 2) depends on the
//! boundary lines y = -1 and x + y = 1, giving four parameter regimes with
//! 12 / 10 / 10 / 9 table lines.  Expansions, the pattern counts, the
//! slopes, and the weights are closed forms in (x, y); the enumeration in
//! `slopes` must reproduce them line for line.

use num_bigint::BigInt;

use crate::error::Error;
use crate::rational::Cf;
use crate::slopes::{family_slope_summary, SlopeSummary};
use crate::Result;

/// One expected table line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseRecord {
    /// Regime-local label, e.g. "3-5".
    pub id: String,
    pub expansion: Vec<i64>,
    pub n_plus: i64,
    pub n_minus: i64,
    pub slope: i64,
    /// Absent on zero-slope lines (the sums never read them).
    pub weight: Option<i64>,
}

/// Parameter regimes of the table region (x > 0 throughout).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// y < -1 and x + y > 1: all twelve lines.
    Interior,
    /// y < -1 and x + y = 1.
    SumOne,
    /// y = -1 and x + y > 1.
    YMinusOne,
    /// y = -1 and x + y = 1, i.e. (x, y) = (2, -1).
    Corner,
}

impl Regime {
    pub fn of(x: i64, y: i64) -> Result<Regime> {
        if x <= 0 || y >= 0 || x + y <= 0 {
            return Err(Error::OutOfRegion(format!(
                "(x, y) = ({x}, {y}) is outside y < 0 < x + y"
            )));
        }
        Ok(match (y == -1, x + y == 1) {
            (false, false) => Regime::Interior,
            (false, true) => Regime::SumOne,
            (true, false) => Regime::YMinusOne,
            (true, true) => Regime::Corner,
        })
    }

    pub fn number(self) -> u8 {
        match self {
            Regime::Interior => 1,
            Regime::SumOne => 2,
            Regime::YMinusOne => 3,
            Regime::Corner => 4,
        }
    }

    pub fn from_number(n: u8) -> Result<Regime> {
        Ok(match n {
            1 => Regime::Interior,
            2 => Regime::SumOne,
            3 => Regime::YMinusOne,
            4 => Regime::Corner,
            _ => return Err(Error::InvalidInput(format!("no table regime {n}"))),
        })
    }

    /// Smallest parameters strictly inside the regime.
    pub fn representative_params(self) -> (i64, i64) {
        match self {
            Regime::Interior => (4, -2),
            Regime::SumOne => (4, -3),
            Regime::YMinusOne => (3, -1),
            Regime::Corner => (2, -1),
        }
    }

    /// Which of the twelve templates survive in this regime.
    fn template_ids(self) -> &'static [usize] {
        match self {
            Regime::Interior => &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12],
            Regime::SumOne => &[1, 2, 4, 5, 6, 8, 9, 10, 11, 12],
            Regime::YMinusOne => &[1, 2, 3, 4, 5, 6, 9, 10, 11, 12],
            Regime::Corner => &[1, 2, 4, 5, 6, 9, 10, 11, 12],
        }
    }
}

fn rep(pair: (i64, i64), count: i64) -> Vec<i64> {
    assert!(count >= 0);
    let mut v = Vec::with_capacity(2 * count as usize);
    for _ in 0..count {
        v.push(pair.0);
        v.push(pair.1);
    }
    v
}

fn concat(parts: &[Vec<i64>]) -> Vec<i64> {
    parts.iter().flatten().copied().collect()
}

/// Instantiate template `t` (1..=12) at (x, y).
fn template(t: usize, x: i64, y: i64) -> (Vec<i64>, i64, i64, i64, Option<i64>) {
    let s = x + y;
    match t {
        1 => (
            concat(&[vec![2 * x - 1, 2], rep((-2, 2), -y - 1), vec![-2 * s, -2], rep((2, -2), x - 1)]),
            2 * x,
            -2 * y,
            4 * s,
            Some(2 * (x - 1) * (2 * s - 1)),
        ),
        2 => (
            concat(&[vec![2 * x - 1, 2], rep((-2, 2), -y - 1), vec![-2 * s - 1, 2 * x]]),
            1,
            1 - 2 * y,
            4 * y,
            Some(4 * (x - 1) * (2 * x - 1) * s),
        ),
        3 => (
            concat(&[vec![2 * x, 2 * y, 1 - 2 * s, -2], rep((2, -2), x - 1)]),
            2 * x + 1,
            1,
            4 * x,
            Some(-2 * (2 * x - 1) * (2 * y + 1) * (s - 1)),
        ),
        4 => (vec![2 * x, 2 * y, -2 * s, 2 * x], 2, 2, 0, None),
        5 => (
            concat(&[vec![2 * x, 2 * y - 1], rep((2, -2), s - 1), vec![2, 2 * x - 1]]),
            2 * s + 1,
            1,
            4 * s,
            Some(-4 * y * (x - 1) * (2 * x - 1)),
        ),
        6 => (
            concat(&[vec![2 * x, 2 * y - 1], rep((2, -2), s - 1), vec![3], rep((-2, 2), x - 1)]),
            4 * x + 2 * y - 1,
            0,
            2 * (4 * x + 2 * y - 1),
            Some(-4 * y * (2 * x - 1)),
        ),
        7 => (
            concat(&[
                rep((-2, 2), x - 1),
                vec![-2, 2 * y + 1, 1 - 2 * s, -2],
                rep((2, -2), x - 1),
            ]),
            2 * x,
            2 * x,
            0,
            None,
        ),
        8 => (
            concat(&[rep((-2, 2), x - 1), vec![-2, 2 * y + 1, -2 * s, 2 * x]]),
            1,
            2 * x + 1,
            -4 * x,
            Some(-2 * (2 * x - 1) * (y + 1) * (2 * s - 1)),
        ),
        9 => (
            concat(&[
                rep((-2, 2), x - 1),
                vec![-2, 2 * y],
                rep((2, -2), s - 1),
                vec![2, 2 * x - 1],
            ]),
            2 * s,
            2 * x,
            4 * y,
            Some(-2 * (x - 1) * (2 * y + 1)),
        ),
        10 => (
            concat(&[
                rep((-2, 2), x - 1),
                vec![-2, 2 * y],
                rep((2, -2), s - 1),
                vec![3],
                rep((-2, 2), x - 1),
            ]),
            2 * (2 * x + y - 1),
            2 * x - 1,
            2 * (2 * s - 1),
            Some(-2 * (2 * y + 1)),
        ),
        11 => (
            concat(&[
                rep((-2, 2), x - 1),
                vec![-3],
                rep((2, -2), -y - 1),
                vec![2 * s, 2],
                rep((-2, 2), x - 1),
            ]),
            2 * x - 1,
            2 * (x - y - 1),
            2 * (2 * y + 1),
            Some(2 * (2 * s - 1)),
        ),
        12 => (
            concat(&[
                rep((-2, 2), x - 1),
                vec![-3],
                rep((2, -2), -y - 1),
                vec![2 * s + 1, -2 * x],
            ]),
            0,
            2 * (x - y) - 1,
            -2 * (2 * (x - y) - 1),
            Some(4 * s * (2 * x - 1)),
        ),
        _ => unreachable!("template ids run 1..=12"),
    }
}

/// The expected table at (x, y), with regime-local line labels.
pub fn expected_records(x: i64, y: i64) -> Result<Vec<CaseRecord>> {
    let regime = Regime::of(x, y)?;
    let mut out = Vec::new();
    for (i, &t) in regime.template_ids().iter().enumerate() {
        let (expansion, n_plus, n_minus, slope, weight) = template(t, x, y);
        debug_assert!(
            expansion.iter().all(|a| a.abs() >= 2),
            "template {t} degenerates at ({x},{y})"
        );
        out.push(CaseRecord {
            id: format!("{}-{}", regime.number(), i + 1),
            expansion,
            n_plus,
            n_minus,
            slope,
            weight,
        });
    }
    Ok(out)
}

/// One expected line by its label, e.g. `expected_record("1-5", 4, -2)`.
pub fn expected_record(case: &str, x: i64, y: i64) -> Result<CaseRecord> {
    let (regime_no, line_no) = parse_case_id(case)?;
    let regime = Regime::of(x, y)?;
    if regime.number() != regime_no {
        return Err(Error::OutOfRegion(format!(
            "(x, y) = ({x}, {y}) lies in regime {}, not {}",
            regime.number(),
            regime_no
        )));
    }
    expected_records(x, y)?
        .into_iter()
        .nth(line_no - 1)
        .ok_or_else(|| Error::InvalidInput(format!("no line {case}")))
}

pub fn parse_case_id(case: &str) -> Result<(u8, usize)> {
    let (a, b) = case
        .split_once('-')
        .ok_or_else(|| Error::InvalidInput(format!("case id {case:?} is not like 1-5")))?;
    let regime: u8 = a
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad regime in {case:?}")))?;
    Regime::from_number(regime)?;
    let line: usize = b
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad line in {case:?}")))?;
    if line == 0 {
        return Err(Error::InvalidInput(format!("bad line in {case:?}")));
    }
    Ok((regime, line))
}

/// Compare the enumerated records at (x, y) against the expected table,
/// line for line.  Returns one human-readable mismatch per problem; empty
/// means exact agreement.
pub fn check_case_table(x: i64, y: i64) -> Result<Vec<String>> {
    let expected = expected_records(x, y)?;
    let summary: SlopeSummary = family_slope_summary(x, y)?;
    let mut problems = Vec::new();
    if expected.len() != summary.records.len() {
        problems.push(format!(
            "expected {} records, enumeration found {}",
            expected.len(),
            summary.records.len()
        ));
    }
    for exp in &expected {
        let Some(found) = summary
            .records
            .iter()
            .find(|r| r.expansion.terms() == exp.expansion.as_slice())
        else {
            problems.push(format!("line {}: expansion {:?} not enumerated", exp.id, exp.expansion));
            continue;
        };
        if (found.n_plus as i64, found.n_minus as i64) != (exp.n_plus, exp.n_minus) {
            problems.push(format!(
                "line {}: counts ({}, {}) != expected ({}, {})",
                exp.id, found.n_plus, found.n_minus, exp.n_plus, exp.n_minus
            ));
        }
        if found.slope != exp.slope {
            problems.push(format!(
                "line {}: slope {} != expected {}",
                exp.id, found.slope, exp.slope
            ));
        }
        if let Some(w) = exp.weight {
            if found.weight != BigInt::from(w) {
                problems.push(format!(
                    "line {}: weight {} != expected {}",
                    exp.id, found.weight, w
                ));
            }
        }
    }
    Ok(problems)
}

/// The template expansions all evaluate to the family fraction; used by
/// the verification command to print witnesses.
pub fn family_cf(x: i64, y: i64) -> Result<Cf> {
    Cf::inverse(vec![2 * x, 2 * y, -2 * (x + y), 2 * x])
}
