//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// p is even: the fraction describes a two-bridge link, not a knot.
    #[error("not a knot: {0}")]
    NotAKnot(String),

    /// Numerator and denominator are not coprime, or the fraction is
    /// otherwise outside the two-bridge range.
    #[error("invalid fraction: {0}")]
    InvalidFraction(String),

    /// A continued-fraction tail evaluated to zero where a reciprocal
    /// is required.
    #[error("division by zero while evaluating continued fraction")]
    DivisionByZero,

    /// A continued fraction given to the plat builder has a term that is
    /// not strictly positive after rewriting.
    #[error("invalid continued fraction: {0}")]
    InvalidCf(String),

    /// An operation would need exponents off the half-integer grid.
    #[error("exponent grid violation: {0}")]
    GridViolation(String),

    /// Division by the zero polynomial.
    #[error("zero divisor")]
    ZeroDivisor,

    /// A diagram operation that needs a single component was given a link.
    #[error("diagram has {0} components, expected 1")]
    MultiComponent(usize),

    /// The Alexander polynomial is constant; the breadth-based genus is
    /// undefined.
    #[error("degenerate Alexander polynomial")]
    DegenerateAlexander,

    /// Surgery slope with zero denominator.
    #[error("invalid surgery slope: {0}")]
    InvalidSlope(String),

    /// Enumeration target outside its domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Family parameters outside the region an operation is defined on.
    #[error("parameters out of region: {0}")]
    OutOfRegion(String),

    /// The finite-type gate was invoked with a2 != 0 or a6 != 0.
    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),

    /// A torus-link operation was given an odd twist count.
    #[error("not a link: {0}")]
    NotALink(String),

    /// Catalog CSV could not be parsed.
    #[error("catalog parse error at line {line}: {msg}")]
    ParseError { line: usize, msg: String },

    /// Catalog entry failed a recomputation check.
    #[error("catalog validation failed for {name}: {msg}")]
    ValidationError { name: String, msg: String },
}
