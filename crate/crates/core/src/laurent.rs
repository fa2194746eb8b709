//! Exact Laurent-polynomial arithmetic on a half-integer exponent grid.
//!
//! Exponents are stored as doubled integers, so the key `1` is `t^(1/2)`
//! and the key `2` is `t`.  One type serves every formal variable in the
//! crate (t, z, A); the variable is chosen by context.  Coefficients are
//! arbitrary-precision integers and the zero coefficient is never stored.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::Result;

/// Sparse Laurent polynomial over the integers, exponents in (1/2)Z.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    /// doubled exponent -> coefficient, no zeros stored
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial_half(0, 1)
    }

    /// `c * t^(half/2)` where `half` is the doubled exponent.
    pub fn monomial_half(half: i64, c: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if c != 0 {
            coeffs.insert(half, BigInt::from(c));
        }
        LaurentPoly { coeffs }
    }

    /// `c * t^k` on the integer grid.
    pub fn monomial(k: i64, c: i64) -> Self {
        Self::monomial_half(2 * k, c)
    }

    /// Build from `(integer exponent, coefficient)` pairs.
    pub fn from_terms(terms: &[(i64, i64)]) -> Self {
        let mut p = LaurentPoly::zero();
        for &(k, c) in terms {
            p.add_term(2 * k, BigInt::from(c));
        }
        p
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, c)
    }

    pub fn add_term(&mut self, half: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(half).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&half);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient at doubled exponent `half`.
    pub fn coeff_half(&self, half: i64) -> BigInt {
        self.coeffs.get(&half).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Coefficient at integer exponent `k`.
    pub fn coeff(&self, k: i64) -> BigInt {
        self.coeff_half(2 * k)
    }

    /// Iterate `(doubled exponent, coefficient)` in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn min_half_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_half_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Exponent breadth in integer units, when on the integer grid.
    pub fn breadth(&self) -> Option<i64> {
        Some((self.max_half_exp()? - self.min_half_exp()?) / 2)
    }

    /// Coefficient of the highest exponent.
    pub fn leading_coeff(&self) -> BigInt {
        self.max_half_exp().map(|k| self.coeff_half(k)).unwrap_or_else(BigInt::zero)
    }

    /// True when every exponent is an integer.
    pub fn on_integer_grid(&self) -> bool {
        self.coeffs.keys().all(|k| k % 2 == 0)
    }

    /// Sum of coefficients, i.e. the formal value at t = 1.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Exact value at t = -1 (grid must be integer).
    pub fn eval_minus_one(&self) -> Result<BigInt> {
        let mut acc = BigInt::zero();
        for (half, c) in self.iter() {
            if half % 2 != 0 {
                return Err(Error::GridViolation(
                    "evaluation at -1 needs the integer grid".into(),
                ));
            }
            if (half / 2) % 2 == 0 {
                acc += c;
            } else {
                acc -= c;
            }
        }
        Ok(acc)
    }

    /// Substitute t -> t^k for a nonzero integer k.
    pub fn substitute_power(&self, k: i64) -> Result<LaurentPoly> {
        if k == 0 {
            return Err(Error::GridViolation("substitute_power(0)".into()));
        }
        self.map_exponents(k, 1)
    }

    /// t -> 1/t.
    pub fn mirror_var(&self) -> LaurentPoly {
        self.map_exponents(-1, 1).expect("negation keeps the grid")
    }

    /// Scale every exponent by num/den, failing if a scaled exponent leaves
    /// the half-integer grid.
    pub(crate) fn map_exponents(&self, num: i64, den: i64) -> Result<LaurentPoly> {
        assert!(den != 0);
        let mut coeffs = BTreeMap::new();
        for (half, c) in self.iter() {
            let scaled = half.checked_mul(num).expect("exponent overflow");
            if scaled % den != 0 {
                return Err(Error::GridViolation(format!(
                    "exponent {half}/2 scaled by {num}/{den} leaves the half-integer grid"
                )));
            }
            coeffs.insert(scaled / den, c.clone());
        }
        Ok(LaurentPoly { coeffs })
    }

    /// Multiply by `c * t^(half/2)`.
    pub fn mul_monomial(&self, half: i64, c: &BigInt) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        let coeffs = self.iter().map(|(k, v)| (k + half, v * c)).collect();
        LaurentPoly { coeffs }
    }

    /// Integer power, n >= 0.
    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient in the Laurent ring, when the divisor divides exactly.
    ///
    /// Returns `Ok(None)` when `den` does not divide `self` (including a
    /// rational but non-integral quotient).
    pub fn divides_exactly(&self, den: &LaurentPoly) -> Result<Option<LaurentPoly>> {
        if den.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if self.is_zero() {
            return Ok(Some(LaurentPoly::zero()));
        }
        // Shift both to honest polynomials and long-divide over Q.
        let num_shift = self.min_half_exp().unwrap();
        let den_shift = den.min_half_exp().unwrap();
        let mut rem: BTreeMap<i64, BigRational> = self
            .iter()
            .map(|(k, c)| (k - num_shift, BigRational::from(c.clone())))
            .collect();
        let den_poly: BTreeMap<i64, BigRational> = den
            .iter()
            .map(|(k, c)| (k - den_shift, BigRational::from(c.clone())))
            .collect();
        let den_deg = *den_poly.keys().next_back().unwrap();
        let den_lead = den_poly[&den_deg].clone();
        let mut quot: BTreeMap<i64, BigRational> = BTreeMap::new();
        while let Some((&deg, _)) = rem.iter().next_back() {
            if deg < den_deg {
                return Ok(None);
            }
            let factor = rem[&deg].clone() / den_lead.clone();
            let shift = deg - den_deg;
            quot.insert(shift, factor.clone());
            for (k, c) in &den_poly {
                let key = k + shift;
                let entry = rem.entry(key).or_insert_with(BigRational::zero);
                *entry -= &factor * c;
                if entry.is_zero() {
                    rem.remove(&key);
                }
            }
        }
        // Quotient must be integral to live in the same ring.
        let mut out = LaurentPoly::zero();
        for (k, c) in quot {
            if !c.denom().is_one() {
                return Ok(None);
            }
            out.add_term(k + num_shift - den_shift, c.numer().clone());
        }
        Ok(Some(out))
    }

    /// Taylor coefficients of `P(e^h)` about h = 0 up to `order`.
    ///
    /// The coefficient of `h^m` is `sum_k c_k k^m / m!`.  Requires the
    /// integer grid.
    pub fn exp_series(&self, order: usize) -> Result<RationalSeries> {
        if !self.on_integer_grid() {
            return Err(Error::GridViolation(
                "e^h substitution needs integer exponents".into(),
            ));
        }
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut factorial = BigInt::one();
        for m in 0..=order {
            if m > 0 {
                factorial *= BigInt::from(m as i64);
            }
            let mut sum = BigInt::zero();
            for (half, c) in self.iter() {
                let k = BigInt::from(half / 2);
                sum += c * k.pow(m as u32);
            }
            coeffs.push(BigRational::new(sum, factorial.clone()));
        }
        Ok(RationalSeries { coeffs })
    }

    /// Render with the given variable name, lowest exponent first.
    pub fn display(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (half, c)) in self.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit_coeff = mag.is_one() && half != 0;
            if !unit_coeff {
                out.push_str(&mag.to_string());
            }
            if half != 0 {
                out.push_str(var);
                if half != 2 {
                    if half % 2 == 0 {
                        out.push_str(&format!("^{}", half / 2));
                    } else {
                        out.push_str(&format!("^({half}/2)"));
                    }
                }
            }
        }
        out
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in rhs.iter() {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in rhs.iter() {
            out.add_term(k, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let coeffs = self.iter().map(|(k, c)| (k, -c.clone())).collect();
        LaurentPoly { coeffs }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ka, ca) in self.iter() {
            for (kb, cb) in rhs.iter() {
                out.add_term(ka + kb, ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Truncated power series with exact rational coefficients of h^0..h^order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeries {
    coeffs: Vec<BigRational>,
}

impl RationalSeries {
    pub fn coeff(&self, m: usize) -> BigRational {
        self.coeffs.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Product truncated to the shorter order.
    pub fn mul_truncated(&self, rhs: &RationalSeries) -> RationalSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for i in 0..=order {
            for j in 0..=(order - i) {
                coeffs[i + j] += self.coeff(i) * rhs.coeff(j);
            }
        }
        RationalSeries { coeffs }
    }
}
