//! Exact scalars: rationals, univariate polynomials over Q and rational
//! functions in `t`.
//!
//! Every scalar type used by the linear-algebra and algebra layers implements
//! [`Field`], which is the num-traits arithmetic surface plus exact inversion
//! and the shared text syntax.

mod poly;
mod ratfunc;

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use poly::poly_gcd;
pub use poly::Polynomial;
pub use ratfunc::{ratfunc_arith, ArithOp, RatFunc};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Which ground field a scalar type lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum FieldTag {
    #[serde(rename = "Q")]
    Q,
    #[serde(rename = "Qt")]
    Qt,
}

impl Display for FieldTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FieldTag::Q => "Q",
            FieldTag::Qt => "Qt",
        })
    }
}

/// An exact field usable as the scalar type of matrices and structure tensors.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
    + 'static
{
    const TAG: FieldTag;

    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_rational(q: &Rational) -> Self;

    /// Parses the shared scalar text syntax (`p`, `p/q`, or a rational
    /// function of `t` for [`RatFunc`]).
    fn parse_scalar(s: &str) -> Result<Self>;

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        rhs.inv()
            .map(|r| self.clone() * r)
            .ok_or(Error::DivisionByZero)
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }
}

impl Field for Rational {
    const TAG: FieldTag = FieldTag::Q;

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn parse_scalar(s: &str) -> Result<Self> {
        parse_rational(s)
    }
}

/// Builds `p/q` from machine integers.
///
/// Panics when `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `p` or `p/q`, with an optional sign on `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p = p.strip_prefix('+').unwrap_or(p);
    if p.is_empty() || q.is_empty() || q.starts_with(['-', '+']) {
        return Err(bad());
    }
    let num: BigInt = p.parse().map_err(|_| bad())?;
    let den: BigInt = q.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

/// Formats a rational in the `p` / `p/q` syntax accepted by [`parse_rational`].
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub(crate) fn is_negative(q: &Rational) -> bool {
    q.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("3").unwrap(), rat(3, 1));
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(" +1/3 ").unwrap(), rat(1, 3));
        assert_eq!(parse_rational("0/5").unwrap(), Rational::zero());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn rational_invariants_hold_after_construction() {
        let q = rat(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(format_rational(&q), "-3/2");
        assert_eq!(format_rational(&rat(0, 7)), "0");
    }

    #[test]
    fn checked_div_rejects_zero() {
        assert_eq!(
            rat(1, 2).checked_div(&Rational::zero()),
            Err(Error::DivisionByZero)
        );
        assert_eq!(rat(1, 2).checked_div(&rat(1, 4)).unwrap(), rat(2, 1));
    }
}
