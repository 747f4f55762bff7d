use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::poly_gcd;
use super::{Field, FieldTag, Polynomial, Rational};
use crate::error::{Error, Result};

/// Element of Q(t) kept in canonical form: numerator and denominator coprime,
/// denominator monic. Equality of values is therefore equality of
/// representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Polynomial,
    den: Polynomial,
}

impl RatFunc {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = poly_gcd(&num, &den).expect("denominator is nonzero");
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading().expect("nonzero").clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RatFunc {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    /// `c * t^k` for any integer `k`.
    pub fn monomial(c: Rational, k: i64) -> Self {
        if k >= 0 {
            Self::from_poly(Polynomial::monomial(c, k as usize))
        } else if c.is_zero() {
            Self::zero()
        } else {
            RatFunc {
                num: Polynomial::constant(c),
                den: Polynomial::monomial(Rational::one(), (-k) as usize),
            }
        }
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    /// Some rational when the function is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0))
            .then(|| self.num.coeff(0))
    }

    /// Order at `t = 0`: positive for zeros, negative for poles, `None` for 0.
    pub fn valuation(&self) -> Option<i64> {
        let vn = self.num.valuation()? as i64;
        let vd = self.den.valuation().expect("nonzero denominator") as i64;
        Some(vn - vd)
    }

    /// Value at `t = 0`, defined when there is no pole there.
    pub fn limit_at_zero(&self) -> Result<Rational> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::LimitDiverges { at: None });
        }
        Ok(self.num.coeff(0) / d0)
    }

    /// Evaluates at a rational point, failing at poles.
    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x) / d)
    }

    /// Substitutes `t -> t^m`.
    pub fn substitute_power(&self, m: usize) -> Self {
        Self::normalized(self.num.substitute_power(m), self.den.substitute_power(m))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix('(') {
            if let Some(close) = rest.find(')') {
                let num = Polynomial::parse(&rest[..close])?;
                let tail = rest[close + 1..].trim();
                if tail.is_empty() {
                    return Ok(Self::from_poly(num));
                }
                let den = tail
                    .strip_prefix('/')
                    .map(str::trim)
                    .and_then(|d| d.strip_prefix('('))
                    .and_then(|d| d.strip_suffix(')'))
                    .ok_or_else(|| Error::Parse(format!("invalid rational function `{s}`")))?;
                return Self::new(num, Polynomial::parse(den)?);
            }
        }
        // A bare polynomial may itself contain `p/q` coefficients.
        Ok(Self::from_poly(Polynomial::parse(s)?))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Zero for RatFunc {
    fn zero() -> Self {
        RatFunc {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        Self::from_poly(Polynomial::one())
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::normalized(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        RatFunc::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Field for RatFunc {
    const TAG: FieldTag = FieldTag::Qt;

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(RatFunc::normalized(self.den.clone(), self.num.clone()))
    }

    fn from_rational(q: &Rational) -> Self {
        RatFunc::constant(q.clone())
    }

    fn parse_scalar(s: &str) -> Result<Self> {
        RatFunc::parse(s)
    }
}

/// Field arithmetic with an explicit operator, as exposed on the command
/// line and in tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn ratfunc_arith(a: &RatFunc, b: &RatFunc, op: ArithOp) -> Result<RatFunc> {
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Sub => Ok(a - b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div => a.checked_div(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn r(s: &str) -> RatFunc {
        RatFunc::parse(s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(
            ratfunc_arith(&r("(t)/(t+1)"), &r("(1)/(t+1)"), ArithOp::Add).unwrap(),
            RatFunc::one()
        );
        assert_eq!(r("(t^2-1)/(t-1)"), r("t+1"));
        assert_eq!(
            ratfunc_arith(&r("(1)/(t)"), &r("t"), ArithOp::Mul).unwrap(),
            RatFunc::one()
        );
        assert_eq!(
            ratfunc_arith(&r("t"), &RatFunc::zero(), ArithOp::Div),
            Err(Error::DivisionByZero)
        );
        assert_eq!(
            ratfunc_arith(&r("t"), &r("t^2"), ArithOp::Div).unwrap(),
            r("(1)/(t)")
        );
        assert_eq!(
            ratfunc_arith(&r("t"), &r("t"), ArithOp::Sub).unwrap(),
            RatFunc::zero()
        );
    }

    #[test]
    fn denominator_is_monic_and_coprime() {
        let f = r("(2*t)/(4*t^2+4*t)");
        assert_eq!(f.den(), &Polynomial::parse("t+1").unwrap());
        assert_eq!(f.num(), &Polynomial::parse("1/2").unwrap());
        assert!(RatFunc::parse("(1)/(0)").is_err());
    }

    #[test]
    fn limits_at_zero() {
        assert_eq!(r("(t^2+3*t)/(t+1)").limit_at_zero().unwrap(), rat(0, 1));
        assert_eq!(r("5/7").limit_at_zero().unwrap(), rat(5, 7));
        assert_eq!(
            r("(1)/(t)").limit_at_zero(),
            Err(Error::LimitDiverges { at: None })
        );
        // the pole cancels after normalization
        assert_eq!(r("(t^2+t)/(t)").limit_at_zero().unwrap(), rat(1, 1));
    }

    #[test]
    fn display_round_trips() {
        for s in ["(t^2+3*t)/(t+1)", "1/2*t-3", "(-1)/(t^2)", "0", "-2/3"] {
            let f = r(s);
            assert_eq!(r(&f.to_string()), f, "{s}");
        }
        assert_eq!(RatFunc::monomial(rat(2, 1), -3).to_string(), "(2)/(t^3)");
    }

    #[test]
    fn valuation_and_constants() {
        assert_eq!(RatFunc::monomial(rat(3, 1), -2).valuation(), Some(-2));
        assert_eq!(r("(t^3+t)/(t-1)").valuation(), Some(1));
        assert_eq!(RatFunc::zero().valuation(), None);
        assert_eq!(r("(2*t+2)/(t+1)").as_constant(), Some(rat(2, 1)));
        assert_eq!(r("t").as_constant(), None);
        assert_eq!(r("(1)/(t+1)").substitute_power(2), r("(1)/(t^2+1)"));
    }
}
