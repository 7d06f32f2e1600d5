//! Exact arithmetic in Q(√2): numbers `a + b·√2` with rational `a`, `b`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
}

impl Scalar {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Scalar { a, b }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    /// `p + q·√2` for integers.
    pub fn from_ints(p: i64, q: i64) -> Self {
        Scalar::new(
            BigRational::from_integer(p.into()),
            BigRational::from_integer(q.into()),
        )
    }

    pub fn sqrt2() -> Self {
        Scalar::from_ints(0, 1)
    }

    pub fn zero() -> Self {
        Scalar::from_int(0)
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    /// Rational part `a`.
    pub fn rational(&self) -> &BigRational {
        &self.a
    }

    /// Coefficient `b` of √2.
    pub fn sqrt2_coeff(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `a - b·√2`.
    pub fn conjugate(&self) -> Self {
        Scalar::new(self.a.clone(), -self.b.clone())
    }

    /// Field norm `a² - 2b²`, zero only for zero.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(2.into()) * &self.b * &self.b
    }

    /// Sign of `a + b·√2` decided exactly: when `a` and `b` disagree in sign
    /// the larger of `a²` and `2b²` wins.
    pub fn signum(&self) -> i8 {
        let sign = |r: &BigRational| -> i8 {
            if r.is_zero() {
                0
            } else if r.is_positive() {
                1
            } else {
                -1
            }
        };
        let (sa, sb) = (sign(&self.a), sign(&self.b));
        if sb == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        if sa == 0 {
            return sb;
        }
        let a2 = &self.a * &self.a;
        let b2 = BigRational::from_integer(2.into()) * &self.b * &self.b;
        if a2 > b2 {
            sa
        } else {
            sb
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Scalar::new(&self.a / &n, -(&self.b / &n)))
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
    }

    pub(crate) fn scale_rational(&self, r: &BigRational) -> Scalar {
        Scalar::new(&self.a * r, &self.b * r)
    }

    /// Division by √2: `(a + b√2)/√2 = b + (a/2)√2`.
    pub(crate) fn div_sqrt2(&self) -> Scalar {
        Scalar::new(self.b.clone(), &self.a / BigRational::from_integer(2.into()))
    }

    pub(crate) fn parts(&self) -> (&BigRational, &BigRational) {
        (&self.a, &self.b)
    }

    /// Form used by the ray file format: `p/q` or `p/q+r/s r2`.
    pub fn to_file_token(&self) -> String {
        if self.b.is_zero() {
            return self.a.to_string();
        }
        let op = if self.b.is_negative() { '-' } else { '+' };
        format!("{}{}{} r2", self.a, op, self.b.abs())
    }
}

impl fmt::Display for Scalar {
    /// Compact form: `0`, `-1/2`, `r2`, `-3r2`, `1+r2`, `1-1/2r2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let coeff = |b: &BigRational| -> String {
            if b.abs().is_one() {
                String::new()
            } else {
                b.abs().to_string()
            }
        };
        if self.a.is_zero() {
            let sign = if self.b.is_negative() { "-" } else { "" };
            return write!(f, "{sign}{}r2", coeff(&self.b));
        }
        let op = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{}{op}{}r2", self.a, coeff(&self.b))
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.strip_prefix('+').unwrap_or(s);
    let bad = || Error::parse(0, format!("invalid rational `{s}`"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::parse(0, "zero denominator"));
        }
        Ok(BigRational::new(p, q))
    } else {
        Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?))
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `p/q`, `p/q r2`, `p/q+r/s r2`, `r2`, `-r2`, `3r2`, `1-r2`.
    fn from_str(text: &str) -> Result<Scalar> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::parse(0, "empty coordinate"));
        }
        let Some(body) = s.strip_suffix("r2") else {
            return Ok(Scalar::new(parse_rational(&s)?, BigRational::zero()));
        };
        let split = body
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i)
            .last();
        let (a, b) = match split {
            Some(i) => (parse_rational(&body[..i])?, &body[i..]),
            None => (BigRational::zero(), body),
        };
        let b = match b {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other)?,
        };
        Ok(Scalar::new(a, b))
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    /// Order of the real numbers.
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let two = BigRational::from_integer(2.into());
        Scalar::new(
            &self.a * &rhs.a + two * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero.
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero in Q(sqrt 2)")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-self.a.clone(), -self.b.clone())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn parse_forms() {
        assert_eq!(s("3/4"), Scalar::new(BigRational::new(3.into(), 4.into()), BigRational::zero()));
        assert_eq!(s("r2"), Scalar::sqrt2());
        assert_eq!(s("-r2"), -Scalar::sqrt2());
        assert_eq!(s("1/2+3/4 r2"), Scalar::new(BigRational::new(1.into(), 2.into()), BigRational::new(3.into(), 4.into())));
        assert_eq!(s("1-r2"), Scalar::from_ints(1, -1));
        assert_eq!(s("-1-2 r2"), Scalar::from_ints(-1, -2));
        assert_eq!(s(" 2r2 "), Scalar::from_ints(0, 2));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
        assert!("".parse::<Scalar>().is_err());
    }

    #[test]
    fn display_and_file_tokens_round_trip() {
        for text in ["0", "-1/2", "r2", "-3r2", "1+r2", "1-1/2r2", "7/3+2r2"] {
            let x = s(text);
            assert_eq!(x.to_string(), text);
            assert_eq!(s(&x.to_file_token()), x);
        }
        assert_eq!(s("1-1/2r2").to_file_token(), "1-1/2 r2");
    }

    #[test]
    fn sign_is_exact() {
        assert_eq!(Scalar::from_ints(3, -2).signum(), 1); // 3 > 2.828
        assert_eq!(Scalar::from_ints(-3, 2).signum(), -1);
        assert_eq!(Scalar::from_ints(1, -1).signum(), -1);
        assert_eq!(Scalar::from_ints(-1, 1).signum(), 1);
        assert_eq!(Scalar::zero().signum(), 0);
        assert!(Scalar::from_ints(1, 1) > Scalar::from_ints(2, 0));
    }

    #[test]
    fn norm_is_product_with_conjugate() {
        let x = Scalar::from_ints(3, 5);
        let p = &x * &x.conjugate();
        assert!(p.sqrt2_coeff().is_zero());
        assert_eq!(p.rational(), &x.norm());
        assert_eq!(x.norm(), BigRational::from_integer((9 - 50).into()));
    }

    #[test]
    fn inverse_and_division() {
        let x = Scalar::from_ints(1, 1);
        assert_eq!(&x * &x.inv().unwrap(), Scalar::one());
        assert_eq!(&Scalar::sqrt2() * &Scalar::sqrt2(), Scalar::from_int(2));
        assert!(Scalar::zero().inv().is_none());
        assert_eq!(Scalar::from_int(2).div_sqrt2(), Scalar::sqrt2());
    }
}
