use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element `re + im·i` of the Gaussian rationals ℚ(i).
///
/// Both parts are arbitrary-precision rationals kept in lowest terms with a
/// positive denominator, so structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    re: BigRational,
    im: BigRational,
}

impl ExactScalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        ExactScalar { re, im }
    }

    pub fn zero() -> Self {
        ExactScalar::default()
    }

    pub fn one() -> Self {
        ExactScalar::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        ExactScalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(v: i64) -> Self {
        ExactScalar::new(BigRational::from_integer(BigInt::from(v)), BigRational::zero())
    }

    /// `num/den`; errors when `den` is zero.
    pub fn from_frac(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactScalar::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        ))
    }

    pub fn from_gaussian(re: i64, im: i64) -> Self {
        ExactScalar::new(
            BigRational::from_integer(BigInt::from(re)),
            BigRational::from_integer(BigInt::from(im)),
        )
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ExactScalar::new(self.re.clone(), -self.im.clone())
    }

    /// |z|² as a rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.im.is_zero() {
            return Ok(ExactScalar::new(self.re.recip(), BigRational::zero()));
        }
        let n = self.norm_sqr();
        Ok(ExactScalar::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn checked_div(&self, rhs: &ExactScalar) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale_rational(&self, r: &BigRational) -> Self {
        ExactScalar::new(&self.re * r, &self.im * r)
    }

    /// Least common multiple of the denominators of both parts.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.re.denom().lcm(self.im.denom())
    }

    /// Integer value if this is a real integer.
    pub fn to_i64(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        if self.im.is_zero() && self.re.is_integer() {
            self.re.to_integer().to_i64()
        } else {
            None
        }
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for ExactScalar {
    /// Canonical text form: `a/b+c/d*i`, dropping zero parts, `0` for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re_zero = self.re.is_zero();
        let im_zero = self.im.is_zero();
        if im_zero {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        let mag = self.im.abs();
        let body = if mag.is_one() {
            "i".to_string()
        } else {
            format!("{}*i", fmt_rational(&mag))
        };
        let neg = self.im.is_negative();
        if re_zero {
            write!(f, "{}{}", if neg { "-" } else { "" }, body)
        } else {
            write!(f, "{}{}{}", fmt_rational(&self.re), if neg { "-" } else { "+" }, body)
        }
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(text: &str, whole: &str) -> Result<BigRational> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let bad = |what: &str| Error::parse(format!("scalar {whole:?}"), what.to_string());
    if num.is_empty() || !num.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad("expected an unsigned integer numerator"));
    }
    let n: BigInt = num.parse().map_err(|_| bad("bad numerator"))?;
    let d: BigInt = match den {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad("expected an unsigned integer denominator"));
            }
            d.parse().map_err(|_| bad("bad denominator"))?
        }
    };
    if d.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

impl FromStr for ExactScalar {
    type Err = Error;

    /// Accepts sums of terms of the form `r`, `r*i`, `ri` and `i`, each with
    /// an optional sign, where `r` is `p` or `p/q`. Whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::parse(format!("scalar {s:?}"), "empty scalar"));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (idx, ch) in compact.char_indices() {
            if idx > start && (ch == '+' || ch == '-') {
                terms.push(&compact[start..idx]);
                start = idx;
            }
        }
        terms.push(&compact[start..]);

        let mut re = BigRational::zero();
        let mut im = BigRational::zero();
        for term in terms {
            let (negative, body) = match term.as_bytes().first() {
                Some(b'+') => (false, &term[1..]),
                Some(b'-') => (true, &term[1..]),
                _ => (false, term),
            };
            if body.is_empty() {
                return Err(Error::parse(format!("scalar {s:?}"), "dangling sign"));
            }
            let (value, imaginary) = if body == "i" {
                (BigRational::one(), true)
            } else if let Some(coef) = body.strip_suffix("*i") {
                (parse_rational(coef, s)?, true)
            } else if let Some(coef) = body.strip_suffix('i') {
                (parse_rational(coef, s)?, true)
            } else {
                (parse_rational(body, s)?, false)
            };
            let value = if negative { -value } else { value };
            if imaginary {
                im += value;
            } else {
                re += value;
            }
        }
        Ok(ExactScalar::new(re, im))
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for ExactScalar {
    fn from(v: i64) -> Self {
        ExactScalar::from_int(v)
    }
}

impl From<BigRational> for ExactScalar {
    fn from(v: BigRational) -> Self {
        ExactScalar::new(v, BigRational::zero())
    }
}

fn add_ref(a: &ExactScalar, b: &ExactScalar) -> ExactScalar {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return b.clone();
    }
    let im = match (a.im.is_zero(), b.im.is_zero()) {
        (true, true) => BigRational::zero(),
        (true, false) => b.im.clone(),
        (false, true) => a.im.clone(),
        (false, false) => &a.im + &b.im,
    };
    ExactScalar::new(&a.re + &b.re, im)
}

fn sub_ref(a: &ExactScalar, b: &ExactScalar) -> ExactScalar {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return -b;
    }
    let im = match (a.im.is_zero(), b.im.is_zero()) {
        (true, true) => BigRational::zero(),
        (true, false) => -&b.im,
        (false, true) => a.im.clone(),
        (false, false) => &a.im - &b.im,
    };
    ExactScalar::new(&a.re - &b.re, im)
}

fn mul_ref(a: &ExactScalar, b: &ExactScalar) -> ExactScalar {
    if a.is_zero() || b.is_zero() {
        return ExactScalar::zero();
    }
    match (a.im.is_zero(), b.im.is_zero()) {
        (true, true) => ExactScalar::new(&a.re * &b.re, BigRational::zero()),
        (true, false) => ExactScalar::new(&a.re * &b.re, &a.re * &b.im),
        (false, true) => ExactScalar::new(&a.re * &b.re, &a.im * &b.re),
        (false, false) => ExactScalar::new(&a.re * &b.re - &a.im * &b.im, &a.re * &b.im + &a.im * &b.re),
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $f:ident) => {
        impl $tr<&ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                $f(self, rhs)
            }
        }
        impl $tr<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                $f(&self, &rhs)
            }
        }
        impl $tr<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                $f(&self, rhs)
            }
        }
        impl $tr<ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                $f(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar::new(-self.re, -self.im)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar::new(-self.re.clone(), -self.im.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> ExactScalar {
        text.parse().unwrap()
    }

    #[test]
    fn modulus_identity() {
        assert_eq!(s("1/2+i") * s("1/2-i"), s("5/4"));
    }

    #[test]
    fn inverse_of_i() {
        assert_eq!(ExactScalar::i().inv().unwrap(), s("-i"));
    }

    #[test]
    fn componentwise_sum() {
        assert_eq!(s("2/3+1/3*i") + s("1/3+2/3*i"), s("1+i"));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(s("3").checked_div(&ExactScalar::zero()), Err(Error::DivisionByZero));
        assert_eq!(ExactScalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn canonical_text() {
        for (input, out) in [
            ("3", "3"),
            ("-1/2*i", "-1/2*i"),
            ("0", "0"),
            ("2/4", "1/2"),
            ("1*i", "i"),
            ("-3/6 + 4/2*i", "-1/2+2*i"),
            ("1 - i", "1-i"),
            ("2i+1", "1+2*i"),
        ] {
            assert_eq!(s(input).to_string(), out, "{input}");
        }
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "1/0", "abc", "1//2", "+", "1+*i", "1.5"] {
            assert!(bad.parse::<ExactScalar>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn denominators_positive_lowest_terms() {
        assert!("3/-6".parse::<ExactScalar>().is_err());
        let w = ExactScalar::from_frac(3, -6).unwrap();
        assert_eq!(w.re().denom(), &BigInt::from(2));
        assert_eq!(w.re().numer(), &BigInt::from(-1));
    }
}
