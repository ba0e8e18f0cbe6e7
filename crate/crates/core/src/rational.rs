//! Exact rational numbers.
//!
//! Every utility, probability and LP coefficient in the engine is a
//! [`Rational`]. Values are always kept in lowest terms with a positive
//! denominator, and there is no floating point anywhere on the
//! computation path. The textual form is `p/q` (or just `p` for
//! integers); decimal literals such as `22.5` are accepted on input and
//! converted exactly.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(pub String);

/// An exact rational number in lowest terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn floor(&self) -> Self {
        Rational(self.0.floor())
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    /// `self^exp` for a non-negative integer exponent.
    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Rational::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Denominator as a `u64`, when it fits.
    pub fn denom_u64(&self) -> Option<u64> {
        self.0.denom().to_u64()
    }

    /// Approximate value, for display-only purposes such as progress traces.
    pub fn to_f64_lossy(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// The rational closest to `self` among those with denominator at most
    /// `max_denom`. Ties go to the smaller candidate.
    pub fn nearest_with_denominator(&self, max_denom: u64) -> Rational {
        assert!(max_denom >= 1);
        let floor = self.floor();
        let frac = self - &floor;
        // Best approximations of frac in [0,1] via a Farey search (Stern-Brocot).
        let (mut lo_n, mut lo_d) = (BigInt::zero(), BigInt::one());
        let (mut hi_n, mut hi_d) = (BigInt::one(), BigInt::one());
        let target = frac.0.clone();
        let max_d = BigInt::from(max_denom);
        loop {
            let med_n = &lo_n + &hi_n;
            let med_d = &lo_d + &hi_d;
            if med_d > max_d {
                break;
            }
            let med = BigRational::new(med_n.clone(), med_d.clone());
            if med == target {
                return &floor + &Rational(med);
            }
            if med < target {
                lo_n = med_n;
                lo_d = med_d;
            } else {
                hi_n = med_n;
                hi_d = med_d;
            }
        }
        let lo = BigRational::new(lo_n, lo_d);
        let hi = BigRational::new(hi_n, hi_d);
        let best = if (&target - &lo) <= (&hi - &target) { lo } else { hi };
        &floor + &Rational(best)
    }

    pub fn min_of<'a, I: IntoIterator<Item = &'a Rational>>(it: I) -> Option<Rational> {
        it.into_iter().min().cloned()
    }

    pub fn max_of<'a, I: IntoIterator<Item = &'a Rational>>(it: I) -> Option<Rational> {
        it.into_iter().max().cloned()
    }
}

/// Least common multiple of the denominators.
pub fn denominator_lcm<'a, I: IntoIterator<Item = &'a Rational>>(it: I) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<i32> for Rational {
    fn from(n: i32) -> Self {
        Rational::from_integer(n as i64)
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let t = s.trim();
        if t.is_empty() {
            return Err(err());
        }
        if let Some((n, d)) = t.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            return Ok(Rational(BigRational::new(n, d)));
        }
        if let Some((int, frac)) = t.split_once('.') {
            let negative = int.starts_with('-');
            let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            let n: BigInt = digits.parse().map_err(|_| err())?;
            let d = num_traits::pow(BigInt::from(10), frac.len());
            let r = BigRational::new(n, d);
            return Ok(Rational(if negative { -r } else { r }));
        }
        let n: BigInt = t.parse().map_err(|_| err())?;
        Ok(Rational(BigRational::from_integer(n)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            Int(i64),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Repr::Int(n) => Ok(Rational::from_integer(n)),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl AddAssign<Rational> for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        self.0 += rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// Shorthand constructor used throughout tests and fixtures.
pub fn q(numer: i64, denom: i64) -> Rational {
    Rational::new(numer, denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_sign() {
        let r = Rational::new(6, -8);
        assert_eq!(r.to_string(), "-3/4");
        assert_eq!(r.denom(), &BigInt::from(4));
        assert_eq!(Rational::new(10, 5).to_string(), "2");
    }

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!("4/9".parse::<Rational>().unwrap(), q(4, 9));
        assert_eq!("-3".parse::<Rational>().unwrap(), q(-3, 1));
        assert_eq!("22.5".parse::<Rational>().unwrap(), q(45, 2));
        assert_eq!("-0.25".parse::<Rational>().unwrap(), q(-1, 4));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
        assert!("1.".parse::<Rational>().is_err());
    }

    #[test]
    fn serde_uses_strings() {
        let s = serde_json::to_string(&q(2, 3)).unwrap();
        assert_eq!(s, "\"2/3\"");
        let back: Rational = serde_json::from_str("\"2/3\"").unwrap();
        assert_eq!(back, q(2, 3));
        let int: Rational = serde_json::from_str("7").unwrap();
        assert_eq!(int, q(7, 1));
    }

    #[test]
    fn nearest_with_bounded_denominator() {
        assert_eq!(q(333, 1000).nearest_with_denominator(12), q(1, 3));
        assert_eq!(q(995, 1000).nearest_with_denominator(12), q(1, 1));
        assert_eq!(q(-1, 7).nearest_with_denominator(7), q(-1, 7));
        assert_eq!(q(7, 2).nearest_with_denominator(1), q(3, 1));
        assert_eq!(q(1, 2).nearest_with_denominator(100), q(1, 2));
    }
}
