//! Arbitrary-precision rationals, the scalar field of the crate.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::ExactError;

/// An exact rational number.
///
/// Invariants (maintained by `BigRational`): the stored fraction is always
/// reduced, the denominator is always positive, and equality is structural.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    /// Builds `num/den`, reducing and normalizing the sign. Errors on `den == 0`.
    pub fn new(num: BigInt, den: BigInt) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Rat(BigRational::new(num, den)))
    }

    pub fn from_int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rat(BigRational::from_integer(n))
    }

    /// `p/q` from machine integers. Panics if `q == 0`; intended for literals.
    pub fn frac(p: i64, q: i64) -> Self {
        assert!(q != 0, "Rat::frac with zero denominator");
        Rat(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// True when the value is an integer (denominator 1).
    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Exact division with an explicit error on a zero divisor.
    pub fn checked_div(&self, rhs: &Rat) -> Result<Rat, ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rat(&self.0 / &rhs.0))
    }

    /// Multiplicative inverse. Panics on zero; use `checked_div` for fallible paths.
    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "Rat::recip of zero");
        Rat(self.0.recip())
    }

    /// Integer power with signed exponent. Panics on `0^e` with `e < 0`.
    pub fn pow_signed(&self, exp: i64) -> Rat {
        assert!(
            i32::try_from(exp).is_ok(),
            "exponent {exp} out of the supported range"
        );
        if exp < 0 {
            assert!(!self.is_zero(), "negative power of zero");
        }
        Rat(self.0.pow(exp as i32))
    }
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// `n!` as a rational.
pub fn factorial_rat(n: usize) -> Rat {
    Rat::from_bigint(factorial(n))
}

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Binomial coefficient as a rational.
pub fn binomial_rat(n: usize, k: usize) -> Rat {
    Rat::from_bigint(binomial(n, k))
}

impl fmt::Display for Rat {
    /// Canonical form: `p/q`, or just `p` when the denominator is 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rat {
    type Err = ExactError;

    /// Parses the `p/q` grammar (`q` optional). Whitespace is not accepted.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || ExactError::MalformedRational { input: s.to_owned() };
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let num: BigInt = num_str.parse().map_err(|_| malformed())?;
        let den: BigInt = match den_str {
            Some(d) => {
                // A sign belongs on the numerator in this grammar.
                if d.starts_with('+') || d.starts_with('-') {
                    return Err(malformed());
                }
                d.parse().map_err(|_| malformed())?
            }
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Rat(BigRational::new(num, den)))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        (&self).div(&rhs)
    }
}

impl Div<&Rat> for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        self.checked_div(rhs).expect("Rat division by zero")
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |a, b| a + b)
    }
}

impl Product for Rat {
    fn product<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::one(), |a, b| a * b)
    }
}

impl num_traits::Zero for Rat {
    fn zero() -> Self {
        Rat::zero()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
}

impl num_traits::One for Rat {
    fn one() -> Self {
        Rat::one()
    }
    fn is_one(&self) -> bool {
        Rat::is_one(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_reduces() {
        let r = Rat::frac(2, 4);
        assert_eq!(r.numer(), &BigInt::from(1));
        assert_eq!(r.denom(), &BigInt::from(2));
        let s = Rat::frac(3, -6);
        assert_eq!(s.numer(), &BigInt::from(-1));
        assert_eq!(s.denom(), &BigInt::from(2));
    }

    #[test]
    fn field_arithmetic() {
        assert_eq!(Rat::frac(1, 2) + Rat::frac(1, 3), Rat::frac(5, 6));
        assert_eq!(Rat::frac(3, 4) * Rat::zero(), Rat::zero());
        assert_eq!(Rat::frac(1, 2) - Rat::frac(1, 3), Rat::frac(1, 6));
        assert_eq!(
            Rat::one().checked_div(&Rat::zero()),
            Err(ExactError::DivisionByZero)
        );
        assert_eq!(Rat::frac(7, 3).checked_div(&Rat::frac(7, 3)), Ok(Rat::one()));
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0", "5", "-5", "1/2", "-7/3", "123456789123456789/2"] {
            let r: Rat = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        // Non-canonical input parses to canonical form.
        assert_eq!("2/4".parse::<Rat>().unwrap().to_string(), "1/2");
        assert_eq!("4/2".parse::<Rat>().unwrap().to_string(), "2");
    }

    #[test]
    fn parse_rejects_malformed() {
        for s in ["", "1/0", "1/-2", "a", "1/2/3", "1.5", "1 /2"] {
            assert!(s.parse::<Rat>().is_err(), "{s:?} should not parse");
        }
    }

    #[test]
    fn powers_and_combinatorics() {
        assert_eq!(Rat::from_int(2).pow_signed(-3), Rat::frac(1, 8));
        assert_eq!(Rat::from_int(3).pow_signed(0), Rat::one());
        assert_eq!(factorial(6), BigInt::from(720));
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(3, 5), BigInt::zero());
    }

    #[test]
    fn serde_uses_fraction_strings() {
        let r = Rat::frac(-3, 7);
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, "\"-3/7\"");
        let back: Rat = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
