use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ExactError;

/// A rational number reduced modulo 1, stored canonically as `num/den` with
/// `0 <= num < den` and `gcd(num, den) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational01 {
    num: i64,
    den: i64,
}

impl Rational01 {
    pub const ZERO: Rational01 = Rational01 { num: 0, den: 1 };

    /// Builds `num/den mod 1`. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        Self::from_i128(num as i128, den as i128)
    }

    pub fn from_i128(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let r = num.rem_euclid(den);
        let g = r.gcd(&den);
        Rational01 {
            num: (r / g) as i64,
            den: (den / g) as i64,
        }
    }

    pub fn zero() -> Self {
        Self::ZERO
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Multiplies the underlying value by an integer, reducing mod 1.
    pub fn scale(self, k: i64) -> Self {
        Self::from_i128(self.num as i128 * k as i128, self.den as i128)
    }

    /// The phase `e^{2 pi i r}` rendered as a short label when it is a fourth root of unity.
    pub fn phase_label(&self) -> String {
        match (self.num, self.den) {
            (0, _) => "1".to_string(),
            (1, 2) => "-1".to_string(),
            (1, 4) => "i".to_string(),
            (3, 4) => "-i".to_string(),
            (n, d) => format!("exp(2πi·{n}/{d})"),
        }
    }
}

impl Default for Rational01 {
    fn default() -> Self {
        Self::ZERO
    }
}

impl fmt::Display for Rational01 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Rational01 {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ExactError::Parse(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: i64 = n.parse().map_err(|_| bad())?;
        let d: i64 = d.parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        Ok(Rational01::new(n, d))
    }
}

impl Serialize for Rational01 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational01 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for Rational01 {
    type Output = Rational01;
    fn add(self, o: Rational01) -> Rational01 {
        let l = (self.den as i128).lcm(&(o.den as i128));
        let n = self.num as i128 * (l / self.den as i128) + o.num as i128 * (l / o.den as i128);
        Rational01::from_i128(n, l)
    }
}

impl AddAssign for Rational01 {
    fn add_assign(&mut self, o: Rational01) {
        *self = *self + o;
    }
}

impl Neg for Rational01 {
    type Output = Rational01;
    fn neg(self) -> Rational01 {
        Rational01::new(-self.num, self.den)
    }
}

impl Sub for Rational01 {
    type Output = Rational01;
    fn sub(self, o: Rational01) -> Rational01 {
        self + (-o)
    }
}

impl Mul<i64> for Rational01 {
    type Output = Rational01;
    fn mul(self, k: i64) -> Rational01 {
        self.scale(k)
    }
}

impl std::iter::Sum for Rational01 {
    fn sum<I: Iterator<Item = Rational01>>(iter: I) -> Self {
        iter.fold(Rational01::ZERO, |a, b| a + b)
    }
}
