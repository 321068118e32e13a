use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An element of ½ℤ, stored as twice its value.
///
/// Grading shifts by one topological degree move the q-exponent by ½, so
/// q-exponents (and, after link normalization, a- and t-exponents) live here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub const fn from_int(v: i64) -> Self {
        HalfInt(2 * v)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// The integer value, if there is one.
    pub fn to_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }

    /// Largest integer not above the value.
    pub fn floor(self) -> i64 {
        self.0.div_euclid(2)
    }

    pub fn scale(self, k: i64) -> Self {
        HalfInt(self.0 * k)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl AddAssign for HalfInt {
    fn add_assign(&mut self, rhs: HalfInt) {
        self.0 += rhs.0;
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a half-integer: {0:?}")]
pub struct ParseHalfIntError(pub String);

impl FromStr for HalfInt {
    type Err = ParseHalfIntError;

    /// Accepts `3`, `-1/2`, `3/2`, `1.5`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let err = || ParseHalfIntError(s.to_string());
        if let Some((num, den)) = t.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| err())?;
            match den.trim() {
                "1" => Ok(HalfInt(2 * num)),
                "2" => Ok(HalfInt(num)),
                _ => Err(err()),
            }
        } else if let Ok(v) = t.parse::<i64>() {
            Ok(HalfInt(2 * v))
        } else {
            let v: f64 = t.parse().map_err(|_| err())?;
            HalfInt::try_from_f64(v).ok_or_else(err)
        }
    }
}

impl HalfInt {
    fn try_from_f64(v: f64) -> Option<Self> {
        let twice = v * 2.0;
        if twice.is_finite() && twice.fract() == 0.0 && twice.abs() < 9.0e15 {
            Some(HalfInt(twice as i64))
        } else {
            None
        }
    }
}

// JSON carries half-integers as plain numbers: integers stay integers and
// odd halves become `x.5`, which f64 represents exactly.
impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.is_integer() {
            serializer.serialize_i64(self.0 / 2)
        } else {
            serializer.serialize_f64(self.0 as f64 / 2.0)
        }
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct HalfVisitor;
        impl Visitor<'_> for HalfVisitor {
            type Value = HalfInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or half-integer")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<HalfInt, E> {
                Ok(HalfInt::from_int(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<HalfInt, E> {
                i64::try_from(v)
                    .map(HalfInt::from_int)
                    .map_err(|_| E::custom("exponent out of range"))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<HalfInt, E> {
                HalfInt::try_from_f64(v)
                    .ok_or_else(|| E::custom(format!("{v} is not a half-integer")))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<HalfInt, E> {
                v.parse().map_err(E::custom)
            }
        }
        deserializer.deserialize_any(HalfVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse() {
        for t in [-5, -1, 0, 1, 2, 7] {
            let h = HalfInt::from_twice(t);
            assert_eq!(h.to_string().parse::<HalfInt>().unwrap(), h);
        }
        assert_eq!("1.5".parse::<HalfInt>().unwrap(), HalfInt::from_twice(3));
        assert!("1/3".parse::<HalfInt>().is_err());
        assert!("0.25".parse::<HalfInt>().is_err());
    }

    #[test]
    fn json_numbers() {
        let v = vec![HalfInt::from_twice(3), HalfInt::from_int(-2)];
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, "[1.5,-2]");
        let back: Vec<HalfInt> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
