//! Exact non-negative rational costs.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CostError;

/// A non-negative rational number kept in canonical reduced form.
///
/// Action costs, plan costs and disruption weights all use this type so that
/// optimality checks and cost decompositions compare with zero tolerance.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Cost(Ratio<i128>);

impl Cost {
    pub const ZERO: Cost = Cost(Ratio::new_raw(0, 1));
    pub const ONE: Cost = Cost(Ratio::new_raw(1, 1));

    pub fn new(num: i128, den: i128) -> Result<Cost, CostError> {
        if den == 0 {
            return Err(CostError::ZeroDenominator);
        }
        let r = Ratio::new(num, den);
        if r < Ratio::zero() {
            return Err(CostError::Negative(format!("{num}/{den}")));
        }
        Ok(Cost(r))
    }

    pub fn integer(n: u64) -> Cost {
        Cost(Ratio::from_integer(n as i128))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// `self - rhs`, or `None` when the result would be negative.
    pub fn checked_sub(self, rhs: Cost) -> Option<Cost> {
        let d = self.0 - rhs.0;
        (d >= Ratio::zero()).then_some(Cost(d))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Multiplies by a non-negative integer.
    pub fn scale(self, k: u64) -> Cost {
        Cost(self.0 * Ratio::from_integer(k as i128))
    }
}

/// Smallest positive integer `k` such that `k * c` is integral for every cost.
pub fn lcm_scale<'a>(costs: impl IntoIterator<Item = &'a Cost>) -> u64 {
    costs
        .into_iter()
        .fold(1i128, |acc, c| acc.lcm(&c.denom()))
        .try_into()
        .expect("cost denominators exceed u64")
}

impl Add for Cost {
    type Output = Cost;
    fn add(self, rhs: Cost) -> Cost {
        Cost(self.0 + rhs.0)
    }
}

impl AddAssign for Cost {
    fn add_assign(&mut self, rhs: Cost) {
        self.0 += rhs.0;
    }
}

impl Mul for Cost {
    type Output = Cost;
    fn mul(self, rhs: Cost) -> Cost {
        Cost(self.0 * rhs.0)
    }
}

impl Div for Cost {
    type Output = Cost;
    /// Panics on division by zero.
    fn div(self, rhs: Cost) -> Cost {
        assert!(!rhs.is_zero(), "division by zero cost");
        Cost(self.0 / rhs.0)
    }
}

impl Sum for Cost {
    fn sum<I: Iterator<Item = Cost>>(iter: I) -> Cost {
        iter.fold(Cost::ZERO, |a, b| a + b)
    }
}

impl<'a> Sum<&'a Cost> for Cost {
    fn sum<I: Iterator<Item = &'a Cost>>(iter: I) -> Cost {
        iter.fold(Cost::ZERO, |a, b| a + *b)
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cost({self})")
    }
}

impl From<u64> for Cost {
    fn from(n: u64) -> Cost {
        Cost::integer(n)
    }
}

/// Accepts `"p/q"`, integers, decimals (`"0.001"`) and scientific notation
/// (`"1e-3"`, `"2.5E+2"`); the conversion is exact.
impl FromStr for Cost {
    type Err = CostError;

    fn from_str(s: &str) -> Result<Cost, CostError> {
        let s = s.trim();
        let bad = || CostError::Parse(s.to_string());
        if let Some((n, d)) = s.split_once('/') {
            let n: i128 = n.trim().parse().map_err(|_| bad())?;
            let d: i128 = d.trim().parse().map_err(|_| bad())?;
            return Cost::new(n, d);
        }
        let (mantissa, exp) = match s.find(['e', 'E']) {
            Some(i) => {
                let e: i32 = s[i + 1..].parse().map_err(|_| bad())?;
                (&s[..i], e)
            }
            None => (s, 0),
        };
        let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        let negative = int_part.starts_with('-');
        let int_digits = int_part.trim_start_matches(['+', '-']);
        if int_digits.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_digits.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int_digits}{frac_part}");
        let mut num: i128 = digits.parse().map_err(|_| bad())?;
        if negative {
            num = -num;
        }
        let shift = exp - frac_part.len() as i32;
        let pow = 10i128.checked_pow(shift.unsigned_abs()).ok_or_else(bad)?;
        if shift >= 0 {
            Cost::new(num.checked_mul(pow).ok_or_else(bad)?, 1)
        } else {
            Cost::new(num, pow)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CostRepr {
    num: u64,
    den: u64,
}

impl Serialize for Cost {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let num = u64::try_from(self.numer()).map_err(serde::ser::Error::custom)?;
        let den = u64::try_from(self.denom()).map_err(serde::ser::Error::custom)?;
        CostRepr { num, den }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cost {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Cost, D::Error> {
        let r = CostRepr::deserialize(d)?;
        Cost::new(r.num as i128, r.den as i128).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Cost {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(Cost::new(6, 4).unwrap(), Cost::new(3, 2).unwrap());
        assert_eq!(Cost::new(6, 4).unwrap().denom(), 2);
        assert_eq!(Cost::new(-3, -6).unwrap(), Cost::new(1, 2).unwrap());
    }

    #[test]
    fn rejects_negative_and_zero_denominator() {
        assert!(matches!(Cost::new(-1, 2), Err(CostError::Negative(_))));
        assert!(matches!(Cost::new(1, 0), Err(CostError::ZeroDenominator)));
        assert!("-0.5".parse::<Cost>().is_err());
    }

    #[test]
    fn parses_exactly() {
        assert_eq!(c("1/1000"), c("0.001"));
        assert_eq!(c("1e-3"), c("0.001"));
        assert_eq!(c("1E3"), Cost::integer(1000));
        assert_eq!(c("2.5e1"), Cost::integer(25));
        assert_eq!(c("10"), Cost::integer(10));
        assert_eq!(c(".5"), Cost::new(1, 2).unwrap());
        assert!("abc".parse::<Cost>().is_err());
        assert!("1/".parse::<Cost>().is_err());
        assert!(".".parse::<Cost>().is_err());
    }

    #[test]
    fn arithmetic_is_exact() {
        let w = c("0.001");
        let total = Cost::integer(10) + w.scale(3);
        assert_eq!(total, c("10003/1000"));
        assert_eq!(total.scale(1000), Cost::integer(10003));
        assert_eq!(total.checked_sub(Cost::integer(10)), Some(c("3/1000")));
        assert_eq!(Cost::integer(1).checked_sub(Cost::integer(2)), None);
        assert_eq!(c("3/1000") / w, Cost::integer(3));
    }

    #[test]
    fn lcm_of_denominators() {
        let costs = [c("1/4"), c("1/6"), Cost::integer(7)];
        assert_eq!(lcm_scale(&costs), 12);
        assert_eq!(lcm_scale(&[]), 1);
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(c("3/4")).unwrap();
        assert_eq!(v, serde_json::json!({"num": 3, "den": 4}));
        let back: Cost = serde_json::from_value(serde_json::json!({"num": 2, "den": 4})).unwrap();
        assert_eq!(back, c("1/2"));
    }

    #[test]
    fn display() {
        assert_eq!(c("20").to_string(), "20");
        assert_eq!(c("0.25").to_string(), "1/4");
    }
}
