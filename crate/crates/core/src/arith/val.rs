use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact valuation, normalized so that `v(p) = 1`. `Inf` is the valuation of
/// zero (or of an element indistinguishable from zero at its precision).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Val {
    Fin(Ratio<i64>),
    Inf,
}

impl Val {
    pub fn int(n: i64) -> Val {
        Val::Fin(Ratio::from_integer(n))
    }

    pub fn frac(num: i64, den: i64) -> Val {
        Val::Fin(Ratio::new(num, den))
    }

    pub fn zero() -> Val {
        Val::int(0)
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, Val::Inf)
    }

    pub fn finite(&self) -> Option<Ratio<i64>> {
        match self {
            Val::Fin(r) => Some(*r),
            Val::Inf => None,
        }
    }

    /// Panics on `Inf`; use where the value is known to be finite.
    pub fn unwrap(&self) -> Ratio<i64> {
        self.finite().expect("infinite valuation")
    }

    pub fn min(self, other: Val) -> Val {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Val) -> Val {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Floor of the valuation (as an integer); `None` for `Inf`.
    pub fn floor(&self) -> Option<i64> {
        self.finite().map(|r| r.floor().to_integer())
    }

    pub fn scale(self, k: i64) -> Val {
        match self {
            Val::Fin(r) => Val::Fin(r * k),
            Val::Inf if k == 0 => Val::zero(),
            Val::Inf => {
                assert!(k > 0, "negative multiple of infinite valuation");
                Val::Inf
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Val::Fin(r) => *r.numer() as f64 / *r.denom() as f64,
            Val::Inf => f64::INFINITY,
        }
    }
}

impl From<Ratio<i64>> for Val {
    fn from(r: Ratio<i64>) -> Self {
        Val::Fin(r)
    }
}

impl From<i64> for Val {
    fn from(n: i64) -> Self {
        Val::int(n)
    }
}

impl PartialOrd for Val {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Val {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Val::Inf, Val::Inf) => Ordering::Equal,
            (Val::Inf, _) => Ordering::Greater,
            (_, Val::Inf) => Ordering::Less,
            (Val::Fin(a), Val::Fin(b)) => a.cmp(b),
        }
    }
}

impl Add for Val {
    type Output = Val;
    fn add(self, rhs: Val) -> Val {
        match (self, rhs) {
            (Val::Fin(a), Val::Fin(b)) => Val::Fin(a + b),
            _ => Val::Inf,
        }
    }
}

impl Sub for Val {
    type Output = Val;
    /// `Inf - x = Inf`; subtracting `Inf` from a finite value is a logic error.
    fn sub(self, rhs: Val) -> Val {
        match (self, rhs) {
            (Val::Fin(a), Val::Fin(b)) => Val::Fin(a - b),
            (Val::Inf, Val::Fin(_)) => Val::Inf,
            _ => panic!("subtracting an infinite valuation"),
        }
    }
}

impl Neg for Val {
    type Output = Val;
    fn neg(self) -> Val {
        match self {
            Val::Fin(a) => Val::Fin(-a),
            Val::Inf => panic!("negating an infinite valuation"),
        }
    }
}

impl Mul<i64> for Val {
    type Output = Val;
    fn mul(self, k: i64) -> Val {
        self.scale(k)
    }
}

impl fmt::Display for Val {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val::Inf => write!(f, "inf"),
            Val::Fin(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl FromStr for Val {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "inf" {
            return Ok(Val::Inf);
        }
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("bad valuation `{s}`: {e}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let d = parse(d)?;
                if d.is_zero() {
                    return Err(format!("bad valuation `{s}`: zero denominator"));
                }
                Ok(Val::frac(parse(n)?, d))
            }
            None => Ok(Val::int(parse(s)?)),
        }
    }
}

impl Serialize for Val {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Val {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Ceiling of a rational as i64.
pub fn ceil_ratio(r: Ratio<i64>) -> i64 {
    let (n, d) = (*r.numer(), *r.denom());
    Integer::div_ceil(&n, &d)
}

/// Absolute value of a rational, used when reporting gaps.
pub fn abs_ratio(r: Ratio<i64>) -> Ratio<i64> {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_puts_infinity_last() {
        assert!(Val::int(5) < Val::Inf);
        assert!(Val::frac(1, 3) < Val::frac(1, 2));
        assert_eq!(Val::int(2).min(Val::Inf), Val::int(2));
    }

    #[test]
    fn string_round_trip() {
        for v in [Val::frac(-3, 8), Val::int(4), Val::Inf] {
            let s = v.to_string();
            assert_eq!(s.parse::<Val>().unwrap(), v);
        }
        assert_eq!("7".parse::<Val>().unwrap(), Val::int(7));
        assert!("1/0".parse::<Val>().is_err());
    }

    #[test]
    fn arithmetic() {
        assert_eq!(Val::frac(1, 2) + Val::frac(1, 3), Val::frac(5, 6));
        assert_eq!(Val::Inf + Val::int(1), Val::Inf);
        assert_eq!(Val::frac(3, 8) * 8, Val::int(3));
        assert_eq!(ceil_ratio(Ratio::new(7, 2)), 4);
        assert_eq!(ceil_ratio(Ratio::new(-7, 2)), -3);
    }
}
