//! Exact root-of-unity phases as elements of Q/Z.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The phase `e^{2πi·r}` for a rational `r`, stored reduced in `[0, 1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase(Ratio<i64>);

impl Phase {
    pub const ZERO: Phase = Phase(Ratio::new_raw(0, 1));

    pub fn new(num: i64, den: i64) -> Phase {
        assert!(den != 0, "phase denominator must be nonzero");
        Phase::from_ratio(Ratio::new(num, den))
    }

    fn from_ratio(r: Ratio<i64>) -> Phase {
        let den = *r.denom();
        let num = r.numer().rem_euclid(den);
        Phase(Ratio::new_raw(num, den))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Multiplicative order of the root of unity.
    pub fn order(&self) -> i64 {
        self.denom()
    }

    /// The value as a fraction of a full turn, in `[0, 1)`.
    pub fn turns(&self) -> f64 {
        self.0.to_f64().unwrap_or(0.0)
    }

    /// A phase `ψ` with `m * ψ = self`: the representative `self / m`.
    pub fn div_int(&self, m: i64) -> Phase {
        Phase::from_ratio(self.0 / Ratio::from_integer(m))
    }

    /// `self * m` as an integer when it is one (i.e. `m * self ∈ Z`).
    pub fn times_integral(&self, m: i64) -> Option<i64> {
        let den = self.denom();
        (m % den == 0).then(|| (m / den) * self.numer())
    }

    /// Least common denominator of a set of phases.
    pub fn common_denom<'a>(it: impl IntoIterator<Item = &'a Phase>) -> i64 {
        it.into_iter().fold(1, |acc, p| acc.lcm(&p.denom()))
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        Phase::from_ratio(self.0 + rhs.0)
    }
}

impl AddAssign for Phase {
    fn add_assign(&mut self, rhs: Phase) {
        *self = *self + rhs;
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        Phase::from_ratio(self.0 - rhs.0)
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::from_ratio(-self.0)
    }
}

impl Mul<i64> for Phase {
    type Output = Phase;
    fn mul(self, k: i64) -> Phase {
        let den = self.denom();
        let num = ((self.numer() as i128 * k as i128).rem_euclid(den as i128)) as i64;
        Phase(Ratio::new_raw(num, den)).reduced()
    }
}

impl Phase {
    fn reduced(self) -> Phase {
        Phase::from_ratio(Ratio::new(self.numer(), self.denom()))
    }
}

impl std::iter::Sum for Phase {
    fn sum<I: Iterator<Item = Phase>>(iter: I) -> Phase {
        iter.fold(Phase::ZERO, |a, b| a + b)
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::ZERO
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Phase({}/{})", self.numer(), self.denom())
    }
}

impl FromStr for Phase {
    type Err = Error;

    /// Parses `"num/den"` (or a bare integer).
    fn from_str(s: &str) -> Result<Phase> {
        let bad = || Error::Parse(format!("bad phase literal {s:?}; expected \"num/den\""));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: i64 = n.parse().map_err(|_| bad())?;
        let d: i64 = d.parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        Ok(Phase::new(n, d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_mod_one() {
        assert_eq!(Phase::new(4, 3), Phase::new(1, 3));
        assert_eq!(Phase::new(-1, 4), Phase::new(3, 4));
        assert_eq!(Phase::new(2, 4).denom(), 2);
        assert!(Phase::new(5, 5).is_zero());
    }

    #[test]
    fn arithmetic() {
        assert_eq!(Phase::new(1, 4) + Phase::new(1, 2), Phase::new(3, 4));
        assert_eq!(Phase::new(3, 4) * 2, Phase::new(1, 2));
        assert_eq!(-Phase::new(1, 3), Phase::new(2, 3));
        assert_eq!(Phase::new(1, 2).div_int(2), Phase::new(1, 4));
        assert_eq!(Phase::new(1, 4).times_integral(8), Some(2));
        assert_eq!(Phase::new(1, 4).times_integral(2), None);
    }

    #[test]
    fn literal() {
        assert_eq!("3/8".parse::<Phase>().unwrap(), Phase::new(3, 8));
        assert_eq!(Phase::new(3, 8).to_string(), "3/8");
        assert!("1/0".parse::<Phase>().is_err());
        assert!("x".parse::<Phase>().is_err());
    }
}
