use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};

use super::braid::{BraidWord, Generator};
use super::coord::Coordinate;
use super::coords::MultiCurveCoords;

/// Convex curve enclosing the consecutive punctures `first..=last`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RoundCurve {
    first: usize,
    last: usize,
}

impl RoundCurve {
    pub fn new(first: usize, last: usize) -> Result<Self> {
        if first < 1 || last <= first {
            return Err(Error::validity(format!(
                "round curve [{first},{last}] must enclose at least two punctures"
            )));
        }
        Ok(RoundCurve { first, last })
    }

    pub fn first(&self) -> usize {
        self.first
    }

    pub fn last(&self) -> usize {
        self.last
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.last - self.first + 1
    }

    /// True when the curve is parallel to the outer boundary of `D_n`.
    pub fn is_boundary_parallel(&self, n: usize) -> bool {
        self.first == 1 && self.last == n
    }

    pub fn fits(&self, n: usize) -> Result<()> {
        if self.last > n {
            return Err(Error::validity(format!("round curve {self} does not fit in D_{n}")));
        }
        Ok(())
    }

    /// True when the two curves must cross: their intervals overlap without nesting.
    pub fn interleaves(&self, other: &RoundCurve) -> bool {
        let (x, y) = (self, other);
        (x.first < y.first && y.first <= x.last && x.last < y.last)
            || (y.first < x.first && x.first <= y.last && y.last < x.last)
    }

    /// Coordinates of the curve in `D_n`.
    pub fn coords<T: Coordinate>(&self, n: usize) -> Result<MultiCurveCoords<T>> {
        self.fits(n)?;
        let zero = T::zero();
        let mut b = vec![zero.clone(); n - 2];
        if self.first >= 2 {
            b[self.first - 2] = T::from(-1);
        }
        if self.last < n {
            b[self.last - 2] = T::from(1);
        }
        if self.is_boundary_parallel(n) {
            return MultiCurveCoords::empty(n);
        }
        MultiCurveCoords::new(n, vec![zero; n - 2], b)
    }

    pub fn coords_big(&self, n: usize) -> Result<MultiCurveCoords<BigInt>> {
        self.coords(n)
    }

    /// Positive full twist about the curve: `(σ_first .. σ_{last-1})^{len}`.
    pub fn twist_word(&self) -> BraidWord {
        let cycle: Vec<Generator> = (self.first..self.last).map(Generator::pos).collect();
        BraidWord(cycle).pow(self.len())
    }
}

pub fn round_twist_word(c: RoundCurve) -> BraidWord {
    c.twist_word()
}

impl fmt::Display for RoundCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.first, self.last)
    }
}

impl FromStr for RoundCurve {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts: Vec<&str> = t.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(Error::Format(format!("expected `i,j`, got `{s}`")));
        }
        let parse = |p: &str| p.parse::<usize>().map_err(|_| Error::Format(format!("bad puncture index `{p}`")));
        RoundCurve::new(parse(parts[0])?, parse(parts[1])?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twist_word_on_two_strands() {
        let c = RoundCurve::new(1, 2).unwrap();
        assert_eq!(c.twist_word().to_string(), "s1 s1");
    }

    #[test]
    fn twist_word_on_three_strands() {
        let c = RoundCurve::new(2, 4).unwrap();
        assert_eq!(c.twist_word().to_string(), "s2 s3 s2 s3 s2 s3");
    }

    #[test]
    fn parse_and_print() {
        let c: RoundCurve = "2,3".parse().unwrap();
        assert_eq!(c.to_string(), "[2,3]");
        assert_eq!("[2,3]".parse::<RoundCurve>().unwrap(), c);
        assert!("3,3".parse::<RoundCurve>().is_err());
        assert!("x".parse::<RoundCurve>().is_err());
    }

    #[test]
    fn interleaving() {
        let a = RoundCurve::new(1, 2).unwrap();
        let b = RoundCurve::new(2, 3).unwrap();
        let c = RoundCurve::new(1, 3).unwrap();
        assert!(a.interleaves(&b));
        assert!(!a.interleaves(&c));
        assert!(!a.interleaves(&a));
    }
}
