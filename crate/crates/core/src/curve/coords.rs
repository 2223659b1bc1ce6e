use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::coord::Coordinate;

/// Dynnikov coordinates `(a_1..a_{n-2}; b_1..b_{n-2})` of an integral
/// multicurve on the disk with `n` punctures.
///
/// `a_k` is half the difference between the crossings of the arcs below and
/// above puncture `k + 1`; `b_k` is half the difference between the crossings
/// of the vertical chords on either side of that puncture. Distinct vectors
/// are distinct multicurves; the zero vector is the empty multicurve.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiCurveCoords<T> {
    n: usize,
    pub(crate) a: Vec<T>,
    pub(crate) b: Vec<T>,
}

impl<T: Coordinate> MultiCurveCoords<T> {
    pub fn new(n: usize, a: Vec<T>, b: Vec<T>) -> Result<Self> {
        if n < 3 {
            return Err(Error::validity(format!("need at least 3 punctures, got {n}")));
        }
        if a.len() != n - 2 || b.len() != n - 2 {
            return Err(Error::validity(format!(
                "expected {} a- and b-coordinates for n={n}, got {} and {}",
                n - 2,
                a.len(),
                b.len()
            )));
        }
        Ok(MultiCurveCoords { n, a, b })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, vec![T::zero(); n.saturating_sub(2)], vec![T::zero(); n.saturating_sub(2)])
    }

    pub fn punctures(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &[T] {
        &self.a
    }

    pub fn b(&self) -> &[T] {
        &self.b
    }

    pub fn is_empty(&self) -> bool {
        self.a.iter().chain(&self.b).all(Zero::is_zero)
    }

    /// Coordinates of the disjoint union with `other` (coordinates add when
    /// the two multicurves are disjoint).
    pub fn disjoint_sum(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::validity("puncture counts differ"));
        }
        let add = |x: &[T], y: &[T]| -> Result<Vec<T>> {
            x.iter().zip(y).map(|(p, q)| super::coord::add(p, q)).collect()
        };
        Ok(MultiCurveCoords { n: self.n, a: add(&self.a, &other.a)?, b: add(&self.b, &other.b)? })
    }

    /// Converts to another coordinate type through the decimal form.
    pub fn convert<U: Coordinate>(&self) -> Result<MultiCurveCoords<U>> {
        let cv = |v: &[T]| -> Result<Vec<U>> {
            v.iter()
                .map(|x| x.to_string().parse::<U>().map_err(|_| Error::Overflow))
                .collect()
        };
        Ok(MultiCurveCoords { n: self.n, a: cv(&self.a)?, b: cv(&self.b)? })
    }
}

use num_traits::Zero;

impl<T: Coordinate> fmt::Display for MultiCurveCoords<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[T]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        write!(f, "n={}; a=[{}]; b=[{}]", self.n, list(&self.a), list(&self.b))
    }
}

impl<T: Coordinate> FromStr for MultiCurveCoords<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Format(format!("coordinate vector `{s}`: {why}"));
        let mut n = None;
        let mut a = None;
        let mut b = None;
        for field in s.split(';') {
            let field = field.trim();
            if field.is_empty() {
                continue;
            }
            let (key, value) = field.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            let value = value.trim();
            match key.trim() {
                "n" => n = Some(value.parse::<usize>().map_err(|_| bad("n is not a number"))?),
                k @ ("a" | "b") => {
                    let inner = value
                        .strip_prefix('[')
                        .and_then(|v| v.strip_suffix(']'))
                        .ok_or_else(|| bad("lists are written [x,y,..]"))?;
                    let items = if inner.trim().is_empty() {
                        Vec::new()
                    } else {
                        inner
                            .split(',')
                            .map(|x| x.trim().parse::<T>().map_err(|_| bad("entry is not an integer")))
                            .collect::<Result<Vec<_>>>()?
                    };
                    if k == "a" {
                        a = Some(items);
                    } else {
                        b = Some(items);
                    }
                }
                other => return Err(bad(&format!("unknown field `{other}`"))),
            }
        }
        match (n, a, b) {
            (Some(n), Some(a), Some(b)) => MultiCurveCoords::new(n, a, b),
            _ => Err(bad("fields n, a and b are all required")),
        }
    }
}
