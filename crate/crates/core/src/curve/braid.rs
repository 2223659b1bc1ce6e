use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A half-twist generator `σ_i^{±1}` exchanging punctures `i` and `i + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    /// 1-based strand index.
    pub index: usize,
    pub inverse: bool,
}

impl Generator {
    pub fn pos(index: usize) -> Self {
        Generator { index, inverse: false }
    }

    pub fn neg(index: usize) -> Self {
        Generator { index, inverse: true }
    }

    pub fn inv(self) -> Self {
        Generator { index: self.index, inverse: !self.inverse }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "s{}^-1", self.index)
        } else {
            write!(f, "s{}", self.index)
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(tok: &str) -> Result<Self> {
        let body = tok
            .strip_prefix('s')
            .ok_or_else(|| Error::Format(format!("braid generator `{tok}` must start with `s`")))?;
        let (digits, inverse) = match body.strip_suffix("^-1") {
            Some(d) => (d, true),
            None => (body, false),
        };
        if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
            return Err(Error::Format(format!("bad braid generator `{tok}`")));
        }
        let index: usize = digits
            .parse()
            .map_err(|_| Error::Format(format!("bad braid generator `{tok}`")))?;
        if index == 0 {
            return Err(Error::Format("braid generators are numbered from 1".into()));
        }
        Ok(Generator { index, inverse })
    }
}

/// A word in the braid generators, read left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BraidWord(pub Vec<Generator>);

impl BraidWord {
    pub fn identity() -> Self {
        BraidWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        BraidWord(self.0.iter().rev().map(|g| g.inv()).collect())
    }

    pub fn concat(&self, other: &BraidWord) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        BraidWord(v)
    }

    pub fn pow(&self, k: usize) -> Self {
        BraidWord(self.0.iter().copied().cycle().take(self.0.len() * k).collect())
    }

    /// Cancels adjacent `σ_i σ_i^{-1}` pairs.
    pub fn free_reduce(&self) -> Self {
        let mut out: Vec<Generator> = Vec::with_capacity(self.0.len());
        for &g in &self.0 {
            if out.last() == Some(&g.inv()) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        BraidWord(out)
    }

    /// Largest generator index used, or 0 for the empty word.
    pub fn max_index(&self) -> usize {
        self.0.iter().map(|g| g.index).max().unwrap_or(0)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace().map(str::parse).collect::<Result<Vec<_>>>().map(BraidWord)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let w: BraidWord = "s1 s2^-1 s1".parse().unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.0[1], Generator::neg(2));
        assert_eq!(w.to_string(), "s1 s2^-1 s1");
        assert_eq!("".parse::<BraidWord>().unwrap(), BraidWord::identity());
    }

    #[test]
    fn rejects_garbage() {
        assert!("s0".parse::<BraidWord>().is_err());
        assert!("t1".parse::<BraidWord>().is_err());
        assert!("s1^2".parse::<BraidWord>().is_err());
        assert!("s".parse::<BraidWord>().is_err());
    }

    #[test]
    fn free_reduction_cancels_nested_pairs() {
        let w: BraidWord = "s1 s2 s2^-1 s1^-1 s3".parse().unwrap();
        assert_eq!(w.free_reduce().to_string(), "s3");
        assert!(w.concat(&w.inverse()).free_reduce().is_empty());
    }
}
