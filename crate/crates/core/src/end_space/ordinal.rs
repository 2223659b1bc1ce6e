use std::fmt;

use crate::error::{Error, Result};

/// Maximum nesting of exponents before arithmetic gives up.
pub const MAX_ORDINAL_DEPTH: usize = 32;

/// Ordinal below epsilon-zero in Cantor normal form.
///
/// Terms are `(exponent, coefficient)` with strictly decreasing exponents and
/// positive coefficients; the empty list is zero. The derived ordering is the
/// ordinal ordering because comparison is lexicographic over terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct OrdinalCNF {
    terms: Vec<(OrdinalCNF, u64)>,
}

impl OrdinalCNF {
    pub fn zero() -> Self {
        OrdinalCNF { terms: Vec::new() }
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            OrdinalCNF { terms: vec![(Self::zero(), n)] }
        }
    }

    /// `omega^exponent`
    pub fn omega_pow(exponent: OrdinalCNF) -> Result<Self> {
        let out = OrdinalCNF { terms: vec![(exponent, 1)] };
        out.check_depth()?;
        Ok(out)
    }

    pub fn from_terms(terms: Vec<(OrdinalCNF, u64)>) -> Result<Self> {
        if terms.iter().any(|(_, c)| *c == 0) {
            return Err(Error::validity("ordinal coefficients must be positive"));
        }
        if terms.windows(2).any(|w| w[0].0 <= w[1].0) {
            return Err(Error::validity("ordinal exponents must strictly decrease"));
        }
        let out = OrdinalCNF { terms };
        out.check_depth()?;
        Ok(out)
    }

    pub fn terms(&self) -> &[(OrdinalCNF, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a natural number, if finite.
    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    pub fn depth(&self) -> usize {
        self.terms.iter().map(|(e, _)| 1 + e.depth()).max().unwrap_or(0)
    }

    fn check_depth(&self) -> Result<()> {
        if self.depth() > MAX_ORDINAL_DEPTH {
            return Err(Error::Resource(format!("ordinal nesting exceeds {MAX_ORDINAL_DEPTH}")));
        }
        Ok(())
    }

    /// Ordinal sum `self + other` (not commutative).
    pub fn add(&self, other: &OrdinalCNF) -> Result<Self> {
        let Some((lead, lead_coeff)) = other.terms.first() else {
            return Ok(self.clone());
        };
        let mut terms: Vec<(OrdinalCNF, u64)> = self.terms.iter().filter(|(e, _)| e >= lead).cloned().collect();
        let mut rest = other.terms.iter();
        match terms.last_mut() {
            Some((e, c)) if e == lead => {
                *c = c.checked_add(*lead_coeff).ok_or(Error::Overflow)?;
                rest.next();
            }
            _ => {}
        }
        terms.extend(rest.cloned());
        let out = OrdinalCNF { terms };
        out.check_depth()?;
        Ok(out)
    }

    pub fn succ(&self) -> Result<Self> {
        self.add(&Self::nat(1))
    }

    /// `self * n` for a natural `n`.
    pub fn mul_nat(&self, n: u64) -> Result<Self> {
        if n == 0 || self.is_zero() {
            return Ok(Self::zero());
        }
        let mut terms = self.terms.clone();
        terms[0].1 = terms[0].1.checked_mul(n).ok_or(Error::Overflow)?;
        Ok(OrdinalCNF { terms })
    }
}

impl fmt::Display for OrdinalCNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let power = match e.as_nat() {
                Some(0) => None,
                Some(1) => Some("omega".to_string()),
                Some(k) => Some(format!("omega^{k}")),
                None => Some(format!("omega^({e})")),
            };
            match (power, c) {
                (None, c) => write!(f, "{c}")?,
                (Some(p), 1) => write!(f, "{p}")?,
                (Some(p), c) => write!(f, "{p}*{c}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn omega() -> OrdinalCNF {
        OrdinalCNF::omega_pow(OrdinalCNF::nat(1)).unwrap()
    }

    #[test]
    fn finite_arithmetic() {
        assert_eq!(OrdinalCNF::nat(2).add(&OrdinalCNF::nat(3)).unwrap(), OrdinalCNF::nat(5));
        assert_eq!(OrdinalCNF::nat(4).mul_nat(3).unwrap(), OrdinalCNF::nat(12));
        assert_eq!(OrdinalCNF::nat(4).as_nat(), Some(4));
    }

    #[test]
    fn absorption_on_the_left() {
        let w = omega();
        assert_eq!(OrdinalCNF::nat(1).add(&w).unwrap(), w);
        assert_eq!(w.add(&OrdinalCNF::nat(1)).unwrap().to_string(), "omega + 1");
    }

    #[test]
    fn display_forms() {
        let w2 = OrdinalCNF::omega_pow(OrdinalCNF::nat(2)).unwrap();
        let x = w2.mul_nat(3).unwrap().add(&omega()).unwrap().add(&OrdinalCNF::nat(5)).unwrap();
        assert_eq!(x.to_string(), "omega^2*3 + omega + 5");
        let ww = OrdinalCNF::omega_pow(omega()).unwrap();
        assert_eq!(ww.to_string(), "omega^(omega)");
        assert_eq!(OrdinalCNF::zero().to_string(), "0");
    }

    #[test]
    fn comparison() {
        assert!(OrdinalCNF::nat(1000) < omega());
        assert!(omega().mul_nat(5).unwrap() < OrdinalCNF::omega_pow(OrdinalCNF::nat(2)).unwrap());
        assert!(omega() < omega().succ().unwrap());
    }

    #[test]
    fn depth_cap() {
        let mut x = OrdinalCNF::nat(1);
        let mut failed = false;
        for _ in 0..40 {
            match OrdinalCNF::omega_pow(x.clone()) {
                Ok(y) => x = y,
                Err(Error::Resource(_)) => {
                    failed = true;
                    break;
                }
                Err(e) => panic!("{e}"),
            }
        }
        assert!(failed);
    }

    #[test]
    fn rejects_malformed_terms() {
        assert!(OrdinalCNF::from_terms(vec![(OrdinalCNF::zero(), 0)]).is_err());
        assert!(OrdinalCNF::from_terms(vec![(OrdinalCNF::zero(), 1), (OrdinalCNF::nat(1), 1)]).is_err());
    }

    fn ordinal() -> impl Strategy<Value = OrdinalCNF> {
        let leaf = (0u64..4).prop_map(OrdinalCNF::nat);
        leaf.prop_recursive(3, 12, 3, |inner| {
            proptest::collection::vec((inner, 1u64..4), 0..3).prop_map(|mut terms| {
                terms.sort_by(|a, b| b.0.cmp(&a.0));
                terms.dedup_by(|a, b| a.0 == b.0);
                OrdinalCNF::from_terms(terms).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn addition_is_associative(a in ordinal(), b in ordinal(), c in ordinal()) {
            let left = a.add(&b).unwrap().add(&c).unwrap();
            let right = a.add(&b.add(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn addition_is_monotone_on_the_right(a in ordinal(), b in ordinal(), c in ordinal()) {
            prop_assume!(b < c);
            prop_assert!(a.add(&b).unwrap() < a.add(&c).unwrap());
        }

        #[test]
        fn multiplication_distributes_over_naturals(a in ordinal(), m in 0u64..5, n in 0u64..5) {
            let left = a.mul_nat(m).unwrap().mul_nat(n).unwrap();
            prop_assert_eq!(left, a.mul_nat(m * n).unwrap());
            prop_assert_eq!(a.mul_nat(m + 1).unwrap(), a.mul_nat(m).unwrap().add(&a).unwrap());
        }

        #[test]
        fn comparison_is_total(a in ordinal(), b in ordinal()) {
            let lt = a < b;
            let gt = b < a;
            prop_assert!(lt as u8 + gt as u8 + (a == b) as u8 == 1);
            prop_assert!(a <= a.add(&b).unwrap());
        }
    }
}
