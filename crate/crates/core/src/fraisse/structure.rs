use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub const DEFAULT_MAX_ARITY: usize = 4;
/// Largest universe for which brute-force canonical forms are computed.
pub const CANONICAL_FORM_LIMIT: usize = 8;

pub type Tuple = Vec<usize>;

/// Relation names with arities.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    relations: Vec<(String, usize)>,
}

impl Signature {
    pub fn new(relations: Vec<(String, usize)>) -> Result<Self> {
        Self::with_max_arity(relations, DEFAULT_MAX_ARITY)
    }

    pub fn with_max_arity(relations: Vec<(String, usize)>, max_arity: usize) -> Result<Self> {
        let mut problems = Vec::new();
        for (i, (name, arity)) in relations.iter().enumerate() {
            if name.is_empty() {
                problems.push(format!("relation {i} has an empty name"));
            }
            if relations[..i].iter().any(|(n, _)| n == name) {
                problems.push(format!("duplicate relation name {name:?}"));
            }
            if *arity == 0 || *arity > max_arity {
                problems.push(format!("relation {name:?} has arity {arity}, allowed 1..={max_arity}"));
            }
        }
        if problems.is_empty() {
            Ok(Signature { relations })
        } else {
            Err(Error::Validity(problems))
        }
    }

    pub fn relations(&self) -> &[(String, usize)] {
        &self.relations
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn arity(&self, rel: usize) -> usize {
        self.relations[rel].1
    }

    pub fn name(&self, rel: usize) -> &str {
        &self.relations[rel].0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.relations.iter().position(|(n, _)| n == name)
    }

    pub fn max_arity(&self) -> usize {
        self.relations.iter().map(|r| r.1).max().unwrap_or(0)
    }
}

/// Finite relational structure on `0..size`, tuples stored sorted and
/// deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteStructure {
    signature: Arc<Signature>,
    size: usize,
    relations: Vec<Vec<Tuple>>,
}

impl FiniteStructure {
    pub fn new(signature: Arc<Signature>, size: usize, mut relations: Vec<Vec<Tuple>>) -> Result<Self> {
        if relations.len() != signature.len() {
            return Err(Error::validity(format!(
                "expected {} relations, got {}",
                signature.len(),
                relations.len()
            )));
        }
        let mut problems = Vec::new();
        for (i, tuples) in relations.iter_mut().enumerate() {
            let arity = signature.arity(i);
            for t in tuples.iter() {
                if t.len() != arity {
                    problems.push(format!("{}: tuple {t:?} has length {}, arity is {arity}", signature.name(i), t.len()));
                } else if let Some(&x) = t.iter().find(|&&x| x >= size) {
                    problems.push(format!("{}: tuple {t:?} mentions {x}, universe size is {size}", signature.name(i)));
                }
            }
            tuples.sort();
            tuples.dedup();
        }
        if !problems.is_empty() {
            return Err(Error::Validity(problems));
        }
        Ok(FiniteStructure { signature, size, relations })
    }

    /// Built from data already known to be well formed.
    pub(crate) fn from_parts(signature: Arc<Signature>, size: usize, mut relations: Vec<Vec<Tuple>>) -> Self {
        for r in &mut relations {
            r.sort();
            r.dedup();
        }
        FiniteStructure { signature, size, relations }
    }

    pub fn empty(signature: Arc<Signature>, size: usize) -> Self {
        let n = signature.len();
        FiniteStructure { signature, size, relations: vec![Vec::new(); n] }
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.signature
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn relations(&self) -> &[Vec<Tuple>] {
        &self.relations
    }

    pub fn tuples(&self, rel: usize) -> &[Tuple] {
        &self.relations[rel]
    }

    pub fn holds(&self, rel: usize, tuple: &[usize]) -> bool {
        self.relations[rel].binary_search_by(|t| t.as_slice().cmp(tuple)).is_ok()
    }

    pub fn tuple_count(&self) -> usize {
        self.relations.iter().map(Vec::len).sum()
    }

    /// Induced substructure on `elems`; element `elems[i]` becomes `i`.
    pub fn induced(&self, elems: &[usize]) -> FiniteStructure {
        let mut pos = vec![usize::MAX; self.size];
        for (i, &e) in elems.iter().enumerate() {
            pos[e] = i;
        }
        let relations = self
            .relations
            .iter()
            .map(|tuples| {
                tuples
                    .iter()
                    .filter(|t| t.iter().all(|&x| pos[x] != usize::MAX))
                    .map(|t| t.iter().map(|&x| pos[x]).collect())
                    .collect()
            })
            .collect();
        FiniteStructure::from_parts(self.signature.clone(), elems.len(), relations)
    }

    /// Image under the bijection `x -> perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> FiniteStructure {
        let relations = self
            .relations
            .iter()
            .map(|tuples| tuples.iter().map(|t| t.iter().map(|&x| perm[x]).collect()).collect())
            .collect();
        FiniteStructure::from_parts(self.signature.clone(), self.size, relations)
    }

    /// `Ok(())` if `perm` is an automorphism, otherwise the reason.
    pub fn check_automorphism(&self, perm: &[usize]) -> std::result::Result<(), String> {
        if perm.len() != self.size {
            return Err(format!("has {} entries, universe size is {}", perm.len(), self.size));
        }
        let mut seen = vec![false; self.size];
        for &x in perm {
            if x >= self.size || seen[x] {
                return Err("is not a permutation".to_string());
            }
            seen[x] = true;
        }
        for (i, tuples) in self.relations.iter().enumerate() {
            for t in tuples {
                let img: Tuple = t.iter().map(|&x| perm[x]).collect();
                if !self.holds(i, &img) {
                    return Err(format!("maps {}{t:?} to non-tuple {img:?}", self.signature.name(i)));
                }
            }
        }
        Ok(())
    }

    /// Lexicographically least relabeling (compared on the relation lists).
    pub fn canonical_form(&self) -> Result<FiniteStructure> {
        if self.size > CANONICAL_FORM_LIMIT {
            return Err(Error::Resource(format!("canonical form limited to {CANONICAL_FORM_LIMIT} elements")));
        }
        let mut perm: Vec<usize> = (0..self.size).collect();
        let mut best = self.relabel(&perm);
        while next_permutation(&mut perm) {
            let cand = self.relabel(&perm);
            if cand.relations < best.relations {
                best = cand;
            }
        }
        Ok(best)
    }

    /// Disjoint union, `other` shifted past `self`.
    pub fn disjoint_union(&self, other: &FiniteStructure) -> FiniteStructure {
        let shift = self.size;
        let relations = self
            .relations
            .iter()
            .zip(&other.relations)
            .map(|(a, b)| a.iter().cloned().chain(b.iter().map(|t| t.iter().map(|&x| x + shift).collect())).collect())
            .collect();
        FiniteStructure::from_parts(self.signature.clone(), self.size + other.size, relations)
    }
}

impl fmt::Display for FiniteStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "size={}", self.size)?;
        for (i, tuples) in self.relations.iter().enumerate() {
            let parts: Vec<String> = tuples
                .iter()
                .map(|t| format!("({})", t.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
                .collect();
            write!(f, "; {}={{{}}}", self.signature.name(i), parts.join(","))?;
        }
        Ok(())
    }
}

/// Advances to the next permutation in lexicographic order.
pub fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
