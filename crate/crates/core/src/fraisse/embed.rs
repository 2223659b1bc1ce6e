use std::collections::HashSet;
use std::ops::ControlFlow;

use crate::error::{Error, Result};

use super::structure::{FiniteStructure, Tuple};

/// Default node budget for a single search.
pub const SEARCH_BUDGET: u64 = 1 << 24;

/// Countdown of search nodes shared by nested searches.
#[derive(Debug, Clone)]
pub struct Budget {
    remaining: u64,
}

impl Budget {
    pub fn new(nodes: u64) -> Self {
        Budget { remaining: nodes }
    }

    pub fn tick(&mut self) -> Result<()> {
        if self.remaining == 0 {
            return Err(Error::Resource("search node budget exhausted".into()));
        }
        self.remaining -= 1;
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(SEARCH_BUDGET)
    }
}

/// Injective map on universes, `map[x]` is the image of `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    pub fn new(map: Vec<usize>) -> Self {
        Embedding { map }
    }

    pub fn identity(n: usize) -> Self {
        Embedding { map: (0..n).collect() }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &Embedding) -> Embedding {
        Embedding { map: self.map.iter().map(|&x| then.map[x]).collect() }
    }

    pub fn image(&self) -> Vec<usize> {
        let mut v = self.map.clone();
        v.sort_unstable();
        v
    }

    /// Inverse of a bijection onto `0..n`.
    pub fn inverse(&self) -> Embedding {
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Embedding { map: inv }
    }

    /// Whether this is an induced embedding of `a` into `b`.
    pub fn is_embedding(&self, a: &FiniteStructure, b: &FiniteStructure) -> bool {
        if self.map.len() != a.size() || self.map.iter().any(|&y| y >= b.size()) {
            return false;
        }
        let mut seen = HashSet::new();
        if !self.map.iter().all(|y| seen.insert(*y)) {
            return false;
        }
        b.induced(&self.map) == *a
    }
}

impl std::fmt::Display for Embedding {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.map.iter().enumerate().map(|(x, y)| format!("{x}->{y}")).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

pub(crate) fn same_signature(a: &FiniteStructure, b: &FiniteStructure) -> Result<()> {
    if a.signature() == b.signature() || **a.signature() == **b.signature() {
        Ok(())
    } else {
        Err(Error::Precondition("structures have different signatures".into()))
    }
}

/// Lookup tables for one structure.
pub(crate) struct Indexed<'a> {
    pub s: &'a FiniteStructure,
    sets: Vec<HashSet<&'a [usize]>>,
    /// `incident[rel][x]` lists tuples of `rel` mentioning `x`.
    incident: Vec<Vec<Vec<&'a [usize]>>>,
    /// Per element: counts per (relation, position) followed by diagonal flags.
    profile: Vec<Vec<usize>>,
}

impl<'a> Indexed<'a> {
    pub fn new(s: &'a FiniteStructure) -> Self {
        let n = s.size();
        let sig = s.signature();
        let mut incident = vec![vec![Vec::new(); n]; sig.len()];
        let width: usize = sig.relations().iter().map(|r| r.1 + 1).sum();
        let mut profile = vec![vec![0; width]; n];
        let mut offset = 0;
        let mut sets = Vec::with_capacity(sig.len());
        for (rel, tuples) in s.relations().iter().enumerate() {
            let arity = sig.arity(rel);
            let mut set = HashSet::with_capacity(tuples.len());
            for t in tuples {
                set.insert(t.as_slice());
                for (pos, &x) in t.iter().enumerate() {
                    profile[x][offset + pos] += 1;
                    if !t[..pos].contains(&x) {
                        incident[rel][x].push(t.as_slice());
                    }
                }
                if t.iter().all(|&x| x == t[0]) {
                    profile[t[0]][offset + arity] = 1;
                }
            }
            sets.push(set);
            offset += arity + 1;
        }
        Indexed { s, sets, incident, profile }
    }

    pub fn holds(&self, rel: usize, t: &[usize]) -> bool {
        self.sets[rel].contains(t)
    }

    fn diag_positions(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut offset = 0;
        for (_, arity) in self.s.signature().relations() {
            out.push(offset + arity);
            offset += arity + 1;
        }
        out
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    Embedding,
    Isomorphism,
}

/// Backtracking search over induced embeddings `a -> b` in lexicographic
/// order of the map; `allow(x, y)` restricts candidate images.
pub(crate) fn search<F, V>(
    a: &FiniteStructure,
    b: &FiniteStructure,
    mode: Mode,
    allow: F,
    budget: &mut Budget,
    mut visit: V,
) -> Result<()>
where
    F: Fn(usize, usize) -> bool,
    V: FnMut(&Embedding) -> ControlFlow<()>,
{
    same_signature(a, b)?;
    if a.size() > b.size() || (mode == Mode::Isomorphism && a.size() != b.size()) {
        return Ok(());
    }
    if mode == Mode::Isomorphism && a.tuple_count() != b.tuple_count() {
        return Ok(());
    }
    let ia = Indexed::new(a);
    let ib = Indexed::new(b);
    let diag = ia.diag_positions();
    let compatible = |x: usize, y: usize| -> bool {
        let (pa, pb) = (&ia.profile[x], &ib.profile[y]);
        match mode {
            Mode::Isomorphism => pa == pb,
            Mode::Embedding => {
                pa.iter().zip(pb).all(|(u, v)| u <= v) && diag.iter().all(|&d| pa[d] == pb[d])
            }
        }
    };
    let n = a.size();
    let mut map = vec![usize::MAX; n];
    let mut inv = vec![usize::MAX; b.size()];
    let mut tmp: Tuple = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn rec<F, C, V>(
        x: usize,
        ia: &Indexed,
        ib: &Indexed,
        map: &mut Vec<usize>,
        inv: &mut Vec<usize>,
        tmp: &mut Tuple,
        allow: &F,
        compatible: &C,
        budget: &mut Budget,
        visit: &mut V,
    ) -> Result<ControlFlow<()>>
    where
        F: Fn(usize, usize) -> bool,
        C: Fn(usize, usize) -> bool,
        V: FnMut(&Embedding) -> ControlFlow<()>,
    {
        if x == map.len() {
            return Ok(visit(&Embedding { map: map.clone() }));
        }
        for y in 0..ib.s.size() {
            if inv[y] != usize::MAX || !allow(x, y) || !compatible(x, y) {
                continue;
            }
            budget.tick()?;
            map[x] = y;
            inv[y] = x;
            if consistent(x, y, ia, ib, map, inv, tmp) {
                if let ControlFlow::Break(()) = rec(x + 1, ia, ib, map, inv, tmp, allow, compatible, budget, visit)? {
                    map[x] = usize::MAX;
                    inv[y] = usize::MAX;
                    return Ok(ControlFlow::Break(()));
                }
            }
            map[x] = usize::MAX;
            inv[y] = usize::MAX;
        }
        Ok(ControlFlow::Continue(()))
    }

    fn consistent(x: usize, y: usize, ia: &Indexed, ib: &Indexed, map: &[usize], inv: &[usize], tmp: &mut Tuple) -> bool {
        for rel in 0..ia.sets.len() {
            for t in &ia.incident[rel][x] {
                if t.iter().all(|&u| map[u] != usize::MAX) {
                    tmp.clear();
                    tmp.extend(t.iter().map(|&u| map[u]));
                    if !ib.holds(rel, tmp) {
                        return false;
                    }
                }
            }
            for t in &ib.incident[rel][y] {
                if t.iter().all(|&v| inv[v] != usize::MAX) {
                    tmp.clear();
                    tmp.extend(t.iter().map(|&v| inv[v]));
                    if !ia.holds(rel, tmp) {
                        return false;
                    }
                }
            }
        }
        true
    }

    let _ = rec(0, &ia, &ib, &mut map, &mut inv, &mut tmp, &allow, &compatible, budget, &mut visit)?;
    Ok(())
}

/// Every induced embedding of `a` into `b`, lexicographically ordered.
pub fn enumerate_embeddings(a: &FiniteStructure, b: &FiniteStructure) -> Result<Vec<Embedding>> {
    enumerate_embeddings_with(a, b, &mut Budget::default())
}

pub fn enumerate_embeddings_with(a: &FiniteStructure, b: &FiniteStructure, budget: &mut Budget) -> Result<Vec<Embedding>> {
    let mut out = Vec::new();
    search(a, b, Mode::Embedding, |_, _| true, budget, |e| {
        out.push(e.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

pub fn find_embedding(a: &FiniteStructure, b: &FiniteStructure, budget: &mut Budget) -> Result<Option<Embedding>> {
    let mut found = None;
    search(a, b, Mode::Embedding, |_, _| true, budget, |e| {
        found = Some(e.clone());
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// A witness isomorphism, if any.
pub fn is_isomorphic(a: &FiniteStructure, b: &FiniteStructure) -> Result<Option<Embedding>> {
    is_isomorphic_with(a, b, &mut Budget::default())
}

pub fn is_isomorphic_with(a: &FiniteStructure, b: &FiniteStructure, budget: &mut Budget) -> Result<Option<Embedding>> {
    let mut found = None;
    search(a, b, Mode::Isomorphism, |_, _| true, budget, |e| {
        found = Some(e.clone());
        ControlFlow::Break(())
    })?;
    Ok(found)
}

pub fn automorphisms(a: &FiniteStructure) -> Result<Vec<Embedding>> {
    let mut out = Vec::new();
    search(a, a, Mode::Isomorphism, |_, _| true, &mut Budget::default(), |e| {
        out.push(e.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}
