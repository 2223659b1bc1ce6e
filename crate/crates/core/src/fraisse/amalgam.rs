use std::collections::{HashMap, HashSet};
use std::ops::ControlFlow;

use crate::error::{Error, Result};

use super::embed::{same_signature, Budget, Embedding};
use super::structure::{next_permutation, FiniteStructure, Tuple};

/// Largest member size for which all labelings are tabulated.
pub const MEMBERSHIP_SIZE_LIMIT: usize = 8;

/// Local membership test: a structure belongs to the class when each of its
/// induced substructures with at most `max_size` elements is isomorphic to a
/// listed member.
#[derive(Debug, Clone)]
pub struct Membership {
    max_size: usize,
    arities: Vec<usize>,
    keys: HashSet<Vec<u64>>,
}

fn labeled_key(arities: &[usize], elems: &[usize], holds: &mut impl FnMut(usize, &[usize]) -> bool) -> Vec<u64> {
    let n = elems.len();
    let mut key = vec![n as u64];
    let mut word = 0u64;
    let mut bit = 0;
    let mut tuple = Vec::new();
    let mut idx = Vec::new();
    for (rel, &arity) in arities.iter().enumerate() {
        idx.clear();
        idx.resize(arity, 0);
        if n == 0 {
            continue;
        }
        loop {
            tuple.clear();
            tuple.extend(idx.iter().map(|&i| elems[i]));
            if holds(rel, &tuple) {
                word |= 1 << bit;
            }
            bit += 1;
            if bit == 64 {
                key.push(word);
                word = 0;
                bit = 0;
            }
            let mut p = arity;
            loop {
                if p == 0 {
                    break;
                }
                p -= 1;
                idx[p] += 1;
                if idx[p] < n {
                    break;
                }
                idx[p] = 0;
                if p == 0 {
                    p = usize::MAX;
                    break;
                }
            }
            if p == usize::MAX {
                break;
            }
        }
    }
    key.push(word);
    key
}

impl Membership {
    pub fn new(members: &[FiniteStructure]) -> Result<Self> {
        let arities = match members.first() {
            Some(m) => m.signature().relations().iter().map(|r| r.1).collect(),
            None => Vec::new(),
        };
        let max_size = members.iter().map(FiniteStructure::size).max().unwrap_or(0);
        if max_size > MEMBERSHIP_SIZE_LIMIT {
            return Err(Error::Resource(format!(
                "class members larger than {MEMBERSHIP_SIZE_LIMIT} elements are not supported"
            )));
        }
        let mut keys = HashSet::new();
        for m in members {
            let mut perm: Vec<usize> = (0..m.size()).collect();
            loop {
                keys.insert(labeled_key(&arities, &perm, &mut |rel, t| m.holds(rel, t)));
                if !next_permutation(&mut perm) {
                    break;
                }
            }
        }
        Ok(Membership { max_size, arities, keys })
    }

    pub fn max_size(&self) -> usize {
        self.max_size
    }

    /// Checks the induced substructure on `elems` through `holds`.
    pub fn admits_local(&self, elems: &[usize], mut holds: impl FnMut(usize, &[usize]) -> bool) -> bool {
        self.keys.contains(&labeled_key(&self.arities, elems, &mut holds))
    }

    /// Whether `s` is in the class: every substructure of size `1..=max_size` is.
    pub fn admits(&self, s: &FiniteStructure) -> bool {
        let k = self.max_size.min(s.size());
        (1..=k).all(|size| {
            super::structure::subsets_of_size(s.size(), size)
                .iter()
                .all(|sub| self.admits_local(sub, |rel, t| s.holds(rel, t)))
        })
    }
}

/// Two embeddings out of a common base.
#[derive(Debug, Clone, Copy)]
pub struct Span<'a> {
    pub base: &'a FiniteStructure,
    pub left: &'a FiniteStructure,
    pub right: &'a FiniteStructure,
    pub f: &'a Embedding,
    pub g: &'a Embedding,
}

/// `structure` with embeddings of both sides agreeing on the base. The left
/// side always embeds as the identity on `0..left.size()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Amalgam {
    pub structure: FiniteStructure,
    pub left: Embedding,
    pub right: Embedding,
}

struct FreeSearch<'a> {
    left: &'a FiniteStructure,
    right: &'a FiniteStructure,
    membership: &'a Membership,
    n: usize,
    /// Preimage in `right` of each element of the amalgam.
    right_inv: Vec<Option<usize>>,
    free: Vec<(usize, Tuple)>,
    free_index: HashMap<(usize, Tuple), usize>,
    values: Vec<Option<bool>>,
    group_of_tuple: Vec<usize>,
    group_last: Vec<usize>,
    groups: Vec<Vec<usize>>,
    group_index: HashMap<Vec<usize>, usize>,
}

impl<'a> FreeSearch<'a> {
    fn holds(&self, rel: usize, t: &[usize]) -> bool {
        let nb = self.left.size();
        if t.iter().all(|&x| x < nb) {
            return self.left.holds(rel, t);
        }
        if t.iter().all(|&x| self.right_inv[x].is_some()) {
            let pre: Tuple = t.iter().map(|&x| self.right_inv[x].unwrap()).collect();
            return self.right.holds(rel, &pre);
        }
        match self.free_index.get(&(rel, t.to_vec())) {
            Some(&i) => self.values[i].unwrap_or(false),
            None => false,
        }
    }

    /// Group index of the element set `set`, if it carries free tuples.
    fn group(&self, set: &[usize]) -> Option<usize> {
        self.group_index.get(set).copied()
    }

    /// Whether every subset of `s` containing `z` has group index `<= gi`.
    fn complete_with(&self, s: &[usize], z: usize, gi: usize) -> bool {
        let k = s.len();
        for mask in 0u32..(1 << k) {
            let mut sub: Vec<usize> = (0..k).filter(|&i| mask & (1 << i) != 0).map(|i| s[i]).collect();
            sub.push(z);
            if sub.len() < 2 {
                continue;
            }
            sub.sort_unstable();
            if let Some(g) = self.group(&sub) {
                if g > gi {
                    return false;
                }
            }
        }
        true
    }

    /// Checks every substructure that became fully decided with group `gi`.
    fn check_group(&self, gi: usize) -> bool {
        let base = self.groups[gi].clone();
        let m = self.membership.max_size();
        if base.len() > m {
            return true;
        }
        let mut ok = true;
        let mut current = base.clone();
        self.extend(&mut current, 0, gi, m, &mut ok);
        ok
    }

    fn extend(&self, current: &mut Vec<usize>, start: usize, gi: usize, m: usize, ok: &mut bool) {
        if !*ok {
            return;
        }
        let mut sorted = current.clone();
        sorted.sort_unstable();
        if !self.membership.admits_local(&sorted, |rel, t| self.holds(rel, t)) {
            *ok = false;
            return;
        }
        if current.len() == m {
            return;
        }
        for z in start..self.n {
            if current.contains(&z) {
                continue;
            }
            if !self.complete_with(current, z, gi) {
                continue;
            }
            current.push(z);
            self.extend(current, z + 1, gi, m, ok);
            current.pop();
            if !*ok {
                return;
            }
        }
    }

    fn dfs(
        &mut self,
        i: usize,
        budget: &mut Budget,
        emit: &mut dyn FnMut(&FreeSearch) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        if i == self.free.len() {
            return Ok(emit(self));
        }
        for value in [false, true] {
            budget.tick()?;
            self.values[i] = Some(value);
            let g = self.group_of_tuple[i];
            if self.group_last[g] == i && !self.check_group(g) {
                continue;
            }
            if let ControlFlow::Break(()) = self.dfs(i + 1, budget, emit)? {
                self.values[i] = None;
                return Ok(ControlFlow::Break(()));
            }
        }
        self.values[i] = None;
        Ok(ControlFlow::Continue(()))
    }

    fn build(&self, right_map: &[usize]) -> Amalgam {
        let sig = self.left.signature().clone();
        let mut relations: Vec<Vec<Tuple>> = self.left.relations().to_vec();
        for (rel, tuples) in self.right.relations().iter().enumerate() {
            for t in tuples {
                relations[rel].push(t.iter().map(|&x| right_map[x]).collect());
            }
        }
        for (i, (rel, t)) in self.free.iter().enumerate() {
            if self.values[i] == Some(true) {
                relations[*rel].push(t.clone());
            }
        }
        Amalgam {
            structure: FiniteStructure::from_parts(sig, self.n, relations),
            left: Embedding::identity(self.left.size()),
            right: Embedding::new(right_map.to_vec()),
        }
    }
}

/// All tuples of the given arity over `0..n`, lexicographically.
fn all_tuples(n: usize, arity: usize, budget: &mut Budget, mut visit: impl FnMut(&[usize])) -> Result<()> {
    if n == 0 {
        return Ok(());
    }
    let mut idx = vec![0; arity];
    loop {
        budget.tick()?;
        visit(&idx);
        let mut p = arity;
        loop {
            if p == 0 {
                return Ok(());
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < n {
                break;
            }
            idx[p] = 0;
        }
    }
}

/// Enumerates amalgams of a span whose universe is the union of the two
/// images, fewest elements first, then lexicographically by gluing and by
/// free-tuple assignment (absent before present). Every amalgam restricts to
/// one of these, so the enumeration is exhaustive for hereditary classes.
pub fn for_each_amalgam(
    span: Span,
    membership: &Membership,
    max_size: Option<usize>,
    budget: &mut Budget,
    mut visit: impl FnMut(&Amalgam) -> ControlFlow<()>,
) -> Result<()> {
    same_signature(span.left, span.right)?;
    same_signature(span.base, span.left)?;
    if !span.f.is_embedding(span.base, span.left) || !span.g.is_embedding(span.base, span.right) {
        return Err(Error::Precondition("span maps are not embeddings".into()));
    }
    let nb = span.left.size();
    let nc = span.right.size();
    let mut fixed: Vec<Option<usize>> = vec![None; nc];
    let mut left_used = vec![false; nb];
    for a in 0..span.base.size() {
        fixed[span.g.apply(a)] = Some(span.f.apply(a));
        left_used[span.f.apply(a)] = true;
    }
    let c_rest: Vec<usize> = (0..nc).filter(|&c| fixed[c].is_none()).collect();
    let b_rest: Vec<usize> = (0..nb).filter(|&b| !left_used[b]).collect();
    let only_unary = span.left.signature().max_arity() <= 1;

    for fresh in 0..=c_rest.len() {
        if let Some(limit) = max_size {
            if nb + fresh > limit {
                break;
            }
        }
        let identified = c_rest.len() - fresh;
        if identified > b_rest.len() {
            continue;
        }
        let mut choice: Vec<Option<usize>> = vec![None; c_rest.len()];
        let mut used = left_used.clone();
        let flow = glue(
            &span,
            membership,
            &c_rest,
            &b_rest,
            0,
            fresh,
            0,
            &mut choice,
            &mut used,
            &fixed,
            only_unary,
            budget,
            &mut visit,
        )?;
        if flow.is_break() {
            return Ok(());
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn glue(
    span: &Span,
    membership: &Membership,
    c_rest: &[usize],
    b_rest: &[usize],
    pos: usize,
    fresh: usize,
    fresh_used: usize,
    choice: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
    fixed: &[Option<usize>],
    only_unary: bool,
    budget: &mut Budget,
    visit: &mut dyn FnMut(&Amalgam) -> ControlFlow<()>,
) -> Result<ControlFlow<()>> {
    if pos == c_rest.len() {
        if fresh_used != fresh {
            return Ok(ControlFlow::Continue(()));
        }
        return realize(span, membership, c_rest, choice, fixed, fresh, only_unary, budget, visit);
    }
    let remaining = c_rest.len() - pos;
    let fresh_left = fresh - fresh_used;
    if remaining > fresh_left {
        for &b in b_rest {
            if used[b] {
                continue;
            }
            budget.tick()?;
            used[b] = true;
            choice[pos] = Some(b);
            let flow = glue(span, membership, c_rest, b_rest, pos + 1, fresh, fresh_used, choice, used, fixed, only_unary, budget, visit)?;
            used[b] = false;
            choice[pos] = None;
            if flow.is_break() {
                return Ok(flow);
            }
        }
    }
    if fresh_left > 0 {
        choice[pos] = None;
        let flow = glue(span, membership, c_rest, b_rest, pos + 1, fresh, fresh_used + 1, choice, used, fixed, only_unary, budget, visit)?;
        if flow.is_break() {
            return Ok(flow);
        }
    }
    Ok(ControlFlow::Continue(()))
}

#[allow(clippy::too_many_arguments)]
fn realize(
    span: &Span,
    membership: &Membership,
    c_rest: &[usize],
    choice: &[Option<usize>],
    fixed: &[Option<usize>],
    fresh: usize,
    only_unary: bool,
    budget: &mut Budget,
    visit: &mut dyn FnMut(&Amalgam) -> ControlFlow<()>,
) -> Result<ControlFlow<()>> {
    let (left, right) = (span.left, span.right);
    let nb = left.size();
    let n = nb + fresh;
    let mut right_map: Vec<usize> = fixed.iter().map(|x| x.unwrap_or(usize::MAX)).collect();
    let mut next = nb;
    for (i, &c) in c_rest.iter().enumerate() {
        right_map[c] = match choice[i] {
            Some(b) => b,
            None => {
                next += 1;
                next - 1
            }
        };
    }
    let mut right_inv = vec![None; n];
    for (c, &d) in right_map.iter().enumerate() {
        right_inv[d] = Some(c);
    }
    // the two sides must agree where their images overlap
    for (rel, tuples) in right.relations().iter().enumerate() {
        for t in tuples {
            let img: Tuple = t.iter().map(|&x| right_map[x]).collect();
            if img.iter().all(|&x| x < nb) && !left.holds(rel, &img) {
                return Ok(ControlFlow::Continue(()));
            }
        }
    }
    for (rel, tuples) in left.relations().iter().enumerate() {
        for t in tuples {
            if t.iter().all(|&x| right_inv[x].is_some()) {
                let pre: Tuple = t.iter().map(|&x| right_inv[x].unwrap()).collect();
                if !right.holds(rel, &pre) {
                    return Ok(ControlFlow::Continue(()));
                }
            }
        }
    }
    let left_only: Vec<bool> = (0..n).map(|x| x < nb && right_inv[x].is_none()).collect();
    let mut free = Vec::new();
    for (rel, (_, arity)) in left.signature().relations().iter().enumerate() {
        let mut local = Vec::new();
        all_tuples(n, *arity, budget, |t| {
            if t.iter().any(|&x| x >= nb) && t.iter().any(|&x| left_only[x]) {
                local.push((rel, t.to_vec()));
            }
        })?;
        free.extend(local);
    }
    let set_of = |t: &[usize]| {
        let mut s = t.to_vec();
        s.sort_unstable();
        s.dedup();
        s
    };
    let mut sets: Vec<Vec<usize>> = free.iter().map(|(_, t)| set_of(t)).collect();
    // every subset of a group comes before it
    sets.sort_by(|a, b| (a.last(), a.len(), a).cmp(&(b.last(), b.len(), b)));
    sets.dedup();
    let group_index: HashMap<Vec<usize>, usize> = sets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    free.sort_by_key(|(rel, t)| (group_index[&set_of(t)], *rel, t.clone()));
    let group_of_tuple: Vec<usize> = free.iter().map(|(_, t)| group_index[&set_of(t)]).collect();
    let mut group_last = vec![0; sets.len()];
    for (i, &g) in group_of_tuple.iter().enumerate() {
        group_last[g] = i;
    }
    let free_index = free.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
    let mut search = FreeSearch {
        left,
        right,
        membership,
        n,
        right_inv,
        values: vec![None; free.len()],
        free,
        free_index,
        group_of_tuple,
        group_last,
        groups: sets,
        group_index,
    };
    if only_unary && !mixed_subsets_ok(&search, budget)? {
        return Ok(ControlFlow::Continue(()));
    }
    let mut emit = |s: &FreeSearch| visit(&s.build(&right_map));
    search.dfs(0, budget, &mut emit)
}

/// Without relations of arity at least two, mixed subsets carry no free
/// tuples and are checked once up front.
fn mixed_subsets_ok(search: &FreeSearch, budget: &mut Budget) -> Result<bool> {
    let nb = search.left.size();
    let m = search.membership.max_size();
    for size in 2..=m.min(search.n) {
        for sub in super::structure::subsets_of_size(search.n, size) {
            budget.tick()?;
            let mixed = sub.iter().any(|&x| x >= nb) && sub.iter().any(|&x| x < nb && search.right_inv[x].is_none());
            if mixed && !search.membership.admits_local(&sub, |rel, t| search.holds(rel, t)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// First amalgam in enumeration order.
pub fn find_amalgam(span: Span, membership: &Membership, budget: &mut Budget) -> Result<Option<Amalgam>> {
    let mut found = None;
    for_each_amalgam(span, membership, None, budget, |a| {
        found = Some(a.clone());
        ControlFlow::Break(())
    })?;
    Ok(found)
}
