use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use crate::error::{Error, Result};

use super::embed::{automorphisms, enumerate_embeddings_with, Budget};
use super::structure::{subsets_of_size, FiniteStructure, Signature, Tuple};

/// Largest structure accepted by [`fraissefy`] and [`check_ultrahomogeneous`].
pub const FRAISSEFY_SIZE_LIMIT: usize = 7;

/// Closure of `generators` under composition, sorted; always contains the
/// identity.
pub fn group_closure(n: usize, generators: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in generators {
            let q: Vec<usize> = p.iter().map(|&x| g[x]).collect();
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = seen.into_iter().collect();
    out.sort();
    out
}

fn injective_tuples(n: usize, len: usize) -> Vec<Tuple> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    let mut used = vec![false; n];
    fn rec(n: usize, len: usize, cur: &mut Tuple, used: &mut [bool], out: &mut Vec<Tuple>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(n, len, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    rec(n, len, &mut cur, &mut used, &mut out);
    out
}

fn fresh_name(taken: &HashSet<String>, base: String) -> String {
    let mut name = base;
    while taken.contains(&name) {
        name.insert(0, '_');
    }
    name
}

/// Enriches `k` with one relation per orbit of injective `n`-tuples under the
/// group generated by `generators`, for every `1 <= n <= |k|`. Returns the
/// enriched structure and the group, sorted.
pub fn fraissefy(k: &FiniteStructure, generators: &[Vec<usize>]) -> Result<(FiniteStructure, Vec<Vec<usize>>)> {
    let n = k.size();
    if n > FRAISSEFY_SIZE_LIMIT {
        return Err(Error::Precondition(format!("structure has {n} elements, limit is {FRAISSEFY_SIZE_LIMIT}")));
    }
    for (index, g) in generators.iter().enumerate() {
        k.check_automorphism(g).map_err(|reason| Error::NotAutomorphism { index, reason })?;
    }
    let group = group_closure(n, generators);
    let mut rels: Vec<(String, usize)> = k.signature().relations().to_vec();
    let mut taken: HashSet<String> = rels.iter().map(|r| r.0.clone()).collect();
    let mut tuples: Vec<Vec<Tuple>> = k.relations().to_vec();
    for len in 1..=n {
        let mut assigned: HashSet<Tuple> = HashSet::new();
        let mut index = 0;
        for t in injective_tuples(n, len) {
            if assigned.contains(&t) {
                continue;
            }
            let orbit: BTreeSet<Tuple> = group.iter().map(|g| t.iter().map(|&x| g[x]).collect()).collect();
            assigned.extend(orbit.iter().cloned());
            let name = fresh_name(&taken, format!("orbit{len}_{index}"));
            taken.insert(name.clone());
            rels.push((name, len));
            tuples.push(orbit.into_iter().collect());
            index += 1;
        }
    }
    let max_arity = n.max(k.signature().max_arity());
    let sig = Arc::new(Signature::with_max_arity(rels, max_arity)?);
    Ok((FiniteStructure::new(sig, n, tuples)?, group))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ultrahomogeneity {
    Ultrahomogeneous,
    /// `domain[i] -> image[i]` is an isomorphism of induced substructures
    /// that no automorphism extends.
    NotUltrahomogeneous { domain: Vec<usize>, image: Vec<usize> },
}

impl Ultrahomogeneity {
    pub fn holds(&self) -> bool {
        matches!(self, Ultrahomogeneity::Ultrahomogeneous)
    }
}

pub fn check_ultrahomogeneous(k: &FiniteStructure) -> Result<Ultrahomogeneity> {
    if k.size() > FRAISSEFY_SIZE_LIMIT {
        return Err(Error::Precondition(format!(
            "structure has {} elements, limit is {FRAISSEFY_SIZE_LIMIT}",
            k.size()
        )));
    }
    let auts = automorphisms(k)?;
    let mut budget = Budget::default();
    for size in 1..=k.size() {
        for dom in subsets_of_size(k.size(), size) {
            let restrictions: HashSet<Vec<usize>> =
                auts.iter().map(|s| dom.iter().map(|&x| s.map[x]).collect()).collect();
            let sub = k.induced(&dom);
            for e in enumerate_embeddings_with(&sub, k, &mut budget)? {
                if !restrictions.contains(&e.map) {
                    return Ok(Ultrahomogeneity::NotUltrahomogeneous { domain: dom, image: e.map });
                }
            }
        }
    }
    Ok(Ultrahomogeneity::Ultrahomogeneous)
}
