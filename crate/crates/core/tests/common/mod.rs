#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use bigmcg::fraisse::{Bounds, FiniteStructure, Signature, StructureClass};

pub fn graph_sig() -> Arc<Signature> {
    Arc::new(Signature::new(vec![("E".into(), 2)]).unwrap())
}

pub fn order_sig() -> Arc<Signature> {
    Arc::new(Signature::new(vec![("lt".into(), 2)]).unwrap())
}

pub fn graph(n: usize, edges: &[(usize, usize)]) -> FiniteStructure {
    let tuples = edges.iter().flat_map(|&(u, v)| [vec![u, v], vec![v, u]]).collect();
    FiniteStructure::new(graph_sig(), n, vec![tuples]).unwrap()
}

pub fn cycle(n: usize) -> FiniteStructure {
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    graph(n, &edges)
}

pub fn chain(n: usize) -> FiniteStructure {
    let t = (0..n).flat_map(|i| (i + 1..n).map(move |j| vec![i, j])).collect();
    FiniteStructure::new(order_sig(), n, vec![t]).unwrap()
}

pub fn orders(max: usize, source: usize, target: usize) -> StructureClass {
    StructureClass::new(order_sig(), (1..=max).map(chain).collect(), Bounds { source, target }).unwrap()
}

/// All graphs on `n` vertices as edge lists, unfiltered.
pub fn labeled_graphs(n: usize) -> Vec<FiniteStructure> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    (0u32..(1 << pairs.len()))
        .map(|mask| {
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|(_, &e)| e).collect();
            graph(n, &edges)
        })
        .collect()
}

/// One graph per isomorphism type, sizes `1..=max`, filtered by `keep`.
pub fn graph_types(max: usize, keep: impl Fn(&FiniteStructure) -> bool) -> Vec<FiniteStructure> {
    let mut out = Vec::new();
    for n in 1..=max {
        let mut seen = BTreeSet::new();
        for g in labeled_graphs(n) {
            if !keep(&g) {
                continue;
            }
            let c = g.canonical_form().unwrap();
            if seen.insert(c.relations().to_vec()) {
                out.push(c);
            }
        }
    }
    out
}

pub fn max_degree(g: &FiniteStructure) -> usize {
    (0..g.size()).map(|v| g.tuples(0).iter().filter(|t| t[0] == v).count()).max().unwrap_or(0)
}

pub fn graphs(max: usize, source: usize, target: usize) -> StructureClass {
    StructureClass::new(graph_sig(), graph_types(max, |_| true), Bounds { source, target }).unwrap()
}

pub fn degree_two_graphs(max: usize, source: usize, target: usize) -> StructureClass {
    StructureClass::new(graph_sig(), graph_types(max, |g| max_degree(g) <= 2), Bounds { source, target }).unwrap()
}

/// Equivalence relations with at most two classes, as `same` and `apart`.
pub fn two_class_sig() -> Arc<Signature> {
    Arc::new(Signature::new(vec![("same".into(), 2), ("apart".into(), 2)]).unwrap())
}

pub fn partition(labels: &[usize]) -> FiniteStructure {
    let n = labels.len();
    let mut same = Vec::new();
    let mut apart = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if labels[i] == labels[j] {
                same.push(vec![i, j]);
            } else {
                apart.push(vec![i, j]);
            }
        }
    }
    FiniteStructure::new(two_class_sig(), n, vec![same, apart]).unwrap()
}

pub fn two_classes(source: usize, target: usize) -> StructureClass {
    let members = vec![
        partition(&[0]),
        partition(&[0, 0]),
        partition(&[0, 1]),
        partition(&[0, 0, 0]),
        partition(&[0, 0, 1]),
    ];
    StructureClass::new(two_class_sig(), members, Bounds { source, target }).unwrap()
}

/// Brute-force automorphism group over all permutations.
pub fn brute_automorphisms(k: &FiniteStructure) -> Vec<Vec<usize>> {
    let mut perm: Vec<usize> = (0..k.size()).collect();
    let mut out = Vec::new();
    loop {
        if k.check_automorphism(&perm).is_ok() {
            out.push(perm.clone());
        }
        if !bigmcg::fraisse::next_permutation(&mut perm) {
            break;
        }
    }
    out
}

/// Every injective map `0..a -> 0..b`.
pub fn injections(a: usize, b: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(a: usize, b: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == a {
            out.push(cur.clone());
            return;
        }
        for y in 0..b {
            if !cur.contains(&y) {
                cur.push(y);
                rec(a, b, cur, out);
                cur.pop();
            }
        }
    }
    rec(a, b, &mut cur, &mut out);
    out
}

/// Whether `map` is an induced embedding, checked tuple by tuple.
pub fn brute_is_embedding(a: &FiniteStructure, b: &FiniteStructure, map: &[usize]) -> bool {
    let n = a.size();
    for rel in 0..a.signature().len() {
        let arity = a.signature().arity(rel) as u32;
        for code in 0..n.pow(arity) {
            let tuple: Vec<usize> = (0..arity).map(|p| code / n.pow(p) % n).collect();
            let image: Vec<usize> = tuple.iter().map(|&x| map[x]).collect();
            if a.holds(rel, &tuple) != b.holds(rel, &image) {
                return false;
            }
        }
    }
    true
}

pub fn brute_embeddings(a: &FiniteStructure, b: &FiniteStructure) -> Vec<Vec<usize>> {
    injections(a.size(), b.size()).into_iter().filter(|m| brute_is_embedding(a, b, m)).collect()
}
