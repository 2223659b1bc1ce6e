use std::collections::BTreeSet;

use crate::error::{Error, Result};

use super::expr::EndSpaceExpr;
use super::normal::embeds;

use EndSpaceExpr::*;

/// Maximum number of decompositions enumerated before giving up.
pub const DECOMPOSITION_BUDGET: usize = 20_000;

type Pieces = Vec<EndSpaceExpr>;

/// Partitions of the space into at least two clopen pieces generated by the
/// expression's natural basis: grouping summands, peeling `k <= depth` blocks
/// off a sequence, and halving Cantor sets, refined recursively `depth` times.
pub fn clopen_decompositions(expr: &EndSpaceExpr, depth: usize) -> Result<Vec<Pieces>> {
    if depth == 0 {
        return Err(Error::validity("decomposition depth must be at least 1"));
    }
    let mut seen = BTreeSet::new();
    for d in splits(expr, depth)? {
        seen.insert(d);
        if seen.len() > DECOMPOSITION_BUDGET {
            return Err(budget());
        }
    }
    Ok(seen.into_iter().collect())
}

fn budget() -> Error {
    Error::Resource(format!("more than {DECOMPOSITION_BUDGET} clopen decompositions"))
}

fn sorted(mut p: Pieces) -> Pieces {
    p.sort();
    p
}

/// Decompositions with at least two pieces.
fn splits(e: &EndSpaceExpr, depth: usize) -> Result<Vec<Pieces>> {
    let base: Vec<Pieces> = match e {
        Pt(_) => Vec::new(),
        Cantor(_) => vec![vec![e.clone(), e.clone()]],
        Omega { child, .. } => (1..=depth).map(|k| vec![child.times(k), e.clone()]).collect(),
        Sum(parts) if bell(parts.len()) > DECOMPOSITION_BUDGET => return Err(budget()),
        Sum(parts) => set_partitions(parts.len())
            .into_iter()
            .filter(|blocks| blocks.len() >= 2)
            .map(|blocks| {
                blocks.iter().map(|b| EndSpaceExpr::sum(b.iter().map(|&i| parts[i].clone()))).collect()
            })
            .collect(),
    };
    if depth == 1 {
        return Ok(base.into_iter().map(sorted).collect());
    }
    let mut out = BTreeSet::new();
    for pieces in base {
        let mut acc: Vec<Pieces> = vec![Vec::new()];
        for p in &pieces {
            let mut options = vec![vec![p.clone()]];
            options.extend(splits(p, depth - 1)?);
            let mut next = Vec::with_capacity(acc.len() * options.len());
            for a in &acc {
                for o in &options {
                    let mut v = a.clone();
                    v.extend(o.iter().cloned());
                    next.push(v);
                }
            }
            if next.len() > DECOMPOSITION_BUDGET {
                return Err(budget());
            }
            acc = next;
        }
        for d in acc {
            out.insert(sorted(d));
            if out.len() > DECOMPOSITION_BUDGET {
                return Err(budget());
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Number of set partitions of an `n`-element set, saturating.
fn bell(n: usize) -> usize {
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            next.push(next.last().unwrap().saturating_add(x));
        }
        row = next;
    }
    row[0]
}

/// All set partitions of `0..n`, blocks in order of their least element.
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    fn go(i: usize, n: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(i);
            go(i + 1, n, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![i]);
        go(i + 1, n, blocks, out);
        blocks.pop();
    }
    go(0, n, &mut blocks, &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SelfSimilarity {
    HoldsUpToDepth,
    FailsWithWitness(Pieces),
}

/// Checks that every decomposition up to `depth` has a piece containing a
/// clopen copy of the whole space.
pub fn is_self_similar_bounded(expr: &EndSpaceExpr, depth: usize) -> Result<SelfSimilarity> {
    for pieces in clopen_decompositions(expr, depth)? {
        let mut found = false;
        for p in &pieces {
            if embeds(expr, p)? {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(SelfSimilarity::FailsWithWitness(pieces));
        }
    }
    Ok(SelfSimilarity::HoldsUpToDepth)
}
