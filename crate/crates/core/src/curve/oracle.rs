//! Independent reference for the coordinate action.
//!
//! A curve is stored as its sequence of crossings with the arcs running
//! straight down from each puncture to the boundary: a cyclic word in the
//! free generators `x_1..x_n` (`x_k` goes over the punctures left of `k`,
//! around `k` anticlockwise and back). Half-twists act by the Artin
//! substitution and free cancellation removes bigons, so a cyclically reduced
//! word is in minimal position with the arcs. Crossings with the upward arcs
//! come from rewriting in the dual generators that pass *under* the
//! punctures, and crossings with the vertical chords are read off from
//! consecutive letters lying on opposite sides of the chord.

use num_bigint::BigInt;

use crate::error::{Error, Result};

use super::braid::{BraidWord, Generator};
use super::coords::MultiCurveCoords;
use super::round::RoundCurve;

/// Letters are `±k` for `x_k^{±1}`, `1 <= k <= n`.
pub type Letter = i32;

/// Maximum total word length the oracle will carry.
pub const ORACLE_LETTER_BUDGET: usize = 1 << 22;

/// A multicurve as a list of cyclically reduced crossing words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingCurve {
    n: usize,
    components: Vec<Vec<Letter>>,
}

impl CrossingCurve {
    pub fn round(n: usize, c: RoundCurve) -> Self {
        let word = (c.first() as Letter..=c.last() as Letter).collect();
        CrossingCurve { n, components: vec![word] }
    }

    pub fn from_words(n: usize, components: Vec<Vec<Letter>>) -> Result<Self> {
        for w in &components {
            if w.iter().any(|&l| l == 0 || l.unsigned_abs() as usize > n) {
                return Err(Error::validity("letter out of range"));
            }
        }
        let components = components.into_iter().map(cyclic_reduce).filter(|w| !w.is_empty()).collect();
        Ok(CrossingCurve { n, components })
    }

    pub fn punctures(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[Vec<Letter>] {
        &self.components
    }

    fn letters(&self) -> usize {
        self.components.iter().map(Vec::len).sum()
    }
}

/// Applies `w` left to right to an explicit curve.
pub fn oracle_act(curve: &CrossingCurve, w: &BraidWord) -> Result<CrossingCurve> {
    let n = curve.n;
    if w.max_index() >= n {
        return Err(Error::validity(format!("word uses strands beyond {n}")));
    }
    let mut cur = curve.clone();
    for &g in w.generators() {
        cur.components = cur.components.iter().map(|c| cyclic_reduce(substitute(c, g))).collect();
        if cur.letters() > ORACLE_LETTER_BUDGET {
            return Err(Error::Resource(format!(
                "oracle curve exceeded {ORACLE_LETTER_BUDGET} crossings"
            )));
        }
    }
    cur.components.retain(|c| !c.is_empty());
    Ok(cur)
}

fn image(letter: Letter, g: Generator) -> Vec<Letter> {
    let i = g.index as Letter;
    let k = letter.abs();
    let forward: Vec<Letter> = match (g.inverse, k) {
        (false, k) if k == i => vec![i, i + 1, -i],
        (false, k) if k == i + 1 => vec![i],
        (true, k) if k == i => vec![i + 1],
        (true, k) if k == i + 1 => vec![-(i + 1), i, i + 1],
        (_, k) => vec![k],
    };
    if letter > 0 {
        forward
    } else {
        forward.iter().rev().map(|l| -l).collect()
    }
}

fn substitute(word: &[Letter], g: Generator) -> Vec<Letter> {
    let mut out = Vec::with_capacity(word.len() + 4);
    for &l in word {
        for m in image(l, g) {
            if out.last() == Some(&-m) {
                out.pop();
            } else {
                out.push(m);
            }
        }
    }
    out
}

fn free_reduce(word: Vec<Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for l in word {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn cyclic_reduce(word: Vec<Letter>) -> Vec<Letter> {
    let w = free_reduce(word);
    let mut lo = 0;
    let mut hi = w.len();
    while hi - lo >= 2 && w[lo] == -w[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    w[lo..hi].to_vec()
}

/// Rewrites a word in the over-generators into the under-generators
/// `z_k = (x_1..x_{k-1}) x_k (x_1..x_{k-1})^{-1}`.
fn to_under_basis(word: &[Letter]) -> Vec<Letter> {
    let mut out = Vec::new();
    for &l in word {
        let k = l.abs();
        // x_k = (z_{k-1} .. z_1)^{-1} z_k (z_{k-1} .. z_1)
        let mut img: Vec<Letter> = (1..k).map(|j| -j).collect();
        img.push(k);
        img.extend((1..k).rev());
        if l < 0 {
            img = img.iter().rev().map(|m| -m).collect();
        }
        for m in img {
            if out.last() == Some(&-m) {
                out.pop();
            } else {
                out.push(m);
            }
        }
    }
    cyclic_reduce(out)
}

/// Crossing counts of one reduced component with the downward arcs,
/// upward arcs and vertical chords (indexed from 1; index 0 unused).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ArcCounts {
    pub below: Vec<u64>,
    pub above: Vec<u64>,
    pub chords: Vec<u64>,
}

pub fn arc_counts(curve: &CrossingCurve) -> ArcCounts {
    let n = curve.n;
    let mut counts = ArcCounts { below: vec![0; n + 1], above: vec![0; n + 1], chords: vec![0; n] };
    for w in &curve.components {
        for &l in w {
            counts.below[l.unsigned_abs() as usize] += 1;
        }
        for l in to_under_basis(w) {
            counts.above[l.unsigned_abs() as usize] += 1;
        }
        let len = w.len();
        for t in 0..len {
            let p = w[t].unsigned_abs() as usize;
            let q = w[(t + 1) % len].unsigned_abs() as usize;
            let (lo, hi) = if p < q { (p, q) } else { (q, p) };
            for chord in counts.chords.iter_mut().take(hi).skip(lo) {
                *chord += 1;
            }
        }
    }
    counts
}

/// Converts an explicit curve into Dynnikov coordinates.
pub fn oracle_coords(curve: &CrossingCurve) -> Result<MultiCurveCoords<BigInt>> {
    let n = curve.n;
    let c = arc_counts(curve);
    let mut a = Vec::with_capacity(n - 2);
    let mut b = Vec::with_capacity(n - 2);
    for k in 1..=n - 2 {
        let da = BigInt::from(c.below[k + 1]) - BigInt::from(c.above[k + 1]);
        let db = BigInt::from(c.chords[k]) - BigInt::from(c.chords[k + 1]);
        a.push(da / 2);
        b.push(db / 2);
    }
    MultiCurveCoords::new(n, a, b)
}

/// Intersection with a round curve from the splitting of the free group
/// along it: letters inside `c` form one vertex group, everything else plus
/// the boundary word of `c` the other. Each maximal inside block that is not
/// a power of the boundary word is a syllable, and contributes two crossings.
pub fn oracle_intersection(curve: &CrossingCurve, c: RoundCurve) -> u64 {
    let (lo, hi) = (c.first() as Letter, c.last() as Letter);
    let inside = |l: Letter| (lo..=hi).contains(&l.abs());
    let boundary: Vec<Letter> = (lo..=hi).collect();
    let mut total = 0;
    for w in &curve.components {
        let Some(start) = w.iter().position(|&l| !inside(l)) else { continue };
        let len = w.len();
        let rotated: Vec<Letter> = (0..len).map(|t| w[(start + t) % len]).collect();
        let mut t = 0;
        while t < len {
            if !inside(rotated[t]) {
                t += 1;
                continue;
            }
            let from = t;
            while t < len && inside(rotated[t]) {
                t += 1;
            }
            if !is_power_of(&rotated[from..t], &boundary) {
                total += 2;
            }
        }
    }
    total
}

fn is_power_of(block: &[Letter], base: &[Letter]) -> bool {
    if !block.len().is_multiple_of(base.len()) {
        return false;
    }
    let inv: Vec<Letter> = base.iter().rev().map(|l| -l).collect();
    let unit = if block[0] == base[0] { base } else { &inv[..] };
    block.chunks(unit.len()).all(|ch| ch == unit)
}
