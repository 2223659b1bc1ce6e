use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

use super::expr::{list_ends, EndSpaceExpr, Mark, Multiplicity};
use super::ordinal::OrdinalCNF;

use EndSpaceExpr::*;

/// Cantor-Bendixson characteristic: the space is `omega^rank * count + 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Characteristic {
    Countable { rank: OrdinalCNF, count: u64 },
    NotCountable,
}

impl Characteristic {
    pub fn countable(self) -> Option<(OrdinalCNF, u64)> {
        match self {
            Characteristic::Countable { rank, count } => Some((rank, count)),
            Characteristic::NotCountable => None,
        }
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Characteristic::Countable { rank, count } => write!(f, "({rank}, {count})"),
            Characteristic::NotCountable => write!(f, "not countable"),
        }
    }
}

pub fn characteristic(expr: &EndSpaceExpr) -> Result<Characteristic> {
    if expr.has_cantor() {
        return Ok(Characteristic::NotCountable);
    }
    let (rank, count) = countable_characteristic(expr)?;
    Ok(Characteristic::Countable { rank, count })
}

fn countable_characteristic(e: &EndSpaceExpr) -> Result<(OrdinalCNF, u64)> {
    match e {
        Pt(_) => Ok((OrdinalCNF::zero(), 1)),
        Omega { child, .. } => Ok((countable_characteristic(child)?.0.succ()?, 1)),
        Sum(parts) => {
            let mut best: Option<(OrdinalCNF, u64)> = None;
            for p in parts {
                let (r, n) = countable_characteristic(p)?;
                best = match best {
                    Some((br, bn)) if br == r => Some((br, bn.checked_add(n).ok_or(Error::Overflow)?)),
                    Some((br, bn)) if br > r => Some((br, bn)),
                    _ => Some((r, n)),
                };
            }
            best.ok_or_else(|| Error::validity("empty sum"))
        }
        Cantor(_) => unreachable!("caller checks for Cantor nodes"),
    }
}

/// `count` copies of `omega^rank` built from points with the given mark.
pub fn canonical_countable(rank: u64, count: u64, mark: Mark) -> EndSpaceExpr {
    let mut single = Pt(mark);
    for _ in 0..rank {
        single = EndSpaceExpr::omega(single, mark);
    }
    single.times(count as usize)
}

/// Normal form of an expression: a homeomorphic expression in which
/// homeomorphic inputs of the supported shapes coincide syntactically.
pub fn normal_form(expr: &EndSpaceExpr) -> Result<EndSpaceExpr> {
    let mut cur = expr.clone();
    for _ in 0..64 {
        let next = pass(&cur)?;
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
    Err(Error::Resource("normalization did not stabilize".into()))
}

fn pass(e: &EndSpaceExpr) -> Result<EndSpaceExpr> {
    let out = match e {
        Pt(_) | Cantor(_) => e.clone(),
        Omega { child, limit } => {
            let child = dedup_summands(pass(child)?);
            if child == Cantor(*limit) {
                Cantor(*limit)
            } else {
                EndSpaceExpr::omega(child, *limit)
            }
        }
        Sum(parts) => {
            let parts = parts.iter().map(pass).collect::<Result<Vec<_>>>()?;
            let mut parts = EndSpaceExpr::sum(parts).summands().to_vec();
            parts.sort();
            parts.dedup_by(|a, b| matches!(a, Cantor(_)) && a == b);
            let mut i = 0;
            while i < parts.len() {
                let absorbed = (0..parts.len()).any(|j| j != i && absorbs(&parts[j], &parts[i]));
                if absorbed {
                    parts.remove(i);
                } else {
                    i += 1;
                }
            }
            EndSpaceExpr::sum(parts)
        }
    };
    uniform_collapse(out)
}

/// Summands of a sequence's repeated block can be listed once each.
fn dedup_summands(e: EndSpaceExpr) -> EndSpaceExpr {
    match e {
        Sum(mut parts) => {
            parts.sort();
            parts.dedup();
            EndSpaceExpr::sum(parts)
        }
        other => other,
    }
}

/// True when `big ⊔ small ≅ big` because `big` is a sequence whose
/// repeated block splits off a copy of `small`.
fn absorbs(big: &EndSpaceExpr, small: &EndSpaceExpr) -> bool {
    match big {
        Omega { child, .. } => splits_off(child, small),
        _ => false,
    }
}

/// True when `whole ≅ part ⊔ rest` for some clopen `rest`.
fn splits_off(whole: &EndSpaceExpr, part: &EndSpaceExpr) -> bool {
    if whole == part {
        return true;
    }
    match whole {
        Sum(parts) => parts.iter().any(|p| splits_off(p, part)),
        Omega { child, .. } => splits_off(child, part),
        _ => false,
    }
}

/// A countable subtree with a single mark is determined by its characteristic.
fn uniform_collapse(e: EndSpaceExpr) -> Result<EndSpaceExpr> {
    if e.has_cantor() {
        return Ok(e);
    }
    let mark = match (e.has_mark(Mark::Planar), e.has_mark(Mark::Nonplanar)) {
        (true, false) => Mark::Planar,
        (false, true) => Mark::Nonplanar,
        _ => return Ok(e),
    };
    let (rank, count) = countable_characteristic(&e)?;
    match rank.as_nat() {
        Some(r) => Ok(canonical_countable(r, count, mark)),
        None => Ok(e),
    }
}

/// Countable summands of a normal form with their joint characteristic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CountablePart {
    pub rank: OrdinalCNF,
    pub count: u64,
    pub marking_profile: EndSpaceExpr,
}

/// Canonical data of an end space; equal forms denote homeomorphic marked spaces.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalEndForm {
    pub characteristic: Characteristic,
    pub countable_part: Option<CountablePart>,
    pub cantor_parts: Vec<(Mark, EndSpaceExpr)>,
    pub raw_normal_form: EndSpaceExpr,
}

pub fn normalize(expr: &EndSpaceExpr) -> Result<CanonicalEndForm> {
    let nf = normal_form(expr)?;
    let (uncountable, countable): (Vec<_>, Vec<_>) = nf.summands().iter().cloned().partition(|p| p.has_cantor());
    let countable_part = if countable.is_empty() {
        None
    } else {
        let profile = EndSpaceExpr::sum(countable);
        let (rank, count) = countable_characteristic(&profile)?;
        Some(CountablePart { rank, count, marking_profile: profile })
    };
    let cantor_parts = uncountable
        .into_iter()
        .map(|p| {
            let mark = if p.has_mark(Mark::Nonplanar) { Mark::Nonplanar } else { Mark::Planar };
            (mark, p)
        })
        .collect();
    Ok(CanonicalEndForm { characteristic: characteristic(&nf)?, countable_part, cantor_parts, raw_normal_form: nf })
}

impl CanonicalEndForm {
    /// Deterministic `key: value` record.
    pub fn to_record(&self) -> String {
        let countable = match &self.countable_part {
            Some(c) => format!("({}, {}) {}", c.rank, c.count, c.marking_profile),
            None => "none".into(),
        };
        let cantor: Vec<String> = self
            .cantor_parts
            .iter()
            .map(|(m, e)| format!("{}:{e}", if *m == Mark::Nonplanar { "nonplanar" } else { "planar" }))
            .collect();
        format!(
            "normal_form: {}\ncharacteristic: {}\ncountable_part: {}\ncantor_parts: [{}]\n",
            self.raw_normal_form,
            self.characteristic,
            countable,
            cantor.join(", ")
        )
    }
}

fn add_mult(a: Multiplicity, b: Multiplicity) -> Multiplicity {
    use Multiplicity::*;
    match (a, b) {
        (CantorMany, _) | (_, CantorMany) => CantorMany,
        (CountablyMany, _) | (_, CountablyMany) => CountablyMany,
        (Finite(x), Finite(y)) => Finite(x.saturating_add(y)),
    }
}

fn covers(supply: Multiplicity, demand: u64) -> bool {
    match supply {
        Multiplicity::Finite(n) => n >= demand,
        _ => true,
    }
}

/// Number of ends of each germ type, keyed by the germ's normal form.
pub fn germ_census(expr: &EndSpaceExpr) -> Result<BTreeMap<EndSpaceExpr, Multiplicity>> {
    let nf = normal_form(expr)?;
    let mut out: BTreeMap<EndSpaceExpr, Multiplicity> = BTreeMap::new();
    for end in list_ends(&nf) {
        let germ = normal_form(&end.germ)?;
        let m = out.remove(&germ).map_or(end.multiplicity, |old| add_mult(old, end.multiplicity));
        out.insert(germ, m);
    }
    Ok(out)
}

/// Whether `small` is homeomorphic, marks included, to a clopen subset of `big`.
///
/// Each summand of `small` is a neighborhood of a single end (a point, a
/// sequence limit, or a Cantor set), so an embedding exists exactly when
/// `big` has enough distinct ends of each of those germ types.
pub fn embeds(small: &EndSpaceExpr, big: &EndSpaceExpr) -> Result<bool> {
    let supply = germ_census(big)?;
    let mut demand: BTreeMap<EndSpaceExpr, u64> = BTreeMap::new();
    for s in normal_form(small)?.summands() {
        *demand.entry(normal_form(s)?).or_default() += 1;
    }
    Ok(demand.iter().all(|(g, &k)| supply.get(g).is_some_and(|&m| covers(m, k))))
}
