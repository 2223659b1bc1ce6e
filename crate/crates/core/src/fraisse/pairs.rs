use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::amalgam::Span;
use super::class::{each_amalgam, Bounds, Outcome, StructureClass, Witness, PROPERTY_BUDGET};
use super::embed::{automorphisms, enumerate_embeddings_with, same_signature, search, Budget, Embedding, Mode};
use super::structure::{subsets_of_size, FiniteStructure};

/// `<A, psi: B -> C>`: an ambient structure with an isomorphism between two
/// of its induced substructures. `psi(domain[i]) = images[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialIsoPair {
    ambient: FiniteStructure,
    domain: Vec<usize>,
    images: Vec<usize>,
}

impl PartialIsoPair {
    pub fn new(ambient: FiniteStructure, domain: Vec<usize>, images: Vec<usize>) -> Result<Self> {
        let n = ambient.size();
        if domain.len() != images.len() {
            return Err(Error::IllFormedPair("domain and image lists differ in length".into()));
        }
        if domain.iter().chain(&images).any(|&x| x >= n) {
            return Err(Error::IllFormedPair(format!("element outside the universe of size {n}")));
        }
        let distinct = |v: &[usize]| v.iter().collect::<HashSet<_>>().len() == v.len();
        if !distinct(&domain) || !distinct(&images) {
            return Err(Error::IllFormedPair("map is not injective or domain repeats".into()));
        }
        if ambient.induced(&domain) != ambient.induced(&images) {
            return Err(Error::IllFormedPair("map is not an isomorphism of induced substructures".into()));
        }
        let mut order: Vec<usize> = (0..domain.len()).collect();
        order.sort_by_key(|&i| domain[i]);
        let domain = order.iter().map(|&i| domain[i]).collect();
        let images = order.iter().map(|&i| images[i]).collect();
        Ok(PartialIsoPair { ambient, domain, images })
    }

    pub fn ambient(&self) -> &FiniteStructure {
        &self.ambient
    }

    /// Sorted domain.
    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    /// Images aligned with [`domain`](Self::domain).
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn codomain(&self) -> Vec<usize> {
        let mut c = self.images.clone();
        c.sort_unstable();
        c
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.domain.binary_search(&x).ok().map(|i| self.images[i])
    }

    fn in_domain(&self, x: usize) -> bool {
        self.domain.binary_search(&x).is_ok()
    }

    fn in_codomain(&self, x: usize) -> bool {
        self.images.contains(&x)
    }
}

impl fmt::Display for PartialIsoPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.domain.iter().zip(&self.images).map(|(b, c)| format!("{b}->{c}")).collect();
        write!(f, "<{} | {{{}}}>", self.ambient, parts.join(", "))
    }
}

/// Pairs over members of size at most `limit`, one per isomorphism type,
/// ordered by member, domain size, then domain and images.
pub fn pairs_up_to(class: &StructureClass, limit: usize, budget: &mut Budget) -> Result<Vec<PartialIsoPair>> {
    let mut out = Vec::new();
    for (_, a) in class.members_up_to(limit) {
        let auts = automorphisms(a)?;
        let mut seen = HashSet::new();
        for size in 0..=a.size() {
            for dom in subsets_of_size(a.size(), size) {
                let sub = a.induced(&dom);
                for e in enumerate_embeddings_with(&sub, a, budget)? {
                    let key = auts
                        .iter()
                        .map(|s| {
                            let mut v: Vec<(usize, usize)> = dom.iter().zip(&e.map).map(|(&b, &c)| (s.map[b], s.map[c])).collect();
                            v.sort_unstable();
                            v
                        })
                        .min()
                        .unwrap_or_default();
                    if seen.insert(key) {
                        out.push(PartialIsoPair { ambient: a.clone(), domain: dom.clone(), images: e.map.clone() });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// All pairs with ambient size up to the class target bound.
pub fn build_pair_class(class: &StructureClass) -> Result<Vec<PartialIsoPair>> {
    pairs_up_to(class, class.bounds().target, &mut Budget::new(PROPERTY_BUDGET))
}

/// Embeddings `f` of ambients with `f(B) ⊆ B'`, `f(C) ⊆ C'` and
/// `psi'(f(b)) = f(psi(b))`, in lexicographic order.
pub fn for_each_pair_embedding(
    s: &PartialIsoPair,
    t: &PartialIsoPair,
    budget: &mut Budget,
    mut visit: impl FnMut(&Embedding) -> ControlFlow<()>,
) -> Result<()> {
    same_signature(&s.ambient, &t.ambient)?;
    let allow = |x: usize, y: usize| {
        (!s.in_domain(x) || t.in_domain(y)) && (!s.in_codomain(x) || t.in_codomain(y))
    };
    search(&s.ambient, &t.ambient, Mode::Embedding, allow, budget, |f| {
        let ok = s.domain.iter().zip(&s.images).all(|(&b, &c)| t.apply(f.map[b]) == Some(f.map[c]));
        if ok {
            visit(f)
        } else {
            ControlFlow::Continue(())
        }
    })
}

fn pair_embeds_with(s: &PartialIsoPair, t: &PartialIsoPair, budget: &mut Budget) -> Result<bool> {
    let mut found = false;
    for_each_pair_embedding(s, t, budget, |_| {
        found = true;
        ControlFlow::Break(())
    })?;
    Ok(found)
}

pub fn pair_embeds(s: &PartialIsoPair, t: &PartialIsoPair) -> Result<Option<Embedding>> {
    let mut found = None;
    for_each_pair_embedding(s, t, &mut Budget::new(PROPERTY_BUDGET), |f| {
        found = Some(f.clone());
        ControlFlow::Break(())
    })?;
    Ok(found)
}

pub fn enumerate_pair_embeddings(s: &PartialIsoPair, t: &PartialIsoPair, budget: &mut Budget) -> Result<Vec<Embedding>> {
    let mut out = Vec::new();
    for_each_pair_embedding(s, t, budget, |f| {
        out.push(f.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// The union of `psi` transported along `f` and `psi'` along `g`, when it is
/// a well-defined isomorphism between induced substructures of `d`.
pub fn combined_map(
    d: &FiniteStructure,
    s: &PartialIsoPair,
    f: &Embedding,
    t: &PartialIsoPair,
    g: &Embedding,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut map: HashMap<usize, usize> = HashMap::new();
    let pieces = s
        .domain
        .iter()
        .zip(&s.images)
        .map(|(&b, &c)| (f.map[b], f.map[c]))
        .chain(t.domain.iter().zip(&t.images).map(|(&b, &c)| (g.map[b], g.map[c])));
    for (x, y) in pieces {
        match map.insert(x, y) {
            Some(prev) if prev != y => return None,
            _ => {}
        }
    }
    let mut dom: Vec<usize> = map.keys().copied().collect();
    dom.sort_unstable();
    let img: Vec<usize> = dom.iter().map(|x| map[x]).collect();
    if img.iter().collect::<HashSet<_>>().len() != img.len() {
        return None;
    }
    if d.induced(&dom) != d.induced(&img) {
        return None;
    }
    Some((dom, img))
}

/// Jointly embeds two pairs into a pair over a structure of the class with at
/// most `max_size` elements, returning the ambient and both embeddings.
pub fn joint_pair_embedding(
    class: &StructureClass,
    s: &PartialIsoPair,
    t: &PartialIsoPair,
    max_size: Option<usize>,
    budget: &mut Budget,
) -> Result<Option<(PartialIsoPair, Embedding, Embedding)>> {
    let empty = FiniteStructure::empty(class.signature().clone(), 0);
    let none = Embedding::new(vec![]);
    let span = Span { base: &empty, left: &s.ambient, right: &t.ambient, f: &none, g: &none };
    let mut found = None;
    each_amalgam(class, span, max_size, budget, |am| {
        match combined_map(&am.structure, s, &am.left, t, &am.right) {
            Some((dom, img)) => {
                let pair = PartialIsoPair { ambient: am.structure.clone(), domain: dom, images: img };
                found = Some((pair, am.left.clone(), am.right.clone()));
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        }
    })?;
    Ok(found)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairProperty {
    JepFp,
    WapFp,
    LocalWapFp,
}

impl FromStr for PairProperty {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "jep-fp" => PairProperty::JepFp,
            "wap-fp" => PairProperty::WapFp,
            "local-wap-fp" => PairProperty::LocalWapFp,
            other => return Err(Error::Format(format!("unknown pair property {other:?}"))),
        })
    }
}

pub fn check_pair_property(class: &StructureClass, property: PairProperty) -> Result<Outcome> {
    check_pair_property_with(class, property, &mut Budget::new(PROPERTY_BUDGET))
}

pub fn check_pair_property_with(class: &StructureClass, property: PairProperty, budget: &mut Budget) -> Result<Outcome> {
    let bounds = class.bounds();
    let sources = pairs_up_to(class, bounds.source, budget)?;
    let witness = match property {
        PairProperty::JepFp => {
            let mut w = None;
            'outer: for (i, s) in sources.iter().enumerate() {
                for t in &sources[i..] {
                    if joint_pair_embedding(class, s, t, Some(bounds.target), budget)?.is_none() {
                        w = Some(Witness::PairJoint { left: s.clone(), right: t.clone() });
                        break 'outer;
                    }
                }
            }
            w
        }
        PairProperty::WapFp => {
            let mut checker = PairWeak::new(class, bounds, budget)?;
            let mut w = None;
            for s in &sources {
                if !checker.base_ok(s, budget)? {
                    w = Some(Witness::PairWeak { base: s.clone() });
                    break;
                }
            }
            w
        }
        PairProperty::LocalWapFp => {
            let mut checker = PairWeak::new(class, bounds, budget)?;
            let mut ok = Vec::new();
            for s in &sources {
                ok.push(checker.base_ok(s, budget)?);
            }
            let mut failures = Vec::new();
            let mut holds = false;
            for a in &sources {
                let mut bad = None;
                for (j, b) in sources.iter().enumerate() {
                    if !ok[j] && pair_embeds_with(a, b, budget)? {
                        bad = Some(b.clone());
                        break;
                    }
                }
                match bad {
                    None => {
                        holds = true;
                        break;
                    }
                    Some(b) => failures.push((a.clone(), b)),
                }
            }
            if holds {
                None
            } else {
                Some(Witness::PairLocalWeak { failures })
            }
        }
    };
    Ok(match witness {
        None => Outcome::Holds(bounds),
        Some(w) => Outcome::fails(bounds, w),
    })
}

struct PairWeak<'a> {
    class: &'a StructureClass,
    targets: Vec<PartialIsoPair>,
}

impl<'a> PairWeak<'a> {
    fn new(class: &'a StructureClass, bounds: Bounds, budget: &mut Budget) -> Result<Self> {
        Ok(PairWeak { class, targets: pairs_up_to(class, bounds.target, budget)? })
    }

    /// Weak amalgamation over the pair `s`, using pair embeddings.
    fn base_ok(&mut self, s: &PartialIsoPair, budget: &mut Budget) -> Result<bool> {
        for t in &self.targets {
            for e in enumerate_pair_embeddings(s, t, budget)? {
                let mut arms = Vec::new();
                for (ti, t0) in self.targets.iter().enumerate() {
                    for f in enumerate_pair_embeddings(t, t0, budget)? {
                        arms.push((ti, e.then(&f)));
                    }
                }
                let mut all = true;
                'outer: for i in 0..arms.len() {
                    for j in i..arms.len() {
                        let (t0, fe) = (&self.targets[arms[i].0], &arms[i].1);
                        let (t1, ge) = (&self.targets[arms[j].0], &arms[j].1);
                        if !pair_amalgamates(self.class, s, t0, fe, t1, ge, budget)? {
                            all = false;
                            break 'outer;
                        }
                    }
                }
                if all {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

/// Whether pairs `t0`, `t1` receiving `s` along `fe`, `ge` embed in a common
/// pair so that the two images of `s` agree.
pub fn pair_amalgamates(
    class: &StructureClass,
    s: &PartialIsoPair,
    t0: &PartialIsoPair,
    fe: &Embedding,
    t1: &PartialIsoPair,
    ge: &Embedding,
    budget: &mut Budget,
) -> Result<bool> {
    let span = Span { base: &s.ambient, left: &t0.ambient, right: &t1.ambient, f: fe, g: ge };
    let mut found = false;
    each_amalgam(class, span, None, budget, |am| {
        if combined_map(&am.structure, t0, &am.left, t1, &am.right).is_some() {
            found = true;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(found)
}
