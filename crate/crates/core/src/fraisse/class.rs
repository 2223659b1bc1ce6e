use std::collections::HashMap;
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::amalgam::{find_amalgam, Membership, Span};
use super::embed::{enumerate_embeddings_with, find_embedding, is_isomorphic_with, Budget, Embedding};
use super::pairs::PartialIsoPair;
use super::structure::{subsets_of_size, FiniteStructure, Signature};

/// Node budget for one property check.
pub const PROPERTY_BUDGET: u64 = 1 << 28;

/// Size bounds for quantification: sources up to `source`, targets up to
/// `target` elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bounds {
    pub source: usize,
    pub target: usize,
}

impl fmt::Display for Bounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bounds s={},k={}", self.source, self.target)
    }
}

/// Finite list of pairwise non-isomorphic structures standing for the
/// hereditary class they generate locally (see [`Membership`]).
#[derive(Debug, Clone)]
pub struct StructureClass {
    signature: Arc<Signature>,
    members: Vec<FiniteStructure>,
    bounds: Bounds,
    membership: Membership,
}

impl StructureClass {
    pub fn new(signature: Arc<Signature>, members: Vec<FiniteStructure>, bounds: Bounds) -> Result<Self> {
        let mut problems = Vec::new();
        if members.is_empty() {
            problems.push("class has no structures".to_string());
        }
        if bounds.source == 0 || bounds.source > bounds.target {
            problems.push(format!("bounds must satisfy 1 <= source <= target, got {}", bounds));
        }
        for (i, m) in members.iter().enumerate() {
            if **m.signature() != *signature {
                problems.push(format!("structure {i} has a different signature"));
            }
            if m.size() == 0 {
                problems.push(format!("structure {i} is empty"));
            }
        }
        if !problems.is_empty() {
            return Err(Error::Validity(problems));
        }
        let mut budget = Budget::new(PROPERTY_BUDGET);
        for i in 0..members.len() {
            for j in 0..i {
                if is_isomorphic_with(&members[j], &members[i], &mut budget)?.is_some() {
                    problems.push(format!("structures {j} and {i} are isomorphic"));
                }
            }
        }
        if !problems.is_empty() {
            return Err(Error::Validity(problems));
        }
        let membership = Membership::new(&members)?;
        Ok(StructureClass { signature, members, bounds, membership })
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.signature
    }

    pub fn members(&self) -> &[FiniteStructure] {
        &self.members
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    pub fn with_bounds(&self, bounds: Bounds) -> Result<Self> {
        StructureClass::new(self.signature.clone(), self.members.clone(), bounds)
    }

    pub fn membership(&self) -> &Membership {
        &self.membership
    }

    /// Whether `s` lies in the class generated by the members.
    pub fn admits(&self, s: &FiniteStructure) -> bool {
        self.membership.admits(s)
    }

    /// Members with at most `limit` elements, with their indices.
    pub fn members_up_to(&self, limit: usize) -> impl Iterator<Item = (usize, &FiniteStructure)> {
        self.members.iter().enumerate().filter(move |(_, m)| m.size() <= limit)
    }

    pub(crate) fn empty_structure(&self) -> FiniteStructure {
        FiniteStructure::empty(self.signature.clone(), 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassProperty {
    Hp,
    Jep,
    Ap,
    Wap,
    LocalWap,
}

impl FromStr for ClassProperty {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "hp" => ClassProperty::Hp,
            "jep" => ClassProperty::Jep,
            "ap" => ClassProperty::Ap,
            "wap" => ClassProperty::Wap,
            "local-wap" => ClassProperty::LocalWap,
            other => return Err(Error::Format(format!("unknown class property {other:?}"))),
        })
    }
}

/// Why a property fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Hereditary { member: usize, subset: Vec<usize>, substructure: FiniteStructure },
    JointEmbedding { left: FiniteStructure, right: FiniteStructure },
    Amalgamation { base: FiniteStructure, left: FiniteStructure, right: FiniteStructure, f: Embedding, g: Embedding },
    WeakAmalgamation { base: FiniteStructure },
    /// For each candidate, a structure above it where the weak condition fails.
    LocalWeakAmalgamation { failures: Vec<(FiniteStructure, FiniteStructure)> },
    PairJoint { left: PartialIsoPair, right: PartialIsoPair },
    PairWeak { base: PartialIsoPair },
    PairLocalWeak { failures: Vec<(PartialIsoPair, PartialIsoPair)> },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Hereditary { member, subset, substructure } => {
                write!(f, "substructure {subset:?} of structure {member} ({substructure}) is not in the class")
            }
            Witness::JointEmbedding { left, right } => write!(f, "no joint embedding of A=[{left}] and B=[{right}]"),
            Witness::Amalgamation { base, left, right, f: ff, g } => {
                write!(f, "span A=[{base}], B=[{left}], C=[{right}], f={ff}, g={g} has no amalgam")
            }
            Witness::WeakAmalgamation { base } => write!(f, "no weak amalgamation base over S=[{base}]"),
            Witness::LocalWeakAmalgamation { failures } => {
                let parts: Vec<String> = failures.iter().map(|(a, b)| format!("A=[{a}] fails at B=[{b}]")).collect();
                write!(f, "no local base: {}", parts.join("; "))
            }
            Witness::PairJoint { left, right } => write!(f, "no joint pair embedding of S={left} and S'={right}"),
            Witness::PairWeak { base } => write!(f, "no weak amalgamation base over pair S={base}"),
            Witness::PairLocalWeak { failures } => {
                let parts: Vec<String> = failures.iter().map(|(a, b)| format!("A={a} fails at B={b}")).collect();
                write!(f, "no local pair base: {}", parts.join("; "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Holds(Bounds),
    Fails { bounds: Bounds, witness: Box<Witness> },
}

impl Outcome {
    pub fn holds(&self) -> bool {
        matches!(self, Outcome::Holds(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Outcome::Holds(_) => None,
            Outcome::Fails { witness, .. } => Some(witness),
        }
    }

    pub(crate) fn fails(bounds: Bounds, witness: Witness) -> Self {
        Outcome::Fails { bounds, witness: Box::new(witness) }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Holds(b) => write!(f, "Holds ({b})"),
            Outcome::Fails { bounds, witness } => write!(f, "Fails ({bounds}): {witness}"),
        }
    }
}

pub fn check_class_property(class: &StructureClass, property: ClassProperty) -> Result<Outcome> {
    check_class_property_with(class, property, &mut Budget::new(PROPERTY_BUDGET))
}

pub fn check_class_property_with(class: &StructureClass, property: ClassProperty, budget: &mut Budget) -> Result<Outcome> {
    let bounds = class.bounds();
    let verdict = match property {
        ClassProperty::Hp => hereditary(class),
        ClassProperty::Jep => joint_embedding(class, budget)?,
        ClassProperty::Ap => amalgamation(class, budget)?,
        ClassProperty::Wap => {
            let mut wap = WeakChecker::new(class);
            let mut failure = None;
            for (_, s) in class.members_up_to(bounds.source) {
                if !wap.base_ok(s, budget)? {
                    failure = Some(Witness::WeakAmalgamation { base: s.clone() });
                    break;
                }
            }
            failure
        }
        ClassProperty::LocalWap => local_weak(class, budget)?,
    };
    Ok(match verdict {
        None => Outcome::Holds(bounds),
        Some(w) => Outcome::fails(bounds, w),
    })
}

fn hereditary(class: &StructureClass) -> Option<Witness> {
    for (i, m) in class.members_up_to(class.bounds().target) {
        for size in 1..m.size() {
            for sub in subsets_of_size(m.size(), size) {
                if !class.membership().admits_local(&sub, |rel, t| m.holds(rel, t)) {
                    return Some(Witness::Hereditary { member: i, substructure: m.induced(&sub), subset: sub });
                }
            }
        }
    }
    None
}

fn joint_embedding(class: &StructureClass, budget: &mut Budget) -> Result<Option<Witness>> {
    let empty = class.empty_structure();
    let none = Embedding::new(vec![]);
    let small: Vec<&FiniteStructure> = class.members_up_to(class.bounds().source).map(|(_, m)| m).collect();
    for (i, a) in small.iter().enumerate() {
        for b in &small[i..] {
            let span = Span { base: &empty, left: a, right: b, f: &none, g: &none };
            if find_amalgam(span, class.membership(), budget)?.is_none() {
                return Ok(Some(Witness::JointEmbedding { left: (*a).clone(), right: (*b).clone() }));
            }
        }
    }
    Ok(None)
}

fn amalgamation(class: &StructureClass, budget: &mut Budget) -> Result<Option<Witness>> {
    let bounds = class.bounds();
    for (_, a) in class.members_up_to(bounds.source) {
        let mut arms: Vec<(&FiniteStructure, Embedding)> = Vec::new();
        for (_, b) in class.members_up_to(bounds.target) {
            for f in enumerate_embeddings_with(a, b, budget)? {
                arms.push((b, f));
            }
        }
        // the problem is symmetric in the two arms
        for i in 0..arms.len() {
            for j in i..arms.len() {
                let (b, f) = &arms[i];
                let (c, g) = &arms[j];
                let span = Span { base: a, left: b, right: c, f, g };
                if find_amalgam(span, class.membership(), budget)?.is_none() {
                    return Ok(Some(Witness::Amalgamation {
                        base: a.clone(),
                        left: (*b).clone(),
                        right: (*c).clone(),
                        f: f.clone(),
                        g: g.clone(),
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Memoized weak amalgamation test.
struct WeakChecker<'a> {
    class: &'a StructureClass,
    spans: HashMap<(usize, usize, Embedding, usize, Embedding), bool>,
}

impl<'a> WeakChecker<'a> {
    fn new(class: &'a StructureClass) -> Self {
        WeakChecker { class, spans: HashMap::new() }
    }

    fn member_index(&self, s: &FiniteStructure) -> usize {
        self.class.members().iter().position(|m| m == s).expect("member")
    }

    fn amalgamates(&mut self, s: &FiniteStructure, t0: usize, fe: &Embedding, t1: usize, ge: &Embedding, budget: &mut Budget) -> Result<bool> {
        let key = (self.member_index(s), t0, fe.clone(), t1, ge.clone());
        if let Some(&v) = self.spans.get(&key) {
            return Ok(v);
        }
        let members = self.class.members();
        let span = Span { base: s, left: &members[t0], right: &members[t1], f: fe, g: ge };
        let v = find_amalgam(span, self.class.membership(), budget)?.is_some();
        self.spans.insert(key, v);
        Ok(v)
    }

    /// Whether some `e: s -> t` makes every pair of extensions of `t`
    /// amalgamate over the image of `s`.
    fn base_ok(&mut self, s: &FiniteStructure, budget: &mut Budget) -> Result<bool> {
        let k = self.class.bounds().target;
        let members = self.class.members().to_vec();
        for t in members.iter().filter(|m| m.size() <= k) {
            for e in enumerate_embeddings_with(s, t, budget)? {
                let mut arms = Vec::new();
                for (ti, target) in members.iter().enumerate().filter(|(_, m)| m.size() <= k) {
                    for f in enumerate_embeddings_with(t, target, budget)? {
                        arms.push((ti, e.then(&f)));
                    }
                }
                let mut all = true;
                'outer: for i in 0..arms.len() {
                    for j in i..arms.len() {
                        if !self.amalgamates(s, arms[i].0, &arms[i].1, arms[j].0, &arms[j].1, budget)? {
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

fn local_weak(class: &StructureClass, budget: &mut Budget) -> Result<Option<Witness>> {
    let s = class.bounds().source;
    let small: Vec<&FiniteStructure> = class.members_up_to(s).map(|(_, m)| m).collect();
    let mut wap = WeakChecker::new(class);
    let mut ok = Vec::with_capacity(small.len());
    for m in &small {
        ok.push(wap.base_ok(m, budget)?);
    }
    let mut failures = Vec::new();
    for a in &small {
        let mut bad = None;
        for (j, b) in small.iter().enumerate() {
            if !ok[j] && find_embedding(a, b, budget)?.is_some() {
                bad = Some(*b);
                break;
            }
        }
        match bad {
            None => return Ok(None),
            Some(b) => failures.push(((*a).clone(), b.clone())),
        }
    }
    Ok(Some(Witness::LocalWeakAmalgamation { failures }))
}

/// Runs `visit` on every amalgam of a span; used by pair checks.
pub(crate) fn each_amalgam(
    class: &StructureClass,
    span: Span,
    max_size: Option<usize>,
    budget: &mut Budget,
    visit: impl FnMut(&super::amalgam::Amalgam) -> ControlFlow<()>,
) -> Result<()> {
    super::amalgam::for_each_amalgam(span, class.membership(), max_size, budget, visit)
}
