use std::collections::HashSet;

use crate::error::{Error, Result};

use super::amalgam::{find_amalgam, Span};
use super::class::{check_class_property_with, ClassProperty, StructureClass, PROPERTY_BUDGET};
use super::embed::{automorphisms, enumerate_embeddings_with, Budget, Embedding};
use super::structure::{subsets_of_size, FiniteStructure};

/// Extension tasks realized per chain step.
pub const CHAIN_TASKS_PER_STEP: usize = 4;

/// A one-point extension realized in the chain: `base` (elements of the
/// stage) together with `witness` is isomorphic to member `extension` via
/// `base[i] -> base_map[i]`, `witness -> new_point`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionTask {
    pub stage: usize,
    pub base: Vec<usize>,
    pub extension: usize,
    pub base_map: Vec<usize>,
    pub new_point: usize,
    pub witness: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainResult {
    /// `stages[t]` is an induced substructure of `stages[t + 1]`.
    pub stages: Vec<FiniteStructure>,
    /// `embeddings[t]` embeds `stages[t]` into `stages[t + 1]`.
    pub embeddings: Vec<Embedding>,
    pub tasks: Vec<ExtensionTask>,
    /// Extension tasks over the final stage still unrealized.
    pub pending_tasks: usize,
    pub amalgamation: bool,
}

impl ChainResult {
    pub fn last(&self) -> &FiniteStructure {
        self.stages.last().expect("chain has a first stage")
    }
}

/// One-point extension types over `x`: member index, map of `x` into it,
/// and the added point, one per orbit under the member's automorphisms.
fn extension_types(
    class: &StructureClass,
    x: &FiniteStructure,
    budget: &mut Budget,
) -> Result<Vec<(usize, Embedding, usize)>> {
    let mut out = Vec::new();
    for (i, y) in class.members().iter().enumerate() {
        if y.size() != x.size() + 1 {
            continue;
        }
        let auts = automorphisms(y)?;
        let mut seen = HashSet::new();
        for h in enumerate_embeddings_with(x, y, budget)? {
            let key = auts.iter().map(|s| h.then(s).map).min().unwrap_or_default();
            if seen.insert(key) {
                let new_point = (0..y.size()).find(|p| !h.map.contains(p)).expect("one point missing");
                out.push((i, h, new_point));
            }
        }
    }
    Ok(out)
}

fn realized(b: &FiniteStructure, x: &[usize], y: &FiniteStructure, h: &Embedding, new_point: usize) -> Option<usize> {
    let mut target: Vec<usize> = h.map.clone();
    target.push(new_point);
    let want = y.induced(&target);
    let mut elems = x.to_vec();
    (0..b.size()).filter(|p| !x.contains(p)).find(|&p| {
        elems.push(p);
        let ok = b.induced(&elems) == want;
        elems.pop();
        ok
    })
}

/// Base elements, extension member, base map into it, added point.
type OpenTask = (Vec<usize>, usize, Embedding, usize);

/// Unrealized extension tasks over `b`, in scheduling order, at most `limit`.
fn open_tasks(
    class: &StructureClass,
    b: &FiniteStructure,
    limit: usize,
    budget: &mut Budget,
) -> Result<Vec<OpenTask>> {
    let mut out = Vec::new();
    for size in 1..=class.bounds().source.min(b.size()) {
        for x in subsets_of_size(b.size(), size) {
            let xs = b.induced(&x);
            for (yi, h, p) in extension_types(class, &xs, budget)? {
                budget.tick()?;
                if realized(b, &x, &class.members()[yi], &h, p).is_none() {
                    out.push((x.clone(), yi, h, p));
                    if out.len() >= limit {
                        return Ok(out);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Builds stages `B_0 ⊆ ... ⊆ B_steps`. Stage `t` jointly embeds `B_{t-1}`
/// and member `t mod len`; with amalgamation, up to
/// [`CHAIN_TASKS_PER_STEP`] one-point extensions over bases of at most the
/// source bound are realized per step.
pub fn fraisse_chain(class: &StructureClass, steps: usize) -> Result<ChainResult> {
    let mut budget = Budget::new(PROPERTY_BUDGET);
    for prop in [ClassProperty::Hp, ClassProperty::Jep] {
        let outcome = check_class_property_with(class, prop, &mut budget)?;
        if let Some(w) = outcome.witness() {
            return Err(Error::Precondition(format!("{prop:?} fails: {w}")));
        }
    }
    let amalgamation = check_class_property_with(class, ClassProperty::Ap, &mut budget)?.holds();
    let members = class.members();
    let empty = FiniteStructure::empty(class.signature().clone(), 0);
    let none = Embedding::new(vec![]);
    let mut stages = vec![members[0].clone()];
    let mut embeddings = Vec::new();
    let mut tasks = Vec::new();
    for t in 1..=steps {
        let prev = stages.last().unwrap().clone();
        let next_member = &members[t % members.len()];
        let span = Span { base: &empty, left: &prev, right: next_member, f: &none, g: &none };
        let joint = find_amalgam(span, class.membership(), &mut budget)?
            .ok_or_else(|| Error::Precondition("joint embedding failed during chain construction".into()))?;
        let mut current = joint.structure;
        if amalgamation {
            let pending = open_tasks(class, &current, CHAIN_TASKS_PER_STEP, &mut budget)?;
            for (x, yi, h, p) in pending {
                let y = &members[yi];
                let witness = match realized(&current, &x, y, &h, p) {
                    Some(w) => w,
                    None => {
                        let xs = current.induced(&x);
                        let into_current = Embedding::new(x.clone());
                        let span = Span { base: &xs, left: &current, right: y, f: &into_current, g: &h };
                        let am = find_amalgam(span, class.membership(), &mut budget)?
                            .ok_or_else(|| Error::Precondition("amalgamation failed during chain construction".into()))?;
                        let w = am.right.map[p];
                        current = am.structure;
                        w
                    }
                };
                tasks.push(ExtensionTask { stage: t, base: x, extension: yi, base_map: h.map, new_point: p, witness });
            }
        }
        embeddings.push(Embedding::identity(prev.size()));
        stages.push(current);
    }
    let pending_tasks = if amalgamation {
        open_tasks(class, stages.last().unwrap(), usize::MAX, &mut budget)?.len()
    } else {
        0
    };
    Ok(ChainResult { stages, embeddings, tasks, pending_tasks, amalgamation })
}

/// Whether the task's witness still realizes its extension in `b`.
pub fn task_realized_in(class: &StructureClass, task: &ExtensionTask, b: &FiniteStructure) -> bool {
    let mut elems = task.base.clone();
    elems.push(task.witness);
    let mut target = task.base_map.clone();
    target.push(task.new_point);
    elems.iter().all(|&e| e < b.size()) && b.induced(&elems) == class.members()[task.extension].induced(&target)
}
