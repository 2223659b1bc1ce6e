//! Preorder on ends by local embeddability, its classes and maximal ends.

use std::fmt;

use serde::Serialize;

use crate::end_space::{
    embeds, list_ends, normal_form, EndKind, EndSpaceExpr, Mark, Multiplicity, NodePath, SurfaceSpec,
};
use crate::error::Result;

/// Local model of an end: arbitrarily small clopen neighborhoods are
/// homeomorphic to `germ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndGerm {
    pub germ: EndSpaceExpr,
    pub mark: Mark,
    pub kind: EndKind,
    pub multiplicity: Multiplicity,
    /// Position in the normal form of the surface's end space.
    pub origin: NodePath,
}

/// Germs of every end position of the spec, read off its normal form.
pub fn end_germs(spec: &SurfaceSpec) -> Result<Vec<EndGerm>> {
    let nf = normal_form(&spec.ends)?;
    list_ends(&nf)
        .into_iter()
        .map(|d| {
            Ok(EndGerm {
                germ: normal_form(&d.germ)?,
                mark: d.mark,
                kind: d.kind,
                multiplicity: d.multiplicity,
                origin: d.path,
            })
        })
        .collect()
}

/// `y ≼ x`: a neighborhood of `y` embeds, marks preserved, into every
/// neighborhood of `x`. Tails of a sequence are homeomorphic to the whole
/// sequence, so checking the germ of `x` itself suffices.
pub fn germ_leq(y: &EndGerm, x: &EndGerm) -> Result<bool> {
    embeds(&y.germ, &x.germ)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndClass {
    /// Germ of the class, in the end-space text syntax.
    pub germ: String,
    pub mark: Mark,
    pub cardinality: Multiplicity,
    /// Paths (in the normal form) of the end positions in this class.
    pub members: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndClassReport {
    pub classes: Vec<EndClass>,
    /// `(i, j)` when class `i` is strictly below class `j`.
    pub order: Vec<(usize, usize)>,
    pub maximal_classes: Vec<usize>,
    /// Internal inconsistencies, e.g. a countable maximal class.
    pub warnings: Vec<String>,
}

fn add(a: Multiplicity, b: Multiplicity) -> Multiplicity {
    use Multiplicity::*;
    match (a, b) {
        (CantorMany, _) | (_, CantorMany) => CantorMany,
        (CountablyMany, _) | (_, CountablyMany) => CountablyMany,
        (Finite(x), Finite(y)) => Finite(x + y),
    }
}

pub fn end_equivalence_classes(spec: &SurfaceSpec) -> Result<EndClassReport> {
    let germs = end_germs(spec)?;
    let n = germs.len();
    let mut leq = vec![vec![false; n]; n];
    for (i, y) in germs.iter().enumerate() {
        for (j, x) in germs.iter().enumerate() {
            leq[i][j] = germ_leq(y, x)?;
        }
    }
    let mut class_of = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..n {
        if let Some(c) = reps.iter().position(|&r| leq[i][r] && leq[r][i]) {
            class_of[i] = c;
        } else {
            class_of[i] = reps.len();
            reps.push(i);
        }
    }
    // deterministic order: by germ text
    let mut order_idx: Vec<usize> = (0..reps.len()).collect();
    order_idx.sort_by_key(|&c| germs[reps[c]].germ.clone());
    let mut rank = vec![0; reps.len()];
    for (pos, &c) in order_idx.iter().enumerate() {
        rank[c] = pos;
    }
    let mut classes: Vec<EndClass> = order_idx
        .iter()
        .map(|&c| {
            let g = &germs[reps[c]];
            EndClass { germ: g.germ.to_string(), mark: g.mark, cardinality: Multiplicity::Finite(0), members: vec![] }
        })
        .collect();
    for (i, g) in germs.iter().enumerate() {
        let c = &mut classes[rank[class_of[i]]];
        c.cardinality = add(c.cardinality, g.multiplicity);
        c.members.push(g.origin.to_string());
    }
    let k = classes.len();
    let rep_at: Vec<usize> = order_idx.iter().map(|&c| reps[c]).collect();
    let mut order = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if a != b && leq[rep_at[a]][rep_at[b]] && !leq[rep_at[b]][rep_at[a]] {
                order.push((a, b));
            }
        }
    }
    let maximal_classes: Vec<usize> = (0..k).filter(|&a| !order.iter().any(|&(lo, _)| lo == a)).collect();
    let warnings = maximal_classes
        .iter()
        .filter(|&&a| classes[a].cardinality == Multiplicity::CountablyMany)
        .map(|&a| format!("maximal class {} is countably infinite", classes[a].germ))
        .collect();
    Ok(EndClassReport { classes, order, maximal_classes, warnings })
}

/// Total size of the union of maximal classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MaximalCount {
    Finite(u64),
    CantorMany,
}

impl fmt::Display for MaximalCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaximalCount::Finite(n) => write!(f, "{n}"),
            MaximalCount::CantorMany => write!(f, "Cantor many"),
        }
    }
}

impl EndClassReport {
    pub fn maximal_count(&self) -> MaximalCount {
        let mut total = 0;
        for &a in &self.maximal_classes {
            match self.classes[a].cardinality {
                Multiplicity::Finite(n) => total += n,
                _ => return MaximalCount::CantorMany,
            }
        }
        MaximalCount::Finite(total)
    }

    pub fn maximal(&self) -> Vec<&EndClass> {
        self.maximal_classes.iter().map(|&a| &self.classes[a]).collect()
    }

    /// Deterministic `key: value` record.
    pub fn to_record(&self) -> String {
        let mut s = String::new();
        for (i, c) in self.classes.iter().enumerate() {
            s.push_str(&format!("class {i}: germ={} mark={:?} cardinality={}\n", c.germ, c.mark, c.cardinality));
        }
        for (a, b) in &self.order {
            s.push_str(&format!("order: {a} < {b}\n"));
        }
        let max: Vec<String> = self.maximal_classes.iter().map(ToString::to_string).collect();
        s.push_str(&format!("maximal_classes: [{}]\n", max.join(", ")));
        s.push_str(&format!("maximal_count: {}\n", self.maximal_count()));
        for w in &self.warnings {
            s.push_str(&format!("warning: {w}\n"));
        }
        s
    }
}

pub fn maximal_ends(spec: &SurfaceSpec) -> Result<(MaximalCount, Vec<EndClass>)> {
    let report = end_equivalence_classes(spec)?;
    Ok((report.maximal_count(), report.maximal().into_iter().cloned().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::end_space::parse_surface;

    fn spec(s: &str) -> SurfaceSpec {
        parse_surface(s).unwrap()
    }

    #[test]
    fn flute_classes() {
        let r = end_equivalence_classes(&spec("genus = 0; ends = omega(pt)")).unwrap();
        assert_eq!(r.classes.len(), 2);
        assert_eq!(r.classes[0].germ, "pt");
        assert_eq!(r.classes[0].cardinality, Multiplicity::CountablyMany);
        assert_eq!(r.classes[1].cardinality, Multiplicity::Finite(1));
        assert_eq!(r.order, vec![(0, 1)]);
        assert_eq!(r.maximal_count(), MaximalCount::Finite(1));
    }

    #[test]
    fn puncture_below_limit() {
        let g = end_germs(&spec("genus = 0; ends = omega(pt)")).unwrap();
        assert!(germ_leq(&g[0], &g[1]).unwrap());
        assert!(!germ_leq(&g[1], &g[0]).unwrap());
    }

    #[test]
    fn nonplanar_point_and_flute_end_incomparable() {
        let g = end_germs(&spec("genus = inf; ends = pt* + omega(pt)")).unwrap();
        let star = g.iter().find(|e| e.mark == Mark::Nonplanar).unwrap();
        let limit = g.iter().find(|e| e.kind == EndKind::Limit).unwrap();
        assert!(!germ_leq(star, limit).unwrap());
        assert!(!germ_leq(limit, star).unwrap());
        assert_eq!(maximal_ends(&spec("genus = inf; ends = pt* + omega(pt)")).unwrap().0, MaximalCount::Finite(2));
    }

    #[test]
    fn maximal_counts() {
        let m = |s: &str| maximal_ends(&spec(s)).unwrap().0;
        assert_eq!(m("genus = inf; ends = pt*"), MaximalCount::Finite(1));
        assert_eq!(m("genus = inf; ends = pt* + pt*"), MaximalCount::Finite(2));
        assert_eq!(m("genus = 0; ends = omega(pt) + omega(pt)"), MaximalCount::Finite(2));
        assert_eq!(m("genus = 0; ends = omega(pt) + omega(pt) + omega(pt)"), MaximalCount::Finite(3));
        assert_eq!(m("genus = 0; ends = cantor"), MaximalCount::CantorMany);
    }

    #[test]
    fn cantor_tree_single_class() {
        let r = end_equivalence_classes(&spec("genus = 0; ends = cantor")).unwrap();
        assert_eq!(r.classes.len(), 1);
        assert_eq!(r.maximal_classes, vec![0]);
        assert_eq!(r.classes[0].cardinality, Multiplicity::CantorMany);
    }
}
