use std::fmt;

use serde::Serialize;

/// Whether an end is accumulated by genus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Mark {
    Planar,
    Nonplanar,
}

impl Mark {
    pub fn suffix(self) -> &'static str {
        match self {
            Mark::Planar => "",
            Mark::Nonplanar => "*",
        }
    }
}

/// Finitely described end space with planarity marks.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EndSpaceExpr {
    /// A single isolated end.
    Pt(Mark),
    /// Countably many copies of `child` converging to one limit end.
    Omega { child: Box<EndSpaceExpr>, limit: Mark },
    /// A Cantor set of ends, all with the same mark.
    Cantor(Mark),
    /// Disjoint union.
    Sum(Vec<EndSpaceExpr>),
}

use EndSpaceExpr::*;

impl EndSpaceExpr {
    pub fn pt() -> Self {
        Pt(Mark::Planar)
    }

    pub fn omega(child: EndSpaceExpr, limit: Mark) -> Self {
        Omega { child: Box::new(child), limit }
    }

    /// Sum of the given parts, flattening nested sums; a single part is returned as is.
    pub fn sum(parts: impl IntoIterator<Item = EndSpaceExpr>) -> Self {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                Sum(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            Sum(flat)
        }
    }

    /// `n` copies of `self`.
    pub fn times(&self, n: usize) -> Self {
        Self::sum(std::iter::repeat_n(self.clone(), n))
    }

    /// Top-level summands (a non-sum is its own single summand).
    pub fn summands(&self) -> &[EndSpaceExpr] {
        match self {
            Sum(parts) => parts,
            other => std::slice::from_ref(other),
        }
    }

    pub fn has_mark(&self, mark: Mark) -> bool {
        match self {
            Pt(m) | Cantor(m) => *m == mark,
            Omega { child, limit } => *limit == mark || child.has_mark(mark),
            Sum(parts) => parts.iter().any(|p| p.has_mark(mark)),
        }
    }

    pub fn has_cantor(&self) -> bool {
        match self {
            Pt(_) => false,
            Cantor(_) => true,
            Omega { child, .. } => child.has_cantor(),
            Sum(parts) => parts.iter().any(Self::has_cantor),
        }
    }

    /// True when the denoted space is infinite.
    pub fn is_infinite(&self) -> bool {
        match self {
            Pt(_) => false,
            Cantor(_) | Omega { .. } => true,
            Sum(parts) => parts.iter().any(Self::is_infinite),
        }
    }

    /// Nesting depth of the tree (a leaf has depth 1).
    pub fn depth(&self) -> usize {
        match self {
            Pt(_) | Cantor(_) => 1,
            Omega { child, .. } => 1 + child.depth(),
            Sum(parts) => 1 + parts.iter().map(Self::depth).max().unwrap_or(0),
        }
    }

    /// Number of isolated points when the space is finite.
    pub fn finite_size(&self) -> Option<usize> {
        match self {
            Pt(_) => Some(1),
            Sum(parts) => parts.iter().map(Self::finite_size).sum(),
            _ => None,
        }
    }

    /// Subexpression at a path produced by [`list_ends`] or validation.
    pub fn at(&self, path: &NodePath) -> Option<&EndSpaceExpr> {
        let mut cur = self;
        for step in &path.0 {
            cur = match (cur, step) {
                (Sum(parts), Step::Summand(i)) => parts.get(*i)?,
                (Omega { child, .. }, Step::Child) => child,
                _ => return None,
            };
        }
        Some(cur)
    }
}

impl fmt::Display for EndSpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pt(m) => write!(f, "pt{}", m.suffix()),
            Cantor(m) => write!(f, "cantor{}", m.suffix()),
            Omega { child, limit } => write!(f, "omega({child}){}", limit.suffix()),
            Sum(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Summand(usize),
    Child,
}

/// Location of a node inside an expression, printed like `ends.1.child`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodePath(pub Vec<Step>);

impl NodePath {
    pub fn push(&self, step: Step) -> Self {
        let mut v = self.0.clone();
        v.push(step);
        NodePath(v)
    }
}

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ends")?;
        for s in &self.0 {
            match s {
                Step::Summand(i) => write!(f, ".{i}")?,
                Step::Child => write!(f, ".child")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Genus {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Genus::Finite(g) => write!(f, "{g}"),
            Genus::Infinite => write!(f, "inf"),
        }
    }
}

/// A surface given by its genus and marked end space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurfaceSpec {
    pub genus: Genus,
    pub ends: EndSpaceExpr,
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "genus = {}; ends = {}", self.genus, self.ends)
    }
}

/// Which invariant a [`Violation`] breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Invariant {
    GenusMismatch,
    NotClosed,
    ShortSum,
    NestedSum,
    FiniteType,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Invariant::GenusMismatch => "genus/E_inf mismatch",
            Invariant::NotClosed => "E_inf not closed",
            Invariant::ShortSum => "sum with fewer than two summands",
            Invariant::NestedSum => "sum not flattened",
            Invariant::FiniteType => "finite-type surface",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub invariant: Invariant,
    pub path: NodePath,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}: {}", self.invariant, self.path, self.detail)
    }
}

/// Checks the structural invariants of an expression alone.
pub fn validate_expr(expr: &EndSpaceExpr) -> Vec<Violation> {
    let mut out = Vec::new();
    walk_validate(expr, &NodePath::default(), &mut out);
    out
}

fn walk_validate(e: &EndSpaceExpr, path: &NodePath, out: &mut Vec<Violation>) {
    match e {
        Pt(_) | Cantor(_) => {}
        Omega { child, limit } => {
            if *limit == Mark::Planar && child.has_mark(Mark::Nonplanar) {
                out.push(Violation {
                    invariant: Invariant::NotClosed,
                    path: path.clone(),
                    detail: "nonplanar ends accumulate onto a planar limit; mark the limit with *".into(),
                });
            }
            walk_validate(child, &path.push(Step::Child), out);
        }
        Sum(parts) => {
            if parts.len() < 2 {
                out.push(Violation {
                    invariant: Invariant::ShortSum,
                    path: path.clone(),
                    detail: format!("{} summand(s)", parts.len()),
                });
            }
            for (i, p) in parts.iter().enumerate() {
                let sub = path.push(Step::Summand(i));
                if matches!(p, Sum(_)) {
                    out.push(Violation {
                        invariant: Invariant::NestedSum,
                        path: sub.clone(),
                        detail: "sum directly inside a sum".into(),
                    });
                }
                walk_validate(p, &sub, out);
            }
        }
    }
}

/// Checks every invariant of a surface specification.
pub fn validate(spec: &SurfaceSpec) -> Vec<Violation> {
    let mut out = validate_expr(&spec.ends);
    let nonplanar = spec.ends.has_mark(Mark::Nonplanar);
    match (spec.genus, nonplanar) {
        (Genus::Infinite, false) => out.push(Violation {
            invariant: Invariant::GenusMismatch,
            path: NodePath::default(),
            detail: "infinite genus needs at least one nonplanar end".into(),
        }),
        (Genus::Finite(g), true) => out.push(Violation {
            invariant: Invariant::GenusMismatch,
            path: NodePath::default(),
            detail: format!("nonplanar ends require infinite genus, got genus {g}"),
        }),
        _ => {}
    }
    if spec.genus != Genus::Infinite && !spec.ends.is_infinite() {
        out.push(Violation {
            invariant: Invariant::FiniteType,
            path: NodePath::default(),
            detail: "finite genus and finitely many ends".into(),
        });
    }
    out
}

/// How an end position is realized in the space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum EndKind {
    Point,
    Limit,
    CantorFamily,
}

/// Number of actual ends a listed position stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Multiplicity {
    Finite(u64),
    CountablyMany,
    CantorMany,
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(n) => write!(f, "{n}"),
            Multiplicity::CountablyMany => write!(f, "countably many"),
            Multiplicity::CantorMany => write!(f, "Cantor many"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndDescriptor {
    pub path: NodePath,
    pub kind: EndKind,
    pub multiplicity: Multiplicity,
    pub mark: Mark,
    /// Model of arbitrarily small clopen neighborhoods of the end.
    pub germ: EndSpaceExpr,
}

/// Enumerates end positions: every point, every limit, every Cantor family.
pub fn list_ends(expr: &EndSpaceExpr) -> Vec<EndDescriptor> {
    let mut out = Vec::new();
    walk_ends(expr, &NodePath::default(), false, &mut out);
    out
}

fn walk_ends(e: &EndSpaceExpr, path: &NodePath, repeated: bool, out: &mut Vec<EndDescriptor>) {
    let many = |single: Multiplicity| if repeated { Multiplicity::CountablyMany } else { single };
    match e {
        Pt(m) => out.push(EndDescriptor {
            path: path.clone(),
            kind: EndKind::Point,
            multiplicity: many(Multiplicity::Finite(1)),
            mark: *m,
            germ: e.clone(),
        }),
        Cantor(m) => out.push(EndDescriptor {
            path: path.clone(),
            kind: EndKind::CantorFamily,
            multiplicity: Multiplicity::CantorMany,
            mark: *m,
            germ: e.clone(),
        }),
        Omega { child, limit } => {
            walk_ends(child, &path.push(Step::Child), true, out);
            out.push(EndDescriptor {
                path: path.clone(),
                kind: EndKind::Limit,
                multiplicity: many(Multiplicity::Finite(1)),
                mark: *limit,
                germ: e.clone(),
            });
        }
        Sum(parts) => {
            for (i, p) in parts.iter().enumerate() {
                walk_ends(p, &path.push(Step::Summand(i)), repeated, out);
            }
        }
    }
}
