//! Three-valued verdicts on conjugacy-class density for big mapping class
//! groups, each backed by citations or a certificate.

mod curated;
mod render;

use std::fmt;

use serde::Serialize;

use crate::end_space::{characteristic, normal_form, recognize_named, validate, Genus, Mark, Multiplicity, NamedSurface, SurfaceSpec};
use crate::error::{Error, Result};
use crate::mann_rafi::{end_equivalence_classes, EndClassReport, MaximalCount};

pub use curated::{curated_table, CuratedEntry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Value {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Value::Yes => "Yes",
            Value::No => "No",
            Value::Unknown => "Unknown",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CertTag {
    PositiveFiniteGenus,
    InvariantSetGE3,
    Figure7Pattern,
    CuratedTable,
    RemarkOneNegative,
    DenseImpliesDisplaceableNegative,
}

impl fmt::Display for CertTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Witness for a displaceability verdict; the tag fixes which fields exist.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum DisplaceabilityCert {
    PositiveFiniteGenus { genus: u64 },
    /// Union of finite Mann-Rafi classes, as `(germ, count)` pairs.
    InvariantSetGE3 { invariant_set: Vec<(String, u64)>, size: u64 },
    Figure7Pattern { nonplanar_ends: u64, planar_maximal_ends: u64 },
    CuratedTable { entry: String, derivation: String },
    RemarkOneNegative { alpha: String },
    DenseImpliesDisplaceableNegative { entry: String, derivation: String },
}

impl DisplaceabilityCert {
    pub fn tag(&self) -> CertTag {
        match self {
            DisplaceabilityCert::PositiveFiniteGenus { .. } => CertTag::PositiveFiniteGenus,
            DisplaceabilityCert::InvariantSetGE3 { .. } => CertTag::InvariantSetGE3,
            DisplaceabilityCert::Figure7Pattern { .. } => CertTag::Figure7Pattern,
            DisplaceabilityCert::CuratedTable { .. } => CertTag::CuratedTable,
            DisplaceabilityCert::RemarkOneNegative { .. } => CertTag::RemarkOneNegative,
            DisplaceabilityCert::DenseImpliesDisplaceableNegative { .. } => CertTag::DenseImpliesDisplaceableNegative,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Certificate {
    Displaceability(DisplaceabilityCert),
    MaximalEnds { count: MaximalCount, classes: Vec<String> },
    Named(NamedSurface),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub value: Value,
    pub reason: String,
    /// Anchors of the results used; nonempty for Yes/No.
    pub citations: Vec<String>,
    pub certificate: Option<Certificate>,
    /// Criteria that did not fire; filled only for Unknown.
    pub unfired: Vec<String>,
    /// Depends on a generalization rather than a proven statement.
    pub heuristic: bool,
}

impl Verdict {
    fn decided(value: Value, reason: impl Into<String>, citations: &[&str], certificate: Option<Certificate>) -> Self {
        Verdict {
            value,
            reason: reason.into(),
            citations: citations.iter().map(|c| c.to_string()).collect(),
            certificate,
            unfired: vec![],
            heuristic: false,
        }
    }

    fn unknown(reason: impl Into<String>, unfired: Vec<String>) -> Self {
        Verdict { value: Value::Unknown, reason: reason.into(), citations: vec![], certificate: None, unfired, heuristic: false }
    }

    fn heuristic_if(mut self, flag: bool) -> Self {
        self.heuristic |= flag;
        self
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClassifierConfig {
    /// Drop heuristic criteria and heuristic curated rows.
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaximalEndSummary {
    pub count: MaximalCount,
    pub classes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub surface: String,
    pub meager: Verdict,
    pub dense: Verdict,
    pub somewhere_dense: Verdict,
    pub pmap_dense: Verdict,
    pub extended_dense: Verdict,
    pub displaceability: Verdict,
    pub maximal_end_summary: MaximalEndSummary,
    pub named_surface: Option<NamedSurface>,
}

fn ensure_valid(spec: &SurfaceSpec) -> Result<()> {
    let violations = validate(spec);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::Validity(violations.iter().map(ToString::to_string).collect()))
    }
}

fn finite_total(classes: &EndClassReport, pick: impl Fn(usize) -> bool) -> Option<u64> {
    let mut total = 0;
    for (i, c) in classes.classes.iter().enumerate() {
        if !pick(i) {
            continue;
        }
        match c.cardinality {
            Multiplicity::Finite(n) => total += n,
            _ => return None,
        }
    }
    Some(total)
}

/// Whether the surface has a non-displaceable finite-type subsurface.
pub fn nondisplaceable_finite_type(spec: &SurfaceSpec, config: ClassifierConfig) -> Result<Verdict> {
    ensure_valid(spec)?;
    let classes = end_equivalence_classes(spec)?;
    displaceability(spec, &classes, config)
}

fn displaceability(spec: &SurfaceSpec, classes: &EndClassReport, config: ClassifierConfig) -> Result<Verdict> {
    let mut unfired = Vec::new();

    // (a)
    if let Genus::Finite(g) = spec.genus {
        if g > 0 {
            return Ok(Verdict::decided(
                Value::Yes,
                format!("a compact subsurface carrying all {g} handles cannot be displaced"),
                &["genus-subsurface-nondisplaceable"],
                Some(Certificate::Displaceability(DisplaceabilityCert::PositiveFiniteGenus { genus: g })),
            ));
        }
    }
    unfired.push("PositiveFiniteGenus: genus is 0 or infinite".to_string());

    // (b)
    let finite: Vec<(String, u64)> = classes
        .classes
        .iter()
        .filter_map(|c| match c.cardinality {
            Multiplicity::Finite(n) => Some((c.germ.clone(), n)),
            _ => None,
        })
        .collect();
    let size: u64 = finite.iter().map(|(_, n)| n).sum();
    if size >= 3 {
        return Ok(Verdict::decided(
            Value::Yes,
            format!("the {size} ends in finite classes form an invariant set; a subsurface separating them is non-displaceable"),
            &["invariant-end-set-separation"],
            Some(Certificate::Displaceability(DisplaceabilityCert::InvariantSetGE3 { invariant_set: finite, size })),
        ));
    }
    unfired.push(format!("InvariantSetGE3: finite classes hold only {size} ends"));

    // (c)
    if config.strict {
        unfired.push("Figure7Pattern: disabled in strict mode".to_string());
    } else {
        let nonplanar = finite_total(classes, |i| classes.classes[i].mark == Mark::Nonplanar);
        let planar_max =
            finite_total(classes, |i| classes.classes[i].mark == Mark::Planar && classes.maximal_classes.contains(&i));
        match (nonplanar, planar_max) {
            (Some(e), Some(p)) if e > 0 && p > 0 => {
                return Ok(Verdict::decided(
                    Value::Yes,
                    format!("{e} nonplanar end(s) and {p} planar maximal end(s), both finite: a subsurface separating them is non-displaceable (heuristic)"),
                    &["genus-ends-versus-planar-maximal-ends"],
                    Some(Certificate::Displaceability(DisplaceabilityCert::Figure7Pattern {
                        nonplanar_ends: e,
                        planar_maximal_ends: p,
                    })),
                )
                .heuristic_if(true));
            }
            _ => unfired.push("Figure7Pattern: needs finitely many (and some) nonplanar ends and planar maximal ends".to_string()),
        }
    }

    // (d)
    if spec.genus == Genus::Finite(0) {
        if let Some((rank, 1)) = characteristic(&spec.ends)?.countable() {
            return Ok(Verdict::decided(
                Value::No,
                format!("planar surface with end space omega^{rank}+1: every finite-type subsurface is displaceable"),
                &["ordinal-surface-self-similarity"],
                Some(Certificate::Displaceability(DisplaceabilityCert::RemarkOneNegative { alpha: rank.to_string() })),
            ));
        }
    }
    unfired.push("RemarkOneNegative: not a planar surface with end space omega^alpha+1".to_string());

    // (e)
    let nf = normal_form(&spec.ends)?;
    match curated::lookup(spec.genus, &nf) {
        Some(entry) if entry.strict_ok || !config.strict => {
            let value = if entry.has_nondisplaceable { Value::Yes } else { Value::No };
            let cert = match entry.tag {
                CertTag::DenseImpliesDisplaceableNegative => DisplaceabilityCert::DenseImpliesDisplaceableNegative {
                    entry: entry.name.clone(),
                    derivation: entry.derivation.clone(),
                },
                _ => DisplaceabilityCert::CuratedTable { entry: entry.name.clone(), derivation: entry.derivation.clone() },
            };
            let citations: Vec<&str> = entry.citations.iter().map(String::as_str).collect();
            return Ok(Verdict::decided(
                value,
                format!("curated entry: {}", entry.name),
                &citations,
                Some(Certificate::Displaceability(cert)),
            )
            .heuristic_if(!entry.strict_ok));
        }
        Some(entry) => unfired.push(format!("CuratedTable: entry {} is heuristic and strict mode is on", entry.name)),
        None => unfired.push("CuratedTable: no curated entry".to_string()),
    }
    Ok(Verdict::unknown("no displaceability criterion applies", unfired))
}

fn maximal_cert(summary: &MaximalEndSummary) -> Option<Certificate> {
    Some(Certificate::MaximalEnds { count: summary.count, classes: summary.classes.clone() })
}

fn dense_verdict(disp: &Verdict, classes: &EndClassReport, summary: &MaximalEndSummary) -> Verdict {
    let cantor_max = classes.maximal().iter().any(|c| c.cardinality == Multiplicity::CantorMany);
    if cantor_max {
        return Verdict::decided(
            Value::No,
            "a Cantor set of maximal ends rules out a dense conjugacy class",
            &["dense-class-characterization", "cantor-maximal-shortcut"],
            maximal_cert(summary),
        );
    }
    if let MaximalCount::Finite(n) = summary.count {
        if n >= 2 {
            let distinct = classes.maximal_classes.len() >= 2;
            let mut cites = vec!["dense-class-characterization"];
            if distinct {
                cites.push("normal-subgroup-shortcut");
            }
            return Verdict::decided(Value::No, format!("{n} maximal ends; a dense class needs a unique maximal end"), &cites, maximal_cert(summary));
        }
    }
    match disp.value {
        Value::Yes => Verdict::decided(
            Value::No,
            "a non-displaceable finite-type subsurface rules out a dense conjugacy class",
            &["dense-class-characterization"],
            disp.certificate.clone(),
        )
        .heuristic_if(disp.heuristic),
        Value::No => Verdict::decided(
            Value::Yes,
            "unique maximal end and no non-displaceable finite-type subsurface",
            &["dense-class-characterization"],
            maximal_cert(summary),
        )
        .heuristic_if(disp.heuristic),
        Value::Unknown => {
            let mut unfired = disp.unfired.clone();
            unfired.push("unique maximal end, displaceability undecided".to_string());
            Verdict::unknown("displaceability is undecided and no shortcut applies", unfired)
        }
    }
}

fn somewhere_verdict(disp: &Verdict, summary: &MaximalEndSummary) -> Verdict {
    match summary.count {
        MaximalCount::CantorMany => {
            return Verdict::decided(
                Value::No,
                "a Cantor set of maximal ends rules out a somewhere dense conjugacy class",
                &["somewhere-dense-characterization", "cantor-maximal-shortcut"],
                maximal_cert(summary),
            )
        }
        MaximalCount::Finite(n) if n >= 3 => {
            return Verdict::decided(
                Value::No,
                format!("{n} maximal ends; a somewhere dense class allows at most two"),
                &["somewhere-dense-characterization"],
                maximal_cert(summary),
            )
        }
        _ => {}
    }
    match disp.value {
        Value::Yes => Verdict::decided(
            Value::No,
            "a non-displaceable finite-type subsurface rules out a somewhere dense conjugacy class",
            &["somewhere-dense-characterization"],
            disp.certificate.clone(),
        )
        .heuristic_if(disp.heuristic),
        Value::No => Verdict::decided(
            Value::Yes,
            "at most two maximal ends and no non-displaceable finite-type subsurface",
            &["somewhere-dense-characterization"],
            maximal_cert(summary),
        )
        .heuristic_if(disp.heuristic),
        Value::Unknown => {
            let mut unfired = disp.unfired.clone();
            unfired.push("at most two maximal ends, displaceability undecided".to_string());
            Verdict::unknown("displaceability is undecided", unfired)
        }
    }
}

pub fn classify(spec: &SurfaceSpec, config: ClassifierConfig) -> Result<ClassificationReport> {
    ensure_valid(spec)?;
    let classes = end_equivalence_classes(spec)?;
    let summary = MaximalEndSummary {
        count: classes.maximal_count(),
        classes: classes.maximal().iter().map(|c| format!("{} ({})", c.germ, c.cardinality)).collect(),
    };
    let named = recognize_named(spec)?;
    let disp = displaceability(spec, &classes, config)?;
    let dense = dense_verdict(&disp, &classes, &summary);
    let somewhere = somewhere_verdict(&disp, &summary);
    let pmap = if named == Some(NamedSurface::LochNess) {
        Verdict::decided(
            Value::Yes,
            "the pure mapping class group of the Loch Ness monster has a dense conjugacy class",
            &["loch-ness-pmap-dense"],
            Some(Certificate::Named(NamedSurface::LochNess)),
        )
    } else {
        Verdict::decided(
            Value::No,
            "closed subgroups of the pure mapping class group containing twist powers have no dense conjugacy class",
            &["pmap-criterion"],
            None,
        )
    };
    Ok(ClassificationReport {
        surface: spec.to_string(),
        meager: Verdict::decided(Value::Yes, "every conjugacy class is meager", &["all-classes-meager"], None),
        dense,
        somewhere_dense: somewhere,
        pmap_dense: pmap,
        extended_dense: Verdict::decided(
            Value::No,
            "the extended mapping class group has no dense conjugacy class",
            &["extended-group-no-dense"],
            None,
        ),
        displaceability: disp,
        maximal_end_summary: summary,
        named_surface: named,
    })
}
