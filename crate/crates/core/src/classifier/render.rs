use std::fmt;

use super::{Certificate, ClassificationReport, DisplaceabilityCert, Verdict};

impl fmt::Display for DisplaceabilityCert {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{", self.tag())?;
        match self {
            DisplaceabilityCert::PositiveFiniteGenus { genus } => write!(f, "genus={genus}")?,
            DisplaceabilityCert::InvariantSetGE3 { invariant_set, size } => {
                let parts: Vec<String> = invariant_set.iter().map(|(g, n)| format!("{g} x{n}")).collect();
                write!(f, "size={size}; invariant_set=[{}]", parts.join(", "))?
            }
            DisplaceabilityCert::Figure7Pattern { nonplanar_ends, planar_maximal_ends } => {
                write!(f, "nonplanar_ends={nonplanar_ends}; planar_maximal_ends={planar_maximal_ends}")?
            }
            DisplaceabilityCert::CuratedTable { entry, derivation }
            | DisplaceabilityCert::DenseImpliesDisplaceableNegative { entry, derivation } => {
                write!(f, "entry={entry}; derivation={derivation}")?
            }
            DisplaceabilityCert::RemarkOneNegative { alpha } => write!(f, "alpha={alpha}")?,
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Displaceability(c) => write!(f, "{c}"),
            Certificate::MaximalEnds { count, classes } => {
                write!(f, "MaximalEnds{{count={count}; classes=[{}]}}", classes.join(", "))
            }
            Certificate::Named(n) => write!(f, "Named{{{n}}}"),
        }
    }
}

const ORDER: [&str; 6] = ["meager", "dense", "somewhere_dense", "pmap_dense", "extended_dense", "displaceability"];

impl ClassificationReport {
    fn verdicts(&self) -> [(&'static str, &Verdict); 6] {
        [
            (ORDER[0], &self.meager),
            (ORDER[1], &self.dense),
            (ORDER[2], &self.somewhere_dense),
            (ORDER[3], &self.pmap_dense),
            (ORDER[4], &self.extended_dense),
            (ORDER[5], &self.displaceability),
        ]
    }

    /// Stable-key-order `key: value` record.
    pub fn to_record(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("surface: {}\n", self.surface));
        let named = self.named_surface.map_or("none".to_string(), |n| n.to_string());
        s.push_str(&format!("named_surface: {named}\n"));
        s.push_str(&format!("maximal_ends.count: {}\n", self.maximal_end_summary.count));
        s.push_str(&format!("maximal_ends.classes: [{}]\n", self.maximal_end_summary.classes.join(", ")));
        for (key, v) in self.verdicts() {
            s.push_str(&format!("{key}.value: {}\n", v.value));
            s.push_str(&format!("{key}.reason: {}\n", v.reason));
            s.push_str(&format!("{key}.citations: [{}]\n", v.citations.join(", ")));
            s.push_str(&format!("{key}.heuristic: {}\n", v.heuristic));
            if !v.unfired.is_empty() {
                s.push_str(&format!("{key}.unfired: [{}]\n", v.unfired.join("; ")));
            }
            if let Some(c) = &v.certificate {
                s.push_str(&format!("{key}.certificate: {c}\n"));
            }
        }
        s
    }

    /// Human-oriented summary.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("surface         {}\n", self.surface));
        if let Some(n) = self.named_surface {
            s.push_str(&format!("named           {n}\n"));
        }
        s.push_str(&format!(
            "maximal ends    {} [{}]\n",
            self.maximal_end_summary.count,
            self.maximal_end_summary.classes.join(", ")
        ));
        for (key, v) in self.verdicts() {
            let flag = if v.heuristic { " (heuristic)" } else { "" };
            s.push_str(&format!("{key:<16}{}{flag}: {}", v.value, v.reason));
            if !v.citations.is_empty() {
                s.push_str(&format!(" [{}]", v.citations.join(", ")));
            }
            s.push('\n');
            if let Some(c) = &v.certificate {
                s.push_str(&format!("{:<16}certificate {c}\n", ""));
            }
            for u in &v.unfired {
                s.push_str(&format!("{:<16}not applicable: {u}\n", ""));
            }
        }
        s
    }
}
