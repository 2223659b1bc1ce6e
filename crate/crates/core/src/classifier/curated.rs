use std::sync::OnceLock;

use crate::end_space::{normal_form, parse_surface, Genus, EndSpaceExpr};
use crate::error::{Error, Result};

use super::CertTag;

const TABLE: &str = include_str!("curated.txt");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuratedEntry {
    pub name: String,
    pub genus: Genus,
    pub normal_ends: EndSpaceExpr,
    pub has_nondisplaceable: bool,
    pub tag: CertTag,
    pub strict_ok: bool,
    pub citations: Vec<String>,
    pub derivation: String,
}

fn yes_no(field: &str, line: usize) -> Result<bool> {
    match field {
        "yes" => Ok(true),
        "no" => Ok(false),
        other => Err(Error::Format(format!("curated table line {line}: expected yes/no, got {other:?}"))),
    }
}

fn parse_table(text: &str) -> Result<Vec<CuratedEntry>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split('|').map(str::trim).collect();
        if f.len() != 7 {
            return Err(Error::Format(format!("curated table line {}: expected 7 fields", i + 1)));
        }
        let spec = parse_surface(f[1])?;
        let tag = match f[3] {
            "CuratedTable" => CertTag::CuratedTable,
            "DenseImpliesDisplaceableNegative" => CertTag::DenseImpliesDisplaceableNegative,
            other => return Err(Error::Format(format!("curated table line {}: bad tag {other:?}", i + 1))),
        };
        out.push(CuratedEntry {
            name: f[0].to_string(),
            genus: spec.genus,
            normal_ends: normal_form(&spec.ends)?,
            has_nondisplaceable: yes_no(f[2], i + 1)?,
            tag,
            strict_ok: yes_no(f[4], i + 1)?,
            citations: f[5].split(',').map(|c| c.trim().to_string()).collect(),
            derivation: f[6].to_string(),
        });
    }
    Ok(out)
}

pub fn curated_table() -> &'static [CuratedEntry] {
    static CELL: OnceLock<Vec<CuratedEntry>> = OnceLock::new();
    CELL.get_or_init(|| parse_table(TABLE).expect("built-in curated table is well formed"))
}

pub fn lookup(genus: Genus, normal_ends: &EndSpaceExpr) -> Option<&'static CuratedEntry> {
    curated_table().iter().find(|e| e.genus == genus && &e.normal_ends == normal_ends)
}
