use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Deserialize;

use crate::error::{Error, Result};

use super::class::{Bounds, StructureClass};
use super::structure::{FiniteStructure, Signature};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRelation {
    name: String,
    arity: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStructure {
    size: usize,
    #[serde(default)]
    relations: BTreeMap<String, Vec<Vec<usize>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBounds {
    source: usize,
    target: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClass {
    signature: Vec<RawRelation>,
    structures: Vec<RawStructure>,
    bounds: Option<RawBounds>,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Syntax { line: e.line(), column: e.column(), message: e.to_string() }
}

fn parse_raw(text: &str) -> Result<(Arc<Signature>, Vec<FiniteStructure>, Option<RawBounds>)> {
    let raw: RawClass = serde_json::from_str(text).map_err(json_error)?;
    let sig = Arc::new(Signature::new(raw.signature.into_iter().map(|r| (r.name, r.arity)).collect())?);
    let mut structures = Vec::with_capacity(raw.structures.len());
    for (i, s) in raw.structures.into_iter().enumerate() {
        let mut relations = vec![Vec::new(); sig.len()];
        for (name, tuples) in s.relations {
            let idx = sig
                .index_of(&name)
                .ok_or_else(|| Error::validity(format!("structure {i}: relation {name:?} is not in the signature")))?;
            relations[idx] = tuples;
        }
        let st = FiniteStructure::new(sig.clone(), s.size, relations).map_err(|e| match e {
            Error::Validity(v) => Error::Validity(v.into_iter().map(|m| format!("structure {i}: {m}")).collect()),
            other => other,
        })?;
        structures.push(st);
    }
    Ok((sig, structures, raw.bounds))
}

/// Parses a structure-class file.
pub fn parse_class(text: &str) -> Result<StructureClass> {
    let (sig, structures, bounds) = parse_raw(text)?;
    let bounds = bounds.ok_or_else(|| Error::validity("class file lacks bounds"))?;
    StructureClass::new(sig, structures, Bounds { source: bounds.source, target: bounds.target })
}

/// Parses a file in the class format holding exactly one structure; bounds
/// are optional and ignored.
pub fn parse_structure_file(text: &str) -> Result<FiniteStructure> {
    let (_, mut structures, _) = parse_raw(text)?;
    if structures.len() != 1 {
        return Err(Error::validity(format!("expected exactly one structure, found {}", structures.len())));
    }
    Ok(structures.pop().unwrap())
}

fn json_str(s: &str) -> String {
    serde_json::to_string(s).expect("string serializes")
}

fn print_file(sig: &Signature, members: &[FiniteStructure], bounds: Option<Bounds>) -> String {
    let mut out = String::from("{\n  \"signature\": [");
    let rels: Vec<String> = sig
        .relations()
        .iter()
        .map(|(n, a)| format!("{{\"name\": {}, \"arity\": {a}}}", json_str(n)))
        .collect();
    out.push_str(&rels.join(", "));
    out.push_str("],\n  \"structures\": [\n");
    let structs: Vec<String> = members
        .iter()
        .map(|m| {
            let rels: Vec<String> = (0..sig.len())
                .map(|i| {
                    let tuples: Vec<String> = m
                        .tuples(i)
                        .iter()
                        .map(|t| format!("[{}]", t.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
                        .collect();
                    format!("{}: [{}]", json_str(sig.name(i)), tuples.join(", "))
                })
                .collect();
            format!("    {{\"size\": {}, \"relations\": {{{}}}}}", m.size(), rels.join(", "))
        })
        .collect();
    out.push_str(&structs.join(",\n"));
    out.push_str("\n  ]");
    if let Some(b) = bounds {
        out.push_str(&format!(",\n  \"bounds\": {{\"source\": {}, \"target\": {}}}", b.source, b.target));
    }
    out.push_str("\n}\n");
    out
}

/// Canonical text form; [`parse_class`] inverts it exactly.
pub fn print_class(class: &StructureClass) -> String {
    print_file(class.signature(), class.members(), Some(class.bounds()))
}

/// A single structure in the class format, without bounds.
pub fn print_structure(structure: &FiniteStructure) -> String {
    print_file(structure.signature(), std::slice::from_ref(structure), None)
}

/// One permutation per line as whitespace- or comma-separated images;
/// `#` starts a comment.
pub fn parse_permutations(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut perm = Vec::new();
        let mut col = 0;
        for token in line.split(|c: char| c.is_whitespace() || c == ',') {
            let here = line[col..].find(token).map_or(col, |p| col + p);
            col = here + token.len();
            if token.is_empty() {
                continue;
            }
            let v = token.parse::<usize>().map_err(|_| Error::Syntax {
                line: ln + 1,
                column: here + 1,
                message: format!("expected a nonnegative integer, found {token:?}"),
            })?;
            perm.push(v);
        }
        if !perm.is_empty() {
            out.push(perm);
        }
    }
    Ok(out)
}
