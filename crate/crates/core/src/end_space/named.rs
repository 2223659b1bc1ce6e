use std::fmt;

use serde::Serialize;

use crate::error::Result;

use super::expr::{EndSpaceExpr, Genus, Mark, SurfaceSpec};
use super::normal::normal_form;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NamedSurface {
    LochNess,
    JacobsLadder,
    Flute,
    CantorTree,
}

impl fmt::Display for NamedSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NamedSurface::LochNess => "Loch Ness monster",
            NamedSurface::JacobsLadder => "Jacob's ladder",
            NamedSurface::Flute => "flute",
            NamedSurface::CantorTree => "Cantor tree",
        })
    }
}

pub fn recognize_named(spec: &SurfaceSpec) -> Result<Option<NamedSurface>> {
    let nf = normal_form(&spec.ends)?;
    let star = EndSpaceExpr::Pt(Mark::Nonplanar);
    Ok(match spec.genus {
        Genus::Infinite if nf == star => Some(NamedSurface::LochNess),
        Genus::Infinite if nf == star.times(2) => Some(NamedSurface::JacobsLadder),
        Genus::Finite(0) if nf == EndSpaceExpr::omega(EndSpaceExpr::pt(), Mark::Planar) => Some(NamedSurface::Flute),
        Genus::Finite(0) if nf == EndSpaceExpr::Cantor(Mark::Planar) => Some(NamedSurface::CantorTree),
        _ => None,
    })
}
