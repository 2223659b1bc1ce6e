//! Multicurves on the punctured disk and the braid group action on them.

mod action;
mod braid;
mod coord;
mod coords;
pub mod intersect;
pub mod oracle;
mod round;

pub use action::{act_generator, act_word};
pub use braid::{BraidWord, Generator};
pub use coord::Coordinate;
pub use coords::MultiCurveCoords;
pub use intersect::intersection_with_round;
pub use round::{round_twist_word, RoundCurve};
