pub mod classifier;
pub mod curve;
pub mod end_space;
pub mod error;
pub mod fraisse;
pub mod mann_rafi;

pub use error::{Error, Result};

/// Multicurve coordinates with arbitrary-precision entries.
pub type MultiCurve = curve::MultiCurveCoords<num_bigint::BigInt>;
/// Multicurve coordinates in machine integers; arithmetic reports overflow.
pub type MultiCurve64 = curve::MultiCurveCoords<i64>;
