//! Exact symbolic intersection theory for counting Frobenius-destabilized
//! rank-2 bundles on a genus-2 curve.

pub mod bounds;
pub mod chern;
pub mod coef;
pub mod model;
pub mod ring;
pub mod verify;
