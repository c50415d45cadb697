//! Orbit geometry of commutative Hermann actions described by symmetric triads.

pub mod exact;
pub mod triad;
pub mod orbit;
pub mod cell;
mod linalg;
pub mod solver;
pub mod report;
pub mod svg;
