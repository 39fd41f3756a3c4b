//! Exact lattice and polynomial computations for Kummer surfaces in
//! characteristic 2 via the Leech lattice.
#![allow(clippy::needless_range_loop, clippy::should_implement_trait, clippy::type_complexity)]

pub mod chamber;
pub mod error;
pub mod fixture;
pub mod graph;
pub mod leech;
pub mod linalg;
pub mod lorentz;
pub mod mog;
pub mod quartic;
pub mod report;
pub mod surface;
pub mod verify;

pub use error::{Error, Result};
