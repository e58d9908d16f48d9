//! Polyline compression onto a lattice of candidate vertex locations.
//!
//! The compressed polyline has the fewest segments such that every part of
//! the source stays within a tolerance of it; among those, the one with the
//! least integral squared deviation is chosen.

pub mod baseline;
pub mod bench;
pub mod dp;
pub mod error;
pub mod generate;
pub mod geom;
pub mod hull;
pub mod interval;
pub mod io;
pub mod lattice;
pub mod ortho;
pub mod svg;
pub mod verify;
pub mod zigzag;

pub use dp::{compress, solve, solve_closed, CompressedResult, LexCost, PruneRule, SolveConfig};
pub use error::{Error, Result};
pub use geom::{Point, Polyline};
pub use interval::EndpointDirs;
pub use io::{Format, PolylineDocument};
pub use ortho::OrthoConfig;
