//! Triangulated closed surfaces, their quivers and the standard potentials.

mod classify;
mod potentials;
mod quiver;
mod triangulation;

pub use classify::{cycles_up_to, CycleKind, CycleType};
pub use potentials::default_degree;
pub use quiver::{Conditions, Puncture, TriangulationQuiver};
pub use triangulation::{Side, Triangulation};
