//! Quivers, paths and truncated arithmetic in the complete path algebra.

mod element;
mod path;
mod potential;
mod quiver;

pub use element::Element;
pub(crate) use element::check_same;
pub use path::{least_rotation, ArrowSeq, Path};
pub use potential::{Potential, TermDifference};
pub use quiver::{Arrow, ArrowId, Quiver, VertexId};
