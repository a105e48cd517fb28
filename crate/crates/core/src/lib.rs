//! Exact computations with quivers with potentials on triangulated surfaces.

pub mod cli;
pub mod endo;
mod linalg;
pub mod error;
pub mod ext;
pub mod io;
pub mod jacobian;
pub mod mutation;
pub mod normalize;
pub mod path_algebra;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod surface;

pub use error::{Error, Result};
pub use ext::ExtNat;
pub use scalar::Scalar;
