//! Premutation, reduction and mutation of quivers with potentials, and the
//! flip-compatibility verifier.

mod flip_check;
mod premutate;
mod reduce;

use std::sync::Arc;

pub use flip_check::{verify_flip, FlipReport, FlipVerification};
pub use premutate::{premutate, Premutation};
pub use reduce::{reduce, Reduction};

use crate::error::Result;
use crate::path_algebra::{Potential, Quiver, VertexId};

/// A quiver with a potential; the truncation degree is the potential's.
#[derive(Clone, Debug, PartialEq)]
pub struct Qp {
    pub potential: Potential,
}

impl Qp {
    pub fn new(potential: Potential) -> Qp {
        Qp { potential }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        self.potential.quiver()
    }

    pub fn degree(&self) -> usize {
        self.potential.degree()
    }

    pub fn is_two_acyclic(&self) -> bool {
        self.quiver().is_two_acyclic()
    }
}

/// Premutation followed by reduction.
#[derive(Clone, Debug)]
pub struct Mutation {
    pub premutation: Premutation,
    pub reduction: Reduction,
}

impl Mutation {
    pub fn qp(&self) -> &Qp {
        &self.reduction.qp
    }
}

pub fn mutate(qp: &Qp, k: VertexId) -> Result<Mutation> {
    let premutation = premutate(qp, k)?;
    let reduction = reduce(&premutation.qp)?;
    Ok(Mutation { premutation, reduction })
}
