//! Normal forms for potentials on triangulation quivers: rescaling triangle
//! coefficients, trading triangle and mixed terms for puncture-cycle powers,
//! and absorbing higher puncture powers.

mod absorb;
mod gform;
mod lengthen;
mod split;
mod zeta;

pub use absorb::{absorb_g_powers, Absorption, AbsorptionRound};
pub use gform::{g_normal_form, GNormalForm};
pub use lengthen::{lengthen, Lengthening, Symbol};
pub use split::{normalize_triangle_coefficients, require_triangle_free, split, SplitPotential, TriangleNormalization};
pub use zeta::{absorb_cycle, zeta_step, AbsorbedCycle, ZetaData, ZetaStep};
