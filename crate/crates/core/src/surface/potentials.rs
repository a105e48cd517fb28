use num_traits::{One, Zero};

use super::quiver::TriangulationQuiver;
use crate::error::{Error, Result};
use crate::path_algebra::{Path, Potential};
use crate::scalar::Scalar;

/// Headroom rule for default truncation: twice the longest term plus six.
pub fn default_degree(max_term_length: usize) -> usize {
    2 * max_term_length + 6
}

impl TriangulationQuiver {
    /// Sum of the triangle 3-cycles, each with coefficient one.
    pub fn potential_t(&self, degree: usize) -> Potential {
        let cycles = (0..self.num_triangles()).map(|t| (self.triangle_cycle(t), Scalar::one()));
        Potential::from_cycles(self.quiver(), degree, cycles).expect("triangle cycles are cycles")
    }

    /// `T + Σ_p x_p · (cycle around p)`, with `x` listed in puncture order.
    pub fn potential_s(&self, x: &[Scalar], degree: usize) -> Result<Potential> {
        if x.len() != self.punctures().len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} puncture coefficients, got {}",
                self.punctures().len(),
                x.len()
            )));
        }
        if x.iter().any(Zero::is_zero) {
            return Err(Error::InvalidArgument("puncture coefficients must be nonzero".into()));
        }
        let mut s = self.potential_t(degree);
        for (p, xp) in x.iter().enumerate() {
            s.add_scaled(&Potential::cycle(self.quiver(), degree, self.puncture_cycle(p), Scalar::one())?, xp)?;
        }
        Ok(s)
    }

    /// `T + x · (cycle around the puncture)^n` on a once-punctured surface.
    pub fn potential_sxn(&self, x: &Scalar, n: usize, degree: usize) -> Result<Potential> {
        if self.punctures().len() != 1 {
            return Err(Error::InvalidArgument(format!(
                "requires a once-punctured surface, this one has {} punctures",
                self.punctures().len()
            )));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("the power n must be positive".into()));
        }
        if x.is_zero() {
            return Err(Error::InvalidArgument("x must be nonzero".into()));
        }
        let mut s = self.potential_t(degree);
        s.add_scaled(&Potential::cycle(self.quiver(), degree, self.puncture_power(0, n), Scalar::one())?, x)?;
        Ok(s)
    }

    /// The cycle around puncture `p` traversed `n` times.
    pub fn puncture_power(&self, p: usize, n: usize) -> Path {
        let base = self.punctures()[p].base;
        self.g_path(n * self.punctures()[p].valency, base)
    }

    pub fn default_degree_s(&self) -> usize {
        default_degree(self.punctures().iter().map(|p| p.valency).max().unwrap_or(3).max(3))
    }

    pub fn default_degree_sxn(&self, n: usize) -> usize {
        default_degree((n * self.punctures()[0].valency).max(3))
    }
}
