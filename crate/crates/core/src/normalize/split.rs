use num_traits::{One, Zero};

use crate::endo::REndomorphism;
use crate::error::{Error, Result};
use crate::path_algebra::{Element, Potential};
use crate::scalar::Scalar;
use crate::surface::{CycleKind, CycleType, TriangulationQuiver};

/// A potential separated by cycle shape.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitPotential {
    pub f: Potential,
    pub g: Potential,
    pub fg: Potential,
}

impl SplitPotential {
    pub fn part(&self, kind: CycleKind) -> &Potential {
        match kind {
            CycleKind::F => &self.f,
            CycleKind::G => &self.g,
            CycleKind::FG => &self.fg,
        }
    }

    pub fn sum(&self) -> Result<Potential> {
        self.f.add(&self.g)?.add(&self.fg)
    }

    /// Coefficient of the `n`-th power of the 3-cycle of triangle `t`.
    pub fn triangle_coefficient(&self, tq: &TriangulationQuiver, t: usize, n: usize) -> Result<Scalar> {
        self.f.coeff(&tq.f_path(3 * n, tq.triangle_base(t)))
    }

    /// Coefficient of the `n`-th power of the cycle around puncture `p`.
    pub fn puncture_coefficient(&self, tq: &TriangulationQuiver, p: usize, n: usize) -> Result<Scalar> {
        self.g.coeff(&tq.puncture_power(p, n))
    }

    /// The elements `ω_a` with `fg-part ∼ Σ_a f²(a) f(a) ω_a`, indexed by arrow.
    pub fn omegas(&self, tq: &TriangulationQuiver) -> Result<Vec<Element>> {
        let q = tq.quiver();
        let degree = self.fg.degree();
        let mut out = vec![Element::zero(q, degree); q.num_arrows()];
        for (c, x) in self.fg.terms() {
            match tq.classify_unchecked(c)? {
                CycleType::FG { a, rotation, .. } => {
                    let rest = rotation.slice(q, 2..rotation.len());
                    out[a.index()].add_term(rest, x.clone());
                }
                other => return Err(Error::Invariant(format!("{} in the fg-part classified as {:?}", c.display(q), other.kind()))),
            }
        }
        Ok(out)
    }
}

/// Separates `s` into its f-, g- and fg-parts.
pub fn split(tq: &TriangulationQuiver, s: &Potential) -> Result<SplitPotential> {
    tq.conditions().require()?;
    let mut f = Element::zero(s.quiver(), s.degree());
    let mut g = f.clone();
    let mut fg = f.clone();
    for (c, x) in s.terms() {
        let part = match tq.classify_unchecked(c)?.kind() {
            CycleKind::F => &mut f,
            CycleKind::G => &mut g,
            CycleKind::FG => &mut fg,
        };
        part.add_term(c.clone(), x.clone());
    }
    Ok(SplitPotential {
        f: Potential::from_canonical(f),
        g: Potential::from_canonical(g),
        fg: Potential::from_canonical(fg),
    })
}

/// Fails unless no term of `p` is a triangle 3-cycle.
pub fn require_triangle_free(tq: &TriangulationQuiver, p: &Potential, what: &str) -> Result<()> {
    for t in 0..tq.num_triangles() {
        if !p.coeff(&tq.triangle_cycle(t))?.is_zero() {
            return Err(Error::Hypothesis(format!(
                "{what} contains the 3-cycle of triangle {}",
                describe_triangle(tq, t)
            )));
        }
    }
    Ok(())
}

pub(crate) fn describe_triangle(tq: &TriangulationQuiver, t: usize) -> String {
    let [x, y, z] = tq.triangulation().triangles()[t];
    format!("{} (arcs {x}, {y}, {z})", t + 1)
}

/// Rescaling of each triangle's base arrow that makes every triangle
/// coefficient one.
#[derive(Clone, Debug)]
pub struct TriangleNormalization {
    pub map: REndomorphism,
    /// The image of the input, `T + U`.
    pub potential: Potential,
    /// The image minus `T`; free of triangle 3-cycles.
    pub u: Potential,
}

pub fn normalize_triangle_coefficients(tq: &TriangulationQuiver, s: &Potential) -> Result<TriangleNormalization> {
    let q = tq.quiver();
    let degree = s.degree();
    let mut rules = Vec::new();
    for t in 0..tq.num_triangles() {
        let z = s.coeff(&tq.triangle_cycle(t))?;
        if z.is_zero() {
            return Err(Error::Hypothesis(format!("the 3-cycle of triangle {} is missing", describe_triangle(tq, t))));
        }
        if !z.is_one() {
            let base = tq.triangle_base(t);
            rules.push((base, Element::from_arrow(q, degree, base).scale(&z.recip())));
        }
    }
    let map = REndomorphism::new(q, degree, rules)?;
    let potential = map.apply_potential(s)?;
    let u = potential.sub(&tq.potential_t(degree))?;
    require_triangle_free(tq, &u, "the rescaled remainder")?;
    Ok(TriangleNormalization { map, potential, u })
}
