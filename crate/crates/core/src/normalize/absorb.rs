use num_traits::Zero;
use serde::Serialize;

use super::split::split;
use super::zeta::{absorb_cycle, ZetaData};
use crate::endo::{limit_compose, REndomorphism};
use crate::error::{Error, Result};
use crate::ext::ExtNat;
use crate::path_algebra::{Element, Path, Potential};
use crate::scalar::Scalar;
use crate::surface::{CycleType, Triangulation, TriangulationQuiver};

#[derive(Clone, Debug)]
pub struct Absorption {
    /// Carries `S + V` to `S`.
    pub map: REndomorphism,
    pub rounds: Vec<AbsorptionRound>,
    /// False when the triangulation is not the two-puncture reference
    /// triangulation of its genus, where termination is not guaranteed.
    pub in_reference_family: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AbsorptionRound {
    /// Shortest term of `V` when the round began.
    pub m: usize,
    /// Lowest power removed at each puncture, in puncture order.
    pub powers: Vec<Option<usize>>,
}

/// Finds an automorphism carrying `S(x) + V` to `S(x)`, where `V` consists of
/// second and higher powers of puncture cycles.
pub fn absorb_g_powers(tq: &TriangulationQuiver, x: &[Scalar], v: &Potential) -> Result<Absorption> {
    let q = tq.quiver();
    let degree = v.degree();
    let s = tq.potential_s(x, degree)?;
    check_high_powers(tq, v)?;
    let in_reference_family = Triangulation::twice_punctured_genus(tq.triangulation().genus())
        .map(|t| t.isomorphism(tq.triangulation()).is_some())
        .unwrap_or(false);

    let mut current = v.clone();
    let mut rounds = Vec::new();
    let steps = std::iter::from_fn(|| {
        if current.is_zero() {
            return None;
        }
        Some((|| {
            let ExtNat::Finite(m) = current.short() else { unreachable!("nonzero potential") };
            let mut round = REndomorphism::identity(q, degree);
            let mut powers = Vec::new();
            for p in 0..tq.punctures().len() {
                let Some((r, lambda)) = lowest_power(tq, &current, p)? else {
                    powers.push(None);
                    continue;
                };
                powers.push(Some(r));
                let a = tq.punctures()[p].base;
                let mp = tq.m(a);
                let scale = -lambda / &x[p];
                let correction = Path::arrow(q, a).concat(&tq.g_path(mp * (r - 1), a), q).expect("a closes its own puncture cycle");
                let image = Element::from_arrow(q, degree, a).add(&Element::from_path(q, degree, correction).scale(&scale))?;
                let upsilon = REndomorphism::new(q, degree, [(a, image)])?;
                let data = ZetaData { lambda: scale, a, t: mp * (r - 1), c: Path::arrow(q, tq.f(tq.f(a))) };
                let image = upsilon.apply_potential(&s.add(&current)?)?;
                let u = image.sub(&s)?.sub(&data.potential(tq, degree)?)?;
                if split(tq, &u)?.g != u {
                    return Err(Error::Invariant(format!("substitution at puncture {} left non-puncture terms", p + 1)));
                }
                let absorbed = absorb_cycle(tq, x, m, &u, &data)?;
                round = absorbed.map.compose(&upsilon)?.compose(&round)?;
                current = u.add(&absorbed.xi)?;
            }
            check_high_powers(tq, &current)?;
            if current.short() <= ExtNat::Finite(m) {
                return Err(Error::Invariant(format!("round at m = {m} did not lengthen V (short {})", current.short())));
            }
            rounds.push(AbsorptionRound { m, powers });
            Ok(round)
        })())
    });
    let composite = limit_compose(q, degree, steps)?;
    if !current.is_zero() {
        return Err(Error::Invariant(format!("absorption stopped with {} terms left", current.len())));
    }
    Ok(Absorption { map: composite.map, rounds, in_reference_family })
}

/// Smallest `n` with a nonzero coefficient on the `n`-th power of the cycle
/// around puncture `p`, with that coefficient.
fn lowest_power(tq: &TriangulationQuiver, v: &Potential, p: usize) -> Result<Option<(usize, Scalar)>> {
    let mut best: Option<(usize, Scalar)> = None;
    for (c, coeff) in v.terms() {
        if let CycleType::G { n, base } = tq.classify_unchecked(c)? {
            if tq.puncture_of(base) == p && best.as_ref().is_none_or(|(b, _)| n < *b) && !coeff.is_zero() {
                best = Some((n, coeff.clone()));
            }
        }
    }
    Ok(best)
}

fn check_high_powers(tq: &TriangulationQuiver, v: &Potential) -> Result<()> {
    tq.conditions().require()?;
    for (c, _) in v.terms() {
        match tq.classify_unchecked(c)? {
            CycleType::G { n, .. } if n >= 2 => {}
            CycleType::G { .. } => {
                return Err(Error::Hypothesis(format!("{} is a first power of a puncture cycle", c.display(tq.quiver()))))
            }
            _ => return Err(Error::Hypothesis(format!("{} is not a power of a puncture cycle", c.display(tq.quiver())))),
        }
    }
    Ok(())
}
