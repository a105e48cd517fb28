use super::lengthen::{lengthen, Symbol};
use super::split::{require_triangle_free, split};
use crate::endo::{limit_compose, REndomorphism};
use crate::error::{Error, Result};
use crate::ext::ExtNat;
use crate::path_algebra::Potential;
use crate::surface::TriangulationQuiver;

#[derive(Clone, Debug)]
pub struct GNormalForm {
    pub map: REndomorphism,
    /// Only powers of puncture cycles.
    pub w: Potential,
    /// Symbols chosen at each lengthening step.
    pub symbols: Vec<Symbol>,
}

/// Carries `T + Z + U` to `T + Z + W` with `W` made of puncture-cycle powers.
pub fn g_normal_form(tq: &TriangulationQuiver, z: &Potential, u: &Potential) -> Result<GNormalForm> {
    let q = tq.quiver();
    let degree = u.degree();
    if z.degree() != degree {
        return Err(Error::TruncationMismatch(z.degree(), degree));
    }
    require_triangle_free(tq, z, "Z")?;
    require_triangle_free(tq, u, "U")?;
    let parts = split(tq, u)?;
    let mut w_acc = parts.g.clone();
    let mut rest = u.sub(&parts.g)?;
    let mut shorts = vec![rest.short()];
    let mut symbols = Vec::new();

    let steps = std::iter::from_fn(|| {
        if rest.is_zero() {
            return None;
        }
        Some((|| {
            let p = split(tq, &rest)?;
            let symbol = if p.f.short() <= p.fg.short() { Symbol::F } else { Symbol::FG };
            let out = lengthen(tq, symbol, &z.add(&w_acc)?, &rest)?;
            let v = split(tq, &out.b)?;
            w_acc = w_acc.add(&v.g)?;
            rest = out.b.sub(&v.g)?;
            symbols.push(symbol);
            shorts.push(rest.short());
            let n = shorts.len() - 1;
            if n >= 2 && shorts[n] < shorts[n - 2].plus(1) {
                return Err(Error::Invariant(format!(
                    "normal form step {n}: short(U) went from {} to {}",
                    shorts[n - 2], shorts[n]
                )));
            }
            Ok(out.map)
        })())
    });
    let composite = limit_compose(q, degree, steps)?;
    if !rest.is_zero() {
        return Err(Error::Invariant(format!("normal form stopped with {} non-puncture terms left", rest.len())));
    }
    let out = GNormalForm { map: composite.map, w: w_acc, symbols };
    let short_u = u.short();
    if out.w.short() < short_u {
        return Err(Error::Invariant(format!("short(W) = {} is below short(U) = {short_u}", out.w.short())));
    }
    if let ExtNat::Finite(s) = short_u {
        if out.map.depth() < ExtNat::Finite(s.saturating_sub(3)) {
            return Err(Error::Invariant(format!("normal form map has depth {} < short(U) - 3", out.map.depth())));
        }
    }
    Ok(out)
}
