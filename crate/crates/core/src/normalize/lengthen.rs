use serde::Serialize;

use super::split::{require_triangle_free, split, SplitPotential};
use crate::endo::REndomorphism;
use crate::error::{Error, Result};
use crate::ext::ExtNat;
use crate::path_algebra::{Element, Potential};
use crate::surface::{CycleKind, CycleType, TriangulationQuiver};

/// The part of a potential being pushed to higher order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Symbol {
    F,
    FG,
}

impl Symbol {
    pub fn kind(self) -> CycleKind {
        match self {
            Symbol::F => CycleKind::F,
            Symbol::FG => CycleKind::FG,
        }
    }

    pub fn other(self) -> Symbol {
        match self {
            Symbol::F => Symbol::FG,
            Symbol::FG => Symbol::F,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Lengthening {
    pub map: REndomorphism,
    pub b: Potential,
}

/// Finds `φ` carrying `T + W + A` to `T + W + B`, where the `symbol`-part of
/// `B` starts at a higher order than that of `A`.
pub fn lengthen(tq: &TriangulationQuiver, symbol: Symbol, w: &Potential, a: &Potential) -> Result<Lengthening> {
    let q = tq.quiver();
    let degree = a.degree();
    if w.degree() != degree {
        return Err(Error::TruncationMismatch(w.degree(), degree));
    }
    require_triangle_free(tq, w, "W")?;
    require_triangle_free(tq, a, "A")?;
    let parts = split(tq, a)?;
    if parts.part(symbol.kind()).is_zero() {
        return Err(Error::Hypothesis(format!("A has no {symbol:?}-part")));
    }
    let rules = match symbol {
        Symbol::F => f_rules(tq, &parts)?,
        Symbol::FG => {
            let omegas = parts.omegas(tq)?;
            q.arrow_ids()
                .filter(|x| !omegas[x.index()].is_zero())
                .map(|x| Ok((x, Element::from_arrow(q, degree, x).sub(&omegas[x.index()])?)))
                .collect::<Result<Vec<_>>>()?
        }
    };
    let map = REndomorphism::new(q, degree, rules)?;
    let t = tq.potential_t(degree);
    let image = map.apply_potential(&t.add(w)?.add(a)?)?;
    let b = image.sub(&t)?.sub(w)?;
    require_triangle_free(tq, &b, "B")?;
    check_inequalities(tq, symbol, &parts, &b)?;
    Ok(Lengthening { map, b })
}

/// `α_△ ↦ α_△ − Σ_n z_{△,n} α_△ (f²(α_△) f(α_△) α_△)^{n−1}`.
fn f_rules(tq: &TriangulationQuiver, parts: &SplitPotential) -> Result<Vec<(crate::path_algebra::ArrowId, Element)>> {
    let q = tq.quiver();
    let degree = parts.f.degree();
    let mut images: Vec<Option<Element>> = vec![None; tq.num_triangles()];
    for (c, z) in parts.f.terms() {
        let CycleType::F { n, base } = tq.classify_unchecked(c)? else {
            return Err(Error::Invariant(format!("{} in the f-part is not a triangle power", c.display(q))));
        };
        let t = tq.triangle_of(base);
        let alpha = tq.triangle_base(t);
        let image = images[t].get_or_insert_with(|| Element::from_arrow(q, degree, alpha));
        image.add_term(tq.f_path(3 * n - 2, alpha), -z.clone());
    }
    Ok(images
        .into_iter()
        .enumerate()
        .filter_map(|(t, img)| img.map(|img| (tq.triangle_base(t), img)))
        .collect())
}

fn check_inequalities(tq: &TriangulationQuiver, symbol: Symbol, a: &SplitPotential, b: &Potential) -> Result<()> {
    let b = split(tq, b)?;
    let phi = symbol.kind();
    let nu = symbol.other().kind();
    let s_phi = a.part(phi).short();
    let bound = s_phi.plus(1);
    let fail = |what: &str, got: ExtNat, want: ExtNat| {
        Err(Error::Invariant(format!("lengthening {symbol:?}: short({what}) = {got}, expected at least {want}")))
    };
    if b.part(phi).short() < bound {
        return fail("B_phi", b.part(phi).short(), bound);
    }
    for kind in [CycleKind::G, nu] {
        let want = a.part(kind).short().min(bound);
        if b.part(kind).short() < want {
            return fail(&format!("B_{kind:?}"), b.part(kind).short(), want);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path_algebra::Path;
    use crate::scalar::{int, Scalar};
    use crate::surface::Triangulation;
    use num_traits::One;

    fn fig3() -> TriangulationQuiver {
        TriangulationQuiver::new(&Triangulation::twice_punctured_genus(1).unwrap()).unwrap()
    }

    fn fg_cycle(tq: &TriangulationQuiver, name: &str) -> Path {
        let q = tq.quiver();
        let a = q.arrow_by_name(name).unwrap();
        let mut b = tq.g_inv(tq.f(a));
        let mut c = tq.f_path(2, tq.f(a)).concat(&Path::arrow(q, b), q).unwrap();
        while !c.is_cycle(q) {
            b = tq.g_inv(b);
            c = c.concat(&Path::arrow(q, b), q).unwrap();
        }
        c
    }

    #[test]
    fn squared_triangle_is_pushed_past_length_six() {
        let tq = fig3();
        let q = tq.quiver();
        let d = 20;
        let a = Potential::cycle(q, d, tq.f_path(6, tq.triangle_base(0)), int(1)).unwrap();
        let w = Potential::zero(q, d);
        let out = lengthen(&tq, Symbol::F, &w, &a).unwrap();
        assert_eq!(out.map.depth(), ExtNat::Finite(3));
        assert!(out.b.short() >= ExtNat::Finite(7));
        let t = tq.potential_t(d);
        assert!(out.map.apply_potential(&t.add(&a).unwrap()).unwrap().is_cyclically_equivalent(&t.add(&out.b).unwrap()).unwrap());
    }

    #[test]
    fn fg_term_matches_closed_form() {
        let tq = fig3();
        let q = tq.quiver();
        let d = 16;
        let c = fg_cycle(&tq, "a1");
        assert_eq!(c.len(), 4);
        let a = Potential::cycle(q, d, c, int(2)).unwrap();
        let w = Potential::cycle(q, d, tq.puncture_cycle(1), int(1)).unwrap();
        let out = lengthen(&tq, Symbol::FG, &w, &a).unwrap();
        assert!(out.b.short() >= ExtNat::Finite(5));

        // B = A_f + A_g + (φ(W+A) − (W+A)) + Σ f²(a) ω_{f(a)} ω_a − Σ_△ ω_{f²a} ω_{fa} ω_a
        let parts = split(&tq, &a).unwrap();
        let om = parts.omegas(&tq).unwrap();
        let wa = w.add(&a).unwrap();
        let mut expected = parts.f.add(&parts.g).unwrap().add(&out.map.apply_potential(&wa).unwrap().sub(&wa).unwrap()).unwrap();
        for x in q.arrow_ids() {
            let f2 = Element::from_arrow(q, d, tq.f(tq.f(x)));
            let term = f2.mul(&om[tq.f(x).index()]).unwrap().mul(&om[x.index()]).unwrap();
            expected = expected.add(&Potential::from_element(&term).unwrap()).unwrap();
        }
        for t in 0..tq.num_triangles() {
            let x = tq.triangle_base(t);
            let term = om[tq.f(tq.f(x)).index()].mul(&om[tq.f(x).index()]).unwrap().mul(&om[x.index()]).unwrap();
            expected = expected.sub(&Potential::from_element(&term).unwrap()).unwrap();
        }
        assert_eq!(out.b, expected);
    }

    #[test]
    fn missing_part_is_rejected() {
        let tq = fig3();
        let q = tq.quiver();
        let a = Potential::cycle(q, 12, tq.puncture_power(0, 1), Scalar::one()).unwrap();
        assert!(lengthen(&tq, Symbol::F, &Potential::zero(q, 12), &a).is_err());
        assert!(lengthen(&tq, Symbol::FG, &Potential::zero(q, 12), &a).is_err());
    }
}
