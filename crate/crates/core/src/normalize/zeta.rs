use num_traits::Zero;

use super::gform::g_normal_form;
use super::split::split;
use crate::endo::REndomorphism;
use crate::error::{Error, Result};
use crate::ext::ExtNat;
use crate::path_algebra::{ArrowId, Element, Path, Potential};
use crate::scalar::Scalar;
use crate::surface::{CycleKind, TriangulationQuiver};

/// The cycle `λ · f(a) a G(t, g^{-t}(a)) c`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZetaData {
    pub lambda: Scalar,
    pub a: ArrowId,
    pub t: usize,
    pub c: Path,
}

impl ZetaData {
    /// `G(t, g^{-t}(a)) c`, the correction attached to `f⁻¹(a)`.
    fn tail_path(&self, tq: &TriangulationQuiver) -> Result<Path> {
        let q = tq.quiver();
        let g = tq.g_path(self.t, tq.g_pow(self.a, -(self.t as isize)));
        g.concat(&self.c, q).ok_or_else(|| {
            Error::Hypothesis(format!("{} does not compose with {}", g.display(q), self.c.display(q)))
        })
    }

    pub fn path(&self, tq: &TriangulationQuiver) -> Result<Path> {
        let q = tq.quiver();
        let head = Path::new(q, &[tq.f(self.a), self.a])?;
        let p = head.concat(&self.tail_path(tq)?, q).ok_or_else(|| Error::Hypothesis("f(a) a does not compose with G c".into()))?;
        if !p.is_cycle(q) {
            return Err(Error::Hypothesis(format!("{} is not a cycle", p.display(q))));
        }
        Ok(p)
    }

    pub fn potential(&self, tq: &TriangulationQuiver, degree: usize) -> Result<Potential> {
        Potential::cycle(tq.quiver(), degree, self.path(tq)?, self.lambda.clone())
    }
}

#[derive(Clone, Debug)]
pub struct ZetaStep {
    pub map: REndomorphism,
    /// `ζ(U + W) − (U + W)`.
    pub u_next: Potential,
    pub next: ZetaData,
}

/// One substitution `f⁻¹(a) ↦ f⁻¹(a) − λ G(t, g^{-t}(a)) c`, trading `W` for a
/// longer cycle of the same shape with `t` lowered by one.
pub fn zeta_step(tq: &TriangulationQuiver, x: &[Scalar], m: usize, u: &Potential, data: &ZetaData) -> Result<ZetaStep> {
    let q = tq.quiver();
    let degree = u.degree();
    if data.t == 0 {
        return Err(Error::Hypothesis("t must be positive".into()));
    }
    if data.lambda.is_zero() {
        return Err(Error::Hypothesis("lambda must be nonzero".into()));
    }
    let s = tq.potential_s(x, degree)?;
    require_disjoint_from_s(tq, u, "U")?;
    let w_path = data.path(tq)?;
    let w = data.potential(tq, degree)?;
    if u.short() < ExtNat::Finite(m) {
        return Err(Error::Hypothesis(format!("short(U) = {} is below m = {m}", u.short())));
    }
    if 2 * w_path.len() < m + 4 {
        return Err(Error::Hypothesis(format!("2 short(W) - 3 = {} does not exceed m = {m}", 2 * w_path.len() - 3)));
    }

    let beta = tq.f_inv(data.a);
    let image = Element::from_arrow(q, degree, beta).sub(&Element::from_path(q, degree, data.tail_path(tq)?).scale(&data.lambda))?;
    let map = REndomorphism::new(q, degree, [(beta, image)])?;
    let uw = u.add(&w)?;
    let u_next = map.apply_potential(&uw)?.sub(&uw)?;

    let mb = tq.m(beta);
    let c_next = data
        .c
        .concat(&tq.g_path(mb - 2, tq.g(tq.g(beta))), q)
        .ok_or_else(|| Error::Invariant("c does not compose with the puncture walk".into()))?;
    let next = ZetaData {
        lambda: -data.lambda.clone() * &x[tq.puncture_of(beta)],
        a: tq.g_inv(data.a),
        t: data.t - 1,
        c: c_next,
    };
    let next_path = next.path(tq)?;
    if next_path.len() != mb - 2 + w_path.len() - 1 || next_path.len() <= w_path.len() {
        return Err(Error::Invariant(format!(
            "new cycle has length {}, expected {} - 2 + {} - 1",
            next_path.len(),
            mb,
            w_path.len()
        )));
    }
    let w_next = next.potential(tq, degree)?;
    // ζ(S) − S must be exactly W′ − W.
    let ds = map.apply_potential(&s)?.sub(&s)?;
    if ds != w_next.sub(&w)? {
        return Err(Error::Invariant("the image of S differs from S - W + W'".into()));
    }
    if u_next.short() <= ExtNat::Finite(m) {
        return Err(Error::Invariant(format!("short(U') = {} does not exceed m = {m}", u_next.short())));
    }
    let expected_depth = ExtNat::Finite(w_path.len() - 3);
    if w_path.len() - 2 <= degree && map.depth() != expected_depth {
        return Err(Error::Invariant(format!("zeta has depth {}, expected {expected_depth}", map.depth())));
    }
    Ok(ZetaStep { map, u_next, next })
}

fn require_disjoint_from_s(tq: &TriangulationQuiver, p: &Potential, what: &str) -> Result<()> {
    super::split::require_triangle_free(tq, p, what)?;
    for k in 0..tq.punctures().len() {
        if !p.coeff(&tq.puncture_cycle(k))?.is_zero() {
            return Err(Error::Hypothesis(format!("{what} contains the cycle around puncture {}", k + 1)));
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct AbsorbedCycle {
    pub map: REndomorphism,
    /// Only puncture-cycle powers, all of length above `m`.
    pub xi: Potential,
}

/// Carries `S + U + W` to `S + U + ξ` by `t` zeta steps followed by the
/// puncture normal form.
pub fn absorb_cycle(tq: &TriangulationQuiver, x: &[Scalar], m: usize, u: &Potential, data: &ZetaData) -> Result<AbsorbedCycle> {
    let q = tq.quiver();
    let degree = u.degree();
    if data.c.len() != 1 {
        return Err(Error::Hypothesis(format!("c must be a single arrow, got {}", data.c.display(q))));
    }
    let w_len = data.path(tq)?.len();
    let mut map = REndomorphism::identity(q, degree);
    let mut acc = u.clone();
    let mut current = data.clone();
    for _ in 0..data.t {
        let step = zeta_step(tq, x, m, &acc, &current)?;
        map = step.map.compose(&map)?;
        acc = acc.add(&step.u_next)?;
        current = step.next;
    }
    let s = tq.potential_s(x, degree)?;
    let spectator = s.sub(&tq.potential_t(degree))?.add(u)?;
    let rest = acc.sub(u)?.add(&current.potential(tq, degree)?)?;
    let normal = g_normal_form(tq, &spectator, &rest)?;
    let map = normal.map.compose(&map)?;
    let xi = normal.w;

    if split(tq, &xi)?.part(CycleKind::G) != &xi {
        return Err(Error::Invariant("absorbed cycle left non-puncture terms".into()));
    }
    if xi.short() <= ExtNat::Finite(m) {
        return Err(Error::Invariant(format!("short(xi) = {} does not exceed m = {m}", xi.short())));
    }
    let bound = ExtNat::Finite(m.min(w_len).saturating_sub(3));
    if map.depth() < bound {
        return Err(Error::Invariant(format!("absorbing map has depth {} below {bound}", map.depth())));
    }
    Ok(AbsorbedCycle { map, xi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::surface::Triangulation;
    use num_traits::One;

    fn torus() -> TriangulationQuiver {
        TriangulationQuiver::new(&Triangulation::once_punctured_torus()).unwrap()
    }

    fn fig3() -> TriangulationQuiver {
        TriangulationQuiver::new(&Triangulation::twice_punctured_genus(1).unwrap()).unwrap()
    }

    /// Shortest path from `from` to `to`, by breadth-first search.
    fn connecting_path(tq: &TriangulationQuiver, from: crate::path_algebra::VertexId, to: crate::path_algebra::VertexId) -> Path {
        let q = tq.quiver();
        let mut frontier = vec![Path::lazy(from)];
        loop {
            let mut next = Vec::new();
            for p in frontier {
                for &b in q.outgoing(p.head(q)) {
                    let longer = Path::arrow(q, b).concat(&p, q).unwrap();
                    if longer.head(q) == to {
                        return longer;
                    }
                    next.push(longer);
                }
            }
            frontier = next;
        }
    }

    #[test]
    fn torus_step_lowers_t_and_scales_lambda() {
        let tq = torus();
        let q = tq.quiver();
        let a = q.arrow_by_name("a1").unwrap();
        let c = connecting_path(&tq, q.head(tq.f(a)), q.tail(tq.g_inv(a)));
        let data = ZetaData { lambda: Scalar::one(), a, t: 1, c };
        let d = 30;
        let u = Potential::zero(q, d);
        let x = [int(3)];
        let w_len = data.path(&tq).unwrap().len();
        let step = zeta_step(&tq, &x, 4, &u, &data).unwrap();
        assert_eq!(step.next.t, 0);
        assert_eq!(step.next.lambda, int(-3));
        assert_eq!(step.next.a, tq.g_inv(a));
        assert_eq!(step.map.depth(), ExtNat::Finite(w_len - 3));
        assert_eq!(step.next.path(&tq).unwrap().len(), 6 - 2 + w_len - 1);
        let s = tq.potential_s(&x, d).unwrap();
        let lhs = step.map.apply_potential(&s.add(&data.potential(&tq, d).unwrap()).unwrap()).unwrap();
        let rhs = s.add(&step.u_next).unwrap().add(&step.next.potential(&tq, d).unwrap()).unwrap();
        assert!(lhs.is_cyclically_equivalent(&rhs).unwrap());
    }

    #[test]
    fn weak_second_hypothesis_is_reported() {
        let tq = torus();
        let q = tq.quiver();
        let a = q.arrow_by_name("a1").unwrap();
        let c = connecting_path(&tq, q.head(tq.f(a)), q.tail(tq.g_inv(a)));
        let data = ZetaData { lambda: Scalar::one(), a, t: 1, c };
        let err = zeta_step(&tq, &[int(1)], 20, &Potential::zero(q, 30), &data).unwrap_err();
        assert!(err.to_string().contains("2 short(W) - 3"), "{err}");
    }

    #[test]
    fn absorb_squared_q_cycle_shape_on_fig3() {
        let tq = fig3();
        let q = tq.quiver();
        let d = 28;
        let x = [int(1), int(1)];
        // f(a) a G(a) f²(a) around the valency-4 puncture.
        let a = tq.punctures()[1].base;
        assert_eq!(tq.m(a), 4);
        let data = ZetaData { lambda: int(-1), a, t: 4, c: Path::arrow(q, tq.f(tq.f(a))) };
        assert_eq!(data.path(&tq).unwrap().len(), 7);
        let u = Potential::zero(q, d);
        let out = absorb_cycle(&tq, &x, 8, &u, &data).unwrap();
        let s = tq.potential_s(&x, d).unwrap();
        let lhs = out.map.apply_potential(&s.add(&data.potential(&tq, d).unwrap()).unwrap()).unwrap();
        assert_eq!(lhs.first_difference(&s.add(&out.xi).unwrap()), None);
    }

    #[test]
    fn absorb_requires_an_arrow() {
        let tq = fig3();
        let q = tq.quiver();
        let a = tq.punctures()[1].base;
        let c = Path::new(q, &[tq.f(tq.f(a)), tq.g_inv(tq.f(tq.f(a)))]).unwrap();
        let data = ZetaData { lambda: int(1), a, t: 4, c };
        assert!(absorb_cycle(&tq, &[int(1), int(1)], 8, &Potential::zero(q, 20), &data).is_err());
    }
}
