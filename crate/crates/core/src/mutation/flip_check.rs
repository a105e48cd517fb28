use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use super::{premutate, reduce, Qp};
use crate::endo::REndomorphism;
use crate::error::{Error, Result};
use crate::path_algebra::{ArrowId, ArrowSeq, Element, Path, Potential, Quiver, TermDifference};
use crate::scalar::{self, Scalar};
use crate::surface::{Triangulation, TriangulationQuiver};

/// Summary of one flip-compatibility check.
#[derive(Clone, Debug, Serialize)]
pub struct FlipReport {
    pub arc: u32,
    pub x: String,
    pub n: usize,
    pub degree: usize,
    pub pass: bool,
    /// Whether the four explicit automorphisms already produce the flipped
    /// potential plus the two trivial 2-cycles.
    pub automorphisms_match: bool,
    pub first_difference: Option<TermDifference>,
    /// Arrows of the flipped quiver paired with arrows of the reduced mutation.
    pub arrow_map: Vec<(String, String)>,
    pub reduction_rounds: usize,
}

/// A report plus the data needed to re-verify it independently.
#[derive(Clone, Debug)]
pub struct FlipVerification {
    pub report: FlipReport,
    /// The premutated QP.
    pub premutated: Qp,
    /// Automorphism of the premutated quiver (reduction after the four explicit maps).
    pub witness: REndomorphism,
    /// Image the witness must produce: the flipped potential transported to
    /// the premutated quiver plus the trivial 2-cycles.
    pub expected: Potential,
}

/// Arrows around the flipped arc in one of its two triangles: `c` enters
/// the arc, `b` leaves it, `a` is opposite.
struct Corner {
    a: ArrowId,
    b: ArrowId,
    c: ArrowId,
}

/// Checks that mutating `S(τ,x,n)` at `k` is right-equivalent to
/// `S(flip(τ,k),x,n)` through the explicit automorphisms, modulo paths
/// longer than `degree`. `perturb` adds `ε·(puncture cycle)` to the target.
pub fn verify_flip(
    tau: &Triangulation,
    k: u32,
    x: &Scalar,
    n: usize,
    degree: usize,
    perturb: Option<&Scalar>,
) -> Result<FlipVerification> {
    let tq = TriangulationQuiver::new(tau)?;
    if tq.punctures().len() != 1 {
        return Err(Error::InvalidArgument("flip verification needs a once-punctured surface".into()));
    }
    let sigma = tau.flip(k)?;
    let tq_sigma = TriangulationQuiver::new(&sigma)?;
    let s_tau = tq.potential_sxn(x, n, degree)?;
    let mut target = tq_sigma.potential_sxn(x, n, degree)?;
    if let Some(eps) = perturb {
        target.add_scaled(&Potential::cycle(tq_sigma.quiver(), degree, tq_sigma.puncture_cycle(0), Scalar::one())?, eps)?;
    }

    let vk = tq.vertex_of_arc(k)?;
    let pre = premutate(&Qp::new(s_tau), vk)?;
    let pq = pre.qp.quiver().clone();

    let [(t1, i1), (t2, i2)] = tau.sides_of(k).expect("arc exists");
    let corner = |t: usize, i: usize| Corner {
        c: tq.corner_arrow(t, i),
        a: tq.corner_arrow(t, (i + 1) % 3),
        b: tq.corner_arrow(t, (i + 2) % 3),
    };
    let (c1, c2) = (corner(t1, i1), corner(t2, i2));
    let kept = |a: ArrowId| pre.kept[a.index()].expect("opposite arrows avoid the arc");
    let star = |a: ArrowId| pre.reversed[a.index()].expect("arrow touches the arc");
    let comp = |b: ArrowId, a: ArrowId| pre.composite[&(b, a)];

    // The puncture cycle written a1 [A] a2 [B].
    let g = tq.g_path(tq.m(c1.a), tq.g(c1.a));
    let g_new = pre.translate_path(&g)?;
    let w = g_new.arrows();
    let (a1, a2) = (kept(c1.a), kept(c2.a));
    debug_assert_eq!(w[0], a1);
    let j2 = w.iter().position(|&a| a == a2).ok_or_else(|| Error::Invariant("a2 missing from the puncture cycle".into()))?;
    let seg = |r: std::ops::Range<usize>| -> ArrowSeq { w[r].iter().copied().collect() };
    let (a_seg, b_seg) = (seg(1..j2), seg(j2 + 1..w.len()));

    let el = |ids: &[ArrowId]| -> Result<Element> { Ok(Element::from_path(&pq, degree, Path::new(&pq, ids)?)) };
    let concat = |parts: &[&[ArrowId]]| -> Vec<ArrowId> { parts.iter().flat_map(|p| p.iter().copied()).collect() };

    let cb1 = [star(c1.c), star(c1.b)];
    let cb2 = [star(c2.c), star(c2.b)];
    let x_path = concat(&[&a_seg, &[a2], &b_seg]);
    let y_path = concat(&[&b_seg, &cb1, &a_seg]);

    let phi1 = REndomorphism::new(&pq, degree, [(a1, el(&[a1])?.sub(&el(&cb1)?)?)])?;
    let big_x = el(&x_path)?;
    let pm = el(&[a1])?.sub(&el(&cb1)?)?.mul(&big_x)?;
    let qm = el(&concat(&[&cb1, &x_path]))?;
    let phi2 = REndomorphism::new(&pq, degree, [(comp(c1.b, c1.c), geometric_rule(&el(&[comp(c1.b, c1.c)])?, x, n, false, &big_x, &pm, &qm)?)])?;

    let phi3 = REndomorphism::new(&pq, degree, [(a2, el(&[a2])?.sub(&el(&cb2)?)?)])?;
    let big_y = el(&y_path)?;
    let pm2 = el(&[a2])?.sub(&el(&cb2)?)?.mul(&big_y)?;
    let qm2 = el(&concat(&[&cb2, &y_path]))?;
    let phi4 = REndomorphism::new(&pq, degree, [(comp(c2.b, c2.c), geometric_rule(&el(&[comp(c2.b, c2.c)])?, x, n, true, &big_y, &pm2, &qm2)?)])?;

    let explicit = phi4.compose(&phi3.compose(&phi2.compose(&phi1)?)?)?;
    let transformed = explicit.apply_potential(&pre.qp.potential)?;

    // Arrows of Q(σ) in terms of the premutated quiver.
    let sq = tq_sigma.quiver();
    let mut to_pre = vec![ArrowId(0); sq.num_arrows()];
    for t in 0..tau.triangles().len() {
        for i in 0..3 {
            let img = if t == t1 {
                [star(c1.b), comp(c1.b, c2.c), star(c2.c)][i]
            } else if t == t2 {
                [star(c2.b), comp(c2.b, c1.c), star(c1.c)][i]
            } else {
                kept(tq.corner_arrow(t, i))
            };
            to_pre[tq_sigma.corner_arrow(t, i).index()] = img;
        }
    }
    for a in sq.arrow_ids() {
        let b = to_pre[a.index()];
        if sq.vertex_label(sq.tail(a)) != pq.vertex_label(pq.tail(b)) || sq.vertex_label(sq.head(a)) != pq.vertex_label(pq.head(b)) {
            return Err(Error::Invariant(format!("dictionary mismatch at {}", sq.name(a))));
        }
    }
    let pairs = [(a1, comp(c1.b, c1.c)), (a2, comp(c2.b, c2.c))];
    let mut expected = transport(&target, &pq, &to_pre)?;
    for (u, v) in pairs {
        expected.add_scaled(&Potential::cycle(&pq, degree, Path::new(&pq, &[u, v])?, Scalar::one())?, &Scalar::one())?;
    }
    let automorphisms_match = transformed.is_cyclically_equivalent(&expected)?;

    let red = reduce(&Qp::new(transformed))?;
    let rq = red.qp.quiver().clone();
    let mut to_red = vec![ArrowId(0); sq.num_arrows()];
    let mut arrow_map = Vec::new();
    for a in sq.arrow_ids() {
        let p = to_pre[a.index()];
        let r = red.kept[p.index()].ok_or_else(|| Error::Invariant(format!("{} was deleted by the reduction", pq.name(p))))?;
        to_red[a.index()] = r;
        arrow_map.push((sq.name(a).to_string(), rq.name(r).to_string()));
    }
    if rq.num_arrows() != sq.num_arrows() {
        return Err(Error::Invariant("reduced quiver and flipped quiver differ in size".into()));
    }
    let mut from_red = vec![ArrowId(0); rq.num_arrows()];
    for (s, r) in to_red.iter().enumerate() {
        from_red[r.index()] = ArrowId(s as u32);
    }
    let got = transport(&red.qp.potential, sq, &from_red)?;
    let first_difference = got.first_difference(&target);
    let pass = first_difference.is_none();

    let witness = red.witness.compose(&explicit)?;
    let expected_full = red.expected_image()?;
    Ok(FlipVerification {
        report: FlipReport {
            arc: k,
            x: scalar::format(x),
            n,
            degree,
            pass,
            automorphisms_match,
            first_difference,
            arrow_map,
            reduction_rounds: red.rounds,
        },
        premutated: pre.qp.clone(),
        witness,
        expected: expected_full,
    })
}

/// `arrow − x·s·Σ_{j<n} (−1)^j X (P−Q)^{n−j−1} Q^j`, with `s = (−1)^n` when `signed`.
fn geometric_rule(arrow: &Element, x: &Scalar, n: usize, signed: bool, big_x: &Element, pm: &Element, qm: &Element) -> Result<Element> {
    let q = arrow.quiver();
    let d = arrow.degree();
    let tail = big_x.terms().next().map(|(p, _)| p.tail()).expect("nonzero path");
    let unit = Element::lazy(q, d, tail);
    let power = |e: &Element, k: usize| -> Result<Element> {
        let mut r = unit.clone();
        for _ in 0..k {
            r = r.mul(e)?;
        }
        Ok(r)
    };
    let mut sum = Element::zero(q, d);
    for j in 0..n {
        let term = big_x.mul(&power(pm, n - j - 1)?)?.mul(&power(qm, j)?)?;
        let sign = if j % 2 == 0 { Scalar::one() } else { -Scalar::one() };
        sum.add_scaled(&term, &sign)?;
    }
    let mut coeff = x.clone();
    if signed && n % 2 == 1 {
        coeff = -coeff;
    }
    if coeff.is_zero() {
        return Ok(arrow.clone());
    }
    arrow.sub(&sum.scale(&coeff))
}

/// Re-expresses a potential on another quiver through an arrow map.
fn transport(p: &Potential, to: &Arc<Quiver>, map: &[ArrowId]) -> Result<Potential> {
    let mut e = Element::zero(to, p.degree());
    for (c, x) in p.terms() {
        let ids: ArrowSeq = c.arrows().iter().map(|a| map[a.index()]).collect();
        e.add_term(Path::new(to, &ids)?, x.clone());
    }
    Potential::from_element(&e)
}
