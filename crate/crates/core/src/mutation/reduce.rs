use std::sync::Arc;

use num_traits::{One, Zero};

use super::Qp;
use crate::endo::REndomorphism;
use crate::error::{Error, Result};
use crate::linalg;
use crate::path_algebra::{ArrowId, ArrowSeq, Element, Path, Potential, Quiver};
use crate::scalar::Scalar;

/// Output of splitting off the trivial part of a potential.
#[derive(Clone, Debug)]
pub struct Reduction {
    /// The reduced QP on the quiver with all paired arrows deleted.
    pub qp: Qp,
    /// Automorphism of the input quiver carrying the input potential to
    /// `Σ (pair 2-cycles) + (reduced potential)`.
    pub witness: REndomorphism,
    /// Deleted arrow pairs `(α, β)` of the input quiver; `α·β` is a 2-cycle.
    pub pairs: Vec<(ArrowId, ArrowId)>,
    /// Input arrow → arrow of the reduced quiver.
    pub kept: Vec<Option<ArrowId>>,
    pub rounds: usize,
    input: Arc<Quiver>,
}

#[derive(Clone, Copy)]
enum Role {
    Keep,
    First(usize),
    Second(usize),
}

pub fn reduce(qp: &Qp) -> Result<Reduction> {
    let q = qp.quiver().clone();
    let d = qp.degree();
    let s0 = &qp.potential;
    if s0.terms().any(|(c, _)| c.len() == 1) {
        return Err(Error::Reduction("potential has a loop term of length 1".into()));
    }
    let (linear, pairs) = linear_normalization(qp)?;
    let mut witness = linear;
    let mut s = witness.apply_potential(s0)?;

    let mut role = vec![Role::Keep; q.num_arrows()];
    for (i, &(a, b)) in pairs.iter().enumerate() {
        role[a.index()] = Role::First(i);
        role[b.index()] = Role::Second(i);
    }
    let pair_cycle = |i: usize| {
        let (a, b) = pairs[i];
        Path::new(&q, &[a, b]).expect("pairs form 2-cycles").canonical_rotation(&q).expect("cycle")
    };
    let pair_cycles: Vec<Path> = (0..pairs.len()).map(pair_cycle).collect();

    let mut rounds = 0;
    loop {
        let mut corrections: Vec<Option<Element>> = vec![None; q.num_arrows()];
        let mut any = false;
        for (c, x) in s.terms() {
            if c.len() == 2 && pair_cycles.contains(c) {
                continue;
            }
            let Some(i) = c.arrows().iter().position(|a| !matches!(role[a.index()], Role::Keep)) else {
                continue;
            };
            if c.len() < 3 {
                return Err(Error::Reduction(format!("unexpected quadratic term {}", c.display(&q))));
            }
            let u = c.rotate(&q, i);
            let rest = u.slice(&q, 1..u.len());
            let target = match role[u.arrows()[0].index()] {
                Role::First(p) => pairs[p].1,
                Role::Second(p) => pairs[p].0,
                Role::Keep => unreachable!(),
            };
            let slot = corrections[target.index()].get_or_insert_with(|| Element::zero(&q, d));
            slot.add_term(rest, -x.clone());
            any = true;
        }
        if !any {
            break;
        }
        rounds += 1;
        if rounds > d + 1 {
            return Err(Error::Reduction(format!("no stabilization within {} rounds", d + 1)));
        }
        let rules = corrections.into_iter().enumerate().filter_map(|(i, c)| {
            c.map(|c| {
                let a = ArrowId(i as u32);
                (a, Element::from_arrow(&q, d, a).add(&c).expect("same quiver"))
            })
        });
        let step = REndomorphism::new(&q, d, rules)?;
        s = step.apply_potential(&s)?;
        witness = step.compose(&witness)?;
    }

    for (i, c) in pair_cycles.iter().enumerate() {
        if s.coeff(c)? != Scalar::one() {
            return Err(Error::Reduction(format!("pair {} lost its unit coefficient", i)));
        }
    }
    let rest = s.filter(|c| !pair_cycles.contains(c));
    if rest.terms().any(|(c, _)| c.arrows().iter().any(|a| !matches!(role[a.index()], Role::Keep))) {
        return Err(Error::Reduction("paired arrows survive in the reduced part".into()));
    }

    let mut kept = vec![None; q.num_arrows()];
    let mut arrows = Vec::new();
    for a in q.arrow_ids() {
        if matches!(role[a.index()], Role::Keep) {
            kept[a.index()] = Some(ArrowId(arrows.len() as u32));
            let ar = q.arrow(a);
            arrows.push((ar.name.clone(), q.vertex_label(ar.tail).to_string(), q.vertex_label(ar.head).to_string()));
        }
    }
    let reduced_q = Arc::new(Quiver::new(q.vertex_labels().iter().cloned(), arrows)?);
    let mut reduced = Element::zero(&reduced_q, d);
    for (c, x) in rest.terms() {
        let ids: ArrowSeq = c.arrows().iter().map(|a| kept[a.index()].unwrap()).collect();
        reduced.add_term(Path::new(&reduced_q, &ids)?, x.clone());
    }
    Ok(Reduction {
        qp: Qp::new(Potential::from_element(&reduced)?),
        witness,
        pairs,
        kept,
        rounds,
        input: q,
    })
}

/// Degree-one change of arrows making the quadratic part a sum of 2-cycles
/// on disjoint arrow pairs with unit coefficients.
fn linear_normalization(qp: &Qp) -> Result<(REndomorphism, Vec<(ArrowId, ArrowId)>)> {
    let q = qp.quiver();
    let d = qp.degree();
    let s = &qp.potential;
    for (c, _) in s.terms() {
        if c.len() == 2 && c.arrows().iter().any(|&a| q.tail(a) == q.head(a)) {
            return Err(Error::Reduction("quadratic term built from loops".into()));
        }
    }
    let mut rules: Vec<(ArrowId, Element)> = Vec::new();
    let mut pairs = Vec::new();
    for u in q.vertex_ids() {
        for v in q.vertex_ids().filter(|&v| v > u) {
            let alphas = q.arrows_between(u, v);
            let betas = q.arrows_between(v, u);
            if alphas.is_empty() || betas.is_empty() {
                continue;
            }
            let mut c: linalg::Matrix = Vec::with_capacity(alphas.len());
            for &a in &alphas {
                let mut row = Vec::with_capacity(betas.len());
                for &b in &betas {
                    row.push(s.coeff(&Path::new(q, &[a, b])?)?);
                }
                c.push(row);
            }
            if c.iter().flatten().all(Zero::is_zero) {
                continue;
            }
            let monomial = c.iter().all(|r| r.iter().filter(|x| !x.is_zero()).count() <= 1)
                && (0..betas.len()).all(|j| c.iter().filter(|r| !r[j].is_zero()).count() <= 1);
            if monomial {
                for (i, row) in c.iter().enumerate() {
                    if let Some(j) = row.iter().position(|x| !x.is_zero()) {
                        pairs.push((alphas[i], betas[j]));
                        if !row[j].is_one() {
                            let img = Element::from_arrow(q, d, alphas[i]).scale(&(Scalar::one() / &row[j]));
                            rules.push((alphas[i], img));
                        }
                    }
                }
                continue;
            }
            let (l, r, rank) = linalg::two_sided_normal_form(&c);
            for (kk, &a) in alphas.iter().enumerate() {
                let terms = alphas.iter().enumerate().map(|(i, &ai)| (Path::arrow(q, ai), l[i][kk].clone()));
                rules.push((a, Element::from_terms(q, d, terms)));
            }
            for (ll, &b) in betas.iter().enumerate() {
                let terms = betas.iter().enumerate().map(|(j, &bj)| (Path::arrow(q, bj), r[ll][j].clone()));
                rules.push((b, Element::from_terms(q, d, terms)));
            }
            pairs.extend((0..rank).map(|i| (alphas[i], betas[i])));
        }
    }
    let phi = REndomorphism::new(q, d, rules)?;
    if !phi.is_automorphism() {
        return Err(Error::Invariant("linear normalization is not invertible".into()));
    }
    Ok((phi, pairs))
}

impl Reduction {
    /// `Σ (pair 2-cycles) + (reduced potential)` on the input quiver.
    pub fn expected_image(&self) -> Result<Potential> {
        let q = &self.input;
        let d = self.qp.degree();
        let mut back = vec![ArrowId(0); self.qp.quiver().num_arrows()];
        for (old, new) in self.kept.iter().enumerate() {
            if let Some(n) = new {
                back[n.index()] = ArrowId(old as u32);
            }
        }
        let mut e = Element::zero(q, d);
        for &(a, b) in &self.pairs {
            e.add_term(Path::new(q, &[a, b])?, Scalar::one());
        }
        for (c, x) in self.qp.potential.terms() {
            let ids: ArrowSeq = c.arrows().iter().map(|a| back[a.index()]).collect();
            e.add_term(Path::new(q, &ids)?, x.clone());
        }
        Potential::from_element(&e)
    }

    /// Re-applies the witness to `input` and compares with the expected image.
    pub fn verify(&self, input: &Potential) -> Result<bool> {
        self.witness.apply_potential(input)?.is_cyclically_equivalent(&self.expected_image()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mutation::{mutate, premutate};
    use crate::scalar::{int, ratio};
    use crate::surface::{Triangulation, TriangulationQuiver};

    fn cyc(q: &Arc<Quiver>, names: &[&str]) -> Path {
        Path::from_names(q, names).unwrap()
    }

    #[test]
    fn already_reduced_input_gives_identity() {
        let tq = TriangulationQuiver::new(&Triangulation::once_punctured_torus()).unwrap();
        let qp = Qp::new(tq.potential_sxn(&int(1), 1, 12).unwrap());
        let r = reduce(&qp).unwrap();
        assert!(r.witness.is_identity());
        assert!(r.pairs.is_empty());
        assert_eq!(r.qp.potential.len(), qp.potential.len());
    }

    #[test]
    fn splits_a_small_example() {
        // Quiver 1 ⇄ 2 with a loop-free triangle through 3.
        let q = Arc::new(
            Quiver::new(
                ["1", "2", "3"],
                [("a", "1", "2"), ("b", "2", "1"), ("c", "2", "3"), ("d", "3", "1"), ("e", "1", "3"), ("h", "3", "2")],
            )
            .unwrap(),
        );
        let d = 9;
        let s = Potential::from_cycles(
            &q,
            d,
            [
                (cyc(&q, &["a", "b"]), ratio(2, 3)),
                (cyc(&q, &["d", "c", "a"]), int(1)),
                (cyc(&q, &["b", "h", "e"]), int(-4)),
                (cyc(&q, &["h", "e", "d", "c"]), int(1)),
            ],
        )
        .unwrap();
        let r = reduce(&Qp::new(s.clone())).unwrap();
        assert_eq!(r.pairs.len(), 1);
        assert!(r.verify(&s).unwrap());
        assert!(r.witness.is_automorphism());
        let rq = r.qp.quiver();
        assert_eq!(rq.num_arrows(), 4);
        assert!(r.qp.potential.short().at_least(3));
    }

    #[test]
    fn general_quadratic_part() {
        let q = Arc::new(
            Quiver::new(["1", "2"], [("a1", "1", "2"), ("a2", "1", "2"), ("b1", "2", "1"), ("b2", "2", "1")]).unwrap(),
        );
        let d = 8;
        let s = Potential::from_cycles(
            &q,
            d,
            [
                (cyc(&q, &["a1", "b1"]), int(1)),
                (cyc(&q, &["a1", "b2"]), int(1)),
                (cyc(&q, &["a2", "b1"]), int(2)),
                (cyc(&q, &["a2", "b1", "a1", "b2"]), int(5)),
            ],
        )
        .unwrap();
        let r = reduce(&Qp::new(s.clone())).unwrap();
        assert_eq!(r.pairs.len(), 2);
        assert!(r.verify(&s).unwrap());
        assert_eq!(r.qp.quiver().num_arrows(), 0);
    }

    #[test]
    fn mutation_of_the_torus_returns_the_markov_shape() {
        let tq = TriangulationQuiver::new(&Triangulation::once_punctured_torus()).unwrap();
        let qp = Qp::new(tq.potential_sxn(&int(1), 1, 14).unwrap());
        for arc in 1..=3 {
            let k = tq.vertex_of_arc(arc).unwrap();
            let m = mutate(&qp, k).unwrap();
            assert!(m.reduction.verify(&m.premutation.qp.potential).unwrap());
            let rq = m.qp().quiver();
            assert_eq!(rq.num_arrows(), 6);
            assert_eq!(rq.max_parallel_arrows(), 2);
            assert!(m.qp().is_two_acyclic());
            let back = mutate(m.qp(), k).unwrap();
            assert_eq!(back.qp().quiver().num_arrows(), 6);
            let _ = premutate(&qp, k).unwrap();
        }
    }
}
