//! Vertex-fixing endomorphisms of the truncated path algebra given by arrow substitution.

use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::ext::ExtNat;
use crate::linalg;
use crate::path_algebra::{check_same, ArrowId, ArrowSeq, Element, Path, Potential, Quiver, VertexId};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct REndomorphism {
    quiver: Arc<Quiver>,
    degree: usize,
    rules: Vec<Option<Element>>,
    expanded: Vec<Vec<(ArrowSeq, Scalar)>>,
    min_len: Vec<usize>,
    automorphism: bool,
}

impl PartialEq for REndomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.rules == other.rules
    }
}

impl REndomorphism {
    pub fn identity(quiver: &Arc<Quiver>, degree: usize) -> REndomorphism {
        Self::assemble(quiver.clone(), degree, vec![None; quiver.num_arrows()])
    }

    /// Arrows without a rule are fixed. Images must be parallel to their
    /// arrow and lie in the arrow ideal.
    pub fn new<I: IntoIterator<Item = (ArrowId, Element)>>(quiver: &Arc<Quiver>, degree: usize, rules: I) -> Result<REndomorphism> {
        let mut slots: Vec<Option<Element>> = vec![None; quiver.num_arrows()];
        let mut seen = vec![false; quiver.num_arrows()];
        for (a, img) in rules {
            check_same(quiver, img.quiver())?;
            let name = quiver.name(a).to_string();
            if std::mem::replace(&mut seen[a.index()], true) {
                return Err(Error::InvalidRule { arrow: name, reason: "rule given twice".into() });
            }
            if !img.is_parallel(quiver.tail(a), quiver.head(a)) {
                return Err(Error::InvalidRule { arrow: name, reason: "image is not parallel to the arrow".into() });
            }
            if img.terms().any(|(p, _)| p.is_lazy()) {
                return Err(Error::InvalidRule { arrow: name, reason: "image has a constant term".into() });
            }
            let img = img.with_degree(degree);
            if img != Element::from_arrow(quiver, degree, a) {
                slots[a.index()] = Some(img);
            }
        }
        Ok(Self::assemble(quiver.clone(), degree, slots))
    }

    fn assemble(quiver: Arc<Quiver>, degree: usize, rules: Vec<Option<Element>>) -> REndomorphism {
        let mut expanded = Vec::with_capacity(rules.len());
        let mut min_len = Vec::with_capacity(rules.len());
        for (i, r) in rules.iter().enumerate() {
            let mut terms: Vec<(ArrowSeq, Scalar)> = match r {
                None => vec![(smallvec::smallvec![ArrowId(i as u32)], Scalar::one())],
                Some(e) => e.terms().map(|(p, c)| (p.arrows().iter().copied().collect(), c.clone())).collect(),
            };
            terms.sort_by_key(|(s, _)| s.len());
            min_len.push(terms.first().map_or(usize::MAX / 4, |(s, _)| s.len()));
            expanded.push(terms);
        }
        let mut e = REndomorphism { quiver, degree, rules, expanded, min_len, automorphism: false };
        e.automorphism = e.linear_part_invertible();
        e
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_identity(&self) -> bool {
        self.rules.iter().all(Option::is_none)
    }

    /// Explicit rules, skipping arrows that are fixed.
    pub fn rules(&self) -> impl Iterator<Item = (ArrowId, &Element)> {
        self.rules.iter().enumerate().filter_map(|(i, r)| r.as_ref().map(|e| (ArrowId(i as u32), e)))
    }

    pub fn image(&self, a: ArrowId) -> Element {
        match &self.rules[a.index()] {
            Some(e) => e.clone(),
            None => Element::from_arrow(&self.quiver, self.degree, a),
        }
    }

    /// `φ(a) − a`.
    pub fn correction(&self, a: ArrowId) -> Element {
        match &self.rules[a.index()] {
            Some(e) => e.sub(&Element::from_arrow(&self.quiver, self.degree, a)).expect("same quiver"),
            None => Element::zero(&self.quiver, self.degree),
        }
    }

    pub fn is_unitriangular(&self) -> bool {
        (0..self.rules.len()).all(|i| self.correction(ArrowId(i as u32)).min_length().at_least(2))
    }

    /// Minimum over arrows of the shortest correction length, minus one.
    pub fn depth(&self) -> ExtNat {
        (0..self.rules.len())
            .map(|i| self.correction(ArrowId(i as u32)).min_length().minus(1))
            .min()
            .unwrap_or(ExtNat::Infinite)
    }

    /// Whether the induced linear map on arrow spans is invertible for every vertex pair.
    pub fn is_automorphism(&self) -> bool {
        self.automorphism
    }

    fn linear_part_invertible(&self) -> bool {
        let q = &*self.quiver;
        let mut blocks: Vec<((VertexId, VertexId), Vec<ArrowId>)> = Vec::new();
        for a in q.arrow_ids() {
            let key = (q.tail(a), q.head(a));
            match blocks.iter_mut().find(|(k, _)| *k == key) {
                Some((_, v)) => v.push(a),
                None => blocks.push((key, vec![a])),
            }
        }
        blocks.iter().all(|(_, arrows)| {
            let m: linalg::Matrix = arrows
                .iter()
                .map(|&a| {
                    let img = self.image(a);
                    arrows.iter().map(|&b| img.coeff(&Path::arrow(q, b))).collect()
                })
                .collect();
            linalg::is_invertible(&m)
        })
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        check_same(&self.quiver, x.quiver())?;
        let degree = self.degree.min(x.degree());
        let mut out = Element::zero(&self.quiver, degree);
        let mut rest = Vec::new();
        let mut buf = ArrowSeq::new();
        for (p, c) in x.terms() {
            if p.is_lazy() {
                out.add_term(p.clone(), c.clone());
                continue;
            }
            let w = p.arrows();
            rest.clear();
            rest.resize(w.len() + 1, 0);
            for i in (0..w.len()).rev() {
                rest[i] = rest[i + 1] + self.min_len[w[i].index()];
            }
            if rest[0] > degree {
                continue;
            }
            buf.clear();
            self.expand(w, 0, &rest, degree, c.clone(), &mut buf, p.tail(), &mut out);
        }
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn expand(
        &self,
        w: &[ArrowId],
        i: usize,
        rest: &[usize],
        degree: usize,
        c: Scalar,
        buf: &mut ArrowSeq,
        tail: VertexId,
        out: &mut Element,
    ) {
        if i == w.len() {
            out.add_term(Path::from_parts(tail, buf.clone()), c);
            return;
        }
        for (seq, x) in &self.expanded[w[i].index()] {
            if buf.len() + seq.len() + rest[i + 1] > degree {
                break;
            }
            let mark = buf.len();
            buf.extend_from_slice(seq);
            let next = if x.is_one() { c.clone() } else { &c * x };
            self.expand(w, i + 1, rest, degree, next, buf, tail, out);
            buf.truncate(mark);
        }
    }

    pub fn apply_potential(&self, p: &Potential) -> Result<Potential> {
        Potential::from_element(&self.apply(p.element())?)
    }

    /// `self ∘ other`: `other` is applied first.
    pub fn compose(&self, other: &REndomorphism) -> Result<REndomorphism> {
        check_same(&self.quiver, &other.quiver)?;
        let degree = self.degree.min(other.degree);
        let mut rules = Vec::with_capacity(self.rules.len());
        for (i, r) in other.rules.iter().enumerate() {
            let a = ArrowId(i as u32);
            let img = match r {
                None => self.rules[i].as_ref().map(|e| e.truncate(degree)),
                Some(e) => Some(self.apply(e)?),
            };
            rules.push(img.filter(|e| *e != Element::from_arrow(&self.quiver, degree, a)));
        }
        Ok(Self::assemble(self.quiver.clone(), degree, rules))
    }

    /// Inverse of a unitriangular map modulo the truncation, by iterating
    /// `ψ(a) = a − ψ(φ(a) − a)` to its fixed point.
    pub fn invert_unitriangular(&self) -> Result<REndomorphism> {
        if !self.is_unitriangular() {
            return Err(Error::NotUnitriangular);
        }
        let q = &self.quiver;
        let corrections: Vec<(ArrowId, Element)> =
            self.rules().map(|(a, _)| (a, self.correction(a))).collect();
        let mut psi = REndomorphism::identity(q, self.degree);
        for _ in 0..=self.degree + 1 {
            let mut rules = Vec::with_capacity(corrections.len());
            for (a, h) in &corrections {
                let img = Element::from_arrow(q, self.degree, *a).sub(&psi.apply(h)?)?;
                rules.push((*a, img));
            }
            let next = REndomorphism::new(q, self.degree, rules)?;
            if next == psi {
                return Ok(next);
            }
            psi = next;
        }
        Err(Error::Invariant("inverse iteration did not stabilize".into()))
    }
}

/// Result of composing a sequence of unitriangular maps until truncation.
#[derive(Clone, Debug)]
pub struct LimitComposite {
    pub map: REndomorphism,
    pub factors: usize,
}

/// Forms `… ∘ φ₂ ∘ φ₁`, stopping once a factor acts trivially below the
/// truncation (depth ≥ `degree`) or the sequence ends.
pub fn limit_compose<I>(quiver: &Arc<Quiver>, degree: usize, factors: I) -> Result<LimitComposite>
where
    I: IntoIterator<Item = Result<REndomorphism>>,
{
    let mut composite = REndomorphism::identity(quiver, degree);
    let mut consumed = 0;
    let mut best = ExtNat::Finite(0);
    let mut stalled = 0usize;
    for phi in factors {
        let phi = phi?;
        consumed += 1;
        if !phi.is_unitriangular() {
            return Err(Error::NotUnitriangular);
        }
        let d = phi.depth();
        if d.at_least(degree) {
            break;
        }
        composite = phi.compose(&composite)?;
        if d > best {
            best = d;
            stalled = 0;
        } else {
            stalled += 1;
            if stalled >= 10 * degree.max(1) {
                return Err(Error::Stall(format!(
                    "{stalled} consecutive factors without depth exceeding {best} (after {consumed} factors)"
                )));
            }
        }
    }
    Ok(LimitComposite { map: composite, factors: consumed })
}

impl REndomorphism {
    /// Human-readable rules, for diagnostics.
    pub fn display(&self) -> String {
        let q = &self.quiver;
        let parts: Vec<String> = self.rules().map(|(a, e)| format!("{} -> {}", q.name(a), e.display())).collect();
        if parts.is_empty() {
            "id".into()
        } else {
            parts.join("; ")
        }
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn quiver(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Arc<Quiver> {
        Arc::new(Quiver::new(vertices.iter().copied(), arrows.iter().copied()).unwrap())
    }

    fn path(q: &Arc<Quiver>, d: usize, names: &[&str]) -> Element {
        Element::from_path(q, d, Path::from_names(q, names).unwrap())
    }

    fn markov() -> Arc<Quiver> {
        quiver(
            &["1", "2", "3"],
            &[("a1", "2", "1"), ("a2", "2", "1"), ("b1", "1", "3"), ("b2", "1", "3"), ("c1", "3", "2"), ("c2", "3", "2")],
        )
    }

    fn random_element(q: &Arc<Quiver>, d: usize, rng: &mut ChaCha8Rng) -> Element {
        let mut e = Element::zero(q, d);
        for _ in 0..rng.gen_range(1..5) {
            let len = rng.gen_range(1..=d.min(6));
            let mut v = VertexId(rng.gen_range(0..q.num_vertices() as u32));
            let start = v;
            let mut arrows = Vec::new();
            for _ in 0..len {
                let out = q.outgoing(v);
                let a = out[rng.gen_range(0..out.len())];
                arrows.insert(0, a);
                v = q.head(a);
            }
            let p = if arrows.is_empty() { Path::lazy(start) } else { Path::new(q, &arrows).unwrap() };
            e.add_term(p, int(rng.gen_range(-3..=3)));
        }
        e
    }

    #[test]
    fn identity_fixes_everything() {
        let q = markov();
        let id = REndomorphism::identity(&q, 9);
        let x = path(&q, 9, &["c1", "b2", "a1"]);
        assert_eq!(id.apply(&x).unwrap(), x);
        assert_eq!(id.depth(), ExtNat::Infinite);
        assert!(id.is_unitriangular() && id.is_automorphism());
    }

    #[test]
    fn single_substitution() {
        let q = quiver(&["1", "2", "3"], &[("a", "1", "2"), ("b", "1", "3"), ("c", "3", "2"), ("d", "2", "1")]);
        let a = q.arrow_by_name("a").unwrap();
        let img = path(&q, 8, &["a"]).sub(&path(&q, 8, &["c", "b"])).unwrap();
        let phi = REndomorphism::new(&q, 8, [(a, img)]).unwrap();
        let got = phi.apply(&path(&q, 8, &["a", "d"])).unwrap();
        let want = path(&q, 8, &["a", "d"]).sub(&path(&q, 8, &["c", "b", "d"])).unwrap();
        assert_eq!(got, want);
        assert!(phi.is_unitriangular());
        assert_eq!(phi.depth(), ExtNat::Finite(1));
    }

    #[test]
    fn rescaling_is_an_automorphism_but_not_unitriangular() {
        let q = quiver(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")]);
        let a = q.arrow_by_name("a").unwrap();
        let phi = REndomorphism::new(&q, 6, [(a, path(&q, 6, &["a"]).scale(&ratio(1, 2)))]).unwrap();
        let got = phi.apply(&path(&q, 6, &["c", "b", "a"]).scale(&int(2))).unwrap();
        assert_eq!(got, path(&q, 6, &["c", "b", "a"]));
        assert!(phi.is_automorphism());
        assert!(!phi.is_unitriangular());
        let kill = REndomorphism::new(&q, 6, [(a, Element::zero(&q, 6))]).unwrap();
        assert!(!kill.is_automorphism());
    }

    #[test]
    fn rules_are_validated() {
        let q = markov();
        let a1 = q.arrow_by_name("a1").unwrap();
        assert!(REndomorphism::new(&q, 6, [(a1, path(&q, 6, &["b1"]))]).is_err());
        let ok = path(&q, 6, &["a2"]);
        assert!(REndomorphism::new(&q, 6, [(a1, ok.clone()), (a1, ok)]).is_err());
    }

    #[test]
    fn products_are_respected() {
        let q = markov();
        let d = 10;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a1 = q.arrow_by_name("a1").unwrap();
        let b2 = q.arrow_by_name("b2").unwrap();
        let phi = REndomorphism::new(
            &q,
            d,
            [
                (a1, path(&q, d, &["a1"]).add(&path(&q, d, &["a2", "c1", "b1", "a1"]).scale(&int(-2))).unwrap()),
                (b2, path(&q, d, &["b2"]).add(&path(&q, d, &["b1", "a2", "c2", "b2"])).unwrap()),
            ],
        )
        .unwrap();
        for _ in 0..40 {
            let x = random_element(&q, d, &mut rng);
            let y = random_element(&q, d, &mut rng);
            let lhs = phi.apply(&x.mul(&y).unwrap()).unwrap();
            let rhs = phi.apply(&x).unwrap().mul(&phi.apply(&y).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            let moved = phi.apply(&x).unwrap().sub(&x).unwrap();
            let bound = x.min_length().finite().map(|m| m + phi.depth().finite().unwrap());
            if let (Some(b), Some(m)) = (bound, moved.min_length().finite()) {
                assert!(m >= b);
            }
        }
    }

    #[test]
    fn inverse_round_trips() {
        let q = markov();
        let d = 12;
        let a1 = q.arrow_by_name("a1").unwrap();
        let c2 = q.arrow_by_name("c2").unwrap();
        let phi = REndomorphism::new(
            &q,
            d,
            [
                (a1, path(&q, d, &["a1"]).sub(&path(&q, d, &["a2", "c1", "b1", "a1"])).unwrap()),
                (c2, path(&q, d, &["c2"]).add(&path(&q, d, &["c1", "b2", "a1", "c2"]).scale(&int(3))).unwrap()),
            ],
        )
        .unwrap();
        let inv = phi.invert_unitriangular().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let x = random_element(&q, d, &mut rng);
            assert_eq!(inv.apply(&phi.apply(&x).unwrap()).unwrap(), x);
            assert_eq!(phi.apply(&inv.apply(&x).unwrap()).unwrap(), x);
        }
        assert!(phi.compose(&inv).unwrap().is_identity());
        assert!(inv.compose(&phi).unwrap().is_identity());
        let id = REndomorphism::identity(&q, d);
        assert!(id.invert_unitriangular().unwrap().is_identity());
    }

    #[test]
    fn nilpotent_correction_inverts_by_sign() {
        let q = quiver(&["1", "2", "3"], &[("a", "1", "2"), ("b", "1", "3"), ("c", "3", "2")]);
        let a = q.arrow_by_name("a").unwrap();
        let phi = REndomorphism::new(&q, 5, [(a, path(&q, 5, &["a"]).add(&path(&q, 5, &["c", "b"])).unwrap())]).unwrap();
        let inv = phi.invert_unitriangular().unwrap();
        assert_eq!(inv.image(a), path(&q, 5, &["a"]).sub(&path(&q, 5, &["c", "b"])).unwrap());
        let scale = REndomorphism::new(&q, 5, [(a, path(&q, 5, &["a"]).scale(&int(2)))]).unwrap();
        assert!(matches!(scale.invert_unitriangular(), Err(Error::NotUnitriangular)));
    }

    #[test]
    fn composition_and_depth() {
        let q = quiver(&["1", "2"], &[("l", "1", "1"), ("a", "1", "2")]);
        let a = q.arrow_by_name("a").unwrap();
        let d = 12;
        let shift = |k: usize| {
            let mut names = vec!["a"];
            names.extend(std::iter::repeat_n("l", k));
            REndomorphism::new(&q, d, [(a, path(&q, d, &["a"]).add(&path(&q, d, &names)).unwrap())]).unwrap()
        };
        let (f, g) = (shift(2), shift(5));
        assert_eq!(f.depth(), ExtNat::Finite(2));
        assert!(f.compose(&g).unwrap().depth() >= ExtNat::Finite(2));
        let id = REndomorphism::identity(&q, d);
        assert_eq!(id.compose(&g).unwrap(), g);

        let run = limit_compose(&q, d, (1..).map(|k| Ok(shift(k)))).unwrap();
        assert_eq!(run.factors, d);
        let ids = limit_compose(&q, d, std::iter::repeat_with(|| Ok(REndomorphism::identity(&q, d))).take(4)).unwrap();
        assert!(ids.map.is_identity());
        let stuck = limit_compose(&q, d, std::iter::repeat_with(|| Ok(shift(1))));
        assert!(matches!(stuck, Err(Error::Stall(_))));
    }
}
