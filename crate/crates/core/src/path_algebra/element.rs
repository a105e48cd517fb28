use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use super::path::Path;
use super::quiver::{ArrowId, Quiver, VertexId};
use crate::error::{Error, Result};
use crate::ext::ExtNat;
use crate::scalar::Scalar;

/// A finite combination of paths, valid modulo paths longer than `degree`.
#[derive(Clone, Debug)]
pub struct Element {
    quiver: Arc<Quiver>,
    degree: usize,
    terms: BTreeMap<Path, Scalar>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        same_quiver(&self.quiver, &other.quiver) && self.degree == other.degree && self.terms == other.terms
    }
}

pub(crate) fn same_quiver(a: &Arc<Quiver>, b: &Arc<Quiver>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn check_same(a: &Arc<Quiver>, b: &Arc<Quiver>) -> Result<()> {
    if same_quiver(a, b) {
        Ok(())
    } else {
        Err(Error::QuiverMismatch)
    }
}

impl Element {
    pub fn zero(quiver: &Arc<Quiver>, degree: usize) -> Element {
        Element { quiver: quiver.clone(), degree, terms: BTreeMap::new() }
    }

    pub fn from_path(quiver: &Arc<Quiver>, degree: usize, path: Path) -> Element {
        let mut e = Element::zero(quiver, degree);
        e.add_term(path, Scalar::from_integer(1.into()));
        e
    }

    pub fn from_arrow(quiver: &Arc<Quiver>, degree: usize, a: ArrowId) -> Element {
        Element::from_path(quiver, degree, Path::arrow(quiver, a))
    }

    pub fn lazy(quiver: &Arc<Quiver>, degree: usize, v: VertexId) -> Element {
        Element::from_path(quiver, degree, Path::lazy(v))
    }

    pub fn from_terms<I: IntoIterator<Item = (Path, Scalar)>>(quiver: &Arc<Quiver>, degree: usize, terms: I) -> Element {
        let mut e = Element::zero(quiver, degree);
        for (p, c) in terms {
            e.add_term(p, c);
        }
        e
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> btree_map::Iter<'_, Path, Scalar> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Path, Scalar> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: &Path) -> Scalar {
        self.terms.get(p).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Adds `c · p`, dropping it if `p` is longer than the truncation degree.
    pub fn add_term(&mut self, p: Path, c: Scalar) {
        if p.len() > self.degree || c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c · other`; the degree drops to the minimum of both.
    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) -> Result<()> {
        check_same(&self.quiver, &other.quiver)?;
        if other.degree < self.degree {
            self.truncate_in_place(other.degree);
        }
        if c.is_zero() {
            return Ok(());
        }
        for (p, x) in &other.terms {
            self.add_term(p.clone(), x * c);
        }
        Ok(())
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        let mut r = self.clone();
        r.add_scaled(other, &Scalar::from_integer(1.into()))?;
        Ok(r)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        let mut r = self.clone();
        r.add_scaled(other, &Scalar::from_integer((-1).into()))?;
        Ok(r)
    }

    pub fn neg(&self) -> Element {
        self.scale(&Scalar::from_integer((-1).into()))
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero(&self.quiver, self.degree);
        }
        Element {
            quiver: self.quiver.clone(),
            degree: self.degree,
            terms: self.terms.iter().map(|(p, x)| (p.clone(), x * c)).collect(),
        }
    }

    /// Bilinear extension of concatenation, `self · other`.
    pub fn mul(&self, other: &Element) -> Result<Element> {
        check_same(&self.quiver, &other.quiver)?;
        let degree = self.degree.min(other.degree);
        let q = &*self.quiver;
        let mut r = Element::zero(&self.quiver, degree);
        for (p, x) in &self.terms {
            for (s, y) in &other.terms {
                if p.len() + s.len() > degree {
                    continue;
                }
                if let Some(ps) = p.concat(s, q) {
                    r.add_term(ps, x * y);
                }
            }
        }
        Ok(r)
    }

    pub fn truncate(&self, degree: usize) -> Element {
        let mut r = self.clone();
        r.truncate_in_place(degree);
        r
    }

    fn truncate_in_place(&mut self, degree: usize) {
        if degree < self.degree {
            self.terms.retain(|p, _| p.len() <= degree);
            self.degree = degree;
        }
    }

    /// Re-labels the truncation degree upwards without changing terms.
    pub fn with_degree(&self, degree: usize) -> Element {
        let mut r = self.truncate(degree);
        r.degree = degree;
        r
    }

    pub fn min_length(&self) -> ExtNat {
        self.terms.keys().map(|p| p.len()).min().map_or(ExtNat::Infinite, ExtNat::Finite)
    }

    pub fn max_length(&self) -> usize {
        self.terms.keys().map(|p| p.len()).max().unwrap_or(0)
    }

    pub fn filter<F: Fn(&Path) -> bool>(&self, keep: F) -> Element {
        Element {
            quiver: self.quiver.clone(),
            degree: self.degree,
            terms: self.terms.iter().filter(|(p, _)| keep(p)).map(|(p, c)| (p.clone(), c.clone())).collect(),
        }
    }

    /// True iff every term runs from `tail` to `head`.
    pub fn is_parallel(&self, tail: VertexId, head: VertexId) -> bool {
        self.terms.keys().all(|p| p.tail() == tail && p.head(&self.quiver) == head)
    }

    pub fn display(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(p, c)| format!("({}) {}", c, p.display(&self.quiver)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    fn markov() -> Arc<Quiver> {
        Arc::new(
            Quiver::new(
                ["1", "2", "3"],
                [
                    ("a1", "2", "1"),
                    ("a2", "2", "1"),
                    ("b1", "1", "3"),
                    ("b2", "1", "3"),
                    ("c1", "3", "2"),
                    ("c2", "3", "2"),
                ],
            )
            .unwrap(),
        )
    }

    fn arrow(q: &Arc<Quiver>, d: usize, n: &str) -> Element {
        Element::from_arrow(q, d, q.arrow_by_name(n).unwrap())
    }

    #[test]
    fn idempotents_multiply() {
        let q = markov();
        let v = q.vertex("2").unwrap();
        let e = Element::lazy(&q, 5, v);
        assert_eq!(e.mul(&e).unwrap(), e);
        let w = Element::lazy(&q, 5, q.vertex("1").unwrap());
        assert!(e.mul(&w).unwrap().is_zero());
    }

    #[test]
    fn hand_composition_of_the_triangle() {
        let q = markov();
        let p = arrow(&q, 6, "c1").mul(&arrow(&q, 6, "b1")).unwrap().mul(&arrow(&q, 6, "a1")).unwrap();
        let expected = Path::from_names(&q, &["c1", "b1", "a1"]).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p.coeff(&expected), int(1));
        assert!(arrow(&q, 6, "c1").mul(&arrow(&q, 6, "a1")).unwrap().is_zero());
    }

    #[test]
    fn truncation_kills_long_products() {
        let q = markov();
        let d = 4;
        let p3 = Element::from_path(&q, d, Path::from_names(&q, &["c1", "b1", "a1"]).unwrap());
        let p2 = Element::from_path(&q, d, Path::from_names(&q, &["a2", "c2"]).unwrap());
        assert!(p2.mul(&p3).unwrap().is_zero());
        let p1 = arrow(&q, d, "a2");
        assert_eq!(p1.mul(&p3).unwrap().len(), 1);
    }

    #[test]
    fn mixed_degrees_truncate_to_minimum() {
        let q = markov();
        let x = Element::from_path(&q, 8, Path::from_names(&q, &["c1", "b1", "a1"]).unwrap());
        let y = arrow(&q, 2, "a1");
        let s = x.add(&y).unwrap();
        assert_eq!(s.degree(), 2);
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn cancellation_removes_terms() {
        let q = markov();
        let x = arrow(&q, 3, "a1").scale(&ratio(3, 2));
        assert!(x.sub(&x).unwrap().is_zero());
        assert!(x.scale(&int(0)).is_zero());
    }

    #[test]
    fn quiver_mismatch_is_an_error() {
        let q = markov();
        let r = Arc::new(Quiver::new(["1"], [("l", "1", "1")]).unwrap());
        let x = arrow(&q, 3, "a1");
        let y = Element::from_arrow(&r, 3, ArrowId(0));
        assert!(matches!(x.add(&y), Err(Error::QuiverMismatch)));
        assert!(matches!(x.mul(&y), Err(Error::QuiverMismatch)));
    }
}
