use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::element::{check_same, Element};
use super::path::{ArrowSeq, Path};
use super::quiver::{ArrowId, Quiver};
use crate::error::{Error, Result};
use crate::ext::ExtNat;
use crate::scalar::Scalar;

/// A truncated combination of cycles, each stored as its least rotation, so
/// that equality of stored terms is cyclic equivalence.
#[derive(Clone, Debug, PartialEq)]
pub struct Potential {
    elem: Element,
}

/// First term (in path order) on which two potentials disagree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermDifference {
    pub path: Vec<String>,
    pub left: String,
    pub right: String,
}

impl Potential {
    pub fn zero(quiver: &Arc<Quiver>, degree: usize) -> Potential {
        Potential { elem: Element::zero(quiver, degree) }
    }

    /// Canonicalizes every term; fails on a term that is not a cycle.
    pub fn from_element(e: &Element) -> Result<Potential> {
        let q = e.quiver().clone();
        let mut out = Element::zero(&q, e.degree());
        for (p, c) in e.terms() {
            out.add_term(p.canonical_rotation(&q)?, c.clone());
        }
        Ok(Potential { elem: out })
    }

    pub fn from_cycles<I: IntoIterator<Item = (Path, Scalar)>>(quiver: &Arc<Quiver>, degree: usize, terms: I) -> Result<Potential> {
        let mut out = Element::zero(quiver, degree);
        for (p, c) in terms {
            out.add_term(p.canonical_rotation(quiver)?, c);
        }
        Ok(Potential { elem: out })
    }

    pub fn cycle(quiver: &Arc<Quiver>, degree: usize, c: Path, coeff: Scalar) -> Result<Potential> {
        Potential::from_cycles(quiver, degree, [(c, coeff)])
    }

    /// Wraps an element already known to consist of canonical cycles.
    pub(crate) fn from_canonical(elem: Element) -> Potential {
        debug_assert!(elem.terms().all(|(p, _)| p.is_cycle(elem.quiver()) && p.is_canonical()));
        Potential { elem }
    }

    pub fn element(&self) -> &Element {
        &self.elem
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        self.elem.quiver()
    }

    pub fn degree(&self) -> usize {
        self.elem.degree()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Scalar)> {
        self.elem.terms()
    }

    pub fn len(&self) -> usize {
        self.elem.len()
    }

    pub fn is_zero(&self) -> bool {
        self.elem.is_zero()
    }

    /// Coefficient of the rotation class of `c`.
    pub fn coeff(&self, c: &Path) -> Result<Scalar> {
        Ok(self.elem.coeff(&c.canonical_rotation(self.quiver())?))
    }

    /// Length of the shortest cycle present; infinite for zero.
    pub fn short(&self) -> ExtNat {
        self.elem.min_length()
    }

    pub fn add(&self, other: &Potential) -> Result<Potential> {
        Ok(Potential { elem: self.elem.add(&other.elem)? })
    }

    pub fn sub(&self, other: &Potential) -> Result<Potential> {
        Ok(Potential { elem: self.elem.sub(&other.elem)? })
    }

    pub fn add_scaled(&mut self, other: &Potential, c: &Scalar) -> Result<()> {
        self.elem.add_scaled(&other.elem, c)
    }

    pub fn scale(&self, c: &Scalar) -> Potential {
        Potential { elem: self.elem.scale(c) }
    }

    pub fn neg(&self) -> Potential {
        Potential { elem: self.elem.neg() }
    }

    pub fn truncate(&self, degree: usize) -> Potential {
        Potential { elem: self.elem.truncate(degree) }
    }

    pub fn with_degree(&self, degree: usize) -> Potential {
        Potential { elem: self.elem.with_degree(degree) }
    }

    pub fn filter<F: Fn(&Path) -> bool>(&self, keep: F) -> Potential {
        Potential { elem: self.elem.filter(keep) }
    }

    /// Sum over occurrences of `alpha`: rotate it to the front and delete it.
    /// The result is truncated one degree lower.
    pub fn cyclic_derivative(&self, alpha: ArrowId) -> Result<Element> {
        let q = self.quiver().clone();
        if alpha.index() >= q.num_arrows() {
            return Err(Error::UnknownArrow(format!("#{}", alpha.0)));
        }
        let mut out = Element::zero(&q, self.degree().saturating_sub(1));
        for (c, x) in self.terms() {
            let w = c.arrows();
            for i in 0..w.len() {
                if w[i] != alpha {
                    continue;
                }
                let mut arrows = ArrowSeq::with_capacity(w.len() - 1);
                arrows.extend_from_slice(&w[i + 1..]);
                arrows.extend_from_slice(&w[..i]);
                out.add_term(Path::from_parts(q.head(alpha), arrows), x.clone());
            }
        }
        Ok(out)
    }

    pub fn is_cyclically_equivalent(&self, other: &Potential) -> Result<bool> {
        check_same(self.quiver(), other.quiver())?;
        if self.degree() != other.degree() {
            return Err(Error::TruncationMismatch(self.degree(), other.degree()));
        }
        Ok(self.elem == other.elem)
    }

    /// The least cycle whose coefficients differ, if any.
    pub fn first_difference(&self, other: &Potential) -> Option<TermDifference> {
        let q = self.quiver();
        let mut a = self.elem.terms().peekable();
        let mut b = other.elem.terms().peekable();
        loop {
            let (pa, pb) = (a.peek(), b.peek());
            let found = match (pa, pb) {
                (None, None) => return None,
                (Some((p, x)), None) => (*p, (*x).clone(), Scalar::default()),
                (None, Some((p, y))) => (*p, Scalar::default(), (*y).clone()),
                (Some((p, x)), Some((r, y))) => match p.cmp(r) {
                    std::cmp::Ordering::Less => (*p, (*x).clone(), Scalar::default()),
                    std::cmp::Ordering::Greater => (*r, Scalar::default(), (*y).clone()),
                    std::cmp::Ordering::Equal => {
                        if x != y {
                            (*p, (*x).clone(), (*y).clone())
                        } else {
                            a.next();
                            b.next();
                            continue;
                        }
                    }
                },
            };
            return Some(TermDifference {
                path: found.0.names(q),
                left: found.1.to_string(),
                right: found.2.to_string(),
            });
        }
    }

    pub fn display(&self) -> String {
        self.elem.display()
    }
}
