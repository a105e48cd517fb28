//! Truncated Jacobian algebras: the quotient of paths of length at most `D`
//! by the two-sided ideal of cyclic derivatives.

mod binomial;
mod echelon;
mod trie;

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use self::binomial::BinomialClasses;
use self::echelon::{Echelon, SparseRow};
use self::trie::{PathTrie, NONE};
use crate::error::{Error, Result};
use crate::linalg;
use crate::mutation::Qp;
use crate::path_algebra::{ArrowId, Element, Path};
use crate::scalar::Scalar;
use crate::surface::TriangulationQuiver;

/// Upper limit on the number of paths enumerated.
pub const MAX_PATHS: usize = 25_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// Binomial when every derivative has at most two terms, else general.
    Auto,
    /// Union-find over paths identified up to scalars.
    Binomial,
    /// Sparse exact row reduction.
    General,
}

/// One generator per arrow: the cyclic derivative of the potential.
pub fn jacobian_generators(qp: &Qp) -> Result<Vec<(ArrowId, Element)>> {
    let q = qp.quiver();
    q.arrow_ids().map(|a| Ok((a, qp.potential.cyclic_derivative(a)?))).collect()
}

enum Reducer {
    Binomial(BinomialClasses),
    General(Echelon),
}

pub struct TruncatedQuotient {
    pub degree: usize,
    pub dimension: usize,
    /// Number of basis paths of each length `0..=degree`.
    pub per_degree: Vec<usize>,
    /// Least `L` at which every path of length `L` vanishes; when present the
    /// dimension is that of the untruncated Jacobian algebra.
    pub certificate: Option<usize>,
    pub route: Route,
    pub relations: usize,
    trie: PathTrie,
    reducer: Reducer,
}

/// Computes the quotient of paths of length at most `degree` by the span of
/// all `p · ∂_α S · q`, modulo paths longer than `degree`.
pub fn quotient(qp: &Qp, degree: usize, route: Route) -> Result<TruncatedQuotient> {
    if qp.degree() <= degree {
        return Err(Error::InvalidArgument(format!(
            "the potential is truncated at {}, but derivatives up to length {degree} need degree at least {}",
            qp.degree(),
            degree + 1
        )));
    }
    let q = qp.quiver();
    let generators: Vec<Vec<(Path, Scalar)>> = jacobian_generators(qp)?
        .into_iter()
        .map(|(_, g)| g.with_degree(degree).into_terms().into_iter().filter(|(p, _)| p.len() <= degree).collect())
        .filter(|t: &Vec<(Path, Scalar)>| !t.is_empty())
        .collect();
    let route = match route {
        Route::Auto if generators.iter().all(|g| g.len() <= 2) => Route::Binomial,
        Route::Auto => Route::General,
        Route::Binomial if generators.iter().any(|g| g.len() > 2) => {
            return Err(Error::InvalidArgument("a cyclic derivative has more than two terms".into()))
        }
        r => r,
    };
    let trie = PathTrie::build(q, degree, MAX_PATHS)?;
    let mut relations = 0;
    let reducer = match route {
        Route::Binomial => {
            let mut classes = BinomialClasses::new(trie.num_nodes());
            for g in &generators {
                let ratio = (g.len() == 2).then(|| -(&g[1].1 / &g[0].1));
                for_each_multiple(&trie, g, |ids| {
                    relations += 1;
                    match (ids[0], ids.get(1).copied().unwrap_or(NONE)) {
                        (NONE, NONE) => {}
                        (u, NONE) => classes.kill(u),
                        (NONE, v) => classes.kill(v),
                        (u, v) => classes.relate(u, v, ratio.as_ref().unwrap()),
                    }
                });
            }
            classes.flatten();
            Reducer::Binomial(classes)
        }
        _ => {
            let mut ech = Echelon::default();
            for g in &generators {
                for_each_multiple(&trie, g, |ids| {
                    relations += 1;
                    let row: SparseRow =
                        ids.iter().zip(g).filter(|(&id, _)| id != NONE).map(|(&id, (_, c))| (id, c.clone())).collect();
                    ech.insert(row);
                });
            }
            Reducer::General(ech)
        }
    };
    let mut out = TruncatedQuotient {
        degree,
        dimension: 0,
        per_degree: vec![0; degree + 1],
        certificate: None,
        route,
        relations,
        trie,
        reducer,
    };
    for id in out.basis_ids() {
        out.per_degree[out.trie.len_of(id)] += 1;
    }
    out.dimension = out.per_degree.iter().sum();
    if let Reducer::General(e) = &out.reducer {
        debug_assert_eq!(out.dimension + e.rank(), out.trie.num_nodes());
    }
    out.certificate = (0..=degree).find(|&l| out.trie.level(l).all(|id| out.node_is_zero(id as u32)));
    if let Some(l) = out.certificate {
        debug_assert!(out.per_degree[l..].iter().all(|&c| c == 0));
    }
    Ok(out)
}

/// Visits `p · g · q` for every pair of paths with the product inside the
/// trie, passing the node of each term (or `NONE` when too long).
fn for_each_multiple<F: FnMut(&[u32])>(trie: &PathTrie, g: &[(Path, Scalar)], mut emit: F) {
    let q = trie.quiver();
    let start = g[0].0.tail();
    let min_len = g.iter().map(|(p, _)| p.len()).min().unwrap();
    let mut stack: Vec<Vec<u32>> = Vec::new();
    for l in 0..=trie.degree().saturating_sub(min_len) {
        for id in trie.level(l) {
            let id = id as u32;
            if trie.end(id) != start {
                continue;
            }
            stack.push(g.iter().map(|(p, _)| trie.walk(id, p)).collect());
            while let Some(ids) = stack.pop() {
                let Some(&live) = ids.iter().find(|&&x| x != NONE) else { continue };
                emit(&ids);
                let width = q.outgoing(trie.end(live)).len();
                for k in 0..width {
                    stack.push(ids.iter().map(|&x| if x == NONE { NONE } else { trie.children(x)[k] }).collect());
                }
            }
        }
    }
}

impl TruncatedQuotient {
    fn basis_ids(&self) -> Vec<u32> {
        match &self.reducer {
            Reducer::Binomial(c) => c.representatives(),
            Reducer::General(e) => (0..self.trie.num_nodes() as u32).filter(|&id| !e.is_pivot(id)).collect(),
        }
    }

    fn node_is_zero(&self, id: u32) -> bool {
        match &self.reducer {
            Reducer::Binomial(c) => c.normal_form(id).is_none(),
            Reducer::General(e) => e.is_pivot(id) && e.reduce(SparseRow::from([(id, Scalar::from_integer(1.into()))])).is_empty(),
        }
    }

    fn node_normal_form(&self, id: u32) -> SparseRow {
        match &self.reducer {
            Reducer::Binomial(c) => c.normal_form(id).into_iter().collect(),
            Reducer::General(e) => e.reduce(SparseRow::from([(id, Scalar::from_integer(1.into()))])),
        }
    }

    pub fn is_certified(&self) -> bool {
        self.certificate.is_some()
    }

    pub fn basis(&self) -> Vec<Path> {
        self.basis_ids().into_iter().map(|id| self.trie.path(id)).collect()
    }

    /// The class of `x` written in the basis of least representatives.
    pub fn normal_form(&self, x: &Element) -> Result<Vec<(Path, Scalar)>> {
        let mut acc = SparseRow::new();
        for (p, c) in x.terms() {
            if p.len() > self.degree {
                continue;
            }
            let id = self.trie.find(p);
            if id == NONE {
                return Err(Error::NotComposable(p.display(self.trie.quiver())));
            }
            for (k, v) in self.node_normal_form(id) {
                let e = acc.entry(k).or_insert_with(Scalar::zero);
                *e += &v * c;
                if e.is_zero() {
                    acc.remove(&k);
                }
            }
        }
        Ok(acc.into_iter().map(|(id, c)| (self.trie.path(id), c)).collect())
    }

    pub fn is_zero(&self, p: &Path) -> bool {
        let id = self.trie.find(p);
        id == NONE || self.node_is_zero(id)
    }

    /// Whether the classes of `paths` are linearly independent.
    pub fn independent(&self, paths: &[Path]) -> bool {
        let forms: Vec<SparseRow> =
            paths.iter().map(|p| match self.trie.find(p) { NONE => SparseRow::new(), id => self.node_normal_form(id) }).collect();
        let cols: Vec<u32> = forms.iter().flat_map(|f| f.keys().copied()).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
        let index: BTreeMap<u32, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let m: linalg::Matrix = forms
            .iter()
            .map(|f| {
                let mut row = vec![Scalar::zero(); cols.len()];
                for (k, v) in f {
                    row[index[k]] = v.clone();
                }
                row
            })
            .collect();
        linalg::rank(&m) == paths.len()
    }

    /// Whether `p` equals a multiple of some strictly longer path (or zero).
    /// Only available on the binomial route.
    pub fn equals_longer_path(&self, p: &Path) -> Result<bool> {
        let Reducer::Binomial(c) = &self.reducer else {
            return Err(Error::InvalidArgument("only available for binomial relations".into()));
        };
        let id = self.trie.find(p);
        if id == NONE || c.normal_form(id).is_none() {
            return Ok(true);
        }
        Ok(self.trie.len_of(c.largest_member(id)) > p.len())
    }
}

/// Checks that the puncture walks `G(ℓ, α)` with `ℓ < n·m_α − 1`, together
/// with the trivial paths, are independent in a certified quotient.
pub fn g_path_independence_check(tq: &TriangulationQuiver, quotient: &TruncatedQuotient, n: usize) -> Result<bool> {
    if !quotient.is_certified() {
        return Err(Error::Uncertified(format!("no finiteness certificate at degree {}", quotient.degree)));
    }
    let q = tq.quiver();
    let mut paths: std::collections::BTreeSet<Path> = q.vertex_ids().map(Path::lazy).collect();
    for a in q.arrow_ids() {
        for l in 1..(n * tq.m(a)).saturating_sub(1) {
            paths.insert(tq.g_path(l, a));
        }
    }
    let paths: Vec<Path> = paths.into_iter().collect();
    Ok(quotient.independent(&paths))
}

/// Length-3 paths mixing an f-step and a g-step, in path order.
pub fn mixed_paths_of_length_three(tq: &TriangulationQuiver) -> Vec<Path> {
    let q = tq.quiver();
    let mut out = Vec::new();
    for x0 in q.arrow_ids() {
        for x1 in [tq.f(x0), tq.g(x0)] {
            for x2 in [tq.f(x1), tq.g(x1)] {
                let f_steps = (x1 == tq.f(x0)) as usize + (x2 == tq.f(x1)) as usize;
                if f_steps == 1 {
                    out.push(Path::new(q, &[x2, x1, x0]).expect("f and g steps compose"));
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests;
