use std::sync::Arc;

use rustc_hash::FxHashMap;

use super::Qp;
use crate::error::{Error, Result};
use crate::path_algebra::{ArrowId, ArrowSeq, Element, Path, Potential, Quiver, VertexId};
use crate::scalar::Scalar;

/// The premutated QP together with the arrow correspondence.
#[derive(Clone, Debug)]
pub struct Premutation {
    pub qp: Qp,
    pub vertex: VertexId,
    /// Old arrow → new arrow, for arrows not touching the vertex.
    pub kept: Vec<Option<ArrowId>>,
    /// Old arrow touching the vertex → its reversal.
    pub reversed: Vec<Option<ArrowId>>,
    /// `(b, a)` with `b·a` a path through the vertex → the composite `[ba]`.
    pub composite: FxHashMap<(ArrowId, ArrowId), ArrowId>,
    old: Arc<Quiver>,
}

/// `x` ↔ `x*`.
pub fn reversed_name(name: &str) -> String {
    match name.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{name}*"),
    }
}

pub fn composite_name(b: &str, a: &str) -> String {
    format!("[{b}{a}]")
}

pub fn premutate(qp: &Qp, k: VertexId) -> Result<Premutation> {
    let q = qp.quiver();
    let label = q.vertex_label(k).to_string();
    let refuse = |reason: &str| Err(Error::Mutation { vertex: label.clone(), reason: reason.into() });
    let incoming: Vec<ArrowId> = q.incoming(k).to_vec();
    let outgoing: Vec<ArrowId> = q.outgoing(k).to_vec();
    if incoming.iter().any(|&a| q.tail(a) == k) {
        return refuse("loop at the vertex");
    }
    if incoming.iter().any(|&a| outgoing.iter().any(|&b| q.head(b) == q.tail(a))) {
        return refuse("2-cycle through the vertex");
    }

    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let lbl = |v: VertexId| q.vertex_label(v).to_string();
    let mut kept = vec![None; q.num_arrows()];
    let mut reversed = vec![None; q.num_arrows()];
    for a in q.arrow_ids() {
        if q.tail(a) != k && q.head(a) != k {
            kept[a.index()] = Some(ArrowId(arrows.len() as u32));
            arrows.push((q.name(a).to_string(), lbl(q.tail(a)), lbl(q.head(a))));
        }
    }
    for a in q.arrow_ids() {
        if q.tail(a) == k || q.head(a) == k {
            reversed[a.index()] = Some(ArrowId(arrows.len() as u32));
            arrows.push((reversed_name(q.name(a)), lbl(q.head(a)), lbl(q.tail(a))));
        }
    }
    let mut composite = FxHashMap::default();
    for &b in &outgoing {
        for &a in &incoming {
            composite.insert((b, a), ArrowId(arrows.len() as u32));
            arrows.push((composite_name(q.name(b), q.name(a)), lbl(q.tail(a)), lbl(q.head(b))));
        }
    }
    let new_q = Arc::new(Quiver::new(q.vertex_labels().iter().cloned(), arrows)?);
    let mut pre = Premutation {
        qp: Qp::new(Potential::zero(&new_q, qp.degree())),
        vertex: k,
        kept,
        reversed,
        composite,
        old: q.clone(),
    };

    let mut s = Element::zero(&new_q, qp.degree());
    for (c, x) in qp.potential.terms() {
        s.add_term(pre.translate_cycle(c)?, x.clone());
    }
    for &a in &incoming {
        for &b in &outgoing {
            let ids = [pre.reversed[a.index()].unwrap(), pre.reversed[b.index()].unwrap(), pre.composite[&(b, a)]];
            s.add_term(Path::new(&new_q, &ids)?, Scalar::from_integer(1.into()));
        }
    }
    pre.qp = Qp::new(Potential::from_element(&s)?);
    Ok(pre)
}

impl Premutation {
    pub fn old_quiver(&self) -> &Arc<Quiver> {
        &self.old
    }

    /// Rewrites an old path that neither starts nor ends at the vertex,
    /// replacing each `b·a` through it by `[ba]`.
    pub fn translate_path(&self, p: &Path) -> Result<Path> {
        let q = &self.old;
        let k = self.vertex;
        if p.is_lazy() {
            return Ok(p.clone());
        }
        let w = p.arrows();
        if q.head(w[0]) == k || q.tail(w[w.len() - 1]) == k {
            return Err(Error::InvalidArgument(format!("path {} starts or ends at the mutated vertex", p.display(q))));
        }
        let mut out = ArrowSeq::new();
        let mut i = 0;
        while i < w.len() {
            if q.tail(w[i]) == k {
                out.push(self.composite[&(w[i], w[i + 1])]);
                i += 2;
            } else {
                out.push(self.kept[w[i].index()].expect("arrow avoids the vertex"));
                i += 1;
            }
        }
        Path::new(self.qp.quiver(), &out)
    }

    /// Rotates a cycle away from the vertex, then translates it.
    pub fn translate_cycle(&self, c: &Path) -> Result<Path> {
        let q = &self.old;
        let w = c.arrows();
        let Some(r) = (0..w.len()).find(|&r| q.head(w[r]) != self.vertex) else {
            return Err(Error::Mutation {
                vertex: q.vertex_label(self.vertex).to_string(),
                reason: "a potential term is a loop at the vertex".into(),
            });
        };
        self.translate_path(&c.rotate(q, r))
    }
}
