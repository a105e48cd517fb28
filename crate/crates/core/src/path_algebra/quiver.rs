use std::fmt;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl ArrowId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub tail: VertexId,
    pub head: VertexId,
}

/// A finite quiver. Arrow ids follow declaration order, which also fixes the
/// lexicographic order used for rotation-canonical cycles.
#[derive(Clone)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: FxHashMap<String, VertexId>,
    arrow_index: FxHashMap<String, ArrowId>,
    outgoing: Vec<Vec<ArrowId>>,
    incoming: Vec<Vec<ArrowId>>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

impl fmt::Debug for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrows: Vec<String> = self
            .arrows
            .iter()
            .map(|a| format!("{}: {} -> {}", a.name, self.vertices[a.tail.index()], self.vertices[a.head.index()]))
            .collect();
        f.debug_struct("Quiver").field("vertices", &self.vertices).field("arrows", &arrows).finish()
    }
}

impl Quiver {
    /// Builds a quiver from vertex labels and `(name, tail label, head label)` triples.
    pub fn new<V, A, S1, S2, S3>(vertices: V, arrows: A) -> Result<Quiver>
    where
        V: IntoIterator<Item = S1>,
        A: IntoIterator<Item = (S2, S3, S3)>,
        S1: Into<String>,
        S2: Into<String>,
        S3: AsRef<str>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vertex_index = FxHashMap::default();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), VertexId(i as u32)).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate vertex `{v}`")));
            }
        }
        let mut list = Vec::new();
        let mut arrow_index = FxHashMap::default();
        for (name, tail, head) in arrows {
            let name: String = name.into();
            let lookup = |label: &str| {
                vertex_index
                    .get(label)
                    .copied()
                    .ok_or_else(|| Error::InvalidQuiver(format!("arrow `{name}` uses unknown vertex `{label}`")))
            };
            let tail = lookup(tail.as_ref())?;
            let head = lookup(head.as_ref())?;
            if arrow_index.insert(name.clone(), ArrowId(list.len() as u32)).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate arrow `{name}`")));
            }
            list.push(Arrow { name, tail, head });
        }
        Ok(Self::assemble(vertices, list, vertex_index, arrow_index))
    }

    fn assemble(
        vertices: Vec<String>,
        arrows: Vec<Arrow>,
        vertex_index: FxHashMap<String, VertexId>,
        arrow_index: FxHashMap<String, ArrowId>,
    ) -> Quiver {
        let mut outgoing = vec![Vec::new(); vertices.len()];
        let mut incoming = vec![Vec::new(); vertices.len()];
        for (i, a) in arrows.iter().enumerate() {
            outgoing[a.tail.index()].push(ArrowId(i as u32));
            incoming[a.head.index()].push(ArrowId(i as u32));
        }
        Quiver { vertices, arrows, vertex_index, arrow_index, outgoing, incoming }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> {
        (0..self.arrows.len() as u32).map(ArrowId)
    }

    pub fn vertex_label(&self, v: VertexId) -> &str {
        &self.vertices[v.index()]
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.index()]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn name(&self, a: ArrowId) -> &str {
        &self.arrows[a.index()].name
    }

    pub fn tail(&self, a: ArrowId) -> VertexId {
        self.arrows[a.index()].tail
    }

    pub fn head(&self, a: ArrowId) -> VertexId {
        self.arrows[a.index()].head
    }

    pub fn vertex(&self, label: &str) -> Result<VertexId> {
        self.vertex_index.get(label).copied().ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn arrow_by_name(&self, name: &str) -> Result<ArrowId> {
        self.arrow_index.get(name).copied().ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    pub fn outgoing(&self, v: VertexId) -> &[ArrowId] {
        &self.outgoing[v.index()]
    }

    pub fn incoming(&self, v: VertexId) -> &[ArrowId] {
        &self.incoming[v.index()]
    }

    /// Arrows from `from` to `to`, in declaration order.
    pub fn arrows_between(&self, from: VertexId, to: VertexId) -> Vec<ArrowId> {
        self.outgoing[from.index()].iter().copied().filter(|&a| self.head(a) == to).collect()
    }

    pub fn has_loops(&self) -> bool {
        self.arrows.iter().any(|a| a.tail == a.head)
    }

    /// True iff there is no loop and no pair of opposite arrows.
    pub fn is_two_acyclic(&self) -> bool {
        !self.has_loops()
            && self
                .arrows
                .iter()
                .all(|a| self.outgoing[a.head.index()].iter().all(|&b| self.head(b) != a.tail))
    }

    /// Largest number of parallel arrows `j -> i` for any ordered pair of distinct vertices.
    pub fn max_parallel_arrows(&self) -> usize {
        let n = self.vertices.len();
        let mut counts = vec![0usize; n * n];
        for a in &self.arrows {
            if a.tail != a.head {
                counts[a.tail.index() * n + a.head.index()] += 1;
            }
        }
        counts.into_iter().max().unwrap_or(0)
    }
}
