use std::sync::Arc;

use crate::error::{Error, Result};
use crate::path_algebra::{ArrowId, ArrowSeq, Path, Quiver, VertexId};

pub(crate) const NONE: u32 = u32::MAX;

/// Every path of length at most `degree`, numbered breadth-first so that
/// shorter paths get smaller ids. Children extend a path by one arrow
/// traversed after it.
pub(crate) struct PathTrie {
    quiver: Arc<Quiver>,
    stride: usize,
    /// Position of each arrow among the outgoing arrows of its tail.
    slot: Vec<usize>,
    parent: Vec<u32>,
    last: Vec<ArrowId>,
    end: Vec<VertexId>,
    len: Vec<u16>,
    child: Vec<u32>,
    /// `level[l]..level[l+1]` are the ids of paths of length `l`.
    level: Vec<usize>,
}

impl PathTrie {
    pub fn build(quiver: &Arc<Quiver>, degree: usize, max_nodes: usize) -> Result<PathTrie> {
        let q = quiver;
        let stride = q.vertex_ids().map(|v| q.outgoing(v).len()).max().unwrap_or(0).max(1);
        let mut slot = vec![0; q.num_arrows()];
        for v in q.vertex_ids() {
            for (i, &a) in q.outgoing(v).iter().enumerate() {
                slot[a.index()] = i;
            }
        }
        let mut t = PathTrie {
            quiver: q.clone(),
            stride,
            slot,
            parent: Vec::new(),
            last: Vec::new(),
            end: Vec::new(),
            len: Vec::new(),
            child: Vec::new(),
            level: vec![0],
        };
        for v in q.vertex_ids() {
            t.push(NONE, ArrowId(u32::MAX), v, 0);
        }
        t.level.push(t.parent.len());
        for l in 0..degree {
            let (lo, hi) = (t.level[l], t.level[l + 1]);
            for id in lo..hi {
                let v = t.end[id];
                for &a in q.outgoing(v) {
                    if t.parent.len() >= max_nodes {
                        return Err(Error::InvalidArgument(format!(
                            "more than {max_nodes} paths of length at most {degree}"
                        )));
                    }
                    let c = t.push(id as u32, a, q.head(a), l + 1);
                    t.child[id * stride + t.slot[a.index()]] = c;
                }
            }
            t.level.push(t.parent.len());
        }
        Ok(t)
    }

    fn push(&mut self, parent: u32, a: ArrowId, end: VertexId, len: usize) -> u32 {
        let id = self.parent.len() as u32;
        self.parent.push(parent);
        self.last.push(a);
        self.end.push(end);
        self.len.push(len as u16);
        self.child.extend(std::iter::repeat_n(NONE, self.stride));
        id
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn num_nodes(&self) -> usize {
        self.parent.len()
    }

    pub fn degree(&self) -> usize {
        self.level.len() - 2
    }

    pub fn len_of(&self, id: u32) -> usize {
        self.len[id as usize] as usize
    }

    pub fn level(&self, l: usize) -> std::ops::Range<usize> {
        self.level[l]..self.level[l + 1]
    }

    pub fn root(&self, v: VertexId) -> u32 {
        v.0
    }

    pub fn end(&self, id: u32) -> VertexId {
        self.end[id as usize]
    }

    /// The path extended by `a`, if it is composable and not too long.
    pub fn child(&self, id: u32, a: ArrowId) -> u32 {
        if self.end[id as usize] != self.quiver.tail(a) {
            return NONE;
        }
        self.child[id as usize * self.stride + self.slot[a.index()]]
    }

    pub fn children(&self, id: u32) -> &[u32] {
        let s = id as usize * self.stride;
        &self.child[s..s + self.stride]
    }

    /// Follows `p` (in traversal order) from node `id`.
    pub fn walk(&self, mut id: u32, p: &Path) -> u32 {
        for &a in p.arrows().iter().rev() {
            if id == NONE {
                break;
            }
            id = self.child(id, a);
        }
        id
    }

    pub fn find(&self, p: &Path) -> u32 {
        self.walk(self.root(p.tail()), p)
    }

    pub fn path(&self, mut id: u32) -> Path {
        let mut arrows = ArrowSeq::new();
        while self.len[id as usize] > 0 {
            arrows.push(self.last[id as usize]);
            id = self.parent[id as usize];
        }
        Path::from_parts(self.end[id as usize], arrows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_length_major_and_round_trip() {
        let q = Arc::new(Quiver::new(["1", "2"], [("a", "1", "2"), ("b", "2", "1"), ("c", "2", "1")]).unwrap());
        let t = PathTrie::build(&q, 4, 1000).unwrap();
        for id in 0..t.num_nodes() as u32 {
            let p = t.path(id);
            assert_eq!(t.find(&p), id);
            if id > 0 {
                assert!(t.len_of(id - 1) <= t.len_of(id));
            }
        }
        assert_eq!(t.level(4).len(), 8);
        assert!(PathTrie::build(&q, 4, 10).is_err());
    }
}
