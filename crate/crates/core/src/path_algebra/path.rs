use std::cmp::Ordering;

use smallvec::SmallVec;

use super::quiver::{ArrowId, Quiver, VertexId};
use crate::error::{Error, Result};

pub type ArrowSeq = SmallVec<[ArrowId; 14]>;

/// A path written `a_l ... a_1`: `arrows[0]` is traversed last and the final
/// entry first. A lazy path has no arrows and sits at `tail`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    tail: VertexId,
    arrows: ArrowSeq,
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.tail.cmp(&other.tail))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Path {
    pub fn lazy(v: VertexId) -> Path {
        Path { tail: v, arrows: ArrowSeq::new() }
    }

    pub fn arrow(q: &Quiver, a: ArrowId) -> Path {
        Path { tail: q.tail(a), arrows: smallvec::smallvec![a] }
    }

    /// Builds a path from arrows in written order, checking composability.
    pub fn new(q: &Quiver, arrows: &[ArrowId]) -> Result<Path> {
        let Some(&first) = arrows.last() else {
            return Err(Error::NotComposable("empty arrow list; use a lazy path".into()));
        };
        for w in arrows.windows(2) {
            if q.tail(w[0]) != q.head(w[1]) {
                return Err(Error::NotComposable(format!("{} after {}", q.name(w[0]), q.name(w[1]))));
            }
        }
        Ok(Path { tail: q.tail(first), arrows: arrows.iter().copied().collect() })
    }

    pub fn from_names(q: &Quiver, names: &[&str]) -> Result<Path> {
        let ids = names.iter().map(|n| q.arrow_by_name(n)).collect::<Result<Vec<_>>>()?;
        Path::new(q, &ids)
    }

    /// Caller guarantees composability and that `tail` matches the first traversed arrow.
    pub(crate) fn from_parts(tail: VertexId, arrows: ArrowSeq) -> Path {
        Path { tail, arrows }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_lazy(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn tail(&self) -> VertexId {
        self.tail
    }

    pub fn head(&self, q: &Quiver) -> VertexId {
        match self.arrows.first() {
            Some(&a) => q.head(a),
            None => self.tail,
        }
    }

    pub fn is_cycle(&self, q: &Quiver) -> bool {
        !self.arrows.is_empty() && self.head(q) == self.tail
    }

    /// `self · other`: `other` is traversed first.
    pub fn concat(&self, other: &Path, q: &Quiver) -> Option<Path> {
        if self.tail != other.head(q) {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { tail: other.tail, arrows })
    }

    pub fn contains(&self, a: ArrowId) -> bool {
        self.arrows.contains(&a)
    }

    /// Rotation of a cycle starting (in written order) at position `r`.
    pub fn rotate(&self, q: &Quiver, r: usize) -> Path {
        let n = self.arrows.len();
        let mut arrows = ArrowSeq::with_capacity(n);
        arrows.extend_from_slice(&self.arrows[r..]);
        arrows.extend_from_slice(&self.arrows[..r]);
        Path { tail: q.tail(arrows[n - 1]), arrows }
    }

    /// Sub-path of written positions `range`; must be non-empty.
    pub fn slice(&self, q: &Quiver, range: std::ops::Range<usize>) -> Path {
        if range.is_empty() {
            let v = if range.start == 0 { self.head(q) } else { q.tail(self.arrows[range.start - 1]) };
            return Path::lazy(v);
        }
        let arrows: ArrowSeq = self.arrows[range].iter().copied().collect();
        Path { tail: q.tail(*arrows.last().unwrap()), arrows }
    }

    /// The lexicographically least rotation of a cycle.
    pub fn canonical_rotation(&self, q: &Quiver) -> Result<Path> {
        if !self.is_cycle(q) {
            return Err(Error::NotACycle(self.display(q)));
        }
        let r = least_rotation(&self.arrows);
        if r == 0 {
            Ok(self.clone())
        } else {
            Ok(self.rotate(q, r))
        }
    }

    pub fn is_canonical(&self) -> bool {
        least_rotation(&self.arrows) == 0
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e_{}", q.vertex_label(self.tail));
        }
        self.arrows.iter().map(|&a| q.name(a)).collect::<Vec<_>>().join(" ")
    }

    pub fn names(&self, q: &Quiver) -> Vec<String> {
        self.arrows.iter().map(|&a| q.name(a).to_string()).collect()
    }
}

/// Start index of the least rotation (two-pointer minimum expression).
pub fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    if n < 2 {
        return 0;
    }
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = &s[(i + k) % n];
        let b = &s[(j + k) % n];
        match a.cmp(b) {
            Ordering::Equal => {
                k += 1;
                continue;
            }
            Ordering::Greater => i += k + 1,
            Ordering::Less => j += k + 1,
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}
