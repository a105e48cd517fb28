use std::collections::BTreeSet;

use serde::Serialize;

use super::quiver::TriangulationQuiver;
use crate::error::{Error, Result};
use crate::path_algebra::{ArrowId, Path, Quiver};

/// The three shapes a cycle can take up to rotation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CycleType {
    /// `(f²(α) f(α) α)^n`.
    F { n: usize, base: ArrowId },
    /// `(cycle around the puncture of β)^n`, starting at `β`.
    G { n: usize, base: ArrowId },
    /// A rotation `f²(a) f(a) g⁻¹f(a) λ′` of the cycle.
    FG { a: ArrowId, rotation: Path, lambda_prime: Path },
}

impl CycleType {
    pub fn kind(&self) -> CycleKind {
        match self {
            CycleType::F { .. } => CycleKind::F,
            CycleType::G { .. } => CycleKind::G,
            CycleType::FG { .. } => CycleKind::FG,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CycleKind {
    F,
    G,
    FG,
}

impl TriangulationQuiver {
    /// Determines the shape of a cycle; requires both structural conditions.
    pub fn classify_cycle(&self, c: &Path) -> Result<CycleType> {
        self.conditions().require()?;
        self.classify_unchecked(c)
    }

    pub(crate) fn classify_unchecked(&self, c: &Path) -> Result<CycleType> {
        let q = self.quiver();
        let c = c.canonical_rotation(q)?;
        let w = c.arrows();
        let len = w.len();
        // step[i] is true when w[i] = f(w[i+1]), the arrow traversed just before it.
        let mut step = Vec::with_capacity(len);
        for i in 0..len {
            let prev = w[(i + 1) % len];
            if w[i] == self.f(prev) {
                step.push(true);
            } else if w[i] == self.g(prev) {
                step.push(false);
            } else {
                return Err(Error::Invariant(format!("{} follows {} by neither f nor g", q.name(w[i]), q.name(prev))));
            }
        }
        let base = w[len - 1];
        if step.iter().all(|&s| s) {
            return Ok(CycleType::F { n: len / 3, base });
        }
        if step.iter().all(|&s| !s) {
            return Ok(CycleType::G { n: len / self.m(base), base });
        }
        let r = (0..len).find(|&i| step[i] && !step[(i + 1) % len]).expect("mixed steps contain an f followed by a g");
        let rotation = c.rotate(q, r);
        let u = rotation.arrows();
        let a = self.f_inv(u[1]);
        let lambda_prime = rotation.slice(q, 3.min(len)..len);
        Ok(CycleType::FG { a, rotation, lambda_prime })
    }
}

/// Rotation-canonical cycles of length `1..=max_len`, in path order.
pub fn cycles_up_to(q: &Quiver, max_len: usize) -> Vec<Path> {
    let mut found = BTreeSet::new();
    let mut stack = Vec::new();
    for v in q.vertex_ids() {
        stack.clear();
        walk(q, v, v, max_len, &mut stack, &mut found);
    }
    found.into_iter().collect()
}

fn walk(
    q: &Quiver,
    start: crate::path_algebra::VertexId,
    at: crate::path_algebra::VertexId,
    max_len: usize,
    stack: &mut Vec<ArrowId>,
    found: &mut BTreeSet<Path>,
) {
    if !stack.is_empty() && at == start {
        let written: Vec<ArrowId> = stack.iter().rev().copied().collect();
        let p = Path::new(q, &written).expect("walk is composable");
        if p.is_canonical() {
            found.insert(p);
        }
    }
    if stack.len() == max_len {
        return;
    }
    for &a in q.outgoing(at) {
        stack.push(a);
        walk(q, start, q.head(a), max_len, stack, found);
        stack.pop();
    }
}
