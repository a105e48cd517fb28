use std::sync::Arc;

use serde::Serialize;

use super::triangulation::{Side, Triangulation};
use crate::error::{Error, Result};
use crate::path_algebra::{ArrowId, ArrowSeq, Path, Quiver, VertexId};

#[derive(Clone, Debug)]
pub struct Puncture {
    /// Number of arc ends at the puncture, which is also the size of its g-orbit.
    pub valency: usize,
    /// Least arrow id in the g-orbit.
    pub base: ArrowId,
    pub orbit: Vec<ArrowId>,
}

/// The two conditions under which every cycle has one of the three shapes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conditions {
    pub min_valency: usize,
    pub max_parallel_arrows: usize,
    /// Every puncture has valency at least 4.
    pub valency_at_least_four: bool,
    /// At most one arrow between any ordered pair of vertices.
    pub at_most_one_arrow: bool,
}

impl Conditions {
    pub fn hold(&self) -> bool {
        self.valency_at_least_four && self.at_most_one_arrow
    }

    pub fn require(&self) -> Result<()> {
        let mut failures = Vec::new();
        if !self.valency_at_least_four {
            failures.push(format!("a puncture has valency {} < 4", self.min_valency));
        }
        if !self.at_most_one_arrow {
            failures.push(format!("{} parallel arrows between two vertices", self.max_parallel_arrows));
        }
        if failures.is_empty() {
            Ok(())
        } else {
            Err(Error::ConditionsViolated(failures.join("; ")))
        }
    }
}

/// The quiver of a triangulation together with the permutations `f`
/// (next arrow in the same triangle) and `g` (the other arrow leaving the
/// head vertex).
#[derive(Clone, Debug)]
pub struct TriangulationQuiver {
    triangulation: Triangulation,
    quiver: Arc<Quiver>,
    f: Vec<ArrowId>,
    f_inv: Vec<ArrowId>,
    g: Vec<ArrowId>,
    g_inv: Vec<ArrowId>,
    corner_arrow: Vec<[ArrowId; 3]>,
    arrow_corner: Vec<Side>,
    arrow_puncture: Vec<usize>,
    punctures: Vec<Puncture>,
    conditions: Conditions,
}

/// Orders names like `a2 < a10 < b1`.
fn natural_key(name: &str) -> (String, u64, String) {
    let digits = name.len() - name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (stem, num) = name.split_at(name.len() - digits);
    (stem.to_string(), num.parse().unwrap_or(0), name.to_string())
}

impl TriangulationQuiver {
    pub fn new(t: &Triangulation) -> Result<TriangulationQuiver> {
        let nt = t.triangles().len();
        let mut corners: Vec<(String, Side)> = Vec::with_capacity(3 * nt);
        for tri in 0..nt {
            for i in 0..3 {
                let name = match t.arrow_names() {
                    Some(names) => names[tri][i].clone(),
                    None => format!("{}{}", ['a', 'c', 'b'][i], tri + 1),
                };
                corners.push((name, (tri, i)));
            }
        }
        corners.sort_by_cached_key(|(n, _)| natural_key(n));

        let vertices: Vec<String> = t.arcs().iter().map(u32::to_string).collect();
        let arrows = corners.iter().map(|(name, (tri, i))| {
            let s = t.triangles()[*tri];
            (name.clone(), s[(i + 1) % 3].to_string(), s[*i].to_string())
        });
        let quiver = Arc::new(Quiver::new(vertices, arrows)?);

        let mut corner_arrow = vec![[ArrowId(0); 3]; nt];
        let mut arrow_corner = Vec::with_capacity(corners.len());
        for (k, (_, (tri, i))) in corners.iter().enumerate() {
            corner_arrow[*tri][*i] = ArrowId(k as u32);
            arrow_corner.push((*tri, *i));
        }
        let n = corners.len();
        let mut f = vec![ArrowId(0); n];
        let mut g = vec![ArrowId(0); n];
        for (k, &(tri, i)) in arrow_corner.iter().enumerate() {
            f[k] = corner_arrow[tri][(i + 2) % 3];
            let (u, j) = t.next_corner((tri, i));
            g[k] = corner_arrow[u][j];
        }
        let invert = |p: &[ArrowId]| {
            let mut inv = vec![ArrowId(0); p.len()];
            for (k, a) in p.iter().enumerate() {
                inv[a.index()] = ArrowId(k as u32);
            }
            inv
        };
        let (f_inv, g_inv) = (invert(&f), invert(&g));

        let mut punctures: Vec<Puncture> = t
            .punctures()
            .iter()
            .map(|orbit| {
                let arrows: Vec<ArrowId> = orbit.iter().map(|&(u, j)| corner_arrow[u][j]).collect();
                Puncture { valency: arrows.len(), base: *arrows.iter().min().unwrap(), orbit: arrows }
            })
            .collect();
        punctures.sort_by_key(|p| (std::cmp::Reverse(p.valency), p.base));
        let mut arrow_puncture = vec![0; n];
        for (pi, p) in punctures.iter().enumerate() {
            for a in &p.orbit {
                arrow_puncture[a.index()] = pi;
            }
        }
        let min_valency = punctures.iter().map(|p| p.valency).min().unwrap_or(0);
        let max_parallel_arrows = quiver.max_parallel_arrows();
        let conditions = Conditions {
            min_valency,
            max_parallel_arrows,
            valency_at_least_four: min_valency >= 4,
            at_most_one_arrow: max_parallel_arrows <= 1,
        };
        let tq = TriangulationQuiver {
            triangulation: t.clone(),
            quiver,
            f,
            f_inv,
            g,
            g_inv,
            corner_arrow,
            arrow_corner,
            arrow_puncture,
            punctures,
            conditions,
        };
        tq.check_invariants()?;
        Ok(tq)
    }

    /// Structural identities every triangulation quiver satisfies.
    pub fn check_invariants(&self) -> Result<()> {
        let q = &*self.quiver;
        let fail = |m: String| Err(Error::Invariant(m));
        for a in q.arrow_ids() {
            let (f, g) = (self.f(a), self.g(a));
            if self.f(self.f(f)) != a || f == a {
                return fail(format!("f-orbit of {} does not have size 3", q.name(a)));
            }
            if q.tail(f) != q.head(a) || q.tail(g) != q.head(a) {
                return fail(format!("f or g of {} does not start at its head", q.name(a)));
            }
            if f == g {
                return fail(format!("f and g agree on {}", q.name(a)));
            }
            if self.f_inv(f) != a || self.g_inv(g) != a {
                return fail("inverse tables are inconsistent".into());
            }
            if q.outgoing(q.head(a)).len() != 2 {
                return fail(format!("vertex {} does not have two outgoing arrows", q.vertex_label(q.head(a))));
            }
            if self.arrow_puncture[g.index()] != self.arrow_puncture[a.index()] {
                return fail("g leaves a puncture orbit".into());
            }
        }
        let total: usize = self.punctures.iter().map(|p| p.valency).sum();
        if total != q.num_arrows() || q.num_arrows() != 3 * self.triangulation.triangles().len() {
            return fail("arrow counts do not match valencies and triangles".into());
        }
        if q.num_arrows() != 2 * q.num_vertices() {
            return fail("arrow count is not twice the arc count".into());
        }
        for p in &self.punctures {
            if self.g_path(p.valency, p.base).head(q) != q.tail(p.base) {
                return fail("a g-orbit does not close up".into());
            }
        }
        Ok(())
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.triangulation
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn f(&self, a: ArrowId) -> ArrowId {
        self.f[a.index()]
    }

    pub fn f_inv(&self, a: ArrowId) -> ArrowId {
        self.f_inv[a.index()]
    }

    pub fn g(&self, a: ArrowId) -> ArrowId {
        self.g[a.index()]
    }

    pub fn g_inv(&self, a: ArrowId) -> ArrowId {
        self.g_inv[a.index()]
    }

    pub fn g_pow(&self, mut a: ArrowId, k: isize) -> ArrowId {
        for _ in 0..k.unsigned_abs() {
            a = if k > 0 { self.g(a) } else { self.g_inv(a) };
        }
        a
    }

    /// Arrow at corner `i` of triangle `t`, running from side `i+1` to side `i`.
    pub fn corner_arrow(&self, t: usize, i: usize) -> ArrowId {
        self.corner_arrow[t][i]
    }

    pub fn arrow_corner(&self, a: ArrowId) -> Side {
        self.arrow_corner[a.index()]
    }

    pub fn triangle_of(&self, a: ArrowId) -> usize {
        self.arrow_corner[a.index()].0
    }

    pub fn num_triangles(&self) -> usize {
        self.corner_arrow.len()
    }

    /// Least arrow id among the three arrows of triangle `t`.
    pub fn triangle_base(&self, t: usize) -> ArrowId {
        *self.corner_arrow[t].iter().min().unwrap()
    }

    pub fn punctures(&self) -> &[Puncture] {
        &self.punctures
    }

    pub fn puncture_of(&self, a: ArrowId) -> usize {
        self.arrow_puncture[a.index()]
    }

    /// Size of the g-orbit of `a`.
    pub fn m(&self, a: ArrowId) -> usize {
        self.punctures[self.arrow_puncture[a.index()]].valency
    }

    pub fn conditions(&self) -> &Conditions {
        &self.conditions
    }

    /// `g^{r-1}(β) ⋯ g(β) β`; the lazy path at the tail of `β` for `r = 0`.
    pub fn g_path(&self, r: usize, beta: ArrowId) -> Path {
        self.orbit_path(r, beta, &self.g)
    }

    /// `f^{r-1}(β) ⋯ f(β) β`.
    pub fn f_path(&self, r: usize, beta: ArrowId) -> Path {
        self.orbit_path(r, beta, &self.f)
    }

    fn orbit_path(&self, r: usize, beta: ArrowId, perm: &[ArrowId]) -> Path {
        if r == 0 {
            return Path::lazy(self.quiver.tail(beta));
        }
        let mut arrows = ArrowSeq::with_capacity(r);
        let mut a = beta;
        for _ in 0..r {
            arrows.push(a);
            a = perm[a.index()];
        }
        arrows.reverse();
        Path::from_parts(self.quiver.tail(beta), arrows)
    }

    /// The full cycle around the puncture of `a`, starting at `a`.
    pub fn g_cycle_at(&self, a: ArrowId) -> Path {
        self.g_path(self.m(a), a)
    }

    /// The full cycle around puncture number `p`.
    pub fn puncture_cycle(&self, p: usize) -> Path {
        let base = self.punctures[p].base;
        self.g_path(self.punctures[p].valency, base)
    }

    pub fn triangle_cycle(&self, t: usize) -> Path {
        self.f_path(3, self.triangle_base(t))
    }

    pub fn vertex_of_arc(&self, arc: u32) -> Result<VertexId> {
        self.quiver.vertex(&arc.to_string())
    }

    pub fn arc_of_vertex(&self, v: VertexId) -> u32 {
        self.quiver.vertex_label(v).parse().expect("vertices are arc ids")
    }
}
