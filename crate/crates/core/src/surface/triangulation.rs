use std::collections::VecDeque;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A side of a triangle: `(triangle index, position 0..3)`.
pub type Side = (usize, usize);

/// Oriented triangles glued along arcs into a closed surface. Each triple
/// lists its sides counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTriangulation", into = "RawTriangulation")]
pub struct Triangulation {
    arcs: Vec<u32>,
    triangles: Vec<[u32; 3]>,
    arrow_names: Option<Vec<[String; 3]>>,
    sides: FxHashMap<u32, [Side; 2]>,
    punctures: Vec<Vec<Side>>,
    genus: usize,
}

#[derive(Serialize, Deserialize)]
struct RawTriangulation {
    arcs: Vec<u32>,
    triangles: Vec<[u32; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    arrow_names: Option<Vec<[String; 3]>>,
}

impl TryFrom<RawTriangulation> for Triangulation {
    type Error = Error;
    fn try_from(r: RawTriangulation) -> Result<Self> {
        Triangulation::with_names(r.arcs, r.triangles, r.arrow_names)
    }
}

impl From<Triangulation> for RawTriangulation {
    fn from(t: Triangulation) -> Self {
        RawTriangulation { arcs: t.arcs, triangles: t.triangles, arrow_names: t.arrow_names }
    }
}

impl Triangulation {
    pub fn new(arcs: Vec<u32>, triangles: Vec<[u32; 3]>) -> Result<Triangulation> {
        Self::with_names(arcs, triangles, None)
    }

    /// `arrow_names[t][i]` names the arrow from side `i+1` to side `i` of triangle `t`.
    pub fn with_names(arcs: Vec<u32>, triangles: Vec<[u32; 3]>, arrow_names: Option<Vec<[String; 3]>>) -> Result<Triangulation> {
        let bad = |m: String| Err(Error::InvalidTriangulation(m));
        if triangles.is_empty() {
            return bad("no triangles".into());
        }
        let mut occurrences: FxHashMap<u32, Vec<Side>> = arcs.iter().map(|&a| (a, Vec::new())).collect();
        if occurrences.len() != arcs.len() {
            return bad("duplicate arc id".into());
        }
        for (t, tri) in triangles.iter().enumerate() {
            if tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2] {
                return bad(format!("triangle {} {:?} repeats an arc (self-folded triangles are not supported)", t + 1, tri));
            }
            for (i, arc) in tri.iter().enumerate() {
                match occurrences.get_mut(arc) {
                    Some(v) => v.push((t, i)),
                    None => return bad(format!("triangle {} uses undeclared arc {arc}", t + 1)),
                }
            }
        }
        let mut sides = FxHashMap::default();
        for &a in &arcs {
            let occ = &occurrences[&a];
            if occ.len() != 2 {
                return bad(format!("arc {a} is a side of {} triangles, expected 2", occ.len()));
            }
            sides.insert(a, [occ[0], occ[1]]);
        }
        if let Some(names) = &arrow_names {
            if names.len() != triangles.len() {
                return bad("arrow_names must have one entry per triangle".into());
            }
            let mut seen = std::collections::HashSet::new();
            for n in names.iter().flatten() {
                if !seen.insert(n.as_str()) {
                    return bad(format!("duplicate arrow name `{n}`"));
                }
            }
        }
        let mut t = Triangulation { arcs, triangles, arrow_names, sides, punctures: Vec::new(), genus: 0 };
        if !t.is_connected() {
            return bad("the gluing is not connected".into());
        }
        t.punctures = t.corner_orbits();
        let (v, e, f) = (t.punctures.len() as i64, t.arcs.len() as i64, t.triangles.len() as i64);
        let twice_genus = 2 - (v - e + f);
        if twice_genus < 2 || twice_genus % 2 != 0 {
            return bad(format!("Euler characteristic {} does not give a surface of positive genus", v - e + f));
        }
        t.genus = (twice_genus / 2) as usize;
        Ok(t)
    }

    /// The two-triangle triangulation of the once-punctured torus.
    pub fn once_punctured_torus() -> Triangulation {
        Triangulation::new(vec![1, 2, 3], vec![[1, 2, 3], [1, 2, 3]]).expect("valid torus")
    }

    /// The triangulation of a twice-punctured closed surface of genus `g`:
    /// a `4g`-gon with identified sides, one puncture at the (single) polygon
    /// vertex class and one in the interior, joined to all polygon vertices
    /// by spokes. Arrows are named `a_j`, `b_j`, `c_j` after the triangle `j`.
    pub fn twice_punctured_genus(g: usize) -> Result<Triangulation> {
        if g == 0 {
            return Err(Error::InvalidArgument("positive genus required".into()));
        }
        let n = 4 * g;
        let spoke = |i: usize| -> u32 {
            let i = i % n;
            if i == 0 {
                (6 * g) as u32
            } else {
                (2 * g + i) as u32
            }
        };
        let side = |j: usize| -> u32 {
            let (i, r) = (j / 4, j % 4);
            (2 * i + if r % 2 == 0 { 1 } else { 2 }) as u32
        };
        let mut triangles = Vec::with_capacity(n);
        let mut names = Vec::with_capacity(n);
        for j in 1..=n {
            triangles.push([spoke(j), side(j - 1), spoke(j - 1)]);
            names.push([format!("b{j}"), format!("c{j}"), format!("a{j}")]);
        }
        let arcs = (1..=(6 * g) as u32).collect();
        Triangulation::with_names(arcs, triangles, Some(names))
    }

    pub fn arcs(&self) -> &[u32] {
        &self.arcs
    }

    pub fn triangles(&self) -> &[[u32; 3]] {
        &self.triangles
    }

    pub fn arrow_names(&self) -> Option<&[[String; 3]]> {
        self.arrow_names.as_deref()
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Corner `(t, i)` sits between sides `i` and `i+1` of triangle `t`.
    /// Each puncture is listed as the orbit of its corners.
    pub fn punctures(&self) -> &[Vec<Side>] {
        &self.punctures
    }

    pub fn sides_of(&self, arc: u32) -> Option<[Side; 2]> {
        self.sides.get(&arc).copied()
    }

    /// The other triangle side carrying the same arc.
    pub fn glued(&self, (t, i): Side) -> Side {
        let [x, y] = self.sides[&self.triangles[t][i]];
        if x == (t, i) {
            y
        } else {
            x
        }
    }

    /// Next corner around the same puncture.
    pub fn next_corner(&self, c: Side) -> Side {
        let (u, j) = self.glued(c);
        (u, (j + 2) % 3)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.triangles.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(t) = queue.pop_front() {
            for i in 0..3 {
                let (u, _) = self.glued((t, i));
                if !std::mem::replace(&mut seen[u], true) {
                    queue.push_back(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn corner_orbits(&self) -> Vec<Vec<Side>> {
        let mut seen = vec![[false; 3]; self.triangles.len()];
        let mut orbits = Vec::new();
        for t in 0..self.triangles.len() {
            for i in 0..3 {
                if seen[t][i] {
                    continue;
                }
                let mut orbit = Vec::new();
                let mut c = (t, i);
                while !seen[c.0][c.1] {
                    seen[c.0][c.1] = true;
                    orbit.push(c);
                    c = self.next_corner(c);
                }
                orbits.push(orbit);
            }
        }
        orbits
    }

    /// Replaces arc `k` by the other diagonal of the quadrilateral formed by
    /// its two triangles. The new diagonal keeps the id `k`; custom arrow
    /// names are dropped.
    pub fn flip(&self, k: u32) -> Result<Triangulation> {
        let [(t1, i1), (t2, i2)] =
            self.sides_of(k).ok_or_else(|| Error::InvalidArgument(format!("arc {k} is not in the triangulation")))?;
        let impossible = |reason: String| Err(Error::FlipImpossible { arc: k, reason });
        if t1 == t2 {
            return impossible("both sides lie in one triangle".into());
        }
        let rot = |t: usize, i: usize| {
            let s = self.triangles[t];
            (s[(i + 1) % 3], s[(i + 2) % 3])
        };
        let (x1, y1) = rot(t1, i1);
        let (x2, y2) = rot(t2, i2);
        let mut triangles = self.triangles.clone();
        triangles[t1] = [k, y1, x2];
        triangles[t2] = [k, y2, x1];
        for t in [t1, t2] {
            let s = triangles[t];
            if s[0] == s[1] || s[1] == s[2] || s[0] == s[2] {
                return impossible(format!("the new triangle {:?} would be self-folded", s));
            }
        }
        Triangulation::new(self.arcs.clone(), triangles).map_err(|e| Error::FlipImpossible { arc: k, reason: e.to_string() })
    }

    /// An orientation-preserving relabeling of arcs carrying `self` onto
    /// `other`, as `(arc of self, arc of other)` pairs, if one exists.
    pub fn isomorphism(&self, other: &Triangulation) -> Option<Vec<(u32, u32)>> {
        if self.triangles.len() != other.triangles.len() || self.arcs.len() != other.arcs.len() {
            return None;
        }
        for target in 0..other.triangles.len() {
            for r in 0..3 {
                if let Some(m) = self.extend_isomorphism(other, target, r) {
                    let mut pairs: Vec<(u32, u32)> = m.into_iter().collect();
                    pairs.sort_unstable();
                    return Some(pairs);
                }
            }
        }
        None
    }

    fn extend_isomorphism(&self, other: &Triangulation, target: usize, r: usize) -> Option<FxHashMap<u32, u32>> {
        let n = self.triangles.len();
        let mut tmap: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut used = vec![false; n];
        let mut arc_map: FxHashMap<u32, u32> = FxHashMap::default();
        let mut arc_used: FxHashMap<u32, u32> = FxHashMap::default();
        tmap[0] = Some((target, r));
        used[target] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(t) = queue.pop_front() {
            let (u, rot) = tmap[t].unwrap();
            for i in 0..3 {
                let a = self.triangles[t][i];
                let b = other.triangles[u][(i + rot) % 3];
                if *arc_map.entry(a).or_insert(b) != b || *arc_used.entry(b).or_insert(a) != a {
                    return None;
                }
                let (t2, j) = self.glued((t, i));
                let (u2, j2) = other.glued((u, (i + rot) % 3));
                let want = (u2, (j2 + 3 - j) % 3);
                match tmap[t2] {
                    Some(m) if m != want => return None,
                    Some(_) => {}
                    None => {
                        if std::mem::replace(&mut used[u2], true) {
                            return None;
                        }
                        tmap[t2] = Some(want);
                        queue.push_back(t2);
                    }
                }
            }
        }
        Some(arc_map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_has_one_puncture_of_valency_six() {
        let t = Triangulation::once_punctured_torus();
        assert_eq!(t.genus(), 1);
        assert_eq!(t.punctures().len(), 1);
        assert_eq!(t.punctures()[0].len(), 6);
    }

    #[test]
    fn genus_family_counts() {
        for g in 1..=3 {
            let t = Triangulation::twice_punctured_genus(g).unwrap();
            assert_eq!(t.arcs().len(), 6 * g);
            assert_eq!(t.triangles().len(), 4 * g);
            assert_eq!(t.genus(), g);
            let mut val: Vec<usize> = t.punctures().iter().map(Vec::len).collect();
            val.sort_unstable();
            assert_eq!(val, vec![4 * g, 8 * g]);
        }
        assert!(Triangulation::twice_punctured_genus(0).is_err());
    }

    #[test]
    fn invalid_gluings_are_rejected() {
        assert!(Triangulation::new(vec![1, 2, 3], vec![[1, 2, 3]]).is_err());
        assert!(Triangulation::new(vec![1, 2], vec![[1, 1, 2], [2, 1, 2]]).is_err());
        assert!(Triangulation::new(vec![1, 2, 3], vec![[1, 2, 4], [1, 2, 3]]).is_err());
        // The boundary of a tetrahedron is a sphere.
        let sphere = Triangulation::new(vec![1, 2, 3, 4, 5, 6], vec![[1, 4, 2], [3, 5, 1], [2, 6, 3], [5, 6, 4]]);
        assert!(matches!(sphere, Err(Error::InvalidTriangulation(m)) if m.contains("positive genus")));
    }

    #[test]
    fn flips_are_involutions_up_to_isomorphism() {
        let t = Triangulation::once_punctured_torus();
        for k in 1..=3 {
            let s = t.flip(k).unwrap();
            assert_eq!(s.punctures()[0].len(), 6);
            let back = s.flip(k).unwrap();
            assert!(back.isomorphism(&t).is_some());
        }
        let g = Triangulation::twice_punctured_genus(1).unwrap();
        assert!(g.flip(99).is_err());
    }

    #[test]
    fn isomorphism_detects_relabeling() {
        let t = Triangulation::once_punctured_torus();
        let r = Triangulation::new(vec![7, 8, 9], vec![[9, 7, 8], [8, 9, 7]]).unwrap();
        let m = t.isomorphism(&r).unwrap();
        assert_eq!(m.len(), 3);
        let g = Triangulation::twice_punctured_genus(1).unwrap();
        assert!(g.isomorphism(&t).is_none());
    }

    #[test]
    fn json_round_trip() {
        let t = Triangulation::twice_punctured_genus(1).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        let u: Triangulation = serde_json::from_str(&s).unwrap();
        assert_eq!(t, u);
        assert!(serde_json::from_str::<Triangulation>(r#"{"arcs":[1],"triangles":[[1,1,1]]}"#).is_err());
    }
}
