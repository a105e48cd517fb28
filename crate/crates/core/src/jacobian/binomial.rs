use num_traits::One;

use crate::scalar::Scalar;

/// Classes of paths identified up to scalars by two-term relations
/// `u = w · v`. A class is killed once some member is forced to zero,
/// including through a relation `u = w · u` with `w ≠ 1`.
pub(crate) struct BinomialClasses {
    parent: Vec<u32>,
    /// Value of a node as a multiple of its parent.
    weight: Vec<Scalar>,
    killed: Vec<bool>,
    /// Least and greatest node id in each class, stored at the root.
    min: Vec<u32>,
    max: Vec<u32>,
    size: Vec<u32>,
}

impl BinomialClasses {
    pub fn new(n: usize) -> BinomialClasses {
        BinomialClasses {
            parent: (0..n as u32).collect(),
            weight: vec![Scalar::one(); n],
            killed: vec![false; n],
            min: (0..n as u32).collect(),
            max: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    /// Root of `u` and the value of `u` as a multiple of the root.
    pub fn find(&mut self, u: u32) -> (u32, Scalar) {
        let mut chain = Vec::new();
        let mut r = u;
        while self.parent[r as usize] != r {
            chain.push(r);
            r = self.parent[r as usize];
        }
        // Compress from the node nearest the root outward.
        let mut acc = Scalar::one();
        for &x in chain.iter().rev() {
            acc = &self.weight[x as usize] * &acc;
            self.weight[x as usize] = acc.clone();
            self.parent[x as usize] = r;
        }
        (r, if chain.is_empty() { Scalar::one() } else { self.weight[u as usize].clone() })
    }

    pub fn kill(&mut self, u: u32) {
        let (r, _) = self.find(u);
        self.killed[r as usize] = true;
    }

    /// Imposes `u = w · v`.
    pub fn relate(&mut self, u: u32, v: u32, w: &Scalar) {
        let (ru, wu) = self.find(u);
        let (rv, wv) = self.find(v);
        if ru == rv {
            if wu != w * &wv {
                self.killed[ru as usize] = true;
            }
            return;
        }
        // wu·ru = w·wv·rv, so ru = (w·wv/wu)·rv.
        let mut k = w * &wv / &wu;
        let (mut child, mut root) = (ru, rv);
        if self.size[ru as usize] > self.size[rv as usize] {
            std::mem::swap(&mut child, &mut root);
            k = k.recip();
        }
        let (c, r) = (child as usize, root as usize);
        self.parent[c] = root;
        self.weight[c] = k;
        self.size[r] += self.size[c];
        self.killed[r] |= self.killed[c];
        self.min[r] = self.min[r].min(self.min[c]);
        self.max[r] = self.max[r].max(self.max[c]);
    }

    /// Points every node straight at its root, after which the read-only
    /// queries below are valid.
    pub fn flatten(&mut self) {
        for u in 0..self.parent.len() as u32 {
            self.find(u);
        }
    }

    fn lookup(&self, u: u32) -> (u32, Scalar) {
        let p = self.parent[u as usize];
        debug_assert_eq!(self.parent[p as usize], p, "classes must be flattened");
        if p == u {
            (u, Scalar::one())
        } else {
            (p, self.weight[u as usize].clone())
        }
    }

    /// `u` as a multiple of the least member of its class; `None` when zero.
    pub fn normal_form(&self, u: u32) -> Option<(u32, Scalar)> {
        let (r, wu) = self.lookup(u);
        if self.killed[r as usize] {
            return None;
        }
        let m = self.min[r as usize];
        let (_, wm) = self.lookup(m);
        Some((m, wu / wm))
    }

    pub fn largest_member(&self, u: u32) -> u32 {
        self.max[self.lookup(u).0 as usize]
    }

    /// Least members of the surviving classes, in increasing order.
    pub fn representatives(&self) -> Vec<u32> {
        let mut out: Vec<u32> = (0..self.parent.len() as u32)
            .filter(|&u| self.parent[u as usize] == u && !self.killed[u as usize])
            .map(|r| self.min[r as usize])
            .collect();
        out.sort_unstable();
        out
    }
}
