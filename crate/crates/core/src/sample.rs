//! Seeded random potentials for property suites and the CLI.

use std::sync::Arc;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::path_algebra::{Path, Potential, Quiver};
use crate::scalar::{ratio, Scalar};
use crate::surface::{cycles_up_to, TriangulationQuiver};

/// Rotation classes of cycles grouped by length.
pub struct CyclePool {
    by_len: Vec<Vec<Path>>,
}

impl CyclePool {
    pub fn new(q: &Quiver, max_len: usize) -> CyclePool {
        let mut by_len = vec![Vec::new(); max_len + 1];
        for c in cycles_up_to(q, max_len) {
            by_len[c.len()].push(c);
        }
        CyclePool { by_len }
    }

    pub fn of_length(&self, l: usize) -> &[Path] {
        self.by_len.get(l).map_or(&[], Vec::as_slice)
    }

    pub fn max_len(&self) -> usize {
        self.by_len.len() - 1
    }
}

/// A nonzero rational with numerator in `-5..=5` and denominator in `1..=3`.
pub fn small_rational<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let x = ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3));
        if !x.is_zero() {
            return x;
        }
    }
}

/// Up to `terms` random cycles of length `1..=pool.max_len()`.
pub fn random_potential<R: Rng>(rng: &mut R, q: &Arc<Quiver>, pool: &CyclePool, terms: usize, degree: usize) -> Potential {
    let all: Vec<&Path> = (1..=pool.max_len()).flat_map(|l| pool.of_length(l)).collect();
    let mut p = Potential::zero(q, degree);
    if all.is_empty() {
        return p;
    }
    for _ in 0..terms {
        let c = (*all.choose(rng).unwrap()).clone();
        let single = Potential::cycle(q, degree, c, small_rational(rng)).expect("pool holds cycles");
        p = p.add(&single).expect("same quiver");
    }
    p
}

/// A potential free of triangle 3-cycles whose shortest term has length
/// exactly `short`, with further terms up to `pool.max_len()`.
pub fn random_u<R: Rng>(rng: &mut R, tq: &TriangulationQuiver, pool: &CyclePool, short: usize, extra: usize, degree: usize) -> Potential {
    let q = tq.quiver();
    let triangles: Vec<Path> =
        (0..tq.num_triangles()).map(|t| tq.triangle_cycle(t).canonical_rotation(q).expect("cycle")).collect();
    let usable = |l: usize| -> Vec<&Path> { pool.of_length(l).iter().filter(|c| !triangles.contains(c)).collect() };
    let first = usable(short);
    assert!(!first.is_empty(), "no cycles of length {short}");
    let mut u = Potential::cycle(q, degree, (*first.choose(rng).unwrap()).clone(), small_rational(rng)).expect("cycle");
    let longer: Vec<&Path> = (short..=pool.max_len()).flat_map(usable).collect();
    for _ in 0..extra {
        let c = (*longer.choose(rng).unwrap()).clone();
        u = u.add(&Potential::cycle(q, degree, c, small_rational(rng)).expect("cycle")).expect("same quiver");
    }
    // Cancellation may have removed the only term of length `short`.
    if u.short() != crate::ext::ExtNat::Finite(short) {
        return random_u(rng, tq, pool, short, extra, degree);
    }
    u
}
