use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::path_algebra::{Potential, Quiver};
use crate::scalar::int;
use crate::surface::{Triangulation, TriangulationQuiver};

fn torus() -> TriangulationQuiver {
    TriangulationQuiver::new(&Triangulation::once_punctured_torus()).unwrap()
}

fn torus_qp(n: usize, degree: usize) -> Qp {
    Qp::new(torus().potential_sxn(&int(1), n, degree + 1).unwrap())
}

#[test]
fn torus_generators_have_the_two_expected_terms() {
    let tq = torus();
    let qp = Qp::new(tq.potential_sxn(&int(2), 1, 13).unwrap());
    let gens = jacobian_generators(&qp).unwrap();
    assert_eq!(gens.len(), 6);
    for (a, g) in gens {
        let fa = tq.f(a);
        let short = Path::new(tq.quiver(), &[tq.f(fa), fa]).unwrap();
        assert_eq!(g.coeff(&short), int(1));
        assert_eq!(g.coeff(&tq.g_path(5, tq.g(a))), int(2));
        assert_eq!(g.len(), 2);
    }
}

#[test]
fn zero_potential_generators_vanish() {
    let tq = torus();
    let qp = Qp::new(Potential::zero(tq.quiver(), 8));
    assert!(jacobian_generators(&qp).unwrap().iter().all(|(_, g)| g.is_zero()));
}

#[test]
fn fig3_generator_has_short_puncture_part() {
    let tq = TriangulationQuiver::new(&Triangulation::twice_punctured_genus(1).unwrap()).unwrap();
    let qp = Qp::new(tq.potential_s(&[int(1), int(1)], 12).unwrap());
    let a1 = tq.quiver().arrow_by_name("a1").unwrap();
    let g = qp.potential.cyclic_derivative(a1).unwrap();
    assert_eq!(tq.m(a1), 4);
    assert_eq!(g.coeff(&tq.g_path(3, tq.g(a1))), int(1));
}

#[test]
fn free_acyclic_quiver_counts_paths() {
    let q = Arc::new(Quiver::new(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")]).unwrap());
    let qp = Qp::new(Potential::zero(&q, 5));
    for route in [Route::Binomial, Route::General] {
        let out = quotient(&qp, 4, route).unwrap();
        assert_eq!(out.dimension, 6);
        assert_eq!(out.per_degree, vec![3, 2, 1, 0, 0]);
        assert_eq!(out.certificate, Some(3));
    }
}

#[test]
fn torus_n1_is_certified_and_routes_agree() {
    let qp = torus_qp(1, 12);
    let a = quotient(&qp, 12, Route::Binomial).unwrap();
    let b = quotient(&qp, 12, Route::General).unwrap();
    assert!(a.is_certified());
    assert_eq!(a.dimension, b.dimension);
    assert_eq!(a.per_degree, b.per_degree);
    assert_eq!(a.certificate, b.certificate);
    assert_eq!(a.basis(), b.basis());
    assert!(a.dimension >= 4);
    let tq = torus();
    assert!(g_path_independence_check(&tq, &a, 1).unwrap());
    assert!(g_path_independence_check(&tq, &b, 1).unwrap());
    for p in mixed_paths_of_length_three(&tq).into_iter().take(20) {
        assert!(a.equals_longer_path(&p).unwrap(), "{}", p.display(tq.quiver()));
    }
}

#[test]
fn certified_dimension_is_stable_in_the_degree() {
    let a = quotient(&torus_qp(1, 12), 12, Route::Auto).unwrap();
    let b = quotient(&torus_qp(1, 13), 13, Route::Auto).unwrap();
    assert!(a.is_certified() && b.is_certified());
    assert_eq!(a.dimension, b.dimension);
}

#[test]
fn uncertified_quotient_refuses_independence_check() {
    let qp = torus_qp(2, 8);
    let out = quotient(&qp, 8, Route::Auto).unwrap();
    assert!(!out.is_certified());
    assert!(g_path_independence_check(&torus(), &out, 2).is_err());
}

#[test]
fn potential_must_cover_the_window() {
    let qp = Qp::new(torus().potential_sxn(&int(1), 1, 12).unwrap());
    assert!(quotient(&qp, 12, Route::Auto).is_err());
}

fn two_cycle_quiver() -> Arc<Quiver> {
    Arc::new(
        Quiver::new(
            ["1", "2", "3"],
            [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1"), ("d", "2", "1"), ("e", "3", "2"), ("h", "1", "3")],
        )
        .unwrap(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Both reduction routes compute the same quotient for binomial relations.
    #[test]
    fn routes_agree_on_random_binomial_potentials(x in 1i64..4, y in -3i64..4, z in -2i64..3, w in 1i64..3) {
        let q = two_cycle_quiver();
        let d = 7;
        let cyc = |names: &[&str]| Path::from_names(&q, names).unwrap();
        let mut terms = vec![(cyc(&["c", "b", "a"]), int(x)), (cyc(&["d", "e", "h"]), int(w))];
        if y != 0 {
            terms.push((cyc(&["c", "b", "a", "c", "b", "a"]), int(y)));
        }
        if z != 0 {
            terms.push((cyc(&["d", "e", "b", "a"]), int(z)));
        }
        let qp = Qp::new(Potential::from_cycles(&q, d + 1, terms).unwrap());
        let general = quotient(&qp, d, Route::General).unwrap();
        if let Ok(binomial) = quotient(&qp, d, Route::Binomial) {
            prop_assert_eq!(binomial.dimension, general.dimension);
            prop_assert_eq!(&binomial.per_degree, &general.per_degree);
            prop_assert_eq!(binomial.certificate, general.certificate);
            prop_assert_eq!(binomial.basis(), general.basis());
        }
    }
}
