use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use qpsurf::cli::decomposition_error;
use qpsurf::jacobian::{self, Route};
use qpsurf::mutation::{self, Qp};
use qpsurf::normalize;
use qpsurf::path_algebra::{Element, Path, Potential, Quiver, VertexId};
use qpsurf::report::EquivalenceWitness;
use qpsurf::sample::{random_potential, random_u, small_rational, CyclePool};
use qpsurf::scalar::{self, Scalar};
use qpsurf::surface::{cycles_up_to, CycleKind, CycleType, Triangulation, TriangulationQuiver};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lib<T>(r: qpsurf::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn torus() -> TriangulationQuiver {
    TriangulationQuiver::new(&Triangulation::once_punctured_torus()).unwrap()
}

fn genus(g: usize) -> TriangulationQuiver {
    TriangulationQuiver::new(&Triangulation::twice_punctured_genus(g).unwrap()).unwrap()
}

fn recheck(map: &qpsurf::endo::REndomorphism, source: &Potential, target: &Potential) -> Result<(), String> {
    let witness = EquivalenceWitness::new(map, source, target);
    let json = serde_json::to_string(&witness).map_err(|e| e.to_string())?;
    let back: EquivalenceWitness = serde_json::from_str(&json).map_err(|e| e.to_string())?;
    match lib(back.recheck())? {
        None => Ok(()),
        Some(d) => Err(format!("witness recheck differs: {d:?}")),
    }
}

fn flip_desk_check() -> Check {
    let tau = Triangulation::once_punctured_torus();
    let mut cases = 0;
    for n in [1usize, 2] {
        let d = 12 * n + 6;
        for x in ["1", "2", "-1/3"] {
            let xs = scalar::parse(x).unwrap();
            for &arc in tau.arcs() {
                let v = lib(mutation::verify_flip(&tau, arc, &xs, n, d, None))?;
                ensure!(v.report.pass, "arc {arc}, x = {x}, n = {n}: {:?}", v.report.first_difference);
                recheck(&v.witness, &v.premutated.potential, &v.expected)
                    .map_err(|e| format!("arc {arc}, x = {x}, n = {n}: {e}"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases, D = 12n + 6"))
}

fn jacobian_growth() -> Check {
    let golden: serde_json::Value = serde_json::from_slice(
        &std::fs::read(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/torus_jacobian.json")).unwrap(),
    )
    .unwrap();
    let tq = torus();
    let mut dims = Vec::new();
    for (n, d) in [(1usize, 12usize), (2, 18)] {
        let qp = Qp::new(lib(tq.potential_sxn(&scalar::one(), n, d + 1))?);
        let out = lib(jacobian::quotient(&qp, d, Route::Auto))?;
        ensure!(out.is_certified(), "n = {n}: not certified at D = {d}");
        ensure!(out.dimension >= 6 * n - 2, "n = {n}: dimension {} below {}", out.dimension, 6 * n - 2);
        let row = &golden["rows"][n - 1];
        ensure!(row["degree"] == d && row["dimension"] == out.dimension, "n = {n}: dimension {} vs golden {}", out.dimension, row);
        ensure!(row["certificate_length"] == out.certificate.unwrap(), "n = {n}: certificate {:?} vs golden", out.certificate);
        dims.push(out.dimension);
    }
    ensure!(dims[1] > dims[0], "dimensions not strictly increasing: {dims:?}");
    Ok(format!("dims {dims:?}"))
}

fn g_power_normal_form() -> Check {
    let tq = genus(1);
    let q = tq.quiver();
    let d = 16;
    let pool = CyclePool::new(q, 10);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let t = tq.potential_t(d);
    let mut zero_w = 0;
    for i in 0..50 {
        let short = 4 + i % 3;
        let u = random_u(&mut rng, &tq, &pool, short, 4, d);
        let s = lib(t.add(&u))?;
        let rescaled = lib(normalize::normalize_triangle_coefficients(&tq, &s))?;
        let nf = lib(normalize::g_normal_form(&tq, &Potential::zero(q, d), &rescaled.u))?;
        for (c, _) in nf.w.terms() {
            let ty = lib(tq.classify_cycle(c))?;
            ensure!(ty.kind() == CycleKind::G, "sample {i}: W has non-G term {}", c.display(q));
        }
        ensure!(nf.w.short() >= u.short(), "sample {i}: short(W) = {:?} < short(U) = {:?}", nf.w.short(), u.short());
        let map = lib(nf.map.compose(&rescaled.map))?;
        recheck(&map, &s, &lib(t.add(&nf.w))?).map_err(|e| format!("sample {i}: {e}"))?;
        zero_w += nf.w.is_zero() as usize;
    }
    Ok(format!("50/50, {zero_w} with W = 0"))
}

fn absorption() -> Check {
    let tq = genus(1);
    let q = tq.quiver();
    let d = 56;
    let (p, qq) = (0, 1);
    assert_eq!(tq.punctures()[p].valency, 8);
    assert_eq!(tq.punctures()[qq].valency, 4);
    let x = vec![scalar::one(), scalar::one()];
    let power = |i: usize, n: usize, c: i64| Potential::cycle(q, d, tq.puncture_power(i, n), scalar::int(c)).unwrap();
    let cases = [
        ("G(q)^2", power(qq, 2, 1)),
        ("G(p)^2", power(p, 2, 1)),
        ("G(p)^2 + 3G(q)^3", power(p, 2, 1).add(&power(qq, 3, 3)).unwrap()),
    ];
    let s = lib(tq.potential_s(&x, d))?;
    for (name, v) in cases {
        let out = lib(normalize::absorb_g_powers(&tq, &x, &v))?;
        ensure!(out.in_reference_family, "{name}: not in the reference family");
        recheck(&out.map, &lib(s.add(&v))?, &s).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok("3/3 at D = 56".into())
}

fn is_f_power(tq: &TriangulationQuiver, c: &Path, canon: &Path) -> bool {
    let q = tq.quiver();
    c.len().is_multiple_of(3) && q.arrow_ids().any(|a| tq.f_path(c.len(), a).canonical_rotation(q).ok().as_ref() == Some(canon))
}

fn is_g_power(tq: &TriangulationQuiver, c: &Path, canon: &Path) -> bool {
    let q = tq.quiver();
    q.arrow_ids().any(|a| {
        c.len().is_multiple_of(tq.m(a)) && tq.g_path(c.len(), a).canonical_rotation(q).ok().as_ref() == Some(canon)
    })
}

fn cycle_trichotomy() -> Check {
    let tq = genus(1);
    let q = tq.quiver();
    let cycles = cycles_up_to(q, 10);
    let mut counts = BTreeMap::new();
    for c in &cycles {
        let canon = lib(c.canonical_rotation(q))?;
        let (f, g) = (is_f_power(&tq, c, &canon), is_g_power(&tq, c, &canon));
        ensure!(!(f && g), "{} is both a triangle power and a puncture power", c.display(q));
        let ty = lib(tq.classify_cycle(c))?;
        let expected = if f { CycleKind::F } else if g { CycleKind::G } else { CycleKind::FG };
        ensure!(ty.kind() == expected, "{} classified {:?}, expected {:?}", c.display(q), ty.kind(), expected);
        if let CycleType::FG { rotation, .. } = &ty {
            ensure!(lib(rotation.canonical_rotation(q))? == canon, "{}: FG rotation is not a rotation of the cycle", c.display(q));
        }
        if let Some(why) = lib(decomposition_error(&tq, c, &ty))? {
            return Err(format!("{}: {why}", c.display(q)));
        }
        *counts.entry(format!("{expected:?}")).or_insert(0usize) += 1;
    }
    Ok(format!("{} cycles {counts:?}", cycles.len()))
}

fn arrow_counts(q: &Quiver) -> BTreeMap<(String, String), usize> {
    let mut m = BTreeMap::new();
    for a in q.arrow_ids() {
        let key = (q.vertex_label(q.tail(a)).to_string(), q.vertex_label(q.head(a)).to_string());
        *m.entry(key).or_insert(0) += 1;
    }
    m
}

fn structural_invariants() -> Check {
    let mut builders = vec![("torus", torus())];
    for g in 1..=3 {
        builders.push(("genus", genus(g)));
    }
    for (name, tq) in &builders {
        lib(tq.check_invariants())?;
        let q = tq.quiver();
        for a in q.arrow_ids() {
            let f = tq.f(a);
            ensure!(tq.f(tq.f(f)) == a && f != a && tq.f(f) != a, "{name}: f-orbit of {} is not of size 3", q.name(a));
            ensure!(q.tail(f) == q.head(a) && q.tail(tq.g(a)) == q.head(a), "{name}: head/tail mismatch at {}", q.name(a));
            ensure!(tq.g_pow(a, tq.m(a) as isize) == a, "{name}: g-orbit of {} is not of size m", q.name(a));
        }
        let valencies: usize = tq.punctures().iter().map(|p| p.valency).sum();
        ensure!(valencies == q.num_arrows(), "{name}: valencies sum to {valencies}, {} arrows", q.num_arrows());
        let t = tq.triangulation();
        ensure!(t.arcs().len() == 6 * t.genus() - 6 + 3 * tq.punctures().len(), "{name}: arc count");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut current = Triangulation::twice_punctured_genus(2).unwrap();
    let (mut flips, mut refused) = (0, 0);
    while flips < 100 {
        let arc = *current.arcs().choose(&mut rng).unwrap();
        let Ok(next) = current.flip(arc) else {
            refused += 1;
            ensure!(refused < 1000, "too many impossible flips");
            continue;
        };
        let back = lib(next.flip(arc))?;
        ensure!(back.isomorphism(&current).is_some(), "flipping arc {arc} twice is not the identity up to isomorphism");
        lib(TriangulationQuiver::new(&next))?;
        current = next;
        flips += 1;
    }

    let mut mutations = 0;
    for tq in [torus(), genus(1)] {
        let x: Vec<Scalar> = (0..tq.punctures().len()).map(|i| scalar::int(i as i64 + 1)).collect();
        let qp = Qp::new(lib(tq.potential_s(&x, tq.default_degree_s()))?);
        let before = arrow_counts(qp.quiver());
        for v in qp.quiver().vertex_ids().collect::<Vec<VertexId>>() {
            let once = lib(mutation::mutate(&qp, v))?;
            ensure!(once.qp().is_two_acyclic(), "mutation at {} is not 2-acyclic", qp.quiver().vertex_label(v));
            let label = qp.quiver().vertex_label(v);
            let w = lib(once.qp().quiver().vertex(label))?;
            let twice = lib(mutation::mutate(once.qp(), w))?;
            ensure!(arrow_counts(twice.qp().quiver()) == before, "mutating twice at {label} changes the quiver");
            mutations += 1;
        }
    }
    Ok(format!("4 builders, 100 flips ({refused} refused), {mutations} vertices"))
}

/// ∂_α computed from the written term, rotation by rotation.
fn brute_derivative(q: &Arc<Quiver>, d: usize, terms: &[(Path, Scalar)], alpha: qpsurf::path_algebra::ArrowId) -> Element {
    let mut out = Element::zero(q, d - 1);
    for (c, coeff) in terms {
        for i in 0..c.len() {
            if c.arrows()[i] == alpha {
                let r = c.rotate(q, i);
                out.add_term(r.slice(q, 1..r.len()), coeff.clone());
            }
        }
    }
    out
}

fn euler_and_derivatives() -> Check {
    let d = 10;
    let quivers = [torus().quiver().clone(), genus(1).quiver().clone()];
    let pools: Vec<CyclePool> = quivers.iter().map(|q| CyclePool::new(q, d)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..1000 {
        let k = i % 2;
        let q = &quivers[k];
        let terms = rng.gen_range(1..6);
        let p = random_potential(&mut rng, q, &pools[k], terms, d);
        let other = random_potential(&mut rng, q, &pools[k], 3, d);
        let lambda = small_rational(&mut rng);

        let written: Vec<(Path, Scalar)> =
            p.terms().map(|(c, x)| (c.rotate(q, rng.gen_range(0..c.len())), x.clone())).collect();
        let mut euler = Element::zero(q, d);
        let mut graded = Element::zero(q, d);
        for (c, x) in p.terms() {
            graded.add_term(c.clone(), x * Scalar::from_integer(c.len().into()));
        }
        let combined = lib(p.add(&other.scale(&lambda)))?;
        for a in q.arrow_ids() {
            let da = lib(p.cyclic_derivative(a))?;
            ensure!(da == brute_derivative(q, d, &written, a), "sample {i}: derivative of {} disagrees with rotations", q.name(a));
            let lhs = lib(combined.cyclic_derivative(a))?;
            let mut rhs = da.clone();
            lib(rhs.add_scaled(&lib(other.cyclic_derivative(a))?, &lambda))?;
            ensure!(lhs == rhs, "sample {i}: derivative is not linear at {}", q.name(a));
            lib(euler.add_scaled(&lib(Element::from_arrow(q, d, a).mul(&da.with_degree(d)))?, &scalar::one()))?;
        }
        let lhs = lib(Potential::from_element(&euler))?;
        let rhs = lib(Potential::from_element(&graded))?;
        ensure!(lib(lhs.is_cyclically_equivalent(&rhs))?, "sample {i}: Euler identity fails for {}", p.display());

        ensure!(p.scale(&lambda).short() == p.short(), "sample {i}: short not scale invariant");
        let sum = lib(p.add(&other))?;
        ensure!(sum.short() >= p.short().min(other.short()), "sample {i}: short of a sum too small");
    }
    Ok("1000 potentials".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 7] = [
        ("flip compatibility on the torus", flip_desk_check),
        ("Jacobian finiteness and growth", jacobian_growth),
        ("g-power normal form", g_power_normal_form),
        ("absorption of puncture-cycle powers", absorption),
        ("cycle trichotomy", cycle_trichotomy),
        ("structural invariants", structural_invariants),
        ("Euler operator and cyclic derivatives", euler_and_derivatives),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        let line = match &result {
            Ok(detail) => format!("criterion {}: PASS  {name} ({detail}; {secs:.1}s)", i + 1),
            Err(why) => format!("criterion {}: FAIL  {name}: {why} ({secs:.1}s)", i + 1),
        };
        writeln!(std::io::stdout().lock(), "{line}").unwrap();
        if result.is_err() {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
