//! Acceptance checks, one line per criterion. Exits nonzero if any fails.

mod common;

use knotfam::conway::{ConwayAst, ParamBinding};
use knotfam::families::{eval_wheel, Catalog, GraphSource};
use knotfam::graphcore::EdgeKind;
use knotfam::jones::normalized_jones;
use knotfam::tutte::{tutte, TutteEngine};
use knotfam::zeros::{self, RESIDUAL_TOL};
use knotfam::{LaurentPoly1, LaurentPoly2, MultiGraph, Var};
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
use std::time::Instant;

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bind(pairs: &[(&str, i64)]) -> ParamBinding {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

fn catalog_matches_engine() -> Outcome {
    let cat = Catalog::bundled();
    let engine = TutteEngine::new();
    let start = Instant::now();
    let mut n = 0;
    for e in cat.entries().iter().filter(|e| e.graph != GraphSource::None) {
        for b in common::tuples(e, &[2, 3, 4]) {
            let (formula, built) = cat.verify(&e.id, &b, &engine).map_err(|err| format!("{}: {err}", e.id))?;
            ensure(formula == built, || format!("{} at {b:?}: formula {formula} engine {built}", e.id))?;
            n += 1;
        }
    }
    Ok(format!("{n} tuples over {} entries in {:.1?}", cat.entries().len(), start.elapsed()))
}

fn base_cases() -> Outcome {
    let mut lp = MultiGraph::new(1);
    lp.add_edge(0, 0).unwrap();
    ensure(tutte(&lp) == LaurentPoly2::y(), || "loop".into())?;
    ensure(tutte(&MultiGraph::path(1)) == LaurentPoly2::x(), || "bridge".into())?;
    for p in 1..=10 {
        let want = LaurentPoly2::geom_sum(Var::X, p) + LaurentPoly2::y() - LaurentPoly2::one();
        ensure(tutte(&MultiGraph::cycle(p as usize)) == want, || format!("C_{p}"))?;
    }
    Ok("loop, bridge, C_1..C_10".into())
}

fn wheels() -> Outcome {
    let k4: LaurentPoly2 = "x^3 + 3*x^2 + 2*x + 4*x*y + 2*y + 3*y^2 + y^3".parse().unwrap();
    ensure(eval_wheel(3).unwrap() == k4, || "K4 golden".into())?;
    for n in 1..=5 {
        let w = eval_wheel(n).map_err(|e| e.to_string())?;
        ensure(w == tutte(&MultiGraph::wheel(n as usize)), || format!("wheel n = {n}"))?;
    }
    Ok("n = 1..5, K4 golden".into())
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config { cases, failure_persistence: None, ..Config::default() },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn graph_properties() -> Outcome {
    let dc = runner(500).run(&(common::arb_graph(7, 11), any::<prop::sample::Index>()), |(g, pick)| {
        prop_assume!(g.edge_count() > 0);
        let e = pick.index(g.edge_count());
        let expect = match g.classify_edge(e).unwrap() {
            EdgeKind::Loop => &LaurentPoly2::y() * &tutte(&g.delete_edge(e).unwrap()),
            EdgeKind::Bridge => &LaurentPoly2::x() * &tutte(&g.contract_edge(e).unwrap()),
            EdgeKind::Ordinary => tutte(&g.delete_edge(e).unwrap()) + tutte(&g.contract_edge(e).unwrap()),
        };
        prop_assert_eq!(tutte(&g), expect);
        Ok(())
    });
    dc.map_err(|e| format!("deletion-contraction: {e}"))?;
    let blocks = runner(500).run(
        &(
            common::arb_connected(5, 5),
            common::arb_connected(5, 5),
            any::<prop::sample::Index>(),
            any::<prop::sample::Index>(),
        ),
        |(g, h, a, b)| {
            let u = g.one_point_union(a.index(g.vertex_count()), &h, b.index(h.vertex_count()));
            prop_assert_eq!(tutte(&u), &tutte(&g) * &tutte(&h));
            Ok(())
        },
    );
    blocks.map_err(|e| format!("block multiplicativity: {e}"))?;
    let shuffle = runner(500).run(&(common::arb_graph(7, 12), any::<u64>()), |(g, seed)| {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
        perm.shuffle(&mut rng);
        let mut order: Vec<usize> = (0..g.edge_count()).collect();
        order.shuffle(&mut rng);
        let h = g.relabel(&perm).reorder_edges(&order);
        prop_assert_eq!(TutteEngine::new().tutte(&h), TutteEngine::new().tutte(&g));
        Ok(())
    });
    shuffle.map_err(|e| format!("shuffle invariance: {e}"))?;
    Ok("500 graphs each, no counterexamples".into())
}

fn spanning_trees() -> Outcome {
    runner(100)
        .run(&common::arb_connected(8, 10), |g| {
            prop_assert_eq!(tutte(&g).eval_int(1, 1).unwrap(), common::kirchhoff(&g));
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok("100 connected graphs".into())
}

fn jones_goldens() -> Outcome {
    let cat = Catalog::bundled();
    let fig8 = normalized_jones(&cat.eval("p q", &bind(&[("p", 2), ("q", 2)])).unwrap()).unwrap();
    ensure(fig8.poly == LaurentPoly1::from_coeffs(&[1, -1, 1, -1, 1]), || format!("figure-eight {}", fig8.poly))?;
    let z = zeros::roots(&fig8.poly).map_err(|e| e.to_string())?;
    ensure(z.roots.len() == 4 && z.max_residual() < RESIDUAL_TOL, || "figure-eight residuals".into())?;
    for r in &z.roots {
        let k = (r.arg() / (std::f64::consts::PI / 5.0)).round();
        let on = Complex64::from_polar(1.0, k * std::f64::consts::PI / 5.0);
        ensure((r - on).norm() < 1e-9 && (k as i64).rem_euclid(2) == 1 && (k as i64).rem_euclid(10) != 5, || {
            format!("{r} is not a primitive 10th root of unity")
        })?;
    }
    let hopf = normalized_jones(&cat.eval("p", &bind(&[("p", 2)])).unwrap()).unwrap();
    let z = zeros::roots(&hopf.poly).map_err(|e| e.to_string())?;
    let i = Complex64::i();
    ensure(z.roots.len() == 2 && z.roots.iter().all(|r| (r - i).norm() < 1e-12 || (r + i).norm() < 1e-12), || {
        format!("Hopf zeros {:?}", z.roots)
    })?;
    let trefoil = normalized_jones(&cat.eval("p", &bind(&[("p", 3)])).unwrap()).unwrap();
    let z = zeros::roots(&trefoil.poly).map_err(|e| e.to_string())?;
    let f = |x: f64| x * x * x - x * x - 1.0;
    let (mut lo, mut hi) = (1.0, 2.0);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    ensure(trefoil.poly == "x^3 - x^2 - 1".parse().unwrap(), || format!("trefoil {}", trefoil.poly))?;
    let real = z.roots.iter().find(|r| r.im == 0.0).ok_or("no real trefoil zero")?;
    ensure((real.re - lo).abs() < 1e-6 && (real.re - 1.465571).abs() < 1e-6, || format!("trefoil real zero {real}"))?;
    Ok(format!("figure-eight, Hopf, trefoil real zero {:.6}", real.re))
}

fn one_portrait(family: &str, ranges: &[(&str, std::ops::RangeInclusive<i64>)]) -> Outcome {
    let ranges: Vec<_> = ranges.iter().map(|(n, r)| (n.to_string(), r.clone())).collect();
    let start = Instant::now();
    let p = zeros::portrait(Catalog::bundled(), family, &ranges, 1, Some(4)).map_err(|e| e.to_string())?;
    let mut csv = Vec::new();
    zeros::write_csv(&p, &mut csv).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(p.skipped.is_empty(), || format!("{family}: skipped {:?}", p.skipped))?;
    let worst = p.members.iter().map(|m| m.zeros.max_residual()).fold(0.0, f64::max);
    ensure(worst < RESIDUAL_TOL, || format!("{family}: residual {worst:e}"))?;
    let degrees: usize = p.members.iter().map(|m| m.zeros.degree).sum();
    let rows = csv.split(|&b| b == b'\n').filter(|l| !l.is_empty()).count() - 1;
    ensure(rows == degrees, || format!("{family}: {rows} rows, degree sum {degrees}"))?;
    ensure(elapsed.as_secs_f64() < 60.0, || format!("{family}: {elapsed:.1?}"))?;
    Ok(format!("{rows} zeros in {elapsed:.1?}"))
}

fn portraits() -> Outcome {
    let a = one_portrait("p q", &[("p", 2..=20), ("q", 2..=20)])?;
    let b = one_portrait("p,q,r", &[("p", 2..=10), ("q", 2..=10), ("r", 2..=10)])?;
    let c = one_portrait("p,q,r", &[("p", 2..=10), ("q", 2..=10), ("r", -10..=-2)])?;
    Ok(format!("p q: {a}; p,q,r: {b}; p,q,-r: {c}"))
}

fn leading_coefficients() -> Outcome {
    let cat = Catalog::bundled();
    let mut n = 0;
    for e in cat.entries() {
        if !matches!(e.symbol(), Ok(ConwayAst::Tangle(_))) {
            continue;
        }
        for b in common::tuples(e, &[2, 3, 4]) {
            let t = cat.eval(&e.id, &b).map_err(|err| err.to_string())?;
            let (_, _, c) = t.leading_term().ok_or("zero polynomial")?;
            ensure(*c == 1.into(), || format!("{} at {b:?}: leading coefficient {c}", e.id))?;
            n += 1;
        }
    }
    let k4 = eval_wheel(3).unwrap();
    let (_, _, c) = k4.leading_term().unwrap();
    ensure(*c > 1.into(), || format!("wheel n = 3 has leading coefficient {c}"))?;
    Ok(format!("1 on {n} algebraic members, {c} on the wheel n = 3"))
}

fn negative_parameters() -> Outcome {
    let cat = Catalog::bundled();
    for k in 1..=5 {
        let t = cat.eval("p", &bind(&[("p", -k)])).map_err(|e| e.to_string())?;
        let lhs = &(LaurentPoly2::x() - LaurentPoly2::one()) * &(t - LaurentPoly2::y() + LaurentPoly2::one());
        ensure(lhs == LaurentPoly2::monomial(1, -k, 0) - LaurentPoly2::one(), || format!("k = {k}"))?;
    }
    Ok("k = 1..5".into())
}

fn main() {
    let checks: [Check; 9] = [
        ("catalog formulas equal engine on {2,3,4}^arity", catalog_matches_engine),
        ("base cases", base_cases),
        ("wheel family", wheels),
        ("deletion-contraction, blocks, shuffles", graph_properties),
        ("spanning trees vs Kirchhoff", spanning_trees),
        ("Jones goldens", jones_goldens),
        ("portraits", portraits),
        ("leading coefficients", leading_coefficients),
        ("negative parameters", negative_parameters),
    ];
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
