//! Development aid: evaluates every catalog entry against both Tait colorings.
//! Usage: cargo run --release --example probe [id-substring]

use knotfam::conway::ParamBinding;
use knotfam::families::{Catalog, GraphSource};
use knotfam::tait::{tait_graph, Checkerboard};
use knotfam::tutte::TutteEngine;

fn main() {
    let filter = std::env::args().nth(1);
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/catalog.toml")).unwrap();
    let cat = Catalog::from_toml(&text).unwrap();
    let engine = TutteEngine::new();
    for e in cat.entries() {
        if filter.as_ref().is_some_and(|f| !e.id.contains(f.as_str())) {
            continue;
        }
        let ast = match e.symbol() {
            Ok(a) => a,
            Err(err) => {
                println!("{:>3} {:<16} PARSE {err}", e.index, e.id);
                continue;
            }
        };
        let mut tuples: Vec<Vec<i64>> = vec![vec![]];
        for _ in 0..e.arity() {
            tuples = tuples.into_iter().flat_map(|t| (2..=3).map(move |v| [t.clone(), vec![v]].concat())).collect();
        }
        let mut verdict = [0usize; 2];
        let mut errs = Vec::new();
        for t in &tuples {
            let b: ParamBinding = e.params.iter().cloned().zip(t.iter().copied()).collect();
            let f = match cat.eval(&e.id, &b) {
                Ok(f) => f,
                Err(err) => {
                    errs.push(format!("eval {t:?}: {err}"));
                    continue;
                }
            };
            let concrete = ast.bind(&b).unwrap();
            for (k, c) in [Checkerboard::Primary, Checkerboard::Dual].into_iter().enumerate() {
                match tait_graph(&concrete, c) {
                    Ok(g) if engine.tutte(&g) == f => verdict[k] += 1,
                    Ok(_) => {}
                    Err(err) if k == 0 => errs.push(format!("build: {err}")),
                    Err(_) => {}
                }
            }
        }
        let n = tuples.len();
        let declared = match e.graph {
            GraphSource::Built(Checkerboard::Primary) => "primary",
            GraphSource::Built(Checkerboard::Dual) => "dual",
            GraphSource::None => "none",
        };
        let status = if verdict[0] == n {
            "primary"
        } else if verdict[1] == n {
            "dual"
        } else {
            "MISMATCH"
        };
        println!(
            "{:>3} {:<22} {:<9} decl={:<8} p={}/{n} d={}/{n} {}",
            e.index,
            e.id,
            status,
            declared,
            verdict[0],
            verdict[1],
            errs.first().cloned().unwrap_or_default()
        );
    }
}
