#![allow(dead_code)]

use knotfam::conway::ParamBinding;
use knotfam::families::FamilyEntry;
use knotfam::MultiGraph;
use nalgebra::DMatrix;
use num_bigint::BigInt;
use proptest::prelude::*;

/// Every binding of the entry's parameters to values in `values`.
pub fn tuples(e: &FamilyEntry, values: &[i64]) -> Vec<ParamBinding> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..e.arity() {
        out = out.into_iter().flat_map(|t| values.iter().map(move |&v| [t.clone(), vec![v]].concat())).collect();
    }
    out.into_iter().map(|t| e.params.iter().cloned().zip(t).collect()).collect()
}

/// Multigraph with loops and parallel edges.
pub fn arb_graph(max_v: usize, max_e: usize) -> impl Strategy<Value = MultiGraph> {
    (1..=max_v).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n), 0..=max_e).prop_map(move |edges| MultiGraph::from_edges(n, &edges).unwrap())
    })
}

/// Connected multigraph: a random spanning tree plus extra edges.
pub fn arb_connected(max_v: usize, extra: usize) -> impl Strategy<Value = MultiGraph> {
    (1..=max_v).prop_flat_map(move |n| {
        let parents: Vec<BoxedStrategy<usize>> = (1..n).map(|v| (0..v).boxed()).collect();
        (parents, prop::collection::vec((0..n, 0..n), 0..=extra)).prop_map(move |(parents, more)| {
            let mut g = MultiGraph::new(n);
            for (i, p) in parents.into_iter().enumerate() {
                g.add_edge(i + 1, p).unwrap();
            }
            for (a, b) in more {
                g.add_edge(a, b).unwrap();
            }
            g
        })
    })
}

/// Spanning-tree count from the matrix-tree theorem.
pub fn kirchhoff(g: &MultiGraph) -> BigInt {
    let n = g.vertex_count();
    if n == 1 {
        return BigInt::from(1);
    }
    let mut lap = DMatrix::<f64>::zeros(n, n);
    for &(u, v) in g.edges() {
        if u != v {
            lap[(u, u)] += 1.0;
            lap[(v, v)] += 1.0;
            lap[(u, v)] -= 1.0;
            lap[(v, u)] -= 1.0;
        }
    }
    let det = lap.view((1, 1), (n - 1, n - 1)).determinant();
    assert!((det - det.round()).abs() < 1e-6, "determinant {det} is not near an integer");
    BigInt::from(det.round() as i64)
}
