//! Exact Tutte polynomials by deletion–contraction with block factoring and memoization.

use crate::graphcore::{EdgeKind, MultiGraph};
use crate::poly::{LaurentPoly2, Var};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

/// Largest graph accepted by [`tutte_uncached`].
pub const UNCACHED_EDGE_LIMIT: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TutteError {
    #[error("graph has {0} edges, plain recursion is limited to {UNCACHED_EDGE_LIMIT}")]
    TooManyEdges(usize),
}

/// Memo table keyed by [`MultiGraph::canonical_key`] of 2-connected blocks.
/// Concurrent writers always store identical values, so last-writer-wins is harmless.
pub type SharedCache = Arc<RwLock<HashMap<Vec<u8>, LaurentPoly2>>>;

/// Tutte polynomial evaluator with its own (or a shared) memo table.
#[derive(Clone, Default)]
pub struct TutteEngine {
    cache: SharedCache,
}

/// Tutte polynomial with a fresh cache. Disconnected graphs give the product over components.
///
/// ```
/// use knotfam::{graphcore::MultiGraph, tutte::tutte};
/// assert_eq!(tutte(&MultiGraph::cycle(3)).to_string(), "1*x^1 + 1*x^2 + 1*y^1");
/// ```
pub fn tutte(g: &MultiGraph) -> LaurentPoly2 {
    TutteEngine::new().tutte(g)
}

impl TutteEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cache(cache: SharedCache) -> Self {
        Self { cache }
    }

    pub fn cache(&self) -> SharedCache {
        self.cache.clone()
    }

    pub fn cached_blocks(&self) -> usize {
        self.cache.read().map(|c| c.len()).unwrap_or(0)
    }

    pub fn tutte(&self, g: &MultiGraph) -> LaurentPoly2 {
        let loops = g.edges().iter().filter(|(a, b)| a == b).count();
        let mut acc = LaurentPoly2::monomial(1, 0, loops as i64);
        let mut bridges = 0i64;
        let d = g.block_decompose();
        bridges += d.bridge_count as i64;
        for b in &d.blocks {
            acc = &acc * &self.block(b);
        }
        &acc * &LaurentPoly2::monomial(1, bridges, 0)
    }

    fn block(&self, b: &MultiGraph) -> LaurentPoly2 {
        let key = b.canonical_key();
        if let Some(hit) = self.cache.read().ok().and_then(|c| c.get(&key).cloned()) {
            return hit;
        }
        let value = self.block_uncached(b);
        if let Ok(mut c) = self.cache.write() {
            c.insert(key, value.clone());
        }
        value
    }

    // `b` is 2-connected, loopless, with at least two edges.
    fn block_uncached(&self, b: &MultiGraph) -> LaurentPoly2 {
        let n = b.vertex_count();
        let m = b.edge_count();
        if n == 2 {
            return LaurentPoly2::x() + &LaurentPoly2::geom_sum(Var::Y, m as i64) - LaurentPoly2::one();
        }
        let deg = b.degrees();
        if m == n && deg.iter().all(|&d| d == 2) {
            return LaurentPoly2::geom_sum(Var::X, n as i64) + LaurentPoly2::y() - LaurentPoly2::one();
        }

        let mut mult: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for &e in b.edges() {
            *mult.entry(e).or_default() += 1;
        }
        let (&(u, v), &k) = mult.iter().max_by_key(|(e, &c)| (c, std::cmp::Reverse(**e))).unwrap();
        if k >= 2 {
            // Whole parallel class at once: T = T(G - class) + [k]_y T(G / class).
            let rest = without_edges(b, |e| e == (u, v));
            let merged = rest.merge_vertices(u, v, None);
            let tm = self.tutte(&merged);
            return if rest.is_connected() {
                self.tutte(&rest) + &LaurentPoly2::geom_sum(Var::Y, k as i64) * &tm
            } else {
                &(LaurentPoly2::x() + &LaurentPoly2::geom_sum(Var::Y, k as i64) - LaurentPoly2::one()) * &tm
            };
        }

        if let Some(w) = (0..n).find(|&w| deg[w] == 2) {
            // Maximal series path through degree-2 vertices: T = [k]_x T(G - path) + T(G / path).
            let (ends, inner, path_edges) = series_path(b, &deg, w);
            let mut rest = MultiGraph::new(n);
            for (i, &(a, c)) in b.edges().iter().enumerate() {
                if !path_edges.contains(&i) {
                    rest.add_edge(a, c).unwrap();
                }
            }
            let rest = rest.remove_vertices(&inner);
            let remap = |x: usize| x - inner.iter().filter(|&&i| i < x).count();
            let (a, c) = (remap(ends.0), remap(ends.1));
            let merged = rest.merge_vertices(a, c, None);
            let k = path_edges.len() as i64;
            return &LaurentPoly2::geom_sum(Var::X, k) * &self.tutte(&rest) + self.tutte(&merged);
        }

        // Plain step on an edge at a vertex of smallest degree.
        let w = (0..n).min_by_key(|&w| deg[w]).unwrap();
        let e = b
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, &(a, c))| a == w || c == w)
            .max_by_key(|(_, &(a, c))| deg[a] + deg[c])
            .map(|(i, _)| i)
            .unwrap();
        self.tutte(&b.delete_edge(e).unwrap()) + self.tutte(&b.contract_edge(e).unwrap())
    }
}

fn without_edges(g: &MultiGraph, drop: impl Fn((usize, usize)) -> bool) -> MultiGraph {
    let mut out = MultiGraph::new(g.vertex_count());
    for &e in g.edges() {
        if !drop(e) {
            out.add_edge(e.0, e.1).unwrap();
        }
    }
    out
}

/// Walks from degree-2 vertex `w` in both directions. Returns the end vertices,
/// the inner (degree-2) vertices and the edge indices of the path.
fn series_path(g: &MultiGraph, deg: &[usize], w: usize) -> ((usize, usize), Vec<usize>, Vec<usize>) {
    let incident = |v: usize| -> Vec<usize> {
        g.edges().iter().enumerate().filter(|(_, &(a, b))| a == v || b == v).map(|(i, _)| i).collect()
    };
    let other = |e: usize, v: usize| {
        let (a, b) = g.edges()[e];
        if a == v {
            b
        } else {
            a
        }
    };
    let mut inner = vec![w];
    let mut edges = Vec::new();
    let start = incident(w);
    let mut ends = [0usize; 2];
    for (side, &first) in start.iter().enumerate() {
        let mut prev_edge = first;
        let mut cur = other(first, w);
        edges.push(first);
        while deg[cur] == 2 && cur != w {
            inner.push(cur);
            let next = incident(cur).into_iter().find(|&e| e != prev_edge).unwrap();
            edges.push(next);
            prev_edge = next;
            cur = other(next, cur);
        }
        ends[side] = cur;
    }
    inner.sort_unstable();
    inner.dedup();
    edges.sort_unstable();
    edges.dedup();
    ((ends[0], ends[1]), inner, edges)
}

/// Textbook recursion with no shortcuts: loops give `y`, bridges `x`, otherwise delete + contract.
pub fn tutte_uncached(g: &MultiGraph) -> Result<LaurentPoly2, TutteError> {
    if g.edge_count() > UNCACHED_EDGE_LIMIT {
        return Err(TutteError::TooManyEdges(g.edge_count()));
    }
    Ok(plain(g))
}

fn plain(g: &MultiGraph) -> LaurentPoly2 {
    if g.edge_count() == 0 {
        return LaurentPoly2::one();
    }
    let e = g.edge_count() - 1;
    match g.classify_edge(e).unwrap() {
        EdgeKind::Loop => &LaurentPoly2::y() * &plain(&g.delete_edge(e).unwrap()),
        EdgeKind::Bridge => &LaurentPoly2::x() * &plain(&g.contract_edge(e).unwrap()),
        EdgeKind::Ordinary => plain(&g.delete_edge(e).unwrap()) + plain(&g.contract_edge(e).unwrap()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly2 {
        s.parse().unwrap()
    }

    #[test]
    fn small_goldens() {
        assert_eq!(tutte(&MultiGraph::cycle(1)), LaurentPoly2::y());
        assert_eq!(tutte(&MultiGraph::bond(1)), LaurentPoly2::x());
        assert_eq!(tutte(&MultiGraph::cycle(3)), p("x^2 + x + y"));
        assert_eq!(tutte(&MultiGraph::complete(4)), p("x^3 + 3x^2 + 2x + 4x*y + 2y + 3y^2 + y^3"));
        assert_eq!(tutte(&MultiGraph::new(3)), LaurentPoly2::one());
    }

    #[test]
    fn uncached_goldens() {
        assert_eq!(tutte_uncached(&MultiGraph::cycle(5)).unwrap(), p("x^4 + x^3 + x^2 + x + y"));
        assert_eq!(tutte_uncached(&MultiGraph::bond(2)).unwrap(), p("x + y"));
        assert_eq!(tutte_uncached(&MultiGraph::new(1)).unwrap(), LaurentPoly2::one());
        assert_eq!(tutte_uncached(&MultiGraph::bond(15)), Err(TutteError::TooManyEdges(15)));
    }

    #[test]
    fn theta_and_wheel_agree_with_plain() {
        let mut theta = MultiGraph::new(5);
        for (a, b) in [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)] {
            theta.add_edge(a, b).unwrap();
        }
        assert_eq!(tutte(&theta), tutte_uncached(&theta).unwrap());
        let w = MultiGraph::wheel(5);
        assert_eq!(tutte(&w), tutte_uncached(&w).unwrap());
    }
}
