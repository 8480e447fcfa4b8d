//! Undirected multigraphs with loops: deletion, contraction, blocks, canonical keys.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("edge index {0} out of range")]
    BadEdge(usize),
    #[error("cannot contract loop {0}")]
    LoopContraction(usize),
    #[error("vertex {0} out of range")]
    BadVertex(usize),
    #[error("graph text line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Kind of an edge relative to its graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    Loop,
    Bridge,
    Ordinary,
}

/// Undirected multigraph. Edges are an indexed list so parallel edges and loops are first-class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

/// Blocks of a graph with bridges and loops counted separately.
#[derive(Debug, Clone)]
pub struct BlockDecomposition {
    /// Maximal biconnected pieces with at least one cycle, vertices renumbered from 0.
    pub blocks: Vec<MultiGraph>,
    pub bridge_count: usize,
    pub loop_count: usize,
    /// Articulation vertices of the input.
    pub cut_vertices: Vec<usize>,
}

impl MultiGraph {
    pub fn new(vertex_count: usize) -> Self {
        Self { vertex_count, edges: Vec::new() }
    }

    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::new(vertex_count);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn add_vertex(&mut self) -> usize {
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<usize, GraphError> {
        for w in [u, v] {
            if w >= self.vertex_count {
                return Err(GraphError::BadVertex(w));
            }
        }
        self.edges.push((u.min(v), u.max(v)));
        Ok(self.edges.len() - 1)
    }

    /// Cycle on `n` vertices; `n = 1` is a loop, `n = 2` a double edge.
    pub fn cycle(n: usize) -> Self {
        let mut g = Self::new(n);
        for i in 0..n {
            g.edges.push(sorted(i, (i + 1) % n));
        }
        g
    }

    /// Path with `n` edges.
    pub fn path(n: usize) -> Self {
        let mut g = Self::new(n + 1);
        for i in 0..n {
            g.edges.push((i, i + 1));
        }
        g
    }

    /// Two vertices joined by `n` parallel edges.
    pub fn bond(n: usize) -> Self {
        Self { vertex_count: 2, edges: vec![(0, 1); n] }
    }

    /// Wheel with `rim` rim vertices plus a hub (vertex `rim`).
    pub fn wheel(rim: usize) -> Self {
        let mut g = Self::cycle(rim);
        let hub = g.add_vertex();
        for i in 0..rim {
            g.edges.push((i, hub));
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::new(n);
        for i in 0..n {
            for j in i + 1..n {
                g.edges.push((i, j));
            }
        }
        g
    }

    /// Disjoint union followed by identifying vertex `a` of `self` with vertex `b` of `other`.
    pub fn one_point_union(&self, a: usize, other: &MultiGraph, b: usize) -> MultiGraph {
        let off = self.vertex_count;
        let map = |v: usize| {
            if v == b {
                a
            } else if v < b {
                off + v
            } else {
                off + v - 1
            }
        };
        let mut g = Self::new(self.vertex_count + other.vertex_count - 1);
        g.edges.extend_from_slice(&self.edges);
        for &(u, v) in &other.edges {
            g.edges.push(sorted(map(u), map(v)));
        }
        g
    }

    /// Renames vertex `v` to `perm[v]`; `perm` must be a permutation.
    pub fn relabel(&self, perm: &[usize]) -> MultiGraph {
        Self {
            vertex_count: self.vertex_count,
            edges: self.edges.iter().map(|&(u, v)| sorted(perm[u], perm[v])).collect(),
        }
    }

    /// Same graph with the edge list reordered by `order`.
    pub fn reorder_edges(&self, order: &[usize]) -> MultiGraph {
        Self { vertex_count: self.vertex_count, edges: order.iter().map(|&i| self.edges[i]).collect() }
    }

    pub fn delete_edge(&self, e: usize) -> Result<MultiGraph, GraphError> {
        if e >= self.edges.len() {
            return Err(GraphError::BadEdge(e));
        }
        let mut g = self.clone();
        g.edges.remove(e);
        Ok(g)
    }

    /// Removes edge `e` and merges its endpoints; other edges between them become loops.
    pub fn contract_edge(&self, e: usize) -> Result<MultiGraph, GraphError> {
        let &(u, v) = self.edges.get(e).ok_or(GraphError::BadEdge(e))?;
        if u == v {
            return Err(GraphError::LoopContraction(e));
        }
        Ok(self.merge_vertices(u, v, Some(e)))
    }

    /// Identifies `u` and `v` (`u != v`), optionally dropping one edge; vertex `v` disappears.
    pub fn merge_vertices(&self, u: usize, v: usize, drop_edge: Option<usize>) -> MultiGraph {
        let (keep, gone) = (u.min(v), u.max(v));
        let map = |w: usize| {
            let w = if w == gone { keep } else { w };
            if w > gone {
                w - 1
            } else {
                w
            }
        };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != drop_edge)
            .map(|(_, &(a, b))| sorted(map(a), map(b)))
            .collect();
        MultiGraph { vertex_count: self.vertex_count - 1, edges }
    }

    /// Drops the listed vertices (which must be isolated after edge removal by the caller)
    /// together with every edge touching them.
    pub fn remove_vertices(&self, gone: &[usize]) -> MultiGraph {
        let mut map = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        for (v, slot) in map.iter_mut().enumerate() {
            if !gone.contains(&v) {
                *slot = next;
                next += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| map[a] != usize::MAX && map[b] != usize::MAX)
            .map(|&(a, b)| (map[a], map[b]))
            .collect();
        MultiGraph { vertex_count: next, edges }
    }

    pub fn classify_edge(&self, e: usize) -> Result<EdgeKind, GraphError> {
        let &(u, v) = self.edges.get(e).ok_or(GraphError::BadEdge(e))?;
        if u == v {
            return Ok(EdgeKind::Loop);
        }
        let mut uf = UnionFind::new(self.vertex_count);
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if i != e {
                uf.union(a, b);
            }
        }
        Ok(if uf.find(u) == uf.find(v) { EdgeKind::Ordinary } else { EdgeKind::Bridge })
    }

    /// Component index for every vertex, plus the number of components.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(self.vertex_count);
        for &(a, b) in &self.edges {
            uf.union(a, b);
        }
        let mut label = vec![usize::MAX; self.vertex_count];
        let mut roots = BTreeMap::new();
        for (v, slot) in label.iter_mut().enumerate() {
            let r = uf.find(v);
            let n = roots.len();
            *slot = *roots.entry(r).or_insert(n);
        }
        (label, roots.len())
    }

    pub fn component_count(&self) -> usize {
        self.component_labels().1
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count <= 1 || self.component_count() == 1
    }

    /// Splits into connected components (isolated vertices become 1-vertex graphs).
    pub fn components(&self) -> Vec<MultiGraph> {
        let (label, k) = self.component_labels();
        let mut local = vec![0usize; self.vertex_count];
        let mut parts: Vec<MultiGraph> = (0..k).map(|_| MultiGraph::new(0)).collect();
        for v in 0..self.vertex_count {
            local[v] = parts[label[v]].add_vertex();
        }
        for &(a, b) in &self.edges {
            parts[label[a]].edges.push((local[a], local[b]));
        }
        parts
    }

    /// Vertex degrees, loops counting twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertex_count];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    /// Biconnected decomposition. Works on any graph; each component is handled separately.
    pub fn block_decompose(&self) -> BlockDecomposition {
        let n = self.vertex_count;
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        let mut loop_count = 0;
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if a == b {
                loop_count += 1;
            } else {
                adj[a].push((b, i));
                adj[b].push((a, i));
            }
        }
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut timer = 0;
        let mut edge_stack: Vec<usize> = Vec::new();
        let mut is_cut = vec![false; n];
        let mut groups: Vec<Vec<usize>> = Vec::new();

        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut root_children = 0;
            // (vertex, parent edge, next adjacency index)
            let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
            while let Some(&(v, pe, idx)) = stack.last() {
                if idx < adj[v].len() {
                    let (w, e) = adj[v][idx];
                    stack.last_mut().unwrap().2 += 1;
                    if e == pe {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        edge_stack.push(e);
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        if v == root {
                            root_children += 1;
                        }
                        stack.push((w, e, 0));
                    } else if disc[w] < disc[v] {
                        edge_stack.push(e);
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[v]);
                        if low[v] >= disc[p] {
                            if p != root {
                                is_cut[p] = true;
                            }
                            let mut group = Vec::new();
                            while let Some(e) = edge_stack.pop() {
                                group.push(e);
                                if e == pe {
                                    break;
                                }
                            }
                            groups.push(group);
                        }
                    }
                }
            }
            if root_children > 1 {
                is_cut[root] = true;
            }
        }

        let mut blocks = Vec::new();
        let mut bridge_count = 0;
        for group in groups {
            if group.len() == 1 {
                bridge_count += 1;
                continue;
            }
            blocks.push(self.edge_subgraph(&group));
        }
        BlockDecomposition { blocks, bridge_count, loop_count, cut_vertices: (0..n).filter(|&v| is_cut[v]).collect() }
    }

    /// Subgraph induced by an edge set, vertices renumbered in first-seen order.
    pub fn edge_subgraph(&self, edge_ids: &[usize]) -> MultiGraph {
        let mut map = BTreeMap::new();
        let mut ids: Vec<usize> = edge_ids.to_vec();
        ids.sort_unstable();
        let mut g = MultiGraph::new(0);
        for e in ids {
            let (a, b) = self.edges[e];
            let na = *map.entry(a).or_insert_with(|| g.add_vertex());
            let nb = *map.entry(b).or_insert_with(|| g.add_vertex());
            g.edges.push(sorted(na, nb));
        }
        g
    }

    /// Isomorphism-invariant key that also fully encodes the graph.
    ///
    /// Vertices are colored by iterated neighbourhood refinement (multiplicity aware), ordered by
    /// color, and the adjacency multiset is written out under that order. Equal keys always mean
    /// isomorphic graphs; isomorphic graphs usually, but not always, get equal keys.
    pub fn canonical_key(&self) -> Vec<u8> {
        let n = self.vertex_count;
        let mut mult: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for &(a, b) in &self.edges {
            *mult.entry((a, b)).or_default() += 1;
        }
        let mut nbrs: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
        let mut loops = vec![0u32; n];
        for (&(a, b), &m) in &mult {
            if a == b {
                loops[a] = m;
            } else {
                nbrs[a].push((b, m));
                nbrs[b].push((a, m));
            }
        }
        let mut color: Vec<usize> = {
            let sig: Vec<(usize, u32)> =
                (0..n).map(|v| (nbrs[v].iter().map(|x| x.1 as usize).sum::<usize>(), loops[v])).collect();
            rank(&sig)
        };
        let mut classes = count_distinct(&color);
        for round in 0.. {
            let sig: Vec<(usize, Vec<(usize, u32)>)> = (0..n)
                .map(|v| {
                    let mut s: Vec<(usize, u32)> = nbrs[v].iter().map(|&(w, m)| (color[w], m)).collect();
                    s.sort_unstable();
                    (color[v], s)
                })
                .collect();
            let next = rank(&sig);
            let k = count_distinct(&next);
            color = next;
            if k == classes && round >= 1 {
                break;
            }
            classes = k;
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (color[v], v));
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut enc: Vec<(u32, u32, u32)> = mult
            .iter()
            .map(|(&(a, b), &m)| {
                let (x, y) = sorted(pos[a], pos[b]);
                (x as u32, y as u32, m)
            })
            .collect();
        enc.sort_unstable();
        let mut key = Vec::with_capacity(4 + enc.len() * 6);
        push_varint(&mut key, n as u64);
        for (a, b, m) in enc {
            push_varint(&mut key, a as u64);
            push_varint(&mut key, b as u64);
            push_varint(&mut key, m as u64);
        }
        key
    }
}

fn rank<T: Ord + Clone>(sig: &[T]) -> Vec<usize> {
    let mut sorted_sigs: Vec<T> = sig.to_vec();
    sorted_sigs.sort();
    sorted_sigs.dedup();
    sig.iter().map(|s| sorted_sigs.binary_search(s).unwrap()).collect()
}

fn count_distinct(c: &[usize]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn push_varint(out: &mut Vec<u8>, mut v: u64) {
    loop {
        let byte = (v & 0x7f) as u8;
        v >>= 7;
        if v == 0 {
            out.push(byte);
            return;
        }
        out.push(byte | 0x80);
    }
}

fn sorted(a: usize, b: usize) -> (usize, usize) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Text form: `vertices N` followed by one `u v` line per edge.
impl fmt::Display for MultiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "vertices {}", self.vertex_count)?;
        for (u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

impl FromStr for MultiGraph {
    type Err = GraphError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut lines =
            s.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let bad = |line: usize, msg: &str| GraphError::Parse { line, msg: msg.to_string() };
        let (ln, head) = lines.next().ok_or_else(|| bad(1, "missing `vertices N` header"))?;
        let n = head
            .strip_prefix("vertices")
            .and_then(|r| r.trim().parse::<usize>().ok())
            .ok_or_else(|| bad(ln, "expected `vertices N`"))?;
        let mut g = MultiGraph::new(n);
        for (ln, line) in lines {
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| bad(ln, "expected two vertex ids")))
                .collect::<Result<_, _>>()?;
            if nums.len() != 2 {
                return Err(bad(ln, "expected two vertex ids"));
            }
            g.add_edge(nums[0], nums[1]).map_err(|_| bad(ln, "vertex id out of range"))?;
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deletion_examples() {
        let p = MultiGraph::cycle(3).delete_edge(1).unwrap();
        assert_eq!(p.edge_count(), 2);
        assert!(p.is_connected());
        let l = MultiGraph::cycle(1).delete_edge(0).unwrap();
        assert_eq!((l.vertex_count(), l.edge_count()), (1, 0));
        assert_eq!(MultiGraph::bond(2).delete_edge(0).unwrap(), MultiGraph::bond(1));
        assert_eq!(MultiGraph::bond(1).delete_edge(3), Err(GraphError::BadEdge(3)));
    }

    #[test]
    fn contraction_examples() {
        let g = MultiGraph::bond(1).contract_edge(0).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
        let g = MultiGraph::bond(2).contract_edge(0).unwrap();
        assert_eq!(g.edges(), &[(0, 0)]);
        let g = MultiGraph::cycle(3).contract_edge(0).unwrap();
        assert_eq!(g.canonical_key(), MultiGraph::bond(2).canonical_key());
        assert_eq!(MultiGraph::cycle(1).contract_edge(0), Err(GraphError::LoopContraction(0)));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(MultiGraph::path(3).classify_edge(1).unwrap(), EdgeKind::Bridge);
        assert_eq!(MultiGraph::cycle(1).classify_edge(0).unwrap(), EdgeKind::Loop);
        assert_eq!(MultiGraph::cycle(3).classify_edge(2).unwrap(), EdgeKind::Ordinary);
    }

    #[test]
    fn blocks_examples() {
        let bowtie = MultiGraph::cycle(3).one_point_union(0, &MultiGraph::cycle(3), 0);
        let d = bowtie.block_decompose();
        assert_eq!(d.blocks.len(), 2);
        assert_eq!(d.cut_vertices, vec![0]);
        for b in &d.blocks {
            assert_eq!(b.canonical_key(), MultiGraph::cycle(3).canonical_key());
        }
        let d = MultiGraph::path(4).block_decompose();
        assert_eq!((d.blocks.len(), d.bridge_count), (0, 4));
        let d = MultiGraph::cycle(5).block_decompose();
        assert_eq!(d.blocks.len(), 1);
        assert_eq!(d.blocks[0].canonical_key(), MultiGraph::cycle(5).canonical_key());
    }

    #[test]
    fn key_examples() {
        let a = MultiGraph::cycle(3);
        let b = a.relabel(&[2, 0, 1]);
        assert_eq!(a.canonical_key(), b.canonical_key());
        assert_ne!(a.canonical_key(), MultiGraph::path(2).canonical_key());
        assert_ne!(MultiGraph::bond(2).canonical_key(), MultiGraph::bond(1).canonical_key());
    }

    #[test]
    fn text_round_trip() {
        let g = MultiGraph::wheel(4);
        let back: MultiGraph = g.to_string().parse().unwrap();
        assert_eq!(g, back);
        assert!("vertices 2\n0 5\n".parse::<MultiGraph>().is_err());
        assert!("nope".parse::<MultiGraph>().is_err());
    }
}
