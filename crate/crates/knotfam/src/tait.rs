//! Checkerboard (Tait) graphs of concrete Conway symbols.
//!
//! Every tangle carries two two-terminal graphs, one per checkerboard coloring:
//! the *horizontal* form has the west and east regions as terminals, the *vertical* form the
//! north and south regions. An integer tangle `n` is an `n`-edge path horizontally and an
//! `n`-fold bond vertically. Sums compose horizontal forms in series and vertical forms in
//! parallel; rotation (a product with `0`, a factor of a product, a ramification branch) swaps
//! the two forms. Closing the horizontal form identifies its terminals; the vertical form is
//! already the other Tait graph of the same closure.

use crate::conway::{Base, ConwayAst, Tangle, Term};
use crate::graphcore::MultiGraph;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TaitError {
    #[error("symbol still has parameters: {0}")]
    NotConcrete(String),
    #[error("negative tangle {0} has no alternating Tait graph here")]
    NegativeTangle(i64),
    #[error("polyhedral symbol {0} needs build_polyhedral")]
    NotAlgebraic(String),
    #[error("no template for {0}")]
    NoTemplate(String),
}

/// A graph with two marked terminal vertices (equal when the tangle is closed up).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoTerminalGraph {
    pub graph: MultiGraph,
    pub terminal_a: usize,
    pub terminal_b: usize,
}

/// Which of the two checkerboard graphs to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Checkerboard {
    /// Coloring in which the integer tangle `p` gives the cycle `C_p`.
    #[default]
    Primary,
    /// The planar dual coloring.
    Dual,
}

impl Checkerboard {
    pub fn flip(self) -> Self {
        match self {
            Checkerboard::Primary => Checkerboard::Dual,
            Checkerboard::Dual => Checkerboard::Primary,
        }
    }
}

/// Disjoint union of `parts` followed by identifying the listed `(part, vertex)` pairs.
/// Returns the glued graph and, per part, the map from old to new vertex ids.
/// `((part, vertex), (part, vertex))` pairs to merge.
type Joint = ((usize, usize), (usize, usize));

fn glue(parts: &[&MultiGraph], identify: &[Joint]) -> (MultiGraph, Vec<Vec<usize>>) {
    let offsets: Vec<usize> = parts
        .iter()
        .scan(0, |acc, g| {
            let o = *acc;
            *acc += g.vertex_count();
            Some(o)
        })
        .collect();
    let total: usize = parts.iter().map(|g| g.vertex_count()).sum();
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    for &((pa, va), (pb, vb)) in identify {
        let (x, y) = (find(&mut parent, offsets[pa] + va), find(&mut parent, offsets[pb] + vb));
        if x != y {
            parent[x.max(y)] = x.min(y);
        }
    }
    let mut new_id = vec![usize::MAX; total];
    let mut next = 0;
    for v in 0..total {
        let r = find(&mut parent, v);
        if new_id[r] == usize::MAX {
            new_id[r] = next;
            next += 1;
        }
        new_id[v] = new_id[r];
    }
    let mut g = MultiGraph::new(next);
    let mut maps = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        let map: Vec<usize> = (0..part.vertex_count()).map(|v| new_id[offsets[i] + v]).collect();
        for &(a, b) in part.edges() {
            g.add_edge(map[a], map[b]).unwrap();
        }
        maps.push(map);
    }
    (g, maps)
}

impl TwoTerminalGraph {
    pub fn path(n: usize) -> Self {
        Self { graph: MultiGraph::path(n), terminal_a: 0, terminal_b: n }
    }

    pub fn bond(n: usize) -> Self {
        Self { graph: MultiGraph::bond(n), terminal_a: 0, terminal_b: 1 }
    }

    /// `self` then `other`, end to end.
    pub fn series(&self, other: &Self) -> Self {
        let (graph, maps) = glue(&[&self.graph, &other.graph], &[((0, self.terminal_b), (1, other.terminal_a))]);
        Self { graph, terminal_a: maps[0][self.terminal_a], terminal_b: maps[1][other.terminal_b] }
    }

    /// Both graphs between the same pair of terminals.
    pub fn parallel(&self, other: &Self) -> Self {
        let (graph, maps) = glue(
            &[&self.graph, &other.graph],
            &[((0, self.terminal_a), (1, other.terminal_a)), ((0, self.terminal_b), (1, other.terminal_b))],
        );
        Self { graph, terminal_a: maps[0][self.terminal_a], terminal_b: maps[0][self.terminal_b] }
    }
}

/// Closes a horizontal form by identifying its terminals.
///
/// ```
/// use knotfam::{graphcore::MultiGraph, tait::{close, TwoTerminalGraph}};
/// let c3 = close(&TwoTerminalGraph::path(3));
/// assert_eq!(c3.canonical_key(), MultiGraph::cycle(3).canonical_key());
/// ```
pub fn close(t: &TwoTerminalGraph) -> MultiGraph {
    if t.terminal_a == t.terminal_b {
        t.graph.clone()
    } else {
        t.graph.merge_vertices(t.terminal_a, t.terminal_b, None)
    }
}

/// Horizontal and vertical forms of a concrete algebraic tangle.
fn forms(t: &Tangle) -> Result<(TwoTerminalGraph, TwoTerminalGraph), TaitError> {
    Ok(match t {
        Tangle::Int(Term::Lit(n)) if *n >= 0 => {
            (TwoTerminalGraph::path(*n as usize), TwoTerminalGraph::bond(*n as usize))
        }
        Tangle::Int(Term::Lit(n)) => return Err(TaitError::NegativeTangle(*n)),
        Tangle::Int(Term::Param(p)) => return Err(TaitError::NotConcrete(p.clone())),
        Tangle::Product(items) => {
            let mut acc = forms(&items[0])?;
            for it in &items[1..] {
                let (h, v) = forms(it)?;
                acc = (acc.1.series(&h), acc.0.parallel(&v));
            }
            acc
        }
        Tangle::Ramification(items) => {
            let mut it = items.iter();
            let (h0, v0) = forms(it.next().unwrap())?;
            let (mut h, mut v) = (v0, h0);
            for t in it {
                let (hi, vi) = forms(t)?;
                h = h.series(&vi);
                v = v.parallel(&hi);
            }
            (h, v)
        }
        Tangle::Plus(base, add) => {
            let (hb, vb) = forms(base)?;
            let (ha, va) = forms(add)?;
            (hb.series(&ha), vb.parallel(&va))
        }
    })
}

fn algebraic(ast: &ConwayAst) -> Result<&Tangle, TaitError> {
    if !ast.is_concrete() {
        return Err(TaitError::NotConcrete(ast.params().join(",")));
    }
    match ast {
        ConwayAst::Tangle(t) => Ok(t),
        other => Err(TaitError::NotAlgebraic(other.to_string())),
    }
}

/// Horizontal form of an algebraic tangle; [`close`] turns it into the primary Tait graph.
pub fn build_tangle(ast: &ConwayAst) -> Result<TwoTerminalGraph, TaitError> {
    Ok(forms(algebraic(ast)?)?.0)
}

/// Vertical form of an algebraic tangle; as a plain graph it is the dual Tait graph.
pub fn build_tangle_vertical(ast: &ConwayAst) -> Result<TwoTerminalGraph, TaitError> {
    Ok(forms(algebraic(ast)?)?.1)
}

/// Index of the base edge a slot replaces and whether the slot's vertical form is used.
pub type Slot = (usize, bool);

/// Base graph of a basic polyhedron plus one attachment per vertex slot.
#[derive(Debug, Clone)]
pub struct Template {
    pub base: MultiGraph,
    pub slots: Vec<Slot>,
}

/// Templates for the slotted polyhedra. `6*` has two slot layouts: one for symbols that
/// start with a dot and one for symbols that fill the first slot.
pub fn template(base: &Base, leading_dot: bool, coloring: Checkerboard) -> Option<Template> {
    let (edges, slots): (Vec<(usize, usize)>, &[Slot]) = match (base, coloring) {
        (Base::Six, Checkerboard::Primary) => (wheel_edges(3), if leading_dot { SIX_DOT } else { SIX }),
        (Base::Six, Checkerboard::Dual) => (wheel_dual_edges(3), if leading_dot { SIX_DOT } else { SIX }),
        (Base::Eight, Checkerboard::Primary) => (wheel_edges(4), EIGHT),
        (Base::Eight, Checkerboard::Dual) => (wheel_dual_edges(4), EIGHT),
        (Base::Nine, Checkerboard::Primary) => (NINE_EDGES.to_vec(), NINE),
        (Base::Nine, Checkerboard::Dual) => (NINE_DUAL_EDGES.to_vec(), NINE),
        (Base::Antiprism(_), _) => return None,
    };
    let n = edges.iter().map(|&(a, b)| a.max(b)).max().unwrap() + 1;
    let mut g = MultiGraph::new(n);
    for (a, b) in edges {
        g.add_edge(a, b).unwrap();
    }
    let flip = coloring == Checkerboard::Dual;
    Some(Template { base: g, slots: slots.iter().map(|&(e, v)| (e, v != flip)).collect() })
}

/// Same edge order as [`MultiGraph::wheel`]: rim edges first, then spokes.
fn wheel_edges(n: usize) -> Vec<(usize, usize)> {
    (0..n).map(|i| (i, (i + 1) % n)).chain((0..n).map(|i| (i, n))).collect()
}

/// Planar dual of the wheel, edge `i` crossing edge `i` of [`wheel_edges`]. Vertex `i` is
/// the triangle on rim edge `i`, vertex `n` the outer face.
fn wheel_dual_edges(n: usize) -> Vec<(usize, usize)> {
    (0..n).map(|i| (i, n)).chain((0..n).map(|i| ((i + n - 1) % n, i))).collect()
}

// Triangular bipyramid: `Wh(5)` plus the chord (0,2). Hub is vertex 4.
const NINE_EDGES: &[(usize, usize)] = &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4), (2, 4), (3, 4), (0, 2)];
// Its dual, the triangular prism, edge for edge.
const NINE_DUAL_EDGES: &[(usize, usize)] = &[(0, 4), (1, 4), (2, 5), (3, 5), (0, 3), (0, 1), (1, 2), (2, 3), (4, 5)];

const SIX: &[Slot] = &[(0, false), (1, true), (4, false), (5, true), (3, false), (2, true)];
const SIX_DOT: &[Slot] = &[(0, false), (1, false), (2, true), (3, false), (4, true), (5, false)];
const EIGHT: &[Slot] = &[(1, false), (5, true), (0, false), (4, true), (3, false), (2, false), (6, false), (7, false)];
const NINE: &[Slot] =
    &[(0, true), (4, false), (1, false), (2, false), (3, false), (5, false), (6, false), (7, false), (8, false)];

/// Substitutes slot tangles into a template. Missing slots hold the tangle 1.
pub fn splice(tpl: &Template, slots: &[Option<Tangle>]) -> Result<MultiGraph, TaitError> {
    let mut parts: Vec<MultiGraph> = Vec::new();
    let mut identify = Vec::new();
    let mut replaced = vec![false; tpl.base.edge_count()];
    let mut pieces = Vec::new();
    for (i, &(edge, vertical)) in tpl.slots.iter().enumerate() {
        replaced[edge] = true;
        let piece = match slots.get(i).and_then(|s| s.as_ref()) {
            None => TwoTerminalGraph::path(1),
            Some(t) => {
                let (h, v) = forms(t)?;
                if vertical {
                    v
                } else {
                    h
                }
            }
        };
        pieces.push((edge, piece));
    }
    let mut skeleton = MultiGraph::new(tpl.base.vertex_count());
    for (i, &(a, b)) in tpl.base.edges().iter().enumerate() {
        if !replaced[i] {
            skeleton.add_edge(a, b).unwrap();
        }
    }
    parts.push(skeleton);
    for (k, (edge, piece)) in pieces.iter().enumerate() {
        let (u, v) = tpl.base.edges()[*edge];
        identify.push(((0, u), (k + 1, piece.terminal_a)));
        identify.push(((0, v), (k + 1, piece.terminal_b)));
        parts.push(piece.graph.clone());
    }
    let refs: Vec<&MultiGraph> = parts.iter().collect();
    Ok(glue(&refs, &identify).0)
}

/// Tait graph of a concrete polyhedral symbol.
pub fn build_polyhedral(ast: &ConwayAst, coloring: Checkerboard) -> Result<MultiGraph, TaitError> {
    if !ast.is_concrete() {
        return Err(TaitError::NotConcrete(ast.params().join(",")));
    }
    let ConwayAst::Polyhedron { base, slots } = ast else {
        return Err(TaitError::NoTemplate(ast.to_string()));
    };
    if let Base::Antiprism(Term::Lit(n)) = base {
        if slots.iter().all(|s| s.is_none()) {
            // Wheels are self-dual.
            return Ok(MultiGraph::wheel(*n as usize));
        }
        return Err(TaitError::NoTemplate(ast.to_string()));
    }
    let leading_dot = slots.first().is_some_and(|s| s.is_none());
    let tpl = template(base, leading_dot, coloring).ok_or_else(|| TaitError::NoTemplate(ast.to_string()))?;
    splice(&tpl, slots)
}

/// Tait graph of any concrete symbol in the requested coloring.
pub fn tait_graph(ast: &ConwayAst, coloring: Checkerboard) -> Result<MultiGraph, TaitError> {
    match ast {
        ConwayAst::Tangle(_) => {
            let (h, v) = forms(algebraic(ast)?)?;
            Ok(match coloring {
                Checkerboard::Primary => close(&h),
                Checkerboard::Dual => v.graph,
            })
        }
        ConwayAst::Polyhedron { .. } => build_polyhedral(ast, coloring),
    }
}
