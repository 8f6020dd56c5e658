//! Transfer systems on a grid: storage, axiom checking, closure, and the
//! connected-component structure.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{Edge, Grid, Vertex};
use crate::relation::BitMatrix;

/// A reflexive relation on grid vertices that satisfies the subgroup,
/// transitivity and restriction axioms. The diagonal is always stored, but
/// `edges` and `edge_count` only ever report strict edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TransferSystem {
    grid: Grid,
    rel: BitMatrix,
}

/// The axiom a candidate relation fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Subgroup,
    Transitivity,
    Restriction,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Violation {
    /// `edge.src` is not contained in `edge.dst`.
    Subgroup { edge: Edge },
    /// `missing.src -> via -> missing.dst` is present but not the composite.
    Transitivity { missing: Edge, via: Vertex },
    /// Restricting `edge` along `along` gives `missing`, which is absent.
    Restriction {
        missing: Edge,
        edge: Edge,
        along: Vertex,
    },
}

impl Violation {
    pub fn axiom(&self) -> Axiom {
        match self {
            Violation::Subgroup { .. } => Axiom::Subgroup,
            Violation::Transitivity { .. } => Axiom::Transitivity,
            Violation::Restriction { .. } => Axiom::Restriction,
        }
    }

    /// The edge the relation would need to gain, if any.
    pub fn missing(&self) -> Option<Edge> {
        match self {
            Violation::Subgroup { .. } => None,
            Violation::Transitivity { missing, .. } | Violation::Restriction { missing, .. } => {
                Some(*missing)
            }
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Subgroup { edge } => {
                write!(f, "subgroup: {} is not an inclusion", edge)
            }
            Violation::Transitivity { missing, via } => {
                write!(f, "transitivity: missing {} (through {})", missing, via)
            }
            Violation::Restriction {
                missing,
                edge,
                along,
            } => write!(
                f,
                "restriction: missing {} (restrict {} along {})",
                missing, edge, along
            ),
        }
    }
}

/// Checks whether the reflexive closure of `edges` is a transfer system on
/// `grid`. Out-of-bounds vertices are an input error; everything else is
/// reported as a violation. Each missing edge is reported once per axiom,
/// with the first witness in lexicographic order.
pub fn validate(grid: Grid, edges: &[Edge]) -> Result<Vec<Violation>> {
    for e in edges {
        grid.check_edge(*e)?;
    }
    let n = grid.vertex_count();
    let mut rel = BitMatrix::identity(n);
    let mut out = Vec::new();
    for e in edges {
        if !e.is_subgroup() {
            out.push(Violation::Subgroup { edge: *e });
        }
        rel.set(grid.index(e.src), grid.index(e.dst));
    }
    out.sort();
    out.dedup();

    let mut seen = BTreeSet::new();
    for a in 0..n {
        for b in rel.row_iter(a).filter(|&b| b != a) {
            for c in rel.row_iter(b).filter(|&c| c != b) {
                if !rel.get(a, c) && seen.insert((a, c)) {
                    out.push(Violation::Transitivity {
                        missing: Edge::new(grid.vertex(a), grid.vertex(c)),
                        via: grid.vertex(b),
                    });
                }
            }
        }
    }

    let mut seen = BTreeSet::new();
    let mut restriction = Vec::new();
    for a in 0..n {
        for b in rel.row_iter(a).filter(|&b| b != a) {
            for w in 0..n {
                let (x, y) = (grid.meet_idx(a, w), grid.meet_idx(b, w));
                if !rel.get(x, y) && seen.insert((x, y)) {
                    restriction.push(Violation::Restriction {
                        missing: Edge::new(grid.vertex(x), grid.vertex(y)),
                        edge: Edge::new(grid.vertex(a), grid.vertex(b)),
                        along: grid.vertex(w),
                    });
                }
            }
        }
    }
    out.extend(restriction);
    Ok(out)
}

fn check_admissible(grid: Grid, edges: &[Edge]) -> Result<()> {
    for e in edges {
        grid.check_edge(*e)?;
        if !e.is_subgroup() {
            return Err(Error::NotSubgroup(*e));
        }
    }
    Ok(())
}

/// One restriction pass over a snapshot of the strict edges. Restricting a
/// restriction is again a restriction, so one pass is closed.
pub(crate) fn restrict_pass(grid: Grid, rel: &mut BitMatrix) -> bool {
    let n = grid.vertex_count();
    let snapshot: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| rel.row_iter(a).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let mut changed = false;
    for (a, b) in snapshot {
        for w in 0..n {
            changed |= rel.set(grid.meet_idx(a, w), grid.meet_idx(b, w));
        }
    }
    changed
}

/// Round-robin fixpoint over restriction and transitivity.
pub(crate) fn close_in_place(grid: Grid, rel: &mut BitMatrix) {
    loop {
        let restricted = restrict_pass(grid, rel);
        let composed = rel.transitive_close();
        if !restricted && !composed {
            break;
        }
    }
}

/// The least transfer system containing `edges`.
pub fn transfer_closure(grid: Grid, edges: &[Edge]) -> Result<TransferSystem> {
    TransferSystem::closure(grid, edges)
}

impl TransferSystem {
    pub(crate) fn from_relation(grid: Grid, rel: BitMatrix) -> Self {
        debug_assert_eq!(rel.size(), grid.vertex_count());
        TransferSystem { grid, rel }
    }

    /// Only the reflexive edges.
    pub fn discrete(grid: Grid) -> Self {
        TransferSystem {
            grid,
            rel: BitMatrix::identity(grid.vertex_count()),
        }
    }

    /// Every admissible edge.
    pub fn complete(grid: Grid) -> Self {
        let n = grid.vertex_count();
        let mut rel = BitMatrix::new(n);
        for a in 0..n {
            for b in 0..n {
                if grid.leq_idx(a, b) {
                    rel.set(a, b);
                }
            }
        }
        TransferSystem { grid, rel }
    }

    /// Builds a transfer system from exactly the given strict edges, failing
    /// if they are not already closed.
    pub fn from_edges(grid: Grid, edges: &[Edge]) -> Result<Self> {
        let violations = validate(grid, edges)?;
        if let Some(v) = violations.first() {
            let extra = violations.len() - 1;
            let msg = if extra > 0 {
                format!("{} (and {} more)", v, extra)
            } else {
                v.to_string()
            };
            return Err(Error::NotTransferSystem(msg));
        }
        let mut rel = BitMatrix::identity(grid.vertex_count());
        for e in edges {
            rel.set(grid.index(e.src), grid.index(e.dst));
        }
        Ok(TransferSystem { grid, rel })
    }

    /// The least transfer system containing `edges`, computed as a fixpoint
    /// of restriction and transitivity.
    pub fn closure(grid: Grid, edges: &[Edge]) -> Result<Self> {
        check_admissible(grid, edges)?;
        let mut rel = BitMatrix::identity(grid.vertex_count());
        for e in edges {
            rel.set(grid.index(e.src), grid.index(e.dst));
        }
        close_in_place(grid, &mut rel);
        Ok(TransferSystem { grid, rel })
    }

    /// Closure as a single restriction pass followed by a single transitive
    /// closure. Agrees with [`TransferSystem::closure`]: a composite of
    /// restrictions is the restriction of the composite.
    pub fn closure_one_pass(grid: Grid, edges: &[Edge]) -> Result<Self> {
        check_admissible(grid, edges)?;
        let mut rel = BitMatrix::identity(grid.vertex_count());
        for e in edges {
            rel.set(grid.index(e.src), grid.index(e.dst));
        }
        restrict_pass(grid, &mut rel);
        rel.transitive_close();
        Ok(TransferSystem { grid, rel })
    }

    /// Least transfer system containing `self` and `extra`.
    pub fn extended(&self, extra: &[Edge]) -> Result<Self> {
        check_admissible(self.grid, extra)?;
        let mut rel = self.rel.clone();
        let mut fresh = false;
        for e in extra {
            fresh |= rel.set(self.grid.index(e.src), self.grid.index(e.dst));
        }
        if fresh {
            close_in_place(self.grid, &mut rel);
        }
        Ok(TransferSystem {
            grid: self.grid,
            rel,
        })
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub(crate) fn relation(&self) -> &BitMatrix {
        &self.rel
    }

    /// `u -> v`, reflexive pairs included. False for out-of-bounds vertices.
    pub fn contains(&self, u: Vertex, v: Vertex) -> bool {
        self.grid.contains(u)
            && self.grid.contains(v)
            && self.rel.get(self.grid.index(u), self.grid.index(v))
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.contains(e.src, e.dst)
    }

    #[inline]
    pub(crate) fn has(&self, a: usize, b: usize) -> bool {
        self.rel.get(a, b)
    }

    /// Strict edges ordered by `(src, dst)`.
    pub fn edges(&self) -> Vec<Edge> {
        let n = self.grid.vertex_count();
        let mut out = Vec::with_capacity(self.rel.count_ones().saturating_sub(n));
        for a in 0..n {
            for b in self.rel.row_iter(a).filter(|&b| b != a) {
                out.push(Edge::new(self.grid.vertex(a), self.grid.vertex(b)));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.rel.count_ones() - self.grid.vertex_count()
    }

    /// Containment of relations; systems on different grids are never nested.
    pub fn is_subset(&self, other: &TransferSystem) -> bool {
        self.grid == other.grid && self.rel.is_subset(&other.rel)
    }

    /// Intersection of two transfer systems on the same grid, which is again
    /// a transfer system.
    pub fn intersection(&self, other: &TransferSystem) -> Result<TransferSystem> {
        same_grid(self, other)?;
        let mut rel = self.rel.clone();
        rel.intersect_with(&other.rel);
        Ok(TransferSystem {
            grid: self.grid,
            rel,
        })
    }

    /// Swap the roles of `p` and `q`.
    pub fn transpose(&self) -> TransferSystem {
        let grid = self.grid.transpose();
        let edges: Vec<Edge> = self.edges().into_iter().map(Edge::transpose).collect();
        let mut rel = BitMatrix::identity(grid.vertex_count());
        for e in edges {
            rel.set(grid.index(e.src), grid.index(e.dst));
        }
        TransferSystem { grid, rel }
    }

    pub fn is_complete(&self) -> bool {
        *self == TransferSystem::complete(self.grid)
    }

    pub fn components(&self) -> ComponentPartition {
        ComponentPartition::of(self)
    }

    /// An undirected path of length at most two from `u` to `v`, listed as
    /// its vertices. `None` when the two lie in different components.
    ///
    /// A common lower bound `w` with `w -> u` and `w -> v` is preferred;
    /// otherwise a common upper bound.
    pub fn zigzag_path(&self, u: Vertex, v: Vertex) -> Result<Option<Vec<Vertex>>> {
        self.grid.check(u)?;
        self.grid.check(v)?;
        if u == v {
            return Ok(Some(vec![u]));
        }
        if self.contains(u, v) || self.contains(v, u) {
            return Ok(Some(vec![u, v]));
        }
        let g = self.grid;
        let (a, b) = (g.index(u), g.index(v));
        let n = g.vertex_count();
        if let Some(w) = (0..n).find(|&w| self.has(w, a) && self.has(w, b)) {
            return Ok(Some(vec![u, g.vertex(w), v]));
        }
        if let Some(w) = (0..n).find(|&w| self.has(a, w) && self.has(b, w)) {
            return Ok(Some(vec![u, g.vertex(w), v]));
        }
        Ok(None)
    }

    /// The lexicographically smallest vertex in the component of `v`.
    pub fn smallest_vertex(&self, v: Vertex) -> Result<Vertex> {
        self.grid.check(v)?;
        let parts = self.components();
        Ok(parts.smallest(parts.id_of(v)))
    }
}

pub(crate) fn same_grid(a: &TransferSystem, b: &TransferSystem) -> Result<()> {
    if a.grid != b.grid {
        return Err(Error::GridMismatch {
            left: a.grid,
            right: b.grid,
        });
    }
    Ok(())
}

/// Canonical order: by grid, then by the bit-vector of edges in `(src, dst)`
/// order with absent before present. The discrete system comes first and
/// the complete one last.
impl Ord for TransferSystem {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.grid.r, self.grid.s)
            .cmp(&(other.grid.r, other.grid.s))
            .then_with(|| self.rel.lex_cmp(&other.rel))
    }
}

impl PartialOrd for TransferSystem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TransferSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {{", self.grid)?;
        for (k, e) in self.edges().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, " {}", e)?;
        }
        write!(f, " }}")
    }
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // keep the smaller index as root so roots are lexicographic minima
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }
}

/// Connected components of the undirected graph underlying a transfer
/// system. Component ids follow the lexicographic order of the components'
/// smallest vertices, so the component of `(0,0)` is always id 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    grid: Grid,
    component_of: Vec<usize>,
    members: Vec<Vec<Vertex>>,
}

impl ComponentPartition {
    pub fn of(t: &TransferSystem) -> Self {
        let g = t.grid;
        let n = g.vertex_count();
        let mut sets = DisjointSets::new(n);
        for a in 0..n {
            for b in t.rel.row_iter(a) {
                sets.union(a, b);
            }
        }
        let mut id_of_root = vec![usize::MAX; n];
        let mut members: Vec<Vec<Vertex>> = Vec::new();
        let component_of = (0..n)
            .map(|x| {
                let root = sets.find(x);
                if id_of_root[root] == usize::MAX {
                    id_of_root[root] = members.len();
                    members.push(Vec::new());
                }
                members[id_of_root[root]].push(g.vertex(x));
                id_of_root[root]
            })
            .collect();
        ComponentPartition {
            grid: g,
            component_of,
            members,
        }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn count(&self) -> usize {
        self.members.len()
    }

    pub fn id_of(&self, v: Vertex) -> usize {
        self.component_of[self.grid.index(v)]
    }

    /// Members of a component in lexicographic order.
    pub fn members(&self, id: usize) -> &[Vertex] {
        &self.members[id]
    }

    pub fn smallest(&self, id: usize) -> Vertex {
        self.members[id][0]
    }

    pub fn same_component(&self, u: Vertex, v: Vertex) -> bool {
        self.id_of(u) == self.id_of(v)
    }

    pub fn check_id(&self, id: usize) -> Result<()> {
        if id < self.count() {
            Ok(())
        } else {
            Err(Error::BadComponent {
                id,
                count: self.count(),
            })
        }
    }

    /// Component ids indexed by vertex address.
    pub fn labels(&self) -> &[usize] {
        &self.component_of
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::edge;

    fn v(i: usize, j: usize) -> Vertex {
        Vertex::new(i, j)
    }

    /// Middle system of the three-component illustration on grid(2,1).
    fn middle() -> TransferSystem {
        TransferSystem::from_edges(
            Grid::new(2, 1),
            &[
                edge((0, 0), (0, 1)),
                edge((1, 0), (1, 1)),
                edge((1, 0), (2, 1)),
                edge((1, 0), (2, 0)),
            ],
        )
        .unwrap()
    }

    fn connected_p2q() -> TransferSystem {
        TransferSystem::from_edges(
            Grid::new(2, 1),
            &[
                edge((0, 1), (1, 1)),
                edge((0, 1), (2, 1)),
                edge((0, 0), (0, 1)),
                edge((0, 0), (1, 1)),
                edge((0, 0), (2, 0)),
                edge((0, 0), (1, 0)),
                edge((0, 0), (2, 1)),
                edge((1, 0), (1, 1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn validate_accepts_connected_example() {
        assert!(validate(Grid::new(2, 1), &connected_p2q().edges())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn validate_long_diagonal_alone() {
        let vs = validate(Grid::new(1, 1), &[edge((0, 0), (1, 1))]).unwrap();
        let missing: Vec<Edge> = vs.iter().filter_map(Violation::missing).collect();
        assert_eq!(missing, vec![edge((0, 0), (0, 1)), edge((0, 0), (1, 0))]);
        assert!(vs.iter().all(|x| x.axiom() == Axiom::Restriction));
    }

    #[test]
    fn validate_reports_both_axioms() {
        let vs = validate(
            Grid::new(1, 1),
            &[edge((0, 0), (1, 0)), edge((1, 0), (1, 1))],
        )
        .unwrap();
        assert_eq!(vs.len(), 2);
        assert_eq!(vs[0].axiom(), Axiom::Transitivity);
        assert_eq!(vs[0].missing(), Some(edge((0, 0), (1, 1))));
        assert_eq!(vs[1].axiom(), Axiom::Restriction);
        assert_eq!(vs[1].missing(), Some(edge((0, 0), (0, 1))));
    }

    #[test]
    fn validate_input_errors_are_distinct() {
        assert!(matches!(
            validate(Grid::new(1, 1), &[edge((0, 0), (2, 0))]),
            Err(Error::OutOfBounds { .. })
        ));
        let vs = validate(Grid::new(1, 1), &[edge((1, 0), (0, 1))]).unwrap();
        assert_eq!(vs[0].axiom(), Axiom::Subgroup);
    }

    #[test]
    fn closure_examples() {
        let g = Grid::new(1, 1);
        let t = transfer_closure(g, &[edge((0, 0), (1, 1))]).unwrap();
        assert_eq!(
            t.edges(),
            vec![
                edge((0, 0), (0, 1)),
                edge((0, 0), (1, 0)),
                edge((0, 0), (1, 1))
            ]
        );
        assert_eq!(transfer_closure(g, &[]).unwrap(), TransferSystem::discrete(g));

        // restriction gives (0,0)->(1,0) and (0,0)->(0,1); composing either
        // with the given edges then forces (0,0)->(1,1), so the closure is
        // complete
        let t = transfer_closure(g, &[edge((0, 1), (1, 1)), edge((1, 0), (1, 1))]).unwrap();
        assert!(t.contains(v(0, 0), v(1, 1)));
        assert!(t.is_complete());
    }

    #[test]
    fn closure_rejects_non_inclusions() {
        assert!(matches!(
            transfer_closure(Grid::new(1, 1), &[edge((1, 0), (0, 1))]),
            Err(Error::NotSubgroup(_))
        ));
    }

    #[test]
    fn components_examples() {
        let parts = middle().components();
        assert_eq!(parts.count(), 2);
        assert_eq!(parts.members(0), &[v(0, 0), v(0, 1)]);
        assert_eq!(parts.members(1), &[v(1, 0), v(1, 1), v(2, 0), v(2, 1)]);

        let d = TransferSystem::discrete(Grid::new(1, 1)).components();
        assert_eq!(d.count(), 4);
        assert_eq!(connected_p2q().components().count(), 1);
    }

    #[test]
    fn zigzag_examples() {
        let t = middle();
        assert_eq!(
            t.zigzag_path(v(1, 1), v(2, 0)).unwrap(),
            Some(vec![v(1, 1), v(1, 0), v(2, 0)])
        );
        assert_eq!(t.zigzag_path(v(1, 1), v(1, 1)).unwrap(), Some(vec![v(1, 1)]));
        assert_eq!(t.zigzag_path(v(0, 0), v(2, 1)).unwrap(), None);
    }

    #[test]
    fn smallest_vertex_examples() {
        let t = middle();
        assert_eq!(t.smallest_vertex(v(2, 1)).unwrap(), v(1, 0));
        assert_eq!(t.smallest_vertex(v(0, 0)).unwrap(), v(0, 0));
    }

    #[test]
    fn canonical_order_extremes() {
        let g = Grid::new(1, 1);
        let d = TransferSystem::discrete(g);
        let c = TransferSystem::complete(g);
        assert!(d < c);
        assert!(d < middle_like(g) && middle_like(g) < c);
    }

    fn middle_like(g: Grid) -> TransferSystem {
        transfer_closure(g, &[edge((0, 0), (1, 0))]).unwrap()
    }

    #[test]
    fn transpose_round_trip() {
        let t = connected_p2q();
        let tt = t.transpose();
        assert_eq!(tt.grid(), Grid::new(1, 2));
        assert!(tt.contains(v(1, 0), v(1, 2)));
        assert_eq!(tt.transpose(), t);
    }
}
