//! The divisor grid of `C_{p^r q^s}`.
//!
//! Vertex `(i, j)` stands for the subgroup of order `p^i q^j`. Inclusion of
//! subgroups is the coordinatewise order and intersection is the
//! coordinatewise minimum. Vertices are addressed by `i * (s + 1) + j`, which
//! is also their position in the lexicographic order (columns left to right,
//! each column bottom to top).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::transfer::TransferSystem;

/// A subgroup, given by its exponents of `p` and `q`.
///
/// The derived `Ord` is the lexicographic order on `(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct Vertex {
    pub i: usize,
    pub j: usize,
}

impl Vertex {
    pub const fn new(i: usize, j: usize) -> Self {
        Vertex { i, j }
    }

    pub const ORIGIN: Vertex = Vertex::new(0, 0);

    /// Subgroup inclusion.
    pub fn leq(self, other: Vertex) -> bool {
        self.i <= other.i && self.j <= other.j
    }

    /// Subgroup intersection.
    pub fn meet(self, other: Vertex) -> Vertex {
        Vertex::new(self.i.min(other.i), self.j.min(other.j))
    }

    pub fn lex_less(self, other: Vertex) -> bool {
        self < other
    }

    pub fn transpose(self) -> Vertex {
        Vertex::new(self.j, self.i)
    }
}

impl From<(usize, usize)> for Vertex {
    fn from((i, j): (usize, usize)) -> Self {
        Vertex::new(i, j)
    }
}

impl From<Vertex> for (usize, usize) {
    fn from(v: Vertex) -> Self {
        (v.i, v.j)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// A directed pair `src -> dst`. Whether it is admissible (src <= dst) is
/// checked where edges enter a transfer system, not here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(Vertex, Vertex)", into = "(Vertex, Vertex)")]
pub struct Edge {
    pub src: Vertex,
    pub dst: Vertex,
}

impl Edge {
    pub const fn new(src: Vertex, dst: Vertex) -> Self {
        Edge { src, dst }
    }

    pub fn is_subgroup(self) -> bool {
        self.src.leq(self.dst)
    }

    pub fn is_strict(self) -> bool {
        self.src != self.dst
    }

    pub fn transpose(self) -> Edge {
        Edge::new(self.src.transpose(), self.dst.transpose())
    }
}

impl From<(Vertex, Vertex)> for Edge {
    fn from((src, dst): (Vertex, Vertex)) -> Self {
        Edge::new(src, dst)
    }
}

impl From<Edge> for (Vertex, Vertex) {
    fn from(e: Edge) -> Self {
        (e.src, e.dst)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.src, self.dst)
    }
}

/// Shorthand for building edges in tests and fixtures.
pub fn edge(a: (usize, usize), b: (usize, usize)) -> Edge {
    Edge::new(a.into(), b.into())
}

/// The `(r+1) x (s+1)` subgroup lattice of `C_{p^r q^s}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Grid {
    pub r: usize,
    pub s: usize,
}

impl Grid {
    pub const fn new(r: usize, s: usize) -> Self {
        Grid { r, s }
    }

    /// The chain `C_{p^n}`, drawn horizontally.
    pub const fn chain(n: usize) -> Self {
        Grid::new(n, 0)
    }

    pub fn vertex_count(&self) -> usize {
        (self.r + 1) * (self.s + 1)
    }

    pub fn is_chain(&self) -> bool {
        self.r == 0 || self.s == 0
    }

    pub fn top(&self) -> Vertex {
        Vertex::new(self.r, self.s)
    }

    pub fn transpose(&self) -> Grid {
        Grid::new(self.s, self.r)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v.i <= self.r && v.j <= self.s
    }

    pub fn check(&self, v: Vertex) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::OutOfBounds {
                vertex: v,
                grid: *self,
            })
        }
    }

    pub fn check_edge(&self, e: Edge) -> Result<()> {
        self.check(e.src)?;
        self.check(e.dst)
    }

    /// Bit-matrix address of an in-bounds vertex.
    #[inline]
    pub fn index(&self, v: Vertex) -> usize {
        debug_assert!(self.contains(v));
        v.i * (self.s + 1) + v.j
    }

    #[inline]
    pub fn vertex(&self, idx: usize) -> Vertex {
        debug_assert!(idx < self.vertex_count());
        Vertex::new(idx / (self.s + 1), idx % (self.s + 1))
    }

    /// All vertices in lexicographic order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.vertex_count()).map(move |k| self.vertex(k))
    }

    #[inline]
    pub(crate) fn leq_idx(&self, a: usize, b: usize) -> bool {
        let w = self.s + 1;
        a / w <= b / w && a % w <= b % w
    }

    #[inline]
    pub(crate) fn meet_idx(&self, a: usize, b: usize) -> usize {
        let w = self.s + 1;
        (a / w).min(b / w) * w + (a % w).min(b % w)
    }

    pub fn leq(&self, u: Vertex, v: Vertex) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        Ok(u.leq(v))
    }

    pub fn meet(&self, u: Vertex, v: Vertex) -> Result<Vertex> {
        self.check(u)?;
        self.check(v)?;
        Ok(u.meet(v))
    }

    pub fn lex_less(&self, u: Vertex, v: Vertex) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        Ok(u.lex_less(v))
    }

    /// Every strict edge `u -> v` with `u < v`, ordered by `(src, dst)`.
    pub fn strict_pairs(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for u in self.vertices() {
            for v in self.vertices() {
                if u != v && u.leq(v) {
                    out.push(Edge::new(u, v));
                }
            }
        }
        out
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "grid({},{})", self.r, self.s)
    }
}

/// The transfer system containing every admissible edge.
pub fn complete_relation(grid: Grid) -> TransferSystem {
    TransferSystem::complete(grid)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(i: usize, j: usize) -> Vertex {
        Vertex::new(i, j)
    }

    #[test]
    fn leq_examples() {
        let g = Grid::new(2, 2);
        assert!(g.leq(v(0, 0), v(2, 1)).unwrap());
        assert!(!g.leq(v(1, 0), v(0, 1)).unwrap());
        assert!(g.leq(v(1, 1), v(1, 1)).unwrap());
        assert!(matches!(
            g.leq(v(3, 0), v(0, 0)),
            Err(Error::OutOfBounds { .. })
        ));
    }

    #[test]
    fn meet_examples() {
        let g = Grid::new(2, 2);
        assert_eq!(g.meet(v(1, 0), v(0, 1)).unwrap(), v(0, 0));
        assert_eq!(g.meet(v(2, 1), v(1, 2)).unwrap(), v(1, 1));
        assert_eq!(g.meet(v(2, 2), v(2, 2)).unwrap(), v(2, 2));
    }

    #[test]
    fn lex_examples() {
        let g = Grid::new(2, 2);
        // end of one column precedes the bottom of the next
        assert!(g.lex_less(v(0, 2), v(1, 0)).unwrap());
        assert!(g.lex_less(v(1, 0), v(1, 1)).unwrap());
        assert!(!g.lex_less(v(1, 1), v(1, 1)).unwrap());
    }

    #[test]
    fn complete_relation_edge_counts() {
        // comparable pairs sum_{(i,j)} (i+1)(j+1) minus the diagonal
        let brute = |g: Grid| {
            let mut n = 0;
            for a in g.vertices() {
                for b in g.vertices() {
                    if a != b && a.leq(b) {
                        n += 1;
                    }
                }
            }
            n
        };
        assert_eq!(brute(Grid::new(2, 1)), 12);
        assert_eq!(complete_relation(Grid::new(2, 1)).edge_count(), 12);
        assert_eq!(complete_relation(Grid::new(0, 0)).edge_count(), 0);
        assert_eq!(complete_relation(Grid::new(1, 1)).edge_count(), 5);
    }

    #[test]
    fn index_round_trip() {
        let g = Grid::new(3, 2);
        for (k, v) in g.vertices().enumerate() {
            assert_eq!(g.index(v), k);
            assert_eq!(g.vertex(k), v);
        }
    }

    fn grid_and_vertices() -> impl Strategy<Value = (Grid, Vertex, Vertex, Vertex)> {
        (0usize..5, 0usize..5).prop_flat_map(|(r, s)| {
            let vert = (0..=r, 0..=s).prop_map(|(i, j)| Vertex::new(i, j));
            (Just(Grid::new(r, s)), vert.clone(), vert.clone(), vert)
        })
    }

    proptest! {
        #[test]
        fn meet_is_greatest_lower_bound((_g, a, b, c) in grid_and_vertices()) {
            let m = a.meet(b);
            prop_assert!(m.leq(a) && m.leq(b));
            if c.leq(a) && c.leq(b) {
                prop_assert!(c.leq(m));
            }
        }

        #[test]
        fn leq_is_partial_order((_g, a, b, c) in grid_and_vertices()) {
            prop_assert!(a.leq(a));
            if a.leq(b) && b.leq(a) {
                prop_assert_eq!(a, b);
            }
            if a.leq(b) && b.leq(c) {
                prop_assert!(a.leq(c));
            }
        }

        #[test]
        fn lex_extends_leq((g, a, b, _c) in grid_and_vertices()) {
            // exactly one of a<b, b<a, a=b
            let n = [a.lex_less(b), b.lex_less(a), a == b].iter().filter(|x| **x).count();
            prop_assert_eq!(n, 1);
            if a.leq(b) && a != b {
                prop_assert!(a.lex_less(b));
            }
            prop_assert_eq!(a.lex_less(b), g.index(a) < g.index(b));
            prop_assert_eq!(g.meet_idx(g.index(a), g.index(b)), g.index(a.meet(b)));
            prop_assert_eq!(g.leq_idx(g.index(a), g.index(b)), a.leq(b));
        }
    }
}
