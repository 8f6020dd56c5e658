//! Exhaustive generation of transfer systems on small grids.
//!
//! Depth-first search over the strict edges in `(src, dst)` order. Each
//! edge is either excluded or included; including it takes the transfer
//! closure, and a branch dies as soon as the closure would contain an edge
//! already excluded. Edges forced by earlier choices are skipped, so every
//! transfer system is reached by exactly one path.

use std::str::FromStr;

use crate::classify::is_lsp_fast;
use crate::compatibility::compatible_supersets_with_limit;
use crate::error::{Error, Result};
use crate::lattice::Grid;
use crate::relation::BitMatrix;
use crate::saturation::{is_connected, is_saturated};
use crate::transfer::{close_in_place, TransferSystem};

/// Largest grid (in vertices) enumerated unless a caller raises the limit.
pub const DEFAULT_VERTEX_LIMIT: usize = 12;

#[derive(Debug, Clone)]
pub struct Enumerator {
    grid: Grid,
    limit: usize,
}

impl Enumerator {
    pub fn new(grid: Grid) -> Self {
        Enumerator {
            grid,
            limit: DEFAULT_VERTEX_LIMIT,
        }
    }

    pub fn vertex_limit(mut self, limit: usize) -> Self {
        self.limit = limit;
        self
    }

    fn guard(&self) -> Result<()> {
        let vertices = self.grid.vertex_count();
        if vertices > self.limit {
            return Err(Error::GuardExceeded {
                grid: self.grid,
                vertices,
                limit: self.limit,
            });
        }
        Ok(())
    }

    /// Every transfer system on the grid, in canonical order.
    pub fn all(&self) -> Result<Vec<TransferSystem>> {
        self.supersets_of(&TransferSystem::discrete(self.grid))
    }

    /// Every transfer system containing `base`, in canonical order.
    pub fn supersets_of(&self, base: &TransferSystem) -> Result<Vec<TransferSystem>> {
        if base.grid() != self.grid {
            return Err(Error::GridMismatch {
                left: self.grid,
                right: base.grid(),
            });
        }
        self.guard()?;
        let mut out = Vec::new();
        self.walk(base.relation().clone(), &mut |rel| {
            out.push(TransferSystem::from_relation(self.grid, rel.clone()))
        });
        out.sort();
        debug_assert!(out.windows(2).all(|w| w[0] != w[1]));
        Ok(out)
    }

    pub fn count(&self) -> Result<u64> {
        self.guard()?;
        let mut n = 0u64;
        self.walk(TransferSystem::discrete(self.grid).relation().clone(), &mut |_| n += 1);
        Ok(n)
    }

    fn walk(&self, start: BitMatrix, visit: &mut dyn FnMut(&BitMatrix)) {
        let g = self.grid;
        let candidates: Vec<(usize, usize)> = g
            .strict_pairs()
            .into_iter()
            .map(|e| (g.index(e.src), g.index(e.dst)))
            .collect();
        let mut excluded = BitMatrix::new(g.vertex_count());
        search(g, &candidates, 0, start, &mut excluded, visit);
    }
}

fn search(
    grid: Grid,
    candidates: &[(usize, usize)],
    mut k: usize,
    current: BitMatrix,
    excluded: &mut BitMatrix,
    visit: &mut dyn FnMut(&BitMatrix),
) {
    while k < candidates.len() && current.get(candidates[k].0, candidates[k].1) {
        k += 1;
    }
    let Some(&(a, b)) = candidates.get(k) else {
        visit(&current);
        return;
    };

    let mut with = current.clone();
    with.set(a, b);
    close_in_place(grid, &mut with);

    excluded.set(a, b);
    search(grid, candidates, k + 1, current, excluded, visit);
    excluded.clear(a, b);

    if !with.intersects(excluded) {
        search(grid, candidates, k + 1, with, excluded, visit);
    }
}

pub fn enumerate_transfer_systems(grid: Grid) -> Result<Vec<TransferSystem>> {
    Enumerator::new(grid).all()
}

pub fn count_transfer_systems(grid: Grid) -> Result<u64> {
    Enumerator::new(grid).count()
}

/// Number of pairs `T ⊆ T'` with `(T, T')` compatible.
pub fn count_compatible_pairs(grid: Grid) -> Result<u64> {
    let mut total = 0u64;
    for t in enumerate_transfer_systems(grid)? {
        total += compatible_supersets_with_limit(&t, DEFAULT_VERTEX_LIMIT)?.len() as u64;
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Filter {
    Saturated,
    Connected,
    Lsp,
}

impl Filter {
    pub fn accepts(self, t: &TransferSystem) -> bool {
        match self {
            Filter::Saturated => is_saturated(t),
            Filter::Connected => is_connected(t),
            Filter::Lsp => is_lsp_fast(t).is_lsp,
        }
    }
}

impl FromStr for Filter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "saturated" => Ok(Filter::Saturated),
            "connected" => Ok(Filter::Connected),
            "lsp" => Ok(Filter::Lsp),
            other => Err(Error::OutOfRange(format!("unknown filter '{}'", other))),
        }
    }
}

pub fn count_filtered(grid: Grid, filter: Filter) -> Result<u64> {
    Ok(enumerate_transfer_systems(grid)?
        .iter()
        .filter(|t| filter.accepts(t))
        .count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::edge;

    #[test]
    fn small_counts() {
        assert_eq!(count_transfer_systems(Grid::new(0, 0)).unwrap(), 1);
        assert_eq!(count_transfer_systems(Grid::chain(2)).unwrap(), 5);
        assert_eq!(count_transfer_systems(Grid::chain(3)).unwrap(), 14);
        assert_eq!(count_transfer_systems(Grid::new(1, 1)).unwrap(), 10);
        assert_eq!(count_transfer_systems(Grid::new(0, 3)).unwrap(), 14);
    }

    #[test]
    fn guard_is_enforced() {
        let e = count_transfer_systems(Grid::new(3, 3)).unwrap_err();
        assert!(e.is_resource());
        assert!(Enumerator::new(Grid::new(1, 1)).vertex_limit(3).all().is_err());
    }

    #[test]
    fn enumeration_is_sorted_and_deterministic() {
        let a = enumerate_transfer_systems(Grid::new(2, 1)).unwrap();
        let b = enumerate_transfer_systems(Grid::new(2, 1)).unwrap();
        assert_eq!(a, b);
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(a.first(), Some(&TransferSystem::discrete(Grid::new(2, 1))));
        assert_eq!(a.last(), Some(&TransferSystem::complete(Grid::new(2, 1))));
    }

    #[test]
    fn supersets_contain_base() {
        let g = Grid::new(1, 1);
        let base = TransferSystem::closure(g, &[edge((0, 0), (1, 0))]).unwrap();
        let sups = Enumerator::new(g).supersets_of(&base).unwrap();
        let all = enumerate_transfer_systems(g).unwrap();
        let expected: Vec<_> = all.into_iter().filter(|t| base.is_subset(t)).collect();
        assert_eq!(sups, expected);
    }

    #[test]
    fn filtered_counts_on_chains() {
        assert_eq!(count_filtered(Grid::chain(2), Filter::Lsp).unwrap(), 3);
        assert_eq!(count_filtered(Grid::chain(3), Filter::Lsp).unwrap(), 7);
        assert_eq!(count_filtered(Grid::chain(2), Filter::Connected).unwrap(), 2);
    }

    #[test]
    fn pair_counts() {
        assert_eq!(count_compatible_pairs(Grid::new(0, 0)).unwrap(), 1);
        assert_eq!(count_compatible_pairs(Grid::chain(1)).unwrap(), 3);
        assert_eq!(count_compatible_pairs(Grid::chain(2)).unwrap(), 12);
    }

    #[test]
    fn filter_parse() {
        assert_eq!("lsp".parse::<Filter>().unwrap(), Filter::Lsp);
        assert!("bogus".parse::<Filter>().is_err());
    }
}
