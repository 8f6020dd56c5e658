//! Exhaustive checks of the structural results over every transfer system on
//! small grids.
//!
//! Each grid is enumerated once; systems are checked in parallel and the
//! per-system tallies are merged in enumeration order, so the report is the
//! same from run to run regardless of thread count.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{
    catalan, fuss_catalan_a, is_lsp_fast, is_lsp_oracle, lsp_count_chain, shape_of, ShapeTag,
};
use crate::compatibility::{
    compatible_fast, core_chain, is_compatible, min_compatible_extension_fixpoint,
    min_compatible_extension_one_pass,
};
use crate::enumerate::{enumerate_transfer_systems, Enumerator};
use crate::error::Result;
use crate::lattice::{Edge, Grid, Vertex};
use crate::saturation::{hull, hull_fixpoint, is_connected, is_saturated};
use crate::transfer::{validate, TransferSystem};

/// Failure messages kept per grid; further failures are only counted.
const MAX_FAILURES_KEPT: usize = 20;

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Every grid with at most this many vertices is checked.
    pub max_vertices: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { max_vertices: 9 }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CheckStat {
    pub run: u64,
    pub failed: u64,
}

#[derive(Debug, Clone, Default, Serialize)]
struct Tally {
    checks: BTreeMap<&'static str, CheckStat>,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, name: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        let stat = self.checks.entry(name).or_default();
        stat.run += 1;
        if !ok {
            stat.failed += 1;
            if self.failures.len() < MAX_FAILURES_KEPT {
                self.failures.push(format!("{}: {}", name, detail()));
            }
        }
    }

    fn merge(&mut self, other: Tally) {
        for (name, stat) in other.checks {
            let mine = self.checks.entry(name).or_default();
            mine.run += stat.run;
            mine.failed += stat.failed;
        }
        for f in other.failures {
            if self.failures.len() < MAX_FAILURES_KEPT {
                self.failures.push(f);
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GridReport {
    pub grid: Grid,
    pub systems: usize,
    pub checks: BTreeMap<&'static str, CheckStat>,
    pub failures: Vec<String>,
    pub seconds: f64,
}

impl GridReport {
    pub fn failed(&self) -> u64 {
        self.checks.values().map(|c| c.failed).sum()
    }

    pub fn run(&self) -> u64 {
        self.checks.values().map(|c| c.run).sum()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub max_vertices: usize,
    pub grids: Vec<GridReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.grids.iter().all(|g| g.failed() == 0)
    }

    pub fn total_failed(&self) -> u64 {
        self.grids.iter().map(|g| g.failed()).sum()
    }

    pub fn total_run(&self) -> u64 {
        self.grids.iter().map(|g| g.run()).sum()
    }
}

/// All grids with at most `max_vertices` vertices, ordered by vertex count
/// and then by `(r, s)`.
pub fn grids_up_to(max_vertices: usize) -> Vec<Grid> {
    let mut out = Vec::new();
    for r in 0..max_vertices {
        for s in 0..max_vertices {
            if (r + 1) * (s + 1) <= max_vertices {
                out.push(Grid::new(r, s));
            }
        }
    }
    out.sort_by_key(|g| (g.vertex_count(), g.r, g.s));
    out
}

pub fn verify(config: &VerifyConfig) -> Result<VerifyReport> {
    let grids = grids_up_to(config.max_vertices)
        .into_iter()
        .map(verify_grid)
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport {
        max_vertices: config.max_vertices,
        grids,
    })
}

/// Runs every check on one grid.
pub fn verify_grid(g: Grid) -> Result<GridReport> {
    let start = Instant::now();
    let all = enumerate_transfer_systems(g)?;
    let mut tally = Tally::default();
    check_enumeration(g, &all, &mut tally)?;

    let per_system: Vec<Tally> = all
        .par_iter()
        .map(|t| check_system(t, &all))
        .collect::<Result<Vec<_>>>()?;
    for t in per_system {
        tally.merge(t);
    }

    Ok(GridReport {
        grid: g,
        systems: all.len(),
        checks: tally.checks,
        failures: tally.failures,
        seconds: start.elapsed().as_secs_f64(),
    })
}

fn check_enumeration(g: Grid, all: &[TransferSystem], tally: &mut Tally) -> Result<()> {
    tally.check(
        "enumerate.distinct_sorted",
        all.windows(2).all(|w| w[0] < w[1]),
        || format!("{}: enumeration not strictly increasing", g),
    );
    tally.check(
        "enumerate.deterministic",
        enumerate_transfer_systems(g)? == all,
        || format!("{}: second run differs", g),
    );
    let transposed = Enumerator::new(g.transpose()).count()?;
    tally.check(
        "enumerate.transpose_symmetric",
        transposed == all.len() as u64,
        || format!("{}: {} systems vs {} on the transpose", g, all.len(), transposed),
    );
    if g.is_chain() {
        let n = g.r.max(g.s) as u64;
        let total = catalan(n + 1);
        tally.check(
            "chain.total_catalan",
            total == all.len().into(),
            || format!("{}: {} systems, expected {}", g, all.len(), total),
        );
        let connected = all.iter().filter(|t| is_connected(t)).count();
        tally.check(
            "chain.connected_catalan",
            catalan(n) == connected.into(),
            || format!("{}: {} connected", g, connected),
        );
        if n >= 1 {
            let lsp = all.iter().filter(|t| is_lsp_fast(t).is_lsp).count();
            let expected = lsp_count_chain(n)?;
            tally.check("chain.lsp_count", expected == lsp.into(), || {
                format!("{}: {} LSP, expected {}", g, lsp, expected)
            });
        }
        let pairs: usize = all
            .iter()
            .map(|t| {
                all.iter()
                    .filter(|tp| t.is_subset(tp) && compatible_fast(t, tp))
                    .count()
            })
            .sum();
        let expected = fuss_catalan_a(n + 1);
        tally.check("chain.pairs_fuss_catalan", expected == pairs.into(), || {
            format!("{}: {} compatible pairs, expected {}", g, pairs, expected)
        });
    }
    Ok(())
}

/// Compatibility as containment of the hull plus the incomparable `(B, C)`
/// cases; comparable `B, C` demand nothing beyond the hull.
fn compatible_incomparable_only(t: &TransferSystem, tp: &TransferSystem) -> bool {
    if !t.is_subset(tp) || !hull(t).is_subset(tp) {
        return false;
    }
    let g = t.grid();
    let n = g.vertex_count();
    for a in 0..n {
        for b in (0..n).filter(|&b| t.has(b, a)) {
            for c in (0..n).filter(|&c| g.leq_idx(c, a)) {
                if g.leq_idx(b, c) || g.leq_idx(c, b) {
                    continue;
                }
                if tp.has(g.meet_idx(b, c), b) && !tp.has(c, a) {
                    return false;
                }
            }
        }
    }
    true
}

fn check_system(t: &TransferSystem, all: &[TransferSystem]) -> Result<Tally> {
    let mut tally = Tally::default();
    let g = t.grid();
    let complete = TransferSystem::complete(g);
    let edges = t.edges();

    // transfer
    tally.check("transfer.validate", validate(g, &edges)?.is_empty(), || {
        format!("{} fails validation", t)
    });
    tally.check(
        "transfer.closure_idempotent",
        TransferSystem::closure(g, &edges)? == *t,
        || format!("{}", t),
    );
    tally.check(
        "transfer.closure_one_pass",
        TransferSystem::closure_one_pass(g, &edges)? == *t,
        || format!("{}", t),
    );

    let parts = t.components();
    for u in g.vertices() {
        for v in g.vertices() {
            let path = t.zigzag_path(u, v)?;
            let ok = match (&path, parts.same_component(u, v)) {
                (Some(p), true) => {
                    p.len() <= 3
                        && p.first() == Some(&u)
                        && p.last() == Some(&v)
                        && p.windows(2)
                            .all(|w| t.contains(w[0], w[1]) || t.contains(w[1], w[0]))
                }
                (None, false) => true,
                _ => false,
            };
            tally.check("transfer.zigzag", ok, || {
                format!("{} between {} and {}: {:?}", t, u, v, path)
            });
        }
    }
    for id in 0..parts.count() {
        let members = parts.members(id);
        let least = parts.smallest(id);
        tally.check(
            "transfer.smallest_vertex_edges",
            members.iter().all(|&x| least.leq(x) && t.contains(least, x)),
            || format!("{} component {:?}", t, members),
        );
    }
    let top_shape = shape_of(t, parts.id_of(g.top()))?;
    let top_least = parts.smallest(parts.id_of(g.top()));
    tally.check(
        "transfer.top_rectangle",
        top_shape
            == ShapeTag::Rectangle {
                lo: top_least,
                hi: g.top(),
            },
        || format!("{}: top component is {}", t, top_shape),
    );

    // saturation
    let h = hull(t);
    tally.check("saturation.hull_fixpoint", h == hull_fixpoint(t), || {
        format!("{}", t)
    });
    tally.check("saturation.hull_contains", t.is_subset(&h), || format!("{}", t));
    tally.check("saturation.hull_idempotent", hull(&h) == h, || format!("{}", t));
    tally.check("saturation.hull_saturated", is_saturated(&h), || format!("{}", t));
    tally.check(
        "saturation.components_preserved",
        h.components() == parts,
        || format!("{}", t),
    );
    tally.check(
        "saturation.connected_iff_hull_complete",
        is_connected(t) == (h == complete),
        || format!("{}", t),
    );
    tally.check(
        "saturation.saturated_iff_fixed",
        is_saturated(t) == (h == *t),
        || format!("{}", t),
    );

    // compatibility over every superset
    let supersets: Vec<&TransferSystem> = all.iter().filter(|tp| t.is_subset(tp)).collect();
    let mut compatible: Vec<&TransferSystem> = Vec::new();
    let core_of = |tp: &TransferSystem| core_chain(tp);
    for &tp in &supersets {
        let full = is_compatible(t, tp)?.is_compatible();
        tally.check("compat.fast_agrees", full == compatible_fast(t, tp), || {
            format!("{} vs {}", t, tp)
        });
        tally.check(
            "compat.incomparable_reduction",
            full == compatible_incomparable_only(t, tp),
            || format!("{} vs {}", t, tp),
        );
        if full {
            tally.check("compat.contains_hull", h.is_subset(tp), || {
                format!("{} vs {}", t, tp)
            });
            compatible.push(tp);
        }
        if is_saturated(tp) {
            tally.check("compat.saturated_superset", full, || {
                format!("{} vs {}", t, tp)
            });
        }
        if g.is_chain() {
            let law = h.is_subset(&core_of(tp)?);
            tally.check("compat.chain_core_law", full == law, || {
                format!("{} vs {}", t, tp)
            });
        }
    }
    tally.check(
        "compat.trivial_pairs",
        compatible.contains(&&h) && compatible.contains(&&complete),
        || format!("{}", t),
    );

    // least compatible extensions
    let least_containing = |extra: &[Edge]| -> Option<&TransferSystem> {
        let candidates: Vec<&TransferSystem> = compatible
            .iter()
            .copied()
            .filter(|tp| extra.iter().all(|e| tp.contains_edge(*e)))
            .collect();
        candidates
            .iter()
            .copied()
            .find(|c| candidates.iter().all(|d| c.is_subset(d)))
    };
    let ext = min_compatible_extension_fixpoint(t, &[])?;
    tally.check("extend.empty_is_hull", ext == h, || format!("{}", t));
    for e in g.strict_pairs() {
        if t.contains_edge(e) {
            continue;
        }
        let ext = min_compatible_extension_fixpoint(t, &[e])?;
        tally.check(
            "extend.least_compatible",
            least_containing(&[e]) == Some(&ext),
            || format!("{} with {}", t, e),
        );
        if e.src == Vertex::ORIGIN {
            tally.check(
                "extend.one_pass_agrees",
                min_compatible_extension_one_pass(t, &[e])? == ext,
                || format!("{} with {}", t, e),
            );
        }
    }

    // classification
    let fast = is_lsp_fast(t);
    let oracle = is_lsp_oracle(t)?;
    let by_definition = compatible.iter().all(|tp| **tp == h || **tp == complete);
    tally.check("lsp.fast_equals_oracle", fast.is_lsp == oracle.is_lsp, || {
        format!("{}: fast {} oracle {}", t, fast.is_lsp, oracle.is_lsp)
    });
    tally.check("lsp.oracle_matches_definition", oracle.is_lsp == by_definition, || {
        format!("{}", t)
    });
    if let Some(w) = &fast.witness {
        let ok = is_compatible(t, w)?.is_compatible() && *w != h && *w != complete;
        tally.check("lsp.witness_valid", ok, || format!("{} witness {}", t, w));
    }
    tally.check(
        "lsp.witness_iff_not_lsp",
        fast.is_lsp == fast.witness.is_none(),
        || format!("{}", t),
    );
    if parts.count() == 2 {
        tally.check(
            "classify.two_component_shapes",
            fast.origin_shape.is_origin_shape() && top_shape.is_rectangle(),
            || format!("{}: origin {} top {}", t, fast.origin_shape, top_shape),
        );
    }

    Ok(tally)
}
