//! Compatible pairs `(T, T')`, least compatible extensions, and the core of
//! a chain transfer system.

use serde::Serialize;

use crate::enumerate::Enumerator;
use crate::error::{Error, Result};
use crate::lattice::{Edge, Grid, Vertex};
use crate::relation::BitMatrix;
use crate::transfer::{close_in_place, restrict_pass, same_grid, TransferSystem};

/// A failure of the compatibility square: `b -> a` in `T`, `b_meet_c -> b`
/// in `T'`, `c <= a`, yet `c -> a` is not in `T'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CompatViolation {
    pub a: Vertex,
    pub b: Vertex,
    pub c: Vertex,
    pub b_meet_c: Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompatReport {
    /// Edges of `T` that `T'` lacks.
    pub missing: Vec<Edge>,
    pub violations: Vec<CompatViolation>,
}

impl CompatReport {
    pub fn is_compatible(&self) -> bool {
        self.missing.is_empty() && self.violations.is_empty()
    }
}

/// Checks `(t, tp)` against the definition, quantifying over every
/// `a`, every `b` with `b -> a` in `t` (reflexive included) and every
/// `c <= a`. Violations are ordered by `(a, b, c)`.
pub fn is_compatible(t: &TransferSystem, tp: &TransferSystem) -> Result<CompatReport> {
    same_grid(t, tp)?;
    let g = t.grid();
    let n = g.vertex_count();
    let missing = t.edges().into_iter().filter(|e| !tp.contains_edge(*e)).collect();
    let mut violations = Vec::new();
    for a in 0..n {
        for b in (0..n).filter(|&b| t.has(b, a)) {
            for c in (0..n).filter(|&c| g.leq_idx(c, a)) {
                let m = g.meet_idx(b, c);
                if tp.has(m, b) && !tp.has(c, a) {
                    violations.push(CompatViolation {
                        a: g.vertex(a),
                        b: g.vertex(b),
                        c: g.vertex(c),
                        b_meet_c: g.vertex(m),
                    });
                }
            }
        }
    }
    Ok(CompatReport {
        missing,
        violations,
    })
}

/// Adds every `c -> a` demanded by the compatibility square, reading the
/// bottom edges from `src`. Returns true if `dst` grew.
fn compat_pass(t: &TransferSystem, src: &BitMatrix, dst: &mut BitMatrix) -> bool {
    let g = t.grid();
    let n = g.vertex_count();
    let mut changed = false;
    for a in 0..n {
        for b in (0..n).filter(|&b| t.has(b, a)) {
            for c in (0..n).filter(|&c| g.leq_idx(c, a)) {
                if src.get(g.meet_idx(b, c), b) {
                    changed |= dst.set(c, a);
                }
            }
        }
    }
    changed
}

fn seed(t: &TransferSystem, extra: &[Edge]) -> Result<BitMatrix> {
    let g = t.grid();
    let mut rel = t.relation().clone();
    for e in extra {
        g.check_edge(*e)?;
        if !e.is_subgroup() {
            return Err(Error::NotSubgroup(*e));
        }
        rel.set(g.index(e.src), g.index(e.dst));
    }
    Ok(rel)
}

/// Least `T' ⊇ t ∪ extra` compatible with `t`, as a round-robin fixpoint of
/// restriction, transitivity and the compatibility rule. Valid for any
/// admissible `extra`.
pub fn min_compatible_extension_fixpoint(
    t: &TransferSystem,
    extra: &[Edge],
) -> Result<TransferSystem> {
    let g = t.grid();
    let mut rel = seed(t, extra)?;
    loop {
        close_in_place(g, &mut rel);
        let snapshot = rel.clone();
        if !compat_pass(t, &snapshot, &mut rel) {
            break;
        }
    }
    Ok(TransferSystem::from_relation(g, rel))
}

/// The four-step construction for extra edges out of the trivial subgroup:
/// restrict once, compose once, then one compatibility pass against the
/// result. Fails with an input error if some edge does not start at
/// `(0,0)`.
pub fn min_compatible_extension_one_pass(
    t: &TransferSystem,
    extra: &[Edge],
) -> Result<TransferSystem> {
    if let Some(e) = extra.iter().find(|e| e.src != Vertex::ORIGIN) {
        return Err(Error::OutOfRange(format!(
            "one-pass extension needs edges out of (0,0), got {}",
            e
        )));
    }
    let g = t.grid();
    let mut rel = seed(t, extra)?;
    restrict_pass(g, &mut rel);
    rel.transitive_close();
    let base = rel.clone();
    compat_pass(t, &base, &mut rel);
    Ok(TransferSystem::from_relation(g, rel))
}

/// The smallest transfer system containing `t` and `extra` that is
/// compatible with `t`.
///
/// When every extra edge leaves `(0,0)` the one-pass construction is used
/// (and, in debug builds, checked against the fixpoint); otherwise the
/// fixpoint runs.
pub fn min_compatible_extension(t: &TransferSystem, extra: &[Edge]) -> Result<TransferSystem> {
    if extra.iter().all(|e| e.src == Vertex::ORIGIN) {
        let fast = min_compatible_extension_one_pass(t, extra)?;
        debug_assert_eq!(fast, min_compatible_extension_fixpoint(t, extra)?);
        Ok(fast)
    } else {
        min_compatible_extension_fixpoint(t, extra)
    }
}

/// The chain core: the closure of the unit edges `k -> k+1` of `t`.
pub fn core_chain(t: &TransferSystem) -> Result<TransferSystem> {
    let g = t.grid();
    if !g.is_chain() {
        return Err(Error::NotChain(g));
    }
    // on a chain the vertex addresses run along the chain in order
    let units: Vec<Edge> = (1..g.vertex_count())
        .filter(|&k| t.has(k - 1, k))
        .map(|k| Edge::new(g.vertex(k - 1), g.vertex(k)))
        .collect();
    TransferSystem::closure(g, &units)
}

/// Every transfer system containing `t` that forms a compatible pair with
/// it, in canonical order.
pub fn compatible_supersets(t: &TransferSystem) -> Result<Vec<TransferSystem>> {
    compatible_supersets_with_limit(t, crate::enumerate::DEFAULT_VERTEX_LIMIT)
}

pub fn compatible_supersets_with_limit(
    t: &TransferSystem,
    vertex_limit: usize,
) -> Result<Vec<TransferSystem>> {
    let all = Enumerator::new(t.grid())
        .vertex_limit(vertex_limit)
        .supersets_of(t)?;
    Ok(all
        .into_iter()
        .filter(|tp| compatible_fast(t, tp))
        .collect())
}

/// Verdict only, stopping at the first failure.
pub fn compatible_fast(t: &TransferSystem, tp: &TransferSystem) -> bool {
    if t.grid() != tp.grid() || !t.is_subset(tp) {
        return false;
    }
    let g: Grid = t.grid();
    let n = g.vertex_count();
    for a in 0..n {
        for b in (0..n).filter(|&b| b != a && t.has(b, a)) {
            for c in (0..n).filter(|&c| g.leq_idx(c, a)) {
                if tp.has(g.meet_idx(b, c), b) && !tp.has(c, a) {
                    return false;
                }
            }
        }
    }
    true
}
