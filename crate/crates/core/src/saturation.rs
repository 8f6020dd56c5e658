//! Saturation ("two out of three") and the saturated hull.

use crate::lattice::Vertex;
use crate::relation::BitMatrix;
use crate::transfer::{close_in_place, TransferSystem};

/// A failure of saturation: `lower -> upper` is present, `lower <= middle <=
/// upper`, but `middle -> upper` is absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SaturationWitness {
    pub lower: Vertex,
    pub middle: Vertex,
    pub upper: Vertex,
}

/// Every violating triple, ordered by `(lower, middle, upper)`.
pub fn saturation_violations(t: &TransferSystem) -> Vec<SaturationWitness> {
    let g = t.grid();
    let n = g.vertex_count();
    let mut out = Vec::new();
    for l in 0..n {
        for k in (0..n).filter(|&k| k != l && g.leq_idx(l, k)) {
            for h in t.relation().row_iter(l) {
                if h != k && g.leq_idx(k, h) && !t.has(k, h) {
                    out.push(SaturationWitness {
                        lower: g.vertex(l),
                        middle: g.vertex(k),
                        upper: g.vertex(h),
                    });
                }
            }
        }
    }
    out
}

/// The lexicographically smallest violating triple, or `None` when `t` is
/// saturated.
pub fn saturation_witness(t: &TransferSystem) -> Option<SaturationWitness> {
    saturation_violations(t).into_iter().next()
}

pub fn is_saturated(t: &TransferSystem) -> bool {
    saturation_witness(t).is_none()
}

/// The saturated hull: `u -> v` exactly when `u <= v` and the two share a
/// component of `t`.
pub fn hull(t: &TransferSystem) -> TransferSystem {
    let g = t.grid();
    let n = g.vertex_count();
    let parts = t.components();
    let labels = parts.labels();
    let mut rel = BitMatrix::new(n);
    for a in 0..n {
        for b in 0..n {
            if labels[a] == labels[b] && g.leq_idx(a, b) {
                rel.set(a, b);
            }
        }
    }
    TransferSystem::from_relation(g, rel)
}

/// Least fixpoint of the saturation rule interleaved with transfer closure.
/// Slow, and independent of the component structure; used to check [`hull`].
pub fn hull_fixpoint(t: &TransferSystem) -> TransferSystem {
    let g = t.grid();
    let n = g.vertex_count();
    let mut rel = t.relation().clone();
    loop {
        let mut changed = false;
        for l in 0..n {
            let targets: Vec<usize> = rel.row_iter(l).collect();
            for h in targets {
                for k in 0..n {
                    if g.leq_idx(l, k) && g.leq_idx(k, h) {
                        changed |= rel.set(k, h);
                    }
                }
            }
        }
        if !changed {
            break;
        }
        close_in_place(g, &mut rel);
    }
    TransferSystem::from_relation(g, rel)
}

pub fn is_connected(t: &TransferSystem) -> bool {
    t.components().count() == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{edge, Edge, Grid};

    fn v(i: usize, j: usize) -> Vertex {
        Vertex::new(i, j)
    }

    fn g21() -> Grid {
        Grid::new(2, 1)
    }

    fn hull_input() -> Vec<Edge> {
        vec![
            edge((0, 0), (0, 1)),
            edge((0, 0), (1, 0)),
            edge((0, 0), (1, 1)),
            edge((1, 0), (1, 1)),
            edge((2, 0), (2, 1)),
        ]
    }

    fn saturated_example() -> TransferSystem {
        let mut e = hull_input();
        e.push(edge((0, 1), (1, 1)));
        TransferSystem::from_edges(g21(), &e).unwrap()
    }

    fn connected_example() -> TransferSystem {
        TransferSystem::from_edges(
            g21(),
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
    fn saturated_example_is_saturated() {
        assert!(is_saturated(&saturated_example()));
    }

    #[test]
    fn connected_example_is_not_saturated() {
        let t = connected_example();
        let all = saturation_violations(&t);
        // (e, C_{p^2}, C_{p^2 q}) is one of the failures ...
        assert!(all.contains(&SaturationWitness {
            lower: v(0, 0),
            middle: v(2, 0),
            upper: v(2, 1)
        }));
        // ... but the reported witness is the lexicographically first one
        assert_eq!(
            saturation_witness(&t),
            Some(SaturationWitness {
                lower: v(0, 0),
                middle: v(1, 0),
                upper: v(2, 0)
            })
        );
    }

    #[test]
    fn chain_with_long_edges_only_is_not_saturated() {
        let g = Grid::chain(2);
        let left = TransferSystem::from_edges(g, &[edge((0, 0), (1, 0)), edge((0, 0), (2, 0))])
            .unwrap();
        assert!(!is_saturated(&left));
        assert!(is_saturated(&TransferSystem::complete(g)));
    }

    #[test]
    fn hull_examples() {
        let t = TransferSystem::from_edges(g21(), &hull_input()).unwrap();
        let h = hull(&t);
        assert_eq!(h, saturated_example());
        assert_eq!(h.edge_count(), 6);
        assert_eq!(hull_fixpoint(&t), h);

        let c = connected_example();
        assert_eq!(hull(&c), TransferSystem::complete(g21()));
        assert_eq!(hull_fixpoint(&c), TransferSystem::complete(g21()));

        let d = TransferSystem::discrete(g21());
        assert_eq!(hull(&d), d);
        assert_eq!(hull_fixpoint(&d), d);
    }

    #[test]
    fn connectivity_examples() {
        assert!(is_connected(&connected_example()));
        assert!(!is_connected(&saturated_example()));
        assert!(is_connected(&TransferSystem::complete(Grid::new(2, 2))));
    }
}
