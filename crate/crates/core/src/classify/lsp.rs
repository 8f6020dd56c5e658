use std::fmt;

use crate::compatibility::{compatible_supersets_with_limit, min_compatible_extension};
use crate::enumerate::DEFAULT_VERTEX_LIMIT;
use crate::error::Result;
use crate::lattice::{Edge, Vertex};
use crate::saturation::hull;
use crate::transfer::TransferSystem;

use super::shape::{classify_members, ShapeTag};

/// Which case of the classification decided the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LspReason {
    Connected,
    TwoCompH0orV0,
    /// `<0,0>` is `H(k)` or `V(l)` with a positive index.
    TwoCompThick,
    TwoCompL,
    ThreePlusComponents,
    /// Decided by exhaustive search over compatible supersets.
    OracleOnly,
}

impl LspReason {
    pub fn name(self) -> &'static str {
        match self {
            LspReason::Connected => "connected",
            LspReason::TwoCompH0orV0 => "two_components_h0_or_v0",
            LspReason::TwoCompThick => "two_components_thick",
            LspReason::TwoCompL => "two_components_l",
            LspReason::ThreePlusComponents => "three_or_more_components",
            LspReason::OracleOnly => "oracle",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LspVerdict {
    pub is_lsp: bool,
    pub reason: LspReason,
    pub components: usize,
    /// Shape of the component of `(0,0)`.
    pub origin_shape: ShapeTag,
    /// Edge added to `t` to build the witness, when the fast path made one.
    pub witness_edge: Option<Edge>,
    /// A compatible superset strictly between the hull and the complete
    /// system. Present exactly when `is_lsp` is false.
    pub witness: Option<TransferSystem>,
}

impl fmt::Display for LspVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.is_lsp { "LSP" } else { "not LSP" };
        match self.reason {
            LspReason::Connected => write!(f, "{} (connected)", verdict),
            LspReason::TwoCompH0orV0 | LspReason::TwoCompThick | LspReason::TwoCompL => {
                write!(f, "{} (two components, {})", verdict, self.origin_shape)
            }
            LspReason::ThreePlusComponents => {
                write!(f, "{} ({} components)", verdict, self.components)
            }
            LspReason::OracleOnly => write!(f, "{} (exhaustive search)", verdict),
        }
    }
}

/// Lexicographically smallest vertex outside the component of `(0,0)`.
fn first_outside_origin(t: &TransferSystem) -> Option<Vertex> {
    let parts = t.components();
    let origin = parts.id_of(Vertex::ORIGIN);
    t.grid().vertices().find(|&v| parts.id_of(v) != origin)
}

fn not_lsp(
    t: &TransferSystem,
    reason: LspReason,
    components: usize,
    origin_shape: ShapeTag,
    target: Vertex,
) -> LspVerdict {
    let e = Edge::new(Vertex::ORIGIN, target);
    // the edge is in bounds and admissible by construction
    let witness = min_compatible_extension(t, &[e]).expect("admissible witness edge");
    LspVerdict {
        is_lsp: false,
        reason,
        components,
        origin_shape,
        witness_edge: Some(e),
        witness: Some(witness),
    }
}

fn lsp(reason: LspReason, components: usize, origin_shape: ShapeTag) -> LspVerdict {
    LspVerdict {
        is_lsp: true,
        reason,
        components,
        origin_shape,
        witness_edge: None,
        witness: None,
    }
}

/// Classification by component count and the shape of `<0,0>`, building a
/// witness by the constructive argument when the answer is no.
pub fn is_lsp_fast(t: &TransferSystem) -> LspVerdict {
    let g = t.grid();
    let parts = t.components();
    let count = parts.count();
    let shape = classify_members(g, parts.members(parts.id_of(Vertex::ORIGIN)));

    if count == 1 {
        return lsp(LspReason::Connected, count, shape);
    }
    let m = first_outside_origin(t).expect("more than one component");
    if count >= 3 {
        return not_lsp(t, LspReason::ThreePlusComponents, count, shape, m);
    }
    let (reason, target) = match shape {
        ShapeTag::H { k: 0 } | ShapeTag::V { l: 0 } => {
            return lsp(LspReason::TwoCompH0orV0, count, shape)
        }
        ShapeTag::H { k } => (LspReason::TwoCompThick, Vertex::new(0, k + 1)),
        ShapeTag::V { l } => (LspReason::TwoCompThick, Vertex::new(l + 1, 0)),
        ShapeTag::L { l, k } => (LspReason::TwoCompL, Vertex::new(l + 1, k + 1)),
        // With two components the origin component is always V, H or L;
        // anything else means the input broke an invariant.
        ShapeTag::Rectangle { .. } | ShapeTag::Irregular => {
            unreachable!("two-component system with origin shape {}", shape)
        }
    };
    debug_assert_eq!(target, m);
    not_lsp(t, reason, count, shape, target)
}

/// Decides the property from its definition: every compatible superset must
/// be the hull or the complete system. The witness is the first other
/// compatible superset in canonical order.
pub fn is_lsp_oracle(t: &TransferSystem) -> Result<LspVerdict> {
    is_lsp_oracle_with_limit(t, DEFAULT_VERTEX_LIMIT)
}

pub fn is_lsp_oracle_with_limit(t: &TransferSystem, vertex_limit: usize) -> Result<LspVerdict> {
    let g = t.grid();
    let h = hull(t);
    let complete = TransferSystem::complete(g);
    let parts = t.components();
    let shape = classify_members(g, parts.members(parts.id_of(Vertex::ORIGIN)));
    let witness = compatible_supersets_with_limit(t, vertex_limit)?
        .into_iter()
        .find(|tp| *tp != h && *tp != complete);
    Ok(LspVerdict {
        is_lsp: witness.is_none(),
        reason: LspReason::OracleOnly,
        components: parts.count(),
        origin_shape: shape,
        witness_edge: None,
        witness,
    })
}
