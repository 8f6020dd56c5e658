use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::lattice::{Grid, Vertex};
use crate::transfer::TransferSystem;

/// Shape of a component on the grid.
///
/// `V(l)` is the leftmost `l + 1` columns (`i <= l`), `H(k)` the bottom
/// `k + 1` rows (`j <= k`), and `L(l, k)` their union. The strict bounds
/// `l < r` and `k < s` keep these distinct from the whole grid, which is
/// reported as a rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum ShapeTag {
    V { l: usize },
    H { k: usize },
    L { l: usize, k: usize },
    Rectangle { lo: Vertex, hi: Vertex },
    Irregular,
}

impl ShapeTag {
    pub fn is_rectangle(&self) -> bool {
        matches!(self, ShapeTag::Rectangle { .. })
    }

    /// One of `V`, `H` or `L`.
    pub fn is_origin_shape(&self) -> bool {
        matches!(self, ShapeTag::V { .. } | ShapeTag::H { .. } | ShapeTag::L { .. })
    }
}

impl fmt::Display for ShapeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeTag::V { l } => write!(f, "V{}", l),
            ShapeTag::H { k } => write!(f, "H{}", k),
            ShapeTag::L { l, k } => write!(f, "L({},{})", l, k),
            ShapeTag::Rectangle { lo, hi } => write!(f, "rectangle {}..{}", lo, hi),
            ShapeTag::Irregular => write!(f, "irregular"),
        }
    }
}

fn matches_set(g: Grid, members: &[Vertex], inside: impl Fn(Vertex) -> bool) -> bool {
    let expected = g.vertices().filter(|&v| inside(v)).count();
    expected == members.len() && members.iter().all(|&v| inside(v))
}

/// Tag for a vertex set, given in any order.
pub fn classify_members(g: Grid, members: &[Vertex]) -> ShapeTag {
    if members.is_empty() {
        return ShapeTag::Irregular;
    }
    if members.contains(&Vertex::ORIGIN) {
        for l in 0..g.r {
            if matches_set(g, members, |v| v.i <= l) {
                return ShapeTag::V { l };
            }
        }
        for k in 0..g.s {
            if matches_set(g, members, |v| v.j <= k) {
                return ShapeTag::H { k };
            }
        }
        for l in 0..g.r {
            for k in 0..g.s {
                if matches_set(g, members, |v| v.i <= l || v.j <= k) {
                    return ShapeTag::L { l, k };
                }
            }
        }
    }
    let lo = Vertex::new(
        members.iter().map(|v| v.i).min().unwrap_or(0),
        members.iter().map(|v| v.j).min().unwrap_or(0),
    );
    let hi = Vertex::new(
        members.iter().map(|v| v.i).max().unwrap_or(0),
        members.iter().map(|v| v.j).max().unwrap_or(0),
    );
    if matches_set(g, members, |v| lo.leq(v) && v.leq(hi)) {
        ShapeTag::Rectangle { lo, hi }
    } else {
        ShapeTag::Irregular
    }
}

/// Shape of component `id` of `t`.
pub fn shape_of(t: &TransferSystem, id: usize) -> Result<ShapeTag> {
    let parts = t.components();
    parts.check_id(id)?;
    Ok(classify_members(t.grid(), parts.members(id)))
}
