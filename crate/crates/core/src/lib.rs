//! Transfer systems on the subgroup lattice of `C_{p^r q^s}`.
//!
//! The lattice is modelled as the grid `[0, r] x [0, s]` under the
//! coordinatewise order. A transfer system is a reflexive, transitive
//! relation refining that order and closed under restriction (meets). On
//! top of that the crate computes saturated hulls, compatible pairs and
//! least compatible extensions, classifies which systems are lesser simply
//! paired, and enumerates every transfer system on small grids so each
//! structural result can be checked exhaustively.
//!
//! ```
//! use tsys::{edge, hull, Grid, TransferSystem};
//!
//! let g = Grid::new(1, 1);
//! let t = TransferSystem::closure(g, &[edge((0, 0), (1, 1))]).unwrap();
//! assert_eq!(t.edge_count(), 3);
//! assert!(hull(&t).is_complete());
//! ```

pub mod classify;
pub mod compatibility;
pub mod document;
pub mod dot;
pub mod enumerate;
pub mod error;
pub mod lattice;
mod relation;
pub mod saturation;
pub mod transfer;
pub mod verify;

pub use classify::{
    catalan, fuss_catalan_a, is_lsp_fast, is_lsp_oracle, lsp_count_chain, lsp_proportion_chain,
    shape_of, LspReason, LspVerdict, ShapeTag,
};
pub use compatibility::{
    compatible_supersets, core_chain, is_compatible, min_compatible_extension, CompatReport,
    CompatViolation,
};
pub use document::{parse_tsys, render_tsys, TsysDocument};
pub use dot::{export_dot, DotOptions};
pub use enumerate::{
    count_compatible_pairs, count_filtered, count_transfer_systems, enumerate_transfer_systems,
    Enumerator, Filter, DEFAULT_VERTEX_LIMIT,
};
pub use error::{Error, Result};
pub use lattice::{complete_relation, edge, Edge, Grid, Vertex};
pub use saturation::{
    hull, hull_fixpoint, is_connected, is_saturated, saturation_witness, SaturationWitness,
};
pub use transfer::{transfer_closure, validate, Axiom, ComponentPartition, TransferSystem, Violation};
pub use verify::{verify, VerifyConfig, VerifyReport};
