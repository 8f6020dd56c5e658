//! Component shapes, the LSP decision procedure and the chain counting
//! formulas.

pub mod counting;
pub mod lsp;
pub mod shape;

pub use counting::{
    binomial, catalan, fuss_catalan_a, lsp_count_chain, lsp_proportion_chain,
    lsp_proportion_closed_form, round_half_up,
};
pub use lsp::{is_lsp_fast, is_lsp_oracle, is_lsp_oracle_with_limit, LspReason, LspVerdict};
pub use shape::{classify_members, shape_of, ShapeTag};
