//! Graphviz export with nodes pinned to their grid positions.

use std::fmt::Write as _;

use crate::transfer::TransferSystem;

const PALETTE: [&str; 8] = [
    "#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666",
];

#[derive(Debug, Clone, Default)]
pub struct DotOptions {
    pub color_components: bool,
    pub name: Option<String>,
}

fn node_id(i: usize, j: usize) -> String {
    format!("v{}_{}", i, j)
}

/// Renders `t` as a `digraph`. Nodes sit at `(i, j)` (use `neato -n` or
/// `fdp` to honour the positions); reflexive edges are left out.
pub fn export_dot(t: &TransferSystem, opts: &DotOptions) -> String {
    let g = t.grid();
    let parts = t.components();
    let mut out = String::new();
    let name = opts.name.as_deref().unwrap_or("transfer_system");
    let _ = writeln!(out, "digraph \"{}\" {{", name.replace('"', "\\\""));
    let _ = writeln!(out, "  node [shape=circle, fontsize=10];");
    for v in g.vertices() {
        let mut attrs = format!("label=\"{},{}\", pos=\"{},{}!\"", v.i, v.j, v.i, v.j);
        if opts.color_components {
            let c = PALETTE[parts.id_of(v) % PALETTE.len()];
            let _ = write!(attrs, ", style=filled, fillcolor=\"{}\"", c);
        }
        let _ = writeln!(out, "  {} [{}];", node_id(v.i, v.j), attrs);
    }
    for e in t.edges() {
        let _ = writeln!(
            out,
            "  {} -> {};",
            node_id(e.src.i, e.src.j),
            node_id(e.dst.i, e.dst.j)
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{edge, Grid};

    #[test]
    fn discrete_has_no_edges() {
        let d = export_dot(&TransferSystem::discrete(Grid::new(1, 1)), &DotOptions::default());
        assert_eq!(d.matches("pos=").count(), 4);
        assert_eq!(d.matches("->").count(), 0);
    }

    #[test]
    fn stable_and_colored() {
        let t = TransferSystem::closure(Grid::new(1, 1), &[edge((0, 0), (1, 0))]).unwrap();
        let opts = DotOptions {
            color_components: true,
            name: Some("x".into()),
        };
        let a = export_dot(&t, &opts);
        assert_eq!(a, export_dot(&t, &opts));
        assert!(a.starts_with("digraph \"x\""));
        assert_eq!(a.matches("fillcolor").count(), 4);
        assert_eq!(a.matches("->").count(), 1);
        assert!(a.contains("v0_0 -> v1_0;"));
    }
}
