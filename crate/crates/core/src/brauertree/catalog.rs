//! Text catalog and DOT output for solved blocks.

use std::fmt::Write;

use super::{BlockResult, BlockSolution};

/// One block: a header line, then one line per tree class with its Galois
/// ambiguity and, for blocks that are not faithful, the kernel order.
///
/// ```text
/// block 1: characters 1, 2, 3, 4; defect 1; e = 2, m = 2
///   1 - 4 - (2+3)
/// ```
pub fn format_block(index: usize, sol: &BlockSolution) -> String {
    let members: Vec<String> = sol
        .block
        .members
        .iter()
        .map(|i| (i + 1).to_string())
        .collect();
    let mut out = format!(
        "block {}: characters {}; defect {}; e = {}, m = {}",
        index + 1,
        members.join(", "),
        sol.block.defect,
        sol.e,
        sol.m
    );
    if let Some(src) = sol.transported_from {
        let _ = write!(out, "; image of block {}", src + 1);
    }
    out.push('\n');
    for class in &sol.classes {
        out.push_str("  ");
        out.push_str(&class.representative.text());
        if let Some(m) = class.modulo() {
            let _ = write!(out, "  modulo {m}");
        }
        if sol.kernel_order > 1 {
            let _ = write!(out, "  (|K| = {})", sol.kernel_order);
        }
        out.push('\n');
    }
    out
}

/// All cyclic blocks of a table at one prime.
pub fn format_catalog(
    table: &str,
    ell: u64,
    solutions: &[BlockResult],
) -> String {
    let mut out = format!("table {table}, l = {ell}\n");
    if solutions.is_empty() {
        out.push_str("no blocks with nontrivial cyclic defect\n");
    }
    for (i, res) in solutions {
        match res {
            Ok(sol) => out.push_str(&format_block(*i, sol)),
            Err(e) => {
                let _ = writeln!(out, "block {}: {e}", i + 1);
            }
        }
    }
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// A DOT graph of the block, one cluster per tree class.
pub fn to_dot(table: &str, ell: u64, index: usize, sol: &BlockSolution) -> String {
    let title = format!("{table} l={ell} block {}", index + 1);
    let mut out = format!("graph {} {{\n", quote(&title));
    for (k, class) in sol.classes.iter().enumerate() {
        let tree = &class.representative;
        let _ = writeln!(out, "  subgraph cluster_{} {{", k + 1);
        let mut label = format!("tree {}", k + 1);
        if let Some(m) = class.modulo() {
            let _ = write!(label, " modulo {m}");
        }
        let _ = writeln!(out, "    label={};", quote(&label));
        for (v, vertex) in tree.vertices.iter().enumerate() {
            let _ = writeln!(
                out,
                "    t{}v{} [label={}];",
                k + 1,
                v + 1,
                quote(&vertex.label())
            );
        }
        for &(a, b) in &tree.edges {
            let _ = writeln!(out, "    t{}v{} -- t{}v{};", k + 1, a + 1, k + 1, b + 1);
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::compute_blocks;
    use crate::brauertree::{solve_block, TreeOptions};
    use crate::corpus;

    #[test]
    fn a5_mod_5_text_and_dot() {
        let t = corpus::table("A5").unwrap();
        let b = &compute_blocks(&t, 5).unwrap()[0];
        let sol = solve_block(b, &t, &TreeOptions::default()).unwrap();
        assert_eq!(
            format_block(0, &sol),
            "block 1: characters 1, 2, 3, 4; defect 1; e = 2, m = 2\n  1 - 4 - (2+3)\n"
        );
        let dot = to_dot("A5", 5, 0, &sol);
        assert!(dot.starts_with("graph \"A5 l=5 block 1\" {\n"));
        assert!(dot.contains("t1v2 [label=\"(2+3)\"];"));
        assert!(dot.contains("t1v1 -- t1v3;"));
    }

    #[test]
    fn kernel_annotation() {
        let t = corpus::table("7:3").unwrap();
        let sols = crate::brauertree::solve_all(&t, 3, &TreeOptions::default()).unwrap();
        let text = format_catalog("7:3", 3, &sols);
        assert_eq!(
            text,
            "table 7:3, l = 3\nblock 1: characters 1, 2, 3; defect 1; e = 1, m = 2\n  1 - (2+3)  (|K| = 7)\n"
        );
    }
}
