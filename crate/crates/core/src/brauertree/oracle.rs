//! Independent check of the solver: every labelled tree on the vertex set,
//! filtered by the defining conditions only.

use super::checks::{degree_check, projective_consistency, respects_involution};
use super::{init_problem, BrauerTree, TreeError};
use crate::blocks::Block;
use crate::projective::ProjectiveChar;
use crate::table::CharacterTable;
use crate::tablesearch::TableAutomorphism;

/// Largest vertex count [`brute_force_oracle`] accepts.
pub const MAX_ORACLE_VERTICES: usize = 12;

/// All trees on the block's vertices (via Prüfer sequences) whose edge sums
/// vanish on the ℓ-singular classes and which pass [`degree_check`],
/// [`projective_consistency`] and, when an involution applies, the
/// invariant-line condition. Sorted by edge list.
pub fn brute_force_oracle(
    b: &Block,
    t: &CharacterTable,
    pool: &[ProjectiveChar],
    involution: Option<&TableAutomorphism>,
) -> Result<Vec<BrauerTree>, TreeError> {
    let p = init_problem(b, t, involution)?;
    let n = p.vertices.len();
    if n > MAX_ORACLE_VERTICES {
        return Err(TreeError::TooManyVertices(n));
    }
    let mut out = Vec::new();
    let mut keep = |edges: Vec<(usize, usize)>| {
        if !edges.iter().all(|&(u, v)| p.admissible(u, v)) {
            return;
        }
        let tree = p.tree(edges);
        if degree_check(&tree).is_none() || !projective_consistency(&tree, pool) {
            return;
        }
        if let Some(inv) = &p.involution {
            if !respects_involution(&tree, inv) {
                return;
            }
        }
        out.push(tree);
    };
    if n == 2 {
        keep(vec![(0, 1)]);
    } else if n > 2 {
        let len = n - 2;
        let mut seq = vec![0usize; len];
        loop {
            keep(prufer_edges(&seq, n));
            let mut i = len;
            loop {
                if i == 0 {
                    out.sort_by(|a, b| a.edges.cmp(&b.edges));
                    return Ok(out);
                }
                i -= 1;
                seq[i] += 1;
                if seq[i] < n {
                    break;
                }
                seq[i] = 0;
            }
        }
    }
    Ok(out)
}

/// Decodes a Prüfer sequence over `0..n`.
fn prufer_edges(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf.min(s), leaf.max(s)));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn prufer_sequences_give_every_tree_once() {
        let n = 5;
        let mut seen = BTreeSet::new();
        for code in 0..n * n * n {
            let seq = [code % n, (code / n) % n, code / (n * n)];
            let mut edges = prufer_edges(&seq, n);
            edges.sort_unstable();
            assert_eq!(edges.len(), n - 1);
            seen.insert(edges);
        }
        assert_eq!(seen.len(), 125);
    }
}
