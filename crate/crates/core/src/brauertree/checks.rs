//! Checks a candidate tree must pass: positive Brauer degrees, projective
//! decompositions and the invariant line of an involution.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{BrauerTree, TreeVertex};
use crate::projective::ProjectiveChar;

/// Solves `r_v = Σ_{e ∋ v} x_e` on a tree by stripping leaves. Returns the
/// edge values in the order of `tree.edges`, or `None` when the last vertex
/// is left with a nonzero residual.
pub(crate) fn leaf_strip(tree: &BrauerTree, rhs: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = tree.vertices.len();
    let mut residual = rhs.to_vec();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(a, b)) in tree.edges.iter().enumerate() {
        incident[a].push(i);
        incident[b].push(i);
    }
    let mut alive = vec![true; tree.edges.len()];
    let mut degree: Vec<usize> = incident.iter().map(Vec::len).collect();
    let mut x: Vec<Option<BigInt>> = vec![None; tree.edges.len()];
    let mut leaves: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    while let Some(v) = leaves.pop() {
        if degree[v] != 1 {
            continue;
        }
        let &ei = incident[v].iter().find(|&&i| alive[i])?;
        alive[ei] = false;
        let (a, b) = tree.edges[ei];
        let w = if a == v { b } else { a };
        let val = std::mem::take(&mut residual[v]);
        residual[w] -= &val;
        x[ei] = Some(val);
        degree[v] = 0;
        degree[w] -= 1;
        if degree[w] == 1 {
            leaves.push(w);
        }
    }
    if residual.iter().any(|r| !r.is_zero()) {
        return None;
    }
    x.into_iter().collect()
}

/// Degrees of the Brauer characters on the edges, when they are all
/// positive. Each exceptional character on its own must equal the sum over
/// the edges at the exceptional vertex.
pub fn degree_check(tree: &BrauerTree) -> Option<Vec<BigInt>> {
    if !tree.is_tree() {
        return None;
    }
    let rhs: Vec<BigInt> = tree
        .vertices
        .iter()
        .map(TreeVertex::character_degree)
        .collect();
    let x = leaf_strip(tree, &rhs)?;
    x.iter().all(|d| d.is_positive()).then_some(x)
}

/// Vertex multiplicities of a projective: its multiplicity of each
/// non-exceptional character, and the common multiplicity of the
/// exceptional characters. `None` when the exceptional characters occur
/// with different multiplicities.
pub(crate) fn vertex_multiplicities(
    vertices: &[TreeVertex],
    coords: &[BigInt],
) -> Option<Vec<BigInt>> {
    vertices
        .iter()
        .map(|v| {
            let members = v.members();
            let first = &coords[members[0]];
            members
                .iter()
                .all(|&i| &coords[i] == first)
                .then(|| first.clone())
        })
        .collect()
}

/// Every pool element decomposes as a nonnegative integer combination of
/// the edge sums of `tree`.
pub fn projective_consistency(tree: &BrauerTree, pool: &[ProjectiveChar]) -> bool {
    pool.iter().all(|p| {
        vertex_multiplicities(&tree.vertices, &p.coords)
            .and_then(|m| leaf_strip(tree, &m))
            .is_some_and(|a| a.iter().all(|x| !x.is_negative()))
    })
}

/// The edge set is invariant under `inv` and the fixed vertices induce a
/// path.
pub fn respects_involution(tree: &BrauerTree, inv: &[usize]) -> bool {
    let image = BrauerTree::new(
        tree.vertices.clone(),
        tree.edges.iter().map(|&(a, b)| (inv[a], inv[b])),
        tree.m,
    );
    if image.edges != tree.edges {
        return false;
    }
    let fixed: Vec<usize> = (0..inv.len()).filter(|&v| inv[v] == v).collect();
    if fixed.is_empty() {
        return true;
    }
    let inner: Vec<(usize, usize)> = tree
        .edges
        .iter()
        .copied()
        .filter(|&(a, b)| inv[a] == a && inv[b] == b)
        .collect();
    // Subgraphs of a tree are forests; a connected one with every degree
    // at most 2 is a path.
    if inner.len() + 1 != fixed.len() {
        return false;
    }
    fixed
        .iter()
        .all(|&v| inner.iter().filter(|&&(a, b)| a == v || b == v).count() <= 2)
}
