//! Grouping trees that differ by a Galois permutation of the block.

use std::collections::BTreeSet;

use super::{BrauerTree, TreeVertex};
use crate::table::CharacterTable;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeClass {
    pub representative: BrauerTree,
    pub members: Vec<BrauerTree>,
    /// Generators of the Galois group acting on the block, each as cycles
    /// of 1-based character positions. Empty when the class is a single
    /// tree.
    pub generators: Vec<Vec<Vec<usize>>>,
}

impl TreeClass {
    /// `⟨(2,3), (5,6)⟩`, or `None` for a single tree.
    pub fn modulo(&self) -> Option<String> {
        if self.generators.is_empty() {
            return None;
        }
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|cycles| {
                cycles
                    .iter()
                    .map(|c| {
                        let parts: Vec<String> = c.iter().map(usize::to_string).collect();
                        format!("({})", parts.join(","))
                    })
                    .collect::<String>()
            })
            .collect();
        Some(format!("⟨{}⟩", gens.join(", ")))
    }
}

/// Vertex permutations induced by the Galois permutations of the table that
/// stabilize the vertex sets, identity included, sorted.
fn vertex_galois_group(vertices: &[TreeVertex], t: &CharacterTable) -> Vec<Vec<usize>> {
    let mut out = BTreeSet::new();
    for perm in t.galois_permutations() {
        let images: Option<Vec<usize>> = vertices
            .iter()
            .map(|v| {
                let mut img: Vec<usize> = v.members().into_iter().map(|i| perm[i]).collect();
                img.sort_unstable();
                vertices.iter().position(|w| w.members() == img)
            })
            .collect();
        if let Some(p) = images {
            out.insert(p);
        }
    }
    out.into_iter().collect()
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

fn generated(gens: &[Vec<usize>], n: usize) -> BTreeSet<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    let mut group = BTreeSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = compose(g, &x);
            if group.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    group
}

/// Cycles of length at least 2 in 1-based character labels. Vertices of
/// the group are non-exceptional whenever they move.
fn cycles(perm: &[usize], vertices: &[TreeVertex]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        let mut c = Vec::new();
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            c.push(vertices[v].members()[0] + 1);
            v = perm[v];
        }
        out.push(c);
    }
    out
}

/// Classes of trees under relabelling by Galois conjugation of the block,
/// in order of first appearance. Classes with more than one tree carry
/// generators of the relabelling group.
pub fn galois_classes(trees: &[BrauerTree], t: &CharacterTable) -> Vec<TreeClass> {
    let Some(first) = trees.first() else {
        return Vec::new();
    };
    let vertices = &first.vertices;
    let group = vertex_galois_group(vertices, t);
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut span = generated(&gens, vertices.len());
    for g in &group {
        if !span.contains(g) {
            gens.push(g.clone());
            span = generated(&gens, vertices.len());
        }
    }
    let mut assigned = vec![false; trees.len()];
    let mut out = Vec::new();
    for i in 0..trees.len() {
        if assigned[i] {
            continue;
        }
        let orbit: BTreeSet<Vec<(usize, usize)>> = group
            .iter()
            .map(|g| trees[i].relabel(g, vertices.clone()).edges)
            .collect();
        let mut members = Vec::new();
        for j in i..trees.len() {
            if !assigned[j] && orbit.contains(&trees[j].edges) {
                assigned[j] = true;
                members.push(trees[j].clone());
            }
        }
        let generators = if members.len() > 1 {
            gens.iter().map(|g| cycles(g, vertices)).collect()
        } else {
            Vec::new()
        };
        out.push(TreeClass {
            representative: trees[i].clone(),
            members,
            generators,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::compute_blocks;
    use crate::brauertree::init_problem;
    use crate::corpus;

    #[test]
    fn conjugate_swap_joins_two_trees() {
        // 7:3 mod 7: vertices 1, 2, 3 and (4+5); 2 and 3 are complex
        // conjugate. The two paths 2 - 1 - (4+5) - 3 and its conjugate are
        // not trees of this block but exercise the grouping.
        let t = corpus::table("7:3").unwrap();
        let p = init_problem(&compute_blocks(&t, 7).unwrap()[0], &t, None).unwrap();
        let a = p.tree([(0, 1), (0, 3), (2, 3)]);
        let b = p.tree([(0, 2), (0, 3), (1, 3)]);
        let star = p.tree([(0, 3), (1, 3), (2, 3)]);
        let classes = galois_classes(&[a.clone(), star.clone(), b.clone()], &t);
        assert_eq!(classes.len(), 2);
        assert_eq!(classes[0].members, vec![a, b]);
        assert_eq!(classes[0].modulo().as_deref(), Some("⟨(2,3)⟩"));
        assert_eq!(classes[1].members, vec![star]);
        assert_eq!(classes[1].modulo(), None);
    }

    #[test]
    fn single_tree_has_trivial_group() {
        let t = corpus::table("A5").unwrap();
        let p = init_problem(&compute_blocks(&t, 5).unwrap()[0], &t, None).unwrap();
        let classes = galois_classes(&[p.tree([(0, 2), (1, 2)])], &t);
        assert_eq!(classes.len(), 1);
        assert!(classes[0].generators.is_empty());
    }
}
