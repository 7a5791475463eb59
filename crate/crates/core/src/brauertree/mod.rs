//! Brauer trees of blocks with cyclic defect.
//!
//! A [`TreeProblem`] holds the admissible edges of a block (pairs whose sum
//! vanishes on the ℓ-singular classes) together with edges already known to
//! be present. Projective characters force further edges, the remaining
//! spanning trees are enumerated, and the survivors of the degree and
//! projective checks are grouped up to Galois conjugacy.

mod catalog;
mod checks;
mod forcing;
mod galois;
mod oracle;
mod solve;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::blocks::{cyclic_status, Block, BlockError, CyclicStatus};
use crate::cyclotomic::Cyclotomic;
use crate::projective::ProjectiveError;
use crate::table::{CharacterTable, TableError};
use crate::tablesearch::TableAutomorphism;

pub use catalog::{format_block, format_catalog, to_dot};
pub use checks::{degree_check, projective_consistency, respects_involution};
pub use forcing::force_edges_from_projectives;
pub use galois::{galois_classes, TreeClass};
pub use oracle::{brute_force_oracle, MAX_ORACLE_VERTICES};
pub use solve::{
    resolve_involution, solve_all, solve_block, solve_block_with, BlockResult, BlockSolution,
    InvolutionChoice, TreeOptions,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("block is not cyclic with nontrivial defect ({0})")]
    NotCyclic(CyclicStatus),
    #[error("contradiction: {0}")]
    Contradiction(String),
    #[error("{0} vertices exceed the oracle bound of {MAX_ORACLE_VERTICES}")]
    TooManyVertices(usize),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Blocks(#[from] BlockError),
    #[error(transparent)]
    Projective(#[from] ProjectiveError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKind {
    NonExceptional(usize),
    /// The sum of the exceptional characters (0-based, ascending).
    ExceptionalSum(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreeVertex {
    pub kind: VertexKind,
    /// Degree of the vertex character; for the exceptional vertex the sum
    /// of the member degrees.
    pub degree: BigInt,
}

impl TreeVertex {
    pub fn members(&self) -> Vec<usize> {
        match &self.kind {
            VertexKind::NonExceptional(i) => vec![*i],
            VertexKind::ExceptionalSum(v) => v.clone(),
        }
    }

    pub fn is_exceptional(&self) -> bool {
        matches!(self.kind, VertexKind::ExceptionalSum(_))
    }

    /// Degree of a single character at this vertex.
    pub fn character_degree(&self) -> BigInt {
        match &self.kind {
            VertexKind::NonExceptional(_) => self.degree.clone(),
            VertexKind::ExceptionalSum(v) => &self.degree / BigInt::from(v.len()),
        }
    }

    /// 1-based label: `7` or `(2+3)`.
    pub fn label(&self) -> String {
        match &self.kind {
            VertexKind::NonExceptional(i) => (i + 1).to_string(),
            VertexKind::ExceptionalSum(v) => {
                let parts: Vec<String> = v.iter().map(|i| (i + 1).to_string()).collect();
                format!("({})", parts.join("+"))
            }
        }
    }
}

impl fmt::Display for TreeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BrauerTree {
    pub vertices: Vec<TreeVertex>,
    /// Vertex index pairs `(u, v)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize)>,
    pub m: u64,
}

impl BrauerTree {
    pub fn new(
        vertices: Vec<TreeVertex>,
        edges: impl IntoIterator<Item = (usize, usize)>,
        m: u64,
    ) -> Self {
        let mut edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        BrauerTree { vertices, edges, m }
    }

    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    /// Connected with exactly `|vertices| − 1` edges.
    pub fn is_tree(&self) -> bool {
        let n = self.vertices.len();
        if self.edges.len() + 1 != n {
            return false;
        }
        let mut comp: Vec<usize> = (0..n).collect();
        for &(a, b) in &self.edges {
            if a >= n || b >= n || a == b {
                return false;
            }
            let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
            if ra == rb {
                return false;
            }
            comp[ra] = rb;
        }
        true
    }

    /// Vertex sequence when the tree is a path, starting from the end with
    /// the smaller index.
    pub fn as_path(&self) -> Option<Vec<usize>> {
        let n = self.vertices.len();
        if n == 1 {
            return Some(vec![0]);
        }
        let degs: Vec<usize> = (0..n).map(|v| self.neighbours(v).len()).collect();
        if degs.iter().any(|&d| d > 2) {
            return None;
        }
        let start = (0..n).find(|&v| degs[v] == 1)?;
        let mut path = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(next) = self.neighbours(cur).into_iter().find(|&w| w != prev) {
            path.push(next);
            prev = cur;
            cur = next;
        }
        Some(path)
    }

    /// Relabels vertices by `perm` (old index → new index) onto `vertices`.
    pub fn relabel(&self, perm: &[usize], vertices: Vec<TreeVertex>) -> BrauerTree {
        BrauerTree::new(
            vertices,
            self.edges.iter().map(|&(a, b)| (perm[a], perm[b])),
            self.m,
        )
    }

    /// Path `1 - 4 - (2+3)` or, for other shapes, the edge list in braces.
    pub fn text(&self) -> String {
        match self.as_path() {
            Some(p) => p
                .iter()
                .map(|&v| self.vertices[v].label())
                .collect::<Vec<_>>()
                .join(" - "),
            None => {
                let parts: Vec<String> = self
                    .edges
                    .iter()
                    .map(|&(a, b)| {
                        format!(
                            "{} - {}",
                            self.vertices[a].label(),
                            self.vertices[b].label()
                        )
                    })
                    .collect();
                format!("{{{}}}", parts.join(", "))
            }
        }
    }
}

impl fmt::Display for BrauerTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

pub(crate) fn find(comp: &mut [usize], mut x: usize) -> usize {
    while comp[x] != x {
        comp[x] = comp[comp[x]];
        x = comp[x];
    }
    x
}

/// A block prepared for the tree search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeProblem {
    pub block: Block,
    pub e: usize,
    pub m: u64,
    /// Ordered by smallest member.
    pub vertices: Vec<TreeVertex>,
    /// `candidates[u]` holds every `v` that may still be adjacent to `u`.
    pub candidates: Vec<BTreeSet<usize>>,
    pub forced_edges: BTreeSet<(usize, usize)>,
    /// Vertex permutation `χ ↦ conj(χ)^α`, when one applies to the block.
    pub involution: Option<Vec<usize>>,
    /// Vertex class functions (the exceptional sum for the exceptional vertex).
    pub values: Vec<Vec<Cyclotomic>>,
    pub singular: Vec<usize>,
}

impl TreeProblem {
    pub fn ell(&self) -> u64 {
        self.block.ell
    }

    pub fn exceptional_vertex(&self) -> Option<usize> {
        self.vertices.iter().position(TreeVertex::is_exceptional)
    }

    pub fn tree(&self, edges: impl IntoIterator<Item = (usize, usize)>) -> BrauerTree {
        BrauerTree::new(self.vertices.clone(), edges, self.m)
    }

    /// `u` and `v` may be joined: their vertex functions sum to zero on
    /// every ℓ-singular class.
    pub fn admissible(&self, u: usize, v: usize) -> bool {
        u != v
            && self
                .singular
                .iter()
                .all(|&c| (&self.values[u][c] + &self.values[v][c]).is_zero())
    }

    /// All candidate edges `(u, v)`, `u < v`, in lexicographic order.
    pub fn candidate_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, set) in self.candidates.iter().enumerate() {
            out.extend(set.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }
}

/// Vertices of a cyclic block: its non-exceptional members and, when
/// `m > 1`, one vertex for the exceptional characters, ordered by the
/// smallest member.
pub fn block_vertices(
    b: &Block,
    t: &CharacterTable,
    exceptional: Option<&[usize]>,
) -> Vec<TreeVertex> {
    let exc: BTreeSet<usize> = exceptional.unwrap_or(&[]).iter().copied().collect();
    let mut vertices: Vec<TreeVertex> = b
        .members
        .iter()
        .filter(|i| !exc.contains(i))
        .map(|&i| TreeVertex {
            kind: VertexKind::NonExceptional(i),
            degree: t.degree(i),
        })
        .collect();
    if !exc.is_empty() {
        vertices.push(TreeVertex {
            kind: VertexKind::ExceptionalSum(exc.iter().copied().collect()),
            degree: exc.iter().map(|&i| t.degree(i)).sum(),
        });
    }
    vertices.sort_by_key(|v| v.members()[0]);
    vertices
}

/// The vertex permutation induced by `χ ↦ conj(χ)^α`, or `None` when it does
/// not stabilize the block and its exceptional set.
pub fn vertex_involution(
    vertices: &[TreeVertex],
    t: &CharacterTable,
    alpha: &TableAutomorphism,
) -> Option<Vec<usize>> {
    let conj = t.galois_permutation(-1)?;
    if alpha.char_perm.len() != t.num_irreducibles() {
        return None;
    }
    let image = |i: usize| alpha.char_perm[conj[i]];
    let mut perm = Vec::with_capacity(vertices.len());
    for v in vertices {
        let mut img: Vec<usize> = v.members().into_iter().map(image).collect();
        img.sort_unstable();
        let target = vertices.iter().position(|w| w.members() == img)?;
        perm.push(target);
    }
    (0..perm.len()).all(|v| perm[perm[v]] == v).then_some(perm)
}

/// Sets up the candidate graph of a cyclic block. `involution` is the
/// automorphism `α` of `χ ↦ conj(χ)^α`; pass the identity for plain complex
/// conjugation and `None` to drop the constraint.
pub fn init_problem(
    b: &Block,
    t: &CharacterTable,
    involution: Option<&TableAutomorphism>,
) -> Result<TreeProblem, TreeError> {
    let status = cyclic_status(b, t);
    let CyclicStatus::CyclicNontrivial { e, m, exceptional } = &status else {
        return Err(TreeError::NotCyclic(status));
    };
    let vertices = block_vertices(b, t, exceptional.as_deref());
    let e = *e as usize;
    if vertices.len() != e + 1 {
        return Err(TreeError::Contradiction(format!(
            "{} vertices for {e} edges",
            vertices.len()
        )));
    }
    let values: Vec<Vec<Cyclotomic>> = vertices
        .iter()
        .map(|v| {
            (0..t.num_classes())
                .map(|c| v.members().iter().map(|&i| t.value(i, c).clone()).sum())
                .collect()
        })
        .collect();
    let singular = crate::projective::singular_classes(t, b.ell);
    let n = vertices.len();
    let mut p = TreeProblem {
        block: b.clone(),
        e,
        m: *m,
        involution: involution.and_then(|a| vertex_involution(&vertices, t, a)),
        vertices,
        candidates: vec![BTreeSet::new(); n],
        forced_edges: BTreeSet::new(),
        values,
        singular,
    };
    for u in 0..n {
        for v in u + 1..n {
            if p.admissible(u, v) {
                p.candidates[u].insert(v);
                p.candidates[v].insert(u);
            }
        }
    }
    // A star is the only spanning tree of a star graph.
    let edges = p.candidate_edges();
    if n > 2 && edges.len() == n - 1 && (0..n).any(|u| p.candidates[u].len() == n - 1) {
        p.forced_edges = edges.into_iter().collect();
    }
    Ok(p)
}

/// All spanning trees of the candidate graph that contain the forced edges
/// and pass [`degree_check`], in lexicographic order of edge lists.
pub fn enumerate_trees(p: &TreeProblem) -> Vec<BrauerTree> {
    let n = p.vertices.len();
    let mut comp: Vec<usize> = (0..n).collect();
    for &(a, b) in &p.forced_edges {
        let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
        if ra == rb {
            return Vec::new();
        }
        comp[ra] = rb;
    }
    let free: Vec<(usize, usize)> = p
        .candidate_edges()
        .into_iter()
        .filter(|e| !p.forced_edges.contains(e))
        .collect();
    let need = p.e.saturating_sub(p.forced_edges.len());
    let mut chosen: Vec<(usize, usize)> = p.forced_edges.iter().copied().collect();
    let mut out = Vec::new();
    extend_forest(p, &free, 0, need, &mut comp, &mut chosen, &mut out);
    out.sort_by(|a, b| a.edges.cmp(&b.edges));
    out
}

fn extend_forest(
    p: &TreeProblem,
    free: &[(usize, usize)],
    from: usize,
    need: usize,
    comp: &mut Vec<usize>,
    chosen: &mut Vec<(usize, usize)>,
    out: &mut Vec<BrauerTree>,
) {
    if need == 0 {
        let tree = p.tree(chosen.iter().copied());
        if tree.is_tree() && degree_check(&tree).is_some() {
            out.push(tree);
        }
        return;
    }
    if free.len() - from < need {
        return;
    }
    for i in from..free.len() {
        if free.len() - i < need {
            break;
        }
        let (a, b) = free[i];
        let (ra, rb) = (find(comp, a), find(comp, b));
        if ra == rb {
            continue;
        }
        let saved = comp.clone();
        comp[ra] = rb;
        chosen.push((a, b));
        extend_forest(p, free, i + 1, need - 1, comp, chosen, out);
        chosen.pop();
        *comp = saved;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blocks::compute_blocks;
    use crate::corpus;

    fn labels(t: &BrauerTree) -> String {
        t.text()
    }

    #[test]
    fn a5_mod_5_candidates_form_a_path() {
        let t = corpus::table("A5").unwrap();
        let b = &compute_blocks(&t, 5).unwrap()[0];
        let p = init_problem(b, &t, None).unwrap();
        let names: Vec<String> = p.vertices.iter().map(TreeVertex::label).collect();
        assert_eq!(names, ["1", "(2+3)", "4"]);
        assert_eq!(p.candidates[0], BTreeSet::from([2]));
        assert_eq!(p.candidates[1], BTreeSet::from([2]));
        let trees = enumerate_trees(&p);
        assert_eq!(
            trees.iter().map(labels).collect::<Vec<_>>(),
            ["1 - 4 - (2+3)"]
        );
    }

    #[test]
    fn a5_mod_3_enumeration_uses_degrees() {
        let t = corpus::table("A5").unwrap();
        let b = &compute_blocks(&t, 3).unwrap()[0];
        let p = init_problem(b, &t, None).unwrap();
        // χ1 + χ4 does not vanish on 3a.
        assert_eq!(p.candidate_edges(), vec![(0, 2), (1, 2)]);
        assert_eq!(p.forced_edges.len(), 2);
        let trees = enumerate_trees(&p);
        assert_eq!(trees.iter().map(labels).collect::<Vec<_>>(), ["1 - 5 - 4"]);
    }

    #[test]
    fn frobenius_group_mod_7_is_a_star() {
        let t = corpus::table("7:3").unwrap();
        let b = &compute_blocks(&t, 7).unwrap()[0];
        let p = init_problem(b, &t, None).unwrap();
        assert_eq!(p.forced_edges.len(), 3);
        let trees = enumerate_trees(&p);
        assert_eq!(trees.len(), 1);
        assert_eq!(trees[0].text(), "{1 - (4+5), 2 - (4+5), 3 - (4+5)}");
    }

    #[test]
    fn defect_zero_block_is_rejected() {
        let t = corpus::table("A5").unwrap();
        let b = &compute_blocks(&t, 5).unwrap()[1];
        assert!(matches!(
            init_problem(b, &t, None),
            Err(TreeError::NotCyclic(_))
        ));
    }

    #[test]
    fn involution_of_conjugation() {
        let t = corpus::table("7:3").unwrap();
        let b = &compute_blocks(&t, 7).unwrap()[0];
        let id = TableAutomorphism::identity(&t);
        let p = init_problem(b, &t, Some(&id)).unwrap();
        assert_eq!(p.involution, Some(vec![0, 2, 1, 3]));
    }
}
