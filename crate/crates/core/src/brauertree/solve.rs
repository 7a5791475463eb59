//! The full pipeline for one block or every cyclic block of a table.

use super::checks::{projective_consistency, respects_involution};
use super::{
    enumerate_trees, force_edges_from_projectives, galois_classes, init_problem, BrauerTree,
    TreeClass, TreeError, TreeProblem, TreeVertex,
};
use crate::blocks::{compute_blocks, cyclic_status, Block, CyclicStatus};
use crate::projective::{projective_pool, ProjectiveChar, DEFAULT_BUDGET};
use crate::table::{CharacterTable, FusionMap};
use crate::tablesearch::{table_automorphisms, TableAutomorphism};

/// Which involution `χ ↦ conj(χ)^α` constrains the trees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InvolutionChoice {
    /// `α` is the unique table automorphism of order 2 if there is exactly
    /// one, otherwise the identity.
    #[default]
    Auto,
    /// `α` is the identity.
    Conjugation,
    Off,
}

#[derive(Debug, Clone)]
pub struct TreeOptions {
    pub pool_budget: usize,
    /// Subgroups whose projectives are induced into the pool.
    pub subgroups: Vec<(CharacterTable, FusionMap)>,
    pub involution: InvolutionChoice,
}

impl Default for TreeOptions {
    fn default() -> Self {
        TreeOptions {
            pool_budget: DEFAULT_BUDGET,
            subgroups: Vec::new(),
            involution: InvolutionChoice::Auto,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSolution {
    pub block: Block,
    pub e: usize,
    pub m: u64,
    pub vertices: Vec<TreeVertex>,
    pub forced_edges: Vec<(usize, usize)>,
    /// Surviving trees before grouping, sorted by edge list.
    pub trees: Vec<BrauerTree>,
    pub classes: Vec<TreeClass>,
    /// Order of the common kernel of the block members.
    pub kernel_order: u128,
    /// Index of the block whose trees were carried over by a table
    /// automorphism.
    pub transported_from: Option<usize>,
}

/// A block index with its solution or the reason it has none.
pub type BlockResult = (usize, Result<BlockSolution, TreeError>);

pub fn resolve_involution(
    t: &CharacterTable,
    choice: InvolutionChoice,
) -> Option<TableAutomorphism> {
    match choice {
        InvolutionChoice::Off => None,
        InvolutionChoice::Conjugation => Some(TableAutomorphism::identity(t)),
        InvolutionChoice::Auto => {
            let auts = table_automorphisms(t);
            let involutions: Vec<&TableAutomorphism> =
                auts.elements.iter().filter(|a| a.order() == 2).collect();
            match involutions.as_slice() {
                [only] => Some((*only).clone()),
                _ => Some(TableAutomorphism::identity(t)),
            }
        }
    }
}

/// Builds the pool from `options` and solves the block.
pub fn solve_block(
    b: &Block,
    t: &CharacterTable,
    options: &TreeOptions,
) -> Result<BlockSolution, TreeError> {
    let pool = projective_pool(t, b.ell, options.pool_budget, &options.subgroups)?;
    let alpha = resolve_involution(t, options.involution);
    solve_block_with(b, t, &pool, alpha.as_ref())
}

/// Candidates, forcing, enumeration and the final checks against `pool`.
pub fn solve_block_with(
    b: &Block,
    t: &CharacterTable,
    pool: &[ProjectiveChar],
    involution: Option<&TableAutomorphism>,
) -> Result<BlockSolution, TreeError> {
    let mut p = init_problem(b, t, involution)?;
    force_edges_from_projectives(&mut p, pool)?;
    let trees: Vec<BrauerTree> = enumerate_trees(&p)
        .into_iter()
        .filter(|tree| final_checks(&p, tree, pool))
        .collect();
    finish(p, trees, t, None)
}

fn final_checks(p: &TreeProblem, tree: &BrauerTree, pool: &[ProjectiveChar]) -> bool {
    projective_consistency(tree, pool)
        && p.involution
            .as_ref()
            .is_none_or(|inv| respects_involution(tree, inv))
}

fn finish(
    p: TreeProblem,
    trees: Vec<BrauerTree>,
    t: &CharacterTable,
    transported_from: Option<usize>,
) -> Result<BlockSolution, TreeError> {
    if trees.is_empty() {
        return Err(TreeError::Contradiction(
            "no tree satisfies all constraints".into(),
        ));
    }
    Ok(BlockSolution {
        kernel_order: t.kernel_order(&p.block.members),
        classes: galois_classes(&trees, t),
        e: p.e,
        m: p.m,
        forced_edges: p.forced_edges.iter().copied().collect(),
        vertices: p.vertices,
        block: p.block,
        trees,
        transported_from,
    })
}

/// Every block of `t` with nontrivial cyclic defect, by block index, with
/// its solution. A block that is the image of an earlier solved block under
/// a table automorphism takes over that block's trees, keeping those that
/// pass its own checks; if none does it is solved directly.
pub fn solve_all(
    t: &CharacterTable,
    ell: u64,
    options: &TreeOptions,
) -> Result<Vec<BlockResult>, TreeError> {
    let blocks = compute_blocks(t, ell)?;
    let pool = projective_pool(t, ell, options.pool_budget, &options.subgroups)?;
    let alpha = resolve_involution(t, options.involution);
    let auts = table_automorphisms(t);
    let mut out: Vec<BlockResult> = Vec::new();
    for (j, b) in blocks.iter().enumerate() {
        if !matches!(cyclic_status(b, t), CyclicStatus::CyclicNontrivial { .. }) {
            continue;
        }
        let transported = out.iter().find_map(|(i, res)| {
            let src = res.as_ref().ok()?;
            auts.elements
                .iter()
                .find_map(|a| transport(src, a, b, t, &pool, alpha.as_ref()).map(|s| (*i, s)))
        });
        let result = match transported {
            Some((i, (p, trees))) => finish(p, trees, t, Some(i)),
            None => solve_block_with(b, t, &pool, alpha.as_ref()),
        };
        out.push((j, result));
    }
    Ok(out)
}

/// Images under `a` of the trees of `src`, when `a` maps its block onto `b`,
/// filtered by the checks of `b`.
fn transport(
    src: &BlockSolution,
    a: &TableAutomorphism,
    b: &Block,
    t: &CharacterTable,
    pool: &[ProjectiveChar],
    involution: Option<&TableAutomorphism>,
) -> Option<(TreeProblem, Vec<BrauerTree>)> {
    let mut image: Vec<usize> = src.block.members.iter().map(|&i| a.char_perm[i]).collect();
    image.sort_unstable();
    if image != b.members || src.block.members == b.members {
        return None;
    }
    let p = init_problem(b, t, involution).ok()?;
    let perm: Vec<usize> = src
        .vertices
        .iter()
        .map(|v| {
            let mut img: Vec<usize> = v.members().into_iter().map(|i| a.char_perm[i]).collect();
            img.sort_unstable();
            p.vertices.iter().position(|w| w.members() == img)
        })
        .collect::<Option<_>>()?;
    let mut trees: Vec<BrauerTree> = src
        .trees
        .iter()
        .map(|tree| tree.relabel(&perm, p.vertices.clone()))
        .filter(|tree| {
            tree.edges.iter().all(|&(u, v)| p.admissible(u, v))
                && super::degree_check(tree).is_some()
                && final_checks(&p, tree, pool)
        })
        .collect();
    trees.sort_by(|x, y| x.edges.cmp(&y.edges));
    (!trees.is_empty()).then_some((p, trees))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn texts(s: &BlockSolution) -> Vec<String> {
        s.trees.iter().map(BrauerTree::text).collect()
    }

    #[test]
    fn a5_trees() {
        let t = corpus::table("A5").unwrap();
        let opts = TreeOptions {
            pool_budget: 50,
            ..TreeOptions::default()
        };
        let b5 = compute_blocks(&t, 5).unwrap();
        let s = solve_block(&b5[0], &t, &opts).unwrap();
        assert_eq!(texts(&s), ["1 - 4 - (2+3)"]);
        assert_eq!(s.classes.len(), 1);
        assert_eq!(s.kernel_order, 1);
        let b3 = compute_blocks(&t, 3).unwrap();
        let s = solve_block(&b3[0], &t, &opts).unwrap();
        assert_eq!(texts(&s), ["1 - 5 - 4"]);
        assert!(matches!(
            solve_block(&b5[1], &t, &opts),
            Err(TreeError::NotCyclic(_))
        ));
    }

    #[test]
    fn forcing_on_a5_mod_5() {
        let t = corpus::table("A5").unwrap();
        let seeds = crate::projective::defect_zero_seeds(&t, 5).unwrap();
        let pool = crate::projective::tensor_closure(&seeds, &t, 5, 50).unwrap();
        let mut p = init_problem(&compute_blocks(&t, 5).unwrap()[0], &t, None).unwrap();
        // Forget the value matching so that only the projectives decide.
        p.forced_edges.clear();
        p.candidates = (0..3)
            .map(|u| (0..3).filter(|&v| v != u).collect())
            .collect();
        let unchanged = {
            let mut q = p.clone();
            force_edges_from_projectives(&mut q, &[]).unwrap();
            q
        };
        assert_eq!(unchanged, p);
        let added = force_edges_from_projectives(&mut p, &pool).unwrap();
        assert_eq!(added.len(), 2);
        assert_eq!(
            p.forced_edges.iter().copied().collect::<Vec<_>>(),
            vec![(0, 2), (1, 2)]
        );
    }

    #[test]
    fn known_small_trees() {
        let opts = TreeOptions::default();
        let cases = [("S4", 3, "1 - 3 - 2"), ("L2(7)", 3, "1 - 6 - 5")];
        for (name, ell, expected) in cases {
            let t = corpus::table(name).unwrap();
            let sols = solve_all(&t, ell, &opts).unwrap();
            let principal = sols
                .iter()
                .find(|(i, _)| *i == 0)
                .unwrap()
                .1
                .as_ref()
                .unwrap();
            assert_eq!(texts(principal), [expected], "{name} mod {ell}");
        }
    }

    #[test]
    fn induction_from_s4_settles_l2_7_mod_7() {
        let t = corpus::table("L2(7)").unwrap();
        let b = &compute_blocks(&t, 7).unwrap()[0];
        // Tensor products alone cannot tell these apart: both trees give
        // the same linear conditions on a projective.
        let s = solve_block(b, &t, &TreeOptions::default()).unwrap();
        assert_eq!(texts(&s), ["1 - (2+3) - 6 - 4", "1 - 4 - 6 - (2+3)"]);
        assert_eq!(s.classes.len(), 2);
        let opts = TreeOptions {
            subgroups: vec![(
                corpus::table("S4").unwrap(),
                corpus::fusion("S4", "L2(7)").unwrap(),
            )],
            ..TreeOptions::default()
        };
        let s = solve_block(b, &t, &opts).unwrap();
        assert_eq!(texts(&s), ["1 - 4 - 6 - (2+3)"]);
    }
}
