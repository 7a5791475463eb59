use std::collections::BTreeSet;
use std::sync::OnceLock;

use brauer_core::blocks::{compute_blocks, cyclic_status, Block, CyclicStatus};
use brauer_core::brauertree::{
    brute_force_oracle, degree_check, projective_consistency, resolve_involution,
    respects_involution, solve_block_with, vertex_involution, InvolutionChoice, TreeError,
};
use brauer_core::corpus;
use brauer_core::projective::{projective_pool, ProjectiveChar, DEFAULT_BUDGET};
use brauer_core::table::CharacterTable;
use proptest::prelude::*;

struct Case {
    table: CharacterTable,
    block: Block,
    pool: Vec<ProjectiveChar>,
}

/// Every cyclic block of the corpus with its full default pool.
fn cases() -> &'static [Case] {
    static CASES: OnceLock<Vec<Case>> = OnceLock::new();
    CASES.get_or_init(|| {
        let mut out = Vec::new();
        for t in corpus::tables() {
            for ell in t.primes() {
                let pool = projective_pool(&t, ell, DEFAULT_BUDGET, &[]).unwrap();
                for b in compute_blocks(&t, ell).unwrap() {
                    if matches!(cyclic_status(&b, &t), CyclicStatus::CyclicNontrivial { .. }) {
                        out.push(Case {
                            table: t.clone(),
                            block: b,
                            pool: pool.clone(),
                        });
                    }
                }
            }
        }
        out
    })
}

fn involution_choice() -> impl Strategy<Value = InvolutionChoice> {
    prop::sample::select(vec![
        InvolutionChoice::Auto,
        InvolutionChoice::Conjugation,
        InvolutionChoice::Off,
    ])
}

type Edges = BTreeSet<Vec<(usize, usize)>>;

fn solve(c: &Case, pool: &[ProjectiveChar], choice: InvolutionChoice) -> Edges {
    let alpha = resolve_involution(&c.table, choice);
    match solve_block_with(&c.block, &c.table, pool, alpha.as_ref()) {
        Ok(s) => s.trees.into_iter().map(|t| t.edges).collect(),
        Err(TreeError::Contradiction(_)) => Edges::new(),
        Err(e) => panic!("{}: {e}", c.table.name()),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solver_matches_oracle_on_partial_pools(
        i in any::<prop::sample::Index>(),
        frac in 0.0f64..=1.0,
        choice in involution_choice(),
    ) {
        let c = &cases()[i.index(cases().len())];
        let pool = &c.pool[..(c.pool.len() as f64 * frac) as usize];
        let alpha = resolve_involution(&c.table, choice);
        let oracle: Edges = brute_force_oracle(&c.block, &c.table, pool, alpha.as_ref())
            .unwrap()
            .into_iter()
            .map(|t| t.edges)
            .collect();
        prop_assert_eq!(solve(c, pool, choice), oracle);
    }

    #[test]
    fn more_projectives_never_add_trees(
        i in any::<prop::sample::Index>(),
        a in 0.0f64..=1.0,
        b in 0.0f64..=1.0,
        choice in involution_choice(),
    ) {
        let c = &cases()[i.index(cases().len())];
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let small = solve(c, &c.pool[..(c.pool.len() as f64 * lo) as usize], choice);
        let large = solve(c, &c.pool[..(c.pool.len() as f64 * hi) as usize], choice);
        prop_assert!(large.is_subset(&small));
    }

    #[test]
    fn emitted_trees_are_valid(i in any::<prop::sample::Index>(), choice in involution_choice()) {
        let c = &cases()[i.index(cases().len())];
        let alpha = resolve_involution(&c.table, choice);
        let Ok(sol) = solve_block_with(&c.block, &c.table, &c.pool, alpha.as_ref()) else { return Ok(()) };
        prop_assert_eq!(sol.vertices.len(), sol.e + 1);
        let inv = alpha.as_ref().and_then(|a| vertex_involution(&sol.vertices, &c.table, a));
        for tree in &sol.trees {
            prop_assert!(tree.is_tree());
            prop_assert_eq!(tree.edges.len(), sol.e);
            prop_assert!(degree_check(tree).is_some());
            prop_assert!(projective_consistency(tree, &c.pool));
            if let Some(inv) = &inv {
                prop_assert!(respects_involution(tree, inv));
            }
            for &(u, v) in &sol.forced_edges {
                prop_assert!(tree.edges.contains(&(u, v)));
            }
        }
        let in_classes: usize = sol.classes.iter().map(|k| k.members.len()).sum();
        prop_assert_eq!(in_classes, sol.trees.len());
    }
}
