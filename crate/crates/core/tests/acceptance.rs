//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints one `PASS`/`FAIL` line; the process fails if any does.
//!
//! All comparisons are exact. Time limits are wall-clock in the profile the
//! suite is built with.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use brauer_core::arith::valuation;
use brauer_core::blocks::{
    compute_blocks, compute_blocks_with, cyclic_status, default_context, Block, CyclicStatus,
};
use brauer_core::brauertree::{
    brute_force_oracle, format_block, resolve_involution, solve_all, solve_block, solve_block_with,
    BlockSolution, BrauerTree, InvolutionChoice, TreeClass, TreeError, TreeOptions, TreeVertex,
    VertexKind,
};
use brauer_core::corpus;
use brauer_core::cyclotomic::Cyclotomic;
use brauer_core::projective::{
    certify_projective, projective_pool, singular_classes, DEFAULT_BUDGET,
};
use brauer_core::table::{CharacterTable, ClassFunction};
use brauer_core::tablesearch::{decompose_by_degrees, determinant, lll_reduce, LatticeBasis};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

const ONE_SECOND: Duration = Duration::from_secs(1);
const MISSING_DEGREES: [u64; 4] = [7194825, 1929727800, 4583103525, 11972188800];
const MISSING_MULTIPLICITY: usize = 6;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant, what: &str) -> Result<Duration, String> {
    let elapsed = start.elapsed();
    ensure(elapsed < limit, || {
        format!("{what} took {elapsed:.2?}, limit {limit:.0?}")
    })?;
    Ok(elapsed)
}

/// Primes `ℓ` dividing `|G|` together with the blocks at `ℓ`.
fn all_blocks() -> Vec<(CharacterTable, u64, Vec<Block>)> {
    let mut out = Vec::new();
    for t in corpus::tables() {
        for ell in t.primes() {
            let blocks = compute_blocks(&t, ell).expect("blocks of a bundled table");
            out.push((t.clone(), ell, blocks));
        }
    }
    out
}

fn partition(blocks: &[Block]) -> BTreeSet<Vec<usize>> {
    blocks.iter().map(|b| b.members.clone()).collect()
}

/// Blocks as the connected components of the relation
/// `Σ_{g ℓ-regular} χ(g)·conj(ψ(g)) ≠ 0`, with the defect read off the
/// smallest `ℓ`-part of a member degree.
fn linked_blocks(t: &CharacterTable, ell: u64) -> BTreeSet<(Vec<usize>, u32)> {
    let n = t.num_irreducibles();
    let regular: Vec<usize> = (0..t.num_classes())
        .filter(|&c| !t.element_order(c).is_multiple_of(ell))
        .collect();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for i in 0..n {
        for j in i + 1..n {
            let s: Cyclotomic = regular
                .iter()
                .map(|&c| {
                    (t.value(i, c) * &t.value(j, c).conj())
                        .scale_int(&BigInt::from(t.class_size(c)))
                })
                .sum();
            if !s.is_zero() {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut comps: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let r = root(&mut parent, i);
        comps.entry(r).or_default().push(i);
    }
    let group = valuation(t.order(), ell as u128);
    comps
        .into_values()
        .map(|members| {
            let min = members
                .iter()
                .map(|&i| {
                    valuation(
                        t.degree(i).to_string().parse::<u128>().unwrap(),
                        ell as u128,
                    )
                })
                .min()
                .unwrap();
            (members, group - min)
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let tables = corpus::tables();
    for t in &tables {
        let v = t.validate();
        ensure(v.is_empty(), || {
            format!("{}: {} violations, first {}", t.name(), v.len(), v[0])
        })?;
    }
    let took = within(ONE_SECOND, start, "validation")?;
    Ok(format!("{} tables valid in {took:.2?}", tables.len()))
}

fn criterion_2() -> Outcome {
    let t = corpus::table("A5").unwrap();
    let mut lines = Vec::new();
    for (ell, expected) in [
        (5u64, vec![(vec![0, 1, 2, 3], 1), (vec![4], 0)]),
        (3, vec![(vec![0, 3, 4], 1), (vec![1], 0), (vec![2], 0)]),
    ] {
        let blocks = compute_blocks(&t, ell).map_err(|e| e.to_string())?;
        let got: BTreeSet<(Vec<usize>, u32)> = blocks
            .iter()
            .map(|b| (b.members.clone(), b.defect))
            .collect();
        let expected: BTreeSet<(Vec<usize>, u32)> = expected.into_iter().collect();
        ensure(got == expected, || format!("l = {ell}: got {got:?}"))?;
        ensure(linked_blocks(&t, ell) == expected, || {
            format!("l = {ell}: linkage oracle disagrees")
        })?;
        lines.push(format!("l = {ell}: {} blocks", blocks.len()));
    }
    let b5 = &compute_blocks(&t, 5).unwrap()[0];
    let s5 = cyclic_status(b5, &t);
    ensure(
        s5 == CyclicStatus::CyclicNontrivial {
            e: 2,
            m: 2,
            exceptional: Some(vec![1, 2]),
        },
        || format!("A5 l = 5 principal block: {s5:?}"),
    )?;
    let b3 = &compute_blocks(&t, 3).unwrap()[0];
    let s3 = cyclic_status(b3, &t);
    ensure(
        s3 == CyclicStatus::CyclicNontrivial {
            e: 2,
            m: 1,
            exceptional: None,
        },
        || format!("A5 l = 3 principal block: {s3:?}"),
    )?;
    // The linkage oracle agrees with the fingerprint partition everywhere.
    for (t, ell, blocks) in all_blocks() {
        let got: BTreeSet<(Vec<usize>, u32)> = blocks
            .iter()
            .map(|b| (b.members.clone(), b.defect))
            .collect();
        ensure(got == linked_blocks(&t, ell), || {
            format!("{} l = {ell}: linkage oracle disagrees", t.name())
        })?;
    }
    Ok(lines.join(", "))
}

fn criterion_3() -> Outcome {
    let t = corpus::table("A5").unwrap();
    let mut parts = Vec::new();
    for (ell, expected) in [(5u64, "1 - 4 - (2+3)"), (3, "1 - 5 - 4")] {
        let start = Instant::now();
        let b = compute_blocks(&t, ell)
            .map_err(|e| e.to_string())?
            .remove(0);
        let s = solve_block(&b, &t, &TreeOptions::default()).map_err(|e| e.to_string())?;
        let took = within(ONE_SECOND, start, &format!("l = {ell}"))?;
        let texts: Vec<String> = s.trees.iter().map(BrauerTree::text).collect();
        ensure(texts == [expected], || format!("l = {ell}: got {texts:?}"))?;
        parts.push(format!("l = {ell}: {expected} ({took:.2?})"));
    }
    Ok(parts.join("; "))
}

fn criterion_4() -> Outcome {
    let mut compared = 0;
    for (t, ell, blocks) in all_blocks() {
        let pool = projective_pool(&t, ell, DEFAULT_BUDGET, &[]).map_err(|e| e.to_string())?;
        let alpha = resolve_involution(&t, InvolutionChoice::Auto);
        for (j, b) in blocks.iter().enumerate() {
            if !matches!(cyclic_status(b, &t), CyclicStatus::CyclicNontrivial { .. }) {
                continue;
            }
            let solved: BTreeSet<Vec<(usize, usize)>> =
                match solve_block_with(b, &t, &pool, alpha.as_ref()) {
                    Ok(s) => s.trees.into_iter().map(|x| x.edges).collect(),
                    Err(TreeError::Contradiction(_)) => BTreeSet::new(),
                    Err(e) => return Err(format!("{} l = {ell} block {}: {e}", t.name(), j + 1)),
                };
            let oracle: BTreeSet<Vec<(usize, usize)>> =
                brute_force_oracle(b, &t, &pool, alpha.as_ref())
                    .map_err(|e| e.to_string())?
                    .into_iter()
                    .map(|x| x.edges)
                    .collect();
            ensure(solved == oracle, || {
                format!(
                    "{} l = {ell} block {}: solver {solved:?}, oracle {oracle:?}",
                    t.name(),
                    j + 1
                )
            })?;
            compared += 1;
        }
    }
    Ok(format!("{compared} cyclic blocks agree"))
}

fn criterion_5() -> Outcome {
    let mut contexts = 0;
    for (t, ell, blocks) in all_blocks() {
        let ctx = default_context(&t, ell).map_err(|e| e.to_string())?;
        let reference = partition(&blocks);
        for j in 1..ctx.n_prime().max(2) {
            let Ok(alt) = ctx.alternative(j) else {
                continue;
            };
            let alt_blocks = compute_blocks_with(&t, &alt).map_err(|e| e.to_string())?;
            ensure(partition(&alt_blocks) == reference, || {
                format!(
                    "{} l = {ell}: image power {j} changes the partition",
                    t.name()
                )
            })?;
            contexts += 1;
        }
    }
    Ok(format!(
        "{contexts} alternative contexts give identical partitions"
    ))
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    for (t, ell, blocks) in all_blocks() {
        for b in &blocks {
            if let CyclicStatus::CyclicNontrivial { e, m, .. } = cyclic_status(b, &t) {
                ensure((ell - 1) % e == 0, || {
                    format!("{} l = {ell}: e = {e}", t.name())
                })?;
                ensure(b.members.len() as u64 == e + m, || {
                    format!(
                        "{} l = {ell}: k = {}, e + m = {}",
                        t.name(),
                        b.members.len(),
                        e + m
                    )
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} cyclic blocks"))
}

/// The projective indecomposable of an edge: both vertex characters, the
/// exceptional vertex contributing all its members.
fn edge_sum(t: &CharacterTable, a: &TreeVertex, b: &TreeVertex) -> ClassFunction {
    let irr = t.irreducibles();
    a.members()
        .into_iter()
        .chain(b.members())
        .map(|i| irr[i].clone())
        .reduce(|x, y| &x + &y)
        .unwrap()
}

fn criterion_7() -> Outcome {
    let mut pool_size = 0;
    let mut edges = 0;
    for t in corpus::tables() {
        for ell in t.primes() {
            let singular = singular_classes(&t, ell);
            let pool = projective_pool(
                &t,
                ell,
                DEFAULT_BUDGET,
                &corpus::subgroup_fusions_into(t.name()),
            )
            .map_err(|e| e.to_string())?;
            for p in &pool {
                ensure(
                    singular.iter().all(|&c| p.character.value(c).is_zero()),
                    || {
                        format!(
                            "{} l = {ell}: {} is nonzero on a singular class",
                            t.name(),
                            p.character
                        )
                    },
                )?;
                ensure(p.coords.iter().all(|c| !c.is_negative()), || {
                    format!(
                        "{} l = {ell}: negative multiplicity in {:?}",
                        t.name(),
                        p.coords
                    )
                })?;
                let cert = certify_projective(&p.character, &t, ell).map_err(|e| e.to_string())?;
                ensure(cert.coords.as_ref() == Some(&p.coords), || {
                    format!("{} l = {ell}: {}", t.name(), cert.report())
                })?;
            }
            pool_size += pool.len();
            for (_, res) in
                solve_all(&t, ell, &TreeOptions::default()).map_err(|e| e.to_string())?
            {
                let Ok(sol) = res else { continue };
                for tree in &sol.trees {
                    for &(u, v) in &tree.edges {
                        let f = edge_sum(&t, &tree.vertices[u], &tree.vertices[v]);
                        let cert = certify_projective(&f, &t, ell).map_err(|e| e.to_string())?;
                        ensure(cert.is_projective(), || {
                            format!(
                                "{} l = {ell} tree {}: edge {u}-{v}: {}",
                                t.name(),
                                tree.text(),
                                cert.report()
                            )
                        })?;
                        edges += 1;
                    }
                }
            }
        }
    }
    Ok(format!(
        "{pool_size} pool characters and {edges} tree edges certified"
    ))
}

/// Squared covolume of the lattice spanned by integer row vectors in an
/// orthonormal basis: the product of the squared pivots of an echelon form
/// built from gcd steps.
fn covolume_squared(rows: &[Vec<BigInt>]) -> (usize, BigInt) {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut det = BigInt::one();
    for c in 0..cols {
        loop {
            let nonzero: Vec<usize> = (rank..m.len()).filter(|&r| !m[r][c].is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let pivot = *nonzero.iter().min_by_key(|&&r| m[r][c].abs()).unwrap();
            for &r in &nonzero {
                if r != pivot {
                    let q = m[r][c].div_floor(&m[pivot][c]);
                    let prow = m[pivot].clone();
                    for (x, y) in m[r].iter_mut().zip(&prow) {
                        *x -= &q * y;
                    }
                }
            }
        }
        if let Some(r) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) {
            m.swap(rank, r);
            det *= &m[rank][c] * &m[rank][c];
            rank += 1;
        }
    }
    (rank, det)
}

fn criterion_8() -> Outcome {
    let t = corpus::table("A5").unwrap();
    let irr = t.irreducibles();
    let mut gens = Vec::new();
    for i in 0..irr.len() {
        for j in i..irr.len() {
            gens.push(irr[i].tensor(&irr[j]).map_err(|e| e.to_string())?);
        }
    }
    let basis = LatticeBasis::from_class_functions(&gens, &t).map_err(|e| e.to_string())?;
    let delta = BigRational::new(3.into(), 4.into());
    let res = lll_reduce(&basis, &delta).map_err(|e| e.to_string())?;
    let reduced = res.basis.class_functions(&gens);
    let found: BTreeSet<usize> = reduced
        .iter()
        .filter_map(|f| irr.iter().position(|x| x == f || x == &-f))
        .collect();
    ensure(found.len() == irr.len(), || {
        format!("only irreducibles {found:?} appear")
    })?;
    for (k, f) in reduced.iter().enumerate() {
        ensure(res.basis.gram[k][k] == BigRational::one(), || {
            format!("vector {} = {f} is not of norm 1", k + 1)
        })?;
    }
    let coords: Vec<Vec<BigInt>> = gens
        .iter()
        .map(|g| g.coordinates(&t))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let (rank, expected) = covolume_squared(&coords);
    let det = determinant(&res.basis.gram);
    ensure(res.basis.rank() == rank, || {
        format!("rank {} instead of {rank}", res.basis.rank())
    })?;
    ensure(res.relations.len() == gens.len() - rank, || {
        format!("{} relations", res.relations.len())
    })?;
    ensure(det == BigRational::from(expected.clone()), || {
        format!("determinant {det}, expected {expected}")
    })?;
    Ok(format!(
        "rank {rank}, {} norm-1 irreducibles, determinant {det}",
        found.len()
    ))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let multiset: Vec<u64> = MISSING_DEGREES
        .iter()
        .flat_map(|&d| std::iter::repeat_n(d, MISSING_MULTIPLICITY))
        .collect();
    let mut sums = 0;
    for (i, &a) in MISSING_DEGREES.iter().enumerate() {
        for &b in &MISSING_DEGREES[i + 1..] {
            let target = a as i128 + b as i128;
            let found = decompose_by_degrees(target, 2, &multiset).map_err(|e| e.to_string())?;
            let expected = vec![vec![a as i128, b as i128]];
            ensure(found == expected, || format!("{target}: {found:?}"))?;
            sums += 1;
        }
    }
    let took = within(ONE_SECOND, start, "degree matching")?;
    Ok(format!("{sums} sums each decompose uniquely ({took:.2?})"))
}

fn criterion_10() -> Outcome {
    let vertex = |kind: VertexKind, degree: i64| TreeVertex {
        kind,
        degree: BigInt::from(degree),
    };
    let vertices = vec![
        vertex(VertexKind::NonExceptional(0), 1),
        vertex(VertexKind::ExceptionalSum(vec![1, 2]), 3),
        vertex(VertexKind::NonExceptional(3), 4),
        vertex(VertexKind::NonExceptional(4), 5),
        vertex(VertexKind::NonExceptional(5), 5),
    ];
    let first = BrauerTree::new(vertices.clone(), [(0, 2), (2, 3), (1, 3), (1, 4)], 2);
    let second = BrauerTree::new(vertices.clone(), [(0, 2), (2, 4), (1, 4), (1, 3)], 2);
    let class = TreeClass {
        representative: first.clone(),
        members: vec![first.clone(), second.clone()],
        generators: vec![vec![vec![5, 6]]],
    };
    let sol = BlockSolution {
        block: Block {
            ell: 7,
            members: (0..6).collect(),
            defect: 1,
            fingerprint: Vec::new(),
        },
        e: 4,
        m: 2,
        vertices,
        forced_edges: Vec::new(),
        trees: vec![first, second],
        classes: vec![class],
        kernel_order: 1,
        transported_from: None,
    };
    let got = format_block(0, &sol);
    let expected = "block 1: characters 1, 2, 3, 4, 5, 6; defect 1; e = 4, m = 2\n  1 - 4 - 5 - (2+3) - 6  modulo ⟨(5,6)⟩\n";
    ensure(got == expected, || format!("got {got:?}"))?;
    Ok(format!("{:?}", got.lines().nth(1).unwrap().trim()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("exact validation of the bundled tables", criterion_1),
        ("A5 blocks at l = 5 and l = 3", criterion_2),
        ("A5 Brauer trees at l = 5 and l = 3", criterion_3),
        ("solver matches exhaustive enumeration", criterion_4),
        (
            "block partition independent of the prime ideal",
            criterion_5,
        ),
        ("e divides l - 1 and k = e + m", criterion_6),
        ("projectivity of the pool and of tree edges", criterion_7),
        ("LLL on A5 tensor products", criterion_8),
        ("unique degree decompositions", criterion_9),
        ("catalog format", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2}: {name}: {detail} [{took:.2?}]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name}: {why} [{took:.2?}]", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
