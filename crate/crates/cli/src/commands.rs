//! One function per subcommand. Each returns the text report, the JSON
//! report and the exit status.

use std::fmt::Write;
use std::fs;
use std::path::PathBuf;

use brauer_core::blocks::{
    compute_blocks, compute_blocks_with, cyclic_status, default_context, CyclicStatus,
};
use brauer_core::brauertree::{
    brute_force_oracle, format_catalog, resolve_involution, solve_all, solve_block_with, to_dot,
    BlockSolution, TreeError, TreeOptions,
};
use brauer_core::projective::projective_pool;
use brauer_core::table::{CharacterTable, ClassFunction, FusionMap};
use brauer_core::tablesearch::{
    decompose_by_degrees, determinant, lll_reduce, powermap_candidates, powermap_class_candidates,
    quotient_fusion_candidates, table_automorphisms, LatticeBasis,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::load::LoadError;

pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub status: u8,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome {
            text,
            json,
            status: 0,
        }
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn list(v: &[usize]) -> String {
    v.iter()
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn err<E: std::fmt::Display>(e: E) -> LoadError {
    LoadError(e.to_string())
}

pub fn validate(t: &CharacterTable) -> Outcome {
    let violations = t.validate();
    let mut text = format!(
        "table {}: {} classes, order {}\n",
        t.name(),
        t.num_classes(),
        t.order()
    );
    if violations.is_empty() {
        text.push_str("ok\n");
    }
    for v in &violations {
        let _ = writeln!(text, "{v}");
    }
    let json = json!({
        "table": t.name(),
        "ok": violations.is_empty(),
        "violations": violations.iter().map(|v| json!({
            "kind": v.kind.as_str(),
            "indices": v.indices,
            "message": v.message,
        })).collect::<Vec<_>>(),
    });
    Outcome {
        text,
        json,
        status: if violations.is_empty() { 0 } else { 1 },
    }
}

#[derive(Serialize)]
struct BlockJson {
    index: usize,
    members: Vec<usize>,
    defect: u32,
    status: &'static str,
    e: Option<u64>,
    m: Option<u64>,
    exceptional: Option<Vec<usize>>,
}

fn status_name(s: &CyclicStatus) -> &'static str {
    match s {
        CyclicStatus::CyclicNontrivial { .. } => "cyclic",
        CyclicStatus::TrivialDefect => "defect-zero",
        CyclicStatus::NotCyclic => "not-cyclic",
        CyclicStatus::Undecided => "undecided",
    }
}

/// `alternative` selects the `j`-th power of the default root-of-unity image.
pub fn blocks(
    t: &CharacterTable,
    ell: u64,
    alternative: Option<u64>,
) -> Result<Outcome, LoadError> {
    let blocks = match alternative {
        None => compute_blocks(t, ell).map_err(err)?,
        Some(j) => {
            let ctx = default_context(t, ell)
                .map_err(err)?
                .alternative(j)
                .map_err(err)?;
            compute_blocks_with(t, &ctx).map_err(err)?
        }
    };
    let mut text = format!("table {}, l = {ell}\n", t.name());
    let mut rows = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        let status = cyclic_status(b, t);
        let _ = write!(
            text,
            "block {}: characters {}; defect {}; {status}",
            i + 1,
            list(&b.members),
            b.defect
        );
        let (e, m, exc) = match &status {
            CyclicStatus::CyclicNontrivial { e, m, exceptional } => {
                (Some(*e), Some(*m), exceptional.clone())
            }
            _ => (None, None, None),
        };
        if let Some(x) = &exc {
            let _ = write!(text, "; exceptional {}", list(x));
        }
        text.push('\n');
        rows.push(BlockJson {
            index: i + 1,
            members: one_based(&b.members),
            defect: b.defect,
            status: status_name(&status),
            e,
            m,
            exceptional: exc.map(|x| one_based(&x)),
        });
    }
    let json = json!({ "table": t.name(), "ell": ell, "blocks": rows });
    Ok(Outcome::ok(text, json))
}

fn ints(v: &[BigInt]) -> Vec<String> {
    v.iter().map(BigInt::to_string).collect()
}

pub fn projectives(
    t: &CharacterTable,
    ell: u64,
    budget: usize,
    subgroups: &[(CharacterTable, FusionMap)],
) -> Result<Outcome, LoadError> {
    let pool = projective_pool(t, ell, budget, subgroups).map_err(err)?;
    let mut text = format!(
        "table {}, l = {ell}: {} projective characters\n",
        t.name(),
        pool.len()
    );
    let mut rows = Vec::new();
    for (i, p) in pool.iter().enumerate() {
        let degree = p
            .character
            .degree()
            .map(|d| d.to_string())
            .unwrap_or_default();
        let _ = writeln!(
            text,
            "P{} = {}  degree {degree}  [{}]",
            i + 1,
            p.provenance,
            ints(&p.coords).join(", ")
        );
        rows.push(json!({
            "index": i + 1,
            "provenance": p.provenance.to_string(),
            "degree": degree,
            "multiplicities": ints(&p.coords),
        }));
    }
    Ok(Outcome::ok(
        text,
        json!({ "table": t.name(), "ell": ell, "projectives": rows }),
    ))
}

pub struct TreesArgs {
    pub options: TreeOptions,
    pub oracle: bool,
    pub out_dir: Option<PathBuf>,
}

fn solution_json(i: usize, res: &Result<BlockSolution, TreeError>) -> Value {
    match res {
        Err(e) => json!({ "block": i + 1, "error": e.to_string() }),
        Ok(s) => json!({
            "block": i + 1,
            "members": one_based(&s.block.members),
            "e": s.e,
            "m": s.m,
            "kernel_order": s.kernel_order.to_string(),
            "transported_from": s.transported_from.map(|j| j + 1),
            "trees": s.trees.iter().map(|t| t.text()).collect::<Vec<_>>(),
            "classes": s.classes.iter().map(|c| json!({
                "representative": c.representative.text(),
                "size": c.members.len(),
                "modulo": c.modulo(),
            })).collect::<Vec<_>>(),
        }),
    }
}

fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '.' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

pub fn trees(t: &CharacterTable, ell: u64, args: &TreesArgs) -> Result<Outcome, LoadError> {
    let sols = solve_all(t, ell, &args.options).map_err(err)?;
    let mut text = format_catalog(t.name(), ell, &sols);
    let mut status = 0;
    if sols
        .iter()
        .any(|(_, r)| matches!(r, Err(TreeError::Contradiction(_))))
    {
        status = 2;
    }
    let mut oracle_rows = Vec::new();
    if args.oracle {
        let pool = projective_pool(t, ell, args.options.pool_budget, &args.options.subgroups)
            .map_err(err)?;
        let alpha = resolve_involution(t, args.options.involution);
        let blocks = compute_blocks(t, ell).map_err(err)?;
        for (i, _) in &sols {
            let b = &blocks[*i];
            let solved = match solve_block_with(b, t, &pool, alpha.as_ref()) {
                Ok(s) => s.trees,
                Err(TreeError::Contradiction(_)) => Vec::new(),
                Err(e) => return Err(err(e)),
            };
            let verdict = match brute_force_oracle(b, t, &pool, alpha.as_ref()) {
                Ok(o) if o == solved => "agrees".to_string(),
                Ok(o) => {
                    status = status.max(1);
                    format!("disagrees ({} trees against {})", o.len(), solved.len())
                }
                Err(e) => format!("skipped: {e}"),
            };
            let _ = writeln!(text, "oracle block {}: {verdict}", i + 1);
            oracle_rows.push(json!({ "block": i + 1, "verdict": verdict }));
        }
    }
    let mut files = Vec::new();
    if let Some(dir) = &args.out_dir {
        fs::create_dir_all(dir).map_err(|e| LoadError(format!("{}: {e}", dir.display())))?;
        for (i, res) in &sols {
            if let Ok(s) = res {
                let path = dir.join(format!("{}-l{ell}-block{}.dot", file_stem(t.name()), i + 1));
                fs::write(&path, to_dot(t.name(), ell, *i, s))
                    .map_err(|e| LoadError(format!("{}: {e}", path.display())))?;
                let _ = writeln!(text, "wrote {}", path.display());
                files.push(path.display().to_string());
            }
        }
    }
    let json = json!({
        "table": t.name(),
        "ell": ell,
        "blocks": sols.iter().map(|(i, r)| solution_json(*i, r)).collect::<Vec<_>>(),
        "oracle": oracle_rows,
        "files": files,
    });
    Ok(Outcome { text, json, status })
}

/// Quotient fusions `src → tgt`. `pairs` are `(i, j)`: source irreducible
/// `i` is the lift of target irreducible `j`; `probes` are source
/// irreducibles constant on fibres.
pub fn fusions(
    src: &CharacterTable,
    tgt: &CharacterTable,
    probes: &[usize],
    pairs: &[(usize, usize)],
) -> Result<Outcome, LoadError> {
    let check = |i: usize, n: usize, what: &str| -> Result<usize, LoadError> {
        if i == 0 || i > n {
            Err(LoadError(format!(
                "{what} irreducible {i} out of range 1..={n}"
            )))
        } else {
            Ok(i - 1)
        }
    };
    let probe_fns: Vec<ClassFunction> = probes
        .iter()
        .map(|&i| Ok(src.irreducible(check(i, src.num_irreducibles(), "source")?)))
        .collect::<Result<_, LoadError>>()?;
    let pair_fns = pairs
        .iter()
        .map(|&(i, j)| {
            Ok((
                src.irreducible(check(i, src.num_irreducibles(), "source")?),
                tgt.irreducible(check(j, tgt.num_irreducibles(), "target")?),
            ))
        })
        .collect::<Result<Vec<_>, LoadError>>()?;
    let cands = quotient_fusion_candidates(src, tgt, &probe_fns, &pair_fns).map_err(err)?;
    let auts = table_automorphisms(tgt);
    // Candidates equal up to a table automorphism of the target.
    let mut class_of: Vec<usize> = Vec::with_capacity(cands.len());
    let mut reps: Vec<usize> = Vec::new();
    for (k, f) in cands.iter().enumerate() {
        let found = reps.iter().position(|&r| {
            auts.elements.iter().any(|a| {
                cands[r]
                    .map()
                    .iter()
                    .map(|&d| a.class_perm[d])
                    .collect::<Vec<_>>()
                    == f.map()
            })
        });
        match found {
            Some(c) => class_of.push(c),
            None => {
                class_of.push(reps.len());
                reps.push(k);
            }
        }
    }
    let mut text = format!(
        "fusions {} -> {}: {} candidates, {} up to table automorphisms\n",
        src.name(),
        tgt.name(),
        cands.len(),
        reps.len()
    );
    let mut rows = Vec::new();
    for (k, f) in cands.iter().enumerate() {
        let _ = writeln!(
            text,
            "{}: [{}]  class {}",
            k + 1,
            list(f.map()),
            class_of[k] + 1
        );
        rows.push(json!({ "map": one_based(f.map()), "class": class_of[k] + 1 }));
    }
    let json = json!({
        "source": src.name(),
        "target": tgt.name(),
        "candidates": rows,
        "classes": reps.len(),
    });
    Ok(Outcome::ok(text, json))
}

pub fn powermaps(t: &CharacterTable, p: u64, limit: usize) -> Result<Outcome, LoadError> {
    let probes = t.irreducibles();
    let per_class = powermap_class_candidates(t, p, &probes).map_err(err)?;
    let maps = powermap_candidates(t, p, &probes, limit).map_err(err)?;
    let mut text = format!("table {}, p = {p}\n", t.name());
    for (c, s) in per_class.iter().enumerate() {
        let _ = writeln!(
            text,
            "class {} ({}): {}",
            c + 1,
            t.classes()[c].name,
            list(s)
        );
    }
    let stored = t.power_map(p).map(|m| m.to_vec());
    match &maps {
        Some(ms) => {
            let _ = writeln!(text, "{} maps", ms.len());
            for m in ms {
                let mark = if Some(m) == stored.as_ref() {
                    "  (stored)"
                } else {
                    ""
                };
                let _ = writeln!(text, "[{}]{mark}", list(m));
            }
        }
        None => {
            let _ = writeln!(text, "more than {limit} maps");
        }
    }
    let json = json!({
        "table": t.name(),
        "p": p,
        "per_class": per_class.iter().map(|s| one_based(s)).collect::<Vec<_>>(),
        "maps": maps.as_ref().map(|ms| ms.iter().map(|m| one_based(m)).collect::<Vec<_>>()),
        "stored": stored.map(|m| one_based(&m)),
    });
    Ok(Outcome::ok(text, json))
}

fn rational(s: &str) -> Result<BigRational, LoadError> {
    let (n, d) = s.split_once('/').unwrap_or((s, "1"));
    let n: BigInt = n
        .trim()
        .parse()
        .map_err(|_| LoadError(format!("bad rational {s}")))?;
    let d: BigInt = d
        .trim()
        .parse()
        .map_err(|_| LoadError(format!("bad rational {s}")))?;
    if d == BigInt::from(0) {
        return Err(LoadError(format!("bad rational {s}")));
    }
    Ok(BigRational::new(n, d))
}

/// Reduces the lattice spanned by all products `χ_i ⊗ χ_j`, `i ≤ j`.
pub fn lll(t: &CharacterTable, delta: &str) -> Result<Outcome, LoadError> {
    let delta = rational(delta)?;
    let irr = t.irreducibles();
    let mut gens = Vec::new();
    for i in 0..irr.len() {
        for j in i..irr.len() {
            gens.push(irr[i].tensor(&irr[j]).map_err(err)?);
        }
    }
    let basis = LatticeBasis::from_class_functions(&gens, t).map_err(err)?;
    let res = lll_reduce(&basis, &delta).map_err(err)?;
    let det = determinant(&res.basis.gram);
    let fns = res.basis.class_functions(&gens);
    let mut text = format!(
        "table {}: {} tensor products, rank {}, {} relations, Gram determinant {det}\n",
        t.name(),
        gens.len(),
        res.basis.rank(),
        res.relations.len()
    );
    let mut rows = Vec::new();
    for (k, f) in fns.iter().enumerate() {
        let norm = res.basis.gram[k][k].clone();
        let which = irr
            .iter()
            .position(|x| x == f)
            .map(|i| format!("  = X{}", i + 1));
        let neg = irr
            .iter()
            .position(|x| x == &-f)
            .map(|i| format!("  = -X{}", i + 1));
        let name = which.or(neg).unwrap_or_default();
        let _ = writeln!(text, "v{}: norm {norm}  {f}{name}", k + 1);
        rows.push(json!({
            "norm": norm.to_string(),
            "values": f.values().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        }));
    }
    let json = json!({
        "table": t.name(),
        "rank": res.basis.rank(),
        "relations": res.relations.len(),
        "determinant": det.to_string(),
        "vectors": rows,
    });
    Ok(Outcome::ok(text, json))
}

fn cycles(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for s in 0..perm.len() {
        if seen[s] || perm[s] == s {
            continue;
        }
        let mut c = Vec::new();
        let mut v = s;
        while !seen[v] {
            seen[v] = true;
            c.push((v + 1).to_string());
            v = perm[v];
        }
        let _ = write!(out, "({})", c.join(","));
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

pub fn tableauts(t: &CharacterTable) -> Outcome {
    let g = table_automorphisms(t);
    let mut text = format!(
        "table {}: automorphism group of order {}\n",
        t.name(),
        g.order
    );
    let mut rows = Vec::new();
    for a in &g.generators {
        let _ = writeln!(
            text,
            "classes {}  characters {}",
            cycles(&a.class_perm),
            cycles(&a.char_perm)
        );
        rows.push(json!({ "classes": cycles(&a.class_perm), "characters": cycles(&a.char_perm) }));
    }
    Outcome::ok(
        text,
        json!({ "table": t.name(), "order": g.order.to_string(), "generators": rows }),
    )
}

pub fn degmatch(degree: i128, norm: usize, missing: &[u64]) -> Result<Outcome, LoadError> {
    let sols = decompose_by_degrees(degree, norm, missing).map_err(err)?;
    let mut text = format!(
        "degree {degree}, norm {norm}: {} decompositions\n",
        sols.len()
    );
    for s in &sols {
        let parts: Vec<String> = s
            .iter()
            .enumerate()
            .map(|(i, &x)| match (i, x < 0) {
                (0, false) => x.to_string(),
                (0, true) => format!("-{}", -x),
                (_, false) => format!("+ {x}"),
                (_, true) => format!("- {}", -x),
            })
            .collect();
        let _ = writeln!(text, "{}", parts.join(" "));
    }
    let json = json!({
        "degree": degree.to_string(),
        "norm": norm,
        "decompositions": sols.iter().map(|s| s.iter().map(i128::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    Ok(Outcome::ok(text, json))
}
