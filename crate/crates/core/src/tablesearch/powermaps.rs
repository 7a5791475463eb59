//! Candidate `p`-th power maps compatible with known class functions.

use crate::arith::gcd;
use crate::cyclotomic::PrimeIdealContext;
use crate::table::{CharacterTable, ClassFunction, TableError};

/// For each class, the classes that can be its `p`-th power:
/// * `o(g^p) = o(g)/gcd(o(g), p)`;
/// * `|C(g)|` divides `|C(g^p)|`;
/// * if `p ∤ o(g)`, every probe satisfies `ψ(g^p) = σ_p(ψ(g))`;
/// * every probe satisfies `ψ(g^p) ≡ ψ(g)^p` modulo the fixed prime
///   ideal above `p`.
pub fn powermap_class_candidates(
    t: &CharacterTable,
    p: u64,
    probes: &[ClassFunction],
) -> Result<Vec<Vec<usize>>, TableError> {
    for x in probes {
        x.inner_product(x, t)?;
    }
    let conductor = probes
        .iter()
        .flat_map(|x| x.values())
        .fold(1, |acc, v| crate::arith::lcm(acc, v.conductor()));
    let ctx = PrimeIdealContext::new(p, conductor).ok();
    let n = t.num_classes();
    Ok((0..n)
        .map(|c| {
            let o = t.element_order(c);
            let target_order = o / gcd(o, p);
            (0..n)
                .filter(|&d| {
                    if t.element_order(d) != target_order
                        || !t
                            .centralizer_order(d)
                            .is_multiple_of(t.centralizer_order(c))
                    {
                        return false;
                    }
                    probes.iter().all(|x| {
                        if !o.is_multiple_of(p) {
                            match x.value(c).galois(p as i64) {
                                Ok(v) if &v == x.value(d) => {}
                                _ => return false,
                            }
                        }
                        match &ctx {
                            Some(ctx) => {
                                let diff = x.value(d) - &x.value(c).pow(p);
                                matches!(ctx.reduce(&diff), Ok(r) if r.is_zero())
                            }
                            None => true,
                        }
                    })
                })
                .collect()
        })
        .collect())
}

/// All maps in the product of the per-class candidates, lexicographically
/// ordered; `None` if there are more than `limit`.
pub fn powermap_candidates(
    t: &CharacterTable,
    p: u64,
    probes: &[ClassFunction],
    limit: usize,
) -> Result<Option<Vec<Vec<usize>>>, TableError> {
    let per_class = powermap_class_candidates(t, p, probes)?;
    if per_class.iter().any(Vec::is_empty) {
        return Ok(Some(Vec::new()));
    }
    let mut count: usize = 1;
    for s in &per_class {
        match count.checked_mul(s.len()) {
            Some(c) if c <= limit => count = c,
            _ => return Ok(None),
        }
    }
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for s in &per_class {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                s.iter().map(move |&d| {
                    let mut m = prefix.clone();
                    m.push(d);
                    m
                })
            })
            .collect();
    }
    Ok(Some(out))
}
