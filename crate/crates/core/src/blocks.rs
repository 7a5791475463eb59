//! ℓ-blocks from central characters reduced modulo a prime ideal above ℓ,
//! defects, and the cyclic-defect screen.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::arith::{gcd, is_prime, valuation};
use crate::cyclotomic::{Cyclotomic, CyclotomicError, FiniteFieldElement, PrimeIdealContext};
use crate::table::CharacterTable;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlockError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("table has {irr} irreducibles for {classes} classes")]
    Incomplete { irr: usize, classes: usize },
    #[error("central character of irreducible {chi} at class {class} is not integral at {ell}: {source}")]
    Reduction {
        chi: usize,
        class: usize,
        ell: u64,
        source: CyclotomicError,
    },
    #[error(transparent)]
    Context(#[from] CyclotomicError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub ell: u64,
    /// 0-based irreducible indices, ascending.
    pub members: Vec<usize>,
    pub defect: u32,
    /// Reduced central character, one value per class.
    pub fingerprint: Vec<FiniteFieldElement>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CyclicStatus {
    CyclicNontrivial {
        e: u64,
        m: u64,
        /// Present iff `m > 1`; 0-based member indices.
        exceptional: Option<Vec<usize>>,
    },
    TrivialDefect,
    NotCyclic,
    Undecided,
}

impl fmt::Display for CyclicStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CyclicStatus::CyclicNontrivial { e, m, .. } => write!(f, "cyclic (e = {e}, m = {m})"),
            CyclicStatus::TrivialDefect => f.write_str("defect zero"),
            CyclicStatus::NotCyclic => f.write_str("not cyclic"),
            CyclicStatus::Undecided => f.write_str("undecided"),
        }
    }
}

/// `ω_χ(C) = |C|·χ(g)/χ(1)` for every class.
pub fn central_character(t: &CharacterTable, chi: usize) -> Vec<Cyclotomic> {
    let deg = t.value(chi, 0).clone();
    let inv = match deg.to_rational() {
        Some(q) if !q.is_zero() => q.recip(),
        _ => return vec![Cyclotomic::zero(); t.num_classes()],
    };
    (0..t.num_classes())
        .map(|c| {
            let size = Cyclotomic::from_bigint(BigInt::from(t.class_size(c)));
            (&size * t.value(chi, c)).scale(&inv)
        })
        .collect()
}

/// The deterministic prime ideal used for the table's values.
pub fn default_context(t: &CharacterTable, ell: u64) -> Result<PrimeIdealContext, BlockError> {
    if !is_prime(ell) {
        return Err(BlockError::NotPrime(ell));
    }
    Ok(PrimeIdealContext::new(ell, t.conductor())?)
}

pub fn compute_blocks(t: &CharacterTable, ell: u64) -> Result<Vec<Block>, BlockError> {
    let ctx = default_context(t, ell)?;
    compute_blocks_with(t, &ctx)
}

/// Blocks with respect to a given prime ideal context.
pub fn compute_blocks_with(
    t: &CharacterTable,
    ctx: &PrimeIdealContext,
) -> Result<Vec<Block>, BlockError> {
    let ell = ctx.ell();
    if !t.is_complete() {
        return Err(BlockError::Incomplete {
            irr: t.num_irreducibles(),
            classes: t.num_classes(),
        });
    }
    let a = valuation(t.order(), ell as u128);
    let mut fingerprints = Vec::with_capacity(t.num_irreducibles());
    for chi in 0..t.num_irreducibles() {
        let fp = central_character(t, chi)
            .iter()
            .enumerate()
            .map(|(class, w)| {
                ctx.reduce(w).map_err(|source| BlockError::Reduction {
                    chi,
                    class,
                    ell,
                    source,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        fingerprints.push(fp);
    }
    let mut blocks: Vec<Block> = Vec::new();
    for (chi, fp) in fingerprints.into_iter().enumerate() {
        let joined = if a == 0 {
            None
        } else {
            blocks.iter_mut().find(|b| b.fingerprint == fp)
        };
        match joined {
            Some(b) => b.members.push(chi),
            None => blocks.push(Block {
                ell,
                members: vec![chi],
                defect: 0,
                fingerprint: fp,
            }),
        }
    }
    for b in &mut blocks {
        let min_v = b
            .members
            .iter()
            .map(|&chi| degree_valuation(t, chi, ell))
            .min()
            .unwrap_or(0);
        b.defect = a.saturating_sub(min_v);
    }
    Ok(blocks)
}

fn degree_valuation(t: &CharacterTable, chi: usize, ell: u64) -> u32 {
    let mut d = t.degree(chi);
    let l = BigInt::from(ell);
    let mut v = 0;
    while !d.is_zero() && (&d % &l).is_zero() {
        d /= &l;
        v += 1;
    }
    v
}

/// Members grouped by their values on the ℓ-regular classes, in order of
/// first appearance.
pub fn exceptional_partition(b: &Block, t: &CharacterTable, ell: u64) -> Vec<Vec<usize>> {
    let regular: Vec<usize> = (0..t.num_classes())
        .filter(|&c| !t.element_order(c).is_multiple_of(ell))
        .collect();
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for &chi in &b.members {
        let pos = parts
            .iter()
            .position(|p| regular.iter().all(|&c| t.value(p[0], c) == t.value(chi, c)));
        match pos {
            Some(i) => parts[i].push(chi),
            None => parts.push(vec![chi]),
        }
    }
    parts
}

/// Members whose values are fixed by every Galois automorphism acting
/// trivially on ℓ'-roots of unity.
fn ell_rational_members(b: &Block, t: &CharacterTable) -> Vec<usize> {
    let n = crate::arith::lcm(t.conductor(), t.exponent());
    let (_, n_prime) = crate::arith::split_prime_part(n, b.ell);
    let ks: Vec<i64> = (1..=n)
        .filter(|&k| gcd(k, n) == 1 && k % n_prime == 1 % n_prime.max(1))
        .map(|k| k as i64)
        .collect();
    b.members
        .iter()
        .copied()
        .filter(|&chi| {
            t.irreducible_rows()[chi]
                .iter()
                .all(|v| ks.iter().all(|&k| v.galois(k).as_ref() == Ok(v)))
        })
        .collect()
}

/// `(e, m, exceptional)` fitting the block's member count and ℓ-regular
/// partition for some `e | ℓ−1`, `m = (ℓ^d − 1)/e`.
fn numeric_fit(b: &Block, t: &CharacterTable) -> Option<CyclicStatus> {
    let ell = b.ell;
    let k = b.members.len() as u64;
    let parts = exceptional_partition(b, t, ell);
    let order = (ell as u128).checked_pow(b.defect)?;
    for e in (1..ell).filter(|e| (ell - 1).is_multiple_of(*e)) {
        let m = ((order - 1) / e as u128) as u64;
        if e == 1 {
            // Two-vertex tree: every member restricts to the same Brauer
            // character, so the partition is a single part.
            if k != 1 + m || parts.len() != 1 {
                continue;
            }
            if m == 1 {
                return Some(CyclicStatus::CyclicNontrivial {
                    e,
                    m,
                    exceptional: None,
                });
            }
            let fixed = ell_rational_members(b, t);
            if fixed.len() != 1 {
                continue;
            }
            let exc: Vec<usize> = b
                .members
                .iter()
                .copied()
                .filter(|c| *c != fixed[0])
                .collect();
            return Some(CyclicStatus::CyclicNontrivial {
                e,
                m,
                exceptional: Some(exc),
            });
        }
        if parts.len() as u64 != e + 1 {
            continue;
        }
        if m == 1 {
            if k == e + 1 {
                return Some(CyclicStatus::CyclicNontrivial {
                    e,
                    m,
                    exceptional: None,
                });
            }
            continue;
        }
        if k != e + m {
            continue;
        }
        let big: Vec<&Vec<usize>> = parts.iter().filter(|p| p.len() > 1).collect();
        if big.len() == 1 && big[0].len() as u64 == m {
            let mut exc = big[0].clone();
            exc.sort_unstable();
            return Some(CyclicStatus::CyclicNontrivial {
                e,
                m,
                exceptional: Some(exc),
            });
        }
    }
    None
}

/// Defect zero, cyclic with its `(e, m)` data, provably not cyclic, or
/// undecided by the available tests.
///
/// For `d ≥ 2` a block is cyclic when the Sylow ℓ-subgroup is (some class
/// has order divisible by `ℓ^a`), and not cyclic when no element has order
/// `ℓ^d` or no `(e, m)` fits; anything else is left undecided.
pub fn cyclic_status(b: &Block, t: &CharacterTable) -> CyclicStatus {
    if b.defect == 0 {
        return CyclicStatus::TrivialDefect;
    }
    let ell = b.ell as u128;
    let fit = numeric_fit(b, t);
    if b.defect == 1 {
        return fit.unwrap_or(CyclicStatus::Undecided);
    }
    let a = valuation(t.order(), ell);
    let has_order = |p: u32| {
        let q = ell.pow(p);
        (0..t.num_classes()).any(|c| (t.element_order(c) as u128).is_multiple_of(q))
    };
    if !has_order(b.defect) {
        return CyclicStatus::NotCyclic;
    }
    match fit {
        None => CyclicStatus::NotCyclic,
        Some(s) if has_order(a) => s,
        Some(_) => CyclicStatus::Undecided,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn central_character_examples() {
        let t = corpus::table("A5").unwrap();
        let w = central_character(&t, 0);
        let sizes: Vec<Cyclotomic> = [1, 15, 20, 12, 12]
            .iter()
            .map(|&s| Cyclotomic::from_integer(s))
            .collect();
        assert_eq!(w, sizes);
        for chi in 0..5 {
            assert!(central_character(&t, chi)[0].is_one());
        }
        assert!(central_character(&t, 3)[1].is_zero());
    }

    #[test]
    fn a5_at_five_and_three() {
        let t = corpus::table("A5").unwrap();
        let b5 = compute_blocks(&t, 5).unwrap();
        let members: Vec<_> = b5.iter().map(|b| (b.members.clone(), b.defect)).collect();
        assert_eq!(members, vec![(vec![0, 1, 2, 3], 1), (vec![4], 0)]);
        assert_eq!(
            cyclic_status(&b5[0], &t),
            CyclicStatus::CyclicNontrivial {
                e: 2,
                m: 2,
                exceptional: Some(vec![1, 2])
            }
        );
        assert_eq!(
            exceptional_partition(&b5[0], &t, 5),
            vec![vec![0], vec![1, 2], vec![3]]
        );
        assert_eq!(cyclic_status(&b5[1], &t), CyclicStatus::TrivialDefect);

        let b3 = compute_blocks(&t, 3).unwrap();
        let members: Vec<_> = b3.iter().map(|b| (b.members.clone(), b.defect)).collect();
        assert_eq!(
            members,
            vec![(vec![0, 3, 4], 1), (vec![1], 0), (vec![2], 0)]
        );
        assert_eq!(
            cyclic_status(&b3[0], &t),
            CyclicStatus::CyclicNontrivial {
                e: 2,
                m: 1,
                exceptional: None
            }
        );
        assert_eq!(
            exceptional_partition(&b3[0], &t, 3),
            vec![vec![0], vec![3], vec![4]]
        );
    }

    #[test]
    fn coprime_prime_gives_singletons() {
        let t = corpus::table("A5").unwrap();
        let b = compute_blocks(&t, 7).unwrap();
        assert_eq!(b.len(), 5);
        assert!(b.iter().all(|x| x.defect == 0 && x.members.len() == 1));
    }

    #[test]
    fn frobenius_group_blocks() {
        let t = corpus::table("7:3").unwrap();
        let b = compute_blocks(&t, 7).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(
            cyclic_status(&b[0], &t),
            CyclicStatus::CyclicNontrivial {
                e: 3,
                m: 2,
                exceptional: Some(vec![3, 4])
            }
        );
        let b = compute_blocks(&t, 3).unwrap();
        assert_eq!(b[0].members, vec![0, 1, 2]);
        assert_eq!(
            cyclic_status(&b[0], &t),
            CyclicStatus::CyclicNontrivial {
                e: 1,
                m: 2,
                exceptional: Some(vec![1, 2])
            }
        );
    }

    #[test]
    fn two_blocks_are_not_cyclic() {
        for name in ["A5", "S4", "2.A5", "L2(7)", "A4"] {
            let t = corpus::table(name).unwrap();
            for b in compute_blocks(&t, 2).unwrap() {
                if b.defect >= 2 {
                    assert_eq!(
                        cyclic_status(&b, &t),
                        CyclicStatus::NotCyclic,
                        "{name} {:?}",
                        b.members
                    );
                }
            }
        }
    }
}
