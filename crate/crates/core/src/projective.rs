//! Projective characters: defect-zero seeds, tensor closure, induction, and
//! the two necessary conditions every projective character satisfies.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::blocks::{compute_blocks, BlockError};
use crate::cyclotomic::Cyclotomic;
use crate::table::{CharacterTable, ClassFunction, FusionMap, TableError};

/// Pool size used when no budget is given.
pub const DEFAULT_BUDGET: usize = 500;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProjectiveError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Blocks(#[from] BlockError),
    #[error("induced character is not projective: {0}")]
    NotProjective(String),
}

/// How a projective character was obtained. Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// A defect-zero irreducible.
    Seed(usize),
    /// The regular character.
    Regular,
    /// `pool[base] ⊗ χ_chi`.
    Tensor { base: usize, chi: usize },
    /// Induced from a subgroup table.
    Induced {
        subgroup: String,
        source: Box<Provenance>,
    },
    /// `χ_a + χ_b` for an edge of a Brauer tree (`b` may be a sum vertex,
    /// given by its members).
    EdgeSum { a: Vec<usize>, b: Vec<usize> },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(|i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join("+")
        };
        match self {
            Provenance::Seed(i) => write!(f, "X{}", i + 1),
            Provenance::Regular => f.write_str("reg"),
            Provenance::Tensor { base, chi } => write!(f, "P{}*X{}", base + 1, chi + 1),
            Provenance::Induced { subgroup, source } => write!(f, "ind[{subgroup}]({source})"),
            Provenance::EdgeSum { a, b } => write!(f, "({})+({})", join(a), join(b)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveChar {
    pub character: ClassFunction,
    /// Multiplicities of the irreducibles.
    pub coords: Vec<BigInt>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Certificate {
    /// 0-based ℓ-singular classes with a nonzero value.
    pub nonzero_singular: Vec<usize>,
    /// 0-based irreducibles whose multiplicity is negative or not an integer,
    /// with the offending inner product.
    pub bad_multiplicities: Vec<(usize, Cyclotomic)>,
    /// Multiplicities when they are all nonnegative integers.
    pub coords: Option<Vec<BigInt>>,
}

impl Certificate {
    pub fn is_projective(&self) -> bool {
        self.nonzero_singular.is_empty() && self.bad_multiplicities.is_empty()
    }

    pub fn report(&self) -> String {
        let mut parts = Vec::new();
        if !self.nonzero_singular.is_empty() {
            let cls: Vec<String> = self
                .nonzero_singular
                .iter()
                .map(|c| (c + 1).to_string())
                .collect();
            parts.push(format!("nonzero on l-singular classes {}", cls.join(", ")));
        }
        for (i, v) in &self.bad_multiplicities {
            parts.push(format!("multiplicity of irreducible {} is {v}", i + 1));
        }
        if parts.is_empty() {
            "projective".into()
        } else {
            parts.join("; ")
        }
    }
}

pub fn singular_classes(t: &CharacterTable, ell: u64) -> Vec<usize> {
    (0..t.num_classes())
        .filter(|&c| t.element_order(c).is_multiple_of(ell))
        .collect()
}

/// Checks that `p` vanishes on every ℓ-singular class and has nonnegative
/// integer multiplicities.
pub fn certify_projective(
    p: &ClassFunction,
    t: &CharacterTable,
    ell: u64,
) -> Result<Certificate, TableError> {
    p.check_table(t)?;
    let mut cert = Certificate {
        nonzero_singular: singular_classes(t, ell)
            .into_iter()
            .filter(|&c| !p.value(c).is_zero())
            .collect(),
        ..Certificate::default()
    };
    let mut coords = Vec::with_capacity(t.num_irreducibles());
    for (i, chi) in t.irreducibles().iter().enumerate() {
        let ip = p.inner_product(chi, t)?;
        match ip.to_integer() {
            Some(n) if !n.is_negative() => coords.push(n),
            _ => cert.bad_multiplicities.push((i, ip)),
        }
    }
    if cert.bad_multiplicities.is_empty() {
        cert.coords = Some(coords);
    }
    Ok(cert)
}

fn certified(
    character: ClassFunction,
    t: &CharacterTable,
    ell: u64,
    provenance: Provenance,
) -> Result<ProjectiveChar, ProjectiveError> {
    let cert = certify_projective(&character, t, ell)?;
    if !cert.is_projective() {
        return Err(ProjectiveError::NotProjective(cert.report()));
    }
    Ok(ProjectiveChar {
        character,
        coords: cert.coords.unwrap_or_default(),
        provenance,
    })
}

/// One projective per defect-zero block: its single irreducible.
pub fn defect_zero_seeds(
    t: &CharacterTable,
    ell: u64,
) -> Result<Vec<ProjectiveChar>, ProjectiveError> {
    let blocks = compute_blocks(t, ell)?;
    let mut out = Vec::new();
    for b in blocks.iter().filter(|b| b.defect == 0) {
        let chi = b.members[0];
        out.push(certified(
            t.irreducible(chi),
            t,
            ell,
            Provenance::Seed(chi),
        )?);
    }
    Ok(out)
}

/// The regular character, projective for every ℓ.
pub fn regular_projective(t: &CharacterTable, ell: u64) -> Result<ProjectiveChar, ProjectiveError> {
    certified(t.regular_character(), t, ell, Provenance::Regular)
}

/// `N[i][j][k] = ⟨χ_i χ_j, χ_k⟩`.
fn tensor_constants(t: &CharacterTable) -> Result<Vec<Vec<Vec<BigInt>>>, TableError> {
    let irr = t.irreducibles();
    let k = irr.len();
    let mut n = vec![vec![vec![BigInt::zero(); k]; k]; k];
    for i in 0..k {
        for j in i..k {
            let coords = irr[i].tensor(&irr[j])?.coordinates(t)?;
            n[i][j] = coords.clone();
            n[j][i] = coords;
        }
    }
    Ok(n)
}

/// Breadth-first closure of `seeds` under tensoring with irreducibles:
/// the queue starts with the seeds, and each dequeued `P` contributes
/// `P ⊗ χ_1, …, P ⊗ χ_k` in order. Values already present are skipped; the
/// output stops at `budget` entries. `Tensor.base` indexes the output.
///
/// Multiplicities of products come from the structure constants of the
/// irreducibles, so products are not recertified.
pub fn tensor_closure(
    seeds: &[ProjectiveChar],
    t: &CharacterTable,
    ell: u64,
    budget: usize,
) -> Result<Vec<ProjectiveChar>, ProjectiveError> {
    let mut out: Vec<ProjectiveChar> = Vec::new();
    let mut seen: HashSet<Vec<BigInt>> = HashSet::new();
    for s in seeds {
        let cert = certify_projective(&s.character, t, ell)?;
        if !cert.is_projective() {
            return Err(ProjectiveError::NotProjective(cert.report()));
        }
        if seen.insert(s.coords.clone()) {
            out.push(s.clone());
        }
    }
    if out.len() >= budget {
        return Ok(out);
    }
    let structure = tensor_constants(t)?;
    let k = t.num_irreducibles();
    let irr = t.irreducibles();
    let mut queue: VecDeque<usize> = (0..out.len()).collect();
    while let Some(base) = queue.pop_front() {
        for (chi, x) in irr.iter().enumerate() {
            if out.len() >= budget {
                return Ok(out);
            }
            let mut coords = vec![BigInt::zero(); k];
            for (i, c) in out[base].coords.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (acc, n) in coords.iter_mut().zip(&structure[i][chi]) {
                    *acc += c * n;
                }
            }
            if !seen.insert(coords.clone()) {
                continue;
            }
            out.push(ProjectiveChar {
                character: out[base].character.tensor(x)?,
                coords,
                provenance: Provenance::Tensor { base, chi },
            });
            queue.push_back(out.len() - 1);
        }
    }
    Ok(out)
}

/// Induces a projective character of a subgroup; the result is certified.
pub fn induce_projective(
    phi: &ProjectiveChar,
    f: &FusionMap,
    subgroup: &CharacterTable,
    group: &CharacterTable,
    ell: u64,
) -> Result<ProjectiveChar, ProjectiveError> {
    let ind = phi.character.induce(f, subgroup, group)?;
    certified(
        ind,
        group,
        ell,
        Provenance::Induced {
            subgroup: subgroup.name().to_string(),
            source: Box::new(phi.provenance.clone()),
        },
    )
}

/// The standard pool for a table: the defect-zero seeds, the regular
/// character and the inductions of the subgroups' seeds, closed under
/// tensoring.
pub fn projective_pool(
    t: &CharacterTable,
    ell: u64,
    budget: usize,
    subgroups: &[(CharacterTable, FusionMap)],
) -> Result<Vec<ProjectiveChar>, ProjectiveError> {
    let mut seeds = defect_zero_seeds(t, ell)?;
    seeds.push(regular_projective(t, ell)?);
    for (h, f) in subgroups {
        let mut local = defect_zero_seeds(h, ell)?;
        local.push(regular_projective(h, ell)?);
        for phi in &local {
            let ind = induce_projective(phi, f, h, t, ell)?;
            if !ind.character.is_zero() {
                seeds.push(ind);
            }
        }
    }
    tensor_closure(&seeds, t, ell, budget)
}
