//! Ordinary character tables and the class-function algebra on them.
//!
//! Classes and irreducibles keep their file order. Internally everything is
//! 0-based; reports and files use 1-based positions.

mod classfn;
mod fusion;
mod io;
mod validate;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{factorize, gcd, lcm};
use crate::cyclotomic::Cyclotomic;

pub use classfn::ClassFunction;
pub use fusion::{FusionKind, FusionMap};
pub use io::{parse_fusion, parse_table, write_fusion, write_table, ParseError};
pub use validate::{Violation, ViolationKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("class function belongs to table `{found}`, expected `{expected}`")]
    TableMismatch { expected: String, found: String },
    #[error("no {p}-power map available for table `{table}`")]
    MissingPowerMap { table: String, p: u64 },
    #[error("malformed table: {0}")]
    Shape(String),
    #[error("class function is not a virtual character (inner product {0} with an irreducible)")]
    NotVirtual(String),
    #[error("fusion of kind {found:?} used where {expected:?} is required")]
    WrongFusionKind {
        expected: FusionKind,
        found: FusionKind,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassInfo {
    pub name: String,
    pub element_order: u64,
    pub centralizer_order: u128,
}

/// An ordinary character table: classes, power maps for the primes dividing
/// the group order, and a list of irreducible rows.
///
/// A table with fewer irreducibles than classes is allowed as input to the
/// search tools; [`CharacterTable::validate`] reports it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    name: Arc<str>,
    order: u128,
    classes: Vec<ClassInfo>,
    power_maps: BTreeMap<u64, Vec<usize>>,
    irreducibles: Vec<Vec<Cyclotomic>>,
}

impl CharacterTable {
    /// Checks shapes only (row lengths, power-map ranges); the algebraic
    /// invariants are reported by [`validate`](Self::validate).
    pub fn new(
        name: impl Into<String>,
        order: u128,
        classes: Vec<ClassInfo>,
        power_maps: BTreeMap<u64, Vec<usize>>,
        irreducibles: Vec<Vec<Cyclotomic>>,
    ) -> Result<Self, TableError> {
        let name: String = name.into();
        let n = classes.len();
        if n == 0 {
            return Err(TableError::Shape("table has no classes".into()));
        }
        if order == 0 {
            return Err(TableError::Shape("group order must be positive".into()));
        }
        for (p, map) in &power_maps {
            if map.len() != n {
                return Err(TableError::Shape(format!(
                    "{p}-power map has {} entries for {n} classes",
                    map.len()
                )));
            }
            if let Some(bad) = map.iter().find(|&&c| c >= n) {
                return Err(TableError::Shape(format!(
                    "{p}-power map refers to class {} of {n}",
                    bad + 1
                )));
            }
        }
        for (i, row) in irreducibles.iter().enumerate() {
            if row.len() != n {
                return Err(TableError::Shape(format!(
                    "irreducible {} has {} values for {n} classes",
                    i + 1,
                    row.len()
                )));
            }
        }
        for c in &classes {
            if c.element_order == 0 || c.centralizer_order == 0 {
                return Err(TableError::Shape(format!(
                    "class {} has a zero order",
                    c.name
                )));
            }
        }
        Ok(CharacterTable {
            name: name.into(),
            order,
            classes,
            power_maps,
            irreducibles,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub(crate) fn name_arc(&self) -> Arc<str> {
        self.name.clone()
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn num_irreducibles(&self) -> usize {
        self.irreducibles.len()
    }

    /// `true` when there is one irreducible per class.
    pub fn is_complete(&self) -> bool {
        self.irreducibles.len() == self.classes.len()
    }

    pub fn element_order(&self, c: usize) -> u64 {
        self.classes[c].element_order
    }

    pub fn centralizer_order(&self, c: usize) -> u128 {
        self.classes[c].centralizer_order
    }

    /// `|G| / |C_G(g)|` (rounded down if the data is inconsistent).
    pub fn class_size(&self, c: usize) -> u128 {
        self.order / self.classes[c].centralizer_order
    }

    pub fn power_maps(&self) -> &BTreeMap<u64, Vec<usize>> {
        &self.power_maps
    }

    pub fn power_map(&self, p: u64) -> Option<&[usize]> {
        self.power_maps.get(&p).map(Vec::as_slice)
    }

    pub fn irreducible_rows(&self) -> &[Vec<Cyclotomic>] {
        &self.irreducibles
    }

    pub fn value(&self, chi: usize, c: usize) -> &Cyclotomic {
        &self.irreducibles[chi][c]
    }

    pub fn irreducible(&self, i: usize) -> ClassFunction {
        ClassFunction::new(self, self.irreducibles[i].clone())
    }

    pub fn irreducibles(&self) -> Vec<ClassFunction> {
        (0..self.irreducibles.len())
            .map(|i| self.irreducible(i))
            .collect()
    }

    /// Degree `χ_i(1)` as an integer (class 0 is the identity).
    pub fn degree(&self, i: usize) -> BigInt {
        self.irreducibles[i][0]
            .to_integer()
            .unwrap_or_else(BigInt::zero)
    }

    /// Primes dividing the group order, ascending.
    pub fn primes(&self) -> Vec<u64> {
        factorize(self.order)
            .into_iter()
            .map(|(p, _)| p as u64)
            .collect()
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.classes
            .iter()
            .fold(1, |acc, c| lcm(acc, c.element_order))
    }

    /// Least common multiple of the conductors of all irreducible values.
    pub fn conductor(&self) -> u64 {
        self.irreducibles
            .iter()
            .flatten()
            .fold(1, |acc, v| lcm(acc, v.conductor()))
    }

    /// A class function from explicit values.
    pub fn class_function(&self, values: Vec<Cyclotomic>) -> Result<ClassFunction, TableError> {
        if values.len() != self.num_classes() {
            return Err(TableError::Shape(format!(
                "{} values for {} classes",
                values.len(),
                self.num_classes()
            )));
        }
        Ok(ClassFunction::new(self, values))
    }

    pub fn trivial_character(&self) -> ClassFunction {
        ClassFunction::new(self, vec![Cyclotomic::one(); self.num_classes()])
    }

    pub fn zero_function(&self) -> ClassFunction {
        ClassFunction::new(self, vec![Cyclotomic::zero(); self.num_classes()])
    }

    /// The regular character `Σ χ(1)·χ`: `|G|` at the identity, zero elsewhere.
    pub fn regular_character(&self) -> ClassFunction {
        let mut v = vec![Cyclotomic::zero(); self.num_classes()];
        v[0] = Cyclotomic::from_bigint(BigInt::from(self.order));
        ClassFunction::new(self, v)
    }

    /// Class map `c ↦ c'` with `χ(c') = σ_k(χ(c))` for every irreducible,
    /// `gcd(k, exponent) = 1`. `None` if the irreducibles do not determine it.
    pub fn galois_class_map(&self, k: i64) -> Option<Vec<usize>> {
        let e = lcm(self.exponent(), self.conductor());
        if gcd(k.rem_euclid(e as i64) as u64, e) != 1 {
            return None;
        }
        let columns: Vec<Vec<&Cyclotomic>> = (0..self.num_classes())
            .map(|c| self.irreducibles.iter().map(|r| &r[c]).collect())
            .collect();
        let mut index: HashMap<Vec<&Cyclotomic>, Vec<usize>> = HashMap::new();
        for (c, col) in columns.iter().enumerate() {
            index.entry(col.clone()).or_default().push(c);
        }
        let mut map = Vec::with_capacity(self.num_classes());
        for c in 0..self.num_classes() {
            let image: Vec<Cyclotomic> = self
                .irreducibles
                .iter()
                .map(|r| r[c].galois_coprime(k))
                .collect();
            let key: Vec<&Cyclotomic> = image.iter().collect();
            let hits: Vec<usize> = index
                .get(&key)
                .map(|v| {
                    v.iter()
                        .copied()
                        .filter(|&d| self.element_order(d) == self.element_order(c))
                        .collect()
                })
                .unwrap_or_default();
            if hits.len() != 1 {
                return None;
            }
            map.push(hits[0]);
        }
        Some(map)
    }

    /// Class of `g^k`. Primes dividing `|G|` use the stored power maps; the
    /// part of `k` prime to `|G|` acts through the Galois column map.
    pub fn power_class(&self, c: usize, k: u64) -> Result<usize, TableError> {
        if k == 0 {
            return Ok(0);
        }
        let mut cur = c;
        let mut coprime_part = 1u64;
        for (p, e) in factorize(k as u128) {
            let p = p as u64;
            match self.power_maps.get(&p) {
                Some(map) => {
                    for _ in 0..e {
                        cur = map[cur];
                    }
                }
                None if !self.order.is_multiple_of(p as u128) => coprime_part *= p.pow(e),
                None => {
                    return Err(TableError::MissingPowerMap {
                        table: self.name.to_string(),
                        p,
                    })
                }
            }
        }
        if coprime_part != 1 {
            let o = self.element_order(cur);
            let r = coprime_part % o;
            if o == 1 || r == 1 {
                return Ok(cur);
            }
            let map = self.galois_class_map(coprime_part as i64).ok_or_else(|| {
                TableError::MissingPowerMap {
                    table: self.name.to_string(),
                    p: coprime_part,
                }
            })?;
            cur = map[cur];
        }
        Ok(cur)
    }

    /// Permutation of irreducibles under `σ_k`, if every conjugate row is a row.
    pub fn galois_permutation(&self, k: i64) -> Option<Vec<usize>> {
        let cond = self.conductor();
        if gcd(k.rem_euclid(cond as i64) as u64, cond) != 1 {
            return None;
        }
        let index: HashMap<&Vec<Cyclotomic>, usize> = self
            .irreducibles
            .iter()
            .enumerate()
            .map(|(i, r)| (r, i))
            .collect();
        self.irreducibles
            .iter()
            .map(|row| {
                let g: Vec<Cyclotomic> = row.iter().map(|v| v.galois_coprime(k)).collect();
                index.get(&g).copied()
            })
            .collect()
    }

    /// Distinct permutations of the irreducibles induced by `Gal(Q(ζ_N)/Q)`,
    /// `N` the conductor of the table, identity first.
    pub fn galois_permutations(&self) -> Vec<Vec<usize>> {
        let cond = self.conductor();
        let mut seen = Vec::new();
        for k in 1..=cond.max(1) {
            if gcd(k, cond) != 1 {
                continue;
            }
            if let Some(p) = self.galois_permutation(k as i64) {
                if !seen.contains(&p) {
                    seen.push(p);
                }
            }
        }
        seen
    }

    /// Inverse of `|C_G(g)|` as a rational (the weight of class `c` in
    /// inner products).
    pub(crate) fn class_weight(&self, c: usize) -> BigRational {
        BigRational::new(
            BigInt::one(),
            BigInt::from(self.classes[c].centralizer_order),
        )
    }

    /// Order of the common kernel of the given characters: the sum of the
    /// sizes of the classes on which every one of them takes its degree.
    pub fn kernel_order(&self, chars: &[usize]) -> u128 {
        (0..self.num_classes())
            .filter(|&c| {
                chars
                    .iter()
                    .all(|&i| self.irreducibles[i][c] == self.irreducibles[i][0])
            })
            .map(|c| self.class_size(c))
            .sum()
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate::validate(self)
    }
}


#[cfg(test)]
mod tests {
    use super::test_tables::a5;
    use super::*;

    #[test]
    fn derived_power_classes() {
        let t = a5();
        // 5a^2 = 5b via the stored map, 5a^7 = 5a^2 via Galois.
        assert_eq!(t.power_class(3, 2).unwrap(), 4);
        assert_eq!(t.power_class(3, 7).unwrap(), 4);
        assert_eq!(t.power_class(3, 4).unwrap(), 3);
        assert_eq!(t.power_class(2, 6).unwrap(), 0);
        let c7 = crate::corpus::table("C7").unwrap();
        // x^2 in C7: 2 does not divide 7.
        assert_eq!(c7.power_class(1, 2).unwrap(), 2);
        assert_eq!(c7.power_class(3, 5).unwrap(), 1);
    }

    #[test]
    fn galois_permutations_of_a5() {
        let t = a5();
        let perms = t.galois_permutations();
        assert_eq!(perms, vec![vec![0, 1, 2, 3, 4], vec![0, 2, 1, 3, 4]]);
    }

    #[test]
    fn kernel_and_regular_character() {
        let t = crate::corpus::table("2.A5").unwrap();
        assert_eq!(t.kernel_order(&[1, 3]), 2);
        assert_eq!(t.kernel_order(&[5]), 1);
        assert_eq!(t.kernel_order(&[0]), 120);
        let reg = t.regular_character();
        let coords = reg.coordinates(&t).unwrap();
        let degrees: Vec<BigInt> = (0..9).map(|i| t.degree(i)).collect();
        assert_eq!(coords, degrees);
    }
}
