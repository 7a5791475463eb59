use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{CharacterTable, FusionKind, FusionMap, TableError};
use crate::cyclotomic::Cyclotomic;

/// A class function on a named table: one value per class.
///
/// Values are tied to their table by name; every operation taking a table
/// checks the name and the length before combining.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ClassFunction {
    table: Arc<str>,
    values: Vec<Cyclotomic>,
}

impl ClassFunction {
    pub(crate) fn new(table: &CharacterTable, values: Vec<Cyclotomic>) -> Self {
        ClassFunction {
            table: table.name_arc(),
            values,
        }
    }

    pub fn table_name(&self) -> &str {
        &self.table
    }

    pub fn values(&self) -> &[Cyclotomic] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Cyclotomic> {
        self.values
    }

    pub fn value(&self, c: usize) -> &Cyclotomic {
        &self.values[c]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at the identity class as an integer, if it is one.
    pub fn degree(&self) -> Option<BigInt> {
        self.values.first().and_then(Cyclotomic::to_integer)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Cyclotomic::is_zero)
    }

    fn same_table(&self, other: &ClassFunction) -> Result<(), TableError> {
        if self.table != other.table || self.values.len() != other.values.len() {
            return Err(TableError::TableMismatch {
                expected: self.table.to_string(),
                found: other.table.to_string(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_table(&self, t: &CharacterTable) -> Result<(), TableError> {
        if *self.table != *t.name() || self.values.len() != t.num_classes() {
            return Err(TableError::TableMismatch {
                expected: t.name().to_string(),
                found: self.table.to_string(),
            });
        }
        Ok(())
    }

    fn zip_with(
        &self,
        other: &ClassFunction,
        f: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic,
    ) -> Result<ClassFunction, TableError> {
        self.same_table(other)?;
        Ok(ClassFunction {
            table: self.table.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn try_add(&self, other: &ClassFunction) -> Result<ClassFunction, TableError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &ClassFunction) -> Result<ClassFunction, TableError> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Pointwise product.
    pub fn tensor(&self, other: &ClassFunction) -> Result<ClassFunction, TableError> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, n: &BigInt) -> ClassFunction {
        self.map(|v| v.scale_int(n))
    }

    pub fn scale_rational(&self, q: &BigRational) -> ClassFunction {
        self.map(|v| v.scale(q))
    }

    pub fn conj(&self) -> ClassFunction {
        self.map(Cyclotomic::conj)
    }

    /// `σ_k` applied to every value; `None` if `k` is not coprime to some
    /// value's conductor.
    pub fn galois(&self, k: i64) -> Option<ClassFunction> {
        let values = self
            .values
            .iter()
            .map(|v| v.galois(k).ok())
            .collect::<Option<Vec<_>>>()?;
        Some(ClassFunction {
            table: self.table.clone(),
            values,
        })
    }

    fn map(&self, f: impl Fn(&Cyclotomic) -> Cyclotomic) -> ClassFunction {
        ClassFunction {
            table: self.table.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }

    /// Values with the classes permuted: result at `c` is `self(perm[c])`.
    pub fn permute_classes(&self, perm: &[usize]) -> ClassFunction {
        ClassFunction {
            table: self.table.clone(),
            values: perm.iter().map(|&c| self.values[c].clone()).collect(),
        }
    }

    /// `⟨self, other⟩ = Σ_c self(c)·conj(other(c)) / |C_G(c)|`.
    pub fn inner_product(
        &self,
        other: &ClassFunction,
        t: &CharacterTable,
    ) -> Result<Cyclotomic, TableError> {
        self.check_table(t)?;
        other.check_table(t)?;
        Ok(raw_inner_product(&self.values, &other.values, t))
    }

    /// `⟨self, self⟩` as a rational (always real).
    pub fn norm(&self, t: &CharacterTable) -> Result<BigRational, TableError> {
        let n = self.inner_product(self, t)?;
        Ok(n.to_rational().cloned().unwrap_or_else(BigRational::zero))
    }

    /// Multiplicities of the irreducibles; fails unless all are integers.
    pub fn coordinates(&self, t: &CharacterTable) -> Result<Vec<BigInt>, TableError> {
        self.check_table(t)?;
        t.irreducible_rows()
            .iter()
            .map(|row| {
                let ip = raw_inner_product(&self.values, row, t);
                ip.to_integer()
                    .ok_or_else(|| TableError::NotVirtual(ip.to_string()))
            })
            .collect()
    }

    /// `Σ coords[i]·χ_i`.
    pub fn from_coordinates(
        t: &CharacterTable,
        coords: &[BigInt],
    ) -> Result<ClassFunction, TableError> {
        if coords.len() != t.num_irreducibles() {
            return Err(TableError::Shape(format!(
                "{} coordinates for {} irreducibles",
                coords.len(),
                t.num_irreducibles()
            )));
        }
        let mut values = vec![Cyclotomic::zero(); t.num_classes()];
        for (row, a) in t.irreducible_rows().iter().zip(coords) {
            if a.is_zero() {
                continue;
            }
            for (v, x) in values.iter_mut().zip(row) {
                *v = &*v + &x.scale_int(a);
            }
        }
        Ok(ClassFunction::new(t, values))
    }

    /// Symmetric and alternating parts of the tensor square:
    /// `(a(g)² ± a(g²))/2`.
    pub fn symmetrize2(
        &self,
        t: &CharacterTable,
    ) -> Result<(ClassFunction, ClassFunction), TableError> {
        self.check_table(t)?;
        let half = BigRational::new(1.into(), 2.into());
        let mut sym = Vec::with_capacity(self.len());
        let mut alt = Vec::with_capacity(self.len());
        for c in 0..t.num_classes() {
            let sq = &self.values[c] * &self.values[c];
            let p = &self.values[t.power_class(c, 2)?];
            sym.push((&sq + p).scale(&half));
            alt.push((&sq - p).scale(&half));
        }
        Ok((ClassFunction::new(t, sym), ClassFunction::new(t, alt)))
    }

    /// Inflation along a quotient fusion `M.G → G`: `χ̂(c) = χ(f(c))`.
    pub fn lift(
        &self,
        f: &FusionMap,
        source: &CharacterTable,
    ) -> Result<ClassFunction, TableError> {
        f.expect_kind(FusionKind::Quotient)?;
        self.pull_back(f, source)
    }

    /// Restriction along a subgroup fusion `H → G`.
    pub fn restrict(
        &self,
        f: &FusionMap,
        subgroup: &CharacterTable,
    ) -> Result<ClassFunction, TableError> {
        f.expect_kind(FusionKind::Subgroup)?;
        self.pull_back(f, subgroup)
    }

    fn pull_back(
        &self,
        f: &FusionMap,
        source: &CharacterTable,
    ) -> Result<ClassFunction, TableError> {
        f.check_tables(source.name(), &self.table)?;
        if f.map().iter().any(|&c| c >= self.values.len()) || f.map().len() != source.num_classes()
        {
            return Err(TableError::Shape("fusion does not fit the tables".into()));
        }
        Ok(ClassFunction::new(
            source,
            f.map().iter().map(|&c| self.values[c].clone()).collect(),
        ))
    }

    /// Induction along a subgroup fusion `H → G`:
    /// `(Ind φ)(C) = |C_G(C)| · Σ_{f(c)=C} φ(c)/|C_H(c)|`.
    pub fn induce(
        &self,
        f: &FusionMap,
        subgroup: &CharacterTable,
        group: &CharacterTable,
    ) -> Result<ClassFunction, TableError> {
        f.expect_kind(FusionKind::Subgroup)?;
        self.check_table(subgroup)?;
        f.check_tables(subgroup.name(), group.name())?;
        if f.map().len() != self.values.len() || f.map().iter().any(|&c| c >= group.num_classes()) {
            return Err(TableError::Shape("fusion does not fit the tables".into()));
        }
        let mut values = vec![Cyclotomic::zero(); group.num_classes()];
        for (c, &img) in f.map().iter().enumerate() {
            let w = BigRational::new(
                BigInt::from(group.centralizer_order(img)),
                BigInt::from(subgroup.centralizer_order(c)),
            );
            values[img] = &values[img] + &self.values[c].scale(&w);
        }
        Ok(ClassFunction::new(group, values))
    }
}

pub(crate) fn raw_inner_product(
    a: &[Cyclotomic],
    b: &[Cyclotomic],
    t: &CharacterTable,
) -> Cyclotomic {
    let mut acc = Cyclotomic::zero();
    for (c, (x, y)) in a.iter().zip(b).enumerate() {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc = &acc + &(x * &y.conj()).scale(&t.class_weight(c));
    }
    acc
}

impl Add for &ClassFunction {
    type Output = ClassFunction;

    /// Panics on mismatched tables; use [`ClassFunction::try_add`] otherwise.
    fn add(self, rhs: &ClassFunction) -> ClassFunction {
        self.try_add(rhs)
            .expect("class functions on different tables")
    }
}

impl Sub for &ClassFunction {
    type Output = ClassFunction;

    fn sub(self, rhs: &ClassFunction) -> ClassFunction {
        self.try_sub(rhs)
            .expect("class functions on different tables")
    }
}

impl Neg for &ClassFunction {
    type Output = ClassFunction;

    fn neg(self) -> ClassFunction {
        self.map(|v| -v)
    }
}

impl fmt::Display for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClassFunction({}: {self})", self.table)
    }
}
