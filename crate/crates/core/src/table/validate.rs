use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::classfn::raw_inner_product;
use super::CharacterTable;
use crate::arith::{gcd, lcm};
use crate::cyclotomic::{Cyclotomic, PrimeIdealContext};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationKind {
    IdentityClass,
    ClassArithmetic,
    IrreducibleCount,
    TrivialCharacter,
    Degree,
    RowOrthogonality,
    ColumnOrthogonality,
    MissingPowerMap,
    PowerMapOrder,
    PowerMapCentralizer,
    PowerMapGalois,
    FrobeniusCongruence,
    GaloisClosure,
}

impl ViolationKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ViolationKind::IdentityClass => "identity-class",
            ViolationKind::ClassArithmetic => "class-arithmetic",
            ViolationKind::IrreducibleCount => "irreducible-count",
            ViolationKind::TrivialCharacter => "trivial-character",
            ViolationKind::Degree => "degree",
            ViolationKind::RowOrthogonality => "row-orthogonality",
            ViolationKind::ColumnOrthogonality => "column-orthogonality",
            ViolationKind::MissingPowerMap => "missing-power-map",
            ViolationKind::PowerMapOrder => "power-map-order",
            ViolationKind::PowerMapCentralizer => "power-map-centralizer",
            ViolationKind::PowerMapGalois => "power-map-galois",
            ViolationKind::FrobeniusCongruence => "frobenius-congruence",
            ViolationKind::GaloisClosure => "galois-closure",
        }
    }
}

/// One failed invariant. `indices` are 1-based (characters, classes or
/// primes depending on the kind).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Violation {
    pub kind: ViolationKind,
    pub indices: Vec<u64>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind.as_str(), self.message)
    }
}

struct Report(Vec<Violation>);

impl Report {
    fn push(&mut self, kind: ViolationKind, indices: Vec<u64>, message: String) {
        self.0.push(Violation {
            kind,
            indices,
            message,
        });
    }
}

pub(super) fn validate(t: &CharacterTable) -> Vec<Violation> {
    let mut r = Report(Vec::new());
    class_data(t, &mut r);
    characters(t, &mut r);
    orthogonality(t, &mut r);
    power_maps(t, &mut r);
    galois_closure(t, &mut r);
    r.0
}

fn class_data(t: &CharacterTable, r: &mut Report) {
    use ViolationKind::*;
    let id = &t.classes()[0];
    if id.element_order != 1 || id.centralizer_order != t.order() {
        r.push(
            IdentityClass,
            vec![1],
            "class 1 must have element order 1 and centralizer order |G|".into(),
        );
    }
    let mut total = 0u128;
    for (c, info) in t.classes().iter().enumerate() {
        let i = c as u64 + 1;
        if !t.order().is_multiple_of(info.centralizer_order) {
            r.push(
                ClassArithmetic,
                vec![i],
                format!("centralizer order of class {i} does not divide |G|"),
            );
        } else {
            total += t.class_size(c);
        }
        if info.centralizer_order % info.element_order as u128 != 0 {
            r.push(
                ClassArithmetic,
                vec![i],
                format!("element order of class {i} does not divide its centralizer order"),
            );
        }
        if c > 0 && info.element_order == 1 {
            r.push(
                ClassArithmetic,
                vec![i],
                format!("class {i} is a second identity class"),
            );
        }
    }
    if total != t.order() {
        r.push(
            ClassArithmetic,
            vec![],
            format!("class sizes sum to {total}, not |G| = {}", t.order()),
        );
    }
}

fn characters(t: &CharacterTable, r: &mut Report) {
    use ViolationKind::*;
    if t.num_irreducibles() != t.num_classes() {
        r.push(
            IrreducibleCount,
            vec![],
            format!(
                "{} irreducibles for {} classes",
                t.num_irreducibles(),
                t.num_classes()
            ),
        );
    }
    if let Some(row) = t.irreducible_rows().first() {
        if !row.iter().all(Cyclotomic::is_one) {
            r.push(
                TrivialCharacter,
                vec![1],
                "irreducible 1 is not the trivial character".into(),
            );
        }
    }
    let order = BigInt::from(t.order());
    for (i, row) in t.irreducible_rows().iter().enumerate() {
        let ok = match row[0].to_integer() {
            Some(d) => d > BigInt::zero() && (&order % &d).is_zero(),
            None => false,
        };
        if !ok {
            r.push(
                Degree,
                vec![i as u64 + 1],
                format!(
                    "degree of irreducible {} is not a positive divisor of |G|",
                    i + 1
                ),
            );
        }
    }
}

fn orthogonality(t: &CharacterTable, r: &mut Report) {
    use ViolationKind::*;
    let rows = t.irreducible_rows();
    for i in 0..rows.len() {
        for j in i..rows.len() {
            let ip = raw_inner_product(&rows[i], &rows[j], t);
            let expected = if i == j {
                Cyclotomic::one()
            } else {
                Cyclotomic::zero()
            };
            if ip != expected {
                r.push(
                    RowOrthogonality,
                    vec![i as u64 + 1, j as u64 + 1],
                    format!("<chi_{}, chi_{}> = {ip}", i + 1, j + 1),
                );
            }
        }
    }
    if !t.is_complete() {
        return;
    }
    let n = t.num_classes();
    for c in 0..n {
        for d in c..n {
            let sum: Cyclotomic = rows.iter().map(|row| &row[c] * &row[d].conj()).sum();
            let expected = if c == d {
                Cyclotomic::from_bigint(BigInt::from(t.centralizer_order(c)))
            } else {
                Cyclotomic::zero()
            };
            if sum != expected {
                r.push(
                    ColumnOrthogonality,
                    vec![c as u64 + 1, d as u64 + 1],
                    format!("column sum for classes ({}, {}) is {sum}", c + 1, d + 1),
                );
            }
        }
    }
}

fn power_maps(t: &CharacterTable, r: &mut Report) {
    use ViolationKind::*;
    let conductor = t.conductor();
    for p in t.primes() {
        let Some(map) = t.power_map(p) else {
            r.push(
                MissingPowerMap,
                vec![p],
                format!("no {p}-power map although {p} divides |G|"),
            );
            continue;
        };
        let ctx = PrimeIdealContext::new(p, conductor).ok();
        for (c, &img) in map.iter().enumerate() {
            let i = c as u64 + 1;
            let o = t.element_order(c);
            if t.element_order(img) != o / gcd(o, p) {
                r.push(
                    PowerMapOrder,
                    vec![p, i],
                    format!(
                        "{p}-th power of class {i} (order {o}) is class {} of order {}",
                        img + 1,
                        t.element_order(img)
                    ),
                );
                continue;
            }
            if !t
                .centralizer_order(img)
                .is_multiple_of(t.centralizer_order(c))
            {
                r.push(
                    PowerMapCentralizer,
                    vec![p, i],
                    format!("centralizer of class {i} does not divide that of its {p}-th power"),
                );
            }
            for (j, row) in t.irreducible_rows().iter().enumerate() {
                if !o.is_multiple_of(p) {
                    // g^p is Galois conjugate to g.
                    let expected = row[c].galois(p as i64);
                    if expected.as_ref().ok() != Some(&row[img]) {
                        r.push(
                            PowerMapGalois,
                            vec![p, i, j as u64 + 1],
                            format!(
                                "chi_{}(class {i}^{p}) is not the Galois conjugate of chi_{}(class {i})",
                                j + 1,
                                j + 1
                            ),
                        );
                        break;
                    }
                }
                if let Some(ctx) = &ctx {
                    let diff = &row[img] - &row[c].pow(p);
                    if !matches!(ctx.reduce(&diff), Ok(x) if x.is_zero()) {
                        r.push(
                            FrobeniusCongruence,
                            vec![p, i, j as u64 + 1],
                            format!(
                                "chi_{}(g^{p}) is not congruent to chi_{}(g)^{p} at class {i}",
                                j + 1,
                                j + 1
                            ),
                        );
                        break;
                    }
                }
            }
        }
    }
}

fn galois_closure(t: &CharacterTable, r: &mut Report) {
    let n = t.conductor();
    let rows: HashSet<&Vec<Cyclotomic>> = t.irreducible_rows().iter().collect();
    let mut checked = HashSet::new();
    let e = lcm(n, t.exponent());
    for k in 2..e.max(2) {
        if gcd(k, e) != 1 || !checked.insert(k % n) {
            continue;
        }
        for (i, row) in t.irreducible_rows().iter().enumerate() {
            let image: Vec<Cyclotomic> = row.iter().map(|v| v.galois_coprime(k as i64)).collect();
            if !rows.contains(&image) {
                r.push(
                    ViolationKind::GaloisClosure,
                    vec![k, i as u64 + 1],
                    format!(
                        "Galois conjugate of chi_{} under k = {k} is not a row",
                        i + 1
                    ),
                );
            }
        }
    }
}
