//! Permutations of classes that preserve orders, centralizers, power maps
//! and the set of irreducible rows.

use std::collections::{BTreeSet, HashMap};

use crate::cyclotomic::Cyclotomic;
use crate::table::CharacterTable;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TableAutomorphism {
    /// `class_perm[c]` is the image of class `c`.
    pub class_perm: Vec<usize>,
    /// `char_perm[i] = j` when `χ_j(class_perm[c]) = χ_i(c)` for all `c`.
    pub char_perm: Vec<usize>,
}

impl TableAutomorphism {
    pub fn identity(t: &CharacterTable) -> Self {
        TableAutomorphism {
            class_perm: (0..t.num_classes()).collect(),
            char_perm: (0..t.num_irreducibles()).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.class_perm.iter().enumerate().all(|(i, &c)| i == c)
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &TableAutomorphism) -> TableAutomorphism {
        TableAutomorphism {
            class_perm: other
                .class_perm
                .iter()
                .map(|&c| self.class_perm[c])
                .collect(),
            char_perm: other.char_perm.iter().map(|&i| self.char_perm[i]).collect(),
        }
    }

    pub fn inverse(&self) -> TableAutomorphism {
        let mut class_perm = vec![0; self.class_perm.len()];
        for (c, &d) in self.class_perm.iter().enumerate() {
            class_perm[d] = c;
        }
        let mut char_perm = vec![0; self.char_perm.len()];
        for (i, &j) in self.char_perm.iter().enumerate() {
            char_perm[j] = i;
        }
        TableAutomorphism {
            class_perm,
            char_perm,
        }
    }

    pub fn order(&self) -> u64 {
        let mut cur = self.clone();
        let mut k = 1;
        while !cur.is_identity() {
            cur = self.compose(&cur);
            k += 1;
        }
        k
    }

    /// Checks every defining property against `t`.
    pub fn is_valid_for(&self, t: &CharacterTable) -> bool {
        let n = t.num_classes();
        if self.class_perm.len() != n || self.char_perm.len() != t.num_irreducibles() {
            return false;
        }
        let mut seen = vec![false; n];
        for &d in &self.class_perm {
            if d >= n || std::mem::replace(&mut seen[d], true) {
                return false;
            }
        }
        for c in 0..n {
            let d = self.class_perm[c];
            if t.element_order(c) != t.element_order(d)
                || t.centralizer_order(c) != t.centralizer_order(d)
            {
                return false;
            }
        }
        for map in t.power_maps().values() {
            if (0..n).any(|c| self.class_perm[map[c]] != map[self.class_perm[c]]) {
                return false;
            }
        }
        t.irreducible_rows().iter().enumerate().all(|(i, row)| {
            let j = self.char_perm[i];
            j < t.num_irreducibles() && (0..n).all(|c| t.value(j, self.class_perm[c]) == &row[c])
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphismGroup {
    pub generators: Vec<TableAutomorphism>,
    pub order: u128,
    /// All elements, sorted by class permutation.
    pub elements: Vec<TableAutomorphism>,
}

/// Classes grouped by an automorphism-invariant key: element order,
/// centralizer order and the multiset of column values.
fn cells(t: &CharacterTable) -> Vec<usize> {
    let mut keys: Vec<(u64, u128, Vec<&Cyclotomic>)> = Vec::new();
    let mut cell_of = Vec::with_capacity(t.num_classes());
    for c in 0..t.num_classes() {
        let mut col: Vec<&Cyclotomic> = t.irreducible_rows().iter().map(|r| &r[c]).collect();
        col.sort();
        let key = (t.element_order(c), t.centralizer_order(c), col);
        let idx = match keys.iter().position(|k| *k == key) {
            Some(i) => i,
            None => {
                keys.push(key);
                keys.len() - 1
            }
        };
        cell_of.push(idx);
    }
    cell_of
}

struct Search<'a> {
    t: &'a CharacterTable,
    cell_of: Vec<usize>,
    order: Vec<usize>,
    perm: Vec<Option<usize>>,
    used: Vec<bool>,
    rows: HashMap<&'a Vec<Cyclotomic>, usize>,
    found: Vec<TableAutomorphism>,
}

impl Search<'_> {
    fn power_maps_ok(&self, c: usize) -> bool {
        let d = self.perm[c].unwrap();
        for map in self.t.power_maps().values() {
            if let Some(img) = self.perm[map[c]] {
                if img != map[d] {
                    return false;
                }
            }
            // Any class whose power is c.
            for (e, &pe) in map.iter().enumerate() {
                if pe == c {
                    if let Some(img) = self.perm[e] {
                        if map[img] != d {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Each row, restricted to the assigned classes and moved, must agree
    /// with some row on the images.
    fn rows_ok(&self, assigned: &[usize]) -> bool {
        let rows = self.t.irreducible_rows();
        rows.iter().all(|row| {
            rows.iter().any(|other| {
                assigned
                    .iter()
                    .all(|&c| other[self.perm[c].unwrap()] == row[c])
            })
        })
    }

    fn run(&mut self, depth: usize) {
        let n = self.t.num_classes();
        if depth == n {
            let class_perm: Vec<usize> = self.perm.iter().map(|p| p.unwrap()).collect();
            let mut char_perm = Vec::with_capacity(self.t.num_irreducibles());
            for row in self.t.irreducible_rows() {
                let mut moved = row.clone();
                for c in 0..n {
                    moved[class_perm[c]] = row[c].clone();
                }
                match self.rows.get(&moved) {
                    Some(&j) => char_perm.push(j),
                    None => return,
                }
            }
            self.found.push(TableAutomorphism {
                class_perm,
                char_perm,
            });
            return;
        }
        let c = self.order[depth];
        for d in 0..n {
            if self.used[d] || self.cell_of[d] != self.cell_of[c] {
                continue;
            }
            self.perm[c] = Some(d);
            self.used[d] = true;
            if self.power_maps_ok(c) && self.rows_ok(&self.order[..=depth]) {
                self.run(depth + 1);
            }
            self.perm[c] = None;
            self.used[d] = false;
        }
    }
}

/// All table automorphisms of `t`, with a generating set chosen greedily in
/// lexicographic order of class permutations.
pub fn table_automorphisms(t: &CharacterTable) -> AutomorphismGroup {
    let n = t.num_classes();
    let cell_of = cells(t);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&c| (t.element_order(c), t.centralizer_order(c), cell_of[c], c));
    let mut s = Search {
        t,
        cell_of,
        order,
        perm: vec![None; n],
        used: vec![false; n],
        rows: t
            .irreducible_rows()
            .iter()
            .enumerate()
            .map(|(i, r)| (r, i))
            .collect(),
        found: Vec::new(),
    };
    s.run(0);
    let mut elements = s.found;
    elements.sort();
    let generators = greedy_generators(&elements);
    AutomorphismGroup {
        order: elements.len() as u128,
        generators,
        elements,
    }
}

fn closure(gens: &[TableAutomorphism], id: &TableAutomorphism) -> BTreeSet<TableAutomorphism> {
    let mut group = BTreeSet::from([id.clone()]);
    let mut frontier = vec![id.clone()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = g.compose(&x);
            if group.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    group
}

fn greedy_generators(elements: &[TableAutomorphism]) -> Vec<TableAutomorphism> {
    let Some(id) = elements.iter().find(|a| a.is_identity()) else {
        return Vec::new();
    };
    let mut gens = Vec::new();
    let mut group = BTreeSet::from([id.clone()]);
    for a in elements {
        if !group.contains(a) {
            gens.push(a.clone());
            group = closure(&gens, id);
        }
    }
    gens
}

/// Groups candidate row sets that are images of each other under a class
/// permutation from `auts`. Each candidate is a list of rows over the
/// classes of the table; row order inside a candidate is irrelevant.
pub fn equivalence_classes(
    candidates: &[Vec<Vec<Cyclotomic>>],
    auts: &[TableAutomorphism],
) -> Vec<Vec<usize>> {
    let canon = |rows: &Vec<Vec<Cyclotomic>>| -> BTreeSet<Vec<Cyclotomic>> {
        rows.iter().cloned().collect()
    };
    let keys: Vec<BTreeSet<Vec<Cyclotomic>>> = candidates.iter().map(canon).collect();
    let mut class_of: Vec<Option<usize>> = vec![None; candidates.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..candidates.len() {
        if class_of[i].is_some() {
            continue;
        }
        let id = classes.len();
        class_of[i] = Some(id);
        let mut members = vec![i];
        for a in auts {
            let moved: BTreeSet<Vec<Cyclotomic>> = keys[i]
                .iter()
                .map(|row| {
                    let mut m = row.clone();
                    for (c, v) in row.iter().enumerate() {
                        m[a.class_perm[c]] = v.clone();
                    }
                    m
                })
                .collect();
            for j in i + 1..candidates.len() {
                if class_of[j].is_none() && keys[j] == moved {
                    class_of[j] = Some(id);
                    members.push(j);
                }
            }
        }
        members.sort();
        classes.push(members);
    }
    classes
}
