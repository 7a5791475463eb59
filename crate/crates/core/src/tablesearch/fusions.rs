//! Class maps of an epimorphism `Z.G → G`, by backtracking over the
//! arithmetic constraints.

use crate::cyclotomic::Cyclotomic;
use crate::table::{CharacterTable, ClassFunction, FusionKind, FusionMap, TableError};

/// Paired constraint: `source(c) = target(f(c))` for every class `c`.
pub type ProbePair = (ClassFunction, ClassFunction);

struct Search<'a> {
    src: &'a CharacterTable,
    order: Vec<usize>,
    allowed: Vec<Vec<usize>>,
    /// Probe values per source class.
    probes: Vec<Vec<&'a Cyclotomic>>,
    capacity: Vec<u128>,
    map: Vec<Option<usize>>,
    /// First source class assigned to each target (its probe values define
    /// the fiber).
    representative: Vec<Option<usize>>,
    out: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) {
        if depth == self.order.len() {
            if self.capacity.iter().all(|&c| c == 0) {
                self.out.push(self.map.iter().map(|m| m.unwrap()).collect());
            }
            return;
        }
        let c = self.order[depth];
        let size = self.src.class_size(c);
        for i in 0..self.allowed[c].len() {
            let d = self.allowed[c][i];
            if self.capacity[d] < size {
                continue;
            }
            if let Some(r) = self.representative[d] {
                if self.probes[r] != self.probes[c] {
                    continue;
                }
            }
            let fresh = self.representative[d].is_none();
            if fresh {
                self.representative[d] = Some(c);
            }
            self.capacity[d] -= size;
            self.map[c] = Some(d);
            self.run(depth + 1);
            self.map[c] = None;
            self.capacity[d] += size;
            if fresh {
                self.representative[d] = None;
            }
        }
    }
}

/// All class maps `src → tgt` of a quotient by a central subgroup of order
/// `z = |src|/|tgt|` that satisfy:
/// * `o(f(c))` divides `o(c)` and `o(c)` divides `z·o(f(c))`;
/// * the preimages of each target class have total size `z·|class|`;
/// * every probe takes equal values on classes with the same image;
/// * every pair `(a, b)` has `a(c) = b(f(c))`.
///
/// Results are sorted lexicographically.
pub fn quotient_fusion_candidates(
    src: &CharacterTable,
    tgt: &CharacterTable,
    probes: &[ClassFunction],
    pairs: &[ProbePair],
) -> Result<Vec<FusionMap>, TableError> {
    for p in probes {
        p.inner_product(p, src)?;
    }
    for (a, b) in pairs {
        a.inner_product(a, src)?;
        b.inner_product(b, tgt)?;
    }
    if tgt.order() == 0 || !src.order().is_multiple_of(tgt.order()) {
        return Ok(Vec::new());
    }
    let z = (src.order() / tgt.order()) as u64;
    let n = src.num_classes();
    let allowed: Vec<Vec<usize>> = (0..n)
        .map(|c| {
            let o = src.element_order(c);
            (0..tgt.num_classes())
                .filter(|&d| {
                    let od = tgt.element_order(d);
                    o.is_multiple_of(od)
                        && (z * od).is_multiple_of(o)
                        && pairs.iter().all(|(a, b)| a.value(c) == b.value(d))
                })
                .collect()
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&c| {
        (
            allowed[c].len(),
            src.element_order(c),
            src.centralizer_order(c),
            c,
        )
    });
    let mut s = Search {
        src,
        order,
        allowed,
        probes: (0..n)
            .map(|c| probes.iter().map(|p| p.value(c)).collect())
            .collect(),
        capacity: (0..tgt.num_classes())
            .map(|d| z as u128 * tgt.class_size(d))
            .collect(),
        map: vec![None; n],
        representative: vec![None; tgt.num_classes()],
        out: Vec::new(),
    };
    s.run(0);
    let mut out = s.out;
    out.sort();
    Ok(out
        .into_iter()
        .map(|m| FusionMap::new(src.name(), tgt.name(), m, FusionKind::Quotient))
        .collect())
}
