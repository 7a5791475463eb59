//! Writing a degree as a signed sum of missing irreducible degrees.

use std::collections::HashMap;

use thiserror::Error;

/// Largest norm accepted by [`decompose_by_degrees`].
pub const MAX_NORM: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DegreeError {
    #[error("norm must lie in 1..={MAX_NORM}, got {0}")]
    NormOutOfRange(usize),
}

/// Per distinct degree: how many constituents enter with `+` and with `−`.
type Choice = Vec<(u32, u32)>;

/// `(number of constituents, signed degree sum, choices)` over a run of
/// distinct degrees.
fn half_table(values: &[(i128, u32)], norm: u32) -> Vec<(u32, i128, Choice)> {
    let mut out = vec![(0u32, 0i128, Vec::new())];
    for &(v, mult) in values {
        let mut next = Vec::new();
        for (count, sum, choice) in &out {
            for plus in 0..=mult {
                for minus in 0..=(mult - plus) {
                    let c = count + plus + minus;
                    if c > norm {
                        break;
                    }
                    let mut ch = choice.clone();
                    ch.push((plus, minus));
                    next.push((c, sum + v * (plus as i128 - minus as i128), ch));
                }
            }
        }
        out = next;
    }
    out
}

/// All ways to write `degree = Σ ε_i d_i` using exactly `norm` entries of
/// the multiset `missing`, each `ε_i = ±1` (each entry at most once).
///
/// Each decomposition is a list of signed degrees ordered by absolute value
/// with `+` before `−`; the list of decompositions is sorted.
pub fn decompose_by_degrees(
    degree: i128,
    norm: usize,
    missing: &[u64],
) -> Result<Vec<Vec<i128>>, DegreeError> {
    if norm == 0 || norm > MAX_NORM {
        return Err(DegreeError::NormOutOfRange(norm));
    }
    let mut distinct: Vec<(i128, u32)> = Vec::new();
    let mut sorted = missing.to_vec();
    sorted.sort_unstable();
    for d in sorted {
        match distinct.last_mut() {
            Some((v, m)) if *v == d as i128 => *m += 1,
            _ => distinct.push((d as i128, 1)),
        }
    }
    let norm = norm as u32;
    let (left, right) = distinct.split_at(distinct.len() / 2);
    let a = half_table(left, norm);
    let b = half_table(right, norm);
    let mut index: HashMap<(u32, i128), Vec<usize>> = HashMap::new();
    for (i, (c, s, _)) in b.iter().enumerate() {
        index.entry((*c, *s)).or_default().push(i);
    }
    let mut out = Vec::new();
    for (ca, sa, cha) in &a {
        let Some(hits) = index.get(&(norm - ca, degree - sa)) else {
            continue;
        };
        for &j in hits {
            let mut terms = Vec::with_capacity(norm as usize);
            for (&(v, _), &(plus, minus)) in distinct.iter().zip(cha.iter().chain(&b[j].2)) {
                terms.extend(std::iter::repeat_n(v, plus as usize));
                terms.extend(std::iter::repeat_n(-v, minus as usize));
            }
            terms.sort_by_key(|&x| (x.abs(), x < 0));
            out.push(terms);
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive sign/subset enumeration over the multiset entries.
    fn brute(degree: i128, norm: usize, missing: &[u64]) -> Vec<Vec<i128>> {
        let n = missing.len();
        let mut out = std::collections::BTreeSet::new();
        for mask in 0u32..3u32.pow(n as u32) {
            let mut m = mask;
            let mut terms = Vec::new();
            for &d in missing {
                match m % 3 {
                    1 => terms.push(d as i128),
                    2 => terms.push(-(d as i128)),
                    _ => {}
                }
                m /= 3;
            }
            if terms.len() == norm && terms.iter().sum::<i128>() == degree {
                terms.sort_by_key(|&x| (x.abs(), x < 0));
                out.insert(terms);
            }
        }
        out.into_iter().collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(
            decompose_by_degrees(0, 2, &[7, 7]).unwrap(),
            vec![vec![7, -7]]
        );
        assert!(decompose_by_degrees(1, 2, &[3, 5]).unwrap().is_empty());
        assert_eq!(
            decompose_by_degrees(2, 2, &[3, 5]).unwrap(),
            vec![vec![-3, 5]]
        );
        assert!(decompose_by_degrees(1, 0, &[1]).is_err());
        assert!(decompose_by_degrees(1, 25, &[1]).is_err());
    }

    #[test]
    fn matches_exhaustive_enumeration() {
        let missing = [1u64, 2, 2, 3, 5, 5, 5, 8];
        for norm in 1..=5 {
            for degree in -12..=20 {
                assert_eq!(
                    decompose_by_degrees(degree, norm, &missing).unwrap(),
                    brute(degree, norm, &missing),
                    "degree {degree} norm {norm}"
                );
            }
        }
    }
}
