use brauer_core::tablesearch::{
    decompose_by_degrees, determinant, is_lll_reduced, lll_reduce, LatticeBasis,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn gram_of(rows: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|a| {
            rows.iter()
                .map(|b| {
                    BigRational::from_integer(
                        a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>().into(),
                    )
                })
                .collect()
        })
        .collect()
}

fn rational(m: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect()
}

fn generators() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=6).prop_flat_map(|(dim, count)| {
        prop::collection::vec(prop::collection::vec(-6i64..=6, dim), count)
    })
}

/// Every choice of `norm` entries with signs, normalized and deduplicated.
fn signed_subsets(missing: &[u64], norm: usize, target: i128) -> Vec<Vec<i128>> {
    let n = missing.len();
    let mut out = std::collections::BTreeSet::new();
    for mask in 0u32..1 << n {
        if mask.count_ones() as usize != norm {
            continue;
        }
        let chosen: Vec<i128> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| missing[i] as i128)
            .collect();
        for signs in 0u32..1 << norm {
            let mut d: Vec<i128> = chosen
                .iter()
                .enumerate()
                .map(|(k, &x)| if signs >> k & 1 == 1 { -x } else { x })
                .collect();
            if d.iter().sum::<i128>() == target {
                d.sort_by_key(|&x| (x.abs(), x < 0));
                out.insert(d);
            }
        }
    }
    out.into_iter().collect()
}

proptest! {
    #[test]
    fn reduction_preserves_the_lattice(rows in generators()) {
        let gram = gram_of(&rows);
        let basis = LatticeBasis::from_gram(gram.clone()).unwrap();
        let delta = BigRational::new(3.into(), 4.into());
        let res = lll_reduce(&basis, &delta).unwrap();
        prop_assert_eq!(res.basis.rank() + res.relations.len(), rows.len());
        prop_assert!(is_lll_reduced(&res.basis.gram, &delta));
        // The transform is unimodular, so reduced vectors and relations
        // generate the same module as the inputs.
        prop_assert_eq!(determinant(&rational(&res.transform)).abs(), BigRational::one());
        for rel in &res.relations {
            let dim = rows[0].len();
            for c in 0..dim {
                let s: BigInt = rel.iter().zip(&rows).map(|(a, r)| a * BigInt::from(r[c])).sum();
                prop_assert!(s.is_zero());
            }
        }
        // With independent generators the covolume is unchanged.
        if !determinant(&gram).is_zero() {
            prop_assert_eq!(determinant(&res.basis.gram), determinant(&gram));
        }
        prop_assert!(res.basis.gram.iter().enumerate().all(|(i, r)| r[i].is_positive()));
    }

    #[test]
    fn degree_decompositions_are_exact(
        missing in prop::collection::vec(1u64..200, 1..10),
        norm in 1usize..=3,
        target in -400i128..400,
    ) {
        let found = decompose_by_degrees(target, norm, &missing).unwrap();
        for d in &found {
            prop_assert_eq!(d.len(), norm);
            prop_assert_eq!(d.iter().sum::<i128>(), target);
            for x in d {
                let used = d.iter().filter(|y| y.abs() == x.abs()).count();
                let available = missing.iter().filter(|&&m| m as i128 == x.abs()).count();
                prop_assert!(used <= available);
            }
        }
        prop_assert_eq!(found, signed_subsets(&missing, norm, target));
    }
}
