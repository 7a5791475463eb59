use brauer_core::corpus;
use brauer_core::cyclotomic::Cyclotomic;
use brauer_core::table::{
    parse_table, write_table, CharacterTable, ClassFunction, FusionKind, FusionMap,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn table() -> impl Strategy<Value = CharacterTable> {
    prop::sample::select(corpus::tables())
}

fn subgroup_pair() -> impl Strategy<Value = (CharacterTable, CharacterTable, FusionMap)> {
    let pairs: Vec<_> = corpus::fusions()
        .into_iter()
        .filter(|f| f.kind() == FusionKind::Subgroup)
        .map(|f| {
            (
                corpus::table(f.source()).unwrap(),
                corpus::table(f.target()).unwrap(),
                f,
            )
        })
        .collect();
    prop::sample::select(pairs)
}

/// An integer combination of the irreducibles.
fn virtual_character(t: &CharacterTable, coeffs: &[i64]) -> ClassFunction {
    let coords: Vec<BigInt> = (0..t.num_irreducibles())
        .map(|i| BigInt::from(coeffs[i % coeffs.len()]))
        .collect();
    ClassFunction::from_coordinates(t, &coords).unwrap()
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 1..8)
}

#[test]
fn bundled_tables_round_trip() {
    for t in corpus::tables() {
        let text = write_table(&t);
        assert_eq!(parse_table(&text).unwrap(), t, "{}", t.name());
        assert_eq!(write_table(&parse_table(&text).unwrap()), text);
    }
}

#[test]
fn column_orthogonality() {
    for t in corpus::tables() {
        for g in 0..t.num_classes() {
            for h in 0..t.num_classes() {
                let s: Cyclotomic = (0..t.num_irreducibles())
                    .map(|i| t.value(i, g) * &t.value(i, h).conj())
                    .sum();
                let expected = if g == h {
                    Cyclotomic::from_bigint(BigInt::from(t.centralizer_order(g)))
                } else {
                    Cyclotomic::zero()
                };
                assert_eq!(s, expected, "{} classes {g}, {h}", t.name());
            }
        }
    }
}

#[test]
fn row_orthogonality() {
    for t in corpus::tables() {
        let irr = t.irreducibles();
        for (i, a) in irr.iter().enumerate() {
            for (j, b) in irr.iter().enumerate() {
                let ip = a.inner_product(b, &t).unwrap();
                assert_eq!(
                    ip,
                    Cyclotomic::from_integer((i == j) as i64),
                    "{} ({i}, {j})",
                    t.name()
                );
            }
        }
    }
}

proptest! {
    #[test]
    fn frobenius_reciprocity((h, g, f) in subgroup_pair(), a in coeffs(), b in coeffs()) {
        let psi = virtual_character(&h, &a);
        let chi = virtual_character(&g, &b);
        let lhs = psi.induce(&f, &h, &g).unwrap().inner_product(&chi, &g).unwrap();
        let rhs = psi.inner_product(&chi.restrict(&f, &h).unwrap(), &h).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn symmetric_and_alternating_squares_add_up(t in table(), i in any::<prop::sample::Index>()) {
        let chi = t.irreducible(i.index(t.num_irreducibles()));
        let (sym, alt) = chi.symmetrize2(&t).unwrap();
        prop_assert_eq!(&sym + &alt, chi.tensor(&chi).unwrap());
        // Both are characters.
        prop_assert!(sym.coordinates(&t).unwrap().iter().all(|c| *c >= BigInt::from(0)));
        prop_assert!(alt.coordinates(&t).unwrap().iter().all(|c| *c >= BigInt::from(0)));
        prop_assert_eq!(sym.degree().unwrap() - alt.degree().unwrap(), chi.degree().unwrap());
    }

    #[test]
    fn coordinates_invert_combinations(t in table(), a in coeffs()) {
        let f = virtual_character(&t, &a);
        prop_assert_eq!(ClassFunction::from_coordinates(&t, &f.coordinates(&t).unwrap()).unwrap(), f);
    }

    #[test]
    fn galois_conjugates_stay_irreducible(t in table(), k in 1i64..60) {
        let Some(perm) = t.galois_permutation(k) else { return Ok(()) };
        for i in 0..t.num_irreducibles() {
            let image = t.irreducible(i).galois(k).unwrap();
            prop_assert_eq!(image, t.irreducible(perm[i]));
        }
    }

    #[test]
    fn tensor_products_are_characters(t in table(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let n = t.num_irreducibles();
        let p = t.irreducible(i.index(n)).tensor(&t.irreducible(j.index(n))).unwrap();
        let coords = p.coordinates(&t).unwrap();
        prop_assert!(coords.iter().all(|c| *c >= BigInt::from(0)));
        let deg: BigInt = (0..n).map(|k| &coords[k] * t.degree(k)).sum();
        prop_assert_eq!(deg, p.degree().unwrap());
    }
}
