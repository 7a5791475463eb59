use brauer_core::arith::gcd;
use brauer_core::cyclotomic::numeric::close;
use brauer_core::cyclotomic::{Cyclotomic, PrimeIdealContext};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const CONDUCTORS: [u64; 8] = [1, 3, 4, 5, 7, 8, 12, 15];
const BITS: u32 = 96;

fn element(n: u64, max_terms: usize) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec((0..n as i64, -6i64..=6, 1i64..=3), 0..=max_terms).prop_map(
        move |terms| {
            Cyclotomic::from_terms(
                n,
                terms
                    .into_iter()
                    .map(|(k, a, b)| (k, BigRational::new(BigInt::from(a), BigInt::from(b)))),
            )
        },
    )
}

fn integral(n: u64) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec((0..n as i64, -6i64..=6), 0..=4).prop_map(move |terms| {
        Cyclotomic::from_terms(
            n,
            terms
                .into_iter()
                .map(|(k, a)| (k, BigRational::from_integer(a.into()))),
        )
    })
}

fn triple() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, Cyclotomic)> {
    (
        prop::sample::select(&CONDUCTORS[..]),
        prop::sample::select(&CONDUCTORS[..]),
    )
        .prop_flat_map(|(n, m)| (element(n, 4), element(m, 4), element(n * m / gcd(n, m), 3)))
}

fn units(n: u64) -> Vec<i64> {
    (1..n.max(2) as i64)
        .filter(|&k| gcd(k as u64, n) == 1)
        .collect()
}

proptest! {
    #[test]
    fn ring_laws((a, b, c) in triple()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Cyclotomic::one(), a.clone());
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism((a, b, _) in triple()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        prop_assert!((&a * &a.conj()).is_real());
    }

    #[test]
    fn galois_action_is_a_group_action((a, b, k, l) in prop::sample::select(&CONDUCTORS[..]).prop_flat_map(|n| {
        (element(n, 4), element(n, 4), prop::sample::select(units(n)), prop::sample::select(units(n)))
    })) {
        prop_assert_eq!((&a * &b).galois(k).unwrap(), &a.galois(k).unwrap() * &b.galois(k).unwrap());
        prop_assert_eq!(a.galois(k).unwrap().galois(l).unwrap(), a.galois(k * l).unwrap());
        prop_assert_eq!(a.galois(-1).unwrap(), a.conj());
    }

    #[test]
    fn exact_products_match_floating_point((a, b, _) in triple()) {
        let (x, y) = (a.evaluate_fixed(BITS), b.evaluate_fixed(BITS));
        let scale = BigInt::from(1) << BITS;
        let re = (&x.0 * &y.0 - &x.1 * &y.1) / &scale;
        let im = (&x.0 * &y.1 + &x.1 * &y.0) / &scale;
        prop_assert!(close(&(&a * &b).evaluate_fixed(BITS), &(re, im), BITS, 40));
        let (fr, fi) = a.to_f64_pair();
        let (er, ei) = a.evaluate_fixed(BITS);
        let s = 2f64.powi(BITS as i32);
        prop_assert!((fr - er.to_string().parse::<f64>().unwrap() / s).abs() < 1e-9);
        prop_assert!((fi - ei.to_string().parse::<f64>().unwrap() / s).abs() < 1e-9);
    }

    #[test]
    fn reduction_is_a_ring_homomorphism((ell, n, a, b) in (
        prop::sample::select(vec![2u64, 3, 5, 7]),
        prop::sample::select(vec![3u64, 4, 5, 7, 8, 12, 15, 21]),
    ).prop_flat_map(|(ell, n)| (Just(ell), Just(n), integral(n), integral(n)))) {
        let ctx = PrimeIdealContext::new(ell, n).unwrap();
        let (ra, rb) = (ctx.reduce(&a).unwrap(), ctx.reduce(&b).unwrap());
        prop_assert_eq!(ctx.reduce(&(&a + &b)).unwrap(), &ra + &rb);
        prop_assert_eq!(ctx.reduce(&(&a * &b)).unwrap(), &ra * &rb);
        prop_assert!(ctx.reduce(&Cyclotomic::one()).unwrap().is_one());
        // Any admissible choice of image gives a homomorphism too.
        for j in 1..ctx.n_prime() {
            let Ok(alt) = ctx.alternative(j) else { continue };
            prop_assert_eq!(alt.reduce(&(&a * &b)).unwrap(), &alt.reduce(&a).unwrap() * &alt.reduce(&b).unwrap());
        }
    }
}
