//! High-precision numerical evaluation at `ζ_n = e^{2πi/n}`, used only to
//! cross-check exact arithmetic. Values are fixed-point integers scaled by
//! `2^bits`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Cyclotomic;

const GUARD: u32 = 32;

fn atan_inv(x: u64, bits: u32) -> BigInt {
    let one = BigInt::one() << bits;
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut term = &one / &x;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !term.is_zero() {
        let t = &term / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += t;
        } else {
            sum -= t;
        }
        term = &term / &x2;
        k += 1;
    }
    sum
}

/// `π · 2^bits` via Machin's formula.
pub fn pi_fixed(bits: u32) -> BigInt {
    let b = bits + GUARD;
    let v = atan_inv(5, b) * 16 - atan_inv(239, b) * 4;
    v >> GUARD
}

/// `(cos θ, sin θ) · 2^bits` for `θ = 2πk/n`.
pub fn cos_sin_fixed(n: u64, k: i64, bits: u32) -> (BigInt, BigInt) {
    let b = bits + GUARD;
    let one = BigInt::one() << b;
    let n_i = n as i64;
    // Reduce k into (-n/2, n/2] so |θ| ≤ π.
    let mut k = k.rem_euclid(n_i);
    if 2 * k > n_i {
        k -= n_i;
    }
    let theta: BigInt = (pi_fixed(b) * BigInt::from(2 * k)).div_floor(&BigInt::from(n));
    let theta2 = (&theta * &theta) >> b;
    let mut cos = BigInt::zero();
    let mut sin = BigInt::zero();
    let mut c_term = one.clone();
    let mut s_term = theta.clone();
    let mut j = 0u64;
    while !c_term.is_zero() || !s_term.is_zero() {
        cos += &c_term;
        sin += &s_term;
        c_term = -((&c_term * &theta2) >> b) / BigInt::from((2 * j + 1) * (2 * j + 2));
        s_term = -((&s_term * &theta2) >> b) / BigInt::from((2 * j + 2) * (2 * j + 3));
        j += 1;
    }
    (cos >> GUARD, sin >> GUARD)
}

fn scale_rational(c: &BigRational, v: &BigInt) -> BigInt {
    (c.numer() * v).div_floor(c.denom())
}

/// Evaluates `Σ c·ζ_n^k` over raw (uncanonicalized) terms.
pub fn evaluate_terms(terms: &[(u64, i64, BigRational)], bits: u32) -> (BigInt, BigInt) {
    let mut re = BigInt::zero();
    let mut im = BigInt::zero();
    for (n, k, c) in terms {
        let (cs, sn) = cos_sin_fixed(*n, *k, bits + GUARD);
        re += scale_rational(c, &cs);
        im += scale_rational(c, &sn);
    }
    (re >> GUARD, im >> GUARD)
}

impl Cyclotomic {
    /// Fixed-point value at `ζ_n = e^{2πi/n}`, scaled by `2^bits`.
    pub fn evaluate_fixed(&self, bits: u32) -> (BigInt, BigInt) {
        let n = self.conductor();
        let terms: Vec<(u64, i64, BigRational)> = self
            .terms()
            .map(|(k, c)| (n, k as i64, c.clone()))
            .collect();
        evaluate_terms(&terms, bits)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        let (re, im) = self.evaluate_fixed(64);
        let s = 2f64.powi(64);
        let f = |x: BigInt| x.to_string().parse::<f64>().unwrap_or(f64::NAN) / s;
        (f(re), f(im))
    }
}

/// `|a - b| ≤ 2^-tol_bits` componentwise for fixed-point pairs at `bits`.
pub fn close(a: &(BigInt, BigInt), b: &(BigInt, BigInt), bits: u32, tol_bits: u32) -> bool {
    let tol = BigInt::one() << (bits - tol_bits);
    (&a.0 - &b.0).abs() <= tol && (&a.1 - &b.1).abs() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_digits() {
        let p = pi_fixed(200);
        // 40 decimal digits of π.
        let scaled: BigInt = (p * BigInt::from(10u64).pow(40)) >> 200u32;
        assert_eq!(
            scaled.to_string(),
            "31415926535897932384626433832795028841971"
        );
    }

    #[test]
    fn golden_product_is_minus_one_numerically() {
        // (ζ5 + ζ5^4)(ζ5^2 + ζ5^3) evaluated from raw terms at 200 bits.
        let one = BigRational::one();
        let prod: Vec<(u64, i64, BigRational)> = [(1 + 2), (1 + 3), (4 + 2), (4 + 3)]
            .iter()
            .map(|&k| (5u64, k as i64, one.clone()))
            .collect();
        let v = evaluate_terms(&prod, 200);
        let minus_one: (BigInt, BigInt) = (-(BigInt::one() << 200u32), BigInt::zero());
        // 10^-40 < 2^-132
        assert!(close(&v, &minus_one, 200, 132));
    }
}
