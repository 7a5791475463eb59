//! Small integer helpers shared by the field and table code.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Prime factorization by trial division, ascending primes with exponents.
pub fn factorize(mut n: u128) -> Vec<(u128, u32)> {
    let mut out = Vec::new();
    let mut p: u128 = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u128) -> Vec<u128> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n as u128)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p as u64 * (p as u64 - 1))
}

/// Exponent of `p` in `n` (n > 0).
pub fn valuation(mut n: u128, p: u128) -> u32 {
    let mut v = 0;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Splits `n = p^a * rest` with `rest` prime to `p`.
pub fn split_prime_part(n: u64, p: u64) -> (u64, u64) {
    let mut ppart = 1;
    let mut rest = n;
    while rest.is_multiple_of(p) {
        rest /= p;
        ppart *= p;
    }
    (ppart, rest)
}

/// Multiplicative order of `a` modulo `n` (requires gcd(a, n) = 1, n ≥ 1).
pub fn multiplicative_order(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let a = a % n;
    let mut x = a;
    let mut k = 1;
    while x != 1 {
        x = ((x as u128 * a as u128) % n as u128) as u64;
        k += 1;
    }
    k
}

pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u128 = 1 % m as u128;
    let mut b = (base % m) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m as u128;
        }
        b = b * b % m as u128;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let e = a.rem_euclid(m).extended_gcd(&m);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    out.sort_unstable();
    out
}

/// Nearest integer, ties rounded up (floor(x + 1/2)).
pub fn round_rational(x: &BigRational) -> BigInt {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    (x + half).floor().to_integer()
}

/// Residue of a rational with denominator prime to `p`, or `None`.
pub fn rational_mod_p(x: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = x.denom().mod_floor(&pb);
    if den.is_zero() {
        return None;
    }
    let num = x.numer().mod_floor(&pb);
    let den = u64::try_from(den).ok()?;
    let num = u64::try_from(num).ok()?;
    let inv = mod_inverse(den as i64, p as i64)? as u64;
    Some(((num as u128 * inv as u128) % p as u128) as u64)
}

pub fn bigint_abs_u128(x: &BigInt) -> Option<u128> {
    u128::try_from(x.abs()).ok()
}
