//! Finite fields `GF(ℓ^d)` and reduction of cyclotomic integers modulo a
//! fixed prime ideal above `ℓ`.
//!
//! Both the defining polynomial of `GF(ℓ^d)` and the image of `ζ_{n'}` are
//! chosen deterministically (lexicographically least, coefficient vectors
//! compared from the constant term upwards), so reductions are reproducible.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use super::{Cyclotomic, CyclotomicError};
use crate::arith::{
    gcd, is_prime, mod_inverse, multiplicative_order, prime_divisors, rational_mod_p,
    split_prime_part,
};

/// Element of `GF(ℓ^d)`: polynomial residue of degree `< d`, constant term
/// first. The derived ordering is the lexicographic order used for the
/// deterministic choices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteFieldElement {
    characteristic: u64,
    degree: u32,
    coeffs: Vec<u64>,
}

/// `GF(p^d) = GF(p)[x]/(f)` with `f` the least monic irreducible of degree `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisField {
    p: u64,
    d: u32,
    /// Monic modulus, constant term first, length `d + 1`.
    modulus: Vec<u64>,
}

type GfCache = RwLock<HashMap<(u64, u32), Arc<GaloisField>>>;

fn gf_cache() -> &'static GfCache {
    static CACHE: OnceLock<GfCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

// Dense polynomial helpers over GF(p), constant term first.

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = mod_inverse(m[dm] as i64, p as i64).unwrap() as u64;
    while r.len() > dm {
        let top = r.len() - 1;
        let c = (r[top] as u128 * lead_inv as u128 % p as u128) as u64;
        let shift = top - dm;
        for (i, &mi) in m.iter().enumerate() {
            let sub = (c as u128 * mi as u128 % p as u128) as u64;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u128 * y as u128) % p as u128;
        }
    }
    let out: Vec<u64> = out.into_iter().map(|v| v as u64).collect();
    poly_rem(&out, m, p)
}

fn poly_powmod(base: &[u64], mut e: u128, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, m, p);
        }
        e >>= 1;
        if e > 0 {
            b = poly_mulmod(&b, &b, m, p);
        }
    }
    poly_rem(&acc, m, p)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let v = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(v)
}

/// Rabin's test for a monic `f` of degree `d` over `GF(p)`.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    if d == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let x = vec![0u64, 1];
    // x^(p^i) mod f by repeated p-th powers.
    let mut frob = vec![x.clone()];
    for _ in 0..d {
        let last = frob.last().unwrap().clone();
        frob.push(poly_powmod(&last, p as u128, f, p));
    }
    if poly_sub(&frob[d], &x, p) != Vec::<u64>::new() {
        return false;
    }
    for q in prime_divisors(d as u128) {
        let h = poly_sub(&frob[d / q as usize], &x, p);
        let g = poly_gcd(f, &h, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

impl GaloisField {
    pub fn new(p: u64, d: u32) -> Arc<GaloisField> {
        assert!(is_prime(p), "characteristic must be prime");
        assert!(d >= 1, "degree must be positive");
        if let Some(f) = gf_cache().read().unwrap().get(&(p, d)) {
            return f.clone();
        }
        let field = Arc::new(GaloisField {
            p,
            d,
            modulus: least_irreducible(p, d),
        });
        gf_cache()
            .write()
            .unwrap()
            .entry((p, d))
            .or_insert(field)
            .clone()
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    /// Defining polynomial, constant term first (monic, length `d+1`).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// `p^d`, if it fits.
    pub fn size(&self) -> Option<u128> {
        (self.p as u128).checked_pow(self.d)
    }

    pub fn element(&self, coeffs: &[u64]) -> FiniteFieldElement {
        let mut c: Vec<u64> = coeffs.iter().map(|x| x % self.p).collect();
        c = poly_rem(&c, &self.modulus, self.p);
        c.resize(self.d as usize, 0);
        FiniteFieldElement {
            characteristic: self.p,
            degree: self.d,
            coeffs: c,
        }
    }

    pub fn from_int(&self, v: u64) -> FiniteFieldElement {
        self.element(&[v % self.p])
    }

    pub fn zero(&self) -> FiniteFieldElement {
        self.from_int(0)
    }

    pub fn one(&self) -> FiniteFieldElement {
        self.from_int(1)
    }

    /// The element whose coefficient vector is the base-`p` expansion of
    /// `index`, constant term most significant; enumerates the field in
    /// lexicographic order.
    fn nth_element(&self, mut index: u128) -> FiniteFieldElement {
        let mut c = vec![0u64; self.d as usize];
        for slot in c.iter_mut().rev() {
            *slot = (index % self.p as u128) as u64;
            index /= self.p as u128;
        }
        self.element(&c)
    }
}

fn least_irreducible(p: u64, d: u32) -> Vec<u64> {
    let d = d as usize;
    let total = (p as u128).pow(d as u32);
    for index in 0..total {
        let mut f = vec![0u64; d + 1];
        f[d] = 1;
        let mut t = index;
        for i in (0..d).rev() {
            f[i] = (t % p as u128) as u64;
            t /= p as u128;
        }
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FiniteFieldElement {
    pub fn field(&self) -> Arc<GaloisField> {
        GaloisField::new(self.characteristic, self.degree)
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn pow(&self, e: u128) -> FiniteFieldElement {
        let f = self.field();
        let c = poly_powmod(&self.coeffs, e, &f.modulus, f.p);
        f.element(&c)
    }

    /// Multiplicative order; `None` for zero.
    pub fn multiplicative_order(&self) -> Option<u128> {
        if self.is_zero() {
            return None;
        }
        let q1 = self.field().size().expect("field too large") - 1;
        let mut order = q1;
        for p in prime_divisors(q1) {
            while order.is_multiple_of(p) && self.pow(order / p).is_one() {
                order /= p;
            }
        }
        Some(order)
    }

    fn has_exact_order(&self, n: u64) -> bool {
        if !self.pow(n as u128).is_one() {
            return false;
        }
        prime_divisors(n as u128)
            .into_iter()
            .all(|q| !self.pow((n as u128) / q).is_one())
    }
}

impl Add for &FiniteFieldElement {
    type Output = FiniteFieldElement;
    fn add(self, rhs: &FiniteFieldElement) -> FiniteFieldElement {
        assert_eq!(
            (self.characteristic, self.degree),
            (rhs.characteristic, rhs.degree)
        );
        let p = self.characteristic;
        FiniteFieldElement {
            characteristic: p,
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| (a + b) % p)
                .collect(),
        }
    }
}

impl Neg for &FiniteFieldElement {
    type Output = FiniteFieldElement;
    fn neg(self) -> FiniteFieldElement {
        let p = self.characteristic;
        FiniteFieldElement {
            characteristic: p,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| (p - a) % p).collect(),
        }
    }
}

impl Sub for &FiniteFieldElement {
    type Output = FiniteFieldElement;
    fn sub(self, rhs: &FiniteFieldElement) -> FiniteFieldElement {
        self + &(-rhs)
    }
}

impl Mul for &FiniteFieldElement {
    type Output = FiniteFieldElement;
    fn mul(self, rhs: &FiniteFieldElement) -> FiniteFieldElement {
        assert_eq!(
            (self.characteristic, self.degree),
            (rhs.characteristic, rhs.degree)
        );
        let f = self.field();
        let c = poly_mulmod(
            &trim(self.coeffs.clone()),
            &trim(rhs.coeffs.clone()),
            &f.modulus,
            f.p,
        );
        f.element(&c)
    }
}

impl fmt::Display for FiniteFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for FiniteFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}){}", self.characteristic, self.degree, self)
    }
}

/// A prime ideal above `ℓ` in `Z[ζ_n]`, represented by the image of a
/// primitive `n'`-th root of unity in `GF(ℓ^d)`, `n'` the `ℓ'`-part of `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeIdealContext {
    ell: u64,
    n_prime: u64,
    degree: u32,
    image: FiniteFieldElement,
}

impl PrimeIdealContext {
    /// Deterministic context for values of conductor dividing `n`.
    pub fn new(ell: u64, n: u64) -> Result<Self, CyclotomicError> {
        if !is_prime(ell) {
            return Err(CyclotomicError::InvalidContext(format!(
                "{ell} is not prime"
            )));
        }
        let (_, n_prime) = split_prime_part(n.max(1), ell);
        let degree = multiplicative_order(ell % n_prime.max(1), n_prime) as u32;
        let field = GaloisField::new(ell, degree);
        let image = least_root_of_exact_order(&field, n_prime)?;
        Ok(PrimeIdealContext {
            ell,
            n_prime,
            degree,
            image,
        })
    }

    /// A context with a caller-chosen image; it must have exact order `n'`.
    pub fn with_image(
        ell: u64,
        n_prime: u64,
        image: FiniteFieldElement,
    ) -> Result<Self, CyclotomicError> {
        if image.characteristic() != ell || n_prime.is_multiple_of(ell) {
            return Err(CyclotomicError::InvalidContext(
                "image characteristic or n' does not match ℓ".into(),
            ));
        }
        if !image.has_exact_order(n_prime) {
            return Err(CyclotomicError::InvalidContext(format!(
                "image {image} does not have exact order {n_prime}"
            )));
        }
        let degree = image.degree();
        Ok(PrimeIdealContext {
            ell,
            n_prime,
            degree,
            image,
        })
    }

    /// The context obtained by replacing the image `w` by `w^j`,
    /// `gcd(j, n') = 1` (a different prime ideal above `ℓ`).
    pub fn alternative(&self, j: u64) -> Result<Self, CyclotomicError> {
        if gcd(j % self.n_prime.max(1), self.n_prime) != 1 && self.n_prime > 1 {
            return Err(CyclotomicError::InvalidContext(format!(
                "{j} is not coprime to {}",
                self.n_prime
            )));
        }
        Self::with_image(self.ell, self.n_prime, self.image.pow(j as u128))
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn n_prime(&self) -> u64 {
        self.n_prime
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn image(&self) -> &FiniteFieldElement {
        &self.image
    }

    pub fn field(&self) -> Arc<GaloisField> {
        GaloisField::new(self.ell, self.degree)
    }

    /// Ring homomorphism `Z_(ℓ)[ζ_n] → GF(ℓ^d)`: `ζ_{n'} ↦ image`, and
    /// `ℓ`-power roots of unity `↦ 1`.
    pub fn reduce(&self, a: &Cyclotomic) -> Result<FiniteFieldElement, CyclotomicError> {
        let field = self.field();
        let c = a.conductor();
        let (ell_part, c_prime) = split_prime_part(c, self.ell);
        if !self.n_prime.is_multiple_of(c_prime) {
            return Err(CyclotomicError::ConductorMismatch {
                conductor: c,
                ell: self.ell,
                n_prime: self.n_prime,
            });
        }
        // ζ_c = ζ_{ℓ^s}^u · ζ_{c'}^v with v·ℓ^s ≡ 1 (mod c').
        let w = if c_prime == 1 {
            field.one()
        } else {
            let v = mod_inverse((ell_part % c_prime) as i64, c_prime as i64).unwrap() as u128;
            self.image.pow((self.n_prime / c_prime) as u128 * v)
        };
        let mut acc = field.zero();
        let mut wk = field.one();
        for (k, coeff) in a.coefficients().iter().enumerate() {
            if k > 0 {
                wk = &wk * &w;
            }
            if num_traits::Zero::is_zero(coeff) {
                continue;
            }
            let r = rational_mod_p(coeff, self.ell).ok_or_else(|| {
                CyclotomicError::DenominatorDivisibleByPrime {
                    coeff: coeff.to_string(),
                    ell: self.ell,
                }
            })?;
            acc = &acc + &(&field.from_int(r) * &wk);
        }
        Ok(acc)
    }
}

fn least_root_of_exact_order(
    field: &GaloisField,
    n: u64,
) -> Result<FiniteFieldElement, CyclotomicError> {
    if n == 1 {
        return Ok(field.one());
    }
    let size = field
        .size()
        .ok_or_else(|| CyclotomicError::InvalidContext("field too large".into()))?;
    let q1 = size - 1;
    if q1 % n as u128 != 0 {
        return Err(CyclotomicError::InvalidContext(format!(
            "no element of order {n} in GF({}^{})",
            field.p, field.d
        )));
    }
    // Find one root of exact order n, then take the least of its primitive powers.
    for index in 1..size {
        let a = field.nth_element(index);
        let r = a.pow(q1 / n as u128);
        if r.has_exact_order(n) {
            let best = (1..n)
                .filter(|&j| gcd(j, n) == 1)
                .map(|j| r.pow(j as u128))
                .min()
                .unwrap();
            return Ok(best);
        }
    }
    unreachable!("the multiplicative group is cyclic")
}
