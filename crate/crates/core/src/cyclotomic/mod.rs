//! Exact arithmetic in cyclotomic fields `Q(ζ_n)`.
//!
//! Elements are stored in the power basis `1, ζ_n, …, ζ_n^{φ(n)-1}` of
//! their minimal field: after every operation the result is rewritten over
//! the smallest `n` that contains it, so two equal field elements always
//! have identical representations. The conductor is never `≡ 2 (mod 4)`.

mod field;
mod finite;
pub mod numeric;
mod parse;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{gcd, lcm, prime_divisors};

pub use field::cyclotomic_polynomial;
pub use finite::{FiniteFieldElement, GaloisField, PrimeIdealContext};
pub use parse::ParseCyclotomicError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CyclotomicError {
    #[error("galois exponent {k} is not coprime to conductor {n}")]
    NotCoprime { k: i64, n: u64 },
    #[error("coefficient {coeff} has a denominator divisible by {ell}")]
    DenominatorDivisibleByPrime { coeff: String, ell: u64 },
    #[error("conductor {conductor} has prime-to-{ell} part not dividing {n_prime}")]
    ConductorMismatch {
        conductor: u64,
        ell: u64,
        n_prime: u64,
    },
    #[error("invalid prime ideal data: {0}")]
    InvalidContext(String),
}

/// An exact element of `Q(ζ_n)` in canonical minimal-conductor form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclotomic {
    conductor: u64,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    /// `ζ_n^k` for `n ≥ 1` and any integer `k`.
    pub fn root_of_unity(n: u64, k: i64) -> Self {
        assert!(n >= 1, "root of unity needs n >= 1");
        Self::from_terms(n, [(k, BigRational::one())])
    }

    /// Builds `Σ c·ζ_n^k` from arbitrary (possibly repeated, possibly
    /// negative) exponents and canonicalizes.
    pub fn from_terms<I>(n: u64, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        assert!(n >= 1, "conductor must be positive");
        let mut buf = vec![BigRational::zero(); n as usize];
        for (k, c) in terms {
            buf[k.rem_euclid(n as i64) as usize] += c;
        }
        Self::from_exponent_buffer(n, buf)
    }

    /// Coefficient buffer indexed by exponent modulo `n`.
    fn from_exponent_buffer(n: u64, buf: Vec<BigRational>) -> Self {
        if n % 4 == 2 {
            // ζ_{2m} = -ζ_m^{(m+1)/2} for odd m.
            let m = n / 2;
            let half = m.div_ceil(2);
            let mut folded = vec![BigRational::zero(); m as usize];
            for (k, c) in buf.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let k = k as u64;
                let e = (k * half % m) as usize;
                if k.is_multiple_of(2) {
                    folded[e] += c;
                } else {
                    folded[e] -= c;
                }
            }
            return Self::from_exponent_buffer(m, folded);
        }
        let f = field::field(n);
        let mut coords = vec![BigRational::zero(); f.phi];
        for (k, c) in buf.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (x, &r) in coords.iter_mut().zip(&f.reduce[k]) {
                if r != 0 {
                    *x += c * BigInt::from(r);
                }
            }
        }
        Self::canonical(n, coords)
    }

    /// Lowers the conductor as far as possible; `coords` are power-basis
    /// coordinates in `Q(ζ_n)` with `n ≢ 2 (mod 4)`.
    fn canonical(mut n: u64, mut coords: Vec<BigRational>) -> Self {
        'outer: loop {
            if n == 1 {
                break;
            }
            if coords[1..].iter().all(Zero::is_zero) {
                coords.truncate(1);
                n = 1;
                break;
            }
            for p in prime_divisors(n as u128) {
                let mut m = n / p as u64;
                if m % 4 == 2 {
                    m /= 2;
                }
                if let Some(c) = field::subfield(n, m).extract(n, &coords) {
                    n = m;
                    coords = c;
                    continue 'outer;
                }
            }
            break;
        }
        Cyclotomic {
            conductor: n,
            coeffs: coords,
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Nonzero `(exponent, coefficient)` pairs over the power basis.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn to_rational(&self) -> Option<&BigRational> {
        self.is_rational().then(|| &self.coeffs[0])
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    /// Algebraic integrality: the power basis is an integral basis of
    /// `Z[ζ_n]`, so this is coefficient integrality.
    pub fn is_algebraic_integer(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Coordinates in `Q(ζ_m)` for a multiple `m` of the conductor.
    fn embed(&self, m: u64) -> Vec<BigRational> {
        debug_assert_eq!(m % self.conductor, 0);
        if m == self.conductor {
            return self.coeffs.clone();
        }
        let f = field::field(m);
        let step = m / self.conductor;
        let mut out = vec![BigRational::zero(); f.phi];
        for (i, c) in self.terms() {
            let row = &f.reduce[(i as u64 * step % m) as usize];
            for (o, &r) in out.iter_mut().zip(row) {
                if r != 0 {
                    *o += c * BigInt::from(r);
                }
            }
        }
        out
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn scale_int(&self, n: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(n.clone()))
    }

    /// The automorphism `ζ_n ↦ ζ_n^k`, defined for `gcd(k, n) = 1`.
    pub fn galois(&self, k: i64) -> Result<Self, CyclotomicError> {
        let n = self.conductor;
        let kk = k.rem_euclid(n as i64) as u64;
        if gcd(kk, n) != 1 {
            return Err(CyclotomicError::NotCoprime { k, n });
        }
        Ok(self.galois_unchecked(kk))
    }

    fn galois_unchecked(&self, k: u64) -> Self {
        let n = self.conductor;
        if n == 1 || k % n == 1 {
            return self.clone();
        }
        let f = field::field(n);
        let mut coords = vec![BigRational::zero(); f.phi];
        for (i, c) in self.terms() {
            let row = &f.reduce[(i as u64 * k % n) as usize];
            for (o, &r) in coords.iter_mut().zip(row) {
                if r != 0 {
                    *o += c * BigInt::from(r);
                }
            }
        }
        Cyclotomic {
            conductor: n,
            coeffs: coords,
        }
    }

    /// Galois action for `k` coprime to some multiple of the conductor.
    /// Panics if `gcd(k, conductor) ≠ 1`.
    pub fn galois_coprime(&self, k: i64) -> Self {
        self.galois(k).expect("exponent coprime to the conductor")
    }

    /// Complex conjugation `ζ_n ↦ ζ_n^{-1}`.
    pub fn conj(&self) -> Self {
        if self.conductor == 1 {
            return self.clone();
        }
        self.galois_unchecked(self.conductor - 1)
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        if self.conductor == 1 && other.conductor == 1 {
            let v = if negate {
                &self.coeffs[0] - &other.coeffs[0]
            } else {
                &self.coeffs[0] + &other.coeffs[0]
            };
            return Self::from_rational(v);
        }
        let m = lcm(self.conductor, other.conductor);
        let mut a = self.embed(m);
        let b = other.embed(m);
        for (x, y) in a.iter_mut().zip(&b) {
            if negate {
                *x -= y;
            } else {
                *x += y;
            }
        }
        Self::canonical(m, a)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if other.conductor == 1 {
            return self.scale(&other.coeffs[0]);
        }
        if self.conductor == 1 {
            return other.scale(&self.coeffs[0]);
        }
        let m = lcm(self.conductor, other.conductor);
        let a = self.embed(m);
        let b = other.embed(m);
        let mut buf = vec![BigRational::zero(); m as usize];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                buf[(i + j) % m as usize] += x * y;
            }
        }
        Self::from_exponent_buffer(m, buf)
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigRational> for Cyclotomic {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

impl From<BigInt> for Cyclotomic {
    fn from(n: BigInt) -> Self {
        Self::from_bigint(n)
    }
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.add_impl(rhs, false)
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.add_impl(rhs, true)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.mul_impl(rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |a, b| &a + &b)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let n = self.conductor;
        let mut first = true;
        for (k, c) in self.terms() {
            let neg = c.is_negative();
            let abs = c.abs();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            if k == 1 {
                write!(f, "E({n})")?;
            } else {
                write!(f, "E({n})^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self})")
    }
}
