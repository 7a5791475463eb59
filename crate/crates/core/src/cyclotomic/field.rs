//! Per-conductor tables: cyclotomic polynomials, power-basis reduction of
//! `ζ_n^e`, and coordinate extraction for subfields `Q(ζ_m) ⊂ Q(ζ_n)`.
//!
//! Everything here is computed once per conductor and shared through a
//! process-wide cache.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{divisors, euler_phi};

/// Reduction data for `Q(ζ_n)` in the power basis `1, ζ, …, ζ^{φ(n)-1}`.
#[derive(Debug)]
pub(crate) struct FieldData {
    pub phi: usize,
    /// `reduce[e]` holds the power-basis coordinates of `ζ_n^e`, `0 ≤ e < n`.
    pub reduce: Vec<Vec<i64>>,
}

/// Coordinates of `Q(ζ_m)` inside `Q(ζ_n)`: `x = Σ_j c_j ζ_m^j` is recovered
/// from the rows `pivots` of its `Q(ζ_n)` coordinates through `inverse`.
#[derive(Debug)]
pub(crate) struct Subfield {
    pub m: u64,
    pub step: u64,
    pub pivots: Vec<usize>,
    pub inverse: Vec<Vec<BigRational>>,
}

type FieldCache = RwLock<HashMap<u64, Arc<FieldData>>>;
type SubfieldCache = RwLock<HashMap<(u64, u64), Arc<Subfield>>>;

fn field_cache() -> &'static FieldCache {
    static CACHE: OnceLock<FieldCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn subfield_cache() -> &'static SubfieldCache {
    static CACHE: OnceLock<SubfieldCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Integer coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        num = exact_div(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let qlen = rem.len() - dd;
    let mut q = vec![0i64; qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dd];
        q[i] = c;
        if c != 0 {
            for (j, dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

pub(crate) fn field(n: u64) -> Arc<FieldData> {
    if let Some(f) = field_cache().read().unwrap().get(&n) {
        return f.clone();
    }
    let data = Arc::new(build_field(n));
    field_cache()
        .write()
        .unwrap()
        .entry(n)
        .or_insert(data)
        .clone()
}

fn build_field(n: u64) -> FieldData {
    let phi = euler_phi(n) as usize;
    let poly = cyclotomic_polynomial(n);
    let mut reduce: Vec<Vec<i64>> = Vec::with_capacity(n as usize);
    for e in 0..n as usize {
        if e < phi {
            let mut v = vec![0i64; phi];
            v[e] = 1;
            reduce.push(v);
        } else {
            let prev = &reduce[e - 1];
            let top = prev[phi - 1];
            let mut v = vec![0i64; phi];
            for i in 0..phi {
                let shifted = if i == 0 { 0 } else { prev[i - 1] };
                v[i] = shifted - top * poly[i];
            }
            reduce.push(v);
        }
    }
    FieldData { phi, reduce }
}

pub(crate) fn subfield(n: u64, m: u64) -> Arc<Subfield> {
    if let Some(s) = subfield_cache().read().unwrap().get(&(n, m)) {
        return s.clone();
    }
    let data = Arc::new(build_subfield(n, m));
    subfield_cache()
        .write()
        .unwrap()
        .entry((n, m))
        .or_insert(data)
        .clone()
}

fn build_subfield(n: u64, m: u64) -> Subfield {
    let big = field(n);
    let phi_m = euler_phi(m) as usize;
    let step = n / m;
    // Column j of the embedding matrix is ζ_m^j = ζ_n^{j·step}.
    let column = |j: usize| &big.reduce[(j as u64 * step % n) as usize];
    let to_q = |x: i64| BigRational::from_integer(BigInt::from(x));

    // Greedy row selection: keep rows that raise the rank.
    let mut pivots = Vec::with_capacity(phi_m);
    let mut echelon: Vec<(usize, Vec<BigRational>)> = Vec::new();
    for row in 0..big.phi {
        if pivots.len() == phi_m {
            break;
        }
        let mut v: Vec<BigRational> = (0..phi_m).map(|j| to_q(column(j)[row])).collect();
        for (lead, e) in &echelon {
            if !v[*lead].is_zero() {
                let f = v[*lead].clone() / e[*lead].clone();
                for (a, b) in v.iter_mut().zip(e) {
                    *a -= &f * b;
                }
            }
        }
        if let Some(lead) = v.iter().position(|x| !x.is_zero()) {
            echelon.push((lead, v));
            pivots.push(row);
        }
    }
    assert_eq!(
        pivots.len(),
        phi_m,
        "embedding of Q(ζ_{m}) into Q(ζ_{n}) lost rank"
    );

    let square: Vec<Vec<BigRational>> = pivots
        .iter()
        .map(|&r| (0..phi_m).map(|j| to_q(column(j)[r])).collect())
        .collect();
    Subfield {
        m,
        step,
        pivots,
        inverse: invert(square),
    }
}

fn invert(mut a: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("singular");
        a.swap(col, piv);
        inv.swap(col, piv);
        let f = a[col][col].clone();
        for j in 0..n {
            a[col][j] = &a[col][j] / &f;
            inv[col][j] = &inv[col][j] / &f;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let g = a[r][col].clone();
                for j in 0..n {
                    let t = &g * &a[col][j];
                    a[r][j] -= t;
                    let t = &g * &inv[col][j];
                    inv[r][j] -= t;
                }
            }
        }
    }
    inv
}

impl Subfield {
    /// Coordinates in `Q(ζ_m)` of `x ∈ Q(ζ_n)`, or `None` if `x` is not in
    /// the subfield.
    pub fn extract(&self, n: u64, x: &[BigRational]) -> Option<Vec<BigRational>> {
        let big = field(n);
        let c: Vec<BigRational> = self
            .inverse
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&self.pivots)
                    .fold(BigRational::zero(), |acc, (r, &p)| acc + r * &x[p])
            })
            .collect();
        let mut back = vec![BigRational::zero(); big.phi];
        for (j, cj) in c.iter().enumerate() {
            if cj.is_zero() {
                continue;
            }
            let col = &big.reduce[(j as u64 * self.step % n) as usize];
            for (b, &e) in back.iter_mut().zip(col) {
                if e != 0 {
                    *b += cj * BigInt::from(e);
                }
            }
        }
        debug_assert!(self.m <= n);
        (back.as_slice() == x).then_some(c)
    }
}
