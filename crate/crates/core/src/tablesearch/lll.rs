//! LLL reduction driven by an exact rational Gram matrix. Linearly
//! dependent inputs are allowed: vectors that become zero are moved out of
//! the basis and kept as relations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::round_rational;
use crate::table::{CharacterTable, ClassFunction, TableError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LllError {
    #[error("Gram matrix is not symmetric positive semidefinite")]
    NotPositive,
    #[error("Gram matrix entry {0} is not rational")]
    NotRational(String),
    #[error("delta must lie in (1/4, 1]")]
    BadDelta,
    #[error("Gram matrix is not square")]
    Shape,
    #[error(transparent)]
    Table(#[from] TableError),
}

/// Integer vectors over a fixed generating set together with their Gram
/// matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    pub vectors: Vec<Vec<BigInt>>,
    pub gram: Vec<Vec<BigRational>>,
}

impl LatticeBasis {
    /// The generating set itself: unit coordinate vectors with the given Gram.
    pub fn from_gram(gram: Vec<Vec<BigRational>>) -> Result<Self, LllError> {
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(LllError::Shape);
        }
        for i in 0..n {
            for j in 0..n {
                if gram[i][j] != gram[j][i] {
                    return Err(LllError::NotPositive);
                }
            }
        }
        let vectors = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(LatticeBasis { vectors, gram })
    }

    /// Generated by class functions, with Gram matrix from inner products.
    pub fn from_class_functions(
        fns: &[ClassFunction],
        t: &CharacterTable,
    ) -> Result<Self, LllError> {
        let mut gram = vec![vec![BigRational::zero(); fns.len()]; fns.len()];
        for i in 0..fns.len() {
            for j in 0..=i {
                let ip = fns[i].inner_product(&fns[j], t)?;
                let q = ip
                    .to_rational()
                    .cloned()
                    .ok_or_else(|| LllError::NotRational(ip.to_string()))?;
                gram[i][j] = q.clone();
                gram[j][i] = q;
            }
        }
        Self::from_gram(gram)
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    /// Combination `Σ v_i·fns[i]` for each basis vector.
    pub fn class_functions(&self, fns: &[ClassFunction]) -> Vec<ClassFunction> {
        self.vectors
            .iter()
            .map(|v| {
                let mut acc: Option<ClassFunction> = None;
                for (a, f) in v.iter().zip(fns) {
                    if a.is_zero() {
                        continue;
                    }
                    let term = f.scale(a);
                    acc = Some(match acc {
                        Some(x) => &x + &term,
                        None => term,
                    });
                }
                acc.unwrap_or_else(|| fns[0].scale(&BigInt::zero()))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LllResult {
    /// Reduced basis (coordinates over the original generating set).
    pub basis: LatticeBasis,
    /// Integer relations among the inputs found along the way.
    pub relations: Vec<Vec<BigInt>>,
    /// Square unimodular matrix whose rows express the reduced vectors
    /// followed by the relations in terms of the input vectors.
    pub transform: Vec<Vec<BigInt>>,
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// Reduces `basis` with Lovász parameter `delta`.
pub fn lll_reduce(basis: &LatticeBasis, delta: &BigRational) -> Result<LllResult, LllError> {
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    if delta <= &quarter || delta > &BigRational::one() {
        return Err(LllError::BadDelta);
    }
    let n0 = basis.vectors.len();
    // Transform rows over the *input* vectors of this call.
    let mut t: Vec<Vec<BigInt>> = (0..n0)
        .map(|i| {
            (0..n0)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut g = basis.gram.clone();
    let mut relations_t: Vec<Vec<BigInt>> = Vec::new();
    let mut mu: Vec<Vec<BigRational>> = vec![Vec::new(); n0];
    let mut b: Vec<BigRational> = vec![BigRational::zero(); n0];
    let mut k = 0usize;

    while k < t.len() {
        // Gram-Schmidt row k from the Gram matrix; rows < k are current.
        let mut row = Vec::with_capacity(k);
        for j in 0..k {
            let mut s = g[k][j].clone();
            for i in 0..j {
                s -= &mu[j][i] * &row[i] * &b[i];
            }
            row.push(s / &b[j]);
        }
        mu[k] = row;
        for j in (0..k).rev() {
            if mu[k][j].abs() > half() {
                let r = round_rational(&mu[k][j]);
                let rq = BigRational::from_integer(r.clone());
                let (tk, tj) = (t[k].clone(), &t[j]);
                t[k] = tk.iter().zip(tj).map(|(a, c)| a - &r * c).collect();
                // b_k ← b_k − r·b_j in the Gram matrix.
                let mut new_row: Vec<BigRational> =
                    (0..g.len()).map(|i| &g[k][i] - &rq * &g[j][i]).collect();
                new_row[k] = &g[k][k] - &rq * &g[k][j] * BigRational::from_integer(2.into())
                    + &rq * &rq * &g[j][j];
                for (i, v) in new_row.into_iter().enumerate() {
                    g[i][k] = v.clone();
                    g[k][i] = v;
                }
                for i in 0..j {
                    let v = &mu[k][i] - &rq * &mu[j][i];
                    mu[k][i] = v;
                }
                mu[k][j] = &mu[k][j] - &rq;
            }
        }
        let mut bk = g[k][k].clone();
        for j in 0..k {
            bk -= &mu[k][j] * &mu[k][j] * &b[j];
        }
        if bk.is_negative() {
            return Err(LllError::NotPositive);
        }
        b[k] = bk;
        if k == 0 {
            if b[0].is_zero() {
                relations_t.push(t.remove(0));
                g.remove(0);
                for r in g.iter_mut() {
                    r.remove(0);
                }
                mu.remove(0);
                b.remove(0);
                continue;
            }
            k = 1;
            continue;
        }
        let m = &mu[k][k - 1];
        if b[k] >= (delta - m * m) * &b[k - 1] {
            k += 1;
        } else {
            t.swap(k, k - 1);
            g.swap(k, k - 1);
            for r in g.iter_mut() {
                r.swap(k, k - 1);
            }
            k -= 1;
        }
    }

    for v in t.iter_mut().chain(relations_t.iter_mut()) {
        normalize_sign(v);
    }
    let compose = |row: &Vec<BigInt>| -> Vec<BigInt> {
        let width = basis.vectors.first().map_or(0, Vec::len);
        let mut out = vec![BigInt::zero(); width];
        for (a, v) in row.iter().zip(&basis.vectors) {
            if a.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(v) {
                *o += a * x;
            }
        }
        out
    };
    let gram = gram_of(&basis.gram, &t);
    let vectors = t.iter().map(compose).collect();
    let relations = relations_t.iter().map(compose).collect();
    let mut transform = t;
    transform.extend(relations_t);
    Ok(LllResult {
        basis: LatticeBasis { vectors, gram },
        relations,
        transform,
    })
}

/// Makes the first nonzero entry positive.
fn normalize_sign(v: &mut [BigInt]) {
    if v.iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative())
    {
        for x in v.iter_mut() {
            *x = -&*x;
        }
    }
}

/// Gram matrix of the rows of `t` (integer combinations) under `g`.
fn gram_of(g: &[Vec<BigRational>], t: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    let tg: Vec<Vec<BigRational>> = t
        .iter()
        .map(|row| {
            (0..g.len())
                .map(|j| {
                    row.iter()
                        .zip(g)
                        .filter(|(a, _)| !a.is_zero())
                        .map(|(a, gr)| BigRational::from_integer(a.clone()) * &gr[j])
                        .sum()
                })
                .collect()
        })
        .collect();
    tg.iter()
        .map(|x| {
            t.iter()
                .map(|row| {
                    row.iter()
                        .zip(x)
                        .filter(|(a, _)| !a.is_zero())
                        .map(|(a, v)| BigRational::from_integer(a.clone()) * v)
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// Exact determinant by Gaussian elimination over Q.
pub fn determinant(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pivot;
            for c in col..n {
                let v = &a[r][c] - &f * &a[col][c];
                a[r][c] = v;
            }
        }
    }
    det
}

/// `true` if consecutive vectors satisfy size reduction and the Lovász
/// condition with `delta`.
pub fn is_lll_reduced(gram: &[Vec<BigRational>], delta: &BigRational) -> bool {
    let n = gram.len();
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut b = vec![BigRational::zero(); n];
    for k in 0..n {
        for j in 0..k {
            let mut s = gram[k][j].clone();
            for i in 0..j {
                s -= &mu[j][i] * &mu[k][i] * &b[i];
            }
            if b[j].is_zero() {
                return false;
            }
            mu[k][j] = s / &b[j];
            if mu[k][j].abs() > half() {
                return false;
            }
        }
        let mut bk = gram[k][k].clone();
        for j in 0..k {
            bk -= &mu[k][j] * &mu[k][j] * &b[j];
        }
        b[k] = bk;
        if k > 0 && b[k] < (delta - &mu[k][k - 1] * &mu[k][k - 1]) * &b[k - 1] {
            return false;
        }
    }
    true
}
