//! Exact rational matrices and the Harish-Chandra evaluation map.
//!
//! Generator matrices in the Gelfand-Tsetlin basis have rational entries
//! with small denominators; keeping them exact makes commutation relations
//! and Casimir spectra exact rather than approximate. Conversion to complex
//! floats happens once, at the [`crate::linalg::CMat`] boundary.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::linalg::{CMat, C64};

pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().expect("rational out of f64 range")
}

/// Square matrix with exact rational entries, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct RatMat {
    pub dim: usize,
    data: Vec<Rat>,
}

impl RatMat {
    pub fn zeros(dim: usize) -> Self {
        RatMat {
            dim,
            data: vec![Rat::zero(); dim * dim],
        }
    }

    pub fn eye(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Rat::one());
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.dim + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Rat) {
        let cur = self.get(i, j).clone();
        self.set(i, j, cur + v);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn matmul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = RatMat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let bkj = other.get(k, j);
                    if bkj.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).clone();
                    out.set(i, j, cur + aik * bkj);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(other.data.iter()) {
            *a -= b;
        }
        out
    }

    pub fn scale(&self, s: &Rat) -> RatMat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a *= s;
        }
        out
    }

    pub fn commutator(&self, other: &RatMat) -> RatMat {
        self.matmul(other).sub(&other.matmul(self))
    }

    pub fn to_cmat(&self) -> CMat {
        let n = self.dim;
        let mut out = CMat::zeros((n, n));
        for i in 0..n {
            for j in 0..n {
                let r = self.get(i, j);
                if !r.is_zero() {
                    out[(i, j)] = C64::new(rat_to_f64(r), 0.0);
                }
            }
        }
        out
    }

    pub fn max_abs(&self) -> Rat {
        let mut m = Rat::zero();
        for x in &self.data {
            let a = x.abs();
            if a > m {
                m = a;
            }
        }
        m
    }
}

/// Elementary symmetric polynomial e_k of the given values.
pub fn elementary_symmetric(vals: &[Rat], k: usize) -> Rat {
    if k > vals.len() {
        return Rat::zero();
    }
    // dp[j] = e_j of the prefix processed so far
    let mut dp = vec![Rat::zero(); k + 1];
    dp[0] = Rat::one();
    for v in vals {
        for j in (1..=k).rev() {
            let t = dp[j - 1].clone() * v;
            dp[j] += t;
        }
    }
    dp[k].clone()
}

/// Capelli coefficients a_k(ℓ₁..ℓ_q) = (−1)^{q+k} e_{q−k+1}(ℓ), k = 1..q.
pub fn capelli_coeffs(ells: &[Rat]) -> Vec<Rat> {
    let q = ells.len();
    (1..=q)
        .map(|k| {
            let e = elementary_symmetric(ells, q - k + 1);
            if (q + k) % 2 == 0 {
                e
            } else {
                -e
            }
        })
        .collect()
}

/// Harish-Chandra evaluation of the cyclic Casimirs on shifted weights:
/// Ĉ_i = Σ_k Π_{j≠k} (1 + 1/(ℓ_k − ℓ_j)) · ℓ_k^i for i = 1..count.
///
/// Requires the ℓ to be pairwise distinct; for dominant integral weights
/// they are strictly decreasing, so this always holds.
pub fn harish_chandra_casimirs(ells: &[Rat], count: usize) -> Vec<Rat> {
    let q = ells.len();
    let mut weights = Vec::with_capacity(q);
    for k in 0..q {
        let mut w = Rat::one();
        for j in 0..q {
            if j != k {
                let diff = ells[k].clone() - &ells[j];
                assert!(!diff.is_zero(), "coincident shifted weights");
                w *= Rat::one() + diff.recip();
            }
        }
        weights.push(w);
    }
    (1..=count)
        .map(|i| {
            let mut acc = Rat::zero();
            for k in 0..q {
                let mut p = Rat::one();
                for _ in 0..i {
                    p *= &ells[k];
                }
                acc += weights[k].clone() * p;
            }
            acc
        })
        .collect()
}
