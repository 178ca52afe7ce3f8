//! Complex univariate polynomials: interpolation, adaptive degree trimming
//! and companion-matrix roots.

use ndarray::Array1;

use crate::error::{Error, Result};
use crate::linalg::{self, CMat, C64};

/// Dense polynomial with ascending coefficients.
#[derive(Clone, Debug)]
pub struct Poly {
    pub coeffs: Vec<C64>,
}

impl Poly {
    pub fn from_coeffs(coeffs: Vec<C64>) -> Self {
        Poly { coeffs }
    }

    pub fn from_roots(roots: &[C64]) -> Self {
        let mut c = vec![C64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![C64::new(0.0, 0.0); c.len() + 1];
            for (k, &ck) in c.iter().enumerate() {
                next[k + 1] += ck;
                next[k] -= ck * r;
            }
            c = next;
        }
        Poly { coeffs: c }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, z: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Drop trailing coefficients below `tol` relative to the largest one.
    pub fn trim(&mut self, tol: f64) {
        let scale = self
            .coeffs
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max)
            .max(1e-300);
        while self.coeffs.len() > 1 {
            if self.coeffs.last().unwrap().norm() < tol * scale {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    /// Roots via the companion matrix of the monic normalization.
    pub fn roots(&self) -> Result<Vec<C64>> {
        let d = self.degree();
        if d == 0 {
            return Ok(vec![]);
        }
        let lead = self.coeffs[d];
        if lead.norm() < 1e-300 {
            return Err(Error::Invalid("zero leading coefficient".into()));
        }
        let mut comp = CMat::zeros((d, d));
        for i in 0..d {
            comp[(i, d - 1)] = -self.coeffs[i] / lead;
            if i + 1 < d {
                comp[(i + 1, i)] = C64::new(1.0, 0.0);
            }
        }
        let (vals, _) = linalg::eig(&comp)?;
        Ok(vals.to_vec())
    }
}

/// Interpolate through the sample points (Vandermonde solve); the number of
/// samples fixes the degree.
pub fn fit_polynomial(points: &[(C64, C64)]) -> Result<Poly> {
    let m = points.len();
    let mut v = CMat::zeros((m, m));
    let mut b = Array1::zeros(m);
    for (r, &(z, val)) in points.iter().enumerate() {
        let mut p = C64::new(1.0, 0.0);
        for c in 0..m {
            v[(r, c)] = p;
            p *= z;
        }
        b[r] = val;
    }
    let x = linalg::solve(&v, &b)?;
    Ok(Poly {
        coeffs: x.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_roundtrip() {
        let roots = vec![
            C64::new(0.5, 0.0),
            C64::new(-1.2, 0.7),
            C64::new(2.0, -0.3),
        ];
        let p = Poly::from_roots(&roots);
        let mut got = p.roots().unwrap();
        got.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        let mut want = roots.clone();
        want.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).norm() < 1e-10);
        }
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = Poly::from_coeffs(vec![
            C64::new(1.0, -2.0),
            C64::new(0.0, 0.5),
            C64::new(3.0, 0.0),
        ]);
        let pts: Vec<(C64, C64)> = (0..3)
            .map(|k| {
                let z = C64::new(0.3 * k as f64 - 0.5, 0.2 + 0.1 * k as f64);
                (z, p.eval(z))
            })
            .collect();
        let q = fit_polynomial(&pts).unwrap();
        for (a, b) in p.coeffs.iter().zip(&q.coeffs) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    proptest::proptest! {
        /// from_roots followed by evaluation vanishes on every root.
        #[test]
        fn eval_vanishes_on_roots(res in proptest::collection::vec(-3.0f64..3.0, 1..5),
                                  ims in proptest::collection::vec(-3.0f64..3.0, 1..5)) {
            let roots: Vec<C64> = res.iter().zip(ims.iter().cycle())
                .map(|(&r, &i)| C64::new(r, i)).collect();
            let p = Poly::from_roots(&roots);
            for r in &roots {
                proptest::prop_assert!(p.eval(*r).norm() < 1e-8);
            }
        }
    }
}
