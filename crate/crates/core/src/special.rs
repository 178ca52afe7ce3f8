//! Small special-function kit: Lanczos gamma (real and complex), digamma,
//! harmonic numbers and Stirling numbers of the second kind.
//!
//! The production evaluation paths never call gamma itself — all gamma
//! ratios are merged into finite Pochhammer products first — but tests use
//! these as independent oracles, and the raw (unnormalized) Lax core is
//! evaluated through the complex gamma.

use crate::linalg::C64;
use crate::rational::{rat_int, Rat};
use num_traits::Zero;
use std::f64::consts::PI;

const GAMMA_G: f64 = 7.0;
const GAMMA_COEF: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// Complex gamma via the Lanczos approximation (g = 7, 9 coefficients),
/// accurate to ~13 significant digits away from the poles.
pub fn gamma_complex(z: C64) -> C64 {
    if z.re < 0.5 {
        // reflection Γ(z)Γ(1−z) = π / sin(πz)
        let pi = C64::new(PI, 0.0);
        return pi / ((pi * z).sin() * gamma_complex(C64::new(1.0, 0.0) - z));
    }
    let z = z - 1.0;
    let mut x = C64::new(GAMMA_COEF[0], 0.0);
    for (i, &ck) in GAMMA_COEF.iter().enumerate().skip(1) {
        x += C64::new(ck, 0.0) / (z + i as f64);
    }
    let t = z + GAMMA_G + 0.5;
    let sqrt_two_pi = (2.0 * PI).sqrt();
    sqrt_two_pi * t.powc(z + 0.5) * (-t).exp() * x
}

pub fn gamma(x: f64) -> f64 {
    gamma_complex(C64::new(x, 0.0)).re
}

/// Digamma via the standard recurrence + asymptotic series.
pub fn digamma(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < 6.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    acc + x.ln() - 0.5 * inv
        - inv2
            * (1.0 / 12.0
                - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0))))
}

/// Harmonic number H_m = Σ_{k=1..m} 1/k as an exact rational; H_0 = 0.
pub fn harmonic(m: u64) -> Rat {
    let mut h = Rat::zero();
    for k in 1..=m {
        h += rat_int(1) / rat_int(k as i64);
    }
    h
}

/// ψ(a) − ψ(b) for positive integers a, b, exactly: H_{a−1} − H_{b−1}.
pub fn digamma_diff_int(a: u64, b: u64) -> Rat {
    assert!(a >= 1 && b >= 1, "digamma_diff_int needs positive integers");
    harmonic(a - 1) - harmonic(b - 1)
}

/// Stirling numbers of the second kind S(n, k) for all k = 0..=n.
pub fn stirling2_row(n: usize) -> Vec<f64> {
    let mut row = vec![0.0; n + 1];
    row[0] = 1.0;
    for m in 1..=n {
        let mut next = vec![0.0; n + 1];
        for k in 1..=m {
            next[k] = k as f64 * row[k] + row[k - 1];
        }
        row = next;
    }
    row
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use approx::assert_relative_eq;

    #[test]
    fn gamma_known_values() {
        assert_relative_eq!(gamma(0.5), PI.sqrt(), epsilon = 1e-11);
        assert_relative_eq!(gamma(5.0), 24.0, epsilon = 1e-10);
        let g = gamma_complex(C64::new(2.5, 1.0));
        // reference value from mpmath: gamma(2.5 + 1i)
        assert_relative_eq!(g.re, 0.774762104551083671, epsilon = 1e-9);
        assert_relative_eq!(g.im, 0.707631204379592586, epsilon = 1e-9);
    }

    #[test]
    fn gamma_recurrence_complex() {
        let z = C64::new(0.3, -0.8);
        let lhs = gamma_complex(z + 1.0);
        let rhs = z * gamma_complex(z);
        assert!((lhs - rhs).norm() < 1e-12 * rhs.norm());
    }

    #[test]
    fn digamma_matches_harmonic() {
        // ψ(m) = −γ + H_{m−1}
        for m in 1..8u64 {
            let d = digamma(m as f64) - digamma(1.0);
            let h = crate::rational::rat_to_f64(&harmonic(m - 1));
            assert_relative_eq!(d, h, epsilon = 1e-10);
        }
        assert_eq!(digamma_diff_int(3, 1), rat(3, 2));
    }

    #[test]
    fn stirling_row() {
        assert_eq!(stirling2_row(4), vec![0.0, 1.0, 7.0, 6.0, 1.0]);
    }
}
