//! Degenerate Lax operators: the scalar core R₀ from gamma-function data,
//! its oscillator factorization, and the fundamental Lax matrix.
//!
//! For compact representations every gamma ratio appearing in R₀ collapses
//! to a finite product of linear factors (z + half-integer), so evaluation
//! is exact rational-function arithmetic with explicit pole bookkeeping;
//! the gamma function itself is only touched in the raw, unnormalized mode
//! kept for debugging.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gtbasis::Rep;
use crate::linalg::{self, kron, CMat, C64};
use crate::special::gamma_complex;
use crate::weights::{shifted_weights, IndexSet};

/// Product Π_k Γ(z + s_k)^{p_k} with half-integer shifts, stored doubled.
#[derive(Clone, Debug, Default)]
pub struct GammaProd {
    factors: BTreeMap<i64, i64>,
}

impl GammaProd {
    pub fn new() -> Self {
        Self::default()
    }

    /// Multiply by Γ(z + shift2/2)^power.
    pub fn mul(&mut self, shift2: i64, power: i64) {
        let e = self.factors.entry(shift2).or_insert(0);
        *e += power;
        if *e == 0 {
            self.factors.remove(&shift2);
        }
    }

    /// Collapse to a finite product of linear factors. Fails unless the
    /// gamma content cancels exactly (it always does for compact weights
    /// under the polynomial normalization).
    pub fn reduce(&self) -> Result<LinFactors> {
        let mut out = LinFactors::default();
        for parity in [0i64, 1] {
            let keys: Vec<(i64, i64)> = self
                .factors
                .iter()
                .filter(|(k, _)| (*k % 2 + 2) % 2 == parity)
                .map(|(k, v)| (*k, *v))
                .collect();
            if keys.is_empty() {
                continue;
            }
            let total: i64 = keys.iter().map(|(_, v)| v).sum();
            if total != 0 {
                return Err(Error::Invalid(format!(
                    "gamma factors do not cancel (net power {total} in parity class {parity})"
                )));
            }
            let lo = keys.first().unwrap().0;
            let hi = keys.last().unwrap().0;
            let mut t = lo;
            while t < hi {
                let e: i64 = keys.iter().filter(|(k, _)| *k > t).map(|(_, v)| v).sum();
                if e != 0 {
                    out.mul(t, e);
                }
                t += 2;
            }
        }
        Ok(out)
    }

    /// Direct evaluation through the complex gamma function.
    pub fn eval_gamma(&self, z: C64) -> C64 {
        let mut acc = C64::new(1.0, 0.0);
        for (&s2, &p) in &self.factors {
            let g = gamma_complex(z + 0.5 * s2 as f64);
            for _ in 0..p.abs() {
                if p > 0 {
                    acc *= g;
                } else {
                    acc /= g;
                }
            }
        }
        acc
    }
}

/// Finite product Π_t (z + t)^{e_t} over half-integer offsets t (doubled keys).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinFactors {
    factors: BTreeMap<i64, i64>,
}

impl LinFactors {
    pub fn mul(&mut self, offset2: i64, power: i64) {
        let e = self.factors.entry(offset2).or_insert(0);
        *e += power;
        if *e == 0 {
            self.factors.remove(&offset2);
        }
    }

    pub fn mul_with(&mut self, other: &LinFactors) {
        for (&k, &v) in &other.factors {
            self.mul(k, v);
        }
    }

    /// Net polynomial degree (negative for a strictly rational function).
    pub fn degree(&self) -> i64 {
        self.factors.values().sum()
    }

    pub fn zeros(&self) -> Vec<(f64, i64)> {
        self.factors
            .iter()
            .filter(|(_, &e)| e > 0)
            .map(|(&t, &e)| (-0.5 * t as f64, e))
            .collect()
    }

    pub fn poles(&self) -> Vec<(f64, i64)> {
        self.factors
            .iter()
            .filter(|(_, &e)| e < 0)
            .map(|(&t, &e)| (-0.5 * t as f64, -e))
            .collect()
    }

    pub fn eval(&self, z: C64) -> Result<C64> {
        let mut acc = C64::new(1.0, 0.0);
        for (&t2, &e) in &self.factors {
            let f = z + 0.5 * t2 as f64;
            if e < 0 && f.norm() < 1e-9 {
                return Err(Error::Pole {
                    z,
                    offset: 0.5 * t2 as f64,
                });
            }
            for _ in 0..e.abs() {
                if e > 0 {
                    acc *= f;
                } else {
                    acc /= f;
                }
            }
        }
        Ok(acc)
    }
}

/// Normalization of the scalar Lax core.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// Divide out the gamma content so all Q-operator entries become
    /// polynomial in z (the default).
    Polynomial,
    /// Bare product of gamma functions, ρ ≡ 1; for debugging only.
    Raw,
}

enum BlockScalar {
    Reduced(LinFactors),
    Gammas(GammaProd),
}

/// The scalar core R₀ of the degenerate Lax operator for a set I,
/// block-diagonal over the gl(Ī) decomposition of V.
pub struct LaxCore {
    pub q: usize,
    dim: usize,
    blocks: Vec<(CMat, BlockScalar)>,
}

/// Oscillator modes (a ∈ I, ȧ ∈ Ī) in lexicographic order; this fixed order
/// indexes every monomial exponent vector in the crate.
pub fn modes(i_set: &IndexSet) -> Vec<(usize, usize)> {
    let ibar = i_set.complement();
    let mut out = Vec::new();
    for &a in i_set.members() {
        for &adot in ibar.members() {
            out.push((a, adot));
        }
    }
    out
}

impl LaxCore {
    pub fn build(i_set: &IndexSet, rep: &Rep, normalization: Normalization) -> Result<LaxCore> {
        let n = rep.n();
        if i_set.n() != n {
            return Err(Error::InvalidIndexSet(format!(
                "index set over {} does not match gl({})",
                i_set.n(),
                n
            )));
        }
        let ibar = i_set.complement();
        let q = ibar.len() as i64;
        let lambda = rep.hw.lambda();
        let lam_n = lambda[n - 1];

        // (ℓ-block data, projector) pairs; Ī = ∅ gives the single trivial block
        let raw_blocks: Vec<(Vec<i64>, CMat)> = if ibar.is_empty() {
            vec![(vec![], linalg::eye(rep.dim))]
        } else {
            let table = shifted_weights(&ibar, rep)?;
            table
                .blocks
                .iter()
                .map(|b| (b.ells.clone(), b.projector.clone()))
                .collect()
        };

        let mut blocks = Vec::new();
        for (ells, projector) in raw_blocks {
            let mut g = GammaProd::new();
            for &ell in &ells {
                g.mul(-q - 2 * ell + 2, 1);
            }
            if normalization == Normalization::Polynomial {
                for (i, &li) in lambda.iter().enumerate() {
                    let i = i as i64 + 1;
                    g.mul(-q + 2 * (i - li), -1);
                }
                for i in (q + 1)..=(n as i64) {
                    g.mul(-q + 2 * (i - lam_n), 1);
                }
            }
            let scalar = match normalization {
                Normalization::Polynomial => BlockScalar::Reduced(g.reduce()?),
                Normalization::Raw => BlockScalar::Gammas(g),
            };
            blocks.push((projector, scalar));
        }
        Ok(LaxCore {
            q: q as usize,
            dim: rep.dim,
            blocks,
        })
    }

    pub fn eval(&self, z: C64) -> Result<CMat> {
        let mut out = CMat::zeros((self.dim, self.dim));
        for (projector, scalar) in &self.blocks {
            let v = match scalar {
                BlockScalar::Reduced(f) => f.eval(z)?,
                BlockScalar::Gammas(g) => g.eval_gamma(z),
            };
            out += &projector.mapv(|x| x * v);
        }
        Ok(out)
    }

    /// Symbolic factor lists per block (polynomial normalization only).
    pub fn block_factors(&self) -> Vec<(&CMat, &LinFactors)> {
        self.blocks
            .iter()
            .filter_map(|(p, s)| match s {
                BlockScalar::Reduced(f) => Some((p, f)),
                BlockScalar::Gammas(_) => None,
            })
            .collect()
    }
}

/// R₀ for the set I at spectral point z, polynomial normalization.
pub fn r0(z: C64, i_set: &IndexSet, rep: &Rep) -> Result<CMat> {
    LaxCore::build(i_set, rep, Normalization::Polynomial)?.eval(z)
}

/// The factorized Lax operator e^{x·J} R₀ e^{−∂·J} as a map from oscillator
/// monomials x^α ∂^β to matrices on V. Exponentials terminate at the exact
/// nilpotency order of the cross-block generators.
pub struct MonomialOp {
    pub modes: Vec<(usize, usize)>,
    /// (creation exponents α, annihilation exponents β) → matrix on V.
    pub terms: BTreeMap<(Vec<u8>, Vec<u8>), CMat>,
}

fn nilpotent_powers(e: &CMat) -> Vec<CMat> {
    let dim = e.nrows();
    let mut out = vec![linalg::eye(dim)];
    let mut cur = linalg::eye(dim);
    loop {
        cur = cur.dot(e);
        if linalg::max_abs(&cur) < 1e-300 {
            break;
        }
        out.push(cur.clone());
        assert!(out.len() <= dim + 1, "cross-block generator not nilpotent");
    }
    out
}

fn multi_indices(caps: &[usize]) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for &c in caps {
        let mut next = Vec::new();
        for base in out {
            for v in 0..=c {
                let mut b = base.clone();
                b.push(v as u8);
                next.push(b);
            }
        }
        out = next;
    }
    out
}

pub fn r_i(z: C64, i_set: &IndexSet, rep: &Rep) -> Result<MonomialOp> {
    let core = LaxCore::build(i_set, rep, Normalization::Polynomial)?.eval(z)?;
    let mode_list = modes(i_set);
    let pos: Vec<Vec<CMat>> = mode_list
        .iter()
        .map(|&(a, adot)| nilpotent_powers(rep.gen(a, adot)))
        .collect();
    let neg: Vec<Vec<CMat>> = mode_list
        .iter()
        .map(|&(a, adot)| nilpotent_powers(rep.gen(adot, a)))
        .collect();

    let alpha_caps: Vec<usize> = pos.iter().map(|p| p.len() - 1).collect();
    let beta_caps: Vec<usize> = neg.iter().map(|p| p.len() - 1).collect();

    let fact = |k: u8| -> f64 { (1..=k as u64).map(|x| x as f64).product() };

    let mut terms = BTreeMap::new();
    for alpha in multi_indices(&alpha_caps) {
        // Π_m E_{a ȧ}^{α_m} / α_m!  (all factors commute)
        let mut left = linalg::eye(rep.dim);
        let mut lscale = 1.0;
        for (m, &am) in alpha.iter().enumerate() {
            left = left.dot(&pos[m][am as usize]);
            lscale /= fact(am);
        }
        let left_core = left.mapv(|x| x * lscale).dot(&core);
        for beta in multi_indices(&beta_caps) {
            let mut right = linalg::eye(rep.dim);
            let mut rscale = 1.0;
            for (m, &bm) in beta.iter().enumerate() {
                right = right.dot(&neg[m][bm as usize]);
                let sign = if bm % 2 == 0 { 1.0 } else { -1.0 };
                rscale *= sign / fact(bm);
            }
            let mat = left_core.dot(&right.mapv(|x| x * rscale));
            if linalg::max_abs(&mat) > 1e-300 {
                terms.insert((alpha.clone(), beta.clone()), mat);
            }
        }
    }
    Ok(MonomialOp {
        modes: mode_list,
        terms,
    })
}

/// Fundamental Lax matrix z·Id + Σ_ab e_ab ⊗ E_ba on Cⁿ ⊗ V.
pub fn lax_fundamental(z: C64, rep: &Rep) -> CMat {
    let n = rep.n();
    let dim = n * rep.dim;
    let mut out = linalg::eye(dim).mapv(|x| x * z);
    for a in 1..=n {
        for b in 1..=n {
            let mut unit = CMat::zeros((n, n));
            unit[(a - 1, b - 1)] = C64::new(1.0, 0.0);
            out += &kron(&unit, rep.gen(b, a));
        }
    }
    out
}

/// Residual norms of the four block equations satisfied by R₀ with the
/// gl(I) factor in the singlet. Returned in source order: the gl(Ī)
/// commutant relation, the two mixed-index intertwining relations, and the
/// gl(I) commutant relation.
pub fn verify_block_equations(z: C64, i_set: &IndexSet, rep: &Rep) -> Result<[f64; 4]> {
    let ibar = i_set.complement();
    if ibar.is_empty() {
        return Err(Error::InvalidIndexSet(
            "block equations need a nonempty complement".into(),
        ));
    }
    let r = r0(z, i_set, rep)?;
    let q = ibar.len() as f64;
    let zq = z - 0.5 * q;
    let mut res = [0.0f64; 4];

    // [R₀, E_{ȧḃ}] = 0
    for &ad in ibar.members() {
        for &bd in ibar.members() {
            res[0] = res[0].max(linalg::fro_norm(&linalg::commutator(&r, rep.gen(ad, bd))));
        }
    }
    // R₀ ((z − q/2) E_{ȧb} − Σ_ċ E_{ċb} E_{ȧċ}) = E_{ȧb} R₀
    for &ad in ibar.members() {
        for &b in i_set.members() {
            let mut inner = rep.gen(ad, b).mapv(|x| x * zq);
            for &cd in ibar.members() {
                inner -= &rep.gen(cd, b).dot(rep.gen(ad, cd));
            }
            let lhs = r.dot(&inner);
            let rhs = rep.gen(ad, b).dot(&r);
            res[1] = res[1].max(linalg::fro_norm(&(&lhs - &rhs)));
        }
    }
    // R₀ E_{bȧ} = ((z − q/2) E_{bȧ} − Σ_ċ E_{ċȧ} E_{bċ}) R₀
    for &ad in ibar.members() {
        for &b in i_set.members() {
            let lhs = r.dot(rep.gen(b, ad));
            let mut inner = rep.gen(b, ad).mapv(|x| x * zq);
            for &cd in ibar.members() {
                inner -= &rep.gen(cd, ad).dot(rep.gen(b, cd));
            }
            let rhs = inner.dot(&r);
            res[2] = res[2].max(linalg::fro_norm(&(&lhs - &rhs)));
        }
    }
    // [R₀, (z − q/2) E_{ab} − Σ_ċ E_{ċb} E_{aċ}] = 0
    for &a in i_set.members() {
        for &b in i_set.members() {
            let mut inner = rep.gen(a, b).mapv(|x| x * zq);
            for &cd in ibar.members() {
                inner -= &rep.gen(cd, b).dot(rep.gen(a, cd));
            }
            res[3] = res[3].max(linalg::fro_norm(&linalg::commutator(&r, &inner)));
        }
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gtbasis::HighestWeight;
    use crate::linalg::{fro_norm, permutation_matrix};

    fn rep(lambda: &[i64]) -> Rep {
        Rep::new(HighestWeight::new(lambda.to_vec()).unwrap())
    }

    fn iset(n: usize, m: &[usize]) -> IndexSet {
        IndexSet::new(n, m.to_vec()).unwrap()
    }

    #[test]
    fn gamma_reduction_basic() {
        // Γ(z+1/2) / Γ(z−1/2) = z − 1/2
        let mut g = GammaProd::new();
        g.mul(1, 1);
        g.mul(-1, -1);
        let f = g.reduce().unwrap();
        let z = C64::new(0.7, 0.3);
        assert!((f.eval(z).unwrap() - (z - 0.5)).norm() < 1e-14);
        // net gamma content is rejected
        let mut g = GammaProd::new();
        g.mul(1, 1);
        assert!(g.reduce().is_err());
    }

    #[test]
    fn trivial_rep_scalar_one() {
        let r = rep(&[0, 0, 0]);
        for set in [vec![], vec![1], vec![1, 2], vec![2]] {
            let m = r0(C64::new(0.37, 0.4), &iset(3, &set), &r).unwrap();
            assert!(fro_norm(&(&m - &linalg::eye(1))) < 1e-12);
        }
    }

    #[test]
    fn gl2_fundamental_r0_frozen_and_gamma_oracle() {
        let r = rep(&[1, 0]);
        let m = r0(C64::new(2.0, 0.0), &iset(2, &[1]), &r).unwrap();
        // blocks ℓ ∈ {0, 1}: values (z − 1/2, 1) at z = 2 → (1.5, 1)
        assert!((m[(0, 0)] - C64::new(1.5, 0.0)).norm() < 1e-12);
        assert!((m[(1, 1)] - C64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(m[(0, 1)].norm() < 1e-14);

        // independent route through the gamma function itself:
        // Γ(z − q/2 − ℓ + 1) Π_{i>q} Γ(z − λₙ − q/2 + i) / Π_i Γ(z − q/2 − λᵢ + i)
        let z = C64::new(2.0, 0.0);
        for (ell, idx) in [(0.0, 0), (1.0, 1)] {
            let num = gamma_complex(z - 0.5 - ell + 1.0);
            let den = gamma_complex(z - 0.5) * gamma_complex(z + 1.5);
            let rho_num = gamma_complex(z + 1.5);
            let expect = num * rho_num / den;
            assert!(
                (m[(idx, idx)] - expect).norm() < 1e-10,
                "gamma oracle mismatch on ℓ = {ell}"
            );
        }
    }

    #[test]
    fn r0_symmetric_in_block_weights() {
        // the factor list is a symmetric function of the ℓ's
        let build = |ells: &[i64]| {
            let mut g = GammaProd::new();
            for &l in ells {
                g.mul(-2 - 2 * l + 2, 1);
            }
            g.mul(-2, -2); // arbitrary fixed balancing content
            g.reduce().unwrap()
        };
        assert_eq!(build(&[2, -1]), build(&[-1, 2]));
    }

    #[test]
    fn pole_is_reported() {
        // denominator factors flag evaluation on their zero set
        let mut f = LinFactors::default();
        f.mul(1, -1); // 1/(z + 1/2)
        match f.eval(C64::new(-0.5, 0.0)) {
            Err(Error::Pole { offset, .. }) => assert_eq!(offset, 0.5),
            other => panic!("expected pole error, got {other:?}"),
        }
        assert!(f.eval(C64::new(0.5, 0.3)).is_ok());
    }

    #[test]
    fn normalized_r0_blocks_are_polynomial() {
        // under the polynomial normalization every block scalar of R₀ is a
        // true polynomial: no denominator factors survive the reduction
        for (lambda, n) in [(vec![1, 0], 2usize), (vec![2, 0], 2), (vec![2, 1, 0], 3)] {
            let r = rep(&lambda);
            for msk in 0..(1u32 << n) {
                let set: Vec<usize> = (1..=n).filter(|k| msk >> (k - 1) & 1 == 1).collect();
                let core = LaxCore::build(&iset(n, &set), &r, Normalization::Polynomial).unwrap();
                for (_, f) in core.block_factors() {
                    assert!(f.poles().is_empty(), "pole in R₀ block for {lambda:?} I={set:?}");
                }
            }
        }
    }

    #[test]
    fn r0_commutes_with_both_diagonal_subalgebras() {
        let r = rep(&[2, 1, 0]);
        let z = C64::new(0.43, 0.77);
        for set in [vec![1], vec![2], vec![1, 3]] {
            let i_set = iset(3, &set);
            let m = r0(z, &i_set, &r).unwrap();
            for &a in i_set.members() {
                for &b in i_set.members() {
                    assert!(
                        fro_norm(&linalg::commutator(&m, r.gen(a, b))) < 1e-10,
                        "R₀ does not commute with E_{a}{b}"
                    );
                }
            }
            let ibar = i_set.complement();
            for &a in ibar.members() {
                for &b in ibar.members() {
                    assert!(fro_norm(&linalg::commutator(&m, r.gen(a, b))) < 1e-10);
                }
            }
        }
    }

    #[test]
    fn single_dotted_index_recurrence() {
        // |Ī| = 1: R₀(z)(z + 1/2 − E_{ȧȧ}) E_{ȧb} = E_{ȧb} R₀(z)
        for (lambda, n) in [(vec![2, 0], 2), (vec![1, 1, 0], 3)] {
            let r = rep(&lambda);
            let i_set = iset(n, &(1..n).collect::<Vec<_>>());
            let ad = n;
            let z = C64::new(0.9, 0.6);
            let m = r0(z, &i_set, &r).unwrap();
            for b in 1..n {
                let shift = linalg::eye(r.dim).mapv(|x| x * (z + 0.5)) - r.gen(ad, ad);
                let lhs = m.dot(&shift).dot(r.gen(ad, b));
                let rhs = r.gen(ad, b).dot(&m);
                assert!(fro_norm(&(&lhs - &rhs)) < 1e-10);
            }
        }
    }

    #[test]
    fn block_equations_examples() {
        let z = C64::new(1.3, 0.2);
        for (lambda, n, set) in [
            (vec![1, 0], 2, vec![1]),
            (vec![2, 0], 2, vec![1]),
            (vec![1, 1, 0], 3, vec![1]),
            (vec![2, 1, 0], 3, vec![2]),
            (vec![2, 1, 0], 3, vec![1, 3]),
        ] {
            let r = rep(&lambda);
            let res = verify_block_equations(z, &iset(n, &set), &r).unwrap();
            for (k, v) in res.iter().enumerate() {
                assert!(*v < 1e-9, "block eq {k} residual {v} for {lambda:?} I={set:?}");
            }
        }
        // one-dimensional module: all residuals vanish identically
        let r = rep(&[0, 0]);
        let res = verify_block_equations(z, &iset(2, &[1]), &r).unwrap();
        assert!(res.iter().all(|v| *v < 1e-14));
    }

    #[test]
    fn fundamental_lax_is_shifted_permutation() {
        let r = rep(&[1, 0, 0]);
        let l0 = lax_fundamental(C64::new(0.0, 0.0), &r);
        assert!(fro_norm(&(&l0 - &permutation_matrix(3))) < 1e-14);
        // linearity in z
        let z1 = C64::new(0.4, 0.1);
        let z2 = C64::new(-1.1, 0.9);
        let l1 = lax_fundamental(z1, &r);
        let l2 = lax_fundamental(z2, &r);
        let diff = &l1 - &l2;
        let expect = linalg::eye(9).mapv(|x| x * (z1 - z2));
        assert!(fro_norm(&(&diff - &expect)) < 1e-14);
    }

    #[test]
    fn fundamental_lax_yang_baxter() {
        // R(z₁−z₂) L₁(z₁) L₂(z₂) = L₂(z₂) L₁(z₁) R(z₁−z₂) on Cⁿ ⊗ Cⁿ ⊗ V
        for lambda in [vec![1, 0], vec![2, 1, 0]] {
            let r = rep(&lambda);
            let n = r.n();
            let d = r.dim;
            let z1 = C64::new(0.3, 0.0);
            let z2 = C64::new(0.0, 1.7);
            let rz = {
                let mut m = permutation_matrix(n);
                m += &linalg::eye(n * n).mapv(|x| x * (z1 - z2));
                kron(&m, &linalg::eye(d))
            };
            // L₁ acts on (first Cⁿ, V), L₂ on (second Cⁿ, V)
            let l = |z: C64| lax_fundamental(z, &r);
            let lift1 = |m: &CMat| {
                // Cⁿ ⊗ V → Cⁿ ⊗ Cⁿ ⊗ V with the spectator in the middle
                let mut out = CMat::zeros((n * n * d, n * n * d));
                for a in 0..n {
                    for b in 0..n {
                        for x in 0..d {
                            for y in 0..d {
                                let v = m[(a * d + x, b * d + y)];
                                if v.norm() == 0.0 {
                                    continue;
                                }
                                for s in 0..n {
                                    out[((a * n + s) * d + x, (b * n + s) * d + y)] += v;
                                }
                            }
                        }
                    }
                }
                out
            };
            let l1 = lift1(&l(z1));
            let l2 = kron(&linalg::eye(n), &l(z2));
            let lhs = rz.dot(&l1).dot(&l2);
            let rhs = l2.dot(&l1).dot(&rz);
            assert!(fro_norm(&(&lhs - &rhs)) < 1e-12);
        }
    }

    #[test]
    fn factorized_lax_degree_bound() {
        let r = rep(&[2, 0]);
        let op = r_i(C64::new(0.8, 0.3), &iset(2, &[1]), &r).unwrap();
        let d_bound = 2; // (λ₁ − λₙ) · min(|I|, |Ī|)
        for (alpha, beta) in op.terms.keys() {
            let da: u32 = alpha.iter().map(|&x| x as u32).sum();
            let db: u32 = beta.iter().map(|&x| x as u32).sum();
            assert!(da <= d_bound && db <= d_bound);
        }
        // one extra order vanishes: E^{D+1} = 0 exactly
        let e = r.gen(1, 2);
        let e3 = e.dot(e).dot(e);
        assert!(linalg::max_abs(&e3) == 0.0);
    }

    #[test]
    fn factorized_lax_reproduces_oscillator_lax_for_fundamental() {
        // For the fundamental module the factorized operator equals the
        // block Lax matrix built directly from oscillators on a Fock cutoff.
        use crate::fock::FockSpace;
        for (lambda, n, set) in [(vec![1, 0], 2usize, vec![1usize]), (vec![1, 0, 0], 3, vec![1])] {
            let r = rep(&lambda);
            let i_set = iset(n, &set);
            let z = C64::new(0.73, 0.21);
            let op = r_i(z, &i_set, &r).unwrap();
            let fock = FockSpace::new(op.modes.len(), 6);
            let got = crate::fock::realize_monomial_op(&op, &fock);

            // direct oscillator Lax: rows/cols over (I then Ī), q = |Ī|
            let ibar = i_set.complement();
            let q = ibar.len() as f64;
            let fdim = fock.dim();
            let mut want = CMat::zeros((n * fdim, n * fdim));
            let slot = |x: usize| -> usize { x - 1 };
            let mode_of = |a: usize, adot: usize| -> usize {
                op.modes.iter().position(|&m| m == (a, adot)).unwrap()
            };
            for &b in i_set.members() {
                for &a in i_set.members() {
                    // z δ^a_b − Σ_ċ ā^ċ_b a^a_ċ − (q/2) δ^a_b at (row b, col a)
                    let mut blk = CMat::zeros((fdim, fdim));
                    if a == b {
                        blk += &linalg::eye(fdim).mapv(|x| x * (z - 0.5 * q));
                    }
                    for &cd in ibar.members() {
                        let xm = fock.creation(mode_of(b, cd));
                        let dm = fock.annihilation(mode_of(a, cd));
                        blk -= &xm.dot(&dm);
                    }
                    copy_block(&mut want, slot(b), slot(a), &blk, fdim);
                }
                for &ad in ibar.members() {
                    let blk = fock.creation(mode_of(b, ad));
                    copy_block(&mut want, slot(b), slot(ad), &blk, fdim);
                    let blk = fock.annihilation(mode_of(b, ad)).mapv(|x| -x);
                    copy_block(&mut want, slot(ad), slot(b), &blk, fdim);
                }
            }
            for &ad in ibar.members() {
                let blk = linalg::eye(fdim);
                copy_block(&mut want, slot(ad), slot(ad), &blk, fdim);
            }
            // compare away from the truncation boundary: project onto the
            // lowest Fock layers on both sides
            let keep = fock.low_layer_projector(4);
            let pk = kron(&linalg::eye(n), &keep);
            let diff = pk.dot(&(&got - &want)).dot(&pk);
            assert!(
                fro_norm(&diff) < 1e-10,
                "factorized Lax differs from the oscillator Lax for {lambda:?}"
            );
        }
    }

    fn copy_block(dst: &mut CMat, bi: usize, bj: usize, blk: &CMat, fdim: usize) {
        for i in 0..fdim {
            for j in 0..fdim {
                dst[(bi * fdim + i, bj * fdim + j)] += blk[(i, j)];
            }
        }
    }
}
