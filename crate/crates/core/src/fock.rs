//! Truncated Fock-space realization of the oscillator algebra.
//!
//! This is the independent cross-check engine for the Q-operator trace: the
//! holomorphic variables become explicit (cutoff) creation/annihilation
//! matrices, the monodromy an honest dense operator, and the regulated
//! trace a weighted partial trace. Agreement with the occupation-number
//! substitution rule is geometric in the cutoff for damped twists.

use crate::error::Result;
use crate::gtbasis::Rep;
use crate::laxfactory::{r_i, MonomialOp};
use crate::linalg::{self, kron, CMat, C64};
use crate::qfactory::TwistConfig;
use crate::weights::IndexSet;

/// ⊗_modes C^cutoff, mode 0 slowest (leftmost Kronecker factor).
pub struct FockSpace {
    pub modes: usize,
    pub cutoff: usize,
}

impl FockSpace {
    pub fn new(modes: usize, cutoff: usize) -> Self {
        assert!(cutoff >= 1);
        FockSpace { modes, cutoff }
    }

    pub fn dim(&self) -> usize {
        self.cutoff.pow(self.modes as u32)
    }

    fn single_creation(&self) -> CMat {
        let n = self.cutoff;
        let mut m = CMat::zeros((n, n));
        for k in 0..n - 1 {
            m[(k + 1, k)] = C64::new(1.0, 0.0);
        }
        m
    }

    fn single_annihilation(&self) -> CMat {
        let n = self.cutoff;
        let mut m = CMat::zeros((n, n));
        for k in 1..n {
            m[(k - 1, k)] = C64::new(k as f64, 0.0);
        }
        m
    }

    /// Multiplication by the mode variable, x̂|n⟩ = |n+1⟩ (top state dropped).
    pub fn creation(&self, mode: usize) -> CMat {
        linalg::embed_site(&self.single_creation(), mode, self.modes, self.cutoff)
    }

    /// Holomorphic derivative, ∂̂|n⟩ = n|n−1⟩.
    pub fn annihilation(&self, mode: usize) -> CMat {
        linalg::embed_site(&self.single_annihilation(), mode, self.modes, self.cutoff)
    }

    /// Occupation numbers (n₀, n₁, …) of a flattened basis index.
    pub fn occupations(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.modes];
        for m in (0..self.modes).rev() {
            out[m] = idx % self.cutoff;
            idx /= self.cutoff;
        }
        out
    }

    /// Projector onto states with every occupation below `bound`, a guard
    /// band against cutoff artifacts in equality tests.
    pub fn low_layer_projector(&self, bound: usize) -> CMat {
        let d = self.dim();
        let mut p = CMat::zeros((d, d));
        for i in 0..d {
            if self.occupations(i).iter().all(|&n| n < bound) {
                p[(i, i)] = C64::new(1.0, 0.0);
            }
        }
        p
    }
}

/// Realize a monomial operator on V ⊗ Fock (V leftmost): each term
/// x^α ∂^β ⊗ M becomes M ⊗ (Π x̂^α)(Π ∂̂^β).
pub fn realize_monomial_op(op: &MonomialOp, fock: &FockSpace) -> CMat {
    assert_eq!(op.modes.len(), fock.modes);
    let fdim = fock.dim();
    let d = op
        .terms
        .values()
        .next()
        .map(|m| m.nrows())
        .unwrap_or(1);
    let mut out = CMat::zeros((d * fdim, d * fdim));
    for ((alpha, beta), mat) in &op.terms {
        let mut aux = linalg::eye(fdim);
        for (m, &am) in alpha.iter().enumerate() {
            let x = fock.creation(m);
            for _ in 0..am {
                aux = aux.dot(&x);
            }
        }
        for (m, &bm) in beta.iter().enumerate() {
            let dmat = fock.annihilation(m);
            for _ in 0..bm {
                aux = aux.dot(&dmat);
            }
        }
        out += &kron(mat, &aux);
    }
    out
}

/// Q-operator through the explicit cutoff trace; the independent oracle for
/// [`crate::qfactory::q_operator`]. Converges geometrically in the cutoff
/// when |t| < 1 for every oscillator mode.
pub fn q_operator_fock(
    z: C64,
    i_set: &IndexSet,
    rep: &Rep,
    len: usize,
    twist: &TwistConfig,
    cutoff: usize,
) -> Result<CMat> {
    twist.validate_for(i_set)?;
    let op = r_i(z, i_set, rep)?;
    let fock = FockSpace::new(op.modes.len(), cutoff);
    let fdim = fock.dim();
    let d = rep.dim;

    // monodromy on V^{⊗len} ⊗ F, newest site leftmost
    let mut acc = linalg::eye(fdim);
    let mut prev = 1usize;
    for _ in 0..len {
        let mut site = CMat::zeros((d * prev * fdim, d * prev * fdim));
        for ((alpha, beta), mat) in &op.terms {
            let mut aux = linalg::eye(fdim);
            for (m, &am) in alpha.iter().enumerate() {
                let x = fock.creation(m);
                for _ in 0..am {
                    aux = aux.dot(&x);
                }
            }
            for (m, &bm) in beta.iter().enumerate() {
                let dmat = fock.annihilation(m);
                for _ in 0..bm {
                    aux = aux.dot(&dmat);
                }
            }
            site += &kron(mat, &kron(&linalg::eye(prev), &aux));
        }
        acc = site.dot(&kron(&linalg::eye(d), &acc));
        prev *= d;
    }

    // weighted partial trace over the auxiliary space
    let ts: Vec<C64> = op
        .modes
        .iter()
        .map(|&(a, adot)| twist.t_factor(a, adot))
        .collect();
    let mut q = CMat::zeros((prev, prev));
    for nf in 0..fdim {
        let occ = fock.occupations(nf);
        let mut w = C64::new(1.0, 0.0);
        for (m, &n) in occ.iter().enumerate() {
            w *= ts[m].powu(n as u32);
        }
        for u in 0..prev {
            for v in 0..prev {
                q[(u, v)] += w * acc[(u * fdim + nf, v * fdim + nf)];
            }
        }
    }
    // normalized trace: divide by Tr D = Π 1/(1−t)
    let mut norm = C64::new(1.0, 0.0);
    for t in &ts {
        norm *= C64::new(1.0, 0.0) - t;
    }
    let pref = twist.prefactor(z, i_set, rep.hw.lambda()[rep.n() - 1]);
    Ok(q.mapv(|x| x * norm * pref))
}
