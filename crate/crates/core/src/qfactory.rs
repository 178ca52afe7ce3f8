//! Baxter Q-operators from twist-regulated oscillator traces.
//!
//! The monodromy is built in the holomorphic (monomial) representation of
//! the oscillator algebra: a generic monomial Π x^{n} is threaded through
//! the factorized Lax operators, diagonal matrix elements survive as
//! polynomials in the occupation symbols n, and the normalized trace
//! replaces every n^k by the rational function T_k(t). No cutoff enters;
//! the truncated Fock trace in [`crate::fock`] is kept as the independent
//! oracle.
//!
//! Twist conventions, fixed once against that oracle and frozen by tests:
//! the mode (a ∈ I, ȧ ∈ Ī) carries t = e^{i(φ_a − φ_ȧ)} (damped when
//! Im(φ_a − φ_ȧ) > 0) and the scalar prefactor is e^{−i(z−λₙ)Σ_{a∈I}φ_a}.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gtbasis::Rep;
use crate::laxfactory::r_i;
use crate::linalg::{self, kron, CMat, C64};
use crate::special::{factorial, stirling2_row};
use crate::weights::IndexSet;

/// Boundary twist angles φ₁..φₙ; complex values allowed (imaginary parts
/// damp the oscillator trace and lift spectral degeneracies).
#[derive(Clone, Debug)]
pub struct TwistConfig {
    phi: Vec<C64>,
}

impl TwistConfig {
    pub fn new(phi: Vec<C64>) -> Self {
        TwistConfig { phi }
    }

    pub fn from_reals(phi: &[f64]) -> Self {
        TwistConfig {
            phi: phi.iter().map(|&x| C64::new(x, 0.0)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.phi.len()
    }

    pub fn phi(&self) -> &[C64] {
        &self.phi
    }

    /// Trace weight of the oscillator mode (a, ȧ).
    pub fn t_factor(&self, a: usize, adot: usize) -> C64 {
        (C64::i() * (self.phi[a - 1] - self.phi[adot - 1])).exp()
    }

    /// e^{−i(z−λₙ)Σ_{a∈I}φ_a}, the scalar prefactor of Q_I.
    pub fn prefactor(&self, z: C64, i_set: &IndexSet, lambda_n: i64) -> C64 {
        let sum: C64 = i_set.members().iter().map(|&a| self.phi[a - 1]).sum();
        (-C64::i() * (z - lambda_n as f64) * sum).exp()
    }

    /// 2i sin((φ_a − φ_b)/2).
    pub fn delta_pair(&self, a: usize, b: usize) -> C64 {
        C64::new(0.0, 2.0) * ((self.phi[a - 1] - self.phi[b - 1]) * 0.5).sin()
    }

    /// Δ_I(Φ) = Π_{i<j} 2i sin((φ_{a_i} − φ_{a_j})/2) over the ordered set.
    pub fn delta_set(&self, i_set: &IndexSet) -> C64 {
        let m = i_set.members();
        let mut acc = C64::new(1.0, 0.0);
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                acc *= self.delta_pair(m[i], m[j]);
            }
        }
        acc
    }

    /// The normalized trace exists iff t ≠ 1 for every mode of the set.
    pub fn validate_for(&self, i_set: &IndexSet) -> Result<()> {
        if self.phi.len() != i_set.n() {
            return Err(Error::DegenerateTwist(format!(
                "{} twist angles for gl({})",
                self.phi.len(),
                i_set.n()
            )));
        }
        for (a, adot) in crate::laxfactory::modes(i_set) {
            let t = self.t_factor(a, adot);
            if (t - C64::new(1.0, 0.0)).norm() < 1e-10 {
                return Err(Error::DegenerateTwist(format!(
                    "e^{{i(φ_{a} − φ_{adot})}} = 1: mode ({a},{adot}) is untwisted"
                )));
            }
        }
        Ok(())
    }
}

/// Normalized single-mode trace T_k(t) = (1−t) Σ_{m≥0} m^k t^m, evaluated
/// as the exact rational function Σ_j S(k,j) j! (t/(1−t))^j.
pub fn trace_rule(k: usize, t: C64) -> Result<C64> {
    let one = C64::new(1.0, 0.0);
    if (t - one).norm() < 1e-10 {
        return Err(Error::DegenerateTwist(
            "trace rule evaluated at t = 1 (untwisted direction)".into(),
        ));
    }
    let u = t / (one - t);
    let s2 = stirling2_row(k);
    let mut acc = C64::new(0.0, 0.0);
    let mut upow = one;
    for (j, &s) in s2.iter().enumerate() {
        if s != 0.0 {
            acc += upow * s * factorial(j);
        }
        upow *= u;
    }
    Ok(acc)
}

type OccKey = (Vec<i16>, Vec<u8>);

/// Multiply a polynomial-in-n coefficient vector by (n + c).
fn shift_multiply(coeffs: &[f64], c: f64) -> Vec<f64> {
    let mut out = vec![0.0; coeffs.len() + 1];
    for (j, &v) in coeffs.iter().enumerate() {
        out[j + 1] += v;
        out[j] += c * v;
    }
    out
}

/// The Baxter Q-operator Q_I(z) on V^{⊗len}.
pub fn q_operator(
    z: C64,
    i_set: &IndexSet,
    rep: &Rep,
    len: usize,
    twist: &TwistConfig,
) -> Result<CMat> {
    assert!(len >= 1);
    twist.validate_for(i_set)?;
    let op = r_i(z, i_set, rep)?;
    let nmodes = op.modes.len();
    let d = rep.dim;

    let mut state: BTreeMap<OccKey, CMat> = BTreeMap::new();
    state.insert(
        (vec![0; nmodes], vec![0; nmodes]),
        linalg::eye(1),
    );

    for _site in 0..len {
        let mut next: BTreeMap<OccKey, CMat> = BTreeMap::new();
        for ((shifts, exps), mprev) in &state {
            for ((alpha, beta), amat) in &op.terms {
                // derivative factors Π_m Π_{r<β_m} (n_m + s_m − r), one
                // coefficient vector per mode over the added degree
                let polys: Vec<Vec<f64>> = (0..nmodes)
                    .map(|m| {
                        let mut c = vec![1.0];
                        for r in 0..beta[m] {
                            c = shift_multiply(&c, (shifts[m] - r as i16) as f64);
                        }
                        c
                    })
                    .collect();
                let lifted = kron(amat, mprev);
                let mut new_shifts = shifts.clone();
                for m in 0..nmodes {
                    new_shifts[m] += alpha[m] as i16 - beta[m] as i16;
                }
                // expand the product of per-mode polynomials
                let mut combos: Vec<(Vec<u8>, f64)> = vec![(Vec::new(), 1.0)];
                for poly in &polys {
                    let mut grown = Vec::new();
                    for (ks, coeff) in &combos {
                        for (k, &c) in poly.iter().enumerate() {
                            if c == 0.0 {
                                continue;
                            }
                            let mut ks2 = ks.clone();
                            ks2.push(k as u8);
                            grown.push((ks2, coeff * c));
                        }
                    }
                    combos = grown;
                }
                for (ks, coeff) in combos {
                    let mut new_exps = exps.clone();
                    for m in 0..nmodes {
                        new_exps[m] += ks[m];
                    }
                    let entry = next
                        .entry((new_shifts.clone(), new_exps))
                        .or_insert_with(|| CMat::zeros(lifted.dim()));
                    *entry += &lifted.mapv(|x| x * coeff);
                }
            }
        }
        state = next;
    }

    let ts: Vec<C64> = op
        .modes
        .iter()
        .map(|&(a, adot)| twist.t_factor(a, adot))
        .collect();
    let full = d.pow(len as u32);
    let mut q = CMat::zeros((full, full));
    for ((shifts, exps), mat) in &state {
        if shifts.iter().any(|&s| s != 0) {
            continue;
        }
        let mut w = C64::new(1.0, 0.0);
        for m in 0..nmodes {
            w *= trace_rule(exps[m] as usize, ts[m])?;
        }
        q += &mat.mapv(|x| x * w);
    }
    let pref = twist.prefactor(z, i_set, rep.hw.lambda()[rep.n() - 1]);
    Ok(q.mapv(|x| x * pref))
}

/// Global Cartan charge Σ_sites E_aa on V^{⊗len}.
pub fn global_cartan(rep: &Rep, len: usize, a: usize) -> CMat {
    let d = rep.dim;
    let mut out = CMat::zeros((d.pow(len as u32), d.pow(len as u32)));
    for s in 0..len {
        out += &linalg::embed_site(rep.gen(a, a), s, len, d);
    }
    out
}

/// ‖[Q_I(z₁), Q_J(z₂)]‖ / (‖Q_I‖ ‖Q_J‖).
pub fn commutation_residual(
    i_set: &IndexSet,
    j_set: &IndexSet,
    z1: C64,
    z2: C64,
    rep: &Rep,
    len: usize,
    twist: &TwistConfig,
) -> Result<f64> {
    let qi = q_operator(z1, i_set, rep, len, twist)?;
    let qj = q_operator(z2, j_set, rep, len, twist)?;
    Ok(linalg::rel_comm_norm(&qi, &qj))
}

/// Relative residual of the QQ-relation on the Hasse-diagram face (I; a, b):
/// Δ_{{a,b}} Q_{I∪a∪b}(z) Q_I(z) = Q_{I∪a}(z−½) Q_{I∪b}(z+½)
///                                − Q_{I∪b}(z−½) Q_{I∪a}(z+½).
pub fn qq_residual(
    i_set: &IndexSet,
    a: usize,
    b: usize,
    z: C64,
    rep: &Rep,
    len: usize,
    twist: &TwistConfig,
) -> Result<f64> {
    if a == b || i_set.contains(a) || i_set.contains(b) {
        return Err(Error::InvalidIndexSet(format!(
            "QQ-relation needs distinct a={a}, b={b} outside I={:?}",
            i_set.members()
        )));
    }
    let delta = twist.delta_pair(a, b);
    if delta.norm() < 1e-10 {
        return Err(Error::DegenerateTwist(format!(
            "φ_{a} = φ_{b}: the QQ-relation face degenerates"
        )));
    }
    let ia = i_set.union_with(&[a])?;
    let ib = i_set.union_with(&[b])?;
    let iab = i_set.union_with(&[a, b])?;
    let half = C64::new(0.5, 0.0);

    let lhs = q_operator(z, &iab, rep, len, twist)?
        .dot(&q_operator(z, i_set, rep, len, twist)?)
        .mapv(|x| x * delta);
    let rhs = q_operator(z - half, &ia, rep, len, twist)?
        .dot(&q_operator(z + half, &ib, rep, len, twist)?)
        - q_operator(z - half, &ib, rep, len, twist)?
            .dot(&q_operator(z + half, &ia, rep, len, twist)?);
    let scale = linalg::fro_norm(&lhs).max(linalg::fro_norm(&rhs)).max(1e-30);
    Ok(linalg::fro_norm(&(&lhs - &rhs)) / scale)
}

fn permutations(p: usize) -> Vec<(Vec<usize>, f64)> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..p).collect();
    fn heap(k: usize, idx: &mut Vec<usize>, sign: &mut f64, out: &mut Vec<(Vec<usize>, f64)>) {
        if k == 1 {
            out.push((idx.clone(), *sign));
            return;
        }
        for i in 0..k {
            heap(k - 1, idx, sign, out);
            if k % 2 == 0 {
                idx.swap(i, k - 1);
            } else {
                idx.swap(0, k - 1);
            }
            *sign = -*sign;
        }
    }
    let mut sign = 1.0;
    heap(p, &mut idx, &mut sign, &mut out);
    out
}

/// Relative residual of the determinant formula
/// Δ_I(Φ) Q_I(z) = det‖ Q_{a_i}(z + j − (p+1)/2) ‖_{1≤i,j≤p}.
pub fn det_formula_residual(
    i_set: &IndexSet,
    z: C64,
    rep: &Rep,
    len: usize,
    twist: &TwistConfig,
) -> Result<f64> {
    let p = i_set.len();
    if p == 0 {
        return Err(Error::InvalidIndexSet(
            "determinant formula needs |I| ≥ 1".into(),
        ));
    }
    let delta = twist.delta_set(i_set);
    if p > 1 && delta.norm() < 1e-10 {
        return Err(Error::DegenerateTwist(
            "coincident twist angles inside I".into(),
        ));
    }
    let members = i_set.members();
    // entries[i][j] = Q_{a_i}(z + (j+1) − (p+1)/2), i, j zero-based
    let mut entries: Vec<Vec<CMat>> = Vec::with_capacity(p);
    for &ai in members {
        let single = IndexSet::new(i_set.n(), vec![ai])?;
        let mut row = Vec::with_capacity(p);
        for j in 1..=p {
            let zj = z + C64::new(j as f64 - 0.5 * (p as f64 + 1.0), 0.0);
            row.push(q_operator(zj, &single, rep, len, twist)?);
        }
        entries.push(row);
    }
    let dim = entries[0][0].nrows();
    let mut det = CMat::zeros((dim, dim));
    for (perm, sign) in permutations(p) {
        let mut prod = linalg::eye(dim);
        for (i, &j) in perm.iter().enumerate() {
            prod = prod.dot(&entries[i][j]);
        }
        det += &prod.mapv(|x| x * sign);
    }
    let lhs = q_operator(z, i_set, rep, len, twist)?.mapv(|x| x * delta);
    let scale = linalg::fro_norm(&lhs).max(linalg::fro_norm(&det)).max(1e-30);
    Ok(linalg::fro_norm(&(&lhs - &det)) / scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::q_operator_fock;
    use crate::gtbasis::HighestWeight;
    use crate::linalg::fro_norm;
    use crate::special::gamma_complex;

    fn rep(lambda: &[i64]) -> Rep {
        Rep::new(HighestWeight::new(lambda.to_vec()).unwrap())
    }

    fn iset(n: usize, m: &[usize]) -> IndexSet {
        IndexSet::new(n, m.to_vec()).unwrap()
    }

    /// Generic damped twist for gl(n): Im φ decreasing with the index so
    /// every mode of a head set I is damped.
    fn twist(n: usize) -> TwistConfig {
        let base = [0.31, 1.17, 2.03, 2.71];
        TwistConfig::new(
            (0..n)
                .map(|k| C64::new(base[k], 0.45 * (n - k) as f64 / n as f64))
                .collect(),
        )
    }

    #[test]
    fn trace_rule_values() {
        let t = C64::new(0.3, 0.0);
        assert!((trace_rule(0, t).unwrap() - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((trace_rule(1, t).unwrap() - C64::new(0.3 / 0.7, 0.0)).norm() < 1e-14);
        let want = 0.3 * 1.3 / (0.7 * 0.7);
        assert!((trace_rule(2, t).unwrap() - C64::new(want, 0.0)).norm() < 1e-14);
        assert!(trace_rule(3, C64::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn trace_rule_matches_series() {
        // direct partial sums at |t| < 1
        let t = C64::new(0.21, 0.4);
        for k in 0..5usize {
            let mut s = C64::new(0.0, 0.0);
            for m in 0..2000u32 {
                s += t.powu(m) * (m as f64).powi(k as i32);
            }
            let want = (C64::new(1.0, 0.0) - t) * s;
            assert!((trace_rule(k, t).unwrap() - want).norm() < 1e-10);
        }
    }

    #[test]
    fn q_empty_set_is_identity() {
        let r = rep(&[1, 0]);
        let q = q_operator(C64::new(0.63, 0.2), &iset(2, &[]), &r, 2, &twist(2)).unwrap();
        assert!(fro_norm(&(&q - &linalg::eye(4))) < 1e-12);
    }

    #[test]
    fn gl2_fundamental_l1_closed_form() {
        // Q_{1}(z) = e^{−izφ₁} diag(z − 1/2 − T(t), 1) with t = e^{i(φ₁−φ₂)}
        let r = rep(&[1, 0]);
        let tw = twist(2);
        let z = C64::new(0.83, -0.4);
        let q = q_operator(z, &iset(2, &[1]), &r, 1, &tw).unwrap();
        let t = tw.t_factor(1, 2);
        let tt = t / (C64::new(1.0, 0.0) - t);
        let pref = (-C64::i() * z * tw.phi()[0]).exp();
        assert!((q[(0, 0)] - pref * (z - 0.5 - tt)).norm() < 1e-12);
        assert!((q[(1, 1)] - pref).norm() < 1e-12);
        assert!(q[(0, 1)].norm() + q[(1, 0)].norm() < 1e-14);
    }

    #[test]
    fn substitution_rule_matches_fock_cutoff() {
        // damped direction Im(φ₁ − φ₂) > 0 for I = {1}; the cutoff tail is
        // ~N·|t|^N, so 0.75 of damping puts N = 40 well below 1e-8
        let tw = TwistConfig::new(vec![C64::new(0.3, 0.75), C64::new(1.1, 0.0)]);
        let z = C64::new(0.77, 0.13);
        for lambda in [vec![1, 0], vec![2, 0]] {
            let r = rep(&lambda);
            for len in [1usize, 2] {
                let q = q_operator(z, &iset(2, &[1]), &r, len, &tw).unwrap();
                let qf = q_operator_fock(z, &iset(2, &[1]), &r, len, &tw, 40).unwrap();
                let diff = fro_norm(&(&q - &qf)) / fro_norm(&q);
                assert!(diff < 1e-8, "Fock mismatch {diff:.2e} for {lambda:?} L={len}");
            }
        }
    }

    #[test]
    fn fock_cutoff_converges_geometrically() {
        let tw = TwistConfig::new(vec![C64::new(0.3, 0.4), C64::new(1.1, 0.0)]);
        let z = C64::new(0.5, 0.25);
        let r = rep(&[2, 0]);
        let q = q_operator(z, &iset(2, &[1]), &r, 1, &tw).unwrap();
        let errs: Vec<f64> = [10usize, 20, 30]
            .iter()
            .map(|&n| {
                let qf = q_operator_fock(z, &iset(2, &[1]), &r, 1, &tw, n).unwrap();
                fro_norm(&(&q - &qf))
            })
            .collect();
        assert!(errs[1] < 0.2 * errs[0]);
        assert!(errs[2] < 0.2 * errs[1]);
    }

    /// Terminating Gauss hypergeometric sum (a is a nonpositive integer).
    fn hyp2f1_terminating(a: i64, b: i64, c: C64, w: C64) -> C64 {
        assert!(a <= 0);
        let mut term = C64::new(1.0, 0.0);
        let mut acc = term;
        let mut k = 0i64;
        while k < -a {
            let ak = C64::new((a + k) as f64, 0.0);
            let bk = C64::new((b + k) as f64, 0.0);
            let ck = c + k as f64;
            term = term * ak * bk / ck * w / C64::new((k + 1) as f64, 0.0);
            acc += term;
            k += 1;
        }
        acc
    }

    #[test]
    fn gl2_l1_matches_hypergeometric_closed_form() {
        // Q_{a}(z) ∝ Γ(z − J + 1/2) ₂F₁(J − ℓ₁, J − ℓ₂; 1/2 − z + J; w) with
        // w = 1/(1 − e^{i(φ_ȧ − φ_a)}), checked through ratios of diagonal
        // entries so normalization drops out.
        for lambda in [vec![1, 0], vec![2, 0], vec![3, 1]] {
            let r = rep(&lambda);
            let tw = twist(2);
            let (ell1, ell2) = (lambda[0], lambda[1] - 1);
            for (a, adot) in [(1usize, 2usize), (2, 1)] {
                let w = C64::new(1.0, 0.0)
                    / (C64::new(1.0, 0.0) - (C64::i() * (tw.phi()[adot - 1] - tw.phi()[a - 1])).exp());
                for zk in 0..3 {
                    let z = C64::new(0.4 + 0.31 * zk as f64, 0.6 - 0.2 * zk as f64);
                    let q = q_operator(z, &iset(2, &[a]), &r, 1, &tw).unwrap();
                    // J = E_{ȧȧ} eigenvalue on each GT basis vector
                    let jdiag = r.gen(adot, adot);
                    let closed: Vec<C64> = (0..r.dim)
                        .map(|i| {
                            let j = jdiag[(i, i)].re.round() as i64;
                            let gamma = gamma_complex(z - j as f64 + 0.5);
                            let f = hyp2f1_terminating(
                                j - ell1,
                                j - ell2,
                                C64::new(0.5 + j as f64, 0.0) - z,
                                w,
                            );
                            gamma * f
                        })
                        .collect();
                    for i in 1..r.dim {
                        let got = q[(i, i)] / q[(0, 0)];
                        let want = closed[i] / closed[0];
                        assert!(
                            (got - want).norm() < 1e-7 * (1.0 + want.norm()),
                            "2F1 ratio mismatch at entry {i} for {lambda:?}, I={{{a}}}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn q_commutes_with_global_cartans() {
        let r = rep(&[1, 1, 0]);
        let tw = twist(3);
        let q = q_operator(C64::new(0.6, 0.37), &iset(3, &[2]), &r, 2, &tw).unwrap();
        for a in 1..=3 {
            let c = global_cartan(&r, 2, a);
            assert!(linalg::rel_comm_norm(&q, &c) < 1e-10);
        }
    }

    #[test]
    fn commuting_family() {
        let tw3 = twist(3);
        let r3 = rep(&[1, 0, 0]);
        let z1 = C64::new(0.4, 0.8);
        let z2 = C64::new(-0.9, 0.35);
        let res =
            commutation_residual(&iset(3, &[1]), &iset(3, &[2]), z1, z2, &r3, 2, &tw3).unwrap();
        assert!(res < 1e-9, "commutation residual {res}");

        let tw2 = twist(2);
        let r2 = rep(&[2, 0]);
        let res =
            commutation_residual(&iset(2, &[1]), &iset(2, &[1, 2]), z1, z2, &r2, 2, &tw2).unwrap();
        assert!(res < 1e-9, "commutation residual {res}");

        // identical arguments commute exactly
        let res =
            commutation_residual(&iset(2, &[1]), &iset(2, &[1]), z1, z1, &r2, 2, &tw2).unwrap();
        assert!(res == 0.0);
    }

    #[test]
    fn qq_relation_faces() {
        let z = C64::new(0.45, 0.27);
        let r2 = rep(&[1, 0]);
        let res = qq_residual(&iset(2, &[]), 1, 2, z, &r2, 2, &twist(2)).unwrap();
        assert!(res < 1e-8, "gl(2) QQ residual {res}");

        // the antifundamental gl(3) face on top of I = {1}
        let r3 = rep(&[1, 1, 0]);
        let res = qq_residual(&iset(3, &[1]), 2, 3, z, &r3, 2, &twist(3)).unwrap();
        assert!(res < 1e-8, "gl(3) antifundamental QQ residual {res}");
    }

    #[test]
    fn determinant_formula() {
        let z = C64::new(0.52, 0.41);
        let r2 = rep(&[1, 0]);
        let res = det_formula_residual(&iset(2, &[1, 2]), z, &r2, 2, &twist(2)).unwrap();
        assert!(res < 1e-8, "gl(2) determinant residual {res}");

        let r3 = rep(&[1, 0, 0]);
        let res = det_formula_residual(&iset(3, &[1, 2]), z, &r3, 1, &twist(3)).unwrap();
        assert!(res < 1e-8, "gl(3) determinant residual {res}");

        // p = 1 is the trivial identity
        let res = det_formula_residual(&iset(2, &[1]), z, &r2, 1, &twist(2)).unwrap();
        assert!(res < 1e-14);
    }

    #[test]
    fn q_entries_polynomial_in_z() {
        // after removing the prefactor, entries interpolate as polynomials
        let r = rep(&[1, 0]);
        let tw = twist(2);
        let i1 = iset(2, &[1]);
        let len = 2;
        let dmax = 4usize;
        let samples: Vec<C64> = (0..=dmax)
            .map(|k| C64::new(1.3, 0.0) * (C64::i() * (0.17 + k as f64 / (dmax + 1) as f64 * std::f64::consts::TAU)).exp())
            .collect();
        let vals: Vec<CMat> = samples
            .iter()
            .map(|&z| {
                let pref = tw.prefactor(z, &i1, 0);
                q_operator(z, &i1, &r, len, &tw).unwrap().mapv(|x| x / pref)
            })
            .collect();
        // Lagrange-interpolate entrywise at a held-out point
        let zh = C64::new(0.37, 0.61);
        let mut pred = CMat::zeros(vals[0].dim());
        for (k, &zk) in samples.iter().enumerate() {
            let mut w = C64::new(1.0, 0.0);
            for (j, &zj) in samples.iter().enumerate() {
                if j != k {
                    w *= (zh - zj) / (zk - zj);
                }
            }
            pred += &vals[k].mapv(|x| x * w);
        }
        let prefh = tw.prefactor(zh, &i1, 0);
        let direct = q_operator(zh, &i1, &r, len, &tw).unwrap().mapv(|x| x / prefh);
        let rel = fro_norm(&(&pred - &direct)) / fro_norm(&direct);
        assert!(rel < 1e-8, "interpolation residual {rel}");
    }
}
