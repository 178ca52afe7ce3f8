//! Gelfand-Tsetlin patterns and dense gl(n) representation matrices.
//!
//! A dominant integral weight λ fixes an irreducible module V(λ); its basis
//! vectors are labeled by triangular interlacing integer arrays (GT
//! patterns). Basis order is descending lexicographic on the flattened
//! pattern (bottom row first), which makes every matrix in the crate
//! bit-comparable across runs.
//!
//! Generators E_ab act by the closed GT formulas for |a−b| ≤ 1 and by
//! iterated commutators otherwise; entries are exact rationals internally
//! and are converted to complex floats at the [`CMat`] boundary.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::rational::{rat_int, Rat, RatMat};
use crate::weights::IndexSet;
use num_traits::{One, Signed, Zero};

/// A gl(n) dominant integral weight λ₁ ≥ λ₂ ≥ … ≥ λₙ.
///
/// Weights are taken as given; no overall shift to make λₙ ≥ 0 is applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighestWeight {
    lambda: Vec<i64>,
}

impl HighestWeight {
    pub fn new(lambda: Vec<i64>) -> Result<Self> {
        if lambda.is_empty() {
            return Err(Error::InvalidWeight("empty weight".into()));
        }
        if lambda.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidWeight(format!(
                "{lambda:?} is not weakly decreasing"
            )));
        }
        Ok(HighestWeight { lambda })
    }

    /// Parse the CLI format "2,1,0".
    pub fn parse(s: &str) -> Result<Self> {
        let lambda: std::result::Result<Vec<i64>, _> =
            s.split(',').map(|t| t.trim().parse::<i64>()).collect();
        match lambda {
            Ok(v) => Self::new(v),
            Err(e) => Err(Error::InvalidWeight(format!("cannot parse {s:?}: {e}"))),
        }
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[i64] {
        &self.lambda
    }

    pub fn total_boxes(&self) -> i64 {
        self.lambda.iter().sum()
    }

    /// Shifted weights ℓ_i = λ_i − i + 1 of the full algebra.
    pub fn shifted(&self) -> Vec<i64> {
        self.lambda
            .iter()
            .enumerate()
            .map(|(i, &l)| l - i as i64)
            .collect()
    }
}

/// Triangular interlacing array m_{k,i}, 1 ≤ i ≤ k ≤ n; `rows[k-1]` is row k
/// (length k), `rows[n-1]` equals λ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GTPattern {
    rows: Vec<Vec<i64>>,
}

impl GTPattern {
    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Entry m_{k,i}, both indices 1-based.
    pub fn entry(&self, k: usize, i: usize) -> i64 {
        self.rows[k - 1][i - 1]
    }

    pub fn interlaces(&self) -> bool {
        for k in 1..self.rows.len() {
            let lower = &self.rows[k - 1];
            let upper = &self.rows[k];
            for i in 0..lower.len() {
                if !(upper[i] >= lower[i] && lower[i] >= upper[i + 1]) {
                    return false;
                }
            }
        }
        true
    }

    fn row_sum(&self, k: usize) -> i64 {
        if k == 0 {
            0
        } else {
            self.rows[k - 1].iter().sum()
        }
    }

    /// gl(n) weight: eigenvalues of E_aa, a = 1..n.
    pub fn weight(&self) -> Vec<i64> {
        (1..=self.n())
            .map(|k| self.row_sum(k) - self.row_sum(k - 1))
            .collect()
    }

    fn flat_key(&self) -> Vec<i64> {
        let mut key = Vec::new();
        for row in &self.rows {
            key.extend_from_slice(row);
        }
        key
    }
}

/// All GT patterns of λ, in descending lexicographic order on the flattened
/// pattern (row 1 first, each row left to right).
pub fn enumerate_patterns(hw: &HighestWeight) -> Vec<GTPattern> {
    let n = hw.n();
    let mut stack: Vec<Vec<Vec<i64>>> = vec![vec![hw.lambda().to_vec()]];
    for _ in (1..n).rev() {
        let mut next = Vec::new();
        for partial in stack {
            let top = &partial[0];
            let k = top.len();
            // all rows of length k−1 interlacing below `top`
            let mut rows = vec![Vec::with_capacity(k - 1)];
            for i in 0..k - 1 {
                let mut grown = Vec::new();
                for r in rows {
                    for v in top[i + 1]..=top[i] {
                        let mut r2 = r.clone();
                        r2.push(v);
                        grown.push(r2);
                    }
                }
                rows = grown;
            }
            for row in rows {
                let mut p = partial.clone();
                p.insert(0, row);
                next.push(p);
            }
        }
        stack = next;
    }
    let mut patterns: Vec<GTPattern> = stack.into_iter().map(|rows| GTPattern { rows }).collect();
    patterns.sort_by(|a, b| b.flat_key().cmp(&a.flat_key()));
    patterns
}

/// An irreducible gl(n) module with all generator matrices materialized.
pub struct Rep {
    pub hw: HighestWeight,
    pub patterns: Vec<GTPattern>,
    pub dim: usize,
    gens_rat: Vec<RatMat>,
    gens: Vec<CMat>,
    metric: Vec<Rat>,
}

impl Rep {
    pub fn new(hw: HighestWeight) -> Rep {
        let n = hw.n();
        let patterns = enumerate_patterns(&hw);
        let dim = patterns.len();
        let index: HashMap<Vec<i64>, usize> = patterns
            .iter()
            .enumerate()
            .map(|(i, p)| (p.flat_key(), i))
            .collect();

        let mut gens_rat: Vec<Option<RatMat>> = vec![None; n * n];
        let at = |a: usize, b: usize| (a - 1) * n + (b - 1);

        // diagonal generators
        for k in 1..=n {
            let mut m = RatMat::zeros(dim);
            for (j, p) in patterns.iter().enumerate() {
                m.set(j, j, rat_int(p.row_sum(k) - p.row_sum(k - 1)));
            }
            gens_rat[at(k, k)] = Some(m);
        }

        // simple raising E_{k,k+1} and lowering E_{k+1,k}
        for k in 1..n {
            let mut raise = RatMat::zeros(dim);
            let mut lower = RatMat::zeros(dim);
            for (j, p) in patterns.iter().enumerate() {
                for i in 1..=k {
                    let l = |kk: usize, ii: usize| rat_int(p.entry(kk, ii) - ii as i64);
                    // denominator Π_{j≠i} (l_{k,i} − l_{k,j}), shared by both
                    let mut den = Rat::one();
                    for jj in 1..=k {
                        if jj != i {
                            den *= l(k, i) - l(k, jj);
                        }
                    }
                    // raise m_{k,i}
                    let mut p2 = p.clone();
                    p2.rows[k - 1][i - 1] += 1;
                    if p2.interlaces() {
                        let mut num = Rat::one();
                        for jj in 1..=k + 1 {
                            num *= l(k, i) - l(k + 1, jj);
                        }
                        let coeff = -num / den.clone();
                        if !coeff.is_zero() {
                            raise.add_to(index[&p2.flat_key()], j, &coeff);
                        }
                    }
                    // lower m_{k,i}
                    let mut p3 = p.clone();
                    p3.rows[k - 1][i - 1] -= 1;
                    if p3.interlaces() {
                        let mut num = Rat::one();
                        for jj in 1..k {
                            num *= l(k, i) - l(k - 1, jj);
                        }
                        let coeff = num / den;
                        if !coeff.is_zero() {
                            lower.add_to(index[&p3.flat_key()], j, &coeff);
                        }
                    }
                }
            }
            gens_rat[at(k, k + 1)] = Some(raise);
            gens_rat[at(k + 1, k)] = Some(lower);
        }

        // remaining generators by iterated commutators
        for dist in 2..n {
            for a in 1..=n {
                if a + dist <= n {
                    let b = a + dist;
                    let x = gens_rat[at(a, a + 1)].as_ref().unwrap();
                    let y = gens_rat[at(a + 1, b)].as_ref().unwrap();
                    gens_rat[at(a, b)] = Some(x.commutator(y));
                }
                if a > dist {
                    let b = a - dist;
                    let x = gens_rat[at(a, a - 1)].as_ref().unwrap();
                    let y = gens_rat[at(a - 1, b)].as_ref().unwrap();
                    gens_rat[at(a, b)] = Some(x.commutator(y));
                }
            }
        }

        let mut gens_rat: Vec<RatMat> = gens_rat.into_iter().map(|g| g.unwrap()).collect();

        // Calibrate the defining representation to plain matrix units: the
        // GT normalization carries per-vector scales, and for λ = (1,0,…,0)
        // a rational diagonal rescale removes them, so that e.g. the
        // fundamental Lax matrix at z = 0 is literally the permutation.
        if n >= 2 && hw.lambda()[0] == 1 && hw.lambda()[1] == 0 {
            let mut scale = vec![Rat::one(); dim];
            for k in 1..n {
                let low = &gens_rat[at(k + 1, k)];
                let c = low.get(k, k - 1).clone();
                assert!(!c.is_zero());
                scale[k] = scale[k - 1].clone() / c;
            }
            for g in gens_rat.iter_mut() {
                let mut out = RatMat::zeros(dim);
                for i in 0..dim {
                    for j in 0..dim {
                        let v = g.get(i, j);
                        if !v.is_zero() {
                            out.set(i, j, scale[i].clone() * v / &scale[j]);
                        }
                    }
                }
                *g = out;
            }
        }

        let gens = gens_rat.iter().map(|g| g.to_cmat()).collect();
        let metric = compute_metric(&gens_rat, n, dim);

        Rep {
            hw,
            patterns,
            dim,
            gens_rat,
            gens,
            metric,
        }
    }

    pub fn n(&self) -> usize {
        self.hw.n()
    }

    /// Matrix of E_ab (1-based indices).
    pub fn gen(&self, a: usize, b: usize) -> &CMat {
        &self.gens[(a - 1) * self.n() + (b - 1)]
    }

    pub fn gen_rat(&self, a: usize, b: usize) -> &RatMat {
        &self.gens_rat[(a - 1) * self.n() + (b - 1)]
    }

    /// Diagonal contravariant metric: G E_ab G⁻¹ = E_baᵀ for all a, b.
    /// Conjugating by G^{1/2} takes matrices to the unitary-adapted basis.
    pub fn metric(&self) -> &[Rat] {
        &self.metric
    }

    /// Cyclic Casimir Ĉ_k of the gl(S) subalgebra spanned by the given
    /// 1-based index list, with the contraction
    /// Ĉ_k = Σ E_{b₁b₀} E_{b₂b₁} ⋯ E_{b₀b_{k−1}}.
    pub fn casimir(&self, k: usize, set: &[usize]) -> CMat {
        assert!(k >= 1 && !set.is_empty());
        let q = set.len();
        // W[x][y] = E_{set[y], set[x]} so that (W^k)[a][a] sums to Ĉ_k
        let w: Vec<Vec<CMat>> = (0..q)
            .map(|x| (0..q).map(|y| self.gen(set[y], set[x]).clone()).collect())
            .collect();
        let mut pw = w.clone();
        for _ in 1..k {
            pw = opmat_mul(&pw, &w, self.dim);
        }
        let mut out = CMat::zeros((self.dim, self.dim));
        for x in 0..q {
            out += &pw[x][x];
        }
        out
    }
}

/// Product of operator-valued square matrices: (AB)[i][j] = Σ A[i][k]·B[k][j]
/// with entries multiplied as dense matrices, left factor first.
pub(crate) fn opmat_mul(a: &[Vec<CMat>], b: &[Vec<CMat>], dim: usize) -> Vec<Vec<CMat>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = CMat::zeros((dim, dim));
                    for k in 0..n {
                        acc += &a[i][k].dot(&b[k][j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// [OP]-level Casimir with input validation: Ĉ_k of gl(I) on V(λ).
pub fn casimir(k: usize, set: &IndexSet, rep: &Rep) -> Result<CMat> {
    if set.is_empty() {
        return Err(Error::InvalidIndexSet("Casimir over empty set".into()));
    }
    if k == 0 {
        return Err(Error::Invalid("Casimir order must be ≥ 1".into()));
    }
    Ok(rep.casimir(k, set.members()))
}

fn compute_metric(gens: &[RatMat], n: usize, dim: usize) -> Vec<Rat> {
    let at = |a: usize, b: usize| (a - 1) * n + (b - 1);
    let mut g: Vec<Option<Rat>> = vec![None; dim];
    g[0] = Some(Rat::one()); // highest pattern sorts first
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(p) = queue.pop_front() {
        for k in 1..n {
            let lower = &gens[at(k + 1, k)];
            let raise = &gens[at(k, k + 1)];
            for p2 in 0..dim {
                // edge p → p2 via lowering; ratio from E_{k,k+1}ᵀ G = G E_{k+1,k}
                let down = lower.get(p2, p);
                let up = raise.get(p, p2);
                if !down.is_zero() && !up.is_zero() {
                    let val = g[p].clone().unwrap() * up / down;
                    assert!(val.is_positive(), "contravariant metric must be positive");
                    match &g[p2] {
                        Some(existing) => assert_eq!(existing, &val, "metric inconsistency"),
                        None => {
                            g[p2] = Some(val);
                            queue.push_back(p2);
                        }
                    }
                }
            }
        }
    }
    g.into_iter()
        .map(|x| x.expect("pattern graph not connected"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{fro_norm, max_abs, C64};
    use crate::rational::rat_to_f64;

    /// Weyl dimension formula, the independent oracle for pattern counts.
    fn weyl_dim(hw: &HighestWeight) -> i64 {
        let l = hw.lambda();
        let n = l.len();
        let mut num = 1i64;
        let mut den = 1i64;
        for i in 0..n {
            for j in i + 1..n {
                num *= l[i] - l[j] + (j - i) as i64;
                den *= (j - i) as i64;
            }
        }
        num / den
    }

    #[test]
    fn pattern_counts() {
        let cases = [
            (vec![1, 0], 2),
            (vec![1, 1, 0], 3),
            (vec![2, 1, 0], 8),
        ];
        for (lambda, want) in cases {
            let hw = HighestWeight::new(lambda).unwrap();
            let pats = enumerate_patterns(&hw);
            assert_eq!(pats.len(), want);
            assert_eq!(pats.len() as i64, weyl_dim(&hw));
            assert!(pats.iter().all(|p| p.interlaces()));
        }
    }

    #[test]
    fn pattern_count_matches_weyl_formula_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let n = rng.gen_range(1..=4usize);
            let mut lambda: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=4i64)).collect();
            lambda.sort_unstable_by(|a, b| b.cmp(a));
            let hw = HighestWeight::new(lambda).unwrap();
            assert_eq!(enumerate_patterns(&hw).len() as i64, weyl_dim(&hw));
        }
    }

    #[test]
    fn rejects_invalid_weight() {
        assert!(HighestWeight::new(vec![0, 1]).is_err());
        assert!(HighestWeight::new(vec![]).is_err());
        assert!(HighestWeight::parse("1,x").is_err());
    }

    #[test]
    fn deterministic_descending_order() {
        let hw = HighestWeight::new(vec![1, 0]).unwrap();
        let pats = enumerate_patterns(&hw);
        // first basis vector is the highest weight pattern
        assert_eq!(pats[0].rows(), &[vec![1], vec![1, 0]]);
        assert_eq!(pats[1].rows(), &[vec![0], vec![1, 0]]);
    }

    #[test]
    fn fundamental_cartan_entries() {
        let rep = Rep::new(HighestWeight::new(vec![1, 0]).unwrap());
        let j11 = rep.gen(1, 1);
        let mut diag: Vec<f64> = (0..2).map(|i| j11[(i, i)].re).collect();
        diag.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(diag, vec![0.0, 1.0]);
    }

    #[test]
    fn commutation_relations_exact() {
        // [E_ab, E_cd] = δ_bc E_ad − δ_da E_cb, exactly in rational arithmetic
        for lambda in [vec![1, 0], vec![2, 0], vec![1, 1, 0], vec![2, 1, 0]] {
            let rep = Rep::new(HighestWeight::new(lambda).unwrap());
            let n = rep.n();
            for a in 1..=n {
                for b in 1..=n {
                    for c in 1..=n {
                        for d in 1..=n {
                            let mut want = RatMat::zeros(rep.dim);
                            if b == c {
                                want = want.add(rep.gen_rat(a, d));
                            }
                            if d == a {
                                want = want.sub(rep.gen_rat(c, b));
                            }
                            let got = rep.gen_rat(a, b).commutator(rep.gen_rat(c, d));
                            assert!(
                                got.sub(&want).is_zero(),
                                "[E{a}{b}, E{c}{d}] failed for {:?}",
                                rep.hw.lambda()
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn total_box_count() {
        let rep = Rep::new(HighestWeight::new(vec![2, 1, 0]).unwrap());
        let mut sum = CMat::zeros((rep.dim, rep.dim));
        for a in 1..=3 {
            sum += rep.gen(a, a);
        }
        let expect = crate::linalg::eye(rep.dim).mapv(|x| x * C64::new(3.0, 0.0));
        assert!(fro_norm(&(&sum - &expect)) < 1e-14);
    }

    #[test]
    fn casimir_first_is_total_weight() {
        let rep = Rep::new(HighestWeight::new(vec![2, 1, 0]).unwrap());
        let full: Vec<usize> = vec![1, 2, 3];
        let c1 = rep.casimir(1, &full);
        let expect = crate::linalg::eye(rep.dim).mapv(|x| x * C64::new(3.0, 0.0));
        assert!(fro_norm(&(&c1 - &expect)) < 1e-12);
    }

    #[test]
    fn casimir_single_index_subalgebra() {
        // gl(2) fundamental, I = {2}: Ĉ₁ = J²₂ has eigenvalues {0, 1}
        let rep = Rep::new(HighestWeight::new(vec![1, 0]).unwrap());
        let c1 = rep.casimir(1, &[2]);
        let mut diag: Vec<f64> = (0..2).map(|i| c1[(i, i)].re).collect();
        diag.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(diag, vec![0.0, 1.0]);
        assert!(max_abs(&(&c1 - &CMat::from_diag(&c1.diag()))) < 1e-15);
    }

    #[test]
    fn casimir_centrality() {
        let rep = Rep::new(HighestWeight::new(vec![2, 1, 0]).unwrap());
        let set = vec![1, 2];
        let c2 = rep.casimir(2, &set);
        for &a in &set {
            for &b in &set {
                let comm = crate::linalg::commutator(&c2, rep.gen(a, b));
                assert!(fro_norm(&comm) < 1e-10, "C2 not central on E{a}{b}");
            }
        }
    }

    #[test]
    fn cyclic_casimir_contraction_matches_harish_chandra_at_order_three() {
        // gl(3) fundamental: the cyclic third Casimir evaluates to 1·Id,
        // distinguishing the contraction convention from the naive chain.
        let rep = Rep::new(HighestWeight::new(vec![1, 0, 0]).unwrap());
        let c3 = rep.casimir(3, &[1, 2, 3]);
        let expect = crate::linalg::eye(3);
        assert!(fro_norm(&(&c3 - &expect)) < 1e-12);
    }

    #[test]
    fn metric_adjoints_generators() {
        for lambda in [vec![2, 0], vec![1, 1, 0], vec![2, 1, 0]] {
            let rep = Rep::new(HighestWeight::new(lambda).unwrap());
            let n = rep.n();
            let g: Vec<f64> = rep.metric().iter().map(rat_to_f64).collect();
            for a in 1..=n {
                for b in 1..=n {
                    let e = rep.gen(a, b);
                    let f = rep.gen(b, a);
                    // G E_ab = E_baᵀ G entrywise
                    for i in 0..rep.dim {
                        for j in 0..rep.dim {
                            let lhs = g[i] * e[(i, j)].re;
                            let rhs = f[(j, i)].re * g[j];
                            assert!((lhs - rhs).abs() < 1e-9 * (1.0 + lhs.abs()));
                        }
                    }
                }
            }
        }
    }
}
