//! Shifted-weight spectra of gl(S) subalgebras and the non-commutative
//! Cayley-Hamilton machinery.
//!
//! For a subalgebra gl(S) acting on V(λ), the module V decomposes into
//! isotypic blocks; on each block the central elements ℓ̂₁ > … > ℓ̂_q act by
//! the integers ℓ_k = μ_k − k + 1 of the block's gl(S) highest weight μ.
//! The decomposition content is obtained exactly from Gelfand-Tsetlin
//! branching (the multiset is the same for every S of fixed size, since all
//! such subalgebras are conjugate by permutations), and the eigenprojectors
//! from clustering a generic integer combination of the Casimir matrices
//! against the exactly known spectrum. A Newton solver for the
//! Harish-Chandra system is provided as the independent numerical route.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gtbasis::Rep;
use crate::linalg::{self, CMat, C64};
use crate::rational::{self, harish_chandra_casimirs, rat_int, rat_to_f64, Rat};

/// Sorted subset of {1..n}, 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSet {
    n: usize,
    members: Vec<usize>,
}

impl IndexSet {
    pub fn new(n: usize, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if members.iter().any(|&m| m == 0 || m > n) {
            return Err(Error::InvalidIndexSet(format!(
                "members {members:?} out of range 1..={n}"
            )));
        }
        Ok(IndexSet { n, members })
    }

    pub fn empty(n: usize) -> Self {
        IndexSet { n, members: vec![] }
    }

    pub fn full(n: usize) -> Self {
        IndexSet {
            n,
            members: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn complement(&self) -> IndexSet {
        IndexSet {
            n: self.n,
            members: (1..=self.n).filter(|x| !self.contains(*x)).collect(),
        }
    }

    pub fn union_with(&self, extra: &[usize]) -> Result<IndexSet> {
        let mut m = self.members.clone();
        m.extend_from_slice(extra);
        IndexSet::new(self.n, m)
    }
}

/// One isotypic block of V under gl(S).
#[derive(Clone)]
pub struct WeightBlock {
    /// gl(S) highest weight of the block.
    pub mu: Vec<i64>,
    /// Shifted weights ℓ_k = μ_k − k + 1, strictly decreasing.
    pub ells: Vec<i64>,
    /// Total block dimension (multiplicity × dim μ).
    pub dim: usize,
    /// Spectral projector onto the block, as a matrix on V.
    pub projector: CMat,
}

/// Complete shifted-weight data of gl(S) on V.
pub struct ShiftedWeightTable {
    pub q: usize,
    /// Dimension of the ambient module V.
    pub dim: usize,
    pub blocks: Vec<WeightBlock>,
}

impl ShiftedWeightTable {
    /// The operator ℓ̂_k = Σ_blocks ℓ_k · P_block (k is 1-based).
    pub fn ell_operator(&self, k: usize) -> CMat {
        self.scalar_operator(|ells| C64::new(ells[k - 1] as f64, 0.0))
    }

    /// Σ_blocks f(ℓ_block) · P_block for any scalar function of the block
    /// shifted weights.
    pub fn scalar_operator(&self, f: impl Fn(&[i64]) -> C64) -> CMat {
        let mut out = CMat::zeros((self.dim, self.dim));
        for b in &self.blocks {
            out += &b.projector.mapv(|x| x * f(&b.ells));
        }
        out
    }
}

/// Branching multiset of V(λ) under any gl(S) with |S| = q: list of
/// (μ, total block dimension), sorted by μ descending.
pub fn branch_multiset(rep: &Rep, q: usize) -> Vec<(Vec<i64>, usize)> {
    assert!(q >= 1 && q <= rep.n());
    let mut counts: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    for p in &rep.patterns {
        let mu = p.rows()[q - 1].clone();
        *counts.entry(mu).or_insert(0) += 1;
    }
    let mut out: Vec<(Vec<i64>, usize)> = counts.into_iter().collect();
    out.sort_by(|a, b| b.0.cmp(&a.0));
    out
}

fn shifted_of(mu: &[i64]) -> Vec<i64> {
    mu.iter()
        .enumerate()
        .map(|(i, &m)| m - i as i64)
        .collect()
}

/// Shifted-weight table of the subalgebra gl(S) on V, for any nonempty
/// S ⊆ {1..n}.
///
/// Head sets {1..q} are resolved exactly from the GT pattern rows; general
/// sets go through spectral clustering of a generic integer combination of
/// the gl(S) Casimir matrices against the exact expected spectrum.
pub fn shifted_weights(subalgebra: &IndexSet, rep: &Rep) -> Result<ShiftedWeightTable> {
    let q = subalgebra.len();
    if q == 0 {
        return Err(Error::InvalidIndexSet(
            "shifted weights need a nonempty subalgebra".into(),
        ));
    }
    let candidates = branch_multiset(rep, q);

    // exact Casimir tuples per candidate block
    let mut tuples: Vec<Vec<Rat>> = Vec::new();
    for (mu, _) in &candidates {
        let ells: Vec<Rat> = shifted_of(mu).iter().map(|&x| rat_int(x)).collect();
        tuples.push(harish_chandra_casimirs(&ells, q));
    }
    for i in 0..tuples.len() {
        for j in i + 1..tuples.len() {
            if tuples[i] == tuples[j] {
                return Err(Error::DegenerateBlocks(format!(
                    "blocks {:?} and {:?} share all {} Casimir values",
                    candidates[i].0, candidates[j].0, q
                )));
            }
        }
    }

    let is_head = subalgebra.members() == (1..=q).collect::<Vec<_>>();
    let blocks = if is_head {
        // GT rows give the decomposition directly: coordinate projectors
        candidates
            .iter()
            .map(|(mu, bdim)| {
                let mut p = CMat::zeros((rep.dim, rep.dim));
                for (i, pat) in rep.patterns.iter().enumerate() {
                    if &pat.rows()[q - 1] == mu {
                        p[(i, i)] = C64::new(1.0, 0.0);
                    }
                }
                WeightBlock {
                    mu: mu.clone(),
                    ells: shifted_of(mu),
                    dim: *bdim,
                    projector: p,
                }
            })
            .collect()
    } else {
        spectral_blocks(rep, subalgebra.members(), &candidates, &tuples)?
    };

    let table = ShiftedWeightTable {
        q,
        dim: rep.dim,
        blocks,
    };
    verify_table(&table, rep, subalgebra.members())?;
    Ok(table)
}

/// Split V into joint Casimir eigenspaces, given the exact expected
/// spectrum. Shared with the tensor-product decomposition in `hambuilder`,
/// which passes custom generator matrices.
pub(crate) fn spectral_blocks_from_casimirs(
    casimirs: &[CMat],
    candidates: &[(Vec<i64>, usize)],
    tuples: &[Vec<Rat>],
) -> Result<Vec<WeightBlock>> {
    let dim = casimirs[0].nrows();
    let q = casimirs.len();
    // generic integer combination with exactly separated target values
    let mut weights: Option<(Vec<i64>, Vec<f64>)> = None;
    'bases: for base in [1i64, 2, 3, 5, 7, 11, 13] {
        let r: Vec<i64> = (0..q).map(|k| base.pow(k as u32)).collect();
        let targets: Vec<Rat> = tuples
            .iter()
            .map(|t| {
                t.iter()
                    .zip(&r)
                    .map(|(c, &rk)| c.clone() * rat_int(rk))
                    .sum::<Rat>()
            })
            .collect();
        for i in 0..targets.len() {
            for j in i + 1..targets.len() {
                if targets[i] == targets[j] {
                    continue 'bases;
                }
            }
        }
        weights = Some((r, targets.iter().map(rat_to_f64).collect()));
        break;
    }
    let (r, targets) = weights.ok_or_else(|| {
        Error::DegenerateBlocks("no separating Casimir combination found".into())
    })?;

    let mut t_mat = CMat::zeros((dim, dim));
    for (k, c) in casimirs.iter().enumerate() {
        t_mat += &c.mapv(|x| x * C64::new(r[k] as f64, 0.0));
    }
    let (vals, vecs) = linalg::eig(&t_mat)?;
    let vinv = linalg::inv(&vecs)?;

    let mut minsep = f64::INFINITY;
    for i in 0..targets.len() {
        for j in i + 1..targets.len() {
            minsep = minsep.min((targets[i] - targets[j]).abs());
        }
    }

    let mut assignment: Vec<Vec<usize>> = vec![Vec::new(); targets.len()];
    for (idx, v) in vals.iter().enumerate() {
        let (best, dist) = targets
            .iter()
            .enumerate()
            .map(|(b, t)| (b, (v - C64::new(*t, 0.0)).norm()))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        if dist > 0.25 * minsep {
            return Err(Error::DegenerateBlocks(format!(
                "eigenvalue {v} is {dist:.2e} away from any expected Casimir value"
            )));
        }
        assignment[best].push(idx);
    }

    let mut blocks = Vec::new();
    for (b, (mu, bdim)) in candidates.iter().enumerate() {
        if assignment[b].len() != *bdim {
            return Err(Error::DegenerateBlocks(format!(
                "block {:?}: expected dimension {}, clustered {}",
                mu,
                bdim,
                assignment[b].len()
            )));
        }
        let mut proj = CMat::zeros((dim, dim));
        for &idx in &assignment[b] {
            let col = vecs.column(idx);
            let row = vinv.row(idx);
            for i in 0..dim {
                for j in 0..dim {
                    proj[(i, j)] += col[i] * row[j];
                }
            }
        }
        blocks.push(WeightBlock {
            mu: mu.clone(),
            ells: shifted_of(mu),
            dim: *bdim,
            projector: proj,
        });
    }
    Ok(blocks)
}

fn spectral_blocks(
    rep: &Rep,
    set: &[usize],
    candidates: &[(Vec<i64>, usize)],
    tuples: &[Vec<Rat>],
) -> Result<Vec<WeightBlock>> {
    let q = set.len();
    let casimirs: Vec<CMat> = (1..=q).map(|k| rep.casimir(k, set)).collect();
    spectral_blocks_from_casimirs(&casimirs, candidates, tuples)
}

/// Harish-Chandra consistency of a freshly built table: every Casimir
/// matrix, compressed to a block, acts as the exact Harish-Chandra value.
fn verify_table(table: &ShiftedWeightTable, rep: &Rep, set: &[usize]) -> Result<()> {
    let q = table.q;
    for k in 1..=q {
        let c = rep.casimir(k, set);
        for b in &table.blocks {
            let expect = rat_to_f64(
                &harish_chandra_casimirs(
                    &b.ells.iter().map(|&x| rat_int(x)).collect::<Vec<_>>(),
                    k,
                )[k - 1],
            );
            let resid = c.dot(&b.projector) - b.projector.mapv(|x| x * C64::new(expect, 0.0));
            let scale = linalg::fro_norm(&b.projector) * (1.0 + expect.abs());
            if linalg::fro_norm(&resid) > 1e-7 * scale {
                return Err(Error::DegenerateBlocks(format!(
                    "Casimir {k} inconsistent on block {:?}: residual {:.2e}",
                    b.mu,
                    linalg::fro_norm(&resid)
                )));
            }
        }
    }
    Ok(())
}

/// Capelli coefficients a_k(ℓ) = (−1)^{q+k} e_{q−k+1}(ℓ), k = 1..q.
pub fn capelli_coefficients(ells: &[C64]) -> Vec<C64> {
    let q = ells.len();
    (1..=q)
        .map(|k| {
            let m = q - k + 1;
            // elementary symmetric e_m over complex values
            let mut dp = vec![C64::new(0.0, 0.0); m + 1];
            dp[0] = C64::new(1.0, 0.0);
            for v in ells {
                for j in (1..=m).rev() {
                    let t = dp[j - 1] * v;
                    dp[j] += t;
                }
            }
            let sign = if (q + k) % 2 == 0 { 1.0 } else { -1.0 };
            dp[m] * sign
        })
        .collect()
}

/// Damped Newton solve of the Harish-Chandra system
/// Σ_k Π_{j≠k}(1 + 1/(ℓ_k − ℓ_j)) ℓ_k^i = c_i, i = 1..q,
/// seeded from strictly decreasing integer tuples in the given window.
/// Returns the (descending) solution after round-and-verify.
pub fn newton_shifted_weights(
    casimir_values: &[f64],
    window: (i64, i64),
    tol: f64,
) -> Result<Vec<i64>> {
    let q = casimir_values.len();
    let eval = |ell: &[f64]| -> Vec<f64> {
        (1..=q)
            .map(|i| {
                let mut acc = 0.0;
                for k in 0..q {
                    let mut w = 1.0;
                    for j in 0..q {
                        if j != k {
                            w *= 1.0 + 1.0 / (ell[k] - ell[j]);
                        }
                    }
                    acc += w * ell[k].powi(i as i32);
                }
                acc - casimir_values[i - 1]
            })
            .collect()
    };

    let seeds = decreasing_tuples(window.0, window.1, q);
    for seed in seeds {
        let mut x: Vec<f64> = seed.iter().map(|&v| v as f64).collect();
        let mut ok = false;
        for _ in 0..60 {
            let f = eval(&x);
            let fnorm: f64 = f.iter().map(|v| v * v).sum::<f64>().sqrt();
            if fnorm < 1e-11 {
                ok = true;
                break;
            }
            // finite-difference Jacobian
            let h = 1e-6;
            let mut jac = vec![vec![0.0; q]; q];
            for m in 0..q {
                let mut xp = x.clone();
                let mut xm = x.clone();
                xp[m] += h;
                xm[m] -= h;
                let fp = eval(&xp);
                let fm = eval(&xm);
                for i in 0..q {
                    jac[i][m] = (fp[i] - fm[i]) / (2.0 * h);
                }
            }
            let Some(step) = gauss_solve(&mut jac, &f) else {
                break;
            };
            let mut damp = 1.0;
            let mut advanced = false;
            for _ in 0..20 {
                let xt: Vec<f64> = x.iter().zip(&step).map(|(a, s)| a - damp * s).collect();
                if xt
                    .iter()
                    .enumerate()
                    .any(|(i, v)| xt.iter().skip(i + 1).any(|w| (v - w).abs() < 1e-8))
                {
                    damp *= 0.5;
                    continue;
                }
                let ft = eval(&xt);
                let ftn: f64 = ft.iter().map(|v| v * v).sum::<f64>().sqrt();
                if ftn < fnorm {
                    x = xt;
                    advanced = true;
                    break;
                }
                damp *= 0.5;
            }
            if !advanced {
                break;
            }
        }
        if ok {
            // compact representations have integer shifted weights
            let rounded: Vec<i64> = x.iter().map(|v| v.round() as i64).collect();
            if x
                .iter()
                .zip(&rounded)
                .all(|(v, r)| (v - *r as f64).abs() < tol.max(1e-9))
            {
                let exact: Vec<f64> = rounded.iter().map(|&v| v as f64).collect();
                let resid: f64 = eval(&exact).iter().map(|v| v.abs()).fold(0.0, f64::max);
                if resid < 1e-7 {
                    let mut out = rounded;
                    out.sort_unstable_by(|a, b| b.cmp(a));
                    return Ok(out);
                }
            }
        }
    }
    Err(Error::NoConvergence(
        "Newton solve of the Harish-Chandra system found no integer solution".into(),
    ))
}

fn decreasing_tuples(lo: i64, hi: i64, q: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(q);
    fn rec(lo: i64, hi: i64, q: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == q {
            out.push(cur.clone());
            return;
        }
        let upper = cur.last().map(|&v| v - 1).unwrap_or(hi);
        let mut v = upper;
        while v >= lo {
            cur.push(v);
            rec(lo, hi, q, cur, out);
            cur.pop();
            v -= 1;
        }
    }
    rec(lo, hi, q, &mut cur, &mut out);
    out
}

fn gauss_solve(a: &mut [Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let mut x: Vec<f64> = b.to_vec();
    for col in 0..n {
        let (piv, mag) = (col..n)
            .map(|r| (r, a[r][col].abs()))
            .max_by(|u, v| u.1.partial_cmp(&v.1).unwrap())?;
        if mag < 1e-14 {
            return None;
        }
        a.swap(col, piv);
        x.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            x[r] -= f * x[col];
        }
    }
    for col in (0..n).rev() {
        x[col] /= a[col][col];
        for r in 0..col {
            x[r] -= a[r][col] * x[col];
        }
    }
    Some(x)
}

/// Mixed powers (J^k)^{ȧ}_b over the dotted set, lower index from `lows`:
/// out[k-1][ȧ_idx][b_idx] for k = 1..=kmax.
fn mixed_powers(rep: &Rep, dotted: &[usize], lows: &[usize], kmax: usize) -> Vec<Vec<Vec<CMat>>> {
    let qd = dotted.len();
    let mut levels: Vec<Vec<Vec<CMat>>> = Vec::with_capacity(kmax);
    // k = 1: (J¹)^{ȧ}_b = E_{ȧ b}
    levels.push(
        (0..qd)
            .map(|ai| {
                lows.iter()
                    .map(|&b| rep.gen(dotted[ai], b).clone())
                    .collect()
            })
            .collect(),
    );
    for _k in 2..=kmax {
        let prev = levels.last().unwrap();
        let next: Vec<Vec<CMat>> = (0..qd)
            .map(|ai| {
                (0..lows.len())
                    .map(|bi| {
                        let mut acc = CMat::zeros((rep.dim, rep.dim));
                        for ci in 0..qd {
                            // (J^k)^{ȧ}_b = Σ_ċ (J^{k−1})^{ċ}_b · E_{ȧ ċ}
                            acc += &prev[ci][bi].dot(rep.gen(dotted[ai], dotted[ci]));
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        levels.push(next);
    }
    levels
}

/// Residual of the non-commutative Cayley-Hamilton identity
/// (J^{q+1})^{ȧ}_a = Σ_{k=1..q} (J^k)^{ȧ}_a · a_k(ℓ̂), with the Capelli
/// coefficients acting as block scalars from the right. Returns the largest
/// Frobenius residual over all (ȧ, a).
pub fn verify_cayley_hamilton(i_set: &IndexSet, rep: &Rep) -> Result<f64> {
    let ibar = i_set.complement();
    if ibar.is_empty() {
        return Err(Error::InvalidIndexSet(
            "Cayley-Hamilton needs a nonempty complement".into(),
        ));
    }
    let table = shifted_weights(&ibar, rep)?;
    let q = ibar.len();
    let lows: Vec<usize> = if i_set.is_empty() {
        // degenerate case: nothing to contract against; identity is vacuous
        return Ok(0.0);
    } else {
        i_set.members().to_vec()
    };
    let powers = mixed_powers(rep, ibar.members(), &lows, q + 1);

    // a_k(ℓ̂) as matrices
    let aops: Vec<CMat> = (1..=q)
        .map(|k| {
            table.scalar_operator(|ells| {
                let cs = rational::capelli_coeffs(
                    &ells.iter().map(|&x| rat_int(x)).collect::<Vec<_>>(),
                );
                C64::new(rat_to_f64(&cs[k - 1]), 0.0)
            })
        })
        .collect();

    let mut worst: f64 = 0.0;
    for ai in 0..q {
        for bi in 0..lows.len() {
            let mut rhs = CMat::zeros((rep.dim, rep.dim));
            for k in 1..=q {
                rhs += &powers[k - 1][ai][bi].dot(&aops[k - 1]);
            }
            let resid = &powers[q][ai][bi] - &rhs;
            worst = worst.max(linalg::fro_norm(&resid));
        }
    }
    Ok(worst)
}

/// The X-basis of the space spanned by the mixed powers, with its defining
/// verification residuals.
pub struct XBasis {
    pub q: usize,
    /// xs[k-1][ȧ_idx][a_idx] = (X^k)^{ȧ}_a.
    pub xs: Vec<Vec<Vec<CMat>>>,
    /// Residual of reconstructing (J^i) from the X's.
    pub reconstruction_residual: f64,
    /// Residual of the exchange rule ℓ̂_i X^k = X^k (δ_ik + ℓ̂_i).
    pub exchange_residual: f64,
}

/// Build the X-basis for gl(Ī) against the lower indices in I and verify the
/// reconstruction identity and the exchange rule.
pub fn x_basis(i_set: &IndexSet, rep: &Rep) -> Result<XBasis> {
    let ibar = i_set.complement();
    if ibar.is_empty() || i_set.is_empty() {
        return Err(Error::InvalidIndexSet(
            "x_basis needs both I and its complement nonempty".into(),
        ));
    }
    let q = ibar.len();
    let table = shifted_weights(&ibar, rep)?;
    for b in &table.blocks {
        assert!(
            b.ells.windows(2).all(|w| w[0] > w[1]),
            "shifted weights must be strictly decreasing within a block"
        );
    }
    let powers = mixed_powers(rep, ibar.members(), i_set.members(), q);

    // per block: X^k = Σ_i J^i · B_{ik}, B = A⁻¹ with A_{ki} = Δ_k ℓ_k^{i−1}
    let mut bops: Vec<Vec<CMat>> = vec![vec![CMat::zeros((rep.dim, rep.dim)); q]; q];
    for blk in &table.blocks {
        let mut a = CMat::zeros((q, q));
        for k in 0..q {
            let mut delta = 1.0;
            for l in 0..q {
                if l != k {
                    delta /= (blk.ells[k] - blk.ells[l]) as f64;
                }
            }
            for i in 0..q {
                a[(k, i)] = C64::new(delta * (blk.ells[k] as f64).powi(i as i32), 0.0);
            }
        }
        let b = linalg::inv(&a)?;
        for i in 0..q {
            for k in 0..q {
                if b[(i, k)].norm() > 1e-14 {
                    bops[i][k] = &bops[i][k] + &blk.projector.mapv(|x| x * b[(i, k)]);
                }
            }
        }
    }

    let na = q;
    let nb = i_set.len();
    let mut xs: Vec<Vec<Vec<CMat>>> = vec![vec![Vec::new(); na]; q];
    for k in 0..q {
        for ai in 0..na {
            for bi in 0..nb {
                let mut acc = CMat::zeros((rep.dim, rep.dim));
                for i in 0..q {
                    acc += &powers[i][ai][bi].dot(&bops[i][k]);
                }
                xs[k][ai].push(acc);
            }
        }
    }

    // reconstruction: J^i = Σ_k X^k · Δ_k(ℓ̂) ℓ̂_k^{i−1}
    let mut recon: f64 = 0.0;
    for i in 0..q {
        let dops: Vec<CMat> = (0..q)
            .map(|k| {
                table.scalar_operator(|ells| {
                    let mut delta = 1.0;
                    for l in 0..q {
                        if l != k {
                            delta /= (ells[k] - ells[l]) as f64;
                        }
                    }
                    C64::new(delta * (ells[k] as f64).powi(i as i32), 0.0)
                })
            })
            .collect();
        for ai in 0..na {
            for bi in 0..nb {
                let mut rhs = CMat::zeros((rep.dim, rep.dim));
                for k in 0..q {
                    rhs += &xs[k][ai][bi].dot(&dops[k]);
                }
                recon = recon.max(linalg::fro_norm(&(&powers[i][ai][bi] - &rhs)));
            }
        }
    }

    // exchange rule ℓ̂_i X^k = X^k (δ_ik + ℓ̂_i)
    let mut exch: f64 = 0.0;
    for i in 1..=q {
        let li = table.ell_operator(i);
        for k in 0..q {
            let shift = table.scalar_operator(|ells| {
                C64::new(ells[i - 1] as f64 + if i - 1 == k { 1.0 } else { 0.0 }, 0.0)
            });
            for ai in 0..na {
                for bi in 0..nb {
                    let lhs = li.dot(&xs[k][ai][bi]);
                    let rhs = xs[k][ai][bi].dot(&shift);
                    exch = exch.max(linalg::fro_norm(&(&lhs - &rhs)));
                }
            }
        }
    }

    Ok(XBasis {
        q,
        xs,
        reconstruction_residual: recon,
        exchange_residual: exch,
    })
}
