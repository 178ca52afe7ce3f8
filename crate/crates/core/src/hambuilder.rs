//! R-matrices intertwining two copies of a rectangular representation, and
//! the digamma nearest-neighbour Hamiltonian they generate.
//!
//! For a rectangular a×s highest weight the two-site module V⊗V is
//! multiplicity free; on each irreducible block the R-matrix is a ratio of
//! gamma functions of the tensor-product shifted weights Â. All argument
//! differences are integers, so the gammas merge into finite products of
//! linear factors and the Hamiltonian density reduces to exact harmonic
//! numbers — no special function is ever evaluated.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::gtbasis::{enumerate_patterns, HighestWeight, Rep};
use crate::laxfactory::{GammaProd, LinFactors};
use crate::linalg::{self, kron, CMat, C64};
use crate::qfactory::TwistConfig;
use crate::rational::{harish_chandra_casimirs, rat_int, rat_to_f64, Rat};
use crate::special::digamma_diff_int;
use crate::weights::spectral_blocks_from_casimirs;

/// Shape data of a rectangular weight: a rows of s columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RectangularShape {
    pub rows: usize,
    pub cols: i64,
}

impl RectangularShape {
    pub fn alpha(&self) -> i64 {
        self.cols - self.rows as i64
    }

    pub fn beta(&self) -> i64 {
        self.cols * self.rows as i64
    }
}

/// Verify the generalized rectangularity identity
/// Σ_c E_{cb} E_{ac} = α E_ab + β δ_ab with α = s − a, β = s·a,
/// and return the shape. Non-rectangular weights are rejected with the
/// first failing matrix entry named.
pub fn check_rectangular(rep: &Rep) -> Result<RectangularShape> {
    let lambda = rep.hw.lambda();
    let n = rep.n();
    let rows = lambda.iter().take_while(|&&l| l > 0).count();
    let s = if rows == 0 { 0 } else { lambda[0] };
    for (i, &l) in lambda.iter().enumerate() {
        let want = if i < rows { s } else { 0 };
        if l != want {
            return Err(Error::NotRectangular(format!(
                "λ_{} = {} breaks the a×s pattern (expected {})",
                i + 1,
                l,
                want
            )));
        }
    }
    let shape = RectangularShape { rows, cols: s };
    let alpha = shape.alpha() as f64;
    let beta = shape.beta() as f64;
    for a in 1..=n {
        for b in 1..=n {
            let mut lhs = CMat::zeros((rep.dim, rep.dim));
            for c in 1..=n {
                lhs += &rep.gen(c, b).dot(rep.gen(a, c));
            }
            let mut rhs = rep.gen(a, b).mapv(|x| x * alpha);
            if a == b {
                rhs += &linalg::eye(rep.dim).mapv(|x| x * beta);
            }
            let resid = linalg::fro_norm(&(&lhs - &rhs));
            if resid > 1e-10 * (1.0 + beta.abs()) {
                return Err(Error::NotRectangular(format!(
                    "quadratic identity fails at (a,b) = ({a},{b}): residual {resid:.3e}"
                )));
            }
        }
    }
    Ok(shape)
}

/// One irreducible block of V⊗V.
#[derive(Clone)]
pub struct TensorBlock {
    /// gl(n) highest weight of the block.
    pub lambda: Vec<i64>,
    /// Tensor shifted weights Â_k = Λ_k − k + 1, k = 1..2a (zero-padded Λ).
    pub aa: Vec<i64>,
    pub dim: usize,
    pub projector: CMat,
}

/// Multiplicity-free resolution of V⊗V with shifted-weight data.
pub struct TensorWeightTable {
    pub shape: RectangularShape,
    pub blocks: Vec<TensorBlock>,
    pub dim: usize,
}

/// Weight multiplicities of V(λ) from its GT patterns.
fn weight_multiplicities(hw: &HighestWeight) -> BTreeMap<Vec<i64>, i64> {
    let mut out = BTreeMap::new();
    for p in enumerate_patterns(hw) {
        *out.entry(p.weight()).or_insert(0) += 1;
    }
    out
}

/// Decompose the character of V⊗V into irreducibles by repeatedly peeling
/// the lexicographically largest dominant weight. Exact integer arithmetic.
fn tensor_square_content(hw: &HighestWeight) -> Result<Vec<(Vec<i64>, usize)>> {
    let base = weight_multiplicities(hw);
    let mut prod: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    for (w1, m1) in &base {
        for (w2, m2) in &base {
            let w: Vec<i64> = w1.iter().zip(w2).map(|(a, b)| a + b).collect();
            *prod.entry(w).or_insert(0) += m1 * m2;
        }
    }
    let mut content = Vec::new();
    while let Some((w, &m)) = prod
        .iter()
        .filter(|(_, &m)| m != 0)
        .max_by(|a, b| a.0.cmp(b.0))
    {
        let w = w.clone();
        if m < 0 || w.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::DegenerateBlocks(format!(
                "character peeling produced invalid leading term {w:?} × {m}"
            )));
        }
        let hw_b = HighestWeight::new(w.clone())?;
        let table = weight_multiplicities(&hw_b);
        for (wt, cnt) in table {
            *prod.entry(wt).or_insert(0) -= m * cnt;
        }
        content.push((w, m as usize));
    }
    Ok(content)
}

/// Decompose V⊗V by joint diagonalization of the diagonal-action Casimirs
/// and attach the tensor shifted weights.
pub fn tensor_shifted_weights(rep: &Rep) -> Result<TensorWeightTable> {
    let shape = check_rectangular(rep)?;
    let n = rep.n();
    let content = tensor_square_content(&rep.hw)?;
    for (w, m) in &content {
        if *m != 1 {
            return Err(Error::DegenerateBlocks(format!(
                "multiplicity {m} for block {w:?} contradicts rectangularity"
            )));
        }
    }

    let two_a = 2 * shape.rows;
    let dim2 = rep.dim * rep.dim;
    let blocks = if content.len() == 1 {
        // 1-dimensional module (or any single-block case): trivial projector
        let (w, _) = &content[0];
        let dim_b = dim2;
        vec![(w.clone(), dim_b, linalg::eye(dim2))]
    } else {
        // candidates with their exact Casimir tuples
        let mut cands: Vec<(Vec<i64>, usize)> = Vec::new();
        let mut tuples: Vec<Vec<Rat>> = Vec::new();
        for (w, _) in &content {
            let hw_b = HighestWeight::new(w.clone())?;
            let dim_b = enumerate_patterns(&hw_b).len();
            let ells: Vec<Rat> = w
                .iter()
                .enumerate()
                .map(|(i, &l)| rat_int(l - i as i64))
                .collect();
            cands.push((w.clone(), dim_b));
            tuples.push(harish_chandra_casimirs(&ells, n));
        }
        // diagonal-action generators and their cyclic Casimirs
        let delta_gen = |a: usize, b: usize| -> CMat {
            kron(rep.gen(a, b), &linalg::eye(rep.dim))
                + kron(&linalg::eye(rep.dim), rep.gen(a, b))
        };
        let casimirs: Vec<CMat> = (1..=n)
            .map(|k| {
                let w: Vec<Vec<CMat>> = (0..n)
                    .map(|x| (0..n).map(|y| delta_gen(y + 1, x + 1)).collect())
                    .collect();
                let mut pw = w.clone();
                for _ in 1..k {
                    pw = crate::gtbasis::opmat_mul(&pw, &w, dim2);
                }
                let mut out = CMat::zeros((dim2, dim2));
                for x in 0..n {
                    out += &pw[x][x];
                }
                out
            })
            .collect();
        let wb = spectral_blocks_from_casimirs(&casimirs, &cands, &tuples)?;
        wb.into_iter()
            .map(|b| (b.mu, b.dim, b.projector))
            .collect()
    };

    let blocks = blocks
        .into_iter()
        .map(|(w, dim_b, projector)| {
            let aa: Vec<i64> = (0..two_a)
                .map(|k| {
                    let lam_k = if k < w.len() { w[k] } else { 0 };
                    lam_k - k as i64
                })
                .collect();
            TensorBlock {
                lambda: w,
                aa,
                dim: dim_b,
                projector,
            }
        })
        .collect();

    Ok(TensorWeightTable {
        shape,
        blocks,
        dim: dim2,
    })
}

impl TensorWeightTable {
    /// The pair (u_k, v_k) = ((Â_k−Â_k̄+1)/2, (Â_k+Â_k̄+1)/2 + 2a − k) of
    /// integer gamma arguments for block `b` and k = 1..a.
    fn uv(&self, b: &TensorBlock) -> Vec<(i64, i64)> {
        let a = self.shape.rows;
        (1..=a)
            .map(|k| {
                let kb = 2 * a - k + 1;
                let ak = b.aa[k - 1];
                let akb = b.aa[kb - 1];
                let diff = ak - akb + 1;
                let sum = ak + akb + 1;
                assert!(
                    diff % 2 == 0 && sum % 2 == 0,
                    "non-integer gamma argument for block {:?}",
                    b.lambda
                );
                (diff / 2, sum / 2 + 2 * a as i64 - k as i64)
            })
            .collect()
    }
}

/// Symbolic per-block factor lists of the unitarity-normalized R-matrix.
pub struct RLambda {
    pub table: TensorWeightTable,
    factors: Vec<LinFactors>,
}

impl RLambda {
    pub fn build(rep: &Rep) -> Result<RLambda> {
        let table = tensor_shifted_weights(rep)?;
        let mut factors = Vec::new();
        for b in &table.blocks {
            let mut g = GammaProd::new();
            for (u, v) in table.uv(b) {
                g.mul(2 * u, 1);
                g.mul(2 - 2 * u, 1);
                g.mul(2 * v, -1);
                g.mul(2 - 2 * v, -1);
            }
            factors.push(g.reduce()?);
        }
        Ok(RLambda { table, factors })
    }

    pub fn eval(&self, z: C64) -> Result<CMat> {
        let mut out = CMat::zeros((self.table.dim, self.table.dim));
        for (b, f) in self.table.blocks.iter().zip(&self.factors) {
            let v = f.eval(z)?;
            out += &b.projector.mapv(|x| x * v);
        }
        Ok(out)
    }

    pub fn block_value(&self, b: usize, z: C64) -> Result<C64> {
        self.factors[b].eval(z)
    }
}

/// R_ΛΛ(z) on V⊗V with the unitarity normalization.
pub fn r_lambda_lambda(z: C64, rep: &Rep) -> Result<CMat> {
    RLambda::build(rep)?.eval(z)
}

/// Block eigenvalues of the Hamiltonian density,
/// h = −2 Σ_k [ψ((Â_k−Â_k̄+1)/2) − ψ(s + a − k + 1)], as exact rationals.
pub fn density_block_values(table: &TensorWeightTable) -> Vec<Rat> {
    table
        .blocks
        .iter()
        .map(|b| {
            let mut acc = Rat::from_integer(0.into());
            for (u, v) in table.uv(b) {
                assert!(u >= 1 && v >= 1, "divergent digamma argument");
                acc -= digamma_diff_int(u as u64, v as u64) * rat_int(2);
            }
            acc
        })
        .collect()
}

/// Nearest-neighbour Hamiltonian density ℋ = −d/dz log R|₀ on V⊗V,
/// assembled from exact harmonic-number differences per block.
pub fn hamiltonian_density(rep: &Rep) -> Result<CMat> {
    let table = tensor_shifted_weights(rep)?;
    let values = density_block_values(&table);
    let mut out = CMat::zeros((table.dim, table.dim));
    for (b, v) in table.blocks.iter().zip(&values) {
        out += &b.projector.mapv(|x| x * C64::new(rat_to_f64(v), 0.0));
    }
    Ok(out)
}

/// Twist operator e^{i Σ_a φ_a E_aa} on one site.
fn site_twist(rep: &Rep, twist: &TwistConfig) -> CMat {
    let mut diag = CMat::zeros((rep.dim, rep.dim));
    for (i, p) in rep.patterns.iter().enumerate() {
        let w = p.weight();
        let mut phase = C64::new(0.0, 0.0);
        for a in 0..rep.n() {
            phase += twist.phi()[a] * w[a] as f64;
        }
        diag[(i, i)] = (C64::i() * phase).exp();
    }
    diag
}

/// Total Hamiltonian Σ_i ℋ_{i,i+1} with the twisted closure
/// ℋ_{L,1} → G ℋ_{L,1} G⁻¹, G = e^{i Σ_a φ_a E_aa(L)}.
pub fn hamiltonian_total(rep: &Rep, len: usize, twist: &TwistConfig) -> Result<CMat> {
    assert!(len >= 2);
    let shape = check_rectangular(rep)?;
    let _ = shape;
    let h2 = hamiltonian_density(rep)?;
    let d = rep.dim;
    let full = d.pow(len as u32);
    let mut out = CMat::zeros((full, full));
    for i in 0..len - 1 {
        out += &linalg::embed_two_site(&h2, i, i + 1, len, d);
    }
    // boundary bond, conjugated by the twist at the closing site; the slot
    // placement is the one that commutes with the Q-operator family
    let g = site_twist(rep, twist);
    let ginv = linalg::inv(&g)?;
    let boundary = {
        let gg = kron(&linalg::eye(d), &g);
        let ggi = kron(&linalg::eye(d), &ginv);
        gg.dot(&h2).dot(&ggi)
    };
    out += &linalg::embed_two_site(&boundary, len - 1, 0, len, d);
    Ok(out)
}

/// Residual of the tensor-product-graph construction against P·R(z), after
/// matching one overall scalar on the top block.
pub fn tpg_crosscheck(z: C64, rep: &Rep) -> Result<f64> {
    let r = RLambda::build(rep)?;
    let table = &r.table;
    let n = rep.n();
    let nblocks = table.blocks.len();

    // adjacency: one box moved, Σ_k |Â_k − Â'_k| = 2 over padded rows
    let pad = |b: &TensorBlock| -> Vec<i64> {
        (0..n).map(|k| if k < b.lambda.len() { b.lambda[k] } else { 0 }).collect()
    };
    let adjacent = |x: &TensorBlock, y: &TensorBlock| -> bool {
        let px = pad(x);
        let py = pad(y);
        px.iter().zip(&py).map(|(a, b)| (a - b).abs()).sum::<i64>() == 2
            && px.iter().zip(&py).filter(|(a, b)| a != b).count() == 2
    };

    // quadratic Casimir per block from the exact shifted weights
    let c2: Vec<f64> = table
        .blocks
        .iter()
        .map(|b| {
            let ells: Vec<Rat> = b
                .lambda
                .iter()
                .enumerate()
                .map(|(i, &l)| rat_int(l - i as i64))
                .chain((b.lambda.len()..n).map(|i| rat_int(-(i as i64))))
                .collect();
            rat_to_f64(&harish_chandra_casimirs(&ells, 2)[1])
        })
        .collect();

    // BFS from the top block with coefficient 1
    let mut rho: Vec<Option<C64>> = vec![None; nblocks];
    rho[0] = Some(C64::new(1.0, 0.0));
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for j in 0..nblocks {
            if i == j || !adjacent(&table.blocks[i], &table.blocks[j]) {
                continue;
            }
            let delta = 0.25 * (c2[i] - c2[j]);
            let ratio = (delta - z) / (delta + z);
            let val = rho[i].unwrap() * ratio;
            match rho[j] {
                Some(existing) => {
                    if (existing - val).norm() > 1e-9 * (1.0 + existing.norm()) {
                        return Err(Error::DegenerateBlocks(
                            "inconsistent tensor-product-graph recursion".into(),
                        ));
                    }
                }
                None => {
                    rho[j] = Some(val);
                    queue.push_back(j);
                }
            }
        }
    }
    if rho.iter().any(|x| x.is_none()) {
        return Err(Error::DegenerateBlocks(
            "tensor product graph is not connected".into(),
        ));
    }

    let mut tpg = CMat::zeros((table.dim, table.dim));
    for (b, val) in table.blocks.iter().zip(&rho) {
        tpg += &b.projector.mapv(|x| x * val.unwrap());
    }
    let perm = linalg::permutation_matrix(rep.dim);
    let pr = perm.dot(&r.eval(z)?);
    // scalar match on the top block via traces
    let p0 = &table.blocks[0].projector;
    let t_tpg = tpg.dot(p0).diag().sum();
    let t_pr = pr.dot(p0).diag().sum();
    let c = t_tpg / t_pr;
    let resid = linalg::fro_norm(&(&tpg - &pr.mapv(|x| x * c))) / linalg::fro_norm(&tpg);
    Ok(resid)
}
