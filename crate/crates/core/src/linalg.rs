//! Dense complex matrix helpers shared by all modules.
//!
//! Operators are plain `ndarray` matrices of `Complex64`; the basis they act
//! on is always the deterministic Gelfand-Tsetlin order of [`crate::gtbasis`]
//! (or Kronecker products of it, leftmost factor = slowest index).

use crate::error::{Error, Result};
use ndarray::{s, Array1, Array2};
use ndarray_linalg::{Eig, SVD};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMat = Array2<C64>;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn eye(dim: usize) -> CMat {
    Array2::eye(dim)
}

pub fn zeros(dim: usize) -> CMat {
    Array2::zeros((dim, dim))
}

/// Kronecker product, left factor slowest.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let (ra, ca) = a.dim();
    let (rb, cb) = b.dim();
    let mut out = Array2::zeros((ra * rb, ca * cb));
    for i in 0..ra {
        for j in 0..ca {
            let aij = a[(i, j)];
            if aij == C64::new(0.0, 0.0) {
                continue;
            }
            let mut block = out.slice_mut(s![i * rb..(i + 1) * rb, j * cb..(j + 1) * cb]);
            block.assign(&b.mapv(|x| x * aij));
        }
    }
    out
}

/// n-fold Kronecker power.
pub fn kron_power(a: &CMat, n: usize) -> CMat {
    assert!(n >= 1);
    let mut out = a.clone();
    for _ in 1..n {
        out = kron(&out, a);
    }
    out
}

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a.dot(b) - b.dot(a)
}

pub fn fro_norm(a: &CMat) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// ‖[A,B]‖ / (‖A‖·‖B‖), with the convention 0/0 = 0.
pub fn rel_comm_norm(a: &CMat, b: &CMat) -> f64 {
    let na = fro_norm(a);
    let nb = fro_norm(b);
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    fro_norm(&commutator(a, b)) / (na * nb)
}

pub fn max_abs(a: &CMat) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// Swap operator P(u ⊗ v) = v ⊗ u on C^d ⊗ C^d.
pub fn permutation_matrix(d: usize) -> CMat {
    let mut p = zeros(d * d);
    for i in 0..d {
        for j in 0..d {
            p[(j * d + i, i * d + j)] = cr(1.0);
        }
    }
    p
}

/// Embed a one-site operator at tensor slot `site` (0-based, leftmost = 0)
/// of a chain of `len` sites with local dimension `d`.
pub fn embed_site(op: &CMat, site: usize, len: usize, d: usize) -> CMat {
    assert!(site < len);
    let left = d.pow(site as u32);
    let right = d.pow((len - site - 1) as u32);
    kron(&kron(&eye(left), op), &eye(right))
}

/// Embed a two-site operator acting on (slot i, slot j), i ≠ j, of a chain
/// of `len` sites with local dimension `d`. The operator's first tensor
/// factor lands on slot i, the second on slot j.
pub fn embed_two_site(op: &CMat, i: usize, j: usize, len: usize, d: usize) -> CMat {
    assert!(i < len && j < len && i != j);
    let dim = d.pow(len as u32);
    let mut out = zeros(dim);
    let stride = |site: usize| d.pow((len - site - 1) as u32);
    let si = stride(i);
    let sj = stride(j);
    for row in 0..dim {
        let ri = (row / si) % d;
        let rj = (row / sj) % d;
        let base_row = row - ri * si - rj * sj;
        for ci in 0..d {
            for cj in 0..d {
                let v = op[(ri * d + rj, ci * d + cj)];
                if v == C64::new(0.0, 0.0) {
                    continue;
                }
                let col = base_row + ci * si + cj * sj;
                out[(row, col)] += v;
            }
        }
    }
    out
}

/// Right eigenpairs of a general complex matrix.
pub fn eig(a: &CMat) -> Result<(Array1<C64>, CMat)> {
    let (vals, vecs) = a.eig()?;
    Ok((vals, vecs))
}

/// Spectrum only, sorted by (re, im).
pub fn eigenvalues_sorted(a: &CMat) -> Result<Vec<C64>> {
    let (vals, _) = a.eig()?;
    let mut v: Vec<C64> = vals.to_vec();
    v.sort_by(|x, y| {
        x.re.partial_cmp(&y.re)
            .unwrap()
            .then(x.im.partial_cmp(&y.im).unwrap())
    });
    Ok(v)
}

/// Orthonormal basis (columns) for the column span of `a`, truncated to
/// `rank` vectors via the singular value decomposition.
pub fn column_span_basis(a: &CMat, rank: usize) -> Result<CMat> {
    let (u, sv, _) = a.svd(true, false)?;
    let u = u.ok_or_else(|| Error::Linalg("svd returned no U".into()))?;
    if rank > 0 && sv.len() >= rank {
        let lead = sv[rank - 1];
        let next = if sv.len() > rank { sv[rank] } else { 0.0 };
        if lead < 1e-8 || next > 1e-6 * sv[0].max(1.0) {
            return Err(Error::Linalg(format!(
                "ill-separated singular values around rank {rank}: {lead:.3e} vs {next:.3e}"
            )));
        }
    }
    Ok(u.slice(s![.., 0..rank]).to_owned())
}

/// Solve A x = b for dense complex A.
pub fn solve(a: &CMat, b: &Array1<C64>) -> Result<Array1<C64>> {
    use ndarray_linalg::Solve;
    Ok(a.solve(b)?)
}

pub fn inv(a: &CMat) -> Result<CMat> {
    use ndarray_linalg::Inverse;
    Ok(a.inv()?)
}

pub fn dagger(a: &CMat) -> CMat {
    a.t().mapv(|x| x.conj())
}

/// Deterministic generic complex samples for residual sweeps: nonreal,
/// bounded away from the integer/half-integer lattice where Lax poles live.
pub fn generic_z_samples(count: usize, seed: u64) -> Vec<C64> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let re: f64 = rng.gen_range(-2.0..2.0);
            let im: f64 = rng.gen_range(0.15..1.1);
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            C64::new(re + 0.21, sign * im)
        })
        .collect()
}
