//! Lowest eigenpairs of real symmetric operators.
//!
//! Small problems go through a dense symmetric eigendecomposition. Larger ones
//! use Lanczos with full reorthogonalization and explicit restarts; further
//! eigenpairs are found by deflating the ones already converged.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::pauli::PauliSum;

/// Dimension up to which [`lowest_eigenpairs`] diagonalizes densely.
pub const DENSE_LIMIT: usize = 1 << 8;

/// Largest dimension the dense fallback will attempt.
pub const DENSE_FALLBACK_LIMIT: usize = 1 << 12;

/// Residual norm `‖Hx - θx‖` required of a Lanczos eigenpair.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct Eigenpair {
    pub value: f64,
    pub vector: Vec<f64>,
}

#[derive(Clone, Copy, Debug)]
pub struct LanczosOptions {
    pub krylov_dim: usize,
    pub max_restarts: usize,
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        LanczosOptions {
            krylov_dim: 120,
            max_restarts: 60,
            tolerance: RESIDUAL_TOLERANCE,
            seed: 0x5eed,
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    y.iter_mut().zip(x).for_each(|(yi, xi)| *yi += alpha * xi);
}

fn project_out(v: &mut [f64], basis: &[Vec<f64>]) {
    for b in basis {
        let c = dot(b, v);
        axpy(-c, b, v);
    }
}

/// Full spectrum, ascending, with eigenvectors as columns.
pub fn dense_spectrum(h: &PauliSum) -> (Vec<f64>, DMatrix<f64>) {
    sorted_eigen(h.to_dense())
}

pub(crate) fn sorted_eigen(m: DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let eig = SymmetricEigen::new(m);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(eig.eigenvectors.nrows(), order.len(), |r, c| {
        eig.eigenvectors[(r, order[c])]
    });
    (values, vectors)
}

/// Lowest eigenpair of `h` restricted to the orthogonal complement of
/// `deflate` (which must be orthonormal).
pub fn lanczos_lowest(h: &PauliSum, deflate: &[Vec<f64>], opts: &LanczosOptions) -> Result<Eigenpair> {
    let dim = h.dim();
    let available = dim.saturating_sub(deflate.len());
    if available == 0 {
        return Err(Error::Malformed {
            what: "deflation set",
            reason: "spans the whole space".into(),
        });
    }
    let m = opts.krylov_dim.min(available).max(1);

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(deflate.len() as u64);
    let mut start: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect();
    project_out(&mut start, deflate);
    let n0 = norm(&start);
    start.iter_mut().for_each(|x| *x /= n0);

    let mut w = vec![0.0; dim];
    let mut last_residual = f64::INFINITY;
    for _restart in 0..opts.max_restarts {
        let mut basis: Vec<Vec<f64>> = vec![start.clone()];
        let mut alphas = Vec::with_capacity(m);
        let mut betas: Vec<f64> = Vec::with_capacity(m);
        for j in 0..m {
            h.apply(&basis[j], &mut w);
            project_out(&mut w, deflate);
            let alpha = dot(&w, &basis[j]);
            alphas.push(alpha);
            // two passes of Gram–Schmidt against the whole basis
            for _ in 0..2 {
                project_out(&mut w, &basis);
                project_out(&mut w, deflate);
            }
            let beta = norm(&w);
            if j + 1 == m || beta < 1e-12 {
                break;
            }
            betas.push(beta);
            basis.push(w.iter().map(|x| x / beta).collect());
        }

        let k = alphas.len();
        let t = DMatrix::from_fn(k, k, |r, c| {
            if r == c {
                alphas[r]
            } else if r + 1 == c {
                betas[r]
            } else if c + 1 == r {
                betas[c]
            } else {
                0.0
            }
        });
        let (values, vectors) = sorted_eigen(t);
        let theta = values[0];
        let mut x = vec![0.0; dim];
        for (i, b) in basis.iter().take(k).enumerate() {
            axpy(vectors[(i, 0)], b, &mut x);
        }
        project_out(&mut x, deflate);
        let nx = norm(&x);
        x.iter_mut().for_each(|v| *v /= nx);

        h.apply(&x, &mut w);
        project_out(&mut w, deflate);
        axpy(-theta, &x, &mut w);
        last_residual = norm(&w);
        if last_residual <= opts.tolerance {
            let value = {
                h.apply(&x, &mut w);
                dot(&x, &w)
            };
            return Ok(Eigenpair { value, vector: x });
        }
        start = x;
    }
    Err(Error::EigensolverNonConvergence {
        residual: last_residual,
        iterations: opts.max_restarts,
    })
}

/// Lowest eigenvalue and an orthonormal basis of its eigenspace.
#[derive(Clone, Debug, PartialEq)]
pub struct LowestLevel {
    pub energy: f64,
    pub vectors: Vec<Vec<f64>>,
}

/// Eigenvalues within `tolerance·max(1, |E₀|)` of the lowest are treated as
/// degenerate.
pub fn lowest_level(h: &PauliSum, tolerance: f64, max_degeneracy: usize) -> Result<LowestLevel> {
    if h.dim() <= DENSE_LIMIT {
        return Ok(dense_lowest_level(h, tolerance, max_degeneracy));
    }
    match lanczos_lowest_level(h, tolerance, max_degeneracy) {
        Ok(level) => Ok(level),
        Err(Error::EigensolverNonConvergence { .. }) if h.dim() <= DENSE_FALLBACK_LIMIT => {
            Ok(dense_lowest_level(h, tolerance, max_degeneracy))
        }
        Err(e) => Err(e),
    }
}

fn dense_lowest_level(h: &PauliSum, tolerance: f64, max_degeneracy: usize) -> LowestLevel {
    let (values, vectors) = dense_spectrum(h);
    let e0 = values[0];
    let window = tolerance * e0.abs().max(1.0);
    let count = values
        .iter()
        .take_while(|v| **v - e0 <= window)
        .count()
        .min(max_degeneracy);
    LowestLevel {
        energy: e0,
        vectors: (0..count)
            .map(|c| vectors.column(c).iter().copied().collect())
            .collect(),
    }
}

fn lanczos_lowest_level(h: &PauliSum, tolerance: f64, max_degeneracy: usize) -> Result<LowestLevel> {
    let opts = LanczosOptions::default();
    let first = lanczos_lowest(h, &[], &opts)?;
    let e0 = first.value;
    let window = tolerance * e0.abs().max(1.0);
    let mut vectors = vec![first.vector];
    while vectors.len() < max_degeneracy && vectors.len() < h.dim() {
        let next = lanczos_lowest(h, &vectors, &opts)?;
        if next.value - e0 > window {
            break;
        }
        vectors.push(next.vector);
    }
    Ok(LowestLevel { energy: e0, vectors })
}
