use nalgebra::{DMatrix, Matrix4, SymmetricEigen};

use crate::entanglement_scaling::EntropyValue;
use crate::error::{invalid, Error, Result};

/// Tolerance on trace, symmetry and negative eigenvalues of a density matrix.
pub const DENSITY_TOLERANCE: f64 = 1e-12;

/// Reduced state of the listed sites. Local basis index has `sites[k]` in bit `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedDensityMatrix {
    pub matrix: DMatrix<f64>,
    pub sites: Vec<usize>,
}

impl ReducedDensityMatrix {
    pub fn new(matrix: DMatrix<f64>, sites: Vec<usize>) -> Result<Self> {
        let rho = ReducedDensityMatrix { matrix, sites };
        rho.validate()?;
        Ok(rho)
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        SymmetricEigen::new(self.matrix.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        let d = 1usize << self.sites.len();
        let malformed = |reason: String| Error::Malformed {
            what: "density matrix",
            reason,
        };
        if self.matrix.shape() != (d, d) {
            return Err(malformed(format!(
                "shape {:?} for {} sites",
                self.matrix.shape(),
                self.sites.len()
            )));
        }
        let asym = (&self.matrix - self.matrix.transpose()).amax();
        if asym > DENSITY_TOLERANCE {
            return Err(malformed(format!("not symmetric (residual {asym:e})")));
        }
        if (self.trace() - 1.0).abs() > DENSITY_TOLERANCE {
            return Err(malformed(format!("trace {}", self.trace())));
        }
        let min = self.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if min < -DENSITY_TOLERANCE {
            return Err(malformed(format!("negative eigenvalue {min:e}")));
        }
        Ok(())
    }
}

fn check_state(state: &[f64], n_sites: usize) -> Result<()> {
    if state.len() != 1usize << n_sites {
        return Err(invalid(
            "state",
            format!("length {} for {} sites", state.len(), n_sites),
        ));
    }
    let norm: f64 = state.iter().map(|x| x * x).sum();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(invalid("state", format!("not normalized (norm² = {norm})")));
    }
    Ok(())
}

fn check_block(block: &[usize], n_sites: usize) -> Result<()> {
    if block.is_empty() {
        return Err(invalid("block", "empty"));
    }
    let mut seen = 0u64;
    for &s in block {
        if s >= n_sites {
            return Err(invalid("block", format!("site {s} outside chain of {n_sites}")));
        }
        if seen & (1 << s) != 0 {
            return Err(invalid("block", format!("site {s} repeated")));
        }
        seen |= 1 << s;
    }
    Ok(())
}

/// The pure state reshaped as a `2^|A| × 2^|B|` matrix.
fn bipartition(state: &[f64], n_sites: usize, block: &[usize]) -> DMatrix<f64> {
    let rest: Vec<usize> = (0..n_sites).filter(|s| !block.contains(s)).collect();
    let mut psi = DMatrix::zeros(1 << block.len(), 1 << rest.len());
    for (b, &amp) in state.iter().enumerate() {
        let local = |sites: &[usize]| {
            sites
                .iter()
                .enumerate()
                .fold(0usize, |acc, (k, &s)| acc | (((b >> s) & 1) << k))
        };
        psi[(local(block), local(&rest))] = amp;
    }
    psi
}

pub fn reduced_density_matrix(
    state: &[f64],
    n_sites: usize,
    block: &[usize],
) -> Result<ReducedDensityMatrix> {
    check_state(state, n_sites)?;
    check_block(block, n_sites)?;
    let psi = bipartition(state, n_sites, block);
    let rho = &psi * psi.transpose();
    // symmetrize away rounding in the product
    let rho = (&rho + rho.transpose()) * 0.5;
    ReducedDensityMatrix::new(rho, block.to_vec())
}

pub(crate) fn entropy_bits(probabilities: impl IntoIterator<Item = f64>) -> f64 {
    probabilities
        .into_iter()
        .filter(|p| *p > 0.0)
        .map(|p| -p * p.log2())
        .sum()
}

/// von Neumann entropy `-Tr ρ_A log₂ ρ_A` of a proper block of a pure state.
pub fn block_entropy_ed(state: &[f64], n_sites: usize, block: &[usize]) -> Result<EntropyValue> {
    check_state(state, n_sites)?;
    check_block(block, n_sites)?;
    if block.len() == n_sites {
        return Err(invalid("block", "must be a proper subset of the chain"));
    }
    let psi = bipartition(state, n_sites, block);
    let singular = psi.singular_values();
    Ok(EntropyValue::bits(entropy_bits(singular.iter().map(|s| s * s))))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConcurrenceResult {
    pub sites: (usize, usize),
    pub value: f64,
}

/// Wootters concurrence `max(0, λ₁ - λ₂ - λ₃ - λ₄)` where `λᵢ` are the
/// decreasing square roots of the eigenvalues of `√ρ ρ̃ √ρ`,
/// `ρ̃ = (σʸ⊗σʸ) ρ* (σʸ⊗σʸ)`.
pub fn concurrence(rho: &ReducedDensityMatrix) -> Result<ConcurrenceResult> {
    if rho.sites.len() != 2 {
        return Err(invalid(
            "rho",
            format!("need a two-site state, got {} sites", rho.sites.len()),
        ));
    }
    rho.validate()?;
    let r = Matrix4::from_fn(|i, j| rho.matrix[(i, j)]);
    #[rustfmt::skip]
    let yy = Matrix4::new(
        0.0, 0.0, 0.0, -1.0,
        0.0, 0.0, 1.0, 0.0,
        0.0, 1.0, 0.0, 0.0,
        -1.0, 0.0, 0.0, 0.0,
    );
    // real ρ: ρ* = ρ
    let flipped = yy * r * yy;
    let eig = SymmetricEigen::new(r);
    let sqrt_diag = eig.eigenvalues.map(|v| v.max(0.0).sqrt());
    let sqrt_rho = eig.eigenvectors * Matrix4::from_diagonal(&sqrt_diag) * eig.eigenvectors.transpose();
    let m = sqrt_rho * flipped * sqrt_rho;
    let m = (m + m.transpose()) * 0.5;
    let mut lambdas: Vec<f64> = SymmetricEigen::new(m)
        .eigenvalues
        .iter()
        .map(|v| v.max(0.0).sqrt())
        .collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    let value = (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0);
    Ok(ConcurrenceResult {
        sites: (rho.sites[0], rho.sites[1]),
        value,
    })
}
