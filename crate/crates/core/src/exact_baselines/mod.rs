//! Exact results for small chains, used as oracles for the scaling constants.
//!
//! - [`free_fermion`]: XX block entropies from correlation matrices.
//! - [`eigen`]: dense and Lanczos ground states of [`PauliSum`] operators.
//! - [`density`]: reduced density matrices, von Neumann entropy, concurrence.
//!
//! This module ties them to [`SpinModel`] chains: build the Hamiltonian,
//! pick a well-defined ground state, and evaluate block entropies and
//! nearest-neighbour concurrence.

pub mod density;
pub mod eigen;
pub mod free_fermion;

pub use density::{
    block_entropy_ed, concurrence, reduced_density_matrix, ConcurrenceResult, ReducedDensityMatrix,
};
pub use free_fermion::{
    entropy_from_correlations, ring_correlation_matrix, ring_ground_filling, xx_block_entropy,
    xx_correlation_matrix, xx_entropy_slope, FermionCorrelationMatrix, Filling, RingFilling,
};

use crate::entanglement_scaling::EntropyValue;
use crate::error::{invalid, Error, Result};
use crate::lmg::{self, PairSet};
use crate::models::SpinModel;
use crate::pauli::{Pauli, PauliSum};

use eigen::{LanczosOptions, DENSE_FALLBACK_LIMIT};

/// Largest chain handled by exact diagonalization.
pub const MAX_SITES: usize = 14;

/// Default cap on the number of `f64` values the eigensolver may hold.
pub const DEFAULT_MEMORY_CAP: usize = 1 << 26;

/// Relative window within which eigenvalues count as one level.
pub const DEGENERACY_TOLERANCE: f64 = 1e-8;

const MAX_DEGENERACY: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    Ring,
    Open,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChainSpec {
    pub model: SpinModel,
    pub sites: usize,
    pub boundary: Boundary,
    pub memory_cap: usize,
}

impl ChainSpec {
    pub fn new(model: SpinModel, sites: usize, boundary: Boundary) -> Result<Self> {
        let spec = ChainSpec {
            model,
            sites,
            boundary,
            memory_cap: DEFAULT_MEMORY_CAP,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn ring(model: SpinModel, sites: usize) -> Result<Self> {
        Self::new(model, sites, Boundary::Ring)
    }

    pub fn with_memory_cap(mut self, cap: usize) -> Self {
        self.memory_cap = cap;
        self
    }

    pub fn dim(&self) -> usize {
        1 << self.sites
    }

    /// Upper bound on the `f64` values held while finding the ground state.
    pub fn memory_estimate(&self) -> usize {
        let dim = self.dim();
        if dim <= DENSE_FALLBACK_LIMIT {
            dim * dim
        } else {
            (LanczosOptions::default().krylov_dim + MAX_DEGENERACY + 4) * dim
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(2..=MAX_SITES).contains(&self.sites) {
            return Err(invalid("N", format!("{} not in 2..={MAX_SITES}", self.sites)));
        }
        if !self.model.field().is_finite() {
            return Err(invalid("lambda", "not finite"));
        }
        if let SpinModel::LmgRegularized { sites, .. } = self.model {
            if sites != self.sites {
                return Err(invalid(
                    "N",
                    format!("LMG model has {sites} spins but the chain has {}", self.sites),
                ));
            }
        }
        let need = self.memory_estimate();
        if need > self.memory_cap {
            return Err(Error::MemoryCap {
                requested: need,
                cap: self.memory_cap,
            });
        }
        Ok(())
    }

    fn bonds(&self) -> Vec<(usize, usize)> {
        let n = self.sites;
        match self.boundary {
            // N = 2 keeps both (0,1) and (1,0): the closing bond is a second copy
            Boundary::Ring => (0..n).map(|i| (i, (i + 1) % n)).collect(),
            Boundary::Open => (0..n - 1).map(|i| (i, i + 1)).collect(),
        }
    }
}

/// Hamiltonian of the chain with the sign conventions of [`SpinModel`].
pub fn hamiltonian(spec: &ChainSpec) -> Result<PauliSum> {
    spec.validate()?;
    let n = spec.sites;
    let bonds = spec.bonds();
    let mut h = PauliSum::new(n);
    let pair = |h: &mut PauliSum, c: f64, p: Pauli| {
        for &(i, j) in &bonds {
            h.add(c, &[(i, p), (j, p)]);
        }
    };
    let on_site = |h: &mut PauliSum, c: f64, p: Pauli| {
        for i in 0..n {
            h.add(c, &[(i, p)]);
        }
    };
    match spec.model {
        SpinModel::TransverseIsing { field } => {
            pair(&mut h, -1.0, Pauli::Z);
            on_site(&mut h, -field, Pauli::X);
        }
        SpinModel::Xy { anisotropy, field } => {
            pair(&mut h, -(1.0 + anisotropy) / 2.0, Pauli::X);
            pair(&mut h, -(1.0 - anisotropy) / 2.0, Pauli::Y);
            on_site(&mut h, -field, Pauli::Z);
        }
        SpinModel::Xx { field } => {
            pair(&mut h, -1.0, Pauli::X);
            pair(&mut h, -1.0, Pauli::Y);
            on_site(&mut h, field, Pauli::Z);
        }
        SpinModel::Xxx { field } => {
            for p in [Pauli::X, Pauli::Y, Pauli::Z] {
                pair(&mut h, 1.0, p);
            }
            on_site(&mut h, field, Pauli::Z);
        }
        SpinModel::Xxz { delta, field } => {
            pair(&mut h, 1.0, Pauli::X);
            pair(&mut h, 1.0, Pauli::Y);
            pair(&mut h, delta, Pauli::Z);
            on_site(&mut h, field, Pauli::Z);
        }
        SpinModel::LmgRegularized { field, .. } => {
            let pairs = match spec.boundary {
                Boundary::Ring => PairSet::Ring,
                Boundary::Open => PairSet::Open,
            };
            h = lmg::regularized_pauli(n, field, pairs);
        }
    }
    Ok(h)
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroundState {
    pub energy: f64,
    /// Normalized, even under the model's spin-flip parity when the ground
    /// level is degenerate, with its largest component positive.
    pub vector: Vec<f64>,
    pub degeneracy: usize,
    pub sites: usize,
}

/// `∏σˣ` for the transverse Ising chain, `∏σᶻ` for the rest.
fn apply_parity(model: &SpinModel, v: &[f64]) -> Vec<f64> {
    match model {
        SpinModel::TransverseIsing { .. } => {
            let all = v.len() - 1;
            (0..v.len()).map(|b| v[b ^ all]).collect()
        }
        _ => v
            .iter()
            .enumerate()
            .map(|(b, x)| if b.count_ones() % 2 == 0 { *x } else { -*x })
            .collect(),
    }
}

fn normalize(v: &mut [f64]) -> f64 {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= n);
    n
}

fn fix_sign(v: &mut [f64]) {
    let mut pivot = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[pivot].abs() + 1e-12 {
            pivot = i;
        }
    }
    if v[pivot] < 0.0 {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

/// Lowest eigenvector of the chain Hamiltonian.
///
/// For a degenerate ground level the even-parity combination is returned,
/// taken from the level vector with the largest even component.
pub fn ground_state(spec: &ChainSpec) -> Result<GroundState> {
    let h = hamiltonian(spec)?;
    let level = eigen::lowest_level(&h, DEGENERACY_TOLERANCE, MAX_DEGENERACY)?;
    let degeneracy = level.vectors.len();
    let mut vector = if degeneracy == 1 {
        level.vectors.into_iter().next().expect("one vector")
    } else {
        level
            .vectors
            .iter()
            .map(|v| {
                let p = apply_parity(&spec.model, v);
                v.iter().zip(&p).map(|(a, b)| 0.5 * (a + b)).collect::<Vec<f64>>()
            })
            .max_by(|a, b| {
                let na: f64 = a.iter().map(|x| x * x).sum();
                let nb: f64 = b.iter().map(|x| x * x).sum();
                na.total_cmp(&nb)
            })
            .filter(|v| v.iter().map(|x| x * x).sum::<f64>() > 1e-6)
            .unwrap_or_else(|| level.vectors[0].clone())
    };
    normalize(&mut vector);
    fix_sign(&mut vector);
    let mut hv = vec![0.0; vector.len()];
    h.apply(&vector, &mut hv);
    let energy = vector.iter().zip(&hv).map(|(a, b)| a * b).sum();
    Ok(GroundState {
        energy,
        vector,
        degeneracy,
        sites: spec.sites,
    })
}

/// von Neumann entropy of the first `l` sites of the ground state.
pub fn ground_block_entropy(spec: &ChainSpec, l: usize) -> Result<EntropyValue> {
    let gs = ground_state(spec)?;
    let block: Vec<usize> = (0..l).collect();
    block_entropy_ed(&gs.vector, gs.sites, &block)
}

/// Concurrence of sites 0 and 1 in the ground state.
pub fn nn_concurrence(spec: &ChainSpec) -> Result<ConcurrenceResult> {
    let gs = ground_state(spec)?;
    let rho = reduced_density_matrix(&gs.vector, gs.sites, &[0, 1])?;
    concurrence(&rho)
}

/// Rows `(N, λ, C)` of nearest-neighbour concurrence on rings.
pub fn concurrence_sweep(
    model: SpinModel,
    sizes: &[usize],
    fields: &[f64],
) -> Result<Vec<(usize, f64, f64)>> {
    let mut rows = Vec::with_capacity(sizes.len() * fields.len());
    for &n in sizes {
        for &field in fields {
            let spec = ChainSpec::ring(model.with_field(field), n)?;
            rows.push((n, field, nn_concurrence(&spec)?.value));
        }
    }
    Ok(rows)
}

/// Infinite XX chain entropy at each block size, `(L, S)` in bits.
pub fn xx_exact_curve(ls: &[usize], field: f64) -> Result<Vec<(usize, f64)>> {
    ls.iter()
        .map(|&l| Ok((l, xx_block_entropy(l, field)?.value)))
        .collect()
}
