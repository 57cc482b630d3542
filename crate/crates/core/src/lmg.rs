//! Lipkin–Meshkov–Glick operators on `N ≤ 10` spins.
//!
//! The fully connected model
//!
//! ```text
//! H = (1/N) Σ_{i<j} (σˣσˣ + γ σʸσʸ) + λ Σ σᶻ
//! ```
//!
//! equals `(2/N)(S² - (Sᶻ)² - N/2) + 2λSᶻ` at `γ = 1`. Keeping only nearest
//! neighbour pairs gives the regularized form
//!
//! ```text
//! H_reg = J Σ_nn σ·σ - J Σ_nn σᶻσᶻ - 1 + λ Σ σᶻ,   J = 1/(2N)
//! ```
//!
//! which splits as `H1 + H2 - 1` with an XXX part
//! `H1 = J Σ σ·σ + (λ/2) Σ σᶻ` and an Ising part
//! `H2 = -J Σ σᶻσᶻ + (λ/2) Σ σᶻ`.

use nalgebra::{Complex, DMatrix};

use crate::entanglement_scaling::{max_block_size, max_entropy};
use crate::error::{invalid, Error, Result};
use crate::exact_baselines::eigen::sorted_eigen;
use crate::kzm_defects::{kz_length, lmg_kink_density};
use crate::models::QuenchModel;
use crate::pauli::{Pauli, PauliSum};

/// Largest `N` for dense operator work.
pub const MAX_SITES: usize = 10;

/// Bound on residuals of the operator identities.
pub const IDENTITY_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LmgSpec {
    pub sites: usize,
    pub anisotropy: f64,
    pub field: f64,
}

impl LmgSpec {
    pub fn new(sites: usize, anisotropy: f64, field: f64) -> Result<Self> {
        if !(2..=MAX_SITES).contains(&sites) {
            return Err(invalid("N", format!("{sites} not in 2..={MAX_SITES}")));
        }
        if !anisotropy.is_finite() || !field.is_finite() {
            return Err(invalid("lambda", "anisotropy and field must be finite"));
        }
        Ok(LmgSpec {
            sites,
            anisotropy,
            field,
        })
    }

    /// Isotropic model, `γ = 1`.
    pub fn isotropic(sites: usize, field: f64) -> Result<Self> {
        Self::new(sites, 1.0, field)
    }

    /// `J = 1/(2N)`.
    pub fn coupling(&self) -> f64 {
        1.0 / (2.0 * self.sites as f64)
    }

    fn require_isotropic(&self, what: &str) -> Result<()> {
        if self.anisotropy != 1.0 {
            return Err(Error::UnsupportedModel {
                model: format!("LMG with gamma = {}", self.anisotropy),
                reason: format!("{what} is only defined for gamma = 1"),
            });
        }
        Ok(())
    }
}

/// Which pairs the regularized sums run over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PairSet {
    /// `(i, i+1 mod N)` for every `i`; at `N = 2` the bond appears twice.
    #[default]
    Ring,
    /// `(i, i+1)` for `i < N-1`.
    Open,
}

impl PairSet {
    pub fn pairs(self, n: usize) -> Vec<(usize, usize)> {
        match self {
            PairSet::Ring => (0..n).map(|i| (i, (i + 1) % n)).collect(),
            PairSet::Open => (0..n - 1).map(|i| (i, i + 1)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    pub matrix: DMatrix<f64>,
    pub label: String,
}

impl OperatorMatrix {
    fn new(matrix: DMatrix<f64>, label: impl Into<String>) -> Self {
        OperatorMatrix {
            matrix,
            label: label.into(),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn hermiticity_residual(&self) -> f64 {
        (&self.matrix - self.matrix.transpose()).amax()
    }

    /// Largest entry of `self - other`.
    pub fn max_abs_diff(&self, other: &OperatorMatrix) -> f64 {
        (&self.matrix - &other.matrix).amax()
    }

    pub fn spectrum(&self) -> Vec<f64> {
        sorted_eigen(self.matrix.clone()).0
    }
}

fn field_terms(h: &mut PauliSum, n: usize, coeff: f64) {
    for i in 0..n {
        h.add(coeff, &[(i, Pauli::Z)]);
    }
}

fn pair_terms(h: &mut PauliSum, pairs: &[(usize, usize)], coeff: f64, ops: &[Pauli]) {
    for &(i, j) in pairs {
        for &p in ops {
            h.add(coeff, &[(i, p), (j, p)]);
        }
    }
}

const XYZ: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

/// `(1/N) Σ_{i<j} (σˣσˣ + γσʸσʸ) + λΣσᶻ`, term by term.
pub fn build_lmg_pairwise(spec: &LmgSpec) -> OperatorMatrix {
    let n = spec.sites;
    let mut h = PauliSum::new(n);
    let all_pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let c = 1.0 / n as f64;
    pair_terms(&mut h, &all_pairs, c, &[Pauli::X]);
    pair_terms(&mut h, &all_pairs, c * spec.anisotropy, &[Pauli::Y]);
    field_terms(&mut h, n, spec.field);
    OperatorMatrix::new(h.to_dense(), format!("H_pairwise(N={n})"))
}

type CMatrix = DMatrix<Complex<f64>>;

/// Collective spin components `Sᵃ = ½ Σ σᵢᵃ` as complex matrices.
fn collective_spin(n: usize) -> [CMatrix; 3] {
    let dim = 1usize << n;
    let zero = Complex::new(0.0, 0.0);
    let mut sx = CMatrix::from_element(dim, dim, zero);
    let mut sy = sx.clone();
    let mut sz = sx.clone();
    for b in 0..dim {
        for i in 0..n {
            let flipped = b ^ (1 << i);
            let up = (b >> i) & 1 == 0;
            // σˣ|b⟩ = |b'⟩, σʸ|↑⟩ = i|↓⟩, σʸ|↓⟩ = -i|↑⟩, σᶻ|↑⟩ = |↑⟩
            sx[(flipped, b)] += Complex::new(0.5, 0.0);
            sy[(flipped, b)] += Complex::new(0.0, if up { 0.5 } else { -0.5 });
            sz[(b, b)] += Complex::new(if up { 0.5 } else { -0.5 }, 0.0);
        }
    }
    [sx, sy, sz]
}

/// `(2/N)(S² - (Sᶻ)² - N/2) + 2λSᶻ` from collective spin operators.
pub fn build_lmg_collective(spec: &LmgSpec) -> Result<OperatorMatrix> {
    spec.require_isotropic("the collective form")?;
    let n = spec.sites;
    let [sx, sy, sz] = collective_spin(n);
    let s2 = &sx * &sx + &sy * &sy + &sz * &sz;
    let id = CMatrix::identity(1 << n, 1 << n);
    let nf = n as f64;
    let h = (s2 - &sz * &sz - id * Complex::new(nf / 2.0, 0.0)) * Complex::new(2.0 / nf, 0.0)
        + sz * Complex::new(2.0 * spec.field, 0.0);
    let imag = h.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if imag > IDENTITY_TOLERANCE {
        return Err(Error::Malformed {
            what: "collective Hamiltonian",
            reason: format!("imaginary part {imag:e}"),
        });
    }
    Ok(OperatorMatrix::new(
        h.map(|z| z.re),
        format!("H_collective(N={n})"),
    ))
}

/// Regularized Hamiltonian as a Pauli sum.
pub fn regularized_pauli(n: usize, field: f64, pairs: PairSet) -> PauliSum {
    let j = 1.0 / (2.0 * n as f64);
    let bonds = pairs.pairs(n);
    let mut h = PauliSum::new(n);
    pair_terms(&mut h, &bonds, j, &XYZ);
    pair_terms(&mut h, &bonds, -j, &[Pauli::Z]);
    h.add_identity(-1.0);
    field_terms(&mut h, n, field);
    h
}

/// `J Σ_nn σ·σ - J Σ_nn σᶻσᶻ - 1 + λΣσᶻ`.
pub fn build_regularized(spec: &LmgSpec, pairs: PairSet) -> Result<OperatorMatrix> {
    spec.require_isotropic("the regularized form")?;
    let h = regularized_pauli(spec.sites, spec.field, pairs);
    Ok(OperatorMatrix::new(
        h.to_dense(),
        format!("H_reg(N={})", spec.sites),
    ))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    /// XXX part `J Σ σ·σ + (λ/2) Σσᶻ`.
    pub h1: OperatorMatrix,
    /// Ising part `-J Σ σᶻσᶻ + (λ/2) Σσᶻ`.
    pub h2: OperatorMatrix,
    /// Coefficient of `Σσᶻ` in `h1`.
    pub h1_field: f64,
    /// Coefficient of `Σσᶻ` in `h2`.
    pub h2_field: f64,
}

pub fn decompose(spec: &LmgSpec, pairs: PairSet) -> Result<Decomposition> {
    spec.require_isotropic("the decomposition")?;
    let n = spec.sites;
    let j = spec.coupling();
    let bonds = pairs.pairs(n);
    // J·(λ/2J)
    let half_field = spec.field / 2.0;

    let mut h1 = PauliSum::new(n);
    pair_terms(&mut h1, &bonds, j, &XYZ);
    field_terms(&mut h1, n, half_field);

    let mut h2 = PauliSum::new(n);
    pair_terms(&mut h2, &bonds, -j, &[Pauli::Z]);
    field_terms(&mut h2, n, half_field);

    Ok(Decomposition {
        h1: OperatorMatrix::new(h1.to_dense(), format!("H1(N={n})")),
        h2: OperatorMatrix::new(h2.to_dense(), format!("H2(N={n})")),
        h1_field: half_field,
        h2_field: half_field,
    })
}

/// Largest entry of `H_reg - (H1 + H2 - 1)`.
pub fn decomposition_residual(spec: &LmgSpec, pairs: PairSet) -> Result<f64> {
    let reg = build_regularized(spec, pairs)?;
    let d = decompose(spec, pairs)?;
    let dim = reg.dim();
    let recombined = &d.h1.matrix + &d.h2.matrix - DMatrix::<f64>::identity(dim, dim);
    Ok((&reg.matrix - recombined).amax())
}

/// Largest entry of `pairwise - collective`.
pub fn pairwise_collective_residual(spec: &LmgSpec) -> Result<f64> {
    Ok(build_lmg_pairwise(spec).max_abs_diff(&build_lmg_collective(spec)?))
}

/// Total `Sᶻ = ½Σσᶻ`, diagonal.
pub fn total_sz(n: usize) -> OperatorMatrix {
    let dim = 1usize << n;
    let diag = nalgebra::DVector::from_fn(dim, |b, _| n as f64 / 2.0 - b.count_ones() as f64);
    OperatorMatrix::new(DMatrix::from_diagonal(&diag), format!("Sz(N={n})"))
}

/// Largest entry of `[H, Sᶻ]`.
pub fn sz_commutator_norm(h: &OperatorMatrix) -> f64 {
    let n = h.dim().trailing_zeros() as usize;
    let sz = total_sz(n).matrix;
    (&h.matrix * &sz - &sz * &h.matrix).amax()
}

/// `|λ| = 2/N`, the edge of the critical window for `N` spins.
pub fn critical_field_bound(sites: usize) -> Result<f64> {
    if sites < 2 {
        return Err(invalid("N", format!("need at least 2 spins, got {sites}")));
    }
    Ok(2.0 / sites as f64)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LmgQuenchSummary {
    pub tau_q: f64,
    pub n4: f64,
    pub s_max: f64,
    pub l_max: u64,
    /// `ξ̂ = √τq`, identified with the coherence number.
    pub coherence_number: f64,
}

pub fn lmg_quench_summary(tau_q: f64) -> Result<LmgQuenchSummary> {
    if !(tau_q > 1.0) {
        return Err(invalid("tau_q", format!("{tau_q} must exceed 1")));
    }
    Ok(LmgQuenchSummary {
        tau_q,
        n4: lmg_kink_density(tau_q)?,
        s_max: max_entropy(QuenchModel::Lmg, tau_q)?.value,
        l_max: max_block_size(QuenchModel::Lmg, tau_q)?.value,
        coherence_number: kz_length(tau_q)?,
    })
}
