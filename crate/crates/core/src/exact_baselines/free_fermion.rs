//! Block entropies of the XX chain from fermionic two-point functions.
//!
//! After a Jordan–Wigner transformation the XX chain is a band of free
//! fermions with `ε_k = λ - 2cos k`. The ground state fills `|k| < k_F`,
//! `k_F = arccos(λ/2)`, and the entropy of a block of `L` sites follows from
//! the eigenvalues `ν` of the `L × L` correlation matrix
//! `C_mn = ⟨c†_m c_n⟩` as `Σ h(ν)`, with `h` the binary entropy.

use std::f64::consts::PI;

use nalgebra::{DMatrix, SymmetricEigen};

use crate::entanglement_scaling::EntropyValue;
use crate::error::{invalid, Error, Result};

use super::density::entropy_bits;

/// Slack allowed on occupation numbers before they are clamped to `[0, 1]`.
pub const OCCUPATION_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filling {
    Partial,
    /// `λ ≥ 2`: no fermions, `C = 0`.
    Empty,
    /// `λ ≤ -2`: band full, `C = 1`.
    Full,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FermionCorrelationMatrix {
    pub matrix: DMatrix<f64>,
    /// `None` for a finite ring, where the filled set need not be an interval.
    pub fermi_momentum: Option<f64>,
    pub filling: Filling,
}

impl FermionCorrelationMatrix {
    pub fn block_size(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn occupations(&self) -> Vec<f64> {
        let mut nu: Vec<f64> = SymmetricEigen::new(self.matrix.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        nu.sort_by(f64::total_cmp);
        nu
    }
}

/// Infinite-chain correlation matrix of a block of `l` sites.
///
/// Outside the band (`|λ| > 2`) the ground state is a product state and the
/// trivially empty or full matrix is returned with the matching [`Filling`].
pub fn xx_correlation_matrix(l: usize, field: f64) -> Result<FermionCorrelationMatrix> {
    if l == 0 {
        return Err(invalid("L", "block must contain at least one site"));
    }
    if !field.is_finite() {
        return Err(invalid("lambda", format!("{field} is not finite")));
    }
    if field > 2.0 {
        return Ok(FermionCorrelationMatrix {
            matrix: DMatrix::zeros(l, l),
            fermi_momentum: Some(0.0),
            filling: Filling::Empty,
        });
    }
    if field < -2.0 {
        return Ok(FermionCorrelationMatrix {
            matrix: DMatrix::identity(l, l),
            fermi_momentum: Some(PI),
            filling: Filling::Full,
        });
    }
    let kf = (field / 2.0).acos();
    let matrix = DMatrix::from_fn(l, l, |m, n| {
        if m == n {
            kf / PI
        } else {
            let d = m as f64 - n as f64;
            (kf * d).sin() / (PI * d)
        }
    });
    Ok(FermionCorrelationMatrix {
        matrix,
        fermi_momentum: Some(kf),
        filling: Filling::Partial,
    })
}

/// `Σ h(ν)` in bits over the eigenvalues of `C`.
pub fn entropy_from_correlations(c: &FermionCorrelationMatrix) -> Result<EntropyValue> {
    let asym = (&c.matrix - c.matrix.transpose()).amax();
    if asym > 1e-12 {
        return Err(Error::Malformed {
            what: "correlation matrix",
            reason: format!("not symmetric (residual {asym:e})"),
        });
    }
    let mut total = 0.0;
    for nu in c.occupations() {
        if !(-OCCUPATION_TOLERANCE..=1.0 + OCCUPATION_TOLERANCE).contains(&nu) {
            return Err(Error::Malformed {
                what: "correlation matrix",
                reason: format!("occupation {nu} outside [0, 1]"),
            });
        }
        let nu = nu.clamp(0.0, 1.0);
        total += entropy_bits([nu, 1.0 - nu]);
    }
    Ok(EntropyValue::bits(total))
}

/// Block entropy of the infinite XX chain.
pub fn xx_block_entropy(l: usize, field: f64) -> Result<EntropyValue> {
    entropy_from_correlations(&xx_correlation_matrix(l, field)?)
}

/// Ground state of the XX ring `-Σ(σˣσˣ + σʸσʸ) + λΣσᶻ` on `n` sites in
/// fermionic form: particle number and the filled momenta.
#[derive(Clone, Debug, PartialEq)]
pub struct RingFilling {
    pub sites: usize,
    pub particles: usize,
    pub momenta: Vec<f64>,
    pub energy: f64,
}

/// Single-particle energy on the ring, `-4cos k + 2λ` (spin-up sites are
/// the particles).
fn ring_energy(k: f64, field: f64) -> f64 {
    -4.0 * k.cos() + 2.0 * field
}

const DEGENERACY_GAP: f64 = 1e-9;

/// The Jordan–Wigner string turns the ring's closing bond into
/// `(-1)^{N_f + 1}` times an ordinary hop, so sectors with an odd particle
/// number are periodic and even ones antiperiodic.
pub fn ring_ground_filling(n: usize, field: f64) -> Result<RingFilling> {
    if !(3..=64).contains(&n) {
        return Err(invalid("N", format!("ring size {n} not in 3..=64")));
    }
    // (energy, ambiguous last momentum, filled momenta) per particle number
    let sectors: Vec<(f64, bool, Vec<f64>)> = (0..=n)
        .map(|nf| {
            let shift = if nf % 2 == 1 { 0.0 } else { 0.5 };
            let mut levels: Vec<(f64, f64)> = (0..n)
                .map(|j| {
                    let mut k = 2.0 * PI * (j as f64 + shift) / n as f64;
                    if k > PI + 1e-12 {
                        k -= 2.0 * PI;
                    }
                    (ring_energy(k, field), k)
                })
                .collect();
            levels.sort_by(|a, b| a.0.total_cmp(&b.0));
            let ambiguous = nf > 0 && nf < n && levels[nf].0 - levels[nf - 1].0 < DEGENERACY_GAP;
            let energy = levels[..nf].iter().map(|l| l.0).sum();
            (energy, ambiguous, levels[..nf].iter().map(|l| l.1).collect())
        })
        .collect();
    let (particles, ground) = sectors
        .iter()
        .enumerate()
        .min_by(|a, b| a.1 .0.total_cmp(&b.1 .0))
        .expect("at least one sector");
    let tied = sectors
        .iter()
        .enumerate()
        .any(|(nf, s)| nf != particles && s.0 - ground.0 < DEGENERACY_GAP);
    if ground.1 || tied {
        return Err(Error::Malformed {
            what: "ring ground state",
            reason: format!("degenerate at N = {n}, lambda = {field}"),
        });
    }
    Ok(RingFilling {
        sites: n,
        particles,
        momenta: ground.2.clone(),
        energy: ground.0,
    })
}

/// Correlation matrix of the first `l` sites of the finite XX ring,
/// `C_mn = (1/N) Σ_{filled k} cos k(m-n)`.
pub fn ring_correlation_matrix(n: usize, field: f64, l: usize) -> Result<FermionCorrelationMatrix> {
    if l == 0 || l >= n {
        return Err(invalid("L", format!("block of {l} sites in a ring of {n}")));
    }
    let ground = ring_ground_filling(n, field)?;
    let matrix = DMatrix::from_fn(l, l, |m, q| {
        let d = m as f64 - q as f64;
        ground.momenta.iter().map(|k| (k * d).cos()).sum::<f64>() / n as f64
    });
    let filling = match ground.particles {
        0 => Filling::Empty,
        p if p == n => Filling::Full,
        _ => Filling::Partial,
    };
    Ok(FermionCorrelationMatrix {
        matrix,
        fermi_momentum: None,
        filling,
    })
}

/// Least-squares slope of `S` against `log₂L`.
pub fn log_slope(points: &[(usize, f64)]) -> Result<f64> {
    if points.len() < 2 {
        return Err(invalid("points", "need at least two"));
    }
    let xs: Vec<f64> = points.iter().map(|(l, _)| (*l as f64).log2()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(points).map(|(x, p)| (x - mx) * (p.1 - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(invalid("points", "all block sizes equal"));
    }
    Ok(sxy / sxx)
}

/// Fitted coefficient of `log₂L` in the λ = 0 block entropy over `ls`.
pub fn xx_entropy_slope(ls: impl IntoIterator<Item = usize>) -> Result<f64> {
    let points = ls
        .into_iter()
        .map(|l| Ok((l, xx_block_entropy(l, 0.0)?.value)))
        .collect::<Result<Vec<_>>>()?;
    log_slope(&points)
}
