//! Kibble–Zurek defect densities and quench-limited entanglement scaling for
//! one-dimensional spin chains (transverse Ising, XX, XXX and a point-split
//! regularized Lipkin–Meshkov–Glick model).
//!
//! The crate has three layers:
//!
//! - closed-form and quadrature results: [`kzm_defects`] and
//!   [`entanglement_scaling`], driven by the model catalog in [`models`];
//! - a Monte Carlo treatment of the fluctuating Berry-phase factor as a
//!   stationary Ornstein–Uhlenbeck process in [`stochastic_phase`];
//! - independent exact computations used to cross-check the constants the
//!   scaling laws rely on: free-fermion block entropies, exact
//!   diagonalization and concurrence in [`exact_baselines`], plus operator
//!   identities for the LMG model in [`lmg`].
//!
//! [`cli`] turns all of this into CSV datasets; the `quenchkit` binary is a
//! thin wrapper around it.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod entanglement_scaling;
pub mod error;
pub mod exact_baselines;
pub mod kzm_defects;
pub mod lmg;
pub mod models;
pub mod pauli;
pub mod quadrature;
pub mod stochastic_phase;

pub use error::{Error, Result};
pub use models::{ModelKind, QuenchModel, SpinModel};
