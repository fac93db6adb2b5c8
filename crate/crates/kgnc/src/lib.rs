//! Bound states of the Klein–Gordon equation with equal scalar and vector
//! Coulomb potentials, plus the first-order level splitting induced by a
//! noncommutative coordinate term θ·L (a Zeeman-like lifting of the 2ℓ+1
//! magnetic degeneracy).
//!
//! Every closed-form result is carried in two modes — the published
//! transcription (`paper`) and the direct rederivation (`rederived`) — and
//! cross-checked against in-repo numeric oracles: exact Gauss–Laguerre
//! quadrature for normalizations and expectation values, and a
//! finite-difference eigensolver with self-consistent handling of the
//! energy-dependent potential for the spectrum and the nonperturbative
//! shift. Disagreements surface as discrepancy records, never as silent
//! corrections.
//!
//! Entry points:
//! - [`spectrum`]: parameters, quantum numbers, energies, radial states.
//! - [`perturbation`]: the θ·L potential term, expectation values, shifts,
//!   and [`perturbation::SplittingReport`].
//! - [`oracle`]: the finite-difference cross-check solver.
//! - [`quadrature`] / [`special`]: the numeric substrate.
//! - [`report`]: batch runs, config files, CSV/JSON/SVG emission.
//!
//! The `kgnc` binary exposes the batch pipeline; see the crate examples for
//! library usage per capability.

pub mod error;
pub mod oracle;
pub mod perturbation;
pub mod quadrature;
pub mod report;
pub mod special;
pub mod spectrum;
pub mod tridiag;

pub use error::{Error, Result};
pub use oracle::{
    eigen_fixed_e, nc_shift_nonperturbative, solve_selfconsistent, GridSpec, OracleResult,
};
pub use perturbation::{
    expectation_inverse_power, nc_energy_shift, nc_potential_term, split_level, InversePowerMethod,
    NCShift, ShiftRoute, SplittingReport,
};
pub use quadrature::{gauss_laguerre_rule, QuadratureRule};
pub use report::{parse_config, run_spectrum, RunConfig};
pub use special::{laguerre_derivative, laguerre_eval, log_factorial_ratio, LaguerreSpec};
pub use spectrum::{
    effective_quantities, energy_unperturbed, make_radial_state, r_of_rho, rho_of_r, varsigma,
    FormulaMode, PhysicalParams, QuantumNumbers, RadialState,
};
