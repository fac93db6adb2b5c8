//! Independent nonperturbative verification: finite-difference
//! diagonalization of the r-space radial operator with self-consistent
//! handling of its energy dependence, with and without the θ term.
//!
//! The operator −d²/dr² + V_eff(r;E) + W_r(r;E,m) is discretized with
//! second-order central differences on a uniform Dirichlet grid; its
//! eigenvalue λ approximates E² − M² at self-consistency. Grids refine
//! cleanly (spacing exactly halves), so Romberg-style extrapolation of the
//! h² stencil error is meaningful and used for all closed-form comparisons.

use crate::error::{Error, Result};
use crate::spectrum::{energy_unperturbed, FormulaMode, PhysicalParams, QuantumNumbers};
use crate::tridiag;

/// Uniform radial grid: interior nodes rᵢ = i·h, i = 1..points, with
/// Dirichlet ends at 0 and r_max, h = r_max/(points+1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    r_max: f64,
    points: usize,
}

impl GridSpec {
    pub fn new(r_max: f64, points: usize) -> Result<Self> {
        if !r_max.is_finite() || r_max <= 0.0 {
            return Err(Error::Config(format!("r_max must be > 0, got {r_max}")));
        }
        if points < 100 {
            return Err(Error::Config(format!(
                "grid needs at least 100 points, got {points}"
            )));
        }
        Ok(Self { r_max, points })
    }

    /// r_max = 60/√(M²−E_est²) with E_est from the rederived closed form:
    /// comfortably past the exponential tail for the estimated state.
    pub fn auto(params: &PhysicalParams, qn: &QuantumNumbers, points: usize) -> Result<Self> {
        let rederived = PhysicalParams {
            mode: FormulaMode::Rederived,
            ..*params
        };
        let e_est = energy_unperturbed(&rederived, qn);
        let e_eff = params.mass * params.mass - e_est * e_est;
        if e_eff <= 0.0 {
            return Err(Error::Config(
                "cannot size grid: estimated state is not bound".to_string(),
            ));
        }
        Self::new(60.0 / e_eff.sqrt(), points)
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn spacing(&self) -> f64 {
        self.r_max / (self.points as f64 + 1.0)
    }

    /// Same r_max with spacing exactly halved (points ↦ 2·points + 1).
    pub fn refined(&self) -> Self {
        Self {
            r_max: self.r_max,
            points: 2 * self.points + 1,
        }
    }
}

/// Outcome of one self-consistent solve.
#[derive(Debug, Clone, Copy)]
pub struct OracleResult {
    pub energy: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Magnitude of the last fixed-point update.
    pub residual: f64,
    pub grid: GridSpec,
}

fn build_operator(
    params: &PhysicalParams,
    ell: u32,
    energy: f64,
    m: i32,
    grid: &GridSpec,
) -> (Vec<f64>, Vec<f64>) {
    let h = grid.spacing();
    let inv_h2 = 1.0 / (h * h);
    let lf = ell as f64 * (ell as f64 + 1.0);
    let coulomb = 2.0 * (params.mass + energy) * params.z_alpha;
    let theta_on = params.theta > 0.0 && m != 0;
    let w_coef = m as f64 * params.theta;
    let w_coulomb = (energy + params.mass) * params.z_alpha;

    let mut diag = Vec::with_capacity(grid.points);
    for i in 1..=grid.points {
        let r = i as f64 * h;
        let mut v = lf / (r * r) - coulomb / r;
        if theta_on {
            v += w_coef * (lf / (r * r * r * r) - w_coulomb / (r * r * r));
        }
        diag.push(2.0 * inv_h2 + v);
    }
    let off = vec![-inv_h2; grid.points - 1];
    (diag, off)
}

fn check_grid(params: &PhysicalParams, ell: u32, energy: f64, grid: &GridSpec) -> Result<()> {
    if ell >= 1 {
        // the centrifugal barrier must dominate the Coulomb term at the
        // first interior node, otherwise the small-r behavior is unresolved
        let h = grid.spacing();
        let lf = ell as f64 * (ell as f64 + 1.0);
        let coulomb = 2.0 * (params.mass + energy.abs()) * params.z_alpha;
        if lf / (h * h) <= coulomb / h {
            return Err(Error::Config(format!(
                "grid too coarse to resolve the centrifugal term near the origin: \
                 spacing {h:.3e} exceeds {:.3e}",
                lf / coulomb
            )));
        }
    }
    Ok(())
}

/// Lowest `count` eigenvalues of the discretized operator at a frozen trial
/// energy. Each λ approximates E² − M² at self-consistency.
pub fn eigen_fixed_e(
    params: &PhysicalParams,
    ell: u32,
    trial_energy: f64,
    m: i32,
    grid: &GridSpec,
    count: usize,
) -> Result<Vec<f64>> {
    if trial_energy.abs() >= params.mass {
        return Err(Error::Domain(format!(
            "trial energy must satisfy |E| < M, got {trial_energy}"
        )));
    }
    check_grid(params, ell, trial_energy, grid)?;
    let (diag, off) = build_operator(params, ell, trial_energy, m, grid);
    Ok(tridiag::lowest_eigenvalues(&diag, &off, count))
}

/// Like [`eigen_fixed_e`] but also returns the (unit-norm) eigenvector of
/// the `index`-th eigenvalue, for node counting.
pub fn eigenpair_fixed_e(
    params: &PhysicalParams,
    ell: u32,
    trial_energy: f64,
    m: i32,
    grid: &GridSpec,
    index: usize,
) -> Result<(f64, Vec<f64>)> {
    let evs = eigen_fixed_e(params, ell, trial_energy, m, grid, index + 1)?;
    let lambda = *evs
        .last()
        .ok_or_else(|| Error::Numeric("eigenvalue extraction returned nothing".to_string()))?;
    let (diag, off) = build_operator(params, ell, trial_energy, m, grid);
    let vec = tridiag::eigenvector(&diag, &off, lambda);
    Ok((lambda, vec))
}

/// Damped fixed-point iteration on E ↦ sign·√(M² + λ_{n−ℓ−1}(E)).
///
/// Non-convergence is reported through `converged = false`, never as an
/// error; a level with λ ≤ −M² (no bound mapping) is a diagnostic error.
pub fn solve_selfconsistent(
    params: &PhysicalParams,
    qn: &QuantumNumbers,
    grid: &GridSpec,
    tol: f64,
    max_iter: usize,
) -> Result<OracleResult> {
    let m_mass = params.mass;
    let seed = {
        let rederived = PhysicalParams {
            mode: FormulaMode::Rederived,
            ..*params
        };
        let e = energy_unperturbed(&rederived, qn);
        e.clamp(-0.999_999 * m_mass, 0.999_999 * m_mass)
    };
    solve_selfconsistent_seeded(params, qn, grid, tol, max_iter, seed)
}

/// [`solve_selfconsistent`] with an explicit starting energy (warm starts
/// across grid refinements, or probing a particular branch).
pub fn solve_selfconsistent_seeded(
    params: &PhysicalParams,
    qn: &QuantumNumbers,
    grid: &GridSpec,
    tol: f64,
    max_iter: usize,
    seed: f64,
) -> Result<OracleResult> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain(format!("tolerance must be > 0, got {tol}")));
    }
    let m_mass = params.mass;
    let index = qn.radial_degree() as usize;
    let damping = 0.5;
    let cap = 0.999_999_999 * m_mass;

    let mut energy = seed;
    let mut residual = f64::INFINITY;
    for iteration in 0..max_iter {
        let lambda = eigen_fixed_e(params, qn.ell(), energy, qn.m(), grid, index + 1)?[index];
        if lambda <= -m_mass * m_mass {
            return Err(Error::Numeric(format!(
                "eigenvalue {lambda} below -M^2: no bound-state mapping"
            )));
        }
        let sign = if energy < 0.0 { -1.0 } else { 1.0 };
        let mapped = (sign * (m_mass * m_mass + lambda).sqrt()).clamp(-cap, cap);
        let next = (1.0 - damping) * energy + damping * mapped;
        residual = (next - energy).abs();
        energy = next;
        if residual <= tol {
            return Ok(OracleResult {
                energy,
                iterations: iteration + 1,
                converged: true,
                residual,
                grid: *grid,
            });
        }
    }
    Ok(OracleResult {
        energy,
        iterations: max_iter,
        converged: false,
        residual,
        grid: *grid,
    })
}

/// Self-consistent solve on three grids (h, h/2, h/4) with warm starts,
/// combined by Romberg weights for the second-order stencil.
#[derive(Debug, Clone)]
pub struct ExtrapolatedOracle {
    pub levels: Vec<OracleResult>,
    /// Richardson-extrapolated energy.
    pub energy: f64,
    /// (E₁−E₂)/(E₂−E₃): ≈ 4 for a clean second-order stencil.
    pub convergence_ratio: f64,
}

pub fn solve_extrapolated(
    params: &PhysicalParams,
    qn: &QuantumNumbers,
    base: &GridSpec,
    tol: f64,
    max_iter: usize,
) -> Result<ExtrapolatedOracle> {
    let g1 = *base;
    let g2 = base.refined();
    let g3 = g2.refined();
    let r1 = solve_selfconsistent(params, qn, &g1, tol, max_iter)?;
    let r2 = solve_selfconsistent_seeded(params, qn, &g2, tol, max_iter, r1.energy)?;
    let r3 = solve_selfconsistent_seeded(params, qn, &g3, tol, max_iter, r2.energy)?;
    let (e1, e2, e3) = (r1.energy, r2.energy, r3.energy);
    let a = (4.0 * e2 - e1) / 3.0;
    let b = (4.0 * e3 - e2) / 3.0;
    let denom = e2 - e3;
    let ratio = if denom != 0.0 {
        (e1 - e2) / denom
    } else {
        f64::INFINITY
    };
    Ok(ExtrapolatedOracle {
        levels: vec![r1, r2, r3],
        energy: (16.0 * b - a) / 15.0,
        convergence_ratio: ratio,
    })
}

/// Nonperturbative shift E(θ) − E(0) from two self-consistent solves on one
/// shared grid. Verifies that both solves still describe the same level
/// (node count n−ℓ−1) and that the shift stays well inside the local level
/// spacing; violations are ambiguity errors suggesting a smaller θ.
pub fn nc_shift_nonperturbative(
    params: &PhysicalParams,
    qn: &QuantumNumbers,
    grid: &GridSpec,
    tol: f64,
) -> Result<f64> {
    if qn.ell() < 1 {
        return Err(Error::Domain(
            "nonperturbative shift needs ell >= 1 (theta term not integrable otherwise)"
                .to_string(),
        ));
    }
    let base_params = PhysicalParams {
        theta: 0.0,
        ..*params
    };
    // both solves use the standard seeding so that a vanishing θ-term
    // reproduces the θ=0 iteration bit for bit (shift exactly zero)
    let max_iter = 400;
    let r0 = solve_selfconsistent(&base_params, qn, grid, tol, max_iter)?;
    let r1 = solve_selfconsistent(params, qn, grid, tol, max_iter)?;
    if !r0.converged || !r1.converged {
        return Err(Error::Numeric(format!(
            "self-consistent iteration did not converge (residuals {:.3e}, {:.3e})",
            r0.residual, r1.residual
        )));
    }
    let index = qn.radial_degree() as usize;
    for (label, p, res) in [("theta=0", &base_params, &r0), ("theta", params, &r1)] {
        let (_, vec) = eigenpair_fixed_e(p, qn.ell(), res.energy, qn.m(), grid, index)?;
        let nodes = tridiag::sign_changes(&vec);
        if nodes != index {
            return Err(Error::Numeric(format!(
                "level crossing: {label} eigenvector has {nodes} nodes, expected {index}; \
                 reduce theta"
            )));
        }
    }
    // the shift must stay small against the distance to the next level
    let evs = eigen_fixed_e(params, qn.ell(), r1.energy, qn.m(), grid, index + 2)?;
    if evs.len() > index + 1 {
        let m2 = params.mass * params.mass;
        let e_next = (m2 + evs[index + 1]).max(0.0).sqrt();
        let gap = (e_next - r1.energy).abs();
        let shift = r1.energy - r0.energy;
        if gap > 0.0 && shift.abs() > 0.25 * gap {
            return Err(Error::Numeric(format!(
                "shift {shift:.3e} is not small against the level gap {gap:.3e}; reduce theta"
            )));
        }
    }
    Ok(r1.energy - r0.energy)
}

/// Richardson-extrapolated nonperturbative shift over (h, h/2, h/4), each
/// level sharing its grid between the θ=0 and θ solves.
pub fn nc_shift_extrapolated(
    params: &PhysicalParams,
    qn: &QuantumNumbers,
    base: &GridSpec,
    tol: f64,
) -> Result<f64> {
    let g1 = *base;
    let g2 = base.refined();
    let g3 = g2.refined();
    let s1 = nc_shift_nonperturbative(params, qn, &g1, tol)?;
    let s2 = nc_shift_nonperturbative(params, qn, &g2, tol)?;
    let s3 = nc_shift_nonperturbative(params, qn, &g3, tol)?;
    let a = (4.0 * s2 - s1) / 3.0;
    let b = (4.0 * s3 - s2) / 3.0;
    Ok((16.0 * b - a) / 15.0)
}
