//! First-order energy shift from the noncommutative θ·L term and the
//! resulting 2ℓ+1 Zeeman-like level splitting.
//!
//! Two closed-form routes coexist. `Paper` transcribes the published shift
//! formula verbatim. `Matrix` treats the θ-term of the dimensionless radial
//! equation as a perturbation of a nonlinear eigenvalue problem: the shift
//! is ⟨R⁰|W|R⁰⟩ divided by ∂Λ/∂E, where Λ(E) is the bracket eigenvalue
//! whose root defines E⁰ (the energy enters the operator nonlinearly, so a
//! bare expectation value is not yet an energy shift). Both routes are
//! exactly linear in m and θ by construction.

use crate::error::{Error, Result};
use crate::quadrature::gauss_laguerre_rule;
use crate::special::{laguerre_eval, log_factorial_ratio};
use crate::spectrum::{
    energy_unperturbed, make_radial_state, varsigma, PhysicalParams, QuantumNumbers, RadialState,
};

/// Closed-form route selector for the first-order shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftRoute {
    Paper,
    Matrix,
}

/// The perturbing term of the ρ-space operator,
/// W(ρ) = mθ·[4ℓ(ℓ+1)E_eff/ρ⁴ − 2(1+E/M)√E_eff·Zα/ρ³],
/// with the sign convention that the unperturbed bracket acquires −W.
#[derive(Debug, Clone, Copy)]
pub struct NcPotentialTerm {
    quartic: f64, // mθ · 4ℓ(ℓ+1) E_eff
    cubic: f64,   // mθ · 2(1+E/M) √E_eff Zα
}

impl NcPotentialTerm {
    /// Build from raw quantities (mass, coupling, state energy, ℓ, m, θ).
    pub fn from_raw(
        mass: f64,
        z_alpha: f64,
        theta: f64,
        energy: f64,
        ell: u32,
        m: i32,
    ) -> Result<Self> {
        if m.unsigned_abs() > ell {
            return Err(Error::Domain(format!(
                "|m| must not exceed ell: m={m}, ell={ell}"
            )));
        }
        let e_eff = mass * mass - energy * energy;
        if e_eff <= 0.0 {
            return Err(Error::Domain(format!(
                "bound state required (|E| < M), got E={energy}, M={mass}"
            )));
        }
        let mtheta = m as f64 * theta;
        let lf = ell as f64 * (ell as f64 + 1.0);
        Ok(Self {
            quartic: mtheta * 4.0 * lf * e_eff,
            cubic: mtheta * 2.0 * (1.0 + energy / mass) * e_eff.sqrt() * z_alpha,
        })
    }

    pub fn eval(&self, rho: f64) -> f64 {
        let r2 = rho * rho;
        self.quartic / (r2 * r2) - self.cubic / (r2 * rho)
    }
}

/// W(ρ) for a given state and magnetic number.
pub fn nc_potential_term(
    params: &PhysicalParams,
    state: &RadialState,
    m: i32,
) -> Result<NcPotentialTerm> {
    NcPotentialTerm::from_raw(
        params.mass,
        params.z_alpha,
        params.theta,
        state.energy(),
        state.qn().ell(),
        m,
    )
}

/// ∫ R⁰(ρ)² ρ^{−s} dρ, evaluated exactly: the integrand collapses to the
/// Laguerre weight e^{−ρ}ρ^{2ℓ+2−s} times a polynomial of degree 2(n−ℓ−1),
/// so a rule of matching order integrates it to round-off. `s` may be
/// negative (positive moments).
pub fn inverse_moment(state: &RadialState, s: i32) -> Result<f64> {
    let ell = state.qn().ell() as i32;
    let exponent = (2 * ell + 2 - s) as f64;
    if exponent <= -1.0 {
        return Err(Error::Domain(format!(
            "moment rho^-{s} divergent for ell={ell}"
        )));
    }
    let degree = state.qn().radial_degree() as usize;
    let rule = gauss_laguerre_rule(degree + 1 + 8, exponent)?;
    let amp = state.polynomial_amplitude();
    let spec = state.laguerre();
    rule.integrate_halfline(|rho| {
        let l = laguerre_eval(spec, rho).unwrap_or(f64::NAN);
        (amp * l) * (amp * l)
    })
}

/// Closed Laguerre-integral identities for the lowest moments of the
/// assembled state (internal cross-checks, independent of any printed
/// expectation formula): s = 0 → 1/|E⁰|, s = 1 → 1/(2|E⁰|n),
/// s = 2 → 1/(2|E⁰|n(2ℓ+1)).
pub fn inverse_moment_identity(state: &RadialState, s: u32) -> Option<f64> {
    let e_abs = state.energy().abs();
    let n = state.qn().n() as f64;
    let ell = state.qn().ell() as f64;
    match s {
        0 => Some(1.0 / e_abs),
        1 => Some(1.0 / (2.0 * e_abs * n)),
        2 => Some(1.0 / (2.0 * e_abs * n * (2.0 * ell + 1.0))),
        _ => None,
    }
}

/// Method selector for [`expectation_inverse_power`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InversePowerMethod {
    PaperClosedForm,
    Quadrature,
}

/// ⟨ρ^{−k}⟩ in the published convention, which pairs the label k with the
/// integrand ρ^{−(k−2)}: ⟨ρ⁻³⟩ := ∫R²ρ⁻¹dρ and ⟨ρ⁻⁴⟩ := ∫R²ρ⁻²dρ.
/// The quadrature method evaluates that integral exactly; the closed-form
/// method returns the printed expressions (k ∈ {3,4}, ℓ ≥ 1 only).
pub fn expectation_inverse_power(
    state: &RadialState,
    k: u32,
    method: InversePowerMethod,
) -> Result<f64> {
    if !(1..=4).contains(&k) {
        return Err(Error::Domain(format!("k must be in 1..=4, got {k}")));
    }
    match method {
        InversePowerMethod::Quadrature => inverse_moment(state, k as i32 - 2),
        InversePowerMethod::PaperClosedForm => {
            let n = state.qn().n() as f64;
            let ell = state.qn().ell();
            let e_abs = state.energy().abs();
            if !(k == 3 || k == 4) {
                return Err(Error::Domain(format!(
                    "closed form available only for k in {{3,4}}, got {k}"
                )));
            }
            if ell == 0 {
                return Err(Error::Domain("closed form singular at ell=0".to_string()));
            }
            let lf = ell as f64;
            match k {
                3 => Ok(1.0 / (2.0 * e_abs) / (lf * (2.0 * lf + 1.0) * (2.0 * lf + 2.0))),
                _ => {
                    // Γ(2ℓ−1)/Γ(2ℓ+4) = (2ℓ−2)!/(2ℓ+3)!
                    let ratio =
                        (-log_factorial_ratio(2 * ell as u64 + 3, 2 * ell as u64 - 2)).exp();
                    Ok(1.0 / (n * e_abs) * ratio * (3.0 * n * n - lf * (lf + 1.0)))
                }
            }
        }
    }
}

/// Λ(E): the bracket eigenvalue of the θ=0 dimensionless equation for the
/// state family with quantization integer n, as a function of the energy
/// that enters through ς(E). Λ(E⁰) = 0 defines the unperturbed energy.
pub(crate) fn lambda_bracket(params: &PhysicalParams, n_q: u32, energy: f64) -> Result<f64> {
    let vs = varsigma(params, energy)?.for_mode(params.mode);
    let nq = n_q as f64;
    Ok(vs * vs / (4.0 * nq * nq) - 0.25)
}

/// ∂Λ/∂E at E by a five-point central difference, step scaled to the
/// distance from the |E| = M endpoints where ς steepens.
pub(crate) fn lambda_bracket_derivative(
    params: &PhysicalParams,
    n_q: u32,
    energy: f64,
) -> Result<f64> {
    let m = params.mass;
    let room = (m - energy).min(energy + m);
    let step = (5e-3 * room).min(1e-4 * m);
    let f = |e: f64| lambda_bracket(params, n_q, e);
    let d = (f(energy - 2.0 * step)? - 8.0 * f(energy - step)? + 8.0 * f(energy + step)?
        - f(energy + 2.0 * step)?)
        / (12.0 * step);
    Ok(d)
}

fn require_splittable(qn: &QuantumNumbers) -> Result<()> {
    if qn.ell() == 0 {
        return Err(Error::Domain(
            "shift undefined: spin-orbit-like term singular at ell=0".to_string(),
        ));
    }
    Ok(())
}

/// Shift per unit (m·θ) for the published closed form.
fn shift_slope_paper(params: &PhysicalParams, qn: &QuantumNumbers) -> Result<f64> {
    require_splittable(qn)?;
    let n = qn.n() as f64;
    let lf = qn.ell() as f64;
    let x = params.z_alpha;
    let mm = params.mass;
    let e_abs = energy_unperturbed(params, qn).abs();
    if e_abs == 0.0 {
        return Err(Error::Domain("shift undefined at zero energy".to_string()));
    }
    let nl = (qn.n() - qn.ell()) as f64;
    let term1 = (3.0 * n * n - lf * (lf + 1.0)) / (n * (2.0 * lf - 1.0) * (2.0 * lf + 3.0));
    let term2 = 2.0 * nl * nl * x / (lf * (lf + 1.0) * (nl * nl + (x / mm) * (x / mm)));
    Ok((term1 - term2) / (4.0 * (2.0 * lf + 1.0) * e_abs))
}

/// Shift per unit (m·θ) from the matrix element of W over the assembled
/// state, self-normalized, converted through ∂Λ/∂E.
fn shift_slope_matrix(params: &PhysicalParams, qn: &QuantumNumbers) -> Result<f64> {
    require_splittable(qn)?;
    let state = make_radial_state(
        params,
        &QuantumNumbers::new(qn.n() as i64, qn.ell() as i64, 0)?,
    )?;
    let e0 = state.energy();
    let e_eff = params.mass * params.mass - e0 * e0;
    let lf = qn.ell() as f64;

    let norm = state.measured_norm();
    let m3 = inverse_moment(&state, 3)? / norm;
    let m4 = inverse_moment(&state, 4)? / norm;
    let w_mean = 4.0 * lf * (lf + 1.0) * e_eff * m4
        - 2.0 * (1.0 + e0 / params.mass) * e_eff.sqrt() * params.z_alpha * m3;

    let dlambda = lambda_bracket_derivative(params, qn.n(), e0)?;
    if dlambda == 0.0 || !dlambda.is_finite() {
        return Err(Error::Numeric(format!(
            "degenerate bracket derivative at E = {e0}"
        )));
    }
    Ok(w_mean / dlambda)
}

/// First-order energy shift ΔE = m·θ·K for the requested route.
pub fn nc_energy_shift(
    params: &PhysicalParams,
    qn: &QuantumNumbers,
    route: ShiftRoute,
) -> Result<f64> {
    let slope = match route {
        ShiftRoute::Paper => shift_slope_paper(params, qn)?,
        ShiftRoute::Matrix => shift_slope_matrix(params, qn)?,
    };
    Ok(qn.m() as f64 * params.theta * slope)
}

/// One level's worth of first-order shifts: paper and matrix routes plus an
/// optional nonperturbative value supplied by the caller.
#[derive(Debug, Clone)]
pub struct NCShift {
    pub qn: QuantumNumbers,
    pub delta_e_paper: f64,
    pub delta_e_matrix: f64,
    pub delta_e_oracle: Option<f64>,
}

impl NCShift {
    pub fn assemble(
        params: &PhysicalParams,
        qn: &QuantumNumbers,
        delta_e_oracle: Option<f64>,
    ) -> Result<Self> {
        Ok(Self {
            qn: *qn,
            delta_e_paper: nc_energy_shift(params, qn, ShiftRoute::Paper)?,
            delta_e_matrix: nc_energy_shift(params, qn, ShiftRoute::Matrix)?,
            delta_e_oracle,
        })
    }
}

/// One sublevel of a split (n, ℓ) line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sublevel {
    pub m: i32,
    pub shift: f64,
    pub total: f64,
}

/// A (n, ℓ) level expanded into its 2ℓ+1 magnetic sublevels.
#[derive(Debug, Clone)]
pub struct SplittingReport {
    pub n: u32,
    pub ell: u32,
    pub base_energy: f64,
    pub sublevels: Vec<Sublevel>,
    /// Present when no splitting is defined (ℓ = 0).
    pub annotation: Option<String>,
}

/// Enumerate m = −ℓ…ℓ and attach per-m shifts. For ℓ = 0 the report holds
/// the single sublevel with an explicit annotation instead of an error.
pub fn split_level(
    params: &PhysicalParams,
    n: i64,
    ell: i64,
    route: ShiftRoute,
) -> Result<SplittingReport> {
    let qn0 = QuantumNumbers::new(n, ell, 0)?;
    let base = energy_unperturbed(params, &qn0);
    if ell == 0 {
        return Ok(SplittingReport {
            n: qn0.n(),
            ell: 0,
            base_energy: base,
            sublevels: vec![Sublevel {
                m: 0,
                shift: 0.0,
                total: base,
            }],
            annotation: Some("no splitting defined for ell=0".to_string()),
        });
    }
    let slope = match route {
        ShiftRoute::Paper => shift_slope_paper(params, &qn0)?,
        ShiftRoute::Matrix => shift_slope_matrix(params, &qn0)?,
    };
    let mut sublevels = Vec::with_capacity(2 * ell as usize + 1);
    for m in -ell..=ell {
        let shift = m as f64 * params.theta * slope;
        sublevels.push(Sublevel {
            m: m as i32,
            shift,
            total: base + shift,
        });
    }
    Ok(SplittingReport {
        n: qn0.n(),
        ell: qn0.ell(),
        base_energy: base,
        sublevels,
        annotation: None,
    })
}
