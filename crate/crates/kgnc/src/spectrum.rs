//! Physical parameters, the unperturbed bound-state spectrum in both
//! formula modes, and the normalized radial states in the dimensionless
//! variable ρ = 2r√(M²−E²).
//!
//! The two modes deliberately coexist: `Paper` transcribes the published
//! closed forms verbatim (including their sign and index conventions),
//! `Rederived` carries the quantization condition obtained directly from
//! the radial equation, which is what the finite-difference solver in
//! [`crate::oracle`] reproduces. Differences between the two are reported,
//! never papered over.

use crate::error::{Error, Result};
use crate::quadrature::gauss_laguerre_rule;
use crate::special::{laguerre_eval, log_factorial_ratio, LaguerreSpec};

/// Which closed-form convention downstream energies use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaMode {
    /// Published closed forms, verbatim: E⁰ from the (n−ℓ)-indexed formula
    /// with its printed overall sign, ς with its 1/M prefactor.
    Paper,
    /// Direct quantization of the radial equation: ς(E) equals the integer
    /// n (Laguerre degree n−ℓ−1 plus ℓ+1), matching the numeric solver.
    Rederived,
}

impl std::str::FromStr for FormulaMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(FormulaMode::Paper),
            "rederived" => Ok(FormulaMode::Rederived),
            other => Err(Error::Config(format!(
                "mode must be `paper` or `rederived`, got `{other}`"
            ))),
        }
    }
}

impl std::fmt::Display for FormulaMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FormulaMode::Paper => "paper",
            FormulaMode::Rederived => "rederived",
        })
    }
}

/// Rest mass, Coulomb coupling Zα, noncommutativity parameter θ (aligned
/// with the z-axis) and the formula mode. Natural units ħ = c = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub mass: f64,
    pub z_alpha: f64,
    pub theta: f64,
    pub mode: FormulaMode,
}

impl PhysicalParams {
    pub fn new(mass: f64, z_alpha: f64, theta: f64, mode: FormulaMode) -> Result<Self> {
        if !mass.is_finite() || mass <= 0.0 {
            return Err(Error::Domain(format!("mass must be > 0, got {mass}")));
        }
        if !z_alpha.is_finite() || z_alpha <= 0.0 {
            return Err(Error::Domain(format!("z_alpha must be > 0, got {z_alpha}")));
        }
        if !theta.is_finite() || theta < 0.0 {
            return Err(Error::Domain(format!("theta must be >= 0, got {theta}")));
        }
        Ok(Self {
            mass,
            z_alpha,
            theta,
            mode,
        })
    }
}

/// (n, ℓ, m) with ℓ ≥ 0, n ≥ ℓ+1 (nonnegative Laguerre degree) and |m| ≤ ℓ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuantumNumbers {
    n: u32,
    ell: u32,
    m: i32,
}

impl QuantumNumbers {
    pub fn new(n: i64, ell: i64, m: i64) -> Result<Self> {
        if ell < 0 {
            return Err(Error::Domain(format!("ell must be >= 0, got {ell}")));
        }
        if n - ell - 1 < 0 {
            return Err(Error::Domain(format!(
                "no radial solution: need n >= ell+1, got n={n}, ell={ell}"
            )));
        }
        if m < -ell || m > ell {
            return Err(Error::Domain(format!(
                "magnetic number must satisfy -ell <= m <= ell, got m={m}, ell={ell}"
            )));
        }
        Ok(Self {
            n: n as u32,
            ell: ell as u32,
            m: m as i32,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    /// Laguerre degree n − ℓ − 1 (also the radial node count).
    pub fn radial_degree(&self) -> u32 {
        self.n - self.ell - 1
    }

    pub fn with_m(&self, m: i64) -> Result<Self> {
        Self::new(self.n as i64, self.ell as i64, m)
    }
}

/// Unperturbed bound-state energy E⁰ under the active formula mode.
///
/// `Paper`: M·[(Zα)² − (n−ℓ)²M²] / [(Zα)² + (n−ℓ)²M²], verbatim.
/// `Rederived`: the root of Zα·√((M+E)/(M−E)) = n, i.e.
/// M·(n² − (Zα)²)/(n² + (Zα)²); ℓ-degenerate like any pure Coulomb level.
pub fn energy_unperturbed(params: &PhysicalParams, qn: &QuantumNumbers) -> f64 {
    let m = params.mass;
    let x = params.z_alpha;
    match params.mode {
        FormulaMode::Paper => {
            let nn = (qn.n - qn.ell) as f64 * m;
            m * (x * x - nn * nn) / (x * x + nn * nn)
        }
        FormulaMode::Rederived => {
            let nq = qn.n as f64;
            m * (nq * nq - x * x) / (nq * nq + x * x)
        }
    }
}

/// The 1/ρ coefficient of the dimensionless radial equation, in both
/// conventions. `paper` carries the printed 1/M prefactor; `rederived` is
/// the coefficient obtained by dividing the r-space equation through after
/// the ρ substitution. They coincide at M = 1 and differ by the factor M
/// otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Varsigma {
    pub paper: f64,
    pub rederived: f64,
}

impl Varsigma {
    pub fn for_mode(&self, mode: FormulaMode) -> f64 {
        match mode {
            FormulaMode::Paper => self.paper,
            FormulaMode::Rederived => self.rederived,
        }
    }
}

/// ς(E). Requires E < M (bound side) and E ≥ −M.
pub fn varsigma(params: &PhysicalParams, energy: f64) -> Result<Varsigma> {
    let m = params.mass;
    if energy >= m {
        return Err(Error::Domain(format!(
            "varsigma undefined in the scattering regime: E = {energy} >= M = {m}"
        )));
    }
    let ratio = 1.0 + 2.0 * energy / (m - energy); // = (M+E)/(M−E)
    if ratio < 0.0 {
        return Err(Error::Domain(format!(
            "varsigma undefined below -M: E = {energy}"
        )));
    }
    let root = ratio.sqrt();
    Ok(Varsigma {
        paper: params.z_alpha / m * root,
        rederived: params.z_alpha * root,
    })
}

/// The r-space effective potential −2(M+E)Zα/r + ℓ(ℓ+1)/r².
#[derive(Debug, Clone, Copy)]
pub struct EffectivePotential {
    coulomb_strength: f64, // 2 (M+E) Zα
    centrifugal: f64,      // ℓ(ℓ+1)
}

impl EffectivePotential {
    pub fn eval(&self, r: f64) -> f64 {
        -self.coulomb_strength / r + self.centrifugal / (r * r)
    }

    pub fn coulomb_strength(&self) -> f64 {
        self.coulomb_strength
    }
}

/// E_eff = M² − E² and the callable V_eff(r). Requires |E| < M.
pub fn effective_quantities(
    params: &PhysicalParams,
    energy: f64,
    ell: u32,
) -> Result<(f64, EffectivePotential)> {
    let m = params.mass;
    if energy.abs() >= m {
        return Err(Error::Domain(format!(
            "effective quantities need |E| < M, got E = {energy}, M = {m}"
        )));
    }
    let e_eff = m * m - energy * energy;
    let pot = EffectivePotential {
        coulomb_strength: 2.0 * (m + energy) * params.z_alpha,
        centrifugal: (ell as f64) * (ell as f64 + 1.0),
    };
    Ok((e_eff, pot))
}

/// ρ = 2r√E_eff.
pub fn rho_of_r(r: f64, e_eff: f64) -> Result<f64> {
    if r.is_nan() || e_eff.is_nan() || r <= 0.0 || e_eff <= 0.0 {
        return Err(Error::Domain(format!(
            "rho_of_r needs r > 0 and E_eff > 0, got r={r}, E_eff={e_eff}"
        )));
    }
    Ok(2.0 * r * e_eff.sqrt())
}

/// Inverse map r = ρ/(2√E_eff).
pub fn r_of_rho(rho: f64, e_eff: f64) -> Result<f64> {
    if rho.is_nan() || e_eff.is_nan() || rho <= 0.0 || e_eff <= 0.0 {
        return Err(Error::Domain(format!(
            "r_of_rho needs rho > 0 and E_eff > 0, got rho={rho}, E_eff={e_eff}"
        )));
    }
    Ok(rho / (2.0 * e_eff.sqrt()))
}

/// A fully specified unperturbed bound state:
/// R⁰(ρ) = N ρ^{ℓ+1} [(n−ℓ−1)!/(n+ℓ)!] (2ℓ+1)! L^{2ℓ+1}_{n−ℓ−1}(ρ) e^{−ρ/2},
/// with N kept in log space and the quadrature-measured ∫R², dρ carried
/// alongside for the discrepancy ledger.
#[derive(Debug, Clone)]
pub struct RadialState {
    qn: QuantumNumbers,
    params: PhysicalParams,
    energy: f64,
    norm_log: f64,
    poly_amp_log: f64,
    laguerre: LaguerreSpec,
    measured_norm: f64,
}

impl RadialState {
    pub fn qn(&self) -> QuantumNumbers {
        self.qn
    }

    pub fn params(&self) -> PhysicalParams {
        self.params
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    /// ln N of the closed-form normalization constant.
    pub fn norm_log(&self) -> f64 {
        self.norm_log
    }

    /// The collapsed linear amplitude A with R⁰(ρ) = A ρ^{ℓ+1} L(ρ) e^{−ρ/2}.
    pub fn polynomial_amplitude(&self) -> f64 {
        self.poly_amp_log.exp()
    }

    pub fn laguerre(&self) -> LaguerreSpec {
        self.laguerre
    }

    /// Quadrature-measured ∫₀^∞ R⁰(ρ)² dρ.
    pub fn measured_norm(&self) -> f64 {
        self.measured_norm
    }

    /// R⁰(ρ); zero at ρ = 0 and exponentially small at large ρ.
    pub fn amplitude(&self, rho: f64) -> f64 {
        if rho == 0.0 {
            return 0.0;
        }
        let ell1 = (self.qn.ell + 1) as f64;
        let lag = laguerre_eval(self.laguerre, rho).unwrap_or(f64::NAN);
        (self.poly_amp_log + ell1 * rho.ln() - 0.5 * rho).exp() * lag
    }
}

/// Assemble the normalized radial state and measure its norm.
pub fn make_radial_state(params: &PhysicalParams, qn: &QuantumNumbers) -> Result<RadialState> {
    let energy = energy_unperturbed(params, qn);
    if energy.abs() < 1e-14 * params.mass {
        return Err(Error::Domain(format!(
            "normalization undefined at zero energy (n={}, ell={}, z_alpha={})",
            qn.n, qn.ell, params.z_alpha
        )));
    }
    let n = qn.n as u64;
    let ell = qn.ell as u64;
    let degree = qn.radial_degree();
    let laguerre = LaguerreSpec::new(degree as i64, (2 * ell + 1) as f64)?;

    // ln N = ½[ln((n+ℓ)!/(n−ℓ−1)!) − ln(2|E⁰|n)] − ln((2ℓ+1)!)
    let lfr = log_factorial_ratio(n + ell, n - ell - 1);
    let log_2en = (2.0 * energy.abs() * n as f64).ln();
    let log_fact_2ell1 = log_factorial_ratio(2 * ell + 1, 0);
    let norm_log = 0.5 * (lfr - log_2en) - log_fact_2ell1;

    // collapsed amplitude: A = N (2ℓ+1)! (n−ℓ−1)!/(n+ℓ)!  →  ln A = −½(lfr + ln 2|E|n)
    let poly_amp_log = -0.5 * (lfr + log_2en);

    // exact quadrature of the squared state: weight exponent 2ℓ+2, degree 2(n−ℓ−1)
    let rule = gauss_laguerre_rule(degree as usize + 1 + 8, (2 * ell + 2) as f64)?;
    let amp = poly_amp_log.exp();
    let measured_norm = rule.integrate_halfline(|rho| {
        let l = laguerre_eval(laguerre, rho).unwrap_or(f64::NAN);
        (amp * l) * (amp * l)
    })?;

    Ok(RadialState {
        qn: *qn,
        params: *params,
        energy,
        norm_log,
        poly_amp_log,
        laguerre,
        measured_norm,
    })
}
