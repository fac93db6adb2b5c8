//! Configuration ingestion, batch spectrum/splitting computation, and
//! deterministic machine-readable outputs (CSV, JSON, SVG line diagram),
//! including the closed-form-vs-oracle discrepancy ledger.
//!
//! Output is byte-deterministic: rows are materialized in (n, ℓ, m) order,
//! numbers are printed with a fixed significant-digit count (17 in JSON,
//! 12 in CSV), and no hash-ordered containers feed the emitters.

use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::oracle::{nc_shift_nonperturbative, solve_extrapolated, GridSpec};
use crate::perturbation::{
    expectation_inverse_power, inverse_moment_identity, nc_energy_shift, InversePowerMethod,
    ShiftRoute,
};
use crate::spectrum::{
    energy_unperturbed, make_radial_state, FormulaMode, PhysicalParams, QuantumNumbers,
};

/// Verdict tolerance for internal quadrature-vs-identity records.
pub const IDENTITY_TOL: f64 = 1e-10;
/// Verdict tolerance for closed-form-vs-oracle records.
pub const CROSS_TOL: f64 = 1e-6;

/// Which shift routes a run computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RouteSet {
    pub paper: bool,
    pub matrix: bool,
    pub oracle: bool,
}

impl RouteSet {
    pub fn is_empty(&self) -> bool {
        !(self.paper || self.matrix || self.oracle)
    }

    fn parse(s: &str) -> std::result::Result<Self, String> {
        let mut set = RouteSet::default();
        for tok in s.split(',') {
            match tok.trim() {
                "paper" => set.paper = true,
                "matrix" => set.matrix = true,
                "oracle" => set.oracle = true,
                "" => {}
                other => return Err(format!("unknown route `{other}`")),
            }
        }
        if set.is_empty() {
            return Err("at least one route required".to_string());
        }
        Ok(set)
    }

    fn names(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        if self.paper {
            v.push("paper");
        }
        if self.matrix {
            v.push("matrix");
        }
        if self.oracle {
            v.push("oracle");
        }
        v
    }
}

/// Output artifact kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
    SvgLines,
}

impl OutputFormat {
    fn parse(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "svg-lines" => Ok(OutputFormat::SvgLines),
            other => Err(format!(
                "format must be csv, json or svg-lines, got `{other}`"
            )),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
            OutputFormat::SvgLines => "svg-lines",
        })
    }
}

/// A validated batch-run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: PhysicalParams,
    pub n_max: u32,
    pub ell: Option<u32>,
    pub routes: RouteSet,
    pub grid_points: usize,
    pub grid_rmax: Option<f64>,
    pub tol: f64,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            params: PhysicalParams::new(1.0, 0.5, 1e-4, FormulaMode::Rederived)
                .expect("default parameters are valid"),
            n_max: 4,
            ell: None,
            routes: RouteSet {
                paper: true,
                matrix: true,
                oracle: false,
            },
            grid_points: 4000,
            grid_rmax: None,
            tol: 1e-10,
            format: OutputFormat::Csv,
            out: None,
        }
    }
}

/// Optional per-key overrides (CLI flags); applied after the config file.
#[derive(Debug, Clone, Default)]
pub struct ConfigOverrides {
    pub mass: Option<f64>,
    pub z_alpha: Option<f64>,
    pub theta: Option<f64>,
    pub mode: Option<String>,
    pub n_max: Option<u32>,
    pub ell: Option<u32>,
    pub routes: Option<String>,
    pub grid_rmax: Option<f64>,
    pub grid_points: Option<usize>,
    pub tol: Option<f64>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
}

fn key_err(key: &str, line: usize, message: impl Into<String>) -> Error {
    Error::ConfigKey {
        key: key.to_string(),
        line,
        message: message.into(),
    }
}

/// Parse a flat `key = value` document into a [`RunConfig`], starting from
/// defaults. Unknown keys, unparsable numbers and violated invariants are
/// errors naming the key and line.
pub fn parse_config(source: &str) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    for (idx, raw_line) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| key_err(line, line_no, "expected `key = value`"))?;
        let key = key.trim();
        let value = value.trim();
        apply_kv(&mut cfg, key, value).map_err(|msg| key_err(key, line_no, msg))?;
    }
    validate(&cfg)?;
    Ok(cfg)
}

fn apply_kv(cfg: &mut RunConfig, key: &str, value: &str) -> std::result::Result<(), String> {
    let parse_f64 = |v: &str| -> std::result::Result<f64, String> {
        v.parse::<f64>().map_err(|_| format!("not a number: `{v}`"))
    };
    match key {
        "mass" => {
            let v = parse_f64(value)?;
            if v.is_nan() || v <= 0.0 {
                return Err(format!("mass must be > 0, got {v}"));
            }
            cfg.params.mass = v;
        }
        "z_alpha" => {
            let v = parse_f64(value)?;
            if v.is_nan() || v <= 0.0 {
                return Err(format!("z_alpha must be > 0, got {v}"));
            }
            cfg.params.z_alpha = v;
        }
        "theta" => {
            let v = parse_f64(value)?;
            if v.is_nan() || v < 0.0 {
                return Err(format!("theta must be >= 0, got {v}"));
            }
            cfg.params.theta = v;
        }
        "mode" => {
            cfg.params.mode = value.parse::<FormulaMode>().map_err(|e| e.to_string())?;
        }
        "n_max" => {
            let v: u32 = value
                .parse()
                .map_err(|_| format!("not an integer: `{value}`"))?;
            if v < 1 {
                return Err("n_max must be >= 1".to_string());
            }
            cfg.n_max = v;
        }
        "ell" => {
            let v: u32 = value
                .parse()
                .map_err(|_| format!("not an integer: `{value}`"))?;
            cfg.ell = Some(v);
        }
        "routes" => {
            cfg.routes = RouteSet::parse(value)?;
        }
        "grid_rmax" => {
            let v = parse_f64(value)?;
            if v.is_nan() || v <= 0.0 {
                return Err(format!("grid_rmax must be > 0, got {v}"));
            }
            cfg.grid_rmax = Some(v);
        }
        "grid_points" => {
            let v: usize = value
                .parse()
                .map_err(|_| format!("not an integer: `{value}`"))?;
            if v < 100 {
                return Err("grid_points must be >= 100".to_string());
            }
            cfg.grid_points = v;
        }
        "tol" => {
            let v = parse_f64(value)?;
            if v.is_nan() || v <= 0.0 {
                return Err(format!("tol must be > 0, got {v}"));
            }
            cfg.tol = v;
        }
        "format" => {
            cfg.format = OutputFormat::parse(value)?;
        }
        "out" => {
            cfg.out = Some(PathBuf::from(value));
        }
        other => return Err(format!("unknown key `{other}`")),
    }
    Ok(())
}

fn validate(cfg: &RunConfig) -> Result<()> {
    if cfg.routes.is_empty() {
        return Err(Error::Config("requested routes must be nonempty".into()));
    }
    PhysicalParams::new(
        cfg.params.mass,
        cfg.params.z_alpha,
        cfg.params.theta,
        cfg.params.mode,
    )
    .map_err(|e| Error::Config(e.to_string()))?;
    Ok(())
}

/// Assemble a config from an optional file body plus flag overrides
/// (defaults ← file ← flags, later layers win).
pub fn build_config(file: Option<&str>, ov: &ConfigOverrides) -> Result<RunConfig> {
    let mut cfg = match file {
        Some(text) => parse_config(text)?,
        None => RunConfig::default(),
    };
    let flag = |k: &str, msg: String| {
        Error::Config(format!(
            "flag --{k}: {msg}",
            k = k.replace('_', "-"),
            msg = msg
        ))
    };
    macro_rules! set {
        ($field:ident, $key:literal) => {
            if let Some(v) = &ov.$field {
                apply_kv(&mut cfg, $key, &v.to_string()).map_err(|m| flag($key, m))?;
            }
        };
    }
    set!(mass, "mass");
    set!(z_alpha, "z_alpha");
    set!(theta, "theta");
    set!(mode, "mode");
    set!(n_max, "n_max");
    set!(ell, "ell");
    set!(routes, "routes");
    set!(grid_rmax, "grid_rmax");
    set!(grid_points, "grid_points");
    set!(tol, "tol");
    set!(format, "format");
    if let Some(p) = &ov.out {
        cfg.out = Some(p.clone());
    }
    validate(&cfg)?;
    Ok(cfg)
}

/// One (n, ℓ, m) output row.
#[derive(Debug, Clone)]
pub struct LevelRow {
    pub n: u32,
    pub ell: u32,
    pub m: i32,
    pub e0: f64,
    pub de_paper: Option<f64>,
    pub de_matrix: Option<f64>,
    pub de_oracle: Option<f64>,
    pub e_total: f64,
    pub route_flags: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Match,
    Mismatch,
    SingularSkipped,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Match => "match",
            Verdict::Mismatch => "mismatch",
            Verdict::SingularSkipped => "singular/skipped",
        })
    }
}

/// Pairing of a closed-form value with an independently computed value.
#[derive(Debug, Clone)]
pub struct DiscrepancyRecord {
    pub quantity: String,
    pub n: u32,
    pub ell: u32,
    pub paper_value: Option<f64>,
    pub oracle_value: Option<f64>,
    pub relative_deviation: Option<f64>,
    pub verdict: Verdict,
}

impl DiscrepancyRecord {
    fn compare(quantity: &str, n: u32, ell: u32, paper: f64, oracle: f64, tol: f64) -> Self {
        let dev = (paper - oracle).abs() / oracle.abs().max(1e-300);
        Self {
            quantity: quantity.to_string(),
            n,
            ell,
            paper_value: Some(paper),
            oracle_value: Some(oracle),
            relative_deviation: Some(dev),
            verdict: if dev <= tol {
                Verdict::Match
            } else {
                Verdict::Mismatch
            },
        }
    }

    fn skipped(quantity: &str, n: u32, ell: u32) -> Self {
        Self {
            quantity: quantity.to_string(),
            n,
            ell,
            paper_value: None,
            oracle_value: None,
            relative_deviation: None,
            verdict: Verdict::SingularSkipped,
        }
    }
}

/// Fully materialized batch result, ready for any emitter.
#[derive(Debug, Clone)]
pub struct SpectrumRun {
    pub config: RunConfig,
    pub levels: Vec<LevelRow>,
    pub discrepancies: Vec<DiscrepancyRecord>,
}

/// Compute every (n ≤ n_max, ℓ ≤ n−1) level (optionally filtered to one ℓ),
/// its 2ℓ+1 sublevels per requested route, and the discrepancy ledger.
/// Domain failures annotate rows instead of aborting the batch.
pub fn run_spectrum(config: &RunConfig) -> Result<SpectrumRun> {
    let params = &config.params;
    let mut levels = Vec::new();
    let mut records = Vec::new();

    for n in 1..=config.n_max {
        for ell in 0..n {
            if let Some(filter) = config.ell {
                if ell != filter {
                    continue;
                }
            }
            compute_level(config, params, n, ell, &mut levels, &mut records)?;
        }
    }
    Ok(SpectrumRun {
        config: config.clone(),
        levels,
        discrepancies: records,
    })
}

fn level_grid(config: &RunConfig, qn: &QuantumNumbers) -> Result<GridSpec> {
    match config.grid_rmax {
        Some(r) => GridSpec::new(r, config.grid_points),
        None => GridSpec::auto(&config.params, qn, config.grid_points),
    }
}

fn compute_level(
    config: &RunConfig,
    params: &PhysicalParams,
    n: u32,
    ell: u32,
    levels: &mut Vec<LevelRow>,
    records: &mut Vec<DiscrepancyRecord>,
) -> Result<()> {
    let qn0 = QuantumNumbers::new(n as i64, ell as i64, 0)
        .map_err(|e| Error::Numeric(format!("internal quantum-number construction: {e}")))?;
    let e0 = energy_unperturbed(params, &qn0);

    // paper-mode closed form for the E0 record, independent of active mode
    let paper_params = PhysicalParams {
        mode: FormulaMode::Paper,
        ..*params
    };
    let rederived_params = PhysicalParams {
        mode: FormulaMode::Rederived,
        ..*params
    };
    let e0_paper_form = energy_unperturbed(&paper_params, &qn0);

    // oracle energy for the E0 record (FD when requested, closed form otherwise)
    let mut flags_extra = String::new();
    let e0_oracle = if config.routes.oracle {
        match level_grid(config, &qn0)
            .and_then(|g| solve_extrapolated(params, &qn0, &g, config.tol, 400))
        {
            Ok(sol) => Some(sol.energy),
            Err(e) => {
                flags_extra = format!("err-oracle:{}", short_reason(&e));
                None
            }
        }
    } else {
        Some(energy_unperturbed(&rederived_params, &qn0))
    };
    match e0_oracle {
        Some(o) => records.push(DiscrepancyRecord::compare(
            "E0",
            n,
            ell,
            e0_paper_form,
            o,
            CROSS_TOL,
        )),
        None => records.push(DiscrepancyRecord::skipped("E0", n, ell)),
    }

    let state = match make_radial_state(params, &qn0) {
        Ok(s) => s,
        Err(e) => {
            // still emit the bare row so the batch stays complete
            levels.push(LevelRow {
                n,
                ell,
                m: 0,
                e0,
                de_paper: None,
                de_matrix: None,
                de_oracle: None,
                e_total: e0,
                route_flags: format!("err:{}", short_reason(&e)),
            });
            for q in ["norm", "rho_m3", "rho_m4", "dE"] {
                records.push(DiscrepancyRecord::skipped(q, n, ell));
            }
            return Ok(());
        }
    };

    // norm: the closed-form prefactor suggests 1/(2|E0|); the measured value
    // is the quadrature integral, which the identity record pins to 1/|E0|
    let measured = state.measured_norm();
    let e_abs = state.energy().abs();
    records.push(DiscrepancyRecord::compare(
        "norm",
        n,
        ell,
        1.0 / (2.0 * e_abs),
        measured,
        CROSS_TOL,
    ));

    let q3 = expectation_inverse_power(&state, 3, InversePowerMethod::Quadrature)?;
    let q4 = expectation_inverse_power(&state, 4, InversePowerMethod::Quadrature)?;
    if ell >= 1 {
        let p3 = expectation_inverse_power(&state, 3, InversePowerMethod::PaperClosedForm)?;
        let p4 = expectation_inverse_power(&state, 4, InversePowerMethod::PaperClosedForm)?;
        records.push(DiscrepancyRecord::compare(
            "rho_m3", n, ell, p3, q3, CROSS_TOL,
        ));
        records.push(DiscrepancyRecord::compare(
            "rho_m4", n, ell, p4, q4, CROSS_TOL,
        ));
    } else {
        records.push(DiscrepancyRecord::skipped("rho_m3", n, ell));
        records.push(DiscrepancyRecord::skipped("rho_m4", n, ell));
    }

    // shifts per m
    let mut rows_for_level = Vec::new();
    if ell == 0 {
        rows_for_level.push(LevelRow {
            n,
            ell,
            m: 0,
            e0,
            de_paper: None,
            de_matrix: None,
            de_oracle: None,
            e_total: e0,
            route_flags: join_flags("l0-no-splitting", &flags_extra),
        });
        records.push(DiscrepancyRecord::skipped("dE", n, ell));
    } else {
        let grid = if config.routes.oracle {
            match level_grid(config, &qn0) {
                Ok(g) => Some(g),
                Err(e) => {
                    flags_extra =
                        join_flags(&flags_extra, &format!("err-grid:{}", short_reason(&e)));
                    None
                }
            }
        } else {
            None
        };
        let mut de_oracle_m1 = None;
        for m in -(ell as i64)..=(ell as i64) {
            let qn = qn0.with_m(m).expect("|m| <= ell by construction");
            let de_paper = if config.routes.paper {
                nc_energy_shift(params, &qn, ShiftRoute::Paper).ok()
            } else {
                None
            };
            let de_matrix = if config.routes.matrix {
                nc_energy_shift(params, &qn, ShiftRoute::Matrix).ok()
            } else {
                None
            };
            let mut flags = String::new();
            let de_oracle = match (&grid, m) {
                (Some(_), 0) => Some(0.0), // W vanishes identically at m = 0
                (Some(g), _) => match nc_shift_nonperturbative(params, &qn, g, config.tol) {
                    Ok(s) => Some(s),
                    Err(e) => {
                        flags = format!("err-oracle:{}", short_reason(&e));
                        None
                    }
                },
                (None, _) => None,
            };
            if m == 1 {
                de_oracle_m1 = de_oracle;
            }
            let preferred = de_matrix.or(de_paper).or(de_oracle).unwrap_or(0.0);
            rows_for_level.push(LevelRow {
                n,
                ell,
                m: m as i32,
                e0,
                de_paper,
                de_matrix,
                de_oracle,
                e_total: e0 + preferred,
                route_flags: join_flags(
                    &route_names(&config.routes),
                    &join_flags(&flags_extra, &flags),
                ),
            });
        }

        // dE record at m = +1: printed closed form vs the best available
        // independent value (oracle when requested, else matrix route)
        let qn1 = qn0.with_m(1).expect("ell >= 1");
        let de_paper_m1 = nc_energy_shift(params, &qn1, ShiftRoute::Paper).ok();
        let independent = if config.routes.oracle {
            de_oracle_m1
        } else if config.routes.matrix {
            nc_energy_shift(params, &qn1, ShiftRoute::Matrix).ok()
        } else {
            None
        };
        match (de_paper_m1, independent) {
            (Some(p), Some(o)) if params.theta > 0.0 => {
                records.push(DiscrepancyRecord::compare("dE", n, ell, p, o, CROSS_TOL));
            }
            _ => records.push(DiscrepancyRecord::skipped("dE", n, ell)),
        }
    }
    levels.extend(rows_for_level);

    // internal math: quadrature vs closed Laguerre identities (mode-free)
    let id_pairs = [
        (
            "norm_identity",
            inverse_moment_identity(&state, 0),
            measured,
        ),
        ("rho_m3_identity", inverse_moment_identity(&state, 1), q3),
        ("rho_m4_identity", inverse_moment_identity(&state, 2), q4),
    ];
    for (label, identity, quad) in id_pairs {
        let identity = identity.expect("identities defined for s in 0..=2");
        records.push(DiscrepancyRecord::compare(
            label,
            n,
            ell,
            identity,
            quad,
            IDENTITY_TOL,
        ));
    }
    Ok(())
}

fn route_names(routes: &RouteSet) -> String {
    routes.names().join("+")
}

fn join_flags(a: &str, b: &str) -> String {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => String::new(),
        (false, true) => a.to_string(),
        (true, false) => b.to_string(),
        (false, false) => format!("{a};{b}"),
    }
}

fn short_reason(e: &Error) -> String {
    let s = e.to_string();
    let cut: String = s.chars().take(40).collect();
    cut.replace([',', '\n'], ";")
}

/// Fixed-precision scientific formatting: `sig` significant digits.
fn fmt_sig(x: f64, sig: usize) -> String {
    format!("{:.*e}", sig - 1, x)
}

fn fmt_opt(x: Option<f64>, sig: usize) -> String {
    x.map(|v| fmt_sig(v, sig)).unwrap_or_default()
}

fn json_opt(x: Option<f64>) -> String {
    x.map(|v| fmt_sig(v, 17)).unwrap_or_else(|| "null".into())
}

fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// CSV with the fixed header `n,ell,m,E0,dE_paper,dE_matrix,dE_oracle,E_total,route_flags`,
/// floats at 12 significant digits, absent values as empty fields.
pub fn render_csv(run: &SpectrumRun) -> String {
    let mut out = String::from("n,ell,m,E0,dE_paper,dE_matrix,dE_oracle,E_total,route_flags\n");
    for row in &run.levels {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            row.n,
            row.ell,
            row.m,
            fmt_sig(row.e0, 12),
            fmt_opt(row.de_paper, 12),
            fmt_opt(row.de_matrix, 12),
            fmt_opt(row.de_oracle, 12),
            fmt_sig(row.e_total, 12),
            row.route_flags,
        ));
    }
    out
}

/// Single JSON object `{meta, levels[], discrepancies[]}` with a stable key
/// order and every float at 17 significant digits (lossless round-trip).
pub fn render_json(run: &SpectrumRun) -> String {
    let c = &run.config;
    let mut out = String::from("{\n  \"meta\": {");
    out.push_str(&format!("\"mass\": {}", fmt_sig(c.params.mass, 17)));
    out.push_str(&format!(", \"z_alpha\": {}", fmt_sig(c.params.z_alpha, 17)));
    out.push_str(&format!(", \"theta\": {}", fmt_sig(c.params.theta, 17)));
    out.push_str(&format!(", \"mode\": \"{}\"", c.params.mode));
    out.push_str(&format!(", \"n_max\": {}", c.n_max));
    out.push_str(&format!(
        ", \"ell\": {}",
        c.ell
            .map(|v| v.to_string())
            .unwrap_or_else(|| "null".into())
    ));
    out.push_str(&format!(
        ", \"routes\": [{}]",
        c.routes
            .names()
            .iter()
            .map(|r| format!("\"{r}\""))
            .collect::<Vec<_>>()
            .join(", ")
    ));
    out.push_str(&format!(", \"grid_points\": {}", c.grid_points));
    out.push_str(&format!(
        ", \"grid_rmax\": {}",
        c.grid_rmax
            .map(|v| fmt_sig(v, 17))
            .unwrap_or_else(|| "null".into())
    ));
    out.push_str(&format!(", \"tol\": {}", fmt_sig(c.tol, 17)));
    out.push_str(&format!(", \"format\": \"{}\"", c.format));
    out.push_str("},\n  \"levels\": [\n");
    for (i, row) in run.levels.iter().enumerate() {
        out.push_str(&format!(
            "    {{\"n\": {}, \"ell\": {}, \"m\": {}, \"e0\": {}, \"de_paper\": {}, \
             \"de_matrix\": {}, \"de_oracle\": {}, \"e_total\": {}, \"route_flags\": \"{}\"}}{}\n",
            row.n,
            row.ell,
            row.m,
            fmt_sig(row.e0, 17),
            json_opt(row.de_paper),
            json_opt(row.de_matrix),
            json_opt(row.de_oracle),
            fmt_sig(row.e_total, 17),
            json_escape(&row.route_flags),
            if i + 1 < run.levels.len() { "," } else { "" }
        ));
    }
    out.push_str("  ],\n  \"discrepancies\": [\n");
    for (i, rec) in run.discrepancies.iter().enumerate() {
        out.push_str(&format!(
            "    {{\"quantity\": \"{}\", \"n\": {}, \"ell\": {}, \"paper_value\": {}, \
             \"oracle_value\": {}, \"relative_deviation\": {}, \"verdict\": \"{}\"}}{}\n",
            json_escape(&rec.quantity),
            rec.n,
            rec.ell,
            json_opt(rec.paper_value),
            json_opt(rec.oracle_value),
            json_opt(rec.relative_deviation),
            rec.verdict,
            if i + 1 < run.discrepancies.len() {
                ","
            } else {
                ""
            }
        ));
    }
    out.push_str("  ]\n}\n");
    out
}

/// Spectral-line diagram: one horizontal baseline per (n, ℓ) level and one
/// tick per magnetic sublevel, offset by the shift scaled by an
/// auto-chosen magnification that is printed in the legend.
pub fn render_svg(run: &SpectrumRun) -> String {
    const W: f64 = 720.0;
    const TOP: f64 = 60.0;
    const BOTTOM: f64 = 40.0;

    // group rows by level, preserving order
    let mut groups: Vec<(u32, u32, f64, Vec<&LevelRow>)> = Vec::new();
    for row in &run.levels {
        match groups.last_mut() {
            Some((n, ell, _, rows)) if *n == row.n && *ell == row.ell => rows.push(row),
            _ => groups.push((row.n, row.ell, row.e0, vec![row])),
        }
    }
    let height = TOP + BOTTOM + (groups.len().max(1) as f64) * 70.0;

    let mut energies: Vec<f64> = groups.iter().map(|g| g.2).collect();
    energies.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let (emin, emax) = match (energies.first(), energies.last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => (0.0, 1.0),
    };
    let min_gap = energies
        .windows(2)
        .map(|w| (w[1] - w[0]).abs())
        .filter(|g| *g > 1e-12)
        .fold(f64::INFINITY, f64::min);
    let gap = if min_gap.is_finite() {
        min_gap
    } else {
        emin.abs().max(1e-3) * 0.2
    };
    let max_shift = run
        .levels
        .iter()
        .flat_map(|r| [r.de_matrix, r.de_paper, r.de_oracle])
        .flatten()
        .fold(0.0f64, |m, s| m.max(s.abs()));
    let magnification = if max_shift > 0.0 {
        0.1 * gap / max_shift
    } else {
        1.0
    };

    let span = (emax - emin).max(1e-12);
    let y_of = |e: f64| TOP + (emax - e) / span * (height - TOP - BOTTOM);

    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{height:.0}\" \
         viewBox=\"0 0 {W} {height:.0}\">\n"
    );
    svg.push_str(&format!(
        "  <text class=\"legend\" x=\"20\" y=\"24\" font-size=\"13\">splitting magnification x{} \
         | theta={} | mode={}</text>\n",
        fmt_sig(magnification, 6),
        fmt_sig(run.config.params.theta, 6),
        run.config.params.mode
    ));
    for (n, ell, e0, rows) in &groups {
        let y = y_of(*e0);
        svg.push_str(&format!(
            "  <line class=\"level\" x1=\"140\" y1=\"{y:.2}\" x2=\"400\" y2=\"{y:.2}\" \
             stroke=\"#334155\" stroke-width=\"1.5\"/>\n"
        ));
        svg.push_str(&format!(
            "  <text class=\"label\" x=\"30\" y=\"{:.2}\" font-size=\"12\">n={n} l={ell} \
             E0={}</text>\n",
            y + 4.0,
            fmt_sig(*e0, 6)
        ));
        for row in rows {
            let shift = row
                .de_matrix
                .or(row.de_paper)
                .or(row.de_oracle)
                .unwrap_or(0.0);
            let yt = y_of(*e0 + magnification * shift);
            svg.push_str(&format!(
                "  <line class=\"tick\" x1=\"430\" y1=\"{yt:.2}\" x2=\"560\" y2=\"{yt:.2}\" \
                 stroke=\"#b91c1c\" stroke-width=\"1\"/>\n"
            ));
            svg.push_str(&format!(
                "  <text class=\"mlabel\" x=\"570\" y=\"{:.2}\" font-size=\"10\">m={}</text>\n",
                yt + 3.0,
                row.m
            ));
        }
    }
    svg.push_str("</svg>\n");
    svg
}

/// Render in the configured format and write to the configured path
/// (stdout when no path is set).
pub fn emit(run: &SpectrumRun) -> Result<()> {
    let body = match run.config.format {
        OutputFormat::Csv => render_csv(run),
        OutputFormat::Json => render_json(run),
        OutputFormat::SvgLines => render_svg(run),
    };
    match &run.config.out {
        Some(path) => {
            let mut file = std::fs::File::create(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            file.write_all(body.as_bytes())
                .map_err(|source| Error::Io {
                    path: path.clone(),
                    source,
                })?;
            Ok(())
        }
        None => {
            print!("{body}");
            Ok(())
        }
    }
}
