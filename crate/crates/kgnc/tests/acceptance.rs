//! Acceptance suite: one test per criterion, each printing a PASS line on
//! success (run with `--nocapture` to see them all).
//!
//! Two criteria document genuine defects of the transcribed closed forms
//! and are expected to fail, loudly and with measurements, rather than be
//! weakened into passing:
//! - criterion 3: the published energy formula differs from the direct
//!   quantization by its index (n−ℓ vs n) as well as its sign, so the
//!   pure sign relation only holds for ℓ = 0;
//! - criterion 6: the θ·ℓ(ℓ+1)/r⁴ term is a singular perturbation whose
//!   remainder scales as θ^{3/2}, not θ²; the measured exponent is ≈ 1.50.

use kgnc::oracle::{nc_shift_extrapolated, solve_extrapolated, GridSpec};
use kgnc::perturbation::{nc_energy_shift, split_level, ShiftRoute};
use kgnc::quadrature::gauss_laguerre_rule;
use kgnc::report::{render_csv, render_json, render_svg, run_spectrum, RunConfig, Verdict};
use kgnc::special::{laguerre_eval, log_factorial_ratio, LaguerreSpec};
use kgnc::spectrum::{
    energy_unperturbed, make_radial_state, varsigma, FormulaMode, PhysicalParams, QuantumNumbers,
};

fn params(z_alpha: f64, theta: f64, mode: FormulaMode) -> PhysicalParams {
    PhysicalParams::new(1.0, z_alpha, theta, mode).unwrap()
}

/// (n, ℓ) pairs of the acceptance grid.
fn grid_states() -> Vec<(i64, i64)> {
    let mut v = Vec::new();
    for n in 1..=4i64 {
        for ell in 0..n {
            v.push((n, ell));
        }
    }
    v
}

const GRID_COUPLINGS: [f64; 3] = [0.1, 0.3, 0.5];

#[test]
fn criterion_1_laguerre_orthogonality() {
    // Gram matrix under the weight e^{−x} x^α: G_jk = δ_jk Γ(k+α+1)/k!
    let mut worst = 0.0f64;
    for alpha in [1u32, 3, 5] {
        let order = 12 + 12 + alpha as usize + 2;
        let rule = gauss_laguerre_rule(order, alpha as f64).unwrap();
        for j in 0..=12u32 {
            for k in 0..=12u32 {
                let sj = LaguerreSpec::new(j as i64, alpha as f64).unwrap();
                let sk = LaguerreSpec::new(k as i64, alpha as f64).unwrap();
                let g = rule
                    .integrate_halfline(|x| {
                        laguerre_eval(sj, x).unwrap() * laguerre_eval(sk, x).unwrap()
                    })
                    .unwrap();
                let hj = log_factorial_ratio((j + alpha) as u64, j as u64).exp();
                let hk = log_factorial_ratio((k + alpha) as u64, k as u64).exp();
                let target = if j == k { hk } else { 0.0 };
                let dev = (g - target).abs() / hj.max(hk);
                worst = worst.max(dev);
                assert!(
                    dev <= 1e-8,
                    "criterion 1: FAIL — Gram deviation {dev:.3e} at (j={j}, k={k}, alpha={alpha})"
                );
            }
        }
    }
    println!("criterion 1: PASS — Laguerre orthogonality, worst relative deviation {worst:.3e}");
}

#[test]
fn criterion_2_spectrum_cross_validation() {
    let mut worst = 0.0f64;
    for &x in &GRID_COUPLINGS {
        let p = params(x, 0.0, FormulaMode::Rederived);
        for (n, ell) in grid_states() {
            let qn = QuantumNumbers::new(n, ell, 0).unwrap();
            let closed = energy_unperturbed(&p, &qn);
            let base = GridSpec::auto(&p, &qn, 3000).unwrap();
            let sol = solve_extrapolated(&p, &qn, &base, 1e-12, 400).unwrap();
            assert!(
                sol.levels.iter().all(|l| l.converged),
                "criterion 2: FAIL — oracle did not converge at (n={n}, ell={ell}, x={x})"
            );
            let rel = ((sol.energy - closed) / closed).abs();
            worst = worst.max(rel);
            assert!(
                rel <= 1e-6,
                "criterion 2: FAIL — (n={n}, ell={ell}, Zalpha={x}): closed {closed} vs \
                 oracle {} (rel {rel:.3e})",
                sol.energy
            );
        }
    }
    println!(
        "criterion 2: PASS — rederived energies match the finite-difference oracle, \
         worst relative deviation {worst:.3e}"
    );
}

#[test]
fn criterion_3_paper_mode_sign_relation() {
    // Faithful check as stated: energy(paper) must equal −energy(rederived)
    // for every state of the grid, at machine precision. The relation can
    // only hold where the published index n−ℓ coincides with the
    // quantization integer n, i.e. ℓ = 0; ℓ ≥ 1 states expose the index
    // defect and this criterion fails by construction. The exact mirror
    // identity paper(n,ℓ) = −rederived(n−ℓ, 0) is covered by unit tests.
    let mut failures = Vec::new();
    for &x in &GRID_COUPLINGS {
        for (n, ell) in grid_states() {
            let qn = QuantumNumbers::new(n, ell, 0).unwrap();
            let e_paper = energy_unperturbed(&params(x, 0.0, FormulaMode::Paper), &qn);
            let e_red = energy_unperturbed(&params(x, 0.0, FormulaMode::Rederived), &qn);
            let dev = (e_paper + e_red).abs();
            if dev > 4.0 * f64::EPSILON {
                failures.push(format!(
                    "  (n={n}, ell={ell}, Zalpha={x}): paper {e_paper:+.12} vs -rederived \
                     {:+.12} (|sum| = {dev:.3e})",
                    -e_red
                ));
            }
        }
    }
    assert!(
        failures.is_empty(),
        "criterion 3: FAIL — sign relation paper = -rederived holds only for ell=0 \
         (the published formula indexes by n-ell, the quantization by n); \
         {} of 36 grid states violate it:\n{}",
        failures.len(),
        failures.join("\n")
    );
    println!("criterion 3: PASS — paper mode is the exact mirror of the rederived mode");
}

#[test]
fn criterion_4_radial_equation_residual() {
    // R⁰ plugged into R'' − [ℓ(ℓ+1)/ρ² − ς/ρ + 1/4] R with the state's own
    // ς(E⁰); second derivative by a five-point stencil.
    let mut worst = 0.0f64;
    for &x in &GRID_COUPLINGS {
        let p = params(x, 0.0, FormulaMode::Rederived);
        for (n, ell) in grid_states() {
            let qn = QuantumNumbers::new(n, ell, 0).unwrap();
            let st = make_radial_state(&p, &qn).unwrap();
            let vs = varsigma(&p, st.energy()).unwrap().rederived;
            let lf = ell as f64 * (ell as f64 + 1.0);

            let mut max_r = 0.0f64;
            let mut max_resid = 0.0f64;
            let mut rho = 0.1f64;
            while rho <= 50.0 {
                let h = (1e-3 * rho).max(3e-4);
                let d2 = (-st.amplitude(rho - 2.0 * h) + 16.0 * st.amplitude(rho - h)
                    - 30.0 * st.amplitude(rho)
                    + 16.0 * st.amplitude(rho + h)
                    - st.amplitude(rho + 2.0 * h))
                    / (12.0 * h * h);
                let bracket = (lf / (rho * rho) - vs / rho + 0.25) * st.amplitude(rho);
                max_resid = max_resid.max((d2 - bracket).abs());
                max_r = max_r.max(st.amplitude(rho).abs());
                rho += 0.05;
            }
            let rel = max_resid / max_r;
            worst = worst.max(rel);
            assert!(
                rel <= 1e-8,
                "criterion 4: FAIL — (n={n}, ell={ell}, Zalpha={x}): residual {rel:.3e} of max|R|"
            );
        }
    }
    println!("criterion 4: PASS — radial-equation residual, worst {worst:.3e} of max|R|");
}

#[test]
fn criterion_5_splitting_structure() {
    let theta = 1e-4;
    for ell in [1i64, 2, 3] {
        for route in [ShiftRoute::Paper, ShiftRoute::Matrix] {
            let p = params(0.5, theta, FormulaMode::Rederived);
            let n = ell + 1;
            let rep = split_level(&p, n, ell, route).unwrap();
            assert_eq!(
                rep.sublevels.len(),
                2 * ell as usize + 1,
                "criterion 5: FAIL — wrong sublevel count at ell={ell}"
            );

            // zero-sum over m: the shifts come in exact ± mirror pairs
            // around the vanishing m = 0 entry, so the paired sum is 0.0
            let mid = ell as usize;
            assert_eq!(rep.sublevels[mid].shift, 0.0);
            let mut paired_sum = 0.0f64;
            for k in 1..=ell as usize {
                assert_eq!(
                    rep.sublevels[mid + k].shift,
                    -rep.sublevels[mid - k].shift,
                    "criterion 5: FAIL — ±m shifts not exact mirrors at ell={ell}, k={k}"
                );
                paired_sum += rep.sublevels[mid + k].shift + rep.sublevels[mid - k].shift;
            }
            assert_eq!(
                paired_sum, 0.0,
                "criterion 5: FAIL — shifts not zero-sum at ell={ell}"
            );

            // m-linearity at machine precision
            let slope = rep.sublevels.last().unwrap().shift / ell as f64;
            for s in &rep.sublevels {
                let want = s.m as f64 * slope;
                assert!(
                    (s.shift - want).abs() <= 4.0 * f64::EPSILON * want.abs(),
                    "criterion 5: FAIL — m-linearity broken at ell={ell}, m={}",
                    s.m
                );
            }

            // θ-linearity is exact scaling
            let p2 = params(0.5, 2.0 * theta, FormulaMode::Rederived);
            let rep2 = split_level(&p2, n, ell, route).unwrap();
            for (a, b) in rep.sublevels.iter().zip(&rep2.sublevels) {
                assert_eq!(
                    b.shift,
                    2.0 * a.shift,
                    "criterion 5: FAIL — theta-linearity broken at ell={ell}, m={}",
                    a.m
                );
            }
        }
    }
    println!(
        "criterion 5: PASS — every level splits into exactly 2l+1 sublevels, \
         shifts exactly linear in m and theta, zero-sum over m"
    );
}

#[test]
fn criterion_6_perturbative_consistency() {
    // Faithful check as stated: the fitted exponent of
    // |delta_e_oracle − delta_e_matrix| over θ ∈ {1e-5, 1e-4, 1e-3} must lie
    // in [1.8, 2.2]. The honest exponent is 3/2: the θ·ℓ(ℓ+1)/r⁴ term is a
    // singular perturbation (second-order response cut off at r ~ √θ), so
    // the remainder is ∝ θ^{3/2} — grid-converged and reproducible. The
    // companion test below verifies the true first-order consistency.
    let thetas = [1e-5, 1e-4, 1e-3];
    let mut deviations = Vec::new();
    for &theta in &thetas {
        let p = params(0.5, theta, FormulaMode::Rederived);
        let qn = QuantumNumbers::new(2, 1, 1).unwrap();
        let base = GridSpec::auto(&p, &qn, 4000).unwrap();
        let oracle = nc_shift_extrapolated(&p, &qn, &base, 1e-12).unwrap();
        let matrix = nc_energy_shift(&p, &qn, ShiftRoute::Matrix).unwrap();
        deviations.push((oracle - matrix).abs());
    }
    // least-squares slope of log10 D against log10 θ
    let lx: Vec<f64> = thetas.iter().map(|t| t.log10()).collect();
    let ly: Vec<f64> = deviations.iter().map(|d| d.log10()).collect();
    let mx = lx.iter().sum::<f64>() / 3.0;
    let my = ly.iter().sum::<f64>() / 3.0;
    let p_fit = lx
        .iter()
        .zip(&ly)
        .map(|(x, y)| (x - mx) * (y - my))
        .sum::<f64>()
        / lx.iter().map(|x| (x - mx) * (x - mx)).sum::<f64>();

    assert!(
        (1.8..=2.2).contains(&p_fit),
        "criterion 6: FAIL — fitted exponent p = {p_fit:.3} outside [1.8, 2.2]; \
         deviations {:.3e}, {:.3e}, {:.3e} at theta = 1e-5, 1e-4, 1e-3 \
         (consistent with the singular-perturbation scaling 0.04*theta^1.5; \
         the first-order slopes themselves do agree, see \
         criterion_6_companion_first_order_agreement)",
        deviations[0],
        deviations[1],
        deviations[2]
    );
    println!("criterion 6: PASS — |oracle − matrix| scales as theta^{p_fit:.2}");
}

#[test]
fn criterion_6_companion_first_order_agreement() {
    // The honest content behind criterion 6: the nonperturbative slope
    // converges to the matrix-route slope as θ → 0 (within the θ^{1/2}
    // window, ≤ 1% at θ = 1e-5).
    let theta = 1e-5;
    let p = params(0.5, theta, FormulaMode::Rederived);
    let qn = QuantumNumbers::new(2, 1, 1).unwrap();
    let base = GridSpec::auto(&p, &qn, 4000).unwrap();
    let oracle_slope = nc_shift_extrapolated(&p, &qn, &base, 1e-12).unwrap() / theta;
    let matrix_slope = nc_energy_shift(&p, &qn, ShiftRoute::Matrix).unwrap() / theta;
    let rel = ((oracle_slope - matrix_slope) / matrix_slope).abs();
    assert!(
        rel <= 0.01,
        "first-order slopes disagree: oracle {oracle_slope:.6e} vs matrix {matrix_slope:.6e} \
         (rel {rel:.3e})"
    );
    println!(
        "criterion 6 companion: PASS — nonperturbative slope matches the matrix route \
         to {rel:.2e} at theta=1e-5"
    );
}

#[test]
fn criterion_7_discrepancy_ledger_completeness() {
    for &x in &GRID_COUPLINGS {
        let mut cfg = RunConfig {
            params: params(x, 1e-4, FormulaMode::Rederived),
            n_max: 4,
            grid_points: 1500,
            tol: 1e-11,
            ..RunConfig::default()
        };
        cfg.routes.oracle = true;
        let run = run_spectrum(&cfg).unwrap();

        for (n, ell) in grid_states() {
            if ell == 0 {
                continue;
            }
            let recs: Vec<_> = run
                .discrepancies
                .iter()
                .filter(|r| r.n == n as u32 && r.ell == ell as u32)
                .collect();
            for quantity in ["norm", "rho_m3", "rho_m4", "E0", "dE"] {
                let found: Vec<_> = recs.iter().filter(|r| r.quantity == quantity).collect();
                assert_eq!(
                    found.len(),
                    1,
                    "criterion 7: FAIL — expected exactly one `{quantity}` record at \
                     (n={n}, ell={ell}, Zalpha={x}), found {}",
                    found.len()
                );
                assert_ne!(
                    found[0].verdict,
                    Verdict::SingularSkipped,
                    "criterion 7: FAIL — `{quantity}` record at (n={n}, ell={ell}, Zalpha={x}) \
                     was skipped instead of computed"
                );
                assert!(
                    found[0].paper_value.is_some() && found[0].oracle_value.is_some(),
                    "criterion 7: FAIL — `{quantity}` record not fully labeled"
                );
            }
        }
        // internal quadrature-vs-identity records all match at 1e-10
        for rec in &run.discrepancies {
            if rec.quantity.ends_with("_identity") {
                assert_eq!(
                    rec.verdict,
                    Verdict::Match,
                    "criterion 7: FAIL — internal identity record out of tolerance: {rec:?}"
                );
                assert!(rec.relative_deviation.unwrap() <= 1e-10);
            }
        }
    }
    println!(
        "criterion 7: PASS — ledger complete (one norm/rho_m3/rho_m4/E0/dE record per \
         ell>=1 state; all internal identity records match at 1e-10)"
    );
}

#[test]
fn criterion_8_output_determinism() {
    let cfg = RunConfig {
        n_max: 2,
        ..RunConfig::default()
    };
    let run_a = run_spectrum(&cfg).unwrap();
    let run_b = run_spectrum(&cfg).unwrap();
    assert_eq!(
        render_csv(&run_a),
        render_csv(&run_b),
        "criterion 8: FAIL — csv not byte-identical"
    );
    assert_eq!(
        render_json(&run_a),
        render_json(&run_b),
        "criterion 8: FAIL — json not byte-identical"
    );

    let svg_cfg = RunConfig {
        n_max: 2,
        ell: Some(1),
        ..RunConfig::default()
    };
    let svg = render_svg(&run_spectrum(&svg_cfg).unwrap());
    let ticks = svg.matches("class=\"tick\"").count();
    assert_eq!(
        ticks, 3,
        "criterion 8: FAIL — expected 3 sublevel ticks for (n=2, ell=1), found {ticks}"
    );
    println!("criterion 8: PASS — byte-identical csv/json on rerun; (2,1) svg has 3 ticks");
}
