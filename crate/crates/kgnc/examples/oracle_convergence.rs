//! Grid-refinement study of the finite-difference solver: the eigenvalue
//! converges with the second-order stencil signature (ratio ≈ 4) and
//! Richardson extrapolation lands on the closed quantization value.
//!
//! Run: `cargo run --release --example oracle_convergence`

use kgnc::oracle::{solve_selfconsistent, solve_selfconsistent_seeded, GridSpec};
use kgnc::spectrum::{energy_unperturbed, FormulaMode, PhysicalParams, QuantumNumbers};

fn main() -> kgnc::Result<()> {
    let params = PhysicalParams::new(1.0, 0.5, 0.0, FormulaMode::Rederived)?;

    for (n, ell) in [(1i64, 0i64), (2, 1), (3, 1)] {
        let qn = QuantumNumbers::new(n, ell, 0)?;
        let closed = energy_unperturbed(&params, &qn);
        println!("(n={n}, l={ell}): closed form E = {closed:.12}");

        let mut grid = GridSpec::auto(&params, &qn, 1500)?;
        let mut energies = Vec::new();
        let mut seed = None;
        for _ in 0..4 {
            let res = match seed {
                None => solve_selfconsistent(&params, &qn, &grid, 1e-12, 300)?,
                Some(s) => solve_selfconsistent_seeded(&params, &qn, &grid, 1e-12, 300, s)?,
            };
            println!(
                "  {:>6} points: E = {:.12}  ({} iterations, residual {:.1e})",
                grid.points(),
                res.energy,
                res.iterations,
                res.residual
            );
            seed = Some(res.energy);
            energies.push(res.energy);
            grid = grid.refined();
        }
        for w in energies.windows(3) {
            println!(
                "  refinement ratio (E1-E2)/(E2-E3) = {:.3}",
                (w[0] - w[1]) / (w[1] - w[2])
            );
        }
        let a = (4.0 * energies[2] - energies[1]) / 3.0;
        let b = (4.0 * energies[3] - energies[2]) / 3.0;
        let extrapolated = (16.0 * b - a) / 15.0;
        println!(
            "  Richardson: E = {extrapolated:.12}, deviation from closed form {:.2e}\n",
            ((extrapolated - closed) / closed).abs()
        );
    }
    Ok(())
}
