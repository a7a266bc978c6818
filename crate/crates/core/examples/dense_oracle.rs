//! Dense eigenvalues of `T_n(a)` and the comparison with the asymptotic estimates.

use tsleig::asymptotics::Order;
use tsleig::oracle::{pair_spectra, toeplitz_spectrum};
use tsleig::{example_symbol_a1, full_spectrum, SolverConfig};

fn main() -> tsleig::Result<()> {
    let sym = example_symbol_a1(8192, 256)?;
    let n = 40;
    let oracle = toeplitz_spectrum(&sym, n)?;
    println!(
        "n = {n}: trace residual {:.1e}, determinant residual {:.1e}",
        oracle.trace_residual, oracle.det_residual
    );
    let est = full_spectrum(&sym, n, SolverConfig::default())?;
    let report = pair_spectra(&oracle, &est, Order::Fixed)?;
    println!("max relative error, order 0: {:.3e}", report.delta0);
    println!("max relative error, order 1: {:.3e}", report.delta1);
    println!("max relative error, order 2: {:.3e}", report.delta2.unwrap_or(f64::NAN));
    println!("max relative error, fixed point: {:.3e}", report.delta_fixed);
    if report.ambiguous {
        println!("warning: the matching is not unique");
    }
    Ok(())
}
