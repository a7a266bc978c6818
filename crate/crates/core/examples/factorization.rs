//! Wiener-Hopf factorization of `b_n(t, s)` and the check `b_+ b_- = b` on the grid.

use num_complex::Complex64;
use tsleig::circle::to_samples;
use tsleig::phase::BBackend;
use tsleig::{example_symbol_a1, PhaseFunction};

fn main() -> tsleig::Result<()> {
    let sym = example_symbol_a1(8192, 256)?;
    let n = 80;
    let phase = PhaseFunction::new(&sym, n);
    println!("n = {n}, grid size = {}", phase.grid_size());

    for s in [0.3, 1.2, 2.5] {
        let s = Complex64::new(s, 0.0);
        let fac = phase.factorize(s)?;
        let reference = phase.sample_b(s, BBackend::Direct)?;
        // chi is the geometric mean of b: exp of the trapezoid rule for the mean of log b
        let log_b = to_samples(&fac.log_coeffs);
        let mean: Complex64 = log_b.values().iter().sum::<Complex64>() / log_b.size() as f64;
        println!(
            "s = {:.2}: chi = {:.10}, |chi - exp(mean log b)| = {:.1e}, residual = {:.1e}",
            s.re,
            fac.chi,
            (fac.chi - mean.exp()).norm(),
            fac.reconstruction_residual(&reference)
        );
    }
    Ok(())
}
