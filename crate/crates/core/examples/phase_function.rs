//! The phase function `eta_n(s)` by two independent routes, and its derivative.

use num_complex::Complex64;
use tsleig::{example_symbol_a1, EtaRoute, PhaseFunction};

fn main() -> tsleig::Result<()> {
    let sym = example_symbol_a1(8192, 256)?;
    let phase = PhaseFunction::new(&sym, 80);
    println!("{:>6} {:>40} {:>10} {:>10}", "s", "eta (factorization)", "|diff pv|", "|diff fd|");
    for k in 1..10 {
        let s = Complex64::new(std::f64::consts::PI * k as f64 / 10.0, 0.0);
        let fac = phase.eta(s, EtaRoute::Factorization)?;
        let pv = phase.eta(s, EtaRoute::PvIntegral)?;
        let analytic = phase.eta_derivative(s)?;
        let fd = phase.eta_derivative_fd(s, 1e-5)?;
        println!(
            "{:6.3} {:>40} {:10.1e} {:10.1e}",
            s.re,
            format!("{:.12}", fac.eta),
            (fac.eta - pv.eta).norm(),
            (analytic - fd).norm()
        );
    }
    Ok(())
}
