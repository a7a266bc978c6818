//! Quadratic end-point formula for the extreme eigenvalues and the normal offset
//! of the interior ones.

use tsleig::asymptotics::{Asymptotics, End};
use tsleig::oracle::{pair_spectra, toeplitz_spectrum};
use tsleig::asymptotics::Order;
use tsleig::{example_symbol_a1, SolverConfig};

fn main() -> tsleig::Result<()> {
    let sym = example_symbol_a1(8192, 640)?;
    for n in [80, 160, 320] {
        let asy = Asymptotics::new(&sym, n, SolverConfig::default())?;
        let oracle = toeplitz_spectrum(&sym, n)?;
        let est = asy.full_spectrum()?;
        let pairing = pair_spectra(&oracle, &est, Order::Fixed)?.pairing;
        print!("n = {n:3}, scaled edge error:");
        for j in 1..=3 {
            let exact = oracle.eigenvalues[pairing[j - 1]];
            let scaled = (asy.edge_lambda(j, End::Left) - exact).norm() * ((n + 1) as f64).powi(2) / (j * j) as f64;
            print!(" {scaled:.4}");
        }
        let mid = n / 2;
        let nd = asy.normal_displacement(mid)?;
        let exact = oracle.eigenvalues[pairing[mid - 1]];
        println!(
            " | j = {mid}: side {:+}, |g(e) + offset - lambda| = {:.2e}",
            nd.side,
            (nd.point_on_curve + nd.offset - exact).norm()
        );
    }
    Ok(())
}
