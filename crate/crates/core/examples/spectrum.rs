//! Eigenvalue estimates of every order for `T_20(a)`.

use tsleig::{example_symbol_a1, full_spectrum, SolverConfig};

fn main() -> tsleig::Result<()> {
    let sym = example_symbol_a1(8192, 256)?;
    let est = full_spectrum(&sym, 20, SolverConfig::default())?;
    println!("{:>3} {:>10} {:>36} {:>5} {:>36}", "j", "d_jn", "s_jn", "iter", "lambda (fixed point)");
    for r in &est.records {
        println!(
            "{:3} {:10.6} {:>36} {:5} {:>36}",
            r.j,
            r.d_jn,
            format!("{:.12}", r.s_jn),
            r.iterations,
            format!("{:.12}", r.lambda_fixed)
        );
    }
    Ok(())
}
