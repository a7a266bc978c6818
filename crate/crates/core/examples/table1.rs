//! Maximum relative errors of the order-1 and order-2 formulas for n = 20 .. 320,
//! next to the published reference values.

use tsleig::report::{table1_rows, TABLE1_SIZES};
use tsleig::{example_symbol_a1, SolverConfig};

fn main() -> tsleig::Result<()> {
    let sym = example_symbol_a1(8192, 640)?;
    let rows = table1_rows(&sym, &TABLE1_SIZES, SolverConfig::default(), true, true)?;
    println!("{:>4} {:>10} {:>10} {:>10} {:>10}", "n", "delta1", "ref", "delta2", "ref");
    for r in rows {
        println!(
            "{:4} {:10.2e} {:10.1e} {:10.2e} {:10.1e}",
            r.n,
            r.delta1,
            r.reference_delta1.unwrap_or(f64::NAN),
            r.delta2,
            r.reference_delta2.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
