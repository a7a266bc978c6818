//! Checks the simple-loop conditions for the built-in symbols and a user-defined one.

use num_complex::Complex64;
use tsleig::symbol::SymbolFile;
use tsleig::{example_symbol_a1, FourierSymbol};

fn show(name: &str, sym: &FourierSymbol) {
    let report = sym.validate_simple_loop(512);
    println!("{name}: valid = {}", report.is_valid());
    println!("  end points g(0) = {:.6}, g(pi) = {:.6}", report.m0, report.m1);
    println!("  min |g'| inside = {:.3e}", report.min_abs_g_prime_interior);
    for f in report.failures() {
        println!("  failure: {f}");
    }
}

fn main() -> tsleig::Result<()> {
    show("tridiagonal", &FourierSymbol::tridiagonal());
    show("example-a1", &example_symbol_a1(8192, 256)?);
    show("constant", &FourierSymbol::constant(Complex64::new(5.0, 0.0)));

    let pentadiagonal = SymbolFile::parse(
        r#"{"coeffs": [[0, 0.3, 0.1], [1, 1.0, 0.0], [-1, 1.0, 0.0], [2, 0.2, 0.15], [-2, 0.2, 0.15]]}"#,
    )?;
    show("pentadiagonal (from JSON)", &pentadiagonal);
    Ok(())
}
