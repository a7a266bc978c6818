//! Writes the curve `g([0, pi])` and the eigenvalues of `T_20(a)` and `T_80(a)` as CSV.

use tsleig::report::{cmd_plotdata, RunConfig, SymbolSource};

fn main() -> tsleig::Result<()> {
    let cfg = RunConfig::new(SymbolSource::ExampleA1, vec![20, 80]);
    let out = cmd_plotdata(&cfg)?;
    let path = std::env::temp_dir().join("tsleig_plot.csv");
    std::fs::write(&path, &out.text)?;
    println!("{} rows written to {}", out.text.lines().count() - 1, path.display());
    Ok(())
}
