//! Command implementations behind the `tsleig` binary. Every command renders
//! its result to a string so that output is testable and byte-reproducible.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::asymptotics::{Asymptotics, Order, SolverConfig, SpectrumEstimate, N_MIN};
use crate::circle::grid_size_for;
use crate::error::{Error, Result};
use crate::oracle::{pair_spectra, toeplitz_spectrum, ComparisonReport, DenseSpectrum};
use crate::phase::PhaseFunction;
use crate::symbol::{example_symbol_a1, FourierSymbol, SymbolFile, DEFAULT_A1_GRID};

pub const SCHEMA_VERSION: u32 = 1;

/// Published maximum relative errors `(n, order 1, order 2)` for the example symbol.
pub const REFERENCE_TABLE: [(usize, f64, f64); 5] = [
    (20, 3.2e-3, 3.9e-4),
    (40, 8.8e-4, 5.6e-5),
    (80, 2.3e-4, 7.2e-6),
    (160, 5.9e-5, 9.2e-7),
    (320, 1.5e-5, 1.2e-7),
];

pub const TABLE1_SIZES: [usize; 5] = [20, 40, 80, 160, 320];

const CURVE_SAMPLES: usize = 512;
const VALIDATION_PROBES: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymbolSource {
    Tridiagonal,
    ExampleA1,
    File(PathBuf),
}

impl FromStr for SymbolSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "tridiagonal" => SymbolSource::Tridiagonal,
            "example-a1" | "a1" => SymbolSource::ExampleA1,
            "" => return Err(Error::InvalidArgument("empty symbol name".into())),
            path => SymbolSource::File(PathBuf::from(path)),
        })
    }
}

impl SymbolSource {
    /// Loads the symbol. The built-in example is resolved with enough coefficients for `n_max`.
    pub fn resolve(&self, n_max: usize) -> Result<FourierSymbol> {
        match self {
            SymbolSource::Tridiagonal => Ok(FourierSymbol::tridiagonal()),
            SymbolSource::ExampleA1 => {
                let band = (2 * n_max).max(64);
                let grid = DEFAULT_A1_GRID.max(grid_size_for(4 * band));
                example_symbol_a1(grid, band)
            }
            SymbolSource::File(path) => SymbolFile::read(path),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::InvalidArgument(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub symbol_source: SymbolSource,
    pub n_list: Vec<usize>,
    pub order: Order,
    pub solver: SolverConfig,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub parallel: bool,
}

impl RunConfig {
    pub fn new(symbol_source: SymbolSource, n_list: Vec<usize>) -> Self {
        Self {
            symbol_source,
            n_list,
            order: Order::Two,
            solver: SolverConfig::default(),
            output_path: None,
            format: Format::Csv,
            parallel: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_list.is_empty() {
            return Err(Error::InvalidArgument("at least one dimension n is required".into()));
        }
        if let Some(&bad) = self.n_list.iter().find(|&&n| n == 0) {
            return Err(Error::InvalidArgument(format!("dimension must be positive, got {bad}")));
        }
        self.solver.validate()
    }

    pub fn symbol(&self) -> Result<FourierSymbol> {
        self.validate()?;
        let n_max = self.n_list.iter().copied().max().unwrap_or(1);
        self.symbol_source.resolve(n_max)
    }

    fn map_n<T: Send>(&self, f: impl Fn(usize) -> Result<T> + Sync + Send) -> Result<Vec<T>> {
        if self.parallel {
            self.n_list.par_iter().map(|&n| f(n)).collect()
        } else {
            self.n_list.iter().map(|&n| f(n)).collect()
        }
    }
}

/// Rendered command result.
#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub text: String,
    /// False when the command ran but its check failed.
    pub success: bool,
}

impl CommandOutput {
    fn ok(text: String) -> Self {
        Self { text, success: true }
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn cnum(z: Complex64) -> String {
    format!("{},{}", num(z.re), num(z.im))
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn cmd_validate(cfg: &RunConfig) -> Result<CommandOutput> {
    let sym = cfg.symbol()?;
    let report = sym.validate_simple_loop(VALIDATION_PROBES);
    let failures = report.failures();
    let text = match cfg.format {
        Format::Json => to_json(&json!({
            "schema": SCHEMA_VERSION,
            "valid": failures.is_empty(),
            "report": report,
            "failures": failures,
        }))?,
        Format::Csv => {
            let mut s = String::from("check,value\n");
            let _ = writeln!(s, "is_symmetric,{}", report.is_symmetric);
            let _ = writeln!(s, "min_abs_g_prime_interior,{}", num(report.min_abs_g_prime_interior));
            let _ = writeln!(s, "g_pp_at_0,{}", cnum(report.g_pp_at_0));
            let _ = writeln!(s, "g_pp_at_pi,{}", cnum(report.g_pp_at_pi));
            let _ = writeln!(s, "arc_self_intersection,{}", report.arc_self_intersection);
            let _ = writeln!(s, "M0,{}", cnum(report.m0));
            let _ = writeln!(s, "M1,{}", cnum(report.m1));
            for f in &failures {
                let _ = writeln!(s, "failure,\"{f}\"");
            }
            s
        }
    };
    Ok(CommandOutput {
        text,
        success: failures.is_empty(),
    })
}

pub fn cmd_eta_table(cfg: &RunConfig, points: usize) -> Result<CommandOutput> {
    let sym = cfg.symbol()?;
    let tables = cfg.map_n(|n| {
        PhaseFunction::new(&sym, n)
            .with_oversample(cfg.solver.oversample)?
            .eta_table(points)
    })?;
    let text = match cfg.format {
        Format::Json => {
            let per_n: Vec<_> = cfg
                .n_list
                .iter()
                .zip(&tables)
                .map(|(n, rows)| json!({ "n": n, "rows": rows }))
                .collect();
            to_json(&json!({ "schema": SCHEMA_VERSION, "tables": per_n }))?
        }
        Format::Csv => {
            let mut s = String::from("n,s,eta_re,eta_im,eta_prime_re,eta_prime_im,branch_jump\n");
            for (n, rows) in cfg.n_list.iter().zip(&tables) {
                for r in rows {
                    let _ = writeln!(
                        s,
                        "{n},{},{},{},{}",
                        num(r.s),
                        cnum(r.eta),
                        cnum(r.eta_prime),
                        r.branch_jump
                    );
                }
            }
            s
        }
    };
    Ok(CommandOutput::ok(text))
}

/// Asymptotic estimates for one `n`, or `None` below the asymptotic threshold.
fn estimate_for(sym: &FourierSymbol, n: usize, solver: SolverConfig) -> Result<Option<SpectrumEstimate>> {
    if n < N_MIN {
        return Ok(None);
    }
    Asymptotics::new(sym, n, solver)?.full_spectrum().map(Some)
}

pub fn cmd_spectrum(cfg: &RunConfig) -> Result<CommandOutput> {
    let sym = cfg.symbol()?;
    let results = cfg.map_n(|n| {
        Ok(match estimate_for(&sym, n, cfg.solver)? {
            Some(est) => (est, None),
            None => (
                SpectrumEstimate { n, records: Vec::new() },
                Some(toeplitz_spectrum(&sym, n)?),
            ),
        })
    })?;
    let text = match cfg.format {
        Format::Json => {
            let per_n: Vec<_> = results
                .iter()
                .map(|(est, oracle)| match oracle {
                    None => json!({ "n": est.n, "order": cfg.order, "records": est.records }),
                    Some(o) => json!({ "n": est.n, "oracle_only": true, "eigenvalues": o.eigenvalues }),
                })
                .collect();
            to_json(&json!({ "schema": SCHEMA_VERSION, "spectra": per_n }))?
        }
        Format::Csv => {
            let mut s = String::from(
                "n,j,d_jn,s_re,s_im,iterations,lambda0_re,lambda0_im,lambda1_re,lambda1_im,\
                 lambda2_re,lambda2_im,lambda_fixed_re,lambda_fixed_im,lambda_re,lambda_im\n",
            );
            for (est, oracle) in &results {
                if let Some(o) = oracle {
                    // below the asymptotic threshold only the oracle columns are filled
                    for (k, l) in o.eigenvalues.iter().enumerate() {
                        let _ = writeln!(s, "{},{},,,,,,,,,,,,,{}", est.n, k + 1, cnum(*l));
                    }
                    continue;
                }
                for r in &est.records {
                    let l2 = r.lambda_order2.map_or(",".to_string(), cnum);
                    let chosen = r.lambda(cfg.order).map_or(",".to_string(), cnum);
                    let _ = writeln!(
                        s,
                        "{},{},{},{},{},{},{},{},{},{}",
                        est.n,
                        r.j,
                        num(r.d_jn),
                        cnum(r.s_jn),
                        r.iterations,
                        cnum(r.lambda_order0),
                        cnum(r.lambda_order1),
                        l2,
                        cnum(r.lambda_fixed),
                        chosen
                    );
                }
            }
            s
        }
    };
    Ok(CommandOutput::ok(text))
}

pub fn cmd_oracle(cfg: &RunConfig) -> Result<CommandOutput> {
    let sym = cfg.symbol()?;
    let spectra = cfg.map_n(|n| toeplitz_spectrum(&sym, n))?;
    let text = match cfg.format {
        Format::Json => to_json(&json!({ "schema": SCHEMA_VERSION, "spectra": spectra }))?,
        Format::Csv => oracle_csv(&spectra),
    };
    Ok(CommandOutput::ok(text))
}

fn oracle_csv(spectra: &[DenseSpectrum]) -> String {
    let mut s = String::from("n,index,re,im,trace_residual,det_residual\n");
    for sp in spectra {
        for (k, l) in sp.eigenvalues.iter().enumerate() {
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                sp.n,
                k,
                cnum(*l),
                num(sp.trace_residual),
                num(sp.det_residual)
            );
        }
    }
    s
}

/// Oracle spectrum, asymptotic estimates and their matching for one `n`.
pub fn compare_one(sym: &FourierSymbol, n: usize, order: Order, solver: SolverConfig) -> Result<ComparisonReport> {
    let est = estimate_for(sym, n, solver)?.ok_or_else(|| {
        Error::InvalidArgument(format!("comparison needs n >= {N_MIN}, got {n}"))
    })?;
    let oracle = toeplitz_spectrum(sym, n)?;
    pair_spectra(&oracle, &est, order)
}

pub fn cmd_compare(cfg: &RunConfig) -> Result<CommandOutput> {
    let sym = cfg.symbol()?;
    let reports = cfg.map_n(|n| compare_one(&sym, n, cfg.order, cfg.solver))?;
    let text = match cfg.format {
        Format::Json => {
            if let [single] = reports.as_slice() {
                let mut v = serde_json::to_value(single)?;
                v["schema"] = json!(SCHEMA_VERSION);
                to_json(&v)?
            } else {
                to_json(&json!({ "schema": SCHEMA_VERSION, "reports": reports }))?
            }
        }
        Format::Csv => {
            let mut s = String::from("n,j,oracle_index,abs_error,rel_error\n");
            for r in &reports {
                for (j, (&k, (a, rel))) in r.pairing.iter().zip(r.per_j_abs.iter().zip(&r.per_j_rel)).enumerate() {
                    let _ = writeln!(s, "{},{},{},{},{}", r.n, j + 1, k, num(*a), num(*rel));
                }
            }
            s
        }
    };
    Ok(CommandOutput::ok(text))
}

#[derive(Debug, Clone, Serialize)]
pub struct Table1Row {
    pub n: usize,
    pub delta1: f64,
    pub delta2: f64,
    pub delta_fixed: f64,
    pub reference_delta1: Option<f64>,
    pub reference_delta2: Option<f64>,
    /// Computed over published value.
    pub ratio1: Option<f64>,
    pub ratio2: Option<f64>,
    /// `delta(previous n) / delta(n)` for consecutive rows.
    pub step_ratio1: Option<f64>,
    pub step_ratio2: Option<f64>,
    pub ambiguous: bool,
}

pub fn reference_row(n: usize) -> Option<(f64, f64)> {
    REFERENCE_TABLE
        .iter()
        .find(|r| r.0 == n)
        .map(|&(_, d1, d2)| (d1, d2))
}

/// Maximum relative errors of the order-1 and order-2 estimates for each `n`.
pub fn table1_rows(
    sym: &FourierSymbol,
    n_list: &[usize],
    solver: SolverConfig,
    parallel: bool,
    with_reference: bool,
) -> Result<Vec<Table1Row>> {
    let run = |&n: &usize| compare_one(sym, n, Order::Two, solver);
    let reports: Vec<ComparisonReport> = if parallel {
        n_list.par_iter().map(run).collect::<Result<_>>()?
    } else {
        n_list.iter().map(run).collect::<Result<_>>()?
    };
    let mut rows: Vec<Table1Row> = Vec::with_capacity(reports.len());
    for r in reports {
        let delta2 = r.delta2.unwrap_or(f64::NAN);
        let reference = if with_reference { reference_row(r.n) } else { None };
        let prev = rows.last();
        rows.push(Table1Row {
            n: r.n,
            delta1: r.delta1,
            delta2,
            delta_fixed: r.delta_fixed,
            reference_delta1: reference.map(|x| x.0),
            reference_delta2: reference.map(|x| x.1),
            ratio1: reference.map(|x| r.delta1 / x.0),
            ratio2: reference.map(|x| delta2 / x.1),
            step_ratio1: prev.map(|p| p.delta1 / r.delta1),
            step_ratio2: prev.map(|p| p.delta2 / delta2),
            ambiguous: r.ambiguous,
        });
    }
    Ok(rows)
}

pub fn cmd_table1(cfg: &RunConfig) -> Result<CommandOutput> {
    let sym = cfg.symbol()?;
    let with_reference = cfg.symbol_source == SymbolSource::ExampleA1;
    let rows = table1_rows(&sym, &cfg.n_list, cfg.solver, cfg.parallel, with_reference)?;
    let opt = |x: Option<f64>| x.map_or(String::new(), num);
    let text = match cfg.format {
        Format::Json => to_json(&json!({ "schema": SCHEMA_VERSION, "rows": rows }))?,
        Format::Csv => {
            let mut s = String::from(
                "n,delta1,delta2,delta_fixed,reference_delta1,reference_delta2,ratio1,ratio2,step_ratio1,step_ratio2\n",
            );
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{},{},{},{}",
                    r.n,
                    num(r.delta1),
                    num(r.delta2),
                    num(r.delta_fixed),
                    opt(r.reference_delta1),
                    opt(r.reference_delta2),
                    opt(r.ratio1),
                    opt(r.ratio2),
                    opt(r.step_ratio1),
                    opt(r.step_ratio2)
                );
            }
            s
        }
    };
    Ok(CommandOutput::ok(text))
}

/// Samples of `g` on `[0, pi]` followed by oracle and estimated eigenvalues, one row per point.
pub fn cmd_plotdata(cfg: &RunConfig) -> Result<CommandOutput> {
    if cfg.format == Format::Json {
        return Err(Error::InvalidArgument("plot data is emitted as CSV only".into()));
    }
    let sym = cfg.symbol()?;
    let per_n = cfg.map_n(|n| {
        let oracle = toeplitz_spectrum(&sym, n)?;
        let est = estimate_for(&sym, n, cfg.solver)?;
        Ok((n, oracle, est))
    })?;
    let mut s = String::from("kind,n,index,re,im\n");
    for k in 0..=CURVE_SAMPLES {
        let phi = PI * k as f64 / CURVE_SAMPLES as f64;
        let _ = writeln!(s, "curve,,{k},{}", cnum(sym.g(Complex64::new(phi, 0.0))));
    }
    for (n, oracle, est) in &per_n {
        for (k, l) in oracle.eigenvalues.iter().enumerate() {
            let _ = writeln!(s, "oracle,{n},{k},{}", cnum(*l));
        }
        if let Some(est) = est {
            for r in &est.records {
                if let Some(l) = r.lambda(cfg.order) {
                    let _ = writeln!(s, "estimate,{n},{},{}", r.j, cnum(l));
                }
            }
        }
    }
    Ok(CommandOutput::ok(s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbol_source_parsing() {
        assert_eq!("tridiagonal".parse::<SymbolSource>().unwrap(), SymbolSource::Tridiagonal);
        assert_eq!("example-a1".parse::<SymbolSource>().unwrap(), SymbolSource::ExampleA1);
        assert_eq!(
            "sym.json".parse::<SymbolSource>().unwrap(),
            SymbolSource::File(PathBuf::from("sym.json"))
        );
        assert!("".parse::<SymbolSource>().is_err());
        assert!("xml".parse::<Format>().is_err());
    }

    #[test]
    fn config_checks() {
        assert!(RunConfig::new(SymbolSource::Tridiagonal, vec![]).validate().is_err());
        assert!(RunConfig::new(SymbolSource::Tridiagonal, vec![4, 0]).validate().is_err());
        assert!(RunConfig::new(SymbolSource::Tridiagonal, vec![4]).validate().is_ok());
    }

    #[test]
    fn validate_tridiagonal() {
        let out = cmd_validate(&RunConfig::new(SymbolSource::Tridiagonal, vec![10])).unwrap();
        assert!(out.success);
        assert!(out.text.starts_with("check,value\n"));
    }

    #[test]
    fn spectrum_output_is_deterministic() {
        let mut cfg = RunConfig::new(SymbolSource::Tridiagonal, vec![5, 12]);
        let a = cmd_spectrum(&cfg).unwrap().text;
        cfg.parallel = true;
        let b = cmd_spectrum(&cfg).unwrap().text;
        assert_eq!(a, b);
        // n = 5 is below the asymptotic threshold, 5 oracle rows + 12 estimate rows
        assert_eq!(a.lines().count(), 1 + 5 + 12);
    }

    #[test]
    fn tridiagonal_plot_points_are_real() {
        let cfg = RunConfig::new(SymbolSource::Tridiagonal, vec![10]);
        let text = cmd_plotdata(&cfg).unwrap().text;
        for line in text.lines().skip(1) {
            let cols: Vec<&str> = line.split(',').collect();
            let re: f64 = cols[3].parse().unwrap();
            let im: f64 = cols[4].parse().unwrap();
            assert!(im.abs() < 1e-12);
            assert!(re.abs() <= 2.0 + 1e-12);
        }
    }

    #[test]
    fn compare_json_has_schema() {
        let mut cfg = RunConfig::new(SymbolSource::Tridiagonal, vec![10]);
        cfg.format = Format::Json;
        let text = cmd_compare(&cfg).unwrap().text;
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["pairing"].as_array().unwrap().len(), 10);
    }
}
