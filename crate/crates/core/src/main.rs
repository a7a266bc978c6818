use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tsleig::asymptotics::{Order, SolverConfig};
use tsleig::phase::default_oversample;
use tsleig::report::{self, CommandOutput, Format, RunConfig, SymbolSource, TABLE1_SIZES};
use tsleig::Result;

#[derive(Parser)]
#[command(name = "tsleig", version, about = "Toeplitz eigenvalue asymptotics for simple-loop symbols")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the simple-loop conditions of a symbol.
    Validate(Common),
    /// Tabulate eta and eta' on interior points of (0, pi).
    EtaTable {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 64)]
        points: usize,
    },
    /// Asymptotic eigenvalue estimates for every index.
    Spectrum(Common),
    /// Eigenvalues of the dense Toeplitz matrix.
    Oracle(Common),
    /// Match estimates to the dense spectrum and report relative errors.
    Compare(Common),
    /// Maximum relative errors over a list of dimensions.
    Table1(Common),
    /// Curve samples and eigenvalue scatter as CSV.
    Plotdata(Common),
}

#[derive(Args)]
struct Common {
    /// `tridiagonal`, `example-a1` or a path to a JSON coefficient file.
    #[arg(long, default_value = "example-a1")]
    symbol: String,
    #[arg(long, conflicts_with = "n_list")]
    n: Option<usize>,
    /// Comma-separated dimensions.
    #[arg(long, value_delimiter = ',')]
    n_list: Option<Vec<usize>>,
    /// 0, 1, 2 or fixed.
    #[arg(long, default_value = "2")]
    order: String,
    #[arg(long)]
    oversample: Option<usize>,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    #[arg(long, default_value_t = 50)]
    max_iter: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json.
    #[arg(long, default_value = "csv")]
    format: String,
    /// Process the dimensions concurrently; output order is unchanged.
    #[arg(long)]
    parallel: bool,
}

impl Common {
    fn into_config(self, default_n: &[usize]) -> Result<RunConfig> {
        let n_list = match (self.n, self.n_list) {
            (Some(n), _) => vec![n],
            (None, Some(list)) => list,
            (None, None) => default_n.to_vec(),
        };
        let mut cfg = RunConfig::new(self.symbol.parse::<SymbolSource>()?, n_list);
        cfg.order = self.order.parse::<Order>()?;
        cfg.solver = SolverConfig {
            tol: self.tol,
            max_iter: self.max_iter,
            oversample: self.oversample.unwrap_or_else(default_oversample),
            ..SolverConfig::default()
        };
        cfg.output_path = self.out;
        cfg.format = self.format.parse::<Format>()?;
        cfg.parallel = self.parallel;
        cfg.validate()?;
        Ok(cfg)
    }
}

fn run(cli: Cli) -> Result<(CommandOutput, Option<PathBuf>)> {
    let single = [20];
    let (cfg, out) = match cli.command {
        Command::Validate(c) => {
            let cfg = c.into_config(&single)?;
            (report::cmd_validate(&cfg)?, cfg.output_path)
        }
        Command::EtaTable { common, points } => {
            let cfg = common.into_config(&single)?;
            (report::cmd_eta_table(&cfg, points)?, cfg.output_path)
        }
        Command::Spectrum(c) => {
            let cfg = c.into_config(&single)?;
            (report::cmd_spectrum(&cfg)?, cfg.output_path)
        }
        Command::Oracle(c) => {
            let cfg = c.into_config(&single)?;
            (report::cmd_oracle(&cfg)?, cfg.output_path)
        }
        Command::Compare(c) => {
            let cfg = c.into_config(&single)?;
            (report::cmd_compare(&cfg)?, cfg.output_path)
        }
        Command::Table1(c) => {
            let cfg = c.into_config(&TABLE1_SIZES)?;
            (report::cmd_table1(&cfg)?, cfg.output_path)
        }
        Command::Plotdata(c) => {
            let cfg = c.into_config(&single)?;
            (report::cmd_plotdata(&cfg)?, cfg.output_path)
        }
    };
    Ok((cfg, out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli).and_then(|(output, path)| {
        match path {
            Some(p) => std::fs::write(p, &output.text)?,
            None => print!("{}", output.text),
        }
        Ok(output.success)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("tsleig: check failed");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("tsleig: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
