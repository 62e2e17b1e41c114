mod algebra;
mod channel;
mod extend;
mod output;
mod region;
mod selftest;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qclone_operators::{dense_cap, DENSE_CAP_ENV};

use output::{CliError, Failure};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub dense_cap: usize,
    pub tol_spectral: f64,
    pub tol_psd: f64,
    pub tol_region: f64,
    pub seed: u64,
    pub format: OutputFormat,
}

#[derive(Parser, Debug)]
#[command(name = "qclone", version, about = "Quantum cloning and extendibility toolkit")]
struct Cli {
    /// Largest dense operator dimension (also read from QCLONE_DENSE_CAP).
    #[arg(long, global = true)]
    dense_cap: Option<usize>,
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol_spectral: f64,
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol_psd: f64,
    #[arg(long, global = true, default_value_t = 1e-4)]
    tol_region: f64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Cloning regions.
    #[command(subcommand)]
    Region(RegionCmd),
    /// Optimal cloning channels.
    #[command(subcommand)]
    Channel(ChannelCmd),
    /// Extendibility of the isotropic family.
    #[command(subcommand)]
    Extend(ExtendCmd),
    /// Diagram algebra.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Run the built-in checks.
    Selftest {
        #[arg(long, value_enum, default_value_t = Level::Fast)]
        level: Level,
    },
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Level {
    Fast,
    Full,
}

#[derive(Subcommand, Debug)]
enum RegionCmd {
    /// Ellipse family bounding the 1->2 region.
    TwoClone {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 16)]
        count: usize,
    },
    /// Membership of a shrink-factor vector.
    Member {
        #[arg(long)]
        d: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        p: Vec<f64>,
    },
    /// Boundary samples of the 1->N region.
    Boundary {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 32)]
        samples: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ChannelCmd {
    Symmetric {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    Asymmetric {
        #[arg(long)]
        d: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        a: Vec<f64>,
    },
}

#[derive(Subcommand, Debug)]
enum ExtendCmd {
    /// Closed-form p(N,d) for 2 <= N <= nmax, 2 <= d <= dmax.
    Table {
        #[arg(long)]
        nmax: usize,
        #[arg(long)]
        dmax: usize,
    },
    /// Closed form, numeric dual and matching primal side by side.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// The explicit optimal state for N=3, d=3.
    State33 {
        #[arg(long)]
        emit_operator: bool,
    },
}

#[derive(Subcommand, Debug)]
enum AlgebraCmd {
    Compose {
        #[arg(long)]
        family: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
}

fn config(cli: &Cli) -> Result<RunConfig, CliError> {
    if let Some(cap) = cli.dense_cap {
        if cap == 0 {
            return Err(CliError::usage("--dense-cap must be positive"));
        }
        std::env::set_var(DENSE_CAP_ENV, cap.to_string());
    }
    for (name, v) in [("tol-spectral", cli.tol_spectral), ("tol-psd", cli.tol_psd), ("tol-region", cli.tol_region)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(CliError::usage(format!("--{name} must be positive")));
        }
    }
    Ok(RunConfig {
        dense_cap: dense_cap(),
        tol_spectral: cli.tol_spectral,
        tol_psd: cli.tol_psd,
        tol_region: cli.tol_region,
        seed: cli.seed,
        format: cli.format,
    })
}

/// Output document plus the exit code to return alongside it.
fn run(cli: Cli) -> Result<(String, u8), CliError> {
    let cfg = config(&cli)?;
    let table = matches!(cli.cmd, Cmd::Extend(ExtendCmd::Table { .. }));
    if cfg.format == OutputFormat::Csv && !table {
        return Err(CliError::usage("csv output is only available for `extend table`"));
    }
    let ok = |s: String| Ok((s, 0));
    let flagged = |(s, good): (String, bool), bad: Failure| Ok((s, if good { 0 } else { bad as u8 }));
    match cli.cmd {
        Cmd::Region(RegionCmd::TwoClone { d, count }) => ok(region::two_clone(d, count)?),
        Cmd::Region(RegionCmd::Member { d, p }) => flagged(region::member(d, &p, &cfg)?, Failure::Outside),
        Cmd::Region(RegionCmd::Boundary { d, n, samples }) => ok(region::boundary(d, n, samples, &cfg)?),
        Cmd::Channel(ChannelCmd::Symmetric { n, d }) => ok(channel::symmetric(n, d, &cfg)?),
        Cmd::Channel(ChannelCmd::Asymmetric { d, a }) => ok(channel::asymmetric(d, a, &cfg)?),
        Cmd::Extend(ExtendCmd::Table { nmax, dmax }) => ok(extend::table(nmax, dmax, &cfg)?),
        Cmd::Extend(ExtendCmd::Verify { n, d }) => flagged(extend::verify(n, d)?, Failure::Verification),
        Cmd::Extend(ExtendCmd::State33 { emit_operator }) => ok(extend::state33(emit_operator)?),
        Cmd::Algebra(AlgebraCmd::Compose { family, k, p, q }) => ok(algebra::compose(&family, k, &p, &q)?),
        Cmd::Selftest { level } => {
            flagged(selftest::run(matches!(level, Level::Full), cfg.seed)?, Failure::Verification)
        }
    }
}

fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let mut buf = text.to_string();
    if !buf.ends_with('\n') {
        buf.push('\n');
    }
    let _ = out.write_all(buf.as_bytes());
    let _ = out.flush();
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            emit(&CliError::usage(e.to_string().trim().to_string()).to_json());
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok((doc, code)) => {
            emit(&doc);
            ExitCode::from(code)
        }
        Err(e) => {
            emit(&e.to_json());
            ExitCode::from(e.code() as u8)
        }
    }
}
