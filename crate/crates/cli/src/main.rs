//! `ltfourier`: formal groups, torsion power sums, Fourier estimates and
//! Bernoulli–Hurwitz congruences from the command line.
//!
//! Exit codes: 0 all certified, 2 inconclusive entries, 3 a violation,
//! 4 configuration or input error, 1 anything else.

mod commands;
mod config;
mod input;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ltfourier::report::Verdict;

use config::{GroupKindCfg, RunConfig};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Input(String),
    Io(String),
    Lib(ltfourier::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Io(m) => write!(f, "{m}"),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl From<ltfourier::Error> for CliError {
    fn from(e: ltfourier::Error) -> CliError {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use ltfourier::Error as E;
        match self {
            CliError::Config(_) | CliError::Input(_) => 4,
            CliError::Lib(E::InvalidField(_) | E::InvalidInput(_) | E::Config(_) | E::Json(_)) => 4,
            CliError::Lib(E::Precision(_) | E::NotComputable(_)) => 2,
            _ => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "ltfourier", version, about = "Integral p-adic Fourier theory on Lubin-Tate groups")]
pub struct Cli {
    /// Run configuration (TOML). Command-line options override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Absolute precision P.
    #[arg(long, global = true)]
    pub precision: Option<i64>,
    /// Extra working digits spent on precision losses.
    #[arg(long, global = true)]
    pub guard: Option<i64>,
    /// Print JSON (the default for most commands).
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Print a CSV table where the command has one.
    #[arg(long, global = true)]
    pub csv: bool,
    /// Write the printed output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Formal group data.
    #[command(subcommand)]
    Group(GroupCmd),
    /// v(γ̄(k)) and v(γ̲(k)) with their extremal indices, as CSV.
    GammaTable(GammaArgs),
    /// Coefficients of P_n(X) for n <= nmax.
    Pn {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 10)]
        nmax: usize,
    },
    /// ∫ f dμ_φ, graded by powers of the period.
    Integrate {
        #[command(flatten)]
        group: GroupArgs,
        /// Distribution: {"coeffs": [..]} or {"monomial": k}.
        #[arg(long)]
        phi: PathBuf,
        /// Function: {"level": N, "pieces": [{"center": a, "coeffs": [..]}]}.
        #[arg(long)]
        f: PathBuf,
        /// Checked against the level recorded in the function.
        #[arg(long = "level", visible_alias = "N")]
        level: Option<u32>,
    },
    /// Mahler coefficients a_n = ∫ f dμ_{t^n} with their decay floors.
    Mahler {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        f: PathBuf,
        #[arg(long, default_value_t = 40)]
        nmax: usize,
    },
    /// Certify a family of estimates.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Bernoulli–Hurwitz numbers.
    #[command(subcommand)]
    Bh(BhCmd),
    /// Run configuration.
    #[command(subcommand)]
    Config(ConfigCmd),
}

#[derive(Subcommand, Debug)]
pub enum GroupCmd {
    /// F, λ, exp and [a] to the requested order, as JSON.
    Show {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 8)]
        order: usize,
        /// The endomorphism [a] to print.
        #[arg(long, default_value_t = 2, allow_negative_numbers = true)]
        a: i64,
    },
}

#[derive(Subcommand, Debug)]
pub enum ConfigCmd {
    /// Print the effective configuration as TOML.
    Show {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Validate a configuration without computing anything.
    Check {
        #[command(flatten)]
        group: GroupArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    /// Valuation bounds for π^{-N} ∂^n Σ (t ⊕ t_N)^k at 0.
    PowerSums {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// The Fourier estimates for ∫_{a+π^N O_K} (x-a)^d dμ_{t^k}.
    FourierBounds {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Coleman factorization of torsion sums of random integral series.
    Coleman {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// Degree bound of the random series.
        #[arg(long, default_value_t = 12)]
        degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Required residual valuation; P - 4 when absent.
        #[arg(long)]
        target: Option<i64>,
    },
    /// Level compatibility and representative independence of coset integrals.
    DistributionRelation {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// φ = t^k.
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Coset representative a (integer).
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        a: i64,
        /// Polynomial f in x - a, low to high.
        #[arg(long, value_delimiter = ',', default_value = "1,-2,5", allow_negative_numbers = true)]
        poly: Vec<i64>,
        /// Required agreement; P - 4 when absent.
        #[arg(long)]
        target: Option<i64>,
    },
    /// The two norm bounds for P_n(xϖ).
    PnNorms {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Properties of γ̄ and γ̲.
    GammaProps(GammaArgs),
    /// Moments of ℘_b and ζ_{b,c} on the elliptic formal group against B(n).
    Moments {
        #[command(flatten)]
        bh: BhArgs,
        /// Series order M_T.
        #[arg(long)]
        mt: Option<usize>,
        /// Required agreement; P - 6 when absent.
        #[arg(long)]
        target: Option<i64>,
    },
    /// Katz congruences for the normalized L-values.
    Katz(BhArgs),
    /// Chellali's congruences for the normalized L-values.
    Chellali(BhArgs),
}

#[derive(Subcommand, Debug)]
pub enum BhCmd {
    /// L-value integrality with the Katz and Chellali congruences.
    Verify(BhArgs),
}

/// Overrides for the group section of the configuration.
#[derive(Args, Debug, Default, Clone)]
pub struct GroupArgs {
    #[arg(long = "group", value_enum)]
    pub kind: Option<GroupKindCfg>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub h: Option<usize>,
    /// Eisenstein polynomial with integer coefficients, low to high.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub eisenstein: Option<Vec<i64>>,
    /// Order of the group series.
    #[arg(long = "series-order")]
    pub m: Option<usize>,
    /// Curve as g2,g3.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub curve: Option<Vec<i64>>,
}

#[derive(Args, Debug, Default, Clone)]
pub struct GridArgs {
    #[arg(long, value_delimiter = ',')]
    pub levels: Option<Vec<u32>>,
    #[arg(long)]
    pub nmax: Option<usize>,
    #[arg(long)]
    pub kmax: Option<usize>,
    #[arg(long)]
    pub dmax: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct GammaArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub e: u64,
    #[arg(long, default_value_t = 1)]
    pub h: u32,
    #[arg(long, default_value_t = 50)]
    pub kmax: u64,
}

#[derive(Args, Debug, Default, Clone)]
pub struct BhArgs {
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub b: Option<i64>,
    #[arg(long)]
    pub c: Option<i64>,
    #[arg(long)]
    pub lmax: Option<u32>,
    #[arg(long)]
    pub nmax: Option<usize>,
    /// Curve as g2,g3.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub curve: Option<Vec<i64>>,
}

/// What a command produced.
pub struct Output {
    pub json: serde_json::Value,
    pub csv: Option<String>,
    /// Print CSV unless `--json` is given.
    pub csv_by_default: bool,
    pub verdict: Option<Verdict>,
}

fn exit_code(v: Option<Verdict>) -> u8 {
    match v {
        None | Some(Verdict::Certified) => 0,
        Some(Verdict::Inconclusive) => 2,
        Some(Verdict::Violated) => 3,
    }
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(p) = cli.precision {
        cfg.precision = p;
    }
    if let Some(g) = cli.guard {
        cfg.guard = g;
    }
    let out = commands::dispatch(&cli.command, &mut cfg)?;
    let as_csv = out.csv.is_some() && (cli.csv || (out.csv_by_default && !cli.json));
    let text = match (&out.csv, as_csv) {
        (Some(csv), true) => csv.clone(),
        _ => serde_json::to_string_pretty(&out.json).expect("report serializes") + "\n",
    };
    let write = |path: &PathBuf, body: &str| std::fs::write(path, body).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())));
    match &cli.out {
        Some(path) => write(path, &text)?,
        None => print!("{text}"),
    }
    if let Some(path) = &cfg.output.json {
        write(path, &(serde_json::to_string_pretty(&out.json).expect("report serializes") + "\n"))?;
    }
    if let (Some(path), Some(csv)) = (&cfg.output.csv, &out.csv) {
        write(path, csv)?;
    }
    Ok(exit_code(out.verdict))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
