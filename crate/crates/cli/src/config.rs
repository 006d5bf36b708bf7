//! Flags, subcommands and the `key=value` config file.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 0x5EED0;

#[derive(Parser, Debug)]
#[command(
    name = "extremalk",
    version,
    about = "Limit laws of the k-th upper order statistic under fixed and random sample sizes",
    after_help = "Every subcommand also reads flat key=value lines from --config <path> or \
                  $EXTREMALK_CONFIG; keys are flag names without dashes and flags override the file."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate cdf, survival function and pdf of a derived df (--family hk|fk|uk|rk|tk|bk on --base)
    /// or of a limit law (--family gk|jk|lk|sk|bn on the max-stable law of --base's domain) at
    /// points --x or probabilities --p.
    #[command(args_override_self = true)]
    Eval(Opts),
    /// Print norming constants (n, a_n, b_n) over --n or --n-grid, for --family on --base, or for
    /// --base itself when --family is omitted.
    #[command(args_override_self = true)]
    Norming(Opts),
    /// Monte Carlo KS distance of the normalized k-th upper order statistic under --size-law to its
    /// predicted limit (or to limit family --family), over --n or --n-grid with --M replicates.
    #[command(args_override_self = true)]
    Simulate(Opts),
    /// Tail ratios (1 - V_k(x)) / (1 - F(x))^k at base probabilities --p against the
    /// tail-equivalence constant, for --family (default: all) and --k (default: 1..3).
    #[command(args_override_self = true)]
    Tails(Opts),
    /// Check the pointwise cdf orderings (i)..(vii) on --base for k up to --k and r up to --r on a
    /// --grid-point quantile grid.
    #[command(args_override_self = true)]
    Order(Opts),
    /// List the base distributions with their default parameters and domains of attraction.
    #[command(args_override_self = true)]
    Catalog(Opts),
}

impl Command {
    pub fn opts(&self) -> &Opts {
        match self {
            Command::Eval(o)
            | Command::Norming(o)
            | Command::Simulate(o)
            | Command::Tails(o)
            | Command::Order(o)
            | Command::Catalog(o) => o,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    ClosedForm,
    Quantile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// Transform family (hk, fk, uk, rk, tk, bk) or limit family (gk, jk, lk, sk, bn)
    #[arg(long)]
    pub family: Option<String>,
    /// Base distribution; `extremalk catalog` lists the names
    #[arg(long)]
    pub base: Option<String>,
    /// Base parameter alpha
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Base parameter beta
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Base parameter c
    #[arg(long, allow_negative_numbers = true)]
    pub c: Option<f64>,
    /// Order k (for `order`: largest k checked)
    #[arg(long)]
    pub k: Option<u32>,
    /// Negative-binomial parameter r (for `order`: largest r checked)
    #[arg(long)]
    pub r: Option<u32>,
    /// Law of tau for bk, bn and the tau size law, as `value:prob,...` or equally likely `value,...`
    #[arg(long)]
    pub tau: Option<String>,
    /// Sample-size law: fixed, discrete-uniform, binomial, poisson, logarithmic, geometric, negbin, tau
    #[arg(long = "size-law")]
    pub size_law: Option<String>,
    /// Shift of the sample-size law (default: k)
    #[arg(long)]
    pub m: Option<u64>,
    /// Single sample-size index
    #[arg(long)]
    pub n: Option<u64>,
    /// Comma-separated sample-size indices
    #[arg(long = "n-grid")]
    pub n_grid: Option<String>,
    /// Monte Carlo replicates per n
    #[arg(long = "M")]
    pub replicates: Option<usize>,
    /// Seed: an integer (decimal or 0x-hex) or `random`; default 0x5EED0
    #[arg(long)]
    pub seed: Option<String>,
    /// Worker threads; 0 uses every core
    #[arg(long)]
    pub workers: Option<usize>,
    /// Comma-separated evaluation points
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Comma-separated probabilities
    #[arg(long)]
    pub p: Option<String>,
    /// Grid size for `order`
    #[arg(long)]
    pub grid: Option<usize>,
    /// Norming constants from the tail-equivalence constant or from quantiles
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Report format
    #[arg(long, value_enum)]
    pub output: Option<Output>,
    /// Write the report here instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Config file of key=value lines
    #[arg(long, env = "EXTREMALK_CONFIG")]
    pub config: Option<PathBuf>,
}

/// Parses `argv`, splicing the config file's entries in front of the
/// command-line flags so that the flags win.
pub fn parse(argv: Vec<OsString>) -> Result<Cli, clap::Error> {
    let first = Cli::try_parse_from(&argv)?;
    let Some(path) = first.command.opts().config.clone() else {
        return Ok(first);
    };
    let tokens = read_config(&path).map_err(|msg| Cli::command().error(ErrorKind::Io, msg))?;
    let split = argv.len().min(2);
    let mut merged = argv[..split].to_vec();
    merged.extend(tokens);
    merged.extend_from_slice(&argv[split..]);
    Cli::try_parse_from(merged)
}

fn read_config(path: &Path) -> Result<Vec<OsString>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    config_tokens(&text).map_err(|msg| format!("{}: {msg}", path.display()))
}

/// `key = value` lines to `--key value` tokens. Blank lines and `#` comments
/// are skipped; underscores in keys become dashes.
pub fn config_tokens(text: &str) -> Result<Vec<OsString>, String> {
    let mut tokens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| format!("line {}: expected key=value", i + 1))?;
        let key = key.trim().replace('_', "-");
        if key.is_empty() || key == "config" {
            return Err(format!("line {}: invalid key '{key}'", i + 1));
        }
        tokens.push(format!("--{key}").into());
        tokens.push(value.trim().into());
    }
    Ok(tokens)
}
