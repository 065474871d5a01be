//! Command-line front end: list the check registry, evaluate one truncated
//! series, run a single check, or sweep parameter ranges from a JSON config.
//!
//! Exit codes: 0 when nothing failed, 1 when any verdict failed, 2 on
//! usage, config, or I/O errors.

use clap::{Args, Parser, Subcommand};
use hypercong::checks::{find_check, run_check, CheckParams, Mode, Status, REGISTRY};
use hypercong::hyperg::{trunc_hyper, HyperSeriesSpec, RationalField, ResidueRing};
use hypercong::sweep::{run_sweep, SweepConfig, SweepError};
use hypercong::{p_valuation, Rational};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "hypercong",
    version,
    about = "Exact-arithmetic verification of truncated hypergeometric congruences"
)]
struct Cli {
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every registered check with its claim and gate.
    List,
    /// Evaluate one truncated hypergeometric series.
    Eval(EvalArgs),
    /// Run a single check and print its verdict.
    Verify(VerifyArgs),
    /// Run a parameter sweep from a JSON config file.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct EvalArgs {
    /// Comma-separated top parameters (rationals such as 2 or -1/2).
    #[arg(long, allow_hyphen_values = true)]
    top: String,
    /// Comma-separated bottom parameters (one fewer than top).
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    bottom: String,
    /// Series argument z.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    z: String,
    /// Truncation order: terms k = 0..=n.
    #[arg(long)]
    n: u64,
    /// Also print the p-adic valuation of the value for this prime.
    #[arg(long, conflicts_with = "modulus")]
    p: Option<u64>,
    /// Evaluate modulo this integer instead (plain 49 or power form 7^2).
    #[arg(long = "mod")]
    modulus: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Check id (see `list`).
    #[arg(long)]
    check: String,
    #[arg(long, default_value_t = 0)]
    p: u64,
    #[arg(long, default_value_t = 0)]
    r: u32,
    #[arg(long, default_value_t = 0)]
    a: u64,
    #[arg(long, default_value_t = 0)]
    s: u64,
    /// Explicit rational lift x (takes precedence over a and s).
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    /// Comma-separated m values for karlsson_minton (may be empty).
    #[arg(long, allow_hyphen_values = true)]
    m_list: Option<String>,
    /// Comma-separated top shifts for shifted_congruence.
    #[arg(long, allow_hyphen_values = true)]
    s_vec: Option<String>,
    /// Comma-separated bottom shifts for shifted_congruence.
    #[arg(long, allow_hyphen_values = true)]
    t_vec: Option<String>,
    /// Evaluation mode: rational, modular, or cross-check.
    #[arg(long, default_value = "rational")]
    mode: String,
    /// Override the claimed exponent for this run.
    #[arg(long, allow_hyphen_values = true)]
    claim: Option<i64>,
}

#[derive(Args)]
struct SweepArgs {
    /// Path to a JSON sweep config.
    #[arg(long)]
    config: PathBuf,
}

fn parse_rational(text: &str) -> Result<Rational, String> {
    text.trim()
        .parse::<Rational>()
        .map_err(|e| format!("bad rational {text:?}: {e}"))
}

fn parse_rational_list(text: &str) -> Result<Vec<Rational>, String> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(parse_rational)
        .collect()
}

fn parse_int_list<T: std::str::FromStr>(text: &str) -> Result<Vec<T>, String>
where
    T::Err: std::fmt::Display,
{
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|e| format!("bad integer {s:?}: {e}")))
        .collect()
}

/// A modulus written plainly (49) or as a prime power (7^2).
fn parse_modulus(text: &str) -> Result<u64, String> {
    let value = match text.split_once('^') {
        Some((base, exp)) => {
            let base: u64 = base
                .trim()
                .parse()
                .map_err(|e| format!("bad modulus base {base:?}: {e}"))?;
            let exp: u32 = exp
                .trim()
                .parse()
                .map_err(|e| format!("bad modulus exponent {exp:?}: {e}"))?;
            base.checked_pow(exp)
                .ok_or_else(|| format!("modulus {text} overflows u64"))?
        }
        None => text
            .trim()
            .parse()
            .map_err(|e| format!("bad modulus {text:?}: {e}"))?,
    };
    if value < 2 {
        return Err(format!("modulus must be at least 2, got {value}"));
    }
    Ok(value)
}

fn parse_mode(text: &str) -> Result<Mode, String> {
    match text {
        "rational" => Ok(Mode::Rational),
        "modular" => Ok(Mode::Modular),
        "cross-check" => Ok(Mode::CrossCheck),
        other => Err(format!(
            "bad mode {other:?}: expected rational, modular, or cross-check"
        )),
    }
}

fn cmd_list() -> i32 {
    for def in REGISTRY {
        let tag = if def.exploratory { " [exploratory]" } else { "" };
        println!("{}{tag}", def.id);
        println!("    {}", def.summary);
        println!("    claim: {}    params: {}", def.claim, def.params);
        println!("    gate:  {}", def.gate);
    }
    0
}

fn eval_line(args: &EvalArgs) -> Result<String, String> {
    let top = parse_rational_list(&args.top)?;
    let bottom = parse_rational_list(&args.bottom)?;
    let z = parse_rational(&args.z)?;
    let spec = HyperSeriesSpec::new(top, bottom, z, args.n).map_err(|e| e.to_string())?;
    if let Some(modulus) = &args.modulus {
        let modulus = parse_modulus(modulus)?;
        let ring = ResidueRing::new(modulus);
        let value = trunc_hyper(&spec, &ring).map_err(|e| e.to_string())?;
        return Ok(format!("{} (mod {})", value.value(), modulus));
    }
    let value = trunc_hyper(&spec, &RationalField).map_err(|e| e.to_string())?;
    match args.p {
        Some(p) if p >= 2 => Ok(format!("{} (v_{} = {})", value, p, p_valuation(&value, p))),
        Some(p) => Err(format!("p must be at least 2, got {p}")),
        None => Ok(value.to_string()),
    }
}

fn cmd_eval(args: &EvalArgs) -> i32 {
    match eval_line(args) {
        Ok(line) => {
            println!("{line}");
            0
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn verify_params(args: &VerifyArgs) -> Result<CheckParams, String> {
    let mut params = CheckParams::pras(args.p, args.r, args.a, args.s);
    if let Some(x) = &args.x {
        params.x = Some(parse_rational(x)?);
    }
    params.m = args.m;
    params.k = args.k;
    params.n = args.n;
    if let Some(list) = &args.m_list {
        params.m_list = Some(parse_int_list(list)?);
    }
    if let Some(list) = &args.s_vec {
        params.s_vec = Some(parse_int_list(list)?);
    }
    if let Some(list) = &args.t_vec {
        params.t_vec = Some(parse_int_list(list)?);
    }
    Ok(params)
}

fn cmd_verify(args: &VerifyArgs) -> i32 {
    let Some(def) = find_check(&args.check) else {
        eprintln!(
            "error: unknown check {:?} (run `hypercong list` for the registry)",
            args.check
        );
        return 2;
    };
    let (params, mode) = match (verify_params(args), parse_mode(&args.mode)) {
        (Ok(p), Ok(m)) => (p, m),
        (Err(msg), _) | (_, Err(msg)) => {
            eprintln!("error: {msg}");
            return 2;
        }
    };
    let verdict = run_check(def, &params, mode, args.claim);
    println!("{verdict}");
    if verdict.status == Status::Fail {
        1
    } else {
        0
    }
}

fn cmd_sweep(args: &SweepArgs) -> i32 {
    let text = match std::fs::read_to_string(&args.config) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.config.display());
            return 2;
        }
    };
    let config: SweepConfig = match serde_json::from_str(&text) {
        Ok(config) => config,
        Err(e) => {
            eprintln!("error: bad config {}: {e}", args.config.display());
            return 2;
        }
    };
    let report = match run_sweep(&config) {
        Ok(report) => report,
        Err(e @ (SweepError::Config(_) | SweepError::Io { .. } | SweepError::Serde(_))) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let mut failed = 0usize;
    for (id, s) in &report.summary {
        let min = s
            .min_observed_valuation
            .as_ref()
            .map(|v| format!(", min observed v = {v}"))
            .unwrap_or_default();
        println!(
            "{id}: {} pass, {} fail, {} skip, {} data{min}",
            s.pass, s.fail, s.skip, s.data
        );
        failed += s.fail;
    }
    println!(
        "{} verdicts -> {}",
        report.verdicts.len(),
        config.output.path.display()
    );
    if failed > 0 {
        1
    } else {
        0
    }
}

fn main() {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .ok();
    }
    let code = match &cli.command {
        Command::List => cmd_list(),
        Command::Eval(args) => cmd_eval(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Sweep(args) => cmd_sweep(args),
    };
    std::process::exit(code);
}
