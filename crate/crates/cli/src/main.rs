//! solitary-kit: command-line surface for the friend-of-10 toolkit.
//!
//! Subcommands: check, search, chains, fpq, sigma, abundancy, tables.
//! Exit codes: 0 success/verified, 1 candidate rejected, 2 usage error,
//! 3 proof incomplete, 4 resource budget exhausted.

mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use solitary_core::abundancy::{abundancy, sigma};
use solitary_core::arith::{is_prime, ArithError, Factorization};
use solitary_core::chains::{self, enumerate_chains, ChainStatus, TacticKind};
use solitary_core::conditions::{
    check_candidate, search_range, ConditionKind, SearchOptions, Verdict,
};
use solitary_core::config::OmegaMode;
use solitary_core::order_theory::f_pq;
use solitary_core::KitConfig;

const EXIT_OK: u8 = 0;
const EXIT_REJECTED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCOMPLETE: u8 = 3;
const EXIT_BUDGET: u8 = 4;

#[derive(Parser)]
#[command(
    name = "solitary-kit",
    about = "Necessary-condition filters, bounded search and the six-prime \
             chain proof for friends of 10",
    version
)]
struct Cli {
    /// Config file (key=value); defaults to $SOLITARY_KIT_CONFIG when set
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Pollard-rho iteration budget per factorization
    #[arg(long, global = true)]
    factor_budget: Option<u64>,
    /// Miller-Rabin rounds past the deterministic 64-bit range
    #[arg(long, global = true)]
    mr_rounds: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Run the necessary-condition pipeline on one candidate
    Check(CheckArgs),
    /// Filter every candidate 5^2a * m^2 up to a bound
    Search(SearchArgs),
    /// Enumerate the six-prime chains; optionally prove them away or emit
    /// the companion tables
    Chains(ChainsArgs),
    /// Smallest odd f > 1 with q^f = 1 (mod p^k)
    Fpq { p: u128, q: u128 },
    /// Sum of divisors of a factored value
    Sigma { expr: String },
    /// Exact abundancy index sigma(n)/n
    Abundancy {
        expr: String,
        /// also print an approximate decimal rendering
        #[arg(long)]
        decimal: bool,
    },
    /// Regenerate the published f table and companion tables
    Tables(TablesArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Candidate: decimal integer or factor expression like 5^2*7^4*11^2
    candidate: String,
    /// Comma-separated condition subset (default: the full pipeline)
    #[arg(long, value_delimiter = ',')]
    conditions: Vec<String>,
    /// omega(N) handling: the seven-factor theorem or six plus chain engine
    #[arg(long, value_parser = ["seven", "six-plus-chains"], default_value = "seven")]
    omega_mode: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct SearchArgs {
    /// Upper bound (accepts forms like 1000000, 1e9, 1e12)
    #[arg(long)]
    max: String,
    /// Worker threads
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Write per-candidate records here (default: stdout unless summary-only)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Emit only the run summary
    #[arg(long)]
    summary_only: bool,
    /// Exact-test double-check every k-th candidate (0 disables)
    #[arg(long, default_value_t = 100)]
    sample_every: u64,
}

#[derive(Args)]
struct ChainsArgs {
    /// Run the elimination tactics and print per-chain certificates
    #[arg(long)]
    prove: bool,
    /// Regenerate the f table and the companion tables
    #[arg(long)]
    emit_tables: bool,
    /// Comma-separated tactic order (fermat, squeeze, sigma5-closure,
    /// congruence-sieve)
    #[arg(long, value_delimiter = ',')]
    tactics: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TablesArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn load_config(cli: &Cli) -> Result<KitConfig, String> {
    let path = cli
        .config
        .clone()
        .or_else(|| std::env::var_os("SOLITARY_KIT_CONFIG").map(PathBuf::from));
    let mut cfg = match path {
        Some(p) => KitConfig::from_file(&p).map_err(|e| e.to_string())?,
        None => KitConfig::default(),
    };
    if let Some(budget) = cli.factor_budget {
        cfg.factor_budget = budget;
    }
    if let Some(rounds) = cli.mr_rounds {
        cfg.mr_rounds = rounds;
    }
    Ok(cfg)
}

fn parse_candidate(input: &str, cfg: &KitConfig) -> Result<Factorization, (u8, String)> {
    Factorization::parse(input, cfg.factor_budget, cfg.mr_rounds).map_err(|e| match e {
        ArithError::BudgetExhausted => (EXIT_BUDGET, format!("cannot factor {input:?}: {e}")),
        other => (EXIT_USAGE, format!("bad candidate {input:?}: {other}")),
    })
}

fn parse_bound(text: &str) -> Result<u128, String> {
    let t = text.trim();
    if let Some((mantissa, exp)) = t.split_once(['e', 'E']) {
        let m: u128 = mantissa
            .parse()
            .map_err(|_| format!("bad bound {text:?}"))?;
        let e: u32 = exp.parse().map_err(|_| format!("bad bound {text:?}"))?;
        return 10u128
            .checked_pow(e)
            .and_then(|p| m.checked_mul(p))
            .ok_or_else(|| format!("bound {text:?} overflows"));
    }
    t.parse().map_err(|_| format!("bad bound {text:?}"))
}

fn run_check(args: &CheckArgs, mut cfg: KitConfig) -> Result<u8, (u8, String)> {
    if !args.conditions.is_empty() {
        let mut kinds = Vec::new();
        for name in &args.conditions {
            match ConditionKind::parse(name) {
                Some(k) => kinds.push(k),
                None => return Err((EXIT_USAGE, format!("unknown condition {name:?}"))),
            }
        }
        cfg.conditions = Some(kinds);
    }
    if args.omega_mode == "six-plus-chains" {
        cfg.omega_mode = OmegaMode::SixPlusChains;
    }
    let candidate = parse_candidate(&args.candidate, &cfg)?;
    let report = check_candidate(&candidate, &cfg);
    match args.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        ),
        _ => output::print_filter_report(&report),
    }
    Ok(match report.verdict {
        Verdict::Pass => EXIT_OK,
        Verdict::Reject => EXIT_REJECTED,
    })
}

fn run_search(args: &SearchArgs, cfg: KitConfig) -> Result<u8, (u8, String)> {
    let max = parse_bound(&args.max).map_err(|e| (EXIT_USAGE, e))?;
    if max < 25 {
        return Err((EXIT_USAGE, "search bound must be at least 25".into()));
    }
    let opts = SearchOptions {
        jobs: args.jobs.max(1),
        sample_every: args.sample_every,
    };
    let mut writer: Option<Box<dyn Write>> = if args.summary_only {
        None
    } else {
        match &args.out {
            Some(path) => {
                let file = std::fs::File::create(path).map_err(|e| {
                    (EXIT_USAGE, format!("cannot write {}: {e}", path.display()))
                })?;
                Some(Box::new(std::io::BufWriter::new(file)))
            }
            None => Some(Box::new(std::io::BufWriter::new(std::io::stdout()))),
        }
    };
    let mut csv_writer = match (args.format, writer.is_some()) {
        (Format::Csv, true) => Some(csv::Writer::from_writer(writer.take().unwrap())),
        _ => None,
    };
    if let Some(w) = csv_writer.as_mut() {
        w.write_record(["value", "candidate", "verdict", "rejections", "skipped"])
            .map_err(|e| (EXIT_USAGE, e.to_string()))?;
    }
    let summary = search_range(max, &opts, &cfg, |report| {
        if let Some(w) = csv_writer.as_mut() {
            let _ = w.write_record(output::csv_record(report));
        } else if let Some(w) = writer.as_mut() {
            match args.format {
                Format::Json => {
                    let _ = serde_json::to_writer(&mut *w, report);
                    let _ = writeln!(w);
                }
                _ => {
                    let _ = writeln!(w, "{}", output::one_line_report(report));
                }
            }
        }
    });
    if let Some(mut w) = csv_writer {
        w.flush().map_err(|e| (EXIT_USAGE, e.to_string()))?;
    } else if let Some(mut w) = writer {
        w.flush().map_err(|e| (EXIT_USAGE, e.to_string()))?;
    }
    output::print_search_summary(&summary);
    Ok(EXIT_OK)
}

fn run_chains(args: &ChainsArgs, mut cfg: KitConfig) -> Result<u8, (u8, String)> {
    if !args.tactics.is_empty() {
        let mut order = Vec::new();
        for name in &args.tactics {
            match TacticKind::parse(name) {
                Some(t) => order.push(t),
                None => return Err((EXIT_USAGE, format!("unknown tactic {name:?}"))),
            }
        }
        cfg.tactic_order = order;
    }
    let mut sink = output::sink(args.out.as_deref()).map_err(|e| (EXIT_USAGE, e))?;
    let chains_list = enumerate_chains(6);

    if args.emit_tables {
        output::emit_tables(&mut sink, args.format, &cfg).map_err(|e| (EXIT_USAGE, e))?;
        if !args.prove {
            return Ok(EXIT_OK);
        }
    }
    if !args.prove {
        output::emit_chain_list(&mut sink, args.format, &chains_list)
            .map_err(|e| (EXIT_USAGE, e))?;
        return Ok(EXIT_OK);
    }
    let reports = chains::eliminate_all(&chains_list, &cfg);
    output::emit_elimination(&mut sink, args.format, &reports).map_err(|e| (EXIT_USAGE, e))?;
    let eliminated = reports
        .iter()
        .filter(|r| matches!(r.status, ChainStatus::Eliminated))
        .count();
    writeln!(sink, "{eliminated}/{} chains eliminated", reports.len())
        .map_err(|e| (EXIT_USAGE, e.to_string()))?;
    if eliminated == reports.len() {
        writeln!(
            sink,
            "verified: a friend of 10 has at least 7 distinct prime factors"
        )
        .map_err(|e| (EXIT_USAGE, e.to_string()))?;
        Ok(EXIT_OK)
    } else {
        writeln!(sink, "proof incomplete: open chains remain").ok();
        Ok(EXIT_INCOMPLETE)
    }
}

fn run_fpq(p: u128, q: u128) -> Result<u8, (u8, String)> {
    if !is_prime(p) || !is_prime(q) || p == q {
        return Err((EXIT_USAGE, format!("{p} and {q} must be distinct primes")));
    }
    let profile = f_pq(p, q).map_err(|e| (EXIT_USAGE, e.to_string()))?;
    match profile.f {
        Some(f) => println!("{f}"),
        None => println!("none"),
    }
    Ok(EXIT_OK)
}

fn run_tables(args: &TablesArgs, cfg: KitConfig) -> Result<u8, (u8, String)> {
    let mut sink = output::sink(args.out.as_deref()).map_err(|e| (EXIT_USAGE, e))?;
    output::emit_tables(&mut sink, args.format, &cfg).map_err(|e| (EXIT_USAGE, e))?;
    Ok(EXIT_OK)
}

fn dispatch(cli: &Cli) -> Result<u8, (u8, String)> {
    let cfg = load_config(cli).map_err(|e| (EXIT_USAGE, e))?;
    match &cli.command {
        Command::Check(args) => run_check(args, cfg),
        Command::Search(args) => run_search(args, cfg),
        Command::Chains(args) => run_chains(args, cfg),
        Command::Fpq { p, q } => run_fpq(*p, *q),
        Command::Sigma { expr } => {
            let n = parse_candidate(expr, &cfg)?;
            println!("{}", sigma(&n));
            Ok(EXIT_OK)
        }
        Command::Abundancy { expr, decimal } => {
            let n = parse_candidate(expr, &cfg)?;
            let i = abundancy(&n);
            if *decimal {
                println!("{i} (~ {:.6}, approximate)", i.to_f64());
            } else {
                println!("{i}");
            }
            Ok(EXIT_OK)
        }
        Command::Tables(args) => run_tables(args, cfg),
    }
}

fn main() -> ExitCode {
    // die quietly on a closed pipe, like any other stream filter
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code),
        Err((code, message)) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
