use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use eigencoin::harness::{analyze_document, g0_sample, run_suite, sample_document, SUITES};
use eigencoin::korbits::{
    enumerate_orbits, orbit_graph_json, orbit_graph_text, sample_nilfibre, sample_xi, sample_yq, xi_max, XiPattern,
};
use eigencoin::liealg::MatrixDocument;
use eigencoin::sampling::SampleBounds;
use eigencoin::{AlgebraContext, Error, Kind, Result, SuiteConfig};

#[derive(Parser)]
#[command(
    name = "eigencoin",
    version,
    about = "Exact eigenvalue-coincidence and K-orbit computations for gl(n) and so(n)"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyse one matrix document (use "-" to read standard input).
    Analyze {
        #[arg(long)]
        input: PathBuf,
    },
    /// Print the K-orbits on the flag variety of so(n).
    Orbits {
        #[arg(long, value_parser = parse_kind, default_value = "so")]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Draw one seeded sample and print it as a matrix document.
    Sample {
        #[arg(long, value_enum)]
        what: What,
        #[arg(long, value_parser = parse_kind, default_value = "so")]
        kind: Kind,
        #[arg(long)]
        n: usize,
        /// Orbit id for yq and nilfibre samples (Q+, Q-, Q1, …).
        #[arg(long, default_value = "Q+")]
        orbit: String,
        /// Slot pattern for xi samples, e.g. "ULU"; defaults to all U of maximal length.
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a verification suite; exits with status 1 when a claim fails.
    Verify {
        /// Suite name, or "all".
        #[arg(long)]
        suite: String,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_kind)]
        kind: Option<Kind>,
        #[arg(long)]
        n_min: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
        /// Largest numerator of random rationals.
        #[arg(long, default_value_t = SampleBounds::default().max_num)]
        max_num: i64,
        /// Largest denominator of random rationals.
        #[arg(long, default_value_t = SampleBounds::default().max_den)]
        max_den: i64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Yq,
    Xi,
    Nilfibre,
    G0,
}

fn parse_kind(s: &str) -> std::result::Result<Kind, String> {
    Kind::parse(s).map_err(|e| e.to_string())
}

fn read_input(path: &PathBuf) -> Result<String> {
    let mut text = String::new();
    let outcome = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    outcome.map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(text)
}

/// Write to stdout, ignoring a reader that went away (e.g. `| head`).
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_json(v: &serde_json::Value) {
    emit(&format!(
        "{}\n",
        serde_json::to_string_pretty(v).expect("values serialise")
    ));
}

fn sample(
    what: What,
    kind: Kind,
    n: usize,
    orbit: &str,
    pattern: Option<&str>,
    seed: u64,
) -> Result<serde_json::Value> {
    let ctx = AlgebraContext::new(kind, n)?;
    let bounds = SampleBounds::default();
    let (x, extra) = match what {
        What::G0 => (g0_sample(&ctx, seed, bounds)?, json!({})),
        What::Xi => {
            let p: XiPattern = match pattern {
                Some(p) => p.parse()?,
                None => XiPattern::all_upper(xi_max(&ctx)),
            };
            let s = sample_xi(&ctx, &p, seed, bounds)?;
            (s.matrix, json!({ "pattern": p.to_string(), "i": p.len() }))
        }
        What::Yq | What::Nilfibre => {
            let table = enumerate_orbits(&ctx)?;
            let q = table.get(orbit).ok_or_else(|| {
                let ids: Vec<&str> = table.orbits.iter().map(|q| q.id.as_str()).collect();
                Error::Usage(format!("unknown orbit {orbit:?}; this algebra has {}", ids.join(", ")))
            })?;
            let x = if what == What::Yq {
                sample_yq(&ctx, q, seed, bounds)?
            } else {
                sample_nilfibre(&ctx, q, seed, bounds)?
            };
            (x, json!({ "orbit": q.id, "codim": q.codim }))
        }
    };
    let tag = match what {
        What::Yq => "yq",
        What::Xi => "xi",
        What::Nilfibre => "nilfibre",
        What::G0 => "g0",
    };
    let mut extra = extra;
    extra["sample"] = json!(tag);
    extra["seed"] = json!(seed);
    Ok(sample_document(&MatrixDocument::from_matrix(kind, &x), extra))
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Analyze { input } => {
            let a = analyze_document(&read_input(&input)?)?;
            if cli.json {
                print_json(&a.to_json());
            } else {
                emit(&a.to_text());
            }
            Ok(true)
        }
        Command::Orbits { kind, n, format } => {
            if kind != Kind::SO {
                return Err(Error::Usage("orbit tables are available for so(n) only".into()));
            }
            let table = enumerate_orbits(&AlgebraContext::new(kind, n)?)?;
            if cli.json || format == Format::Json {
                print_json(&orbit_graph_json(&table));
            } else {
                emit(&orbit_graph_text(&table));
            }
            Ok(true)
        }
        Command::Sample {
            what,
            kind,
            n,
            orbit,
            pattern,
            seed,
        } => {
            print_json(&sample(what, kind, n, &orbit, pattern.as_deref(), seed)?);
            Ok(true)
        }
        Command::Verify {
            suite,
            trials,
            seed,
            kind,
            n_min,
            n_max,
            max_num,
            max_den,
        } => {
            if max_num < 1 || max_den < 1 {
                return Err(Error::Usage("sample bounds must be positive".into()));
            }
            if suite != "all" && !SUITES.contains(&suite.as_str()) {
                return Err(Error::Usage(format!(
                    "unknown suite {suite:?}; expected one of {} or all",
                    SUITES.join(", ")
                )));
            }
            let cfg = SuiteConfig {
                suite,
                kind,
                n_min,
                n_max,
                trials,
                seed,
                bounds: SampleBounds { max_num, max_den },
            };
            let report = run_suite(&cfg)?;
            if cli.json {
                print_json(&report.to_json());
            } else {
                emit(&report.to_text());
            }
            Ok(report.passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}
