use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use noether::job::{parse_jobspec, prime_value, run, suite_job, Overrides};
use noether::lab::SuiteScale;

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scale {
    Core,
    Stretch,
}

/// Noether numbers and coinvariant degrees of finite group modules over prime fields.
#[derive(Parser)]
#[command(version)]
struct Args {
    /// Job description (JSON).
    #[arg(long, value_name = "FILE", required_unless_present = "suite")]
    input: Option<PathBuf>,
    /// Working prime, or `auto` for the smallest splitting prime.
    #[arg(long, value_name = "P|auto")]
    prime: Option<String>,
    /// Explicit degree cap for β searches and verification.
    #[arg(long, value_name = "N")]
    max_degree: Option<u32>,
    /// Grade k of the k-th Noether number and k-th coinvariant degree (default 1).
    #[arg(long, value_name = "K")]
    k: Option<u32>,
    /// Worker threads (default: available parallelism; 1 runs sequentially).
    #[arg(long, value_name = "T")]
    threads: Option<usize>,
    /// Write the JSON report here.
    #[arg(long, value_name = "FILE")]
    report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Run the built-in suite instead of a job file.
    #[arg(long, value_enum)]
    suite: Option<Scale>,
    /// Log progress to stderr.
    #[arg(long)]
    verbose: bool,
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(t) = args.threads {
        if t == 0 {
            return input_error("--threads must be positive");
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            return input_error(e);
        }
    }
    let scale = args.suite.map(|s| match s {
        Scale::Core => SuiteScale::Core,
        Scale::Stretch => SuiteScale::Stretch,
    });
    let spec = match (&args.input, scale) {
        (Some(path), _) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return input_error(format!("{}: {e}", path.display())),
            };
            match parse_jobspec(&text) {
                Ok(s) => s,
                Err(errors) => {
                    for e in errors {
                        eprintln!("error: {e}");
                    }
                    return ExitCode::from(2);
                }
            }
        }
        (None, Some(s)) => suite_job(s),
        (None, None) => return input_error("either --input or --suite is required"),
    };
    let prime = match args.prime.as_deref().map(|p| prime_value(&serde_json::Value::String(p.into()))) {
        Some(Err(e)) => return input_error(format!("--prime: {e}")),
        Some(Ok(p)) => Some(p),
        None => None,
    };
    let overrides = Overrides { prime, max_degree: args.max_degree, k: args.k, scale };
    let job = match spec.resolve(&overrides) {
        Ok(j) => j,
        Err(errors) => {
            for e in errors {
                eprintln!("error: {e}");
            }
            return ExitCode::from(2);
        }
    };
    let report = match run(&job, args.verbose) {
        Ok(r) => r,
        Err(e @ noether::Error::Inconsistent(_)) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
        Err(e) => return input_error(e),
    };
    if let Some(path) = &args.report {
        if let Err(e) = std::fs::write(path, report.to_json() + "\n") {
            return input_error(format!("{}: {e}", path.display()));
        }
    }
    match args.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Table => print!("{}", report.table()),
    }
    for f in report.failures() {
        eprintln!("fail: {}", f.summary());
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
