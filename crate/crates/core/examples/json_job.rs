//! Parses a JSON job, runs it and prints the report.
//!
//! cargo run --release --example json_job [FILE]

use noether::job::{parse_jobspec, run, Overrides};

const DEFAULT: &str = r#"{
  "group": {"catalog": "semidirect", "m": 3, "k": 4, "a": 2},
  "modules": [{"type": "induce", "subgroup": {"catalog_sub": "normal"}, "inner": {"type": "character", "exponents": [1]}}],
  "task": {"op": "verify", "k": 2}
}"#;

fn main() {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable job file"),
        None => DEFAULT.to_string(),
    };
    let job = match parse_jobspec(&text).and_then(|j| j.resolve(&Overrides::default())) {
        Ok(j) => j,
        Err(errors) => {
            for e in errors {
                eprintln!("{e}");
            }
            std::process::exit(2);
        }
    };
    let report = run(&job, false).expect("engine run");
    print!("{}", report.table());
}
