//! Runs the verification suite and prints one line per verdict.
//!
//! cargo run --release --example paper_suite [core|stretch]

use noether::analysis::bridge_statistics;
use noether::lab::{run_paper_suite, SuiteScale};

fn main() -> noether::Result<()> {
    let scale = match std::env::args().nth(1).as_deref() {
        Some("stretch") => SuiteScale::Stretch,
        _ => SuiteScale::Core,
    };
    let report = run_paper_suite(scale)?;
    for v in &report.verdicts {
        println!("{}", v.summary());
    }
    let pass = report.verdicts.iter().filter(|v| v.verdict.is_pass()).count();
    let (checks, sharp) = bridge_statistics();
    println!("{pass}/{} verdicts pass, {} failures", report.verdicts.len(), report.failures().count());
    println!("bridge inequality evaluated {checks} times ({sharp} with the search past b_k + 1)");
    for (job, ms) in &report.timings.steps {
        println!("  {ms:>9.1} ms  {job}");
    }
    println!("total {:.1} ms", report.timings.total_ms);
    Ok(())
}
