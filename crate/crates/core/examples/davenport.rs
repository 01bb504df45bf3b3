//! Noether numbers of abelian groups on the sum of all nontrivial characters, next to
//! the Davenport constant n + m - 1 of C_n x C_m (n divisible by m).
//!
//! cargo run --release --example davenport

use noether::analysis::{CapPolicy, ModuleAnalysis};
use noether::lab::nontrivial_characters;

fn main() -> noether::Result<()> {
    for (n, m) in [(2, 2), (3, 3), (4, 2), (6, 2)] {
        let w = nontrivial_characters(&[n, m])?;
        let r = ModuleAnalysis::from_rep(w.clone()).noether_number(1, CapPolicy::Default)?;
        println!("C{n}xC{m}: dim {}  beta = {}  n + m - 1 = {}", w.dim(), r.value, n + m - 1);
    }
    Ok(())
}
