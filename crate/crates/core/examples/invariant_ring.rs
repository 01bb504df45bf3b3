//! Invariant ring of the dihedral reflection module: dimensions per degree, the
//! Noether number and the degrees of a minimal generating set.
//!
//! cargo run --release --example invariant_ring [n]

use noether::analysis::{CapPolicy, ModuleAnalysis};
use noether::invariants::trace_dimensions;
use noether::lab::dihedral_module;

fn main() -> noether::Result<()> {
    let n: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let w = dihedral_module(n)?;
    let mut a = ModuleAnalysis::from_rep(w.clone());
    let r = a.noether_number(1, CapPolicy::Default)?;
    let traced = trace_dimensions(&w, r.cap).unwrap_or_default();
    println!("{} acting on {} over F_{}", w.group().name(), w.label(), w.field().p());
    println!("  d  dim Inv_d  decomposable  trace formula (mod p)");
    for row in &r.table {
        println!("  {:<2} {:<9} {:<13} {}", row.degree, row.invariants, row.decomposable, traced[row.degree as usize]);
    }
    println!("beta = {} (cap {}, {}), generator degrees {:?}", r.value, r.cap, r.cap_rule, r.generator_degrees.unwrap_or_default());
    for d in [2, n] {
        let inv = a.invariants(d)?;
        for f in inv.basis() {
            println!("  degree {d} invariant: {}", f.describe());
        }
    }
    Ok(())
}
