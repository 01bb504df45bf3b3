//! The k-th Noether numbers β_k and coinvariant degrees b_k.
//!
//! cargo run --release --example kth_noether

use noether::analysis::{CapPolicy, ModuleAnalysis};
use noether::lab::{cyclic_character, dihedral_module};

fn main() -> noether::Result<()> {
    println!("module            k  beta_k  b_k");
    for w in [cyclic_character(3)?, cyclic_character(5)?, dihedral_module(3)?] {
        let mut a = ModuleAnalysis::from_rep(w.clone());
        for k in 1..=3 {
            let beta = a.noether_number(k, CapPolicy::Default)?;
            let b = a.b_value(k)?;
            println!("{:<5} {:<10} {k}  {:<7} {}", w.group().name(), w.label(), beta.value, b.value);
        }
    }
    Ok(())
}
