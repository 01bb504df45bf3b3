//! Coinvariant algebras: Hilbert series of S(W) modulo the Hilbert ideal and its top degree b.
//!
//! cargo run --release --example coinvariants

use noether::analysis::ModuleAnalysis;
use noether::lab::{cyclic_character, dihedral_module, nontrivial_characters};

fn main() -> noether::Result<()> {
    let modules = [cyclic_character(4)?, dihedral_module(3)?, dihedral_module(4)?, nontrivial_characters(&[2, 2])?];
    for w in modules {
        let mut a = ModuleAnalysis::from_rep(w.clone());
        let b = a.b_value(1)?;
        let series: Vec<String> = b.hilbert_series.iter().map(usize::to_string).collect();
        let total: usize = b.hilbert_series.iter().sum();
        println!("{:<8} {:<28} b = {:<2} series {} (total {total})", w.group().name(), w.label(), b.value, series.join(" "));
        let chain = a.hilbert_ideal(1, b.value + 1)?;
        if let Some(std) = chain.standard_monomials(b.value) {
            println!("         top-degree standard monomials: {}", std.len());
        }
    }
    Ok(())
}
