//! Characters, regular and induced modules, inflation and direct sums.
//!
//! cargo run --example modules

use noether::field::{choose_splitting_prime, default_floor};
use noether::group::{catalog, quotient, subgroup_named, CatalogGroup};
use noether::rep::{character_rep, direct_sum, induce, inflate, regular_rep, Representation};

fn show(rep: &Representation) {
    let g = rep.group();
    println!("{} on {} (dim {}, fingerprint {})", rep.label(), g.name(), rep.dim(), rep.fingerprint());
    for &s in g.generators() {
        let rows: Vec<Vec<u32>> = (0..rep.dim()).map(|i| (0..rep.dim()).map(|j| rep.entry(s, i, j)).collect()).collect();
        println!("  generator {s}: {rows:?}");
    }
}

fn main() -> noether::Result<()> {
    let d6 = catalog(&CatalogGroup::Dihedral(3))?;
    let f = choose_splitting_prime(d6.exponent(), default_floor(d6.order()))?;
    let c3 = subgroup_named(&d6, &[d6.generators()[0]], Some("C3".into()))?;
    let chi = character_rep(c3.table(), f, &[1])?;
    // the two-dimensional irreducible module: the reflection swaps the blocks
    let w = induce(&c3, &chi)?;
    show(&w);

    let q = quotient(&d6, &c3)?;
    let sign = inflate(&character_rep(q.table(), f, &[1])?, &q)?;
    show(&sign);
    show(&direct_sum(&sign, &w)?);

    let reg = regular_rep(&d6, f);
    let traces: Vec<u32> = (0..d6.order() as u32).map(|g| reg.trace(g)).collect();
    println!("regular character {traces:?}");
    Ok(())
}
