//! Splitting primes and roots of unity.
//!
//! cargo run --example fields

use noether::field::{choose_splitting_prime, default_floor};
use noether::group::{catalog, CatalogGroup};

fn main() -> noether::Result<()> {
    let groups = [
        CatalogGroup::Cyclic(5),
        CatalogGroup::Dihedral(4),
        CatalogGroup::Quaternion8,
        CatalogGroup::Semidirect { m: 5, k: 4, a: 2 },
        CatalogGroup::Semidirect { m: 7, k: 3, a: 2 },
    ];
    for c in &groups {
        let g = catalog(c)?;
        let f = choose_splitting_prime(g.exponent(), default_floor(g.order()))?;
        let root = f.primitive_root_of_unity(g.exponent())?.value();
        println!(
            "{:<12} |G| = {:<3} exp = {:<3} p = {}  primitive {}-th root {root} (order {})",
            g.name(),
            g.order(),
            g.exponent(),
            f.p(),
            g.exponent(),
            f.order(root)
        );
    }
    Ok(())
}
