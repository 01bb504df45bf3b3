//! Catalog groups, subgroups with their coset representatives, and quotients.
//!
//! cargo run --example groups

use noether::group::{catalog, permutation_group, quotient, subgroup, CatalogGroup};

fn main() -> noether::Result<()> {
    let d8 = catalog(&CatalogGroup::Dihedral(4))?;
    println!("{d8}: order {}, exponent {}, abelian {}", d8.order(), d8.exponent(), d8.is_abelian());

    let rotations = subgroup(&d8, &[d8.generators()[0]])?;
    println!("rotations {:?}, coset reps {:?}, normal {}", rotations.elements(), rotations.coset_reps(), rotations.is_normal());
    let reflection = subgroup(&d8, &[d8.generators()[1]])?;
    println!("reflection {:?}, normal {}", reflection.elements(), reflection.is_normal());
    if let Some((g, n, c)) = reflection.normality_witness() {
        println!("  {g} conjugates {n} to {c}");
    }

    let q = quotient(&d8, &rotations)?;
    let images: Vec<u32> = (0..d8.order() as u32).map(|x| q.project(x)).collect();
    println!("D8 / rotations has order {}; projection {images:?}", q.table().order());

    // A4 from a 3-cycle and a double transposition
    let a4 = permutation_group("A4", &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])?;
    let orders: Vec<u32> = (0..a4.order() as u32).map(|x| a4.element_order(x)).collect();
    println!("A4 element orders {orders:?}");
    Ok(())
}
