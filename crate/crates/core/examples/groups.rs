//! Building groups from names and descriptors, and sizing a large one
//! with a stabilizer chain instead of enumerating it.

use groupwit::descriptor::GroupDescriptor;
use groupwit::group::schreier::StabChain;
use groupwit::group::structure::{center, derived_subgroup, is_nilpotent};
use groupwit::Perm;

fn main() -> groupwit::Result<()> {
    for text in ["D8", "Q8", "F21", "Z2xA4", r#"{"kind": "frobenius", "params": [7, 3]}"#] {
        let g = GroupDescriptor::parse(text)?.build(20_000)?;
        println!(
            "{text:<42} order {:>3}  centre {:>2}  derived {:>2}  nilpotent {}",
            g.order(),
            center(&g).order(),
            derived_subgroup(&g).order(),
            is_nilpotent(&g)
        );
    }
    let s12 = StabChain::new(12, &[Perm::from_images((1..12).chain([0]).collect())?, Perm::from_cycles(12, &[&[0, 1]])?]);
    println!("S12 by Schreier–Sims: {}", s12.order());
    Ok(())
}
