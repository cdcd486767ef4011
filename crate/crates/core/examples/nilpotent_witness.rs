//! Witnesses for every pair of groups of order 8.

use std::time::Instant;

use groupwit::group::construct::by_name;
use groupwit::witness::{verify_witness, witness_nilpotent};
use groupwit::Bounds;

fn main() -> groupwit::Result<()> {
    let names = ["Z8", "Z2xZ4", "Z2^3", "D8", "Q8"];
    let b = Bounds::default();
    for i in 0..names.len() {
        for j in i + 1..names.len() {
            let start = Instant::now();
            let (l1, l2) = (by_name(names[i])?, by_name(names[j])?);
            let cert = witness_nilpotent(&l1, &l2, &b)?;
            let r = verify_witness(&cert, [&l1, &l2], &b);
            println!(
                "{:>5} {:>5}: |G| = {:>4}, kernel {:>3}, verified {} in {:.0?}",
                names[i],
                names[j],
                cert.order(),
                cert.kernel_order(),
                r.complete(),
                start.elapsed()
            );
        }
    }
    Ok(())
}
