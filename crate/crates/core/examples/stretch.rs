//! The full order-42 witness, about 10⁸ elements, handled through
//! generators and a stabilizer chain.

use std::time::Instant;

use groupwit::group::construct::by_name;
use groupwit::witness::stretch::{stretch_square_free, verify_stretch, STRETCH_SAMPLES};
use groupwit::Bounds;

fn main() -> groupwit::Result<()> {
    let start = Instant::now();
    let l = [by_name("F21xZ2")?, by_name("Z7xS3")?];
    let w = stretch_square_free(&l[0], &l[1], &Bounds::default())?;
    println!("|G| = {} (fibre product bound {}), {} generators", w.order(), w.expected_order(), w.generators.len());
    let r = verify_stretch(&w, [&l[0], &l[1]], STRETCH_SAMPLES, 1);
    for c in &r.checks {
        println!("  {:?}  {}", c.status, c.name);
    }
    println!("done in {:.1?}", start.elapsed());
    Ok(())
}
