//! The order-18 witness for Z6 and S3, checked from scratch.

use groupwit::group::construct::by_name;
use groupwit::witness::{verify_witness, witness_square_free};
use groupwit::Bounds;

fn main() -> groupwit::Result<()> {
    let (a, b) = (by_name("Z6")?, by_name("S3")?);
    let cert = witness_square_free(&a, &b, &Bounds::default())?;
    println!("|G| = {}, |ker p| = {}", cert.order(), cert.kernel_order());
    for c in verify_witness(&cert, [&a, &b], &Bounds::default()).checks {
        println!("  {:?}  {}", c.status, c.name);
    }
    Ok(())
}
