//! G = Z2 × Z4 × Z8 over (Z2³, Z8), then composed down to (Z2², Z4).

use groupwit::witness::goodwit::hand_example;
use groupwit::witness::verify_witness;
use groupwit::Bounds;

fn main() -> groupwit::Result<()> {
    let ex = hand_example(2, 3, 20_000)?;
    let b = Bounds::default();
    let r = verify_witness(&ex.certificate, [&ex.targets[0], &ex.targets[1]], &b);
    println!("|G| = {}, verified {}", ex.certificate.order(), r.complete());
    for (d, s) in ex.certificate.good_at.iter().enumerate() {
        println!("p{} has a section over a subgroup of order {}", d + 1, s.domain.order());
    }
    let r = verify_witness(&ex.composed, [&ex.composed_targets[0], &ex.composed_targets[1]], &b);
    println!(
        "composed: |G| = {}, targets of order {} and {}, verified {}",
        ex.composed.order(),
        ex.composed_targets[0].order(),
        ex.composed_targets[1].order(),
        r.complete()
    );
    Ok(())
}
