//! One recursion step for F21 × Z2 and Z7 × S3 over their square-free
//! series, with the construction checks it records.

use groupwit::group::construct::by_name;
use groupwit::witness::{build_recursion_step, comp_membership, series_to_sequence, square_free_series};
use groupwit::Bounds;

fn main() -> groupwit::Result<()> {
    let b = Bounds::default();
    let l = [by_name("F21xZ2")?, by_name("Z7xS3")?];
    let s = [
        series_to_sequence(&l[0], &square_free_series(&l[0])?, b.enumeration)?,
        series_to_sequence(&l[1], &square_free_series(&l[1])?, b.enumeration)?,
    ];
    let comp = comp_membership(&[&s[0], &s[1]], &b)?.expect("square-free pairs meet the condition");
    let step = build_recursion_step([&s[0], &s[1]], &comp, &b)?;
    for d in 0..2 {
        println!(
            "side {}: |G| = {}, |H| = {}, |S_next| = {}, |ker π_next| = {}",
            d + 1,
            step.g[d].order(),
            step.h[d].order(),
            step.next[d].order(),
            step.pi_next[d].kernel().order()
        );
    }
    for (name, ok) in &step.checks {
        println!("  {} {name}", if *ok { "ok  " } else { "FAIL" });
    }
    Ok(())
}
