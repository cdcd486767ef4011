//! HW(F21, S3, θ) for θ onto the 3-cycles: order, kernel, and the base
//! subgroup as an inverse limit.

use groupwit::group::construct::by_name;
use groupwit::group::iso::all_homomorphisms;
use groupwit::hybrid::HybridWreath;

fn main() -> groupwit::Result<()> {
    let (f21, s3) = (by_name("F21")?, by_name("S3")?);
    let theta = all_homomorphisms(&f21, &s3, 2000)?.into_iter().find(|f| f.image().order() == 3).expect("F21 → Z3 ≤ S3");
    let hw = HybridWreath::new(&theta, 20_000)?;
    let k = hw.kernel();
    println!("|HW| = {}, points {}", hw.order(), hw.points());
    println!("ker p_θ: order {}, abelian {}", k.order(), k.group().is_abelian());
    println!("BW: order {} inside F21² of order {}", hw.base.order(), f21.order().pow(2));
    let bl = hw.base_as_limit(20_000)?;
    println!("BW ≅ limit of {} nodes: {}", bl.system.poset().len(), bl.identification.is_bijective());
    Ok(())
}
