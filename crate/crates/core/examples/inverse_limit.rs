//! Two copies of Z4 glued over Z2, the limit projections, and the kernel
//! of one projection read off as the limit of a kernel system.

use groupwit::group::construct::cyclic;
use groupwit::limit::{limit, projection_system, subsystem_limit, InverseSystem};
use groupwit::Homomorphism;

fn main() -> groupwit::Result<()> {
    let (z4, z2) = (cyclic(4)?, cyclic(2)?);
    let mod2 = Homomorphism::from_generator_images(&z4, &z2, &[z2.generators()[0]])?;
    let x = InverseSystem::star(&z2, vec![mod2.clone(), mod2])?;
    let lim = limit(&x, 1000)?;
    println!("|lim| = {}", lim.order());
    for (i, p) in lim.projections.iter().enumerate() {
        println!("p_{i}: onto {} of order {}, kernel {}", x.poset().label(i), p.target().order(), p.kernel().order());
    }
    let (_, phi) = projection_system(&x, 1)?;
    let k = subsystem_limit(&x, &lim, &phi.kernel_system())?;
    println!("ker p_1 as a subsystem limit: order {}, equal to the kernel: {}", k.order(), k == lim.projections[1].kernel());
    Ok(())
}
