//! S4 on the cosets of S3 embedded into S3 ≀ S4, for two transversals,
//! and the base element conjugating one embedding into the other.

use groupwit::group::construct::by_name;
use groupwit::wreath::{coset_action, embedding_conjugator, standard_embedding, PermutationTransversal};
use groupwit::Subgroup;

fn main() -> groupwit::Result<()> {
    let s4 = by_name("S4")?;
    let fixer = (0..s4.order()).filter(|&x| s4.element(x).apply(3) == 3).collect::<Vec<_>>();
    let action = coset_action(&Subgroup::from_members(&s4, &fixer)?);
    let first = PermutationTransversal::minimal(&action, 0)?;
    // the largest element carrying the basepoint to each point
    let mut reps = vec![0; action.len()];
    for x in 0..s4.order() {
        reps[action.act(0, x)] = x;
    }
    reps[0] = s4.identity();
    let second = PermutationTransversal::new(&action, 0, reps)?;
    let iota = standard_embedding(&action, &first)?;
    let lambda = standard_embedding(&action, &second)?;
    iota.verify()?;
    lambda.verify()?;
    println!("points {}, stabilizer order {}", action.len(), iota.stabilizer.order());
    println!("conjugator f = {:?}", embedding_conjugator(&iota, &lambda)?);
    Ok(())
}
