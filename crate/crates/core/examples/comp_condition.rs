//! Central series of D8 and Q8 as group sequences and the data showing
//! they meet the automorphism condition.

use groupwit::group::construct::by_name;
use groupwit::witness::{central_series, comp_membership, series_to_sequence};
use groupwit::Bounds;

fn main() -> groupwit::Result<()> {
    let b = Bounds::default();
    let mut seqs = Vec::new();
    for name in ["D8", "Q8"] {
        let g = by_name(name)?;
        let s = series_to_sequence(&g, &central_series(&g)?, b.enumeration)?;
        let orders: Vec<usize> = (0..=s.len()).map(|i| s.group(i).order()).collect();
        println!("{name}: S_i orders {orders:?}");
        seqs.push(s);
    }
    match comp_membership(&[&seqs[0], &seqs[1]], &b)? {
        Some(data) => {
            for i in 1..=data.len() {
                println!("σ_{i}: kernel of order {}", data.sigma(i).source.order());
            }
            for i in 2..data.len() {
                let lv = data.level(i);
                println!("level {i}: {} and {} automorphisms α", lv.alpha[0].len(), lv.alpha[1].len());
            }
        }
        None => println!("not a member"),
    }
    Ok(())
}
