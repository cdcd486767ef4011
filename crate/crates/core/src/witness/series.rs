//! Normal series for the two classic front ends and the end-to-end
//! witness builders on top of them.

use super::build::build_good_witness;
use super::certificate::WitnessCertificate;
use super::comp::comp_membership;
use super::sequence::{series_to_sequence, GroupSequence};
use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::group::construct::factorize;
use crate::group::hom::quotient;
use crate::group::structure::{central_subgroup_of_order_p, is_nilpotent, is_square_free, normal_sylow_and_complement};
use crate::group::subgroup::Subgroup;
use crate::group::Group;

/// `1 = L_0 < L_1 < … < L_ℓ = G` with each `L_i/L_{i−1}` central of prime
/// order in `G/L_{i−1}`. The smallest available prime is taken first.
pub fn central_series(g: &Group) -> Result<Vec<Subgroup>> {
    if !is_nilpotent(g) {
        return Err(Error::Refuted(format!("{} is not nilpotent", g.label())));
    }
    grow_series(g, |q| {
        let p = factorize(q.order())[0].0;
        central_subgroup_of_order_p(q, p)
    })
}

/// For square-free `|G|`: `L_i/L_{i−1}` is the normal Sylow subgroup of
/// `G/L_{i−1}` for its largest prime, so the largest prime sits at the
/// bottom.
pub fn square_free_series(g: &Group) -> Result<Vec<Subgroup>> {
    if !is_square_free(g.order()) {
        return Err(Error::Refuted(format!("order {} is not square-free", g.order())));
    }
    grow_series(g, |q| normal_sylow_and_complement(q).map(|(p, _)| p))
}

/// Builds the chain by repeatedly picking a normal subgroup of the current
/// quotient and pulling it back.
fn grow_series(g: &Group, mut pick: impl FnMut(&Group) -> Result<Subgroup>) -> Result<Vec<Subgroup>> {
    let mut chain = vec![Subgroup::trivial(g)];
    loop {
        let last = chain.last().unwrap().clone();
        if last.is_whole() {
            return Ok(chain);
        }
        let (q, proj) = quotient(g, &last, g.order())?;
        let step = pick(&q)?;
        if step.is_trivial() {
            return Err(Error::construction("series", "picked a trivial subgroup"));
        }
        chain.push(proj.preimage(&step));
    }
}

fn witness_from_series(
    l: [&Group; 2],
    chains: [Vec<Subgroup>; 2],
    bounds: &Bounds,
) -> Result<(WitnessCertificate, [GroupSequence; 2])> {
    let len = chains[0].len().max(chains[1].len()) - 1;
    let s0 = series_to_sequence(l[0], &chains[0], bounds.enumeration)?.padded(len)?;
    let s1 = series_to_sequence(l[1], &chains[1], bounds.enumeration)?.padded(len)?;
    let comp = comp_membership(&[&s0, &s1], bounds)?
        .ok_or_else(|| Error::Refuted("the sequences fail the Comp condition".into()))?;
    let cert = build_good_witness([&s0, &s1], &comp, bounds)?;
    Ok((cert, [s0, s1]))
}

/// A good witness for two nilpotent groups of equal order over their
/// central series.
pub fn witness_nilpotent(l1: &Group, l2: &Group, bounds: &Bounds) -> Result<WitnessCertificate> {
    if l1.order() != l2.order() {
        return Err(Error::Refuted(format!("orders {} and {} differ", l1.order(), l2.order())));
    }
    let chains = [central_series(l1)?, central_series(l2)?];
    witness_from_series([l1, l2], chains, bounds).map(|(c, _)| c)
}

/// A good witness for two groups of equal square-free order.
pub fn witness_square_free(l1: &Group, l2: &Group, bounds: &Bounds) -> Result<WitnessCertificate> {
    if l1.order() != l2.order() {
        return Err(Error::Refuted(format!("orders {} and {} differ", l1.order(), l2.order())));
    }
    let chains = [square_free_series(l1)?, square_free_series(l2)?];
    witness_from_series([l1, l2], chains, bounds).map(|(c, _)| c)
}

/// Sequences for two groups over explicit series, padded to equal length.
pub fn sequences_for(
    l: [&Group; 2],
    chains: [&[Subgroup]; 2],
    bound: usize,
) -> Result<[GroupSequence; 2]> {
    let len = chains[0].len().max(chains[1].len()).saturating_sub(1);
    Ok([
        series_to_sequence(l[0], chains[0], bound)?.padded(len)?,
        series_to_sequence(l[1], chains[1], bound)?.padded(len)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::construct::by_name;

    fn orders(chain: &[Subgroup]) -> Vec<usize> {
        chain.iter().map(Subgroup::order).collect()
    }

    #[test]
    fn central_series_orders() {
        let d8 = by_name("D8").unwrap();
        assert_eq!(orders(&central_series(&d8).unwrap()), vec![1, 2, 4, 8]);
        let z12 = by_name("Z12").unwrap();
        assert_eq!(orders(&central_series(&z12).unwrap()), vec![1, 2, 4, 12]);
        for c in central_series(&d8).unwrap() {
            assert!(c.is_normal());
        }
    }

    #[test]
    fn non_nilpotent_is_refuted() {
        let s3 = by_name("S3").unwrap();
        assert!(matches!(central_series(&s3), Err(Error::Refuted(_))));
    }

    #[test]
    fn square_free_series_puts_the_largest_prime_first() {
        let g = by_name("F21xZ2").unwrap();
        let c = square_free_series(&g).unwrap();
        assert_eq!(orders(&c), vec![1, 7, 21, 42]);
        assert!(c.iter().all(Subgroup::is_normal));
        let s3 = by_name("S3").unwrap();
        assert_eq!(orders(&square_free_series(&s3).unwrap()), vec![1, 3, 6]);
    }
}
