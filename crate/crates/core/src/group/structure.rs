use std::collections::VecDeque;

use super::construct::{factorize, is_prime};
use super::subgroup::{normal_closure_of, Subgroup};
use super::Group;
use crate::error::{Error, Result};

pub fn center(g: &Group) -> Subgroup {
    let gens = g.generators();
    let members: Vec<usize> = (0..g.order())
        .filter(|&x| gens.iter().all(|&s| g.mul(x, s) == g.mul(s, x)))
        .collect();
    Subgroup::from_members(g, &members).expect("center is a subgroup")
}

/// Centralizer in the parent of a subgroup.
pub fn centralizer(h: &Subgroup) -> Subgroup {
    let g = h.parent();
    let hg = h.generators();
    let members: Vec<usize> = (0..g.order())
        .filter(|&x| hg.iter().all(|&s| g.mul(x, s) == g.mul(s, x)))
        .collect();
    Subgroup::from_members(g, &members).expect("centralizer is a subgroup")
}

/// `[A, B]` for subgroups of the same group.
pub fn commutator_subgroup(a: &Subgroup, b: &Subgroup) -> Subgroup {
    let g = a.parent();
    let mut comms = Vec::new();
    for x in a.generators() {
        for y in b.generators() {
            comms.push(g.commutator(x, y));
        }
    }
    // [A,B] is normalized by A and B; for A, B normal in G the normal
    // closure in G is the same subgroup.
    normal_closure_of(g, &comms)
}

pub fn derived_subgroup(g: &Group) -> Subgroup {
    let whole = Subgroup::whole(g);
    commutator_subgroup(&whole, &whole)
}

/// `G = γ₁ ≥ γ₂ ≥ …` until it stabilizes.
pub fn lower_central_series(g: &Group) -> Vec<Subgroup> {
    let whole = Subgroup::whole(g);
    let mut series = vec![whole.clone()];
    loop {
        let next = commutator_subgroup(series.last().unwrap(), &whole);
        if next.order() == series.last().unwrap().order() {
            return series;
        }
        series.push(next);
    }
}

pub fn is_nilpotent(g: &Group) -> bool {
    lower_central_series(g).last().unwrap().is_trivial()
}

/// Size of the conjugacy class of every element.
pub fn class_sizes(g: &Group) -> Vec<u32> {
    let n = g.order();
    let gens = g.generators();
    let mut size = vec![0u32; n];
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut class = vec![start];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &s in &gens {
                let y = g.conj(g.inv(s), x);
                if !seen[y] {
                    seen[y] = true;
                    class.push(y);
                    queue.push_back(y);
                }
            }
        }
        for &x in &class {
            size[x] = class.len() as u32;
        }
    }
    size
}

/// An order-`p` subgroup of the center, generated by the first suitable
/// central element in canonical order.
pub fn central_subgroup_of_order_p(g: &Group, p: usize) -> Result<Subgroup> {
    if !is_prime(p) || !g.order().is_multiple_of(p) {
        return Err(Error::InvalidParameter(format!("{p} is not a prime dividing |G|")));
    }
    let z = center(g);
    for x in z.members() {
        let o = g.element_order(x);
        if o.is_multiple_of(p) {
            let y = g.pow(x, (o / p) as i64);
            return Ok(Subgroup::generated(g, &[y]));
        }
    }
    Err(Error::Refuted(format!(
        "the center of {} has no element of order {p}",
        g.label()
    )))
}

pub fn is_square_free(n: usize) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

/// For `|G|` square-free: the normal Sylow subgroup for the largest prime
/// and a complement of the complementary order.
pub fn normal_sylow_and_complement(g: &Group) -> Result<(Subgroup, Subgroup)> {
    let n = g.order();
    if !is_square_free(n) {
        return Err(Error::Refuted(format!("order {n} is not square-free")));
    }
    if n == 1 {
        return Ok((Subgroup::trivial(g), Subgroup::trivial(g)));
    }
    let p = factorize(n).last().unwrap().0;
    let m = n / p;
    let sylow: Vec<usize> = (0..n).filter(|&x| g.element_order(x) == p || x == 0).collect();
    if sylow.len() != p {
        return Err(Error::Refuted(format!("Sylow {p}-subgroup of {} is not normal", g.label())));
    }
    let p_sub = Subgroup::from_members(g, &sylow)?;
    // groups of square-free order are metacyclic: a complement is generated
    // by at most two elements of order dividing m
    let cands: Vec<usize> = (1..n).filter(|&x| m.is_multiple_of(g.element_order(x))).collect();
    if m == 1 {
        return Ok((p_sub, Subgroup::trivial(g)));
    }
    for (i, &x) in cands.iter().enumerate() {
        let c = Subgroup::generated(g, &[x]);
        if c.order() == m {
            return Ok((p_sub, c));
        }
        if !m.is_multiple_of(c.order()) {
            continue;
        }
        for &y in &cands[i + 1..] {
            let c = Subgroup::generated(g, &[x, y]);
            if c.order() == m {
                return Ok((p_sub, c));
            }
        }
    }
    Err(Error::construction("normal_sylow_and_complement", "no complement found"))
}
