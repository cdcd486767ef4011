//! Backtracking search for homomorphisms and isomorphisms.
//!
//! Generators of the source are fixed up front; the search assigns their
//! images one at a time and after each assignment propagates the partial
//! map over the subgroup generated so far, pruning on the first conflict.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use super::hom::Homomorphism;
use super::structure::{center, class_sizes, derived_subgroup};
use super::Group;
use crate::error::{Error, Result};

const UNSET: u32 = u32::MAX;

/// Per-element data preserved by isomorphisms.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
struct Signature {
    order: u32,
    class: u32,
    derived: bool,
    /// Number of square and cube roots; these separate e.g. the involution
    /// that is a square in `Z4 × Z2^k` from the others.
    roots: [u32; 2],
}

fn signatures(g: &Group) -> Vec<Signature> {
    let classes = class_sizes(g);
    let der = derived_subgroup(g);
    let mut roots = vec![[0u32; 2]; g.order()];
    for y in 0..g.order() {
        let y2 = g.mul(y, y);
        roots[y2][0] += 1;
        roots[g.mul(y2, y)][1] += 1;
    }
    (0..g.order())
        .map(|x| Signature {
            order: g.element_order(x) as u32,
            class: classes[x],
            derived: der.contains(x),
            roots: roots[x],
        })
        .collect()
}

/// Cheap invariants; a mismatch certifies non-isomorphism.
fn screen(g: &Group, h: &Group) -> bool {
    if g.order() != h.order() || g.is_abelian() != h.is_abelian() {
        return false;
    }
    if g.order_histogram() != h.order_histogram() {
        return false;
    }
    if center(g).order() != center(h).order() {
        return false;
    }
    derived_subgroup(g).order() == derived_subgroup(h).order()
}

struct Search<'a> {
    source: &'a Group,
    target: &'a Group,
    injective: bool,
    gens: Vec<usize>,
    cols: Vec<Vec<u32>>,
    candidates: Vec<Vec<usize>>,
    table: Vec<u32>,
    used: Vec<bool>,
    images: Vec<usize>,
    assigned: Vec<usize>,
}

impl<'a> Search<'a> {
    /// Assigns generator `k ↦ y` and propagates. On failure every change
    /// is undone and `false` returned.
    fn extend(&mut self, k: usize, y: usize) -> bool {
        self.images.push(y);
        let start = self.assigned.len();
        let mut ok = true;
        // old members only need the new generator; new members need all
        let mut queue: VecDeque<(usize, bool)> =
            self.assigned.iter().map(|&x| (x, true)).collect();
        'outer: while let Some((x, only_last)) = queue.pop_front() {
            let first = if only_last { k } else { 0 };
            let fx = self.table[x] as usize;
            for j in first..=k {
                let z = self.cols[j][x] as usize;
                let fz = self.target.mul(fx, self.images[j]) as u32;
                if self.table[z] == UNSET {
                    if self.injective && self.used[fz as usize] {
                        ok = false;
                        break 'outer;
                    }
                    self.table[z] = fz;
                    self.used[fz as usize] = true;
                    self.assigned.push(z);
                    queue.push_back((z, false));
                } else if self.table[z] != fz {
                    ok = false;
                    break 'outer;
                }
            }
        }
        if !ok {
            self.undo(k, start);
        }
        ok
    }

    fn undo(&mut self, k: usize, start: usize) {
        for &z in &self.assigned[start..] {
            self.used[self.table[z] as usize] = false;
            self.table[z] = UNSET;
        }
        self.assigned.truncate(start);
        self.images.truncate(k);
    }

    fn run(&mut self, k: usize, visit: &mut dyn FnMut(&[u32]) -> ControlFlow<()>) -> ControlFlow<()> {
        if k == self.gens.len() {
            debug_assert_eq!(self.assigned.len(), self.source.order());
            return visit(&self.table);
        }
        for ci in 0..self.candidates[k].len() {
            let y = self.candidates[k][ci];
            let start = self.assigned.len();
            if self.extend(k, y) {
                let flow = self.run(k + 1, visit);
                self.undo(k, start);
                flow?;
            }
        }
        ControlFlow::Continue(())
    }
}

/// Chooses a generating set: `first` in order, then greedily elements
/// with the fewest candidate images, larger orders first.
fn choose_generators(g: &Group, first: &[usize], weight: impl Fn(usize) -> (usize, std::cmp::Reverse<usize>)) -> Vec<usize> {
    let n = g.order();
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut members = vec![0usize];
    let mut gens: Vec<usize> = Vec::new();
    let grow = |gens: &Vec<usize>, inside: &mut Vec<bool>, members: &mut Vec<usize>| {
        let mut queue: VecDeque<usize> = members.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = g.mul(x, s);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
    };
    for &f in first {
        gens.push(f);
        grow(&gens, &mut inside, &mut members);
    }
    let mut order: Vec<usize> = (1..n).collect();
    order.sort_by_key(|&x| (weight(x), x));
    for x in order {
        if members.len() == n {
            break;
        }
        if !inside[x] {
            gens.push(x);
            grow(&gens, &mut inside, &mut members);
        }
    }
    gens
}

fn run_search(
    source: &Group,
    target: &Group,
    prescribed: &[(usize, usize)],
    injective: bool,
    candidate_filter: &dyn Fn(usize, usize) -> bool,
    weight: &dyn Fn(usize) -> (usize, std::cmp::Reverse<usize>),
    visit: &mut dyn FnMut(&[u32]) -> ControlFlow<()>,
) {
    source.ensure_table();
    target.ensure_table();
    let first: Vec<usize> = prescribed.iter().map(|&(s, _)| s).collect();
    let gens = choose_generators(source, &first, weight);
    let cols: Vec<Vec<u32>> = gens
        .iter()
        .map(|&s| (0..source.order()).map(|x| source.mul(x, s) as u32).collect())
        .collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .enumerate()
        .map(|(k, &s)| {
            if k < prescribed.len() {
                vec![prescribed[k].1]
            } else {
                (0..target.order()).filter(|&y| candidate_filter(s, y)).collect()
            }
        })
        .collect();
    let mut table = vec![UNSET; source.order()];
    table[0] = 0;
    let mut used = vec![false; target.order()];
    used[0] = true;
    let mut search = Search {
        source,
        target,
        injective,
        gens,
        cols,
        candidates,
        table,
        used,
        images: Vec::new(),
        assigned: vec![0],
    };
    let _ = search.run(0, visit);
}

fn check_bound(g: &Group, h: &Group, bound: usize) -> Result<()> {
    let size = g.order().max(h.order());
    if size > bound {
        return Err(Error::bound("isomorphism search", size, bound));
    }
    Ok(())
}

/// Visits isomorphisms `g → h` that send each prescribed source element to
/// its prescribed image. Returns `Ok(false)` when the invariant screen
/// already rules out an isomorphism.
pub fn for_each_isomorphism(
    g: &Group,
    h: &Group,
    prescribed: &[(usize, usize)],
    bound: usize,
    mut visit: impl FnMut(Homomorphism) -> ControlFlow<()>,
) -> Result<bool> {
    check_bound(g, h, bound)?;
    if !screen(g, h) {
        return Ok(false);
    }
    let sg = signatures(g);
    let sh = signatures(h);
    let mut count = std::collections::HashMap::new();
    for s in &sh {
        *count.entry(*s).or_insert(0usize) += 1;
    }
    let mut hist_g = std::collections::HashMap::new();
    for s in &sg {
        *hist_g.entry(*s).or_insert(0usize) += 1;
    }
    if hist_g != count {
        return Ok(false);
    }
    for &(x, y) in prescribed {
        if sg[x] != sh[y] {
            return Ok(true);
        }
    }
    let filter = |x: usize, y: usize| sg[x] == sh[y];
    let weight = |x: usize| (count[&sg[x]], std::cmp::Reverse(sg[x].order as usize));
    run_search(g, h, prescribed, true, &filter, &weight, &mut |table: &[u32]| {
        let f = Homomorphism::from_table_unchecked(g, h, table.to_vec()).expect("table shape");
        visit(f)
    });
    Ok(true)
}

/// A bijective homomorphism or a certified absence.
pub fn find_isomorphism(g: &Group, h: &Group, bound: usize) -> Result<Option<Homomorphism>> {
    extend_to_isomorphism(g, h, &[], bound)
}

/// An isomorphism extending the prescribed element pairs, if one exists.
pub fn extend_to_isomorphism(
    g: &Group,
    h: &Group,
    prescribed: &[(usize, usize)],
    bound: usize,
) -> Result<Option<Homomorphism>> {
    let mut found = None;
    for_each_isomorphism(g, h, prescribed, bound, |f| {
        found = Some(f);
        ControlFlow::Break(())
    })?;
    Ok(found)
}

pub fn all_isomorphisms(g: &Group, h: &Group, bound: usize) -> Result<Vec<Homomorphism>> {
    let mut out = Vec::new();
    for_each_isomorphism(g, h, &[], bound, |f| {
        out.push(f);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Visits every homomorphism `g → h`.
pub fn for_each_homomorphism(
    g: &Group,
    h: &Group,
    bound: usize,
    mut visit: impl FnMut(Homomorphism) -> ControlFlow<()>,
) -> Result<()> {
    check_bound(g, h, bound)?;
    let filter = |x: usize, y: usize| g.element_order(x).is_multiple_of(h.element_order(y));
    let weight = |x: usize| (0, std::cmp::Reverse(g.element_order(x)));
    run_search(g, h, &[], false, &filter, &weight, &mut |table: &[u32]| {
        let f = Homomorphism::from_table_unchecked(g, h, table.to_vec()).expect("table shape");
        visit(f)
    });
    Ok(())
}

pub fn all_homomorphisms(g: &Group, h: &Group, bound: usize) -> Result<Vec<Homomorphism>> {
    let mut out = Vec::new();
    for_each_homomorphism(g, h, bound, |f| {
        out.push(f);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::construct::{by_name, cyclic, dihedral, quaternion, symmetric};

    #[test]
    fn cyclic_six_is_z2_times_z3() {
        let a = cyclic(6).unwrap();
        let b = by_name("Z2xZ3").unwrap();
        let f = find_isomorphism(&a, &b, 2000).unwrap().unwrap();
        assert!(f.is_homomorphism() && f.is_bijective());
        let g = find_isomorphism(&b, &a, 2000).unwrap().unwrap();
        let round = f.then(&g).unwrap();
        assert!(round.is_homomorphism() && round.is_bijective());
    }

    #[test]
    fn d8_is_not_q8() {
        assert!(find_isomorphism(&dihedral(8).unwrap(), &quaternion(8).unwrap(), 2000)
            .unwrap()
            .is_none());
    }

    #[test]
    fn self_isomorphism_exists() {
        let s4 = symmetric(4).unwrap();
        let f = find_isomorphism(&s4, &s4, 2000).unwrap().unwrap();
        assert!(f.is_bijective());
    }

    #[test]
    fn bound_gives_undecided() {
        let s4 = symmetric(4).unwrap();
        assert!(find_isomorphism(&s4, &s4, 10).unwrap_err().is_undecided());
    }

    #[test]
    fn counts_match_brute_force() {
        // |Aut(Z2xZ4)| = 8, |Aut(S3)| = 6, |Aut(D8)| = 8, |Aut(Q8)| = 24
        for (name, n) in [("Z2xZ4", 8), ("S3", 6), ("D8", 8), ("Q8", 24), ("Z7", 6)] {
            let g = by_name(name).unwrap();
            assert_eq!(all_isomorphisms(&g, &g, 2000).unwrap().len(), n, "{name}");
        }
    }

    #[test]
    fn homomorphism_counts() {
        // Hom(Z4, Z2) has 2 elements; Hom(S3, Z2) has 2; Hom(Z2xZ2, S3) has 10
        let z4 = cyclic(4).unwrap();
        let z2 = cyclic(2).unwrap();
        let s3 = symmetric(3).unwrap();
        let v4 = by_name("Z2xZ2").unwrap();
        assert_eq!(all_homomorphisms(&z4, &z2, 2000).unwrap().len(), 2);
        assert_eq!(all_homomorphisms(&s3, &z2, 2000).unwrap().len(), 2);
        assert_eq!(all_homomorphisms(&v4, &s3, 2000).unwrap().len(), 10);
        for f in all_homomorphisms(&v4, &s3, 2000).unwrap() {
            assert!(f.is_homomorphism());
        }
    }

    #[test]
    fn prescribed_images_are_respected() {
        let z7 = cyclic(7).unwrap();
        let g = z7.generators()[0];
        let target = z7.pow(g, 3);
        let f = extend_to_isomorphism(&z7, &z7, &[(g, target)], 2000).unwrap().unwrap();
        assert_eq!(f.apply(g), target);
        // an order-7 element cannot go to the identity
        assert!(extend_to_isomorphism(&z7, &z7, &[(g, 0)], 2000).unwrap().is_none());
    }
}
