//! Finite permutation groups with full element enumeration.
//!
//! Every group is stored with its elements sorted lexicographically by
//! permutation image, so element indices are canonical: the identity is
//! always index 0 and two groups built from the same permutations agree
//! on indexing.

pub mod aut;
pub mod construct;
pub mod hom;
pub mod iso;
pub mod perm;
pub mod schreier;
pub mod structure;
pub mod subgroup;

use std::collections::VecDeque;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
pub use perm::Perm;

pub type Group = Arc<FiniteGroup>;

/// Groups up to this order get a full multiplication table on demand.
const TABLE_LIMIT: usize = 1024;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

pub struct FiniteGroup {
    id: u64,
    label: String,
    degree: usize,
    gens: Vec<u32>,
    elements: Vec<Perm>,
    index: FxHashMap<Perm, u32>,
    inverses: OnceLock<Vec<u32>>,
    orders: OnceLock<Vec<u32>>,
    gen_cols: OnceLock<Vec<Vec<u32>>>,
    table: OnceLock<Vec<u32>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[order {}, degree {}]", self.label, self.order(), self.degree)
    }
}

impl FiniteGroup {
    /// Enumerates the group generated by `gens` on `degree` points.
    /// The generator list is kept as given, repeats included.
    pub fn generate(
        label: impl Into<String>,
        degree: usize,
        gens: Vec<Perm>,
        bound: usize,
    ) -> Result<Group> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::InvalidParameter(format!(
                    "generator of degree {} in a group of degree {degree}",
                    g.degree()
                )));
            }
        }
        let id = Perm::identity(degree);
        let mut elements = vec![id.clone()];
        let mut seen: FxHashMap<Perm, u32> = FxHashMap::default();
        seen.insert(id, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = elements[x].mul(g);
                if !seen.contains_key(&y) {
                    if elements.len() >= bound {
                        return Err(Error::bound("group enumeration", elements.len() + 1, bound));
                    }
                    seen.insert(y.clone(), elements.len() as u32);
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        Ok(Arc::new(Self::assemble(label.into(), degree, elements, &gens)))
    }

    /// Builds a group from a complete element list. The set is checked for
    /// closure; a small generating set is chosen greedily.
    pub fn from_elements(
        label: impl Into<String>,
        degree: usize,
        elements: Vec<Perm>,
    ) -> Result<Group> {
        Self::from_elements_with_gens(label, degree, elements, None)
    }

    pub(crate) fn from_elements_with_gens(
        label: impl Into<String>,
        degree: usize,
        mut elements: Vec<Perm>,
        gens: Option<Vec<Perm>>,
    ) -> Result<Group> {
        elements.sort_unstable();
        elements.dedup();
        if elements.is_empty() || !elements[0].is_identity() || elements[0].degree() != degree {
            return Err(Error::NotSubgroup("element list lacks the identity".into()));
        }
        let mut g = Self::assemble(label.into(), degree, elements, &[]);
        let gen_idx = match gens {
            Some(gs) => gs
                .iter()
                .map(|p| g.index_of(p).map(|i| i as u32))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::NotSubgroup("generator outside element list".into()))?,
            None => g.greedy_generators()?,
        };
        g.gens = gen_idx;
        // closure: the generators must reach exactly the element list
        let reached = g.closure_size()?;
        if reached != g.order() {
            return Err(Error::NotSubgroup(format!(
                "generators reach {reached} of {} listed elements",
                g.order()
            )));
        }
        Ok(Arc::new(g))
    }

    fn assemble(label: String, degree: usize, mut elements: Vec<Perm>, gens: &[Perm]) -> Self {
        elements.sort_unstable();
        let index: FxHashMap<Perm, u32> =
            elements.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
        let gens = gens.iter().map(|g| index[g]).collect();
        FiniteGroup {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            label,
            degree,
            gens,
            elements,
            index,
            inverses: OnceLock::new(),
            orders: OnceLock::new(),
            gen_cols: OnceLock::new(),
            table: OnceLock::new(),
        }
    }

    /// Picks elements of large order first, keeping each one that enlarges
    /// the subgroup generated so far. Fails if some product leaves the set.
    fn greedy_generators(&self) -> Result<Vec<u32>> {
        let n = self.order();
        let mut by_order: Vec<usize> = (1..n).collect();
        by_order.sort_by_key(|&i| std::cmp::Reverse(self.elements[i].order()));
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut members = vec![0usize];
        let mut gens: Vec<u32> = Vec::new();
        for cand in by_order {
            if inside[cand] {
                continue;
            }
            gens.push(cand as u32);
            // grow from every current member
            let mut queue: VecDeque<usize> = members.iter().copied().collect();
            while let Some(x) = queue.pop_front() {
                for &g in &gens {
                    let p = self.elements[x].mul(&self.elements[g as usize]);
                    let y = self
                        .index_of(&p)
                        .ok_or_else(|| Error::NotSubgroup("element list not closed".into()))?;
                    if !inside[y] {
                        inside[y] = true;
                        members.push(y);
                        queue.push_back(y);
                    }
                }
            }
            if members.len() == n {
                break;
            }
        }
        Ok(gens)
    }

    fn closure_size(&self) -> Result<usize> {
        let n = self.order();
        let mut inside = vec![false; n];
        inside[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for &g in &self.gens {
                let p = self.elements[x].mul(&self.elements[g as usize]);
                let y = self
                    .index_of(&p)
                    .ok_or_else(|| Error::NotSubgroup("element list not closed".into()))?;
                if !inside[y] {
                    inside[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        Ok(count)
    }

    pub fn trivial() -> Group {
        Arc::new(Self::assemble("1".into(), 1, vec![Perm::identity(1)], &[]))
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    /// Generator element indices, in construction order.
    pub fn generators(&self) -> Vec<usize> {
        self.gens.iter().map(|&g| g as usize).collect()
    }

    pub fn generator_perms(&self) -> Vec<Perm> {
        self.gens.iter().map(|&g| self.elements[g as usize].clone()).collect()
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn same(&self, other: &FiniteGroup) -> bool {
        self.id == other.id
    }

    /// Product `a·b` (apply `a`, then `b`).
    pub fn mul(&self, a: usize, b: usize) -> usize {
        if let Some(t) = self.table.get() {
            return t[a * self.order() + b] as usize;
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: usize, b: usize) -> usize {
        let p = self.elements[a].mul(&self.elements[b]);
        self.index[&p] as usize
    }

    /// Builds the full multiplication table if the group is small enough.
    pub fn ensure_table(&self) {
        let n = self.order();
        if n > TABLE_LIMIT || self.table.get().is_some() {
            return;
        }
        let mut t = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                t[a * n + b] = self.mul_slow(a, b) as u32;
            }
        }
        let _ = self.table.set(t);
    }

    pub fn inv(&self, a: usize) -> usize {
        let invs = self.inverses.get_or_init(|| {
            self.elements.iter().map(|p| self.index[&p.inverse()]).collect()
        });
        invs[a] as usize
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut e = k.unsigned_abs();
        let mut acc = 0;
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        acc
    }

    /// `g h g⁻¹`.
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.element_orders()[a] as usize
    }

    pub fn element_orders(&self) -> &[u32] {
        self.orders
            .get_or_init(|| self.elements.iter().map(|p| p.order() as u32).collect())
    }

    /// Column `x ↦ x·g` for the `k`-th generator.
    pub fn generator_column(&self, k: usize) -> &[u32] {
        let cols = self.gen_cols.get_or_init(|| {
            self.gens
                .iter()
                .map(|&g| (0..self.order()).map(|x| self.mul(x, g as usize) as u32).collect())
                .collect()
        });
        &cols[k]
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Histogram of element orders, indexed by order.
    pub fn order_histogram(&self) -> Vec<usize> {
        let orders = self.element_orders();
        let max = orders.iter().copied().max().unwrap_or(1) as usize;
        let mut h = vec![0; max + 1];
        for &o in orders {
            h[o as usize] += 1;
        }
        h
    }

    /// The same group under a new label and a fresh handle.
    pub fn relabeled(&self, label: impl Into<String>) -> Group {
        let gens = self.generator_perms();
        let mut g = Self::assemble(label.into(), self.degree, self.elements.clone(), &gens);
        g.gens = self.gens.clone();
        Arc::new(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Group {
        let a = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let b = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        FiniteGroup::generate("S3", 3, vec![a, b], 100).unwrap()
    }

    #[test]
    fn enumeration_is_canonical() {
        let g = s3();
        assert_eq!(g.order(), 6);
        assert!(g.element(0).is_identity());
        for w in g.elements().windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn arithmetic_matches_permutations() {
        let g = s3();
        g.ensure_table();
        for a in 0..6 {
            assert_eq!(g.mul(a, g.inv(a)), 0);
            for b in 0..6 {
                let p = g.element(a).mul(g.element(b));
                assert_eq!(g.element(g.mul(a, b)), &p);
            }
        }
        assert!(!g.is_abelian());
        assert_eq!(g.order_histogram(), vec![0, 1, 3, 2]);
    }

    #[test]
    fn bound_is_enforced() {
        let a = Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        let b = Perm::from_cycles(5, &[&[0, 1]]).unwrap();
        let e = FiniteGroup::generate("S5", 5, vec![a, b], 100).unwrap_err();
        assert!(e.is_undecided());
    }

    #[test]
    fn from_elements_rejects_non_closed_sets() {
        let g = s3();
        let bad = vec![g.element(0).clone(), g.element(1).clone(), g.element(3).clone()];
        assert!(FiniteGroup::from_elements("bad", 3, bad).is_err());
        let good = FiniteGroup::from_elements("S3", 3, g.elements().to_vec()).unwrap();
        assert_eq!(good.order(), 6);
        assert!(good.generators().len() <= 2);
    }
}
