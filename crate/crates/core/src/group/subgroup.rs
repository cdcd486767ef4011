use std::collections::VecDeque;
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::{FiniteGroup, Group};
use crate::error::{Error, Result};

const ABSENT: u32 = u32::MAX;

/// A subgroup of an enumerated group, stored as its sorted member indices.
///
/// Because members are sorted, the subgroup viewed as a group in its own
/// right (`group()`) indexes its elements in the same order: local index
/// `k` is parent index `members[k]`.
#[derive(Clone)]
pub struct Subgroup {
    parent: Group,
    members: Arc<Vec<u32>>,
    local: Arc<Vec<u32>>,
    group: Arc<OnceLock<Group>>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {} in {:?})", self.order(), self.parent)
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent.same(&other.parent) && self.members == other.members
    }
}

impl Subgroup {
    fn from_mask(parent: &Group, mask: &[bool]) -> Self {
        let members: Vec<u32> =
            (0..parent.order()).filter(|&i| mask[i]).map(|i| i as u32).collect();
        Self::from_sorted(parent, members)
    }

    fn from_sorted(parent: &Group, members: Vec<u32>) -> Self {
        let mut local = vec![ABSENT; parent.order()];
        for (k, &m) in members.iter().enumerate() {
            local[m as usize] = k as u32;
        }
        Subgroup {
            parent: parent.clone(),
            members: Arc::new(members),
            local: Arc::new(local),
            group: Arc::new(OnceLock::new()),
        }
    }

    /// The subgroup generated by the given parent elements.
    pub fn generated(parent: &Group, gens: &[usize]) -> Self {
        let mut mask = vec![false; parent.order()];
        mask[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = parent.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Self::from_mask(parent, &mask)
    }

    /// Accepts a member set after checking it is a subgroup.
    pub fn from_members(parent: &Group, members: &[usize]) -> Result<Self> {
        let mut mask = vec![false; parent.order()];
        for &m in members {
            mask[m] = true;
        }
        if !mask[0] {
            return Err(Error::NotSubgroup("identity missing".into()));
        }
        let count = mask.iter().filter(|&&b| b).count();
        // grow a generated subgroup inside the set until it covers it
        let mut inside = vec![false; parent.order()];
        inside[0] = true;
        let mut reached = vec![0usize];
        let mut gens: Vec<usize> = Vec::new();
        for cand in 0..parent.order() {
            if !mask[cand] || inside[cand] {
                continue;
            }
            gens.push(cand);
            let mut queue: VecDeque<usize> = reached.iter().copied().collect();
            while let Some(x) = queue.pop_front() {
                for &g in &gens {
                    let y = parent.mul(x, g);
                    if !mask[y] {
                        return Err(Error::NotSubgroup("member set is not closed".into()));
                    }
                    if !inside[y] {
                        inside[y] = true;
                        reached.push(y);
                        queue.push_back(y);
                    }
                }
            }
            if reached.len() == count {
                break;
            }
        }
        Ok(Self::from_mask(parent, &mask))
    }

    pub fn trivial(parent: &Group) -> Self {
        Self::from_sorted(parent, vec![0])
    }

    pub fn whole(parent: &Group) -> Self {
        Self::from_sorted(parent, (0..parent.order() as u32).collect())
    }

    pub fn parent(&self) -> &Group {
        &self.parent
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().map(|&m| m as usize)
    }

    pub fn contains(&self, x: usize) -> bool {
        self.local[x] != ABSENT
    }

    /// Parent index of the `k`-th member.
    pub fn lift(&self, k: usize) -> usize {
        self.members[k] as usize
    }

    /// Local index of a parent element, if it is a member.
    pub fn local(&self, x: usize) -> Option<usize> {
        let l = self.local[x];
        (l != ABSENT).then_some(l as usize)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.parent.order()
    }

    /// The subgroup as a group in its own right (cached).
    pub fn group(&self) -> Group {
        self.group
            .get_or_init(|| {
                let elems = self.members().map(|m| self.parent.element(m).clone()).collect();
                let label = format!("sub({})", self.parent.label());
                FiniteGroup::from_elements(label, self.parent.degree(), elems)
                    .expect("a verified subgroup is closed")
            })
            .clone()
    }

    /// Member indices of a small generating set, as parent indices.
    pub fn generators(&self) -> Vec<usize> {
        let g = self.group();
        g.generators().into_iter().map(|k| self.lift(k)).collect()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent.same(&other.parent) && self.members().all(|m| other.contains(m))
    }

    pub fn is_normal(&self) -> bool {
        let gens = self.generators();
        self.parent
            .generators()
            .into_iter()
            .all(|g| gens.iter().all(|&h| self.contains(self.parent.conj(g, h))))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let mask: Vec<bool> =
            (0..self.parent.order()).map(|x| self.contains(x) && other.contains(x)).collect();
        Self::from_mask(&self.parent, &mask)
    }

    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut gens = self.generators();
        gens.extend(other.generators());
        Self::generated(&self.parent, &gens)
    }

    /// The smallest normal subgroup of the parent containing this one.
    pub fn normal_closure(&self) -> Subgroup {
        normal_closure_of(&self.parent, &self.generators())
    }

    /// Right coset `H·x` as a sorted list of parent indices.
    pub fn right_coset(&self, x: usize) -> Vec<usize> {
        let mut c: Vec<usize> = self.members().map(|h| self.parent.mul(h, x)).collect();
        c.sort_unstable();
        c
    }

    /// For every parent element, the number of the right coset containing
    /// it; cosets are numbered by their least element, this subgroup first.
    pub fn right_coset_labels(&self) -> (Vec<u32>, Vec<usize>) {
        let n = self.parent.order();
        let mut label = vec![ABSENT; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if label[x] != ABSENT {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for h in self.members() {
                label[self.parent.mul(h, x)] = c;
            }
        }
        (label, reps)
    }

    /// Largest normal subgroup of the parent contained in this one.
    pub fn core(&self) -> Subgroup {
        let p = &self.parent;
        let mask: Vec<bool> = (0..p.order())
            .map(|x| self.contains(x) && (0..p.order()).all(|g| self.contains(p.conj(g, x))))
            .collect();
        Self::from_mask(p, &mask)
    }
}

/// Normal closure of a set of elements.
pub fn normal_closure_of(parent: &Group, elems: &[usize]) -> Subgroup {
    let pg = parent.generators();
    let mut mask = vec![false; parent.order()];
    mask[0] = true;
    let mut gens: Vec<usize> = Vec::new();
    let mut members = vec![0usize];
    let mut pending: VecDeque<usize> = elems.iter().copied().collect();
    while let Some(e) = pending.pop_front() {
        if mask[e] {
            continue;
        }
        gens.push(e);
        // extend the closure with the new generator
        let mut queue: VecDeque<usize> = members.iter().copied().collect();
        while let Some(x) = queue.pop_front() {
            for &g in &gens {
                let y = parent.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        for &g in &pg {
            pending.push_back(parent.conj(parent.inv(g), e));
            pending.push_back(parent.conj(g, e));
        }
    }
    Subgroup::from_mask(parent, &mask)
}
