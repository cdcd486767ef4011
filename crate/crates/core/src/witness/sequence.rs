//! Chains `S_ℓ → S_{ℓ−1} → … → S_0 = 1` and their surgeries.

use crate::error::{Error, Result};
use crate::group::hom::{quotient, Homomorphism};
use crate::group::iso::find_isomorphism;
use crate::group::subgroup::Subgroup;
use crate::group::{FiniteGroup, Group};
use crate::limit::{limit, InverseSystem};

#[derive(Clone, Debug)]
pub struct GroupSequence {
    groups: Vec<Group>,
    /// `maps[i − 1] = π_i : S_i → S_{i−1}`.
    maps: Vec<Homomorphism>,
    surjective: bool,
}

impl GroupSequence {
    /// `groups[i] = S_i` for `0 ≤ i ≤ ℓ` and `maps[i − 1] = π_i`.
    pub fn new(groups: Vec<Group>, maps: Vec<Homomorphism>) -> Result<Self> {
        if groups.is_empty() || groups.len() != maps.len() + 1 {
            return Err(Error::Mismatch("a sequence of length ℓ has ℓ + 1 groups and ℓ maps".into()));
        }
        if !groups[0].is_trivial() {
            return Err(Error::InvalidParameter("S_0 must be trivial".into()));
        }
        for (k, f) in maps.iter().enumerate() {
            if !f.source().same(&groups[k + 1]) || !f.target().same(&groups[k]) {
                return Err(Error::Mismatch(format!("π_{} does not run S_{} → S_{}", k + 1, k + 1, k)));
            }
        }
        let surjective = maps.iter().all(|f| f.is_surjective());
        Ok(GroupSequence { groups, maps, surjective })
    }

    /// The length `ℓ`.
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn group(&self, i: usize) -> &Group {
        &self.groups[i]
    }

    pub fn top(&self) -> &Group {
        &self.groups[self.len()]
    }

    pub fn pi(&self, i: usize) -> &Homomorphism {
        &self.maps[i - 1]
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    /// `ker π_i`.
    pub fn kernel(&self, i: usize) -> Subgroup {
        self.pi(i).kernel()
    }

    /// `π_{i+1} ∘ … ∘ π_j : S_j → S_i`.
    pub fn down(&self, i: usize, j: usize) -> Homomorphism {
        let mut f = Homomorphism::identity(&self.groups[j]);
        for k in (i + 1..=j).rev() {
            f = f.then(self.pi(k)).expect("consecutive maps compose");
        }
        f
    }

    /// Replaces `π_{ℓ−1}` and `π_ℓ` by their composite.
    pub fn contraction(&self) -> Result<Self> {
        let l = self.len();
        if l < 2 {
            return Err(Error::InvalidParameter("contraction needs length at least 2".into()));
        }
        let mut groups = self.groups[..l - 1].to_vec();
        groups.push(self.top().clone());
        let mut maps = self.maps[..l - 2].to_vec();
        maps.push(self.pi(l).then(self.pi(l - 1))?);
        Self::new(groups, maps)
    }

    /// Prepends `f : G → S_ℓ`.
    pub fn concatenation(g: &Group, f: &Homomorphism, s: &GroupSequence) -> Result<Self> {
        if !f.source().same(g) {
            return Err(Error::Mismatch("f does not start at G".into()));
        }
        let mut groups = s.groups.clone();
        groups.push(g.clone());
        let mut maps = s.maps.clone();
        maps.push(f.clone());
        Self::new(groups, maps)
    }

    /// Identical groups and maps below the top.
    pub fn almost_equal(&self, other: &GroupSequence) -> bool {
        let l = self.len();
        l == other.len()
            && (0..l).all(|i| self.groups[i].same(&other.groups[i]))
            && (1..l).all(|i| self.pi(i) == other.pi(i))
    }

    /// `S # T`: the top becomes the fibre product of both tops over
    /// `S_{ℓ−1}` and the new top map is the projection to the base.
    pub fn sharp(&self, other: &GroupSequence, bound: usize) -> Result<Self> {
        if !self.almost_equal(other) {
            return Err(Error::InvalidParameter("sharp needs almost equal sequences".into()));
        }
        let l = self.len();
        let base = &self.groups[l - 1];
        let sys = InverseSystem::star(base, vec![self.pi(l).clone(), other.pi(l).clone()])?;
        let lim = limit(&sys, bound)?;
        let mut groups = self.groups[..l].to_vec();
        groups.push(lim.group.clone());
        let mut maps = self.maps[..l - 1].to_vec();
        maps.push(lim.projections[0].clone());
        Self::new(groups, maps)
    }

    /// Level-wise isomorphic kernels. Each entry is an isomorphism
    /// `ker π_{i;1} → ker π_{i;2}`, or the first level where none exists.
    pub fn kernel_isomorphisms(
        &self,
        other: &GroupSequence,
        bound: usize,
    ) -> Result<std::result::Result<Vec<super::SubgroupIso>, usize>> {
        if self.len() != other.len() {
            return Ok(Err(0));
        }
        let mut out = Vec::new();
        for i in 1..=self.len() {
            let (a, b) = (self.kernel(i), other.kernel(i));
            match find_isomorphism(&a.group(), &b.group(), bound)? {
                Some(f) => out.push(super::SubgroupIso::from_local(&a, &b, f)?),
                None => return Ok(Err(i)),
            }
        }
        Ok(Ok(out))
    }

    /// Appends copies of the top with identity maps until length `l`.
    pub fn padded(&self, l: usize) -> Result<Self> {
        let mut groups = self.groups.clone();
        let mut maps = self.maps.clone();
        while maps.len() < l {
            let top = groups.last().unwrap().clone();
            maps.push(Homomorphism::identity(&top));
            groups.push(top);
        }
        Self::new(groups, maps)
    }
}

/// `S_i = L/L_{ℓ−i}` for a chain `1 = L_0 ≤ L_1 ≤ … ≤ L_ℓ = L` of normal
/// subgroups; `S_ℓ` is `L` itself.
pub fn series_to_sequence(l: &Group, chain: &[Subgroup], bound: usize) -> Result<GroupSequence> {
    let len = chain.len().saturating_sub(1);
    if len == 0 {
        return Err(Error::InvalidParameter("a series needs at least the terms 1 and L".into()));
    }
    if !chain[0].is_trivial() || !chain[len].is_whole() {
        return Err(Error::InvalidParameter("a series runs from 1 to L".into()));
    }
    for (k, n) in chain.iter().enumerate() {
        if !n.parent().same(l) {
            return Err(Error::NotSubgroup("series term of another group".into()));
        }
        if !n.is_normal() {
            return Err(Error::NotNormal(format!("series term {k}")));
        }
        if k > 0 && !chain[k - 1].is_subgroup_of(n) {
            return Err(Error::Containment(format!("series term {} not inside term {k}", k - 1)));
        }
    }
    // q[k] : L → L/L_k
    let mut q = Vec::with_capacity(len + 1);
    q.push(Homomorphism::identity(l));
    for n in &chain[1..len] {
        q.push(quotient(l, n, bound)?.1);
    }
    let one = FiniteGroup::trivial();
    q.push(Homomorphism::trivial(l, &one));
    let groups: Vec<Group> = (0..=len).map(|i| q[len - i].target().clone()).collect();
    let mut maps = Vec::with_capacity(len);
    for i in 1..=len {
        let (upper, lower) = (&q[len - i], &q[len - i + 1]);
        let mut pre = vec![usize::MAX; upper.target().order()];
        for x in 0..l.order() {
            let y = upper.apply(x);
            if pre[y] == usize::MAX {
                pre[y] = x;
            }
        }
        let table = pre.iter().map(|&x| lower.apply(x) as u32).collect();
        maps.push(Homomorphism::from_table(upper.target(), lower.target(), table)?);
    }
    GroupSequence::new(groups, maps)
}

/// `L_i = ker(S_ℓ → S_{ℓ−i})`.
pub fn sequence_to_series(s: &GroupSequence) -> Vec<Subgroup> {
    let l = s.len();
    (0..=l).map(|i| s.down(l - i, l).kernel()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::construct::{by_name, cyclic};

    fn chain_of(g: &Group, orders: &[usize]) -> Vec<Subgroup> {
        // normal subgroups picked by order from the cyclic subgroups
        // generated by powers of single elements or products
        let mut out = vec![Subgroup::trivial(g)];
        for &o in orders {
            let prev = out.last().unwrap().clone();
            let found = (0..g.order())
                .map(|x| prev.join(&Subgroup::generated(g, &[x])))
                .find(|s| s.order() == o && s.is_normal())
                .expect("normal subgroup of the requested order");
            out.push(found);
        }
        out.push(Subgroup::whole(g));
        out
    }

    #[test]
    fn z4_series() {
        let z4 = cyclic(4).unwrap();
        let s = series_to_sequence(&z4, &chain_of(&z4, &[2]), 1000).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!((s.group(2).order(), s.group(1).order(), s.group(0).order()), (4, 2, 1));
        assert!(s.is_surjective());
        let back = sequence_to_series(&s);
        assert_eq!(back.iter().map(Subgroup::order).collect::<Vec<_>>(), vec![1, 2, 4]);
    }

    #[test]
    fn s3_series() {
        let s3 = by_name("S3").unwrap();
        let s = series_to_sequence(&s3, &chain_of(&s3, &[3]), 1000).unwrap();
        assert_eq!(s.group(1).order(), 2);
        assert_eq!(s.kernel(2).order(), 3);
    }

    #[test]
    fn f21_z2_series_kernels() {
        let g = by_name("F21xZ2").unwrap();
        let s = series_to_sequence(&g, &chain_of(&g, &[7, 21]), 1000).unwrap();
        let ks: Vec<usize> = (1..=3).map(|i| s.kernel(i).order()).collect();
        assert_eq!(ks, vec![2, 3, 7]);
        let back = sequence_to_series(&s);
        assert_eq!(back.iter().map(Subgroup::order).collect::<Vec<_>>(), vec![1, 7, 21, 42]);
    }

    #[test]
    fn non_normal_term_is_rejected() {
        let s3 = by_name("S3").unwrap();
        let t = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let chain = vec![Subgroup::trivial(&s3), Subgroup::generated(&s3, &[t]), Subgroup::whole(&s3)];
        assert!(matches!(series_to_sequence(&s3, &chain, 100), Err(Error::NotNormal(_))));
    }

    #[test]
    fn contraction_of_z8() {
        let z8 = cyclic(8).unwrap();
        let s = series_to_sequence(&z8, &chain_of(&z8, &[2, 4]), 1000).unwrap();
        let c = s.contraction().unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!((c.top().order(), c.group(1).order()), (8, 2));
        assert_eq!(c.kernel(2).order(), 4);
    }

    #[test]
    fn sharp_of_z4_and_v4() {
        let z4 = cyclic(4).unwrap();
        let s = series_to_sequence(&z4, &chain_of(&z4, &[2]), 1000).unwrap();
        let v4 = by_name("Z2xZ2").unwrap();
        // V4 → Z2 onto the base group of s
        let z2 = s.group(1).clone();
        let f = crate::group::iso::all_homomorphisms(&v4, &z2, 100)
            .unwrap()
            .into_iter()
            .find(|h| h.is_surjective())
            .unwrap();
        let t = GroupSequence::concatenation(&v4, &f, &GroupSequence::new(s.groups[..2].to_vec(), s.maps[..1].to_vec()).unwrap()).unwrap();
        assert!(s.almost_equal(&t));
        let st = s.sharp(&t, 1000).unwrap();
        assert_eq!(st.top().order(), 8);
        assert!(st.is_surjective());
        let ss = s.sharp(&s, 1000).unwrap();
        assert_eq!(ss.top().order(), 8);
        // not almost equal
        let z6 = cyclic(6).unwrap();
        let other = series_to_sequence(&z6, &chain_of(&z6, &[3]), 100).unwrap();
        assert!(s.sharp(&other, 100).is_err());
    }

    #[test]
    fn padding_repeats_the_top() {
        let z4 = cyclic(4).unwrap();
        let s = series_to_sequence(&z4, &chain_of(&z4, &[2]), 1000).unwrap();
        let p = s.padded(4).unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.kernel(4).is_trivial() && p.kernel(3).is_trivial());
        assert_eq!(p.top().order(), 4);
    }
}
