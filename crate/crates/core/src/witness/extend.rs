//! Trivial extendability: `π⁻¹(M) ≅ M × ker π` for every `M ≤ N`.
//!
//! The constructive evidence is a section `s : N → G` of `π` whose image
//! centralizes `ker π`; then `π⁻¹(M) = s(M) × ker π` internally for every
//! `M ≤ N` at once.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::group::construct::direct_product_bounded;
use crate::group::hom::Homomorphism;
use crate::group::iso::find_isomorphism;
use crate::group::structure::centralizer;
use crate::group::subgroup::Subgroup;
use crate::bounds::Bounds;

/// A homomorphic section `N → G` of some `π : G → L` over `N ≤ L`.
#[derive(Clone, Debug)]
pub struct Section {
    pub domain: Subgroup,
    /// `domain.group() → G`.
    pub map: Homomorphism,
}

impl Section {
    pub fn from_parent_fn(
        domain: &Subgroup,
        g: &crate::group::Group,
        f: impl Fn(usize) -> usize,
    ) -> Result<Self> {
        let table = domain.members().map(|n| f(n) as u32).collect();
        let map = Homomorphism::from_table(&domain.group(), g, table)?;
        Ok(Section { domain: domain.clone(), map })
    }

    /// `s(n)` for a parent index `n ∈ N`.
    pub fn apply(&self, n: usize) -> usize {
        self.map.apply(self.domain.local(n).expect("argument lies in N"))
    }

    /// Every way this can fail to certify trivial extendability of `pi`
    /// at `domain`, or `None`.
    pub fn defect(&self, pi: &Homomorphism) -> Option<String> {
        if !self.domain.parent().same(pi.target()) {
            return Some("N is not a subgroup of the target".into());
        }
        if !self.map.source().same(&self.domain.group()) || !self.map.target().same(pi.source()) {
            return Some("section has the wrong source or target".into());
        }
        if !self.map.is_homomorphism() {
            return Some("section is not a homomorphism".into());
        }
        if let Some(n) = self.domain.members().find(|&n| pi.apply(self.apply(n)) != n) {
            return Some(format!("π(s(n)) ≠ n at element {n}"));
        }
        let g = pi.source();
        let kgens = pi.kernel().generators();
        for s in self.domain.group().generators() {
            let x = self.map.apply(s);
            if kgens.iter().any(|&k| g.mul(x, k) != g.mul(k, x)) {
                return Some("image of the section does not centralize ker π".into());
            }
        }
        None
    }
}

#[derive(Clone, Debug)]
pub enum Extendability {
    /// One section over all of `N`.
    Section(Section),
    /// No single section, but every `M ≤ N` passed individually; the count
    /// of subgroups checked.
    PerSubgroup(usize),
    /// `π⁻¹(M)` is not isomorphic to `M × ker π` for this `M`.
    Refuted(Subgroup),
}

impl Extendability {
    pub fn holds(&self) -> bool {
        !matches!(self, Extendability::Refuted(_))
    }
}

/// Searches for a section of `pi` over `n` with image centralizing
/// `ker pi`. Generator images are chosen one at a time inside the
/// centralizer; a partial choice survives only if it generates a subgroup
/// mapped bijectively onto the subgroup generated so far in `N`.
pub fn find_section(pi: &Homomorphism, n: &Subgroup, budget: usize) -> Result<Option<Section>> {
    if !n.parent().same(pi.target()) {
        return Err(Error::NotSubgroup("N must lie in the target of π".into()));
    }
    let g = pi.source();
    let l = pi.target();
    let c = centralizer(&pi.kernel());
    let gens = n.generators();
    let prefix: Vec<usize> =
        (0..=gens.len()).map(|j| Subgroup::generated(l, &gens[..j]).order()).collect();
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&t| {
            c.members()
                .filter(|&x| pi.apply(x) == t && g.element_order(x) == l.element_order(t))
                .collect()
        })
        .collect();
    let mut chosen = Vec::with_capacity(gens.len());
    let mut steps = 0usize;
    fn dfs(
        j: usize,
        g: &crate::group::Group,
        cands: &[Vec<usize>],
        prefix: &[usize],
        chosen: &mut Vec<usize>,
        steps: &mut usize,
        budget: usize,
    ) -> Result<bool> {
        if j == cands.len() {
            return Ok(true);
        }
        for &x in &cands[j] {
            *steps += 1;
            if *steps > budget {
                return Err(Error::bound("section search", *steps, budget));
            }
            chosen.push(x);
            if Subgroup::generated(g, chosen).order() == prefix[j + 1]
                && dfs(j + 1, g, cands, prefix, chosen, steps, budget)?
            {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
    if !dfs(0, g, &cands, &prefix, &mut chosen, &mut steps, budget)? {
        return Ok(None);
    }
    let map = Homomorphism::from_generator_images(&n.group(), g, &chosen)?;
    let s = Section { domain: n.clone(), map };
    debug_assert!(s.defect(pi).is_none());
    Ok(Some(s))
}

/// Every subgroup of `n`, as subgroups of its parent, smallest first.
pub fn all_subgroups(n: &Subgroup, bound: usize) -> Result<Vec<Subgroup>> {
    let g = n.parent();
    let cyclic: Vec<Subgroup> = {
        let mut seen = HashSet::new();
        n.members()
            .map(|x| Subgroup::generated(g, &[x]))
            .filter(|s| seen.insert(s.members().collect::<Vec<_>>()))
            .collect()
    };
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = vec![Subgroup::trivial(g)];
    seen.insert(vec![0]);
    let mut k = 0;
    while k < out.len() {
        let s = out[k].clone();
        for c in &cyclic {
            if c.is_subgroup_of(&s) {
                continue;
            }
            let j = s.join(c);
            if seen.insert(j.members().collect()) {
                if out.len() >= bound {
                    return Err(Error::bound("subgroup lattice", out.len() + 1, bound));
                }
                out.push(j);
            }
        }
        k += 1;
    }
    out.sort_by_key(|s| (s.order(), s.members().collect::<Vec<_>>()));
    Ok(out)
}

/// Decides whether `pi` is trivially extendable at `n`: first by one
/// section over `N`, then subgroup by subgroup (internal complement, then
/// abstract isomorphism with `M × ker π`).
pub fn is_trivially_extendable(pi: &Homomorphism, n: &Subgroup, bounds: &Bounds) -> Result<Extendability> {
    let budget = bounds.enumeration;
    if let Some(s) = find_section(pi, n, budget)? {
        return Ok(Extendability::Section(s));
    }
    if n.order() > bounds.isomorphism {
        return Err(Error::bound("subgroups of N", n.order(), bounds.isomorphism));
    }
    let k = pi.kernel();
    let subs = all_subgroups(n, bounds.enumeration)?;
    for m in &subs {
        if find_section(pi, m, budget)?.is_some() {
            continue;
        }
        let pre = pi.preimage(m);
        let prod = direct_product_bounded(&[m.group(), k.group()], bounds.enumeration)?;
        if find_isomorphism(&pre.group(), &prod.group, bounds.isomorphism)?.is_none() {
            return Ok(Extendability::Refuted(m.clone()));
        }
    }
    Ok(Extendability::PerSubgroup(subs.len()))
}
