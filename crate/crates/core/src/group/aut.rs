use std::collections::HashSet;
use std::ops::ControlFlow;

use super::hom::Homomorphism;
use super::iso::for_each_isomorphism;
use super::subgroup::Subgroup;
use super::Group;
use crate::error::{Error, Result};

/// A set of automorphisms of one group. `complete` marks a set known to be
/// a whole group (all of Aut(G), or Inn(G)).
#[derive(Clone, Debug)]
pub struct AutomorphismSet {
    pub group: Group,
    pub autos: Vec<Homomorphism>,
    pub complete: bool,
}

fn dedup(autos: Vec<Homomorphism>) -> Vec<Homomorphism> {
    let mut seen = HashSet::new();
    autos.into_iter().filter(|a| seen.insert(a.table().to_vec())).collect()
}

impl AutomorphismSet {
    pub fn len(&self) -> usize {
        self.autos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.autos.is_empty()
    }

    pub fn contains(&self, a: &Homomorphism) -> bool {
        self.autos.iter().any(|b| b.table() == a.table())
    }

    /// Closed under composition and inverses (as a finite set, closure
    /// under composition suffices).
    pub fn is_closed(&self) -> bool {
        let tables: HashSet<Vec<u32>> = self.autos.iter().map(|a| a.table().to_vec()).collect();
        self.autos.iter().all(|a| {
            self.autos.iter().all(|b| {
                let c: Vec<u32> = a.table().iter().map(|&y| b.table()[y as usize]).collect();
                tables.contains(&c)
            })
        })
    }

    pub fn is_abelian(&self) -> bool {
        self.autos.iter().all(|a| {
            self.autos.iter().all(|b| {
                let ab: Vec<u32> = a.table().iter().map(|&y| b.table()[y as usize]).collect();
                let ba: Vec<u32> = b.table().iter().map(|&y| a.table()[y as usize]).collect();
                ab == ba
            })
        })
    }
}

/// All automorphisms of `g`.
pub fn automorphism_set(g: &Group, bound: usize) -> Result<AutomorphismSet> {
    if g.order() > bound {
        return Err(Error::bound("automorphism search", g.order(), bound));
    }
    let mut autos = Vec::new();
    for_each_isomorphism(g, g, &[], usize::MAX, |f| {
        autos.push(f);
        ControlFlow::Continue(())
    })?;
    Ok(AutomorphismSet { group: g.clone(), autos, complete: true })
}

/// `Inn(g)(h) = g h g⁻¹`.
pub fn inner_automorphism(group: &Group, g: usize) -> Homomorphism {
    let table = (0..group.order()).map(|h| group.conj(g, h) as u32).collect();
    Homomorphism::from_table_unchecked(group, group, table).expect("table shape")
}

pub fn inner_automorphisms(g: &Group) -> AutomorphismSet {
    let autos = dedup((0..g.order()).map(|x| inner_automorphism(g, x)).collect());
    AutomorphismSet { group: g.clone(), autos, complete: true }
}

/// `A_H = {σ ∈ A : σ(H) = H}`.
pub fn stabilized(a: &AutomorphismSet, h: &Subgroup) -> AutomorphismSet {
    let autos = a
        .autos
        .iter()
        .filter(|s| h.members().all(|x| h.contains(s.apply(x))))
        .cloned()
        .collect();
    AutomorphismSet { group: a.group.clone(), autos, complete: a.complete }
}

/// `A^H`: restrictions to `H` of automorphisms that stabilize it.
pub fn restricted(a: &AutomorphismSet, h: &Subgroup) -> Result<AutomorphismSet> {
    let autos = a
        .autos
        .iter()
        .map(|s| s.restrict(h, h))
        .collect::<Result<Vec<_>>>()?;
    Ok(AutomorphismSet { group: h.group(), autos: dedup(autos), complete: a.complete })
}

/// `f_•(σ) = f ∘ σ ∘ f⁻¹` for a bijective `f`.
pub fn transport(f: &Homomorphism, sigma: &Homomorphism) -> Result<Homomorphism> {
    let finv = f.inverse()?;
    finv.then(sigma)?.then(f)
}

pub fn conjugate_transport(f: &Homomorphism, a: &AutomorphismSet) -> Result<AutomorphismSet> {
    let autos = a.autos.iter().map(|s| transport(f, s)).collect::<Result<Vec<_>>>()?;
    Ok(AutomorphismSet { group: f.target().clone(), autos, complete: a.complete })
}
