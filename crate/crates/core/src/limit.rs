//! Inverse systems of finite groups over finite posets and their limits.
//!
//! A limit is the group of coherent tuples `(x_i)` with `x_i = f_ij(x_j)`
//! for all `i ≤ j`, acting on the disjoint union of the node domains.

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::group::hom::Homomorphism;
use crate::group::subgroup::Subgroup;
use crate::group::{FiniteGroup, Group, Perm};
use crate::poset::Poset;

/// Groups `X_i` on the nodes of a poset with maps `f_ij : X_j → X_i` for
/// every `i ≤ j`.
#[derive(Clone, Debug)]
pub struct InverseSystem {
    poset: Poset,
    groups: Vec<Group>,
    maps: FxHashMap<(usize, usize), Homomorphism>,
}

impl InverseSystem {
    /// `maps` must contain `f_ij` for every strict pair `i < j`; identities
    /// are filled in. Composition is checked on every element.
    pub fn new(
        poset: Poset,
        groups: Vec<Group>,
        maps: Vec<((usize, usize), Homomorphism)>,
    ) -> Result<Self> {
        if groups.len() != poset.len() {
            return Err(Error::Mismatch("one group per node is needed".into()));
        }
        let mut table = FxHashMap::default();
        for (i, g) in groups.iter().enumerate() {
            table.insert((i, i), Homomorphism::identity(g));
        }
        for ((i, j), f) in maps {
            if !poset.lt(i, j) {
                return Err(Error::InvalidParameter(format!("map for non-pair ({i},{j})")));
            }
            if !f.source().same(&groups[j]) || !f.target().same(&groups[i]) {
                return Err(Error::Mismatch(format!("map ({i},{j}) has the wrong groups")));
            }
            table.insert((i, j), f);
        }
        for (i, j) in poset.strict_pairs() {
            if !table.contains_key(&(i, j)) {
                return Err(Error::InvalidParameter(format!("missing map for ({i},{j})")));
            }
        }
        let sys = InverseSystem { poset, groups, maps: table };
        sys.validate()?;
        Ok(sys)
    }

    /// Builds all maps by composing the given cover maps along chains.
    pub fn from_covers(
        poset: Poset,
        groups: Vec<Group>,
        covers: Vec<((usize, usize), Homomorphism)>,
    ) -> Result<Self> {
        let mut known: FxHashMap<(usize, usize), Homomorphism> = covers.into_iter().collect();
        // close under composition, shortest chains first
        let order = poset.linear_extension();
        for &j in &order {
            for &i in order.iter().rev() {
                if !poset.lt(i, j) || known.contains_key(&(i, j)) {
                    continue;
                }
                let via = (0..poset.len()).find(|&k| {
                    poset.lt(i, k) && poset.lt(k, j) && known.contains_key(&(i, k)) && known.contains_key(&(k, j))
                });
                match via {
                    Some(k) => {
                        let f = known[&(k, j)].then(&known[&(i, k)])?;
                        known.insert((i, j), f);
                    }
                    None => {
                        return Err(Error::InvalidParameter(format!(
                            "no chain of cover maps from {j} down to {i}"
                        )))
                    }
                }
            }
        }
        Self::new(poset, groups, known.into_iter().collect())
    }

    /// Root `0` with group `base`, leaves `1..=n` mapped onto it.
    pub fn star(base: &Group, leaves: Vec<Homomorphism>) -> Result<Self> {
        let n = leaves.len();
        let mut groups = vec![base.clone()];
        groups.extend(leaves.iter().map(|f| f.source().clone()));
        let maps = leaves.into_iter().enumerate().map(|(k, f)| ((0, k + 1), f)).collect();
        Self::new(Poset::star(n), groups, maps)
    }

    fn validate(&self) -> Result<()> {
        let n = self.poset.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.poset.lt(i, j) && self.poset.lt(j, k) {
                        let direct = self.transition(i, k);
                        let via = self.transition(j, k).then(self.transition(i, j))?;
                        if direct.table() != via.table() {
                            return Err(Error::NotAHomomorphism(format!(
                                "f_{i}{j} ∘ f_{j}{k} differs from f_{i}{k}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn group(&self, i: usize) -> &Group {
        &self.groups[i]
    }

    pub fn groups(&self) -> &[Group] {
        &self.groups
    }

    /// `f_ij : X_j → X_i` for `i ≤ j`.
    pub fn transition(&self, i: usize, j: usize) -> &Homomorphism {
        &self.maps[&(i, j)]
    }

    pub fn is_surjective(&self) -> bool {
        self.poset.strict_pairs().into_iter().all(|(i, j)| self.transition(i, j).is_surjective())
    }

    /// Checks `f_ij(Y_j) ≤ Y_i` for a family of node subgroups.
    pub fn check_subsystem(&self, y: &[Subgroup]) -> Result<()> {
        if y.len() != self.poset.len() {
            return Err(Error::Mismatch("one subgroup per node is needed".into()));
        }
        for (i, s) in y.iter().enumerate() {
            if !s.parent().same(&self.groups[i]) {
                return Err(Error::Mismatch(format!("subgroup at node {i} lives elsewhere")));
            }
        }
        for (i, j) in self.poset.strict_pairs() {
            let f = self.transition(i, j);
            if !y[j].generators().into_iter().all(|x| y[i].contains(f.apply(x))) {
                return Err(Error::Containment(format!("f_{i}{j}(Y_{j}) is not inside Y_{i}")));
            }
        }
        Ok(())
    }

    pub fn full_subsystem(&self) -> Vec<Subgroup> {
        self.groups.iter().map(Subgroup::whole).collect()
    }

    pub fn trivial_subsystem(&self) -> Vec<Subgroup> {
        self.groups.iter().map(Subgroup::trivial).collect()
    }
}

/// Level maps `φ_i : X_i → Y_i` with `g_ij ∘ φ_j = φ_i ∘ f_ij`.
#[derive(Clone, Debug)]
pub struct SystemMorphism {
    pub source: InverseSystem,
    pub target: InverseSystem,
    pub levels: Vec<Homomorphism>,
}

impl SystemMorphism {
    pub fn new(source: &InverseSystem, target: &InverseSystem, levels: Vec<Homomorphism>) -> Result<Self> {
        if source.poset != target.poset || levels.len() != source.poset.len() {
            return Err(Error::Mismatch("systems over different posets".into()));
        }
        for (i, f) in levels.iter().enumerate() {
            if !f.source().same(source.group(i)) || !f.target().same(target.group(i)) {
                return Err(Error::Mismatch(format!("level map {i} has the wrong groups")));
            }
        }
        for (i, j) in source.poset.strict_pairs() {
            let left = levels[j].then(target.transition(i, j))?;
            let right = source.transition(i, j).then(&levels[i])?;
            if left.table() != right.table() {
                return Err(Error::NotAHomomorphism(format!("square at ({i},{j}) does not commute")));
            }
        }
        Ok(SystemMorphism { source: source.clone(), target: target.clone(), levels })
    }

    /// `φ_i⁻¹(Z_i)` at every node.
    pub fn preimage_system(&self, z: &[Subgroup]) -> Result<Vec<Subgroup>> {
        self.target.check_subsystem(z)?;
        Ok(self.levels.iter().zip(z).map(|(f, s)| f.preimage(s)).collect())
    }

    /// Preimage of the trivial subsystem.
    pub fn kernel_system(&self) -> Vec<Subgroup> {
        self.levels.iter().map(|f| f.kernel()).collect()
    }
}

/// The limit group together with its coordinate data.
#[derive(Clone, Debug)]
pub struct LimitGroup {
    pub group: Group,
    /// `projections[i] = p_i`.
    pub projections: Vec<Homomorphism>,
    tuples: Vec<Vec<u32>>,
    index: FxHashMap<Vec<u32>, u32>,
    nodes: Vec<Group>,
}

impl LimitGroup {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Coordinates of an element.
    pub fn tuple(&self, x: usize) -> &[u32] {
        &self.tuples[x]
    }

    /// The element with the given coordinates, if they are coherent.
    pub fn element(&self, tuple: &[u32]) -> Option<usize> {
        self.index.get(tuple).map(|&x| x as usize)
    }

    pub fn element_of(&self, tuple: &[usize]) -> Option<usize> {
        let t: Vec<u32> = tuple.iter().map(|&c| c as u32).collect();
        self.element(&t)
    }

    pub fn node_group(&self, i: usize) -> &Group {
        &self.nodes[i]
    }

    /// The unique map `C → lim` through which a cone `q_i : C → X_i`
    /// factors.
    pub fn factor_cone(&self, cone: &[Homomorphism]) -> Result<Homomorphism> {
        let c = cone[0].source().clone();
        let mut table = Vec::with_capacity(c.order());
        for x in 0..c.order() {
            let t: Vec<u32> = cone.iter().map(|q| q.apply(x) as u32).collect();
            let y = self
                .element(&t)
                .ok_or_else(|| Error::Mismatch("cone is not coherent".into()))?;
            table.push(y as u32);
        }
        Homomorphism::from_table(&c, &self.group, table)
    }
}

/// Enumerates coherent tuples node by node, lifting through fibres of one
/// lower node and filtering against the others.
pub fn limit(x: &InverseSystem, bound: usize) -> Result<LimitGroup> {
    let p = &x.poset;
    let n = p.len();
    let order = p.linear_extension();
    // for each node, the lower node whose fibres drive the enumeration
    let anchor: Vec<Option<usize>> = (0..n).map(|j| p.lower_cover(j)).collect();
    let fibres: Vec<Option<Vec<Vec<u32>>>> = (0..n)
        .map(|j| {
            anchor[j].map(|i| {
                let f = x.transition(i, j);
                let mut fib = vec![Vec::new(); x.groups[i].order()];
                for y in 0..x.groups[j].order() {
                    fib[f.apply(y)].push(y as u32);
                }
                fib
            })
        })
        .collect();
    let lower: Vec<Vec<usize>> =
        (0..n).map(|j| (0..n).filter(|&i| p.lt(i, j) && Some(i) != anchor[j]).collect()).collect();

    let mut tuples: Vec<Vec<u32>> = Vec::new();
    let mut cur = vec![0u32; n];
    struct Walk<'a> {
        order: &'a [usize],
        x: &'a InverseSystem,
        anchor: &'a [Option<usize>],
        fibres: &'a [Option<Vec<Vec<u32>>>],
        lower: &'a [Vec<usize>],
        bound: usize,
    }
    impl Walk<'_> {
        fn dfs(&self, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) -> Result<()> {
            if pos == self.order.len() {
                if out.len() >= self.bound {
                    return Err(Error::bound("inverse limit", out.len() + 1, self.bound));
                }
                out.push(cur.clone());
                return Ok(());
            }
            let j = self.order[pos];
            let cands: Vec<u32> = match self.anchor[j] {
                Some(i) => self.fibres[j].as_ref().unwrap()[cur[i] as usize].clone(),
                None => (0..self.x.groups[j].order() as u32).collect(),
            };
            for c in cands {
                if self.lower[j].iter().all(|&i| self.x.transition(i, j).apply(c as usize) as u32 == cur[i]) {
                    cur[j] = c;
                    self.dfs(pos + 1, cur, out)?;
                }
            }
            Ok(())
        }
    }
    let walk = Walk { order: &order, x, anchor: &anchor, fibres: &fibres, lower: &lower, bound };
    walk.dfs(0, &mut cur, &mut tuples)?;
    build_limit(x, tuples)
}

fn build_limit(x: &InverseSystem, mut tuples: Vec<Vec<u32>>) -> Result<LimitGroup> {
    tuples.sort_unstable();
    let degree: usize = x.groups.iter().map(|g| g.degree()).sum();
    let perms: Vec<Perm> = tuples
        .iter()
        .map(|t| Perm::disjoint_union(t.iter().enumerate().map(|(i, &c)| x.groups[i].element(c as usize))))
        .collect();
    let label = format!("lim({})", x.groups.iter().map(|g| g.label()).collect::<Vec<_>>().join(","));
    let group = FiniteGroup::from_elements(label, degree, perms)?;
    let index: FxHashMap<Vec<u32>, u32> =
        tuples.iter().enumerate().map(|(k, t)| (t.clone(), k as u32)).collect();
    let projections = (0..x.poset.len())
        .map(|i| {
            let table = tuples.iter().map(|t| t[i]).collect();
            Homomorphism::from_table(&group, &x.groups[i], table)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LimitGroup { group, projections, tuples, index, nodes: x.groups.clone() })
}

/// Coherent tuples running through the subgroups `Y_i`.
pub fn subsystem_limit(x: &InverseSystem, lim: &LimitGroup, y: &[Subgroup]) -> Result<Subgroup> {
    x.check_subsystem(y)?;
    let members: Vec<usize> = (0..lim.order())
        .filter(|&e| lim.tuple(e).iter().enumerate().all(|(i, &c)| y[i].contains(c as usize)))
        .collect();
    Subgroup::from_members(&lim.group, &members)
}

/// Tuple-wise application of a morphism of systems.
pub fn limit_of_morphism(phi: &SystemMorphism, source: &LimitGroup, target: &LimitGroup) -> Result<Homomorphism> {
    let mut table = Vec::with_capacity(source.order());
    for e in 0..source.order() {
        let t: Vec<u32> = source
            .tuple(e)
            .iter()
            .enumerate()
            .map(|(i, &c)| phi.levels[i].apply(c as usize) as u32)
            .collect();
        let y = target
            .element(&t)
            .ok_or_else(|| Error::construction("limit_of_morphism", "image tuple is not coherent"))?;
        table.push(y as u32);
    }
    Homomorphism::from_table(&source.group, &target.group, table)
}

/// A system of finite sets with maps `X_j → X_i`, given as index tables.
#[derive(Clone, Debug)]
pub struct SetSystem {
    pub poset: Poset,
    pub sizes: Vec<usize>,
    pub maps: FxHashMap<(usize, usize), Vec<usize>>,
}

/// One coherent tuple of a surjective system of nonempty sets over an
/// in-forest: pick at rank 0, then lift along the unique lower cover.
pub fn section_of_set_system(x: &SetSystem) -> Result<Vec<usize>> {
    let p = &x.poset;
    if !p.is_in_forest() {
        return Err(Error::InvalidParameter("poset is not an in-forest".into()));
    }
    let mut chosen = vec![usize::MAX; p.len()];
    for j in p.linear_extension() {
        if x.sizes[j] == 0 {
            return Err(Error::InvalidParameter(format!("empty set at node {j}")));
        }
        chosen[j] = match p.lower_cover(j) {
            None => 0,
            Some(i) => {
                let f = &x.maps[&(i, j)];
                (0..x.sizes[j]).find(|&c| f[c] == chosen[i]).ok_or_else(|| {
                    Error::Refuted(format!("map to node {i} misses the chosen point"))
                })?
            }
        };
    }
    for (i, j) in p.strict_pairs() {
        if x.maps[&(i, j)][chosen[j]] != chosen[i] {
            return Err(Error::construction("section_of_set_system", format!("incoherent at ({i},{j})")));
        }
    }
    Ok(chosen)
}

/// `X_{i₀}`: `Y_i = X_{i∧i₀}` (trivial when the meet is absent), with the
/// morphism `φ_i = f_{(i∧i₀) i}`.
pub fn projection_system(x: &InverseSystem, i0: usize) -> Result<(InverseSystem, SystemMorphism)> {
    let p = &x.poset;
    if !p.is_in_forest() {
        return Err(Error::InvalidParameter("poset is not an in-forest".into()));
    }
    let n = p.len();
    let trivial = FiniteGroup::trivial();
    let meets: Vec<Option<usize>> = (0..n).map(|i| p.meet(i, i0)).collect::<Result<_>>()?;
    let groups: Vec<Group> = meets
        .iter()
        .map(|m| m.map_or_else(|| trivial.clone(), |m| x.groups[m].clone()))
        .collect();
    let mut maps = Vec::new();
    for (i, j) in p.strict_pairs() {
        let f = match (meets[i], meets[j]) {
            (Some(a), Some(b)) => x.transition(a, b).clone(),
            _ => Homomorphism::trivial(&groups[j], &groups[i]),
        };
        maps.push(((i, j), f));
    }
    let y = InverseSystem::new(p.clone(), groups.clone(), maps)?;
    let levels = (0..n)
        .map(|i| match meets[i] {
            Some(m) => x.transition(m, i).clone(),
            None => Homomorphism::trivial(&x.groups[i], &groups[i]),
        })
        .collect();
    let phi = SystemMorphism::new(x, &y, levels)?;
    Ok((y, phi))
}
