use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use rand::Rng;

use super::subgroup::Subgroup;
use super::{FiniteGroup, Group, Perm};
use crate::error::{Error, Result};

const UNSET: u32 = u32::MAX;

/// A homomorphism stored as a total table on source element indices.
#[derive(Clone)]
pub struct Homomorphism {
    source: Group,
    target: Group,
    table: Arc<Vec<u32>>,
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hom({:?} -> {:?})", self.source, self.target)
    }
}

impl PartialEq for Homomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.source.same(&other.source)
            && self.target.same(&other.target)
            && self.table == other.table
    }
}

/// Fills a table from generator images by walking the Cayley graph.
/// Returns the table and whether every edge was consistent.
fn propagate(source: &FiniteGroup, target: &FiniteGroup, images: &[usize]) -> (Vec<u32>, bool) {
    let n = source.order();
    let mut table = vec![UNSET; n];
    table[0] = 0;
    let mut consistent = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let fx = table[x] as usize;
        for (k, &img) in images.iter().enumerate() {
            let y = source.generator_column(k)[x] as usize;
            let fy = target.mul(fx, img) as u32;
            if table[y] == UNSET {
                table[y] = fy;
                queue.push_back(y);
            } else if table[y] != fy {
                consistent = false;
            }
        }
    }
    (table, consistent)
}

impl Homomorphism {
    /// The homomorphism sending the `k`-th generator of `source` to
    /// `images[k]`. Fails if no homomorphism does that.
    pub fn from_generator_images(source: &Group, target: &Group, images: &[usize]) -> Result<Self> {
        let h = Self::from_generator_images_unchecked(source, target, images)?;
        if !h.consistent_on_edges() {
            return Err(Error::NotAHomomorphism(format!(
                "generator images do not extend from {} to {}",
                source.label(),
                target.label()
            )));
        }
        Ok(h)
    }

    /// Propagates generator images without rejecting conflicts; the first
    /// value reached wins. Used when loading data that is verified later.
    pub fn from_generator_images_unchecked(
        source: &Group,
        target: &Group,
        images: &[usize],
    ) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(Error::Mismatch(format!(
                "{} generator images for {} generators",
                images.len(),
                source.generators().len()
            )));
        }
        let (table, _) = propagate(source, target, images);
        Ok(Homomorphism { source: source.clone(), target: target.clone(), table: Arc::new(table) })
    }

    pub fn from_generator_perms(source: &Group, target: &Group, images: &[Perm]) -> Result<Self> {
        let idx = images
            .iter()
            .map(|p| target.index_of(p))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::NotAHomomorphism("generator image outside target".into()))?;
        Self::from_generator_images(source, target, &idx)
    }

    /// Accepts a full table after checking it on every Cayley-graph edge.
    pub fn from_table(source: &Group, target: &Group, table: Vec<u32>) -> Result<Self> {
        let h = Self::from_table_unchecked(source, target, table)?;
        if !h.is_homomorphism() {
            return Err(Error::NotAHomomorphism(format!(
                "table {} -> {} is not multiplicative",
                source.label(),
                target.label()
            )));
        }
        Ok(h)
    }

    pub fn from_fn(source: &Group, target: &Group, f: impl Fn(usize) -> usize) -> Result<Self> {
        let table = (0..source.order()).map(|x| f(x) as u32).collect();
        Self::from_table(source, target, table)
    }

    pub fn from_table_unchecked(source: &Group, target: &Group, table: Vec<u32>) -> Result<Self> {
        if table.len() != source.order() || table.iter().any(|&t| t as usize >= target.order()) {
            return Err(Error::Mismatch("table shape does not fit source and target".into()));
        }
        Ok(Homomorphism { source: source.clone(), target: target.clone(), table: Arc::new(table) })
    }

    pub fn identity(g: &Group) -> Self {
        Homomorphism {
            source: g.clone(),
            target: g.clone(),
            table: Arc::new((0..g.order() as u32).collect()),
        }
    }

    pub fn trivial(source: &Group, target: &Group) -> Self {
        Homomorphism {
            source: source.clone(),
            target: target.clone(),
            table: Arc::new(vec![0; source.order()]),
        }
    }

    /// Inclusion of a subgroup into its parent.
    pub fn inclusion(sub: &Subgroup) -> Self {
        Homomorphism {
            source: sub.group(),
            target: sub.parent().clone(),
            table: Arc::new(sub.members().map(|m| m as u32).collect()),
        }
    }

    pub fn source(&self) -> &Group {
        &self.source
    }

    pub fn target(&self) -> &Group {
        &self.target
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x] as usize
    }

    /// Images of the source's generators.
    pub fn generator_images(&self) -> Vec<usize> {
        self.source.generators().into_iter().map(|g| self.apply(g)).collect()
    }

    fn consistent_on_edges(&self) -> bool {
        if self.table[0] != 0 {
            return false;
        }
        let gens = self.source.generators();
        (0..gens.len()).all(|k| {
            let col = self.source.generator_column(k);
            let img = self.apply(gens[k]);
            (0..self.source.order())
                .all(|x| self.table[col[x] as usize] as usize == self.target.mul(self.apply(x), img))
        })
    }

    /// Complete check: `f(x·g) = f(x)·f(g)` on every element and generator,
    /// which forces multiplicativity on all pairs.
    pub fn is_homomorphism(&self) -> bool {
        self.consistent_on_edges()
    }

    /// Checks `f(xy) = f(x)f(y)` on all pairs when the source has at most
    /// `pair_bound` elements, otherwise on `10·|source|` random pairs.
    pub fn check_pairs<R: Rng>(&self, pair_bound: usize, rng: &mut R) -> bool {
        let n = self.source.order();
        let ok = |x: usize, y: usize| {
            self.apply(self.source.mul(x, y)) == self.target.mul(self.apply(x), self.apply(y))
        };
        if n <= pair_bound {
            (0..n).all(|x| (0..n).all(|y| ok(x, y)))
        } else {
            (0..10 * n).all(|_| ok(rng.gen_range(0..n), rng.gen_range(0..n)))
        }
    }

    pub fn kernel(&self) -> Subgroup {
        let members: Vec<usize> = (0..self.source.order()).filter(|&x| self.table[x] == 0).collect();
        Subgroup::from_members(&self.source, &members).expect("kernel of a homomorphism")
    }

    pub fn image(&self) -> Subgroup {
        let mut seen = vec![false; self.target.order()];
        for &t in self.table.iter() {
            seen[t as usize] = true;
        }
        let members: Vec<usize> = (0..self.target.order()).filter(|&y| seen[y]).collect();
        Subgroup::from_members(&self.target, &members).expect("image of a homomorphism")
    }

    pub fn image_of(&self, sub: &Subgroup) -> Subgroup {
        let gens: Vec<usize> = sub.generators().into_iter().map(|g| self.apply(g)).collect();
        Subgroup::generated(&self.target, &gens)
    }

    pub fn preimage(&self, sub: &Subgroup) -> Subgroup {
        let members: Vec<usize> =
            (0..self.source.order()).filter(|&x| sub.contains(self.apply(x))).collect();
        Subgroup::from_members(&self.source, &members).expect("preimage of a subgroup")
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        let mut count = 0;
        for &t in self.table.iter() {
            if !seen[t as usize] {
                seen[t as usize] = true;
                count += 1;
            }
        }
        count == self.target.order()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.is_surjective()
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Homomorphism) -> Result<Homomorphism> {
        if !self.target.same(&next.source) {
            return Err(Error::Mismatch(format!(
                "cannot compose: target {} is not source {}",
                self.target.label(),
                next.source.label()
            )));
        }
        let table = self.table.iter().map(|&y| next.table[y as usize]).collect();
        Ok(Homomorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            table: Arc::new(table),
        })
    }

    pub fn inverse(&self) -> Result<Homomorphism> {
        if !self.is_bijective() {
            return Err(Error::InvalidParameter("inverse of a non-bijective map".into()));
        }
        let mut table = vec![0u32; self.target.order()];
        for (x, &y) in self.table.iter().enumerate() {
            table[y as usize] = x as u32;
        }
        Ok(Homomorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            table: Arc::new(table),
        })
    }

    /// `f|_{A,B}`; fails if `f(A)` is not inside `B`.
    pub fn restrict(&self, a: &Subgroup, b: &Subgroup) -> Result<Homomorphism> {
        if !a.parent().same(&self.source) || !b.parent().same(&self.target) {
            return Err(Error::Mismatch("restriction to subgroups of other groups".into()));
        }
        let mut table = Vec::with_capacity(a.order());
        for x in a.members() {
            let y = self.apply(x);
            let l = b.local(y).ok_or_else(|| {
                Error::Containment(format!("f(A) is not inside B for {:?}", self))
            })?;
            table.push(l as u32);
        }
        Ok(Homomorphism { source: a.group(), target: b.group(), table: Arc::new(table) })
    }

    /// Restriction of the source to `a`, keeping the target.
    pub fn restrict_source(&self, a: &Subgroup) -> Result<Homomorphism> {
        self.restrict(a, &Subgroup::whole(&self.target))
            .map(|h| Homomorphism { target: self.target.clone(), ..h })
    }

    /// Same table with the target enlarged along an inclusion of groups.
    pub fn corestrict_into(&self, sub: &Subgroup) -> Result<Homomorphism> {
        if !sub.group().same(&self.target) {
            return Err(Error::Mismatch("target is not the given subgroup".into()));
        }
        let table = self.table.iter().map(|&y| sub.lift(y as usize) as u32).collect();
        Ok(Homomorphism {
            source: self.source.clone(),
            target: sub.parent().clone(),
            table: Arc::new(table),
        })
    }
}

/// `outer ∘ inner`.
pub fn compose(outer: &Homomorphism, inner: &Homomorphism) -> Result<Homomorphism> {
    inner.then(outer)
}

/// The quotient `G/N` realized by the right-coset action, with the
/// canonical surjection.
pub fn quotient(g: &Group, n: &Subgroup, bound: usize) -> Result<(Group, Homomorphism)> {
    if !n.parent().same(g) {
        return Err(Error::NotSubgroup("subgroup of another group".into()));
    }
    if !n.is_normal() {
        return Err(Error::NotNormal(format!("in {}", g.label())));
    }
    let (labels, reps) = n.right_coset_labels();
    let m = reps.len();
    let gens = g.generators();
    let gen_perms: Vec<Perm> = gens
        .iter()
        .map(|&s| {
            Perm::from_images_unchecked(reps.iter().map(|&r| labels[g.mul(r, s)]).collect())
        })
        .collect();
    let label = format!("{}/N{}", g.label(), n.order());
    let q = FiniteGroup::generate(label, m.max(1), gen_perms.clone(), bound)?;
    let images: Vec<usize> = gen_perms.iter().map(|p| q.index_of(p).unwrap()).collect();
    let map = Homomorphism::from_generator_images(g, &q, &images)?;
    debug_assert_eq!(map.kernel(), *n);
    Ok((q, map))
}
