//! Group actions, permutation transversals, wreath products and the
//! standard embedding of a transitive group.
//!
//! Wreath elements are pairs `(f, h)` with `f : Ω → G` and `h` in the top
//! group. The twist is `f^h(ω) = f(ω^{h⁻¹})`, so
//! `(f₁,h₁)(f₂,h₂) = (ν ↦ f₁(ν)·f₂(ν^{h₁}), h₁h₂)`.

use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::group::hom::Homomorphism;
use crate::group::subgroup::Subgroup;
use crate::group::{FiniteGroup, Group, Perm};

/// A right action of a group on the points `0..len`.
#[derive(Clone, Debug)]
pub struct GroupAction {
    group: Group,
    // images[g][ω] = ω^g
    images: Arc<Vec<Vec<u32>>>,
}

impl GroupAction {
    /// Builds the action from the images of the group generators and
    /// checks that it is well defined on all elements.
    pub fn from_generator_images(group: &Group, points: usize, gens: &[Perm]) -> Result<Self> {
        let gidx = group.generators();
        if gens.len() != gidx.len() || gens.iter().any(|p| p.degree() != points) {
            return Err(Error::InvalidParameter("one permutation of Ω per generator is needed".into()));
        }
        let n = group.order();
        let mut images: Vec<Option<Vec<u32>>> = vec![None; n];
        images[0] = Some((0..points as u32).collect());
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let cur = images[x].clone().unwrap();
            for (k, p) in gens.iter().enumerate() {
                let y = group.generator_column(k)[x] as usize;
                let img: Vec<u32> = cur.iter().map(|&w| p.apply(w as usize) as u32).collect();
                match &images[y] {
                    Some(old) if *old != img => {
                        return Err(Error::NotAHomomorphism("generator images do not define an action".into()))
                    }
                    Some(_) => {}
                    None => {
                        images[y] = Some(img);
                        queue.push_back(y);
                    }
                }
            }
        }
        let images = images.into_iter().map(|v| v.expect("generators reach every element")).collect();
        Ok(GroupAction { group: group.clone(), images: Arc::new(images) })
    }

    /// `ω^g` given pointwise; the action axioms are checked.
    pub fn from_fn(group: &Group, points: usize, act: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let gens: Vec<Perm> = group
            .generators()
            .into_iter()
            .map(|g| Perm::from_images((0..points).map(|w| act(w, g) as u32).collect()))
            .collect::<Result<_>>()?;
        let a = Self::from_generator_images(group, points, &gens)?;
        for g in 0..group.order() {
            for w in 0..points {
                if a.act(w, g) != act(w, g) {
                    return Err(Error::NotAHomomorphism(format!("action rule disagrees at ({w},{g})")));
                }
            }
        }
        Ok(a)
    }

    /// A permutation group acting on its own domain.
    pub fn natural(group: &Group) -> Self {
        let images = group.elements().iter().map(|p| p.images().to_vec()).collect();
        GroupAction { group: group.clone(), images: Arc::new(images) }
    }

    /// Right multiplication on the group itself.
    pub fn regular(group: &Group) -> Self {
        let images = (0..group.order())
            .map(|g| (0..group.order()).map(|x| group.mul(x, g) as u32).collect())
            .collect();
        GroupAction { group: group.clone(), images: Arc::new(images) }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.images[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `ω^g`.
    pub fn act(&self, w: usize, g: usize) -> usize {
        self.images[g][w] as usize
    }

    pub fn perm(&self, g: usize) -> Perm {
        Perm::from_images_unchecked(self.images[g].clone())
    }

    pub fn orbit(&self, w: usize) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        seen[w] = true;
        let mut out = vec![w];
        let mut i = 0;
        while i < out.len() {
            for g in self.group.generators() {
                let v = self.act(out[i], g);
                if !seen[v] {
                    seen[v] = true;
                    out.push(v);
                }
            }
            i += 1;
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.is_empty() || self.orbit(0).len() == self.len()
    }

    pub fn stabilizer(&self, w: usize) -> Subgroup {
        let members: Vec<usize> = (0..self.group.order()).filter(|&g| self.act(w, g) == w).collect();
        Subgroup::from_members(&self.group, &members).expect("stabilizer is a subgroup")
    }

    pub fn kernel(&self) -> Subgroup {
        let members: Vec<usize> = (0..self.group.order())
            .filter(|&g| (0..self.len()).all(|w| self.act(w, g) == w))
            .collect();
        Subgroup::from_members(&self.group, &members).expect("kernel is a subgroup")
    }

    pub fn is_faithful(&self) -> bool {
        self.kernel().is_trivial()
    }

    /// The permutation image `ρ(G) ≤ Sym(Ω)` and the map `ρ : G → ρ(G)`.
    pub fn image(&self) -> Result<(Group, Homomorphism)> {
        let gens: Vec<Perm> = self.group.generators().into_iter().map(|g| self.perm(g)).collect();
        let label = format!("ρ({})", self.group.label());
        let img = FiniteGroup::generate(label, self.len().max(1), pad(gens, self.len()), self.group.order() + 1)?;
        let table = (0..self.group.order())
            .map(|g| img.index_of(&pad_one(self.perm(g), self.len())).expect("image element") as u32)
            .collect();
        let rho = Homomorphism::from_table(&self.group, &img, table)?;
        Ok((img, rho))
    }

    /// The same points acted on through `ρ(G)` naturally.
    pub fn on_image(&self) -> Result<(GroupAction, Homomorphism)> {
        let (img, rho) = self.image()?;
        Ok((GroupAction::natural(&img), rho))
    }
}

// an action on zero points is realized on one fixed point
fn pad(gens: Vec<Perm>, n: usize) -> Vec<Perm> {
    gens.into_iter().map(|p| pad_one(p, n)).collect()
}

fn pad_one(p: Perm, n: usize) -> Perm {
    if n == 0 {
        Perm::identity(1)
    } else {
        p
    }
}

/// Right multiplication on the right cosets of `k`, numbered by least
/// element with `k` itself as point `0`.
pub fn coset_action(k: &Subgroup) -> GroupAction {
    let h = k.parent();
    let (labels, reps) = k.right_coset_labels();
    let images = (0..h.order())
        .map(|g| reps.iter().map(|&r| labels[h.mul(r, g)]).collect())
        .collect();
    GroupAction { group: h.clone(), images: Arc::new(images) }
}

/// Elements `t_ν` with `ω^{t_ν} = ν` and `t_ω = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationTransversal {
    pub basepoint: usize,
    pub reps: Vec<usize>,
}

impl PermutationTransversal {
    /// The least element carrying the basepoint to each point.
    pub fn minimal(action: &GroupAction, basepoint: usize) -> Result<Self> {
        let mut reps = vec![usize::MAX; action.len()];
        for g in 0..action.group.order() {
            let v = action.act(basepoint, g);
            if reps[v] == usize::MAX {
                reps[v] = g;
            }
        }
        if reps.contains(&usize::MAX) {
            return Err(Error::InvalidParameter("action is not transitive".into()));
        }
        Ok(PermutationTransversal { basepoint, reps })
    }

    pub fn new(action: &GroupAction, basepoint: usize, reps: Vec<usize>) -> Result<Self> {
        let t = PermutationTransversal { basepoint, reps };
        t.validate(action)?;
        Ok(t)
    }

    pub fn validate(&self, action: &GroupAction) -> Result<()> {
        if self.reps.len() != action.len() || self.reps[self.basepoint] != action.group.identity() {
            return Err(Error::InvalidParameter("transversal must fix t_ω = 1".into()));
        }
        for (v, &t) in self.reps.iter().enumerate() {
            if t >= action.group.order() || action.act(self.basepoint, t) != v {
                return Err(Error::InvalidParameter(format!("t_{v} does not carry ω to {v}")));
            }
        }
        Ok(())
    }
}

/// The arithmetic of `G ≀_Ω H` for a base group and an acting top group.
#[derive(Clone, Debug)]
pub struct WreathShape {
    pub base: Group,
    pub action: GroupAction,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WreathElem {
    pub f: Vec<u32>,
    pub h: u32,
}

impl WreathShape {
    pub fn new(base: &Group, action: &GroupAction) -> Self {
        WreathShape { base: base.clone(), action: action.clone() }
    }

    pub fn top(&self) -> &Group {
        self.action.group()
    }

    pub fn points(&self) -> usize {
        self.action.len()
    }

    pub fn identity(&self) -> WreathElem {
        WreathElem { f: vec![0; self.points()], h: 0 }
    }

    pub fn base_elem(&self, f: Vec<u32>) -> WreathElem {
        WreathElem { f, h: 0 }
    }

    pub fn top_elem(&self, h: usize) -> WreathElem {
        WreathElem { f: vec![0; self.points()], h: h as u32 }
    }

    /// `f^h(ω) = f(ω^{h⁻¹})`.
    pub fn twist(&self, f: &[u32], h: usize) -> Vec<u32> {
        let hinv = self.top().inv(h);
        (0..self.points()).map(|w| f[self.action.act(w, hinv)]).collect()
    }

    pub fn mul(&self, a: &WreathElem, b: &WreathElem) -> WreathElem {
        let g = &self.base;
        let h1 = a.h as usize;
        let f = (0..self.points())
            .map(|v| g.mul(a.f[v] as usize, b.f[self.action.act(v, h1)] as usize) as u32)
            .collect();
        WreathElem { f, h: self.top().mul(h1, b.h as usize) as u32 }
    }

    pub fn inv(&self, a: &WreathElem) -> WreathElem {
        // (f,h)⁻¹ = ((f⁻¹)^h, h⁻¹)
        let g = &self.base;
        let finv: Vec<u32> = a.f.iter().map(|&x| g.inv(x as usize) as u32).collect();
        WreathElem { f: self.twist(&finv, a.h as usize), h: self.top().inv(a.h as usize) as u32 }
    }

    /// `x a x⁻¹`.
    pub fn conj(&self, x: &WreathElem, a: &WreathElem) -> WreathElem {
        self.mul(&self.mul(x, a), &self.inv(x))
    }

    /// Degree of the permutation realization: `Ω × dom(G)`, followed by the
    /// top domain when the top does not act faithfully.
    pub fn degree(&self) -> usize {
        let extra = if self.action.is_faithful() { 0 } else { self.top().degree() };
        (self.points() * self.base.degree() + extra).max(1)
    }

    /// `(ν, x) ↦ (ν^h, x^{f(ν)})`.
    pub fn perm(&self, a: &WreathElem) -> Perm {
        self.perm_with(a, !self.action.is_faithful())
    }

    fn perm_with(&self, a: &WreathElem, with_top: bool) -> Perm {
        let d = self.base.degree();
        let n = self.points();
        let mut img = Vec::with_capacity(n * d);
        for v in 0..n {
            let vh = self.action.act(v, a.h as usize);
            let p = self.base.element(a.f[v] as usize);
            for x in 0..d {
                img.push((vh * d + p.apply(x)) as u32);
            }
        }
        if with_top {
            let off = (n * d) as u32;
            img.extend(self.top().element(a.h as usize).images().iter().map(|&y| y + off));
        }
        if img.is_empty() {
            img.push(0);
        }
        Perm::from_images_unchecked(img)
    }
}

/// `G ≀_Ω H`, enumerated.
#[derive(Clone, Debug)]
pub struct Wreath {
    pub shape: WreathShape,
    pub group: Group,
    /// `G^Ω` as a subgroup.
    pub base: Subgroup,
    /// `h ↦ (1, h)`.
    pub top_embedding: Homomorphism,
    with_top: bool,
    top_lookup: FxHashMap<Vec<u32>, u32>,
}

impl Wreath {
    pub fn element(&self, a: &WreathElem) -> usize {
        self.group.index_of(&self.shape.perm_with(a, self.with_top)).expect("wreath element")
    }

    pub fn decode(&self, x: usize) -> WreathElem {
        let sh = &self.shape;
        let p = self.group.element(x);
        let d = sh.base.degree();
        let n = sh.points();
        let h = if self.with_top {
            let off = n * d;
            let top: Vec<u32> = p.images()[off..].iter().map(|&y| y - off as u32).collect();
            sh.top().index_of(&Perm::from_images_unchecked(top)).expect("top element") as u32
        } else {
            let moved: Vec<u32> = (0..n).map(|v| (p.apply(v * d) / d) as u32).collect();
            self.top_lookup[&moved]
        };
        let f = (0..n)
            .map(|v| {
                let vh = sh.action.act(v, h as usize);
                let block: Vec<u32> = (0..d).map(|x| (p.apply(v * d + x) - vh * d) as u32).collect();
                sh.base.index_of(&Perm::from_images_unchecked(block)).expect("base element") as u32
            })
            .collect();
        WreathElem { f, h }
    }
}

/// Enumerates `G ≀_Ω H` with generators `(g at ν, 1)` and `(1, h)`.
pub fn wreath_product(g: &Group, action: &GroupAction, bound: usize) -> Result<Wreath> {
    let n = action.len();
    let top = action.group();
    let size = (g.order() as u128).checked_pow(n as u32).and_then(|s| s.checked_mul(top.order() as u128));
    match size {
        Some(s) if s <= bound as u128 => {}
        s => return Err(Error::bound("wreath product", s.unwrap_or(u128::MAX) as usize, bound)),
    }
    let shape = WreathShape::new(g, action);
    let with_top = !action.is_faithful();
    let mut gens = Vec::new();
    for v in 0..n {
        for s in g.generators() {
            let mut f = vec![0u32; n];
            f[v] = s as u32;
            gens.push(shape.perm_with(&shape.base_elem(f), with_top));
        }
    }
    for h in top.generators() {
        gens.push(shape.perm_with(&shape.top_elem(h), with_top));
    }
    let degree = shape.perm_with(&shape.identity(), with_top).degree();
    let label = format!("{}≀{}", g.label(), top.label());
    let group = FiniteGroup::generate(label, degree, gens, bound)?;
    let top_lookup = (0..top.order())
        .map(|h| ((0..n).map(|v| action.act(v, h) as u32).collect(), h as u32))
        .collect();
    let mut w = Wreath {
        shape,
        group: group.clone(),
        base: Subgroup::trivial(&group),
        top_embedding: Homomorphism::trivial(top, &group),
        with_top,
        top_lookup,
    };
    let base: Vec<usize> = (0..group.order()).filter(|&x| w.decode(x).h == 0).collect();
    w.base = Subgroup::from_members(&group, &base)?;
    let table = (0..top.order()).map(|h| w.element(&w.shape.top_elem(h)) as u32).collect();
    w.top_embedding = Homomorphism::from_table(top, &group, table)?;
    Ok(w)
}

/// `ι(g) = (f_g, ρ(g))` with `f_g(ν) = t_ν g t⁻¹_{ν^g}`, landing in
/// `G_ω ≀_Ω ρ(G)`. Base values are local indices of the stabilizer.
#[derive(Clone, Debug)]
pub struct StandardEmbedding {
    pub action: GroupAction,
    pub transversal: PermutationTransversal,
    pub stabilizer: Subgroup,
    pub shape: WreathShape,
    /// `ρ : G → ρ(G)`.
    pub rho: Homomorphism,
    /// `images[g] = ι(g)`.
    pub images: Vec<WreathElem>,
}

pub fn standard_embedding(action: &GroupAction, transversal: &PermutationTransversal) -> Result<StandardEmbedding> {
    if !action.is_transitive() {
        return Err(Error::InvalidParameter("standard embedding needs a transitive action".into()));
    }
    transversal.validate(action)?;
    let g = action.group();
    let stab = action.stabilizer(transversal.basepoint);
    let (top_action, rho) = action.on_image()?;
    let shape = WreathShape::new(&stab.group(), &top_action);
    let t = &transversal.reps;
    let mut images = Vec::with_capacity(g.order());
    for x in 0..g.order() {
        let f = (0..action.len())
            .map(|v| {
                let y = g.mul(g.mul(t[v], x), g.inv(t[action.act(v, x)]));
                stab.local(y).map(|k| k as u32).ok_or_else(|| {
                    Error::InvalidParameter(format!("f_g({v}) leaves the point stabilizer"))
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        images.push(WreathElem { f, h: rho.apply(x) as u32 });
    }
    Ok(StandardEmbedding { action: action.clone(), transversal: transversal.clone(), stabilizer: stab, shape, rho, images })
}

impl StandardEmbedding {
    pub fn apply(&self, g: usize) -> &WreathElem {
        &self.images[g]
    }

    /// Homomorphism on generator edges and injectivity, in tuple arithmetic.
    pub fn verify(&self) -> Result<()> {
        let g = self.action.group();
        for x in 0..g.order() {
            for (k, s) in g.generators().into_iter().enumerate() {
                let y = g.generator_column(k)[x] as usize;
                if self.shape.mul(&self.images[x], &self.images[s]) != self.images[y] {
                    return Err(Error::NotAHomomorphism(format!("ι fails on edge ({x},{s})")));
                }
            }
        }
        let mut seen: Vec<&WreathElem> = self.images.iter().collect();
        seen.sort();
        seen.dedup();
        if seen.len() != g.order() {
            return Err(Error::construction("standard_embedding", "ι is not injective"));
        }
        Ok(())
    }

    /// `ι` as a homomorphism into an enumerated wreath with the same shape.
    pub fn into_wreath(&self, w: &Wreath) -> Result<Homomorphism> {
        if !w.shape.base.same(&self.shape.base) || !w.shape.top().same(self.shape.top()) {
            return Err(Error::Mismatch("wreath does not match the embedding's shape".into()));
        }
        let table = self.images.iter().map(|a| w.element(a) as u32).collect();
        Homomorphism::from_table(self.action.group(), &w.group, table)
    }
}

/// `f(ν) = s_ν t_ν⁻¹` with `λ(g) = f·ι(g)·f⁻¹`.
pub fn embedding_conjugator(iota: &StandardEmbedding, lambda: &StandardEmbedding) -> Result<Vec<u32>> {
    if iota.transversal.basepoint != lambda.transversal.basepoint {
        return Err(Error::Mismatch("embeddings use different basepoints".into()));
    }
    if !iota.action.group().same(lambda.action.group()) || iota.stabilizer != lambda.stabilizer {
        return Err(Error::Mismatch("embeddings of different groups".into()));
    }
    let g = iota.action.group();
    let t = &iota.transversal.reps;
    let s = &lambda.transversal.reps;
    let f: Vec<u32> = (0..t.len())
        .map(|v| {
            let y = g.mul(s[v], g.inv(t[v]));
            iota.stabilizer.local(y).expect("s_ν t_ν⁻¹ fixes ω") as u32
        })
        .collect();
    // the two embeddings may carry separately built copies of ρ(G); compare
    // tops as permutations of Ω
    let x = iota.shape.base_elem(f.clone());
    for a in 0..g.order() {
        let c = iota.shape.conj(&x, &iota.images[a]);
        let l = &lambda.images[a];
        let same_top = iota.shape.top().element(c.h as usize) == lambda.shape.top().element(l.h as usize);
        if c.f != l.f || !same_top {
            return Err(Error::construction("embedding_conjugator", format!("conjugation fails at {a}")));
        }
    }
    Ok(f)
}

/// An action isomorphism `(φ, ψ)`: `φ(ω^h) = φ(ω)^{ψ(h)}`.
pub fn check_action_isomorphism(
    from: &GroupAction,
    to: &GroupAction,
    phi: &[usize],
    psi: &Homomorphism,
) -> Result<()> {
    if !psi.source().same(from.group()) || !psi.target().same(to.group()) || !psi.is_bijective() {
        return Err(Error::Mismatch("ψ must be an isomorphism between the acting groups".into()));
    }
    let mut sorted = phi.to_vec();
    sorted.sort_unstable();
    if phi.len() != from.len() || sorted != (0..to.len()).collect::<Vec<_>>() {
        return Err(Error::InvalidParameter("φ is not a bijection Ω → Γ".into()));
    }
    for h in from.group().generators() {
        for w in 0..from.len() {
            if phi[from.act(w, h)] != to.act(phi[w], psi.apply(h)) {
                return Err(Error::NotAHomomorphism("(φ, ψ) is not equivariant".into()));
            }
        }
    }
    Ok(())
}

/// `(f, h) ↦ (η∘f∘φ⁻¹, ψ(h))` as a map of elements.
pub fn wreath_map_elem(eta: &Homomorphism, phi: &[usize], psi: &Homomorphism, a: &WreathElem) -> WreathElem {
    let mut f = vec![0u32; phi.len()];
    for (w, &g) in phi.iter().enumerate() {
        f[g] = eta.apply(a.f[w] as usize) as u32;
    }
    WreathElem { f, h: psi.apply(a.h as usize) as u32 }
}

/// The wreath product of `η` by `(φ, ψ)` between enumerated wreaths.
pub fn wreath_of_homomorphisms(
    source: &Wreath,
    target: &Wreath,
    eta: &Homomorphism,
    phi: &[usize],
    psi: &Homomorphism,
) -> Result<Homomorphism> {
    check_action_isomorphism(&source.shape.action, &target.shape.action, phi, psi)?;
    if !eta.source().same(&source.shape.base) || !eta.target().same(&target.shape.base) {
        return Err(Error::Mismatch("η does not connect the base groups".into()));
    }
    let table = (0..source.group.order())
        .map(|x| target.element(&wreath_map_elem(eta, phi, psi, &source.decode(x))) as u32)
        .collect();
    Homomorphism::from_table(&source.group, &target.group, table)
}
