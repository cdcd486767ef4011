//! Hybrid wreath products `HW(G, H, θ)`: the preimage of the standard
//! embedding `ι(H) ≤ θ(G) ≀_Ω ρ(H)` under `θ̃ = θ ≀ id`, inside
//! `G ≀_Ω ρ(H)` with `Ω = [H : θ(G)]`.

use crate::error::{Error, Result};
use crate::group::hom::Homomorphism;
use crate::group::subgroup::Subgroup;
use crate::group::{FiniteGroup, Group, Perm};
use crate::limit::{limit, InverseSystem, LimitGroup};
use crate::wreath::{coset_action, GroupAction, PermutationTransversal, WreathElem, WreathShape};

#[derive(Clone, Debug)]
pub struct HybridWreath {
    pub theta: Homomorphism,
    /// `θ(G) ≤ H`.
    pub image: Subgroup,
    /// `H` on the right cosets of `θ(G)`, the image itself being point 0.
    pub action: GroupAction,
    pub transversal: PermutationTransversal,
    /// `ρ : H → ρ(H) ≤ Sym(Ω)`.
    pub rho: Homomorphism,
    /// `G ≀_Ω ρ(H)`.
    pub shape: WreathShape,
    /// The carrier.
    pub group: Group,
    coords: Vec<WreathElem>,
    /// `p_θ`, with codomain `H`.
    pub standard_map: Homomorphism,
    /// `BW = p_θ⁻¹(θ(G))`.
    pub base: Subgroup,
    pub normal: bool,
}

/// The star system behind a normal base subgroup and the identification
/// of `BW` with its limit.
#[derive(Clone, Debug)]
pub struct BaseAsLimit {
    pub system: InverseSystem,
    pub limit: LimitGroup,
    /// `BW → lim`, an isomorphism.
    pub identification: Homomorphism,
}

impl HybridWreath {
    pub fn new(theta: &Homomorphism, bound: usize) -> Result<Self> {
        let image = theta.image();
        let action = coset_action(&image);
        let tr = PermutationTransversal::minimal(&action, 0)?;
        Self::with_transversal(theta, tr.reps, bound)
    }

    /// Uses `reps[ν] = t_ν`; cosets are numbered as in [`coset_action`].
    pub fn with_transversal(theta: &Homomorphism, reps: Vec<usize>, bound: usize) -> Result<Self> {
        let g = theta.source().clone();
        let h = theta.target().clone();
        let image = theta.image();
        let action = coset_action(&image);
        let transversal = PermutationTransversal::new(&action, 0, reps)?;
        let n = action.len();
        let ker = g.order() / image.order();
        let size = (ker as u128)
            .checked_pow(n as u32)
            .and_then(|k| k.checked_mul(h.order() as u128))
            .unwrap_or(u128::MAX);
        if size > bound as u128 {
            return Err(Error::BoundExceeded { what: "hybrid wreath product".into(), size, bound: bound as u128 });
        }
        let (top_action, rho) = action.on_image()?;
        let shape = WreathShape::new(&g, &top_action);

        let mut fibres = vec![Vec::new(); h.order()];
        for x in 0..g.order() {
            fibres[theta.apply(x)].push(x as u32);
        }
        let t = &transversal.reps;
        // θ∘f must equal f_h from the standard embedding of H
        let f_h = |x: usize| -> Vec<usize> {
            (0..n).map(|v| h.mul(h.mul(t[v], x), h.inv(t[action.act(v, x)]))).collect()
        };

        let mut perms = Vec::with_capacity(size as usize);
        let mut elems = Vec::with_capacity(size as usize);
        let mut tops = Vec::with_capacity(size as usize);
        for x in 0..h.order() {
            let target = f_h(x);
            let sigma = rho.apply(x) as u32;
            let lists: Vec<&Vec<u32>> = target.iter().map(|&y| &fibres[y]).collect();
            let mut idx = vec![0usize; n];
            loop {
                let f: Vec<u32> = (0..n).map(|v| lists[v][idx[v]]).collect();
                let e = WreathElem { f, h: sigma };
                perms.push(shape.perm(&e));
                elems.push(e);
                tops.push(x);
                // odometer over the fibres
                let mut k = 0;
                while k < n {
                    idx[k] += 1;
                    if idx[k] < lists[k].len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == n {
                    break;
                }
            }
        }

        // lifts of H's generators and the kernel at each point generate
        let mut gens: Vec<Perm> = Vec::new();
        for s in h.generators() {
            let pos = tops.iter().position(|&x| x == s).expect("every top element has a lift");
            gens.push(perms[pos].clone());
        }
        let kerg = theta.kernel();
        for v in 0..n {
            for k in kerg.generators() {
                let mut f = vec![0u32; n];
                f[v] = k as u32;
                gens.push(shape.perm(&shape.base_elem(f)));
            }
        }
        let label = format!("HW({},{})", g.label(), h.label());
        let degree = shape.degree();
        let group = FiniteGroup::from_elements_with_gens(label, degree, perms.clone(), Some(gens))?;
        let mut coords = vec![shape.identity(); group.order()];
        let mut ptable = vec![0u32; group.order()];
        for ((p, e), x) in perms.iter().zip(elems).zip(tops) {
            let i = group.index_of(p).expect("carrier element");
            coords[i] = e;
            ptable[i] = x as u32;
        }
        let standard_map = Homomorphism::from_table(&group, &h, ptable)?;
        let base = standard_map.preimage(&image);
        let normal = image.is_normal();
        Ok(HybridWreath { theta: theta.clone(), image, action, transversal, rho, shape, group, coords, standard_map, base, normal })
    }

    pub fn g(&self) -> &Group {
        self.theta.source()
    }

    pub fn h(&self) -> &Group {
        self.theta.target()
    }

    pub fn points(&self) -> usize {
        self.action.len()
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// `(f, σ)` of a carrier element.
    pub fn coords(&self, x: usize) -> &WreathElem {
        &self.coords[x]
    }

    pub fn element(&self, a: &WreathElem) -> Option<usize> {
        if a.f.len() != self.points() || a.h as usize >= self.shape.top().order() {
            return None;
        }
        self.group.index_of(&self.shape.perm(a))
    }

    /// `ι(h)` in `θ(G) ≀_Ω ρ(H)`, base values as elements of `H`.
    pub fn iota(&self, x: usize) -> (Vec<usize>, usize) {
        let h = self.h();
        let t = &self.transversal.reps;
        let f = (0..self.points())
            .map(|v| h.mul(h.mul(t[v], x), h.inv(t[self.action.act(v, x)])))
            .collect();
        (f, self.rho.apply(x))
    }

    /// `ker p_θ`.
    pub fn kernel(&self) -> Subgroup {
        self.standard_map.kernel()
    }

    fn require_normal(&self) -> Result<()> {
        if !self.normal {
            return Err(Error::InvalidParameter("θ(G) is not normal in H".into()));
        }
        Ok(())
    }

    /// `p_ν : BW → G, (f, 1) ↦ f(ν)`, one per point.
    pub fn evaluation_maps(&self) -> Result<Vec<Homomorphism>> {
        self.require_normal()?;
        let bw = self.base.group();
        (0..self.points())
            .map(|v| {
                let table = (0..bw.order()).map(|k| self.coords[self.base.lift(k)].f[v]).collect();
                Homomorphism::from_table(&bw, self.g(), table)
            })
            .collect()
    }

    /// The star of `n` copies of `G` over `θ(G)` with maps
    /// `Inn(t_ν⁻¹)∘θ`, its limit, and `BW → lim`.
    pub fn base_as_limit(&self, bound: usize) -> Result<BaseAsLimit> {
        self.require_normal()?;
        let h = self.h();
        let img = self.image.group();
        let leaves = self
            .transversal
            .reps
            .iter()
            .map(|&t| {
                let table = (0..self.g().order())
                    .map(|x| {
                        let y = h.conj(h.inv(t), self.theta.apply(x));
                        self.image.local(y).expect("θ(G) is normal") as u32
                    })
                    .collect();
                Homomorphism::from_table(self.g(), &img, table)
            })
            .collect::<Result<Vec<_>>>()?;
        let system = InverseSystem::star(&img, leaves)?;
        let lim = limit(&system, bound)?;
        let bw = self.base.group();
        let mut table = Vec::with_capacity(bw.order());
        for k in 0..bw.order() {
            let x = self.base.lift(k);
            let mut t = vec![self.image.local(self.standard_map.apply(x)).expect("p_θ lands in θ(G)")];
            t.extend(self.coords[x].f.iter().map(|&c| c as usize));
            let y = lim
                .element_of(&t)
                .ok_or_else(|| Error::construction("base_as_limit", "base element is not a coherent tuple"))?;
            table.push(y as u32);
        }
        let identification = Homomorphism::from_table(&bw, &lim.group, table)?;
        if !identification.is_bijective() {
            return Err(Error::construction("base_as_limit", "BW and the limit differ in size"));
        }
        Ok(BaseAsLimit { system, limit: lim, identification })
    }
}

/// `x ∈ G^Ω` with `HW(ι) = HW(λ)^x`, where `ι` uses the transversal of
/// `first` and `λ` that of `second`; checked on every element.
pub fn transversal_independence(first: &HybridWreath, second: &HybridWreath) -> Result<Vec<u32>> {
    if first.theta != second.theta {
        return Err(Error::Mismatch("hybrids over different θ".into()));
    }
    let h = first.h();
    let t = &first.transversal.reps;
    let s = &second.transversal.reps;
    let mut x = Vec::with_capacity(t.len());
    for v in 0..t.len() {
        let want = h.mul(s[v], h.inv(t[v]));
        let lift = (0..first.g().order())
            .find(|&g| first.theta.apply(g) == want)
            .ok_or_else(|| Error::construction("transversal_independence", "s_ν t_ν⁻¹ is not in θ(G)"))?;
        x.push(lift as u32);
    }
    let sh = &first.shape;
    let xe = sh.base_elem(x.clone());
    let xinv = sh.inv(&xe);
    for k in 0..second.order() {
        let a = second.coords(k);
        // both hybrids enumerate ρ(H) from the same coset action
        let sigma = second.shape.top().element(a.h as usize);
        let a = WreathElem { f: a.f.clone(), h: sh.top().index_of(sigma).expect("same ρ(H)") as u32 };
        let c = sh.mul(&sh.mul(&xinv, &a), &xe);
        if first.element(&c).is_none() {
            return Err(Error::construction("transversal_independence", "conjugate leaves the carrier"));
        }
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::construct::{by_name, cyclic, direct_product, symmetric};
    use crate::group::iso::{all_homomorphisms, find_isomorphism};

    /// θ : F21 → S3 with image the 3-cycles.
    fn f21_theta() -> Homomorphism {
        let g = by_name("F21").unwrap();
        let h = symmetric(3).unwrap();
        all_homomorphisms(&g, &h, 2000)
            .unwrap()
            .into_iter()
            .find(|f| f.image().order() == 3)
            .unwrap()
    }

    #[test]
    fn f21_by_s3() {
        let theta = f21_theta();
        let hw = HybridWreath::new(&theta, 20000).unwrap();
        assert_eq!(hw.points(), 2);
        assert_eq!(hw.order(), 294);
        assert!(hw.normal);
        let k = hw.kernel();
        assert_eq!(k.order(), 49);
        let kg = k.group();
        assert!(kg.is_abelian() && (1..49).all(|x| kg.element_order(x) == 7));
        assert_eq!(hw.base.order(), 147);
        assert!(k.is_subgroup_of(&hw.base) && k.is_normal() && hw.base.is_normal());

        // BW = {(x, y) : θ(x) = θ(y)⁻¹}, by brute force over G²
        let g = hw.g().clone();
        let s3 = hw.h().clone();
        let mut brute = Vec::new();
        for x in 0..21 {
            for y in 0..21 {
                if theta.apply(x) == s3.inv(theta.apply(y)) {
                    brute.push((x as u32, y as u32));
                }
            }
        }
        let mut got: Vec<(u32, u32)> = hw.base.members().map(|b| (hw.coords(b).f[0], hw.coords(b).f[1])).collect();
        got.sort();
        assert_eq!(got, brute);
        assert!(hw.base.members().all(|b| hw.coords(b).h == 0));

        let evs = hw.evaluation_maps().unwrap();
        assert_eq!(evs.len(), 2);
        assert!(evs.iter().all(|p| p.is_surjective()));
        assert!(got.len() < g.order() * g.order());
    }

    #[test]
    fn iota_matches_the_worked_values() {
        let hw = HybridWreath::new(&f21_theta(), 20000).unwrap();
        let s3 = hw.h();
        let a = hw.image.members().find(|&x| x != 0).unwrap();
        let (f, sigma) = hw.iota(a);
        assert_eq!(sigma, 0);
        // with t = {1, b}: f_a = (a, b a b⁻¹) = (a, a⁻¹)
        assert_eq!(hw.transversal.reps[0], 0);
        let b = hw.transversal.reps[1];
        assert_eq!(s3.element_order(b), 2);
        assert_eq!(f, vec![a, s3.inv(a)]);
        let (fb, sb) = hw.iota(b);
        assert_eq!(fb, vec![0, 0]);
        assert_ne!(sb, 0);
    }

    #[test]
    fn base_is_a_limit() {
        let hw = HybridWreath::new(&f21_theta(), 20000).unwrap();
        let bl = hw.base_as_limit(20000).unwrap();
        assert_eq!(bl.limit.order(), 147);
        let evs = hw.evaluation_maps().unwrap();
        for (i, p) in evs.iter().enumerate() {
            let via = bl.identification.then(&bl.limit.projections[i + 1]).unwrap();
            assert_eq!(via.table(), p.table());
        }
        let ptheta = hw.standard_map.restrict_source(&hw.base).unwrap();
        let via = bl.identification.then(&bl.limit.projections[0]).unwrap();
        for k in 0..hw.base.order() {
            assert_eq!(hw.image.lift(via.apply(k)), ptheta.apply(k));
        }
    }

    #[test]
    fn theta_isomorphism_gives_g() {
        let s3 = symmetric(3).unwrap();
        let hw = HybridWreath::new(&Homomorphism::identity(&s3), 1000).unwrap();
        assert_eq!(hw.points(), 1);
        assert!(find_isomorphism(&hw.group, &s3, 2000).unwrap().is_some());
        let evs = hw.evaluation_maps().unwrap();
        assert!(evs[0].is_bijective());
        let bl = hw.base_as_limit(1000).unwrap();
        assert_eq!(bl.system.poset().len(), 2);
        let other = HybridWreath::with_transversal(&Homomorphism::identity(&s3), vec![0], 1000).unwrap();
        assert_eq!(transversal_independence(&hw, &other).unwrap(), vec![0]);
    }

    #[test]
    fn trivial_theta_gives_the_full_wreath() {
        let z2 = cyclic(2).unwrap();
        let z3 = cyclic(3).unwrap();
        let hw = HybridWreath::new(&Homomorphism::trivial(&z2, &z3), 1000).unwrap();
        assert_eq!(hw.points(), 3);
        assert_eq!(hw.order(), 8 * 3);
        let w = crate::wreath::wreath_product(&z2, &GroupAction::regular(&z3), 1000).unwrap();
        assert!(find_isomorphism(&hw.group, &w.group, 2000).unwrap().is_some());
    }

    #[test]
    fn z4_onto_a_factor_of_the_klein_group() {
        let z4 = cyclic(4).unwrap();
        let v4 = by_name("Z2xZ2").unwrap();
        let theta = all_homomorphisms(&z4, &v4, 2000)
            .unwrap()
            .into_iter()
            .find(|f| f.image().order() == 2)
            .unwrap();
        let hw = HybridWreath::new(&theta, 1000).unwrap();
        assert_eq!(hw.order(), 4 * 2 * 2);
        assert_eq!(hw.base.order(), 8);
        let evs = hw.evaluation_maps().unwrap();
        assert_eq!(evs.len(), 2);
        assert!(evs.iter().all(|p| p.is_surjective()));
    }

    #[test]
    fn non_normal_hybrid() {
        // θ(G) of order 2 in S3
        let z2 = cyclic(2).unwrap();
        let s3 = symmetric(3).unwrap();
        let theta = all_homomorphisms(&z2, &s3, 2000).unwrap().into_iter().find(|f| f.image().order() == 2).unwrap();
        let hw = HybridWreath::new(&theta, 1000).unwrap();
        assert!(!hw.normal);
        assert_eq!(hw.order(), 6);
        assert!(hw.evaluation_maps().is_err());
        assert!(hw.base_as_limit(1000).is_err());
    }

    #[test]
    fn extension_shapes() {
        // G = A._1B, H = B._2C with A = Z7, B = Z3, C = Z2, for both choices of G
        let s3 = symmetric(3).unwrap();
        for g in [by_name("F21").unwrap(), direct_product(&[cyclic(7).unwrap(), cyclic(3).unwrap()]).unwrap().group] {
            let theta = all_homomorphisms(&g, &s3, 2000).unwrap().into_iter().find(|f| f.image().order() == 3).unwrap();
            let hw = HybridWreath::new(&theta, 20000).unwrap();
            let k = hw.kernel();
            assert_eq!(k.order(), 49);
            assert_eq!(hw.base.order() / k.order(), 3);
            assert_eq!(hw.order() / hw.base.order(), 2);
            let bl = hw.base_as_limit(20000).unwrap();
            assert_eq!(bl.limit.order(), 147);
        }
    }

    #[test]
    fn other_transversal_is_conjugate() {
        let theta = f21_theta();
        let hw = HybridWreath::new(&theta, 20000).unwrap();
        let s3 = hw.h();
        let b = hw.transversal.reps[1];
        let a = hw.image.members().find(|&x| x != 0).unwrap();
        let ab = s3.mul(a, b);
        let other = HybridWreath::with_transversal(&theta, vec![0, ab], 20000).unwrap();
        let x = transversal_independence(&hw, &other).unwrap();
        assert!(x.iter().any(|&c| c != 0));
        assert_eq!(transversal_independence(&hw, &hw).unwrap(), vec![0, 0]);
    }

    #[test]
    fn order_formula() {
        for (gn, hn) in [("S3", "S3"), ("Z4", "D8"), ("Z6", "S3"), ("Q8", "Z2xZ2"), ("D8", "Z4")] {
            let g = by_name(gn).unwrap();
            let h = by_name(hn).unwrap();
            for theta in all_homomorphisms(&g, &h, 2000).unwrap() {
                let n = h.order() / theta.image().order();
                let expected = h.order() * theta.kernel().order().pow(n as u32);
                match HybridWreath::new(&theta, 5000) {
                    Ok(hw) => {
                        assert_eq!(hw.order(), expected, "{gn} {hn}");
                        assert!(hw.standard_map.is_surjective());
                        let kp = hw.kernel();
                        assert_eq!(kp.order(), theta.kernel().order().pow(n as u32));
                    }
                    Err(e) => assert!(e.is_undecided()),
                }
            }
        }
    }
}
