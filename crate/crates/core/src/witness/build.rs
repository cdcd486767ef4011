//! Good witness systems: the length-2 fibre product, composition with top
//! maps, the recursion step through hybrid wreath products, and the
//! recursive driver tying them together.

use std::collections::BTreeMap;

use super::certificate::{Provenance, WitnessCertificate};
use super::comp::CompData;
use super::extend::Section;
use super::sequence::GroupSequence;
use super::SubgroupIso;
use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::group::hom::Homomorphism;
use crate::group::subgroup::Subgroup;
use crate::group::Group;
use crate::hybrid::HybridWreath;
use crate::limit::{limit, InverseSystem, LimitGroup};

fn require(path: &str, ok: bool, what: &str, checks: &mut Vec<(String, bool)>) -> Result<()> {
    checks.push((what.to_string(), ok));
    if ok {
        Ok(())
    } else {
        Err(Error::construction(path, what))
    }
}

/// The trivial case `S_1 → 1`: `G = S_{1;1}` with `p_2 = σ_1`.
fn build_witness_length1(s: [&GroupSequence; 2], sigma1: &SubgroupIso) -> Result<WitnessCertificate> {
    let g = s[0].top().clone();
    let p0 = Homomorphism::identity(&g);
    let table = (0..g.order()).map(|x| sigma1.apply(x) as u32).collect();
    let p1 = Homomorphism::from_table(&g, s[1].top(), table)?;
    let kernel_iso = SubgroupIso::from_parent_fn(&p0.kernel(), &p1.kernel(), |x| x)?;
    let inv = sigma1.inverse()?;
    let n0 = Subgroup::whole(s[0].top());
    let n1 = Subgroup::whole(s[1].top());
    let good_at = [
        Section::from_parent_fn(&n0, &g, |x| x)?,
        Section::from_parent_fn(&n1, &g, |x| inv.apply(x))?,
    ];
    let provenance = Provenance::leaf("length1", [("witness", g.order())], vec![]);
    Ok(WitnessCertificate { witness: g, p: [p0, p1], kernel_iso, good_at, provenance })
}

/// `G = lim{S_{2;1} → S_{1;2} ← S_{2;2}}` through `σ_1∘π_{2;1}` and
/// `π_{2;2}`, good at `(ker π_{2;1}, ker π_{2;2})`.
pub fn build_witness_length2(
    s: [&GroupSequence; 2],
    sigma1: &SubgroupIso,
    sigma2: &SubgroupIso,
    bounds: &Bounds,
) -> Result<WitnessCertificate> {
    const PATH: &str = "length2";
    if s[0].len() != 2 || s[1].len() != 2 {
        return Err(Error::InvalidParameter("length-2 sequences expected".into()));
    }
    let mut checks = Vec::new();
    let base = s[1].group(1);
    let left = {
        let table = (0..s[0].top().order()).map(|x| sigma1.apply(s[0].pi(2).apply(x)) as u32).collect();
        Homomorphism::from_table(s[0].top(), base, table)?
    };
    let sys = InverseSystem::star(base, vec![left, s[1].pi(2).clone()])?;
    let lim = limit(&sys, bounds.enumeration)?;
    let g = lim.group.clone();
    let p = [lim.projections[1].clone(), lim.projections[2].clone()];
    require(PATH, p[0].is_surjective() && p[1].is_surjective(), "projections are surjective", &mut checks)?;
    let kp = [p[0].kernel(), p[1].kernel()];
    let sig2_inv = sigma2.inverse()?;
    let kernel_iso = SubgroupIso::from_parent_fn(&kp[0], &kp[1], |x| {
        let t = lim.tuple(x);
        lim.element_of(&[0, sig2_inv.apply(t[2] as usize), 0]).expect("coherent kernel tuple")
    })?;
    checks.push(("kernel isomorphism bijective".into(), true));
    let n = [s[0].kernel(2), s[1].kernel(2)];
    let good_at = [
        Section::from_parent_fn(&n[0], &g, |m| lim.element_of(&[0, m, 0]).expect("coherent"))?,
        Section::from_parent_fn(&n[1], &g, |m| lim.element_of(&[0, 0, m]).expect("coherent"))?,
    ];
    for d in 0..2 {
        require(PATH, good_at[d].defect(&p[d]).is_none(), "projection is trivially extendable at the kernel", &mut checks)?;
    }
    let provenance = Provenance::leaf(
        "length2",
        [
            ("top1", s[0].top().order()),
            ("top2", s[1].top().order()),
            ("base", base.order()),
            ("witness", g.order()),
        ],
        checks,
    );
    Ok(WitnessCertificate { witness: g, p, kernel_iso, good_at, provenance })
}

/// From a certificate for `(S_{3;1}, S_{3;2})` good at sets containing
/// `ker π_{3;δ}` and `π_{3;δ}⁻¹(N'_δ)`, builds one for the images under
/// `π_{3;δ}`, good at `N'_δ` (the domains of `pi_sections`).
pub fn compose_witness(
    cert: &WitnessCertificate,
    pi: [&Homomorphism; 2],
    sigma: &SubgroupIso,
    pi_sections: [&Section; 2],
) -> Result<WitnessCertificate> {
    const PATH: &str = "compose";
    let mut checks = Vec::new();
    let g = &cert.witness;
    for d in 0..2 {
        if !pi[d].source().same(cert.p[d].target()) {
            return Err(Error::Mismatch("π must start at the certificate's target".into()));
        }
        let n = &cert.good_at[d].domain;
        let kpi = pi[d].kernel();
        require(PATH, kpi.is_subgroup_of(n), "ker π lies in the good subgroup", &mut checks)?;
        let sec = pi_sections[d];
        require(
            PATH,
            sec.domain.members().all(|m| n.contains(sec.apply(m))),
            "section of π lands in the good subgroup",
            &mut checks,
        )?;
        require(PATH, sec.defect(pi[d]).is_none(), "π is trivially extendable at N'", &mut checks)?;
        require(PATH, sigma.source == kpi || d == 1, "σ starts at ker π_1", &mut checks)?;
        require(PATH, sigma.target == kpi || d == 0, "σ ends at ker π_2", &mut checks)?;
    }
    let q = [cert.p[0].then(pi[0])?, cert.p[1].then(pi[1])?];
    let kq = [q[0].kernel(), q[1].kernel()];
    let sp = [&cert.good_at[0], &cert.good_at[1]];
    // ker q = s_p(ker π) × ker p, checked as an internal direct product
    for d in 0..2 {
        let kp = cert.p[d].kernel();
        let img: Vec<usize> = pi[d].kernel().members().map(|y| sp[d].apply(y)).collect();
        let lifted = Subgroup::generated(g, &img);
        let ok = lifted.intersection(&kp).is_trivial()
            && lifted.order() * kp.order() == kq[d].order()
            && lifted.members().all(|a| kp.generators().iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
        require(PATH, ok, "ker q splits as s_p(ker π) × ker p", &mut checks)?;
    }
    let kappa = &cert.kernel_iso;
    let kernel_iso = SubgroupIso::from_parent_fn(&kq[0], &kq[1], |x| {
        let y = cert.p[0].apply(x);
        let c = sp[0].apply(y);
        let k = g.mul(g.inv(c), x);
        g.mul(sp[1].apply(sigma.apply(y)), kappa.apply(k))
    })?;
    checks.push(("composite kernel map bijective".into(), true));
    let good_at = [
        Section::from_parent_fn(&pi_sections[0].domain, g, |n| sp[0].apply(pi_sections[0].apply(n)))?,
        Section::from_parent_fn(&pi_sections[1].domain, g, |n| sp[1].apply(pi_sections[1].apply(n)))?,
    ];
    for d in 0..2 {
        require(PATH, good_at[d].defect(&q[d]).is_none(), "composed section certifies goodness", &mut checks)?;
    }
    let mut provenance = Provenance::leaf(
        "compose",
        [
            ("witness", g.order()),
            ("target1", q[0].target().order()),
            ("target2", q[1].target().order()),
            ("kernel", kq[0].order()),
        ],
        checks,
    );
    provenance.children.push(cert.provenance.clone());
    Ok(WitnessCertificate { witness: g.clone(), p: q, kernel_iso, good_at, provenance })
}

/// Objects built at one recursion step for sequences of length `ℓ ≥ 3`.
/// Arrays are indexed by side.
#[derive(Clone, Debug)]
pub struct RecursionStep {
    pub level: usize,
    /// `G_δ`: `n` twisted copies of `S_{ℓ;δ}` over `S_{ℓ−1;δ}`. Node 0 is
    /// the base, node `k + 1` the copy for point `k` of `H_δ̄`.
    pub g: [LimitGroup; 2],
    /// `H_δ = HW(T_δ̄, S_{ℓ−1;δ}, θ_δ)`.
    pub h: [HybridWreath; 2],
    pub theta: [Homomorphism; 2],
    /// `ρ_δ : G_δ → S_{ℓ;δ}`, the first copy.
    pub rho: [Homomorphism; 2],
    /// `φ_δ = p_θ : H_δ → S_{ℓ−1;δ}`.
    pub phi: [Homomorphism; 2],
    /// `η_δ : BW(H_δ) → G_δ̄`, injective onto `ker(π_{ℓ−1}π_ℓρ_δ̄)`.
    pub eta: [Homomorphism; 2],
    /// `S_{ℓ+1;δ} = lim{G_δ → S_{ℓ−1;δ} ← H_δ}`, nodes (base, G, H).
    pub next: [LimitGroup; 2],
    /// `π_{ℓ+1;δ} = ρ_δ ∘ proj_G`.
    pub pi_next: [Homomorphism; 2],
    /// Sections of `ρ_δ` over `ker π_{ℓ;δ}`.
    pub section_rho: [Section; 2],
    /// Sections of `π_{ℓ+1;δ}` over `ker π_{ℓ;δ}`.
    pub section_next: [Section; 2],
    /// `ker π_{ℓ+1;1} → ker π_{ℓ+1;2}`.
    pub lambda: SubgroupIso,
    /// Top kernel isomorphism of `Contra²(S_{ℓ+1;δ})`.
    pub kappa: SubgroupIso,
    pub contracted: [GroupSequence; 2],
    pub checks: Vec<(String, bool)>,
}

/// One step of the recursion for `(S_1, S_2)` of length `ℓ ≥ 3` with
/// Comp data.
pub fn build_recursion_step(
    s: [&GroupSequence; 2],
    comp: &CompData,
    bounds: &Bounds,
) -> Result<RecursionStep> {
    let l = s[0].len();
    let path = format!("recursion step at length {l}");
    let path = path.as_str();
    if l < 3 || s[1].len() != l || comp.len() != l {
        return Err(Error::InvalidParameter("recursion step needs length ≥ 3 and matching Comp data".into()));
    }
    let bound = bounds.enumeration;
    let mut checks = Vec::new();
    let sig_top = comp.sigma(l);
    let sig_top_inv = sig_top.inverse()?;
    let sig_mid = comp.sigma(l - 1);
    let sig_mid_inv = sig_mid.inverse()?;
    let lv = comp.level(l - 1);
    // K_{ℓ−1;1−d} → K_{ℓ−1;d}
    let to_side = |d: usize, x: usize| if d == 0 { sig_mid_inv.apply(x) } else { sig_mid.apply(x) };

    let kmid = [s[0].kernel(l - 1), s[1].kernel(l - 1)];
    let ktop = [s[0].kernel(l), s[1].kernel(l)];
    let t = [s[0].down(l - 2, l).kernel(), s[1].down(l - 2, l).kernel()];

    let mut theta = Vec::new();
    let mut h = Vec::new();
    for d in 0..2 {
        let e = 1 - d;
        let tg = t[e].group();
        let table = (0..tg.order()).map(|k| to_side(d, s[e].pi(l).apply(t[e].lift(k))) as u32).collect();
        let th = Homomorphism::from_table(&tg, s[d].group(l - 1), table)?;
        let hw = HybridWreath::new(&th, bound)?;
        require(path, hw.image == kmid[d], "θ(T) is the middle kernel", &mut checks)?;
        require(path, hw.points() == s[d].group(l - 2).order(), "one point per element of S_{ℓ−2}", &mut checks)?;
        theta.push(th);
        h.push(hw);
    }
    // x_k for the points of H_d, in S_{ℓ−2;d}
    let xs: Vec<Vec<usize>> = (0..2)
        .map(|d| h[d].transversal.reps.iter().map(|&r| s[d].pi(l - 1).apply(r)).collect())
        .collect();
    for d in 0..2 {
        let ok = h[d].transversal.reps.iter().zip(&xs[d]).all(|(&r, &x)| lv.tau[d][x] == r);
        require(path, ok, "hybrid transversal is τ", &mut checks)?;
    }

    let mut g = Vec::new();
    for e in 0..2 {
        let d = 1 - e;
        let leaves = xs[d]
            .iter()
            .map(|&x| s[e].pi(l).then(&lv.alpha[e][x]))
            .collect::<Result<Vec<_>>>()?;
        let sys = InverseSystem::star(s[e].group(l - 1), leaves)?;
        g.push(limit(&sys, bound)?);
    }
    let rho: Vec<Homomorphism> = g.iter().map(|gl| gl.projections[1].clone()).collect();
    let phi: Vec<Homomorphism> = h.iter().map(|hw| hw.standard_map.clone()).collect();

    let mut eta = Vec::new();
    for d in 0..2 {
        let e = 1 - d;
        let bw = h[d].base.group();
        let mut table = Vec::with_capacity(bw.order());
        for b in 0..bw.order() {
            let x = h[d].base.lift(b);
            let mut tuple = vec![to_side(e, phi[d].apply(x))];
            tuple.extend(h[d].coords(x).f.iter().map(|&c| t[e].lift(c as usize)));
            let y = g[e]
                .element_of(&tuple)
                .ok_or_else(|| Error::construction(path, "η image is not a coherent tuple"))?;
            table.push(y as u32);
        }
        let et = Homomorphism::from_table(&bw, &g[e].group, table)?;
        let target_size = (0..g[e].order()).filter(|&y| kmid[e].contains(g[e].tuple(y)[0] as usize)).count();
        require(path, et.is_injective() && bw.order() == target_size, "η is bijective onto ker(π_{ℓ−1}π_ℓρ)", &mut checks)?;
        let square = (0..bw.order()).all(|b| {
            let lhs = s[e].pi(l).apply(rho[e].apply(et.apply(b)));
            lhs == to_side(e, phi[d].apply(h[d].base.lift(b)))
        });
        require(path, square, "π_ℓ ρ_δ̄ η_δ = σ^{±} φ_δ on BW", &mut checks)?;
        eta.push(et);
    }
    // η_d⁻¹ on its image in G_{1−d}
    let eta_inv: Vec<Vec<u32>> = (0..2)
        .map(|d| {
            let e = 1 - d;
            let mut inv = vec![u32::MAX; g[e].order()];
            for (b, &y) in eta[d].table().iter().enumerate() {
                inv[y as usize] = h[d].base.lift(b) as u32;
            }
            inv
        })
        .collect();

    let mut next = Vec::new();
    for d in 0..2 {
        let over = rho[d].then(s[d].pi(l))?;
        let sys = InverseSystem::star(s[d].group(l - 1), vec![over, phi[d].clone()])?;
        next.push(limit(&sys, bound)?);
    }
    let pi_next: Vec<Homomorphism> =
        (0..2).map(|d| next[d].projections[1].then(&rho[d])).collect::<Result<_>>()?;
    for d in 0..2 {
        require(path, pi_next[d].is_surjective(), "π_{ℓ+1} is surjective", &mut checks)?;
    }

    let n = g[0].tuple(0).len();
    let section_rho: Vec<Section> = (0..2)
        .map(|d| {
            let n_d = g[d].tuple(0).len();
            Section::from_parent_fn(&ktop[d], &g[d].group, |m| {
                let mut tuple = vec![0usize; n_d];
                tuple[1] = m;
                g[d].element_of(&tuple).expect("coherent first-copy tuple")
            })
        })
        .collect::<Result<_>>()?;
    debug_assert_eq!(n, g[1].tuple(0).len());
    for d in 0..2 {
        require(path, section_rho[d].defect(&rho[d]).is_none(), "ρ is trivially extendable at ker π_ℓ", &mut checks)?;
    }
    let section_next: Vec<Section> = (0..2)
        .map(|d| {
            Section::from_parent_fn(&ktop[d], &next[d].group, |m| {
                next[d].element_of(&[0, section_rho[d].apply(m), 0]).expect("coherent section tuple")
            })
        })
        .collect::<Result<_>>()?;
    for d in 0..2 {
        require(path, section_next[d].defect(&pi_next[d]).is_none(), "π_{ℓ+1} is trivially extendable at ker π_ℓ", &mut checks)?;
    }

    let kn = [pi_next[0].kernel(), pi_next[1].kernel()];
    for d in 0..2 {
        let ok = kn[d].order() == rho[d].kernel().order() * phi[d].kernel().order();
        require(path, ok, "ker π_{ℓ+1} = ker ρ × ker φ", &mut checks)?;
    }
    let g1 = g[1].group.clone();
    let g0 = g[0].group.clone();
    let lambda = SubgroupIso::from_parent_fn(&kn[0], &kn[1], |x| {
        let tu = next[0].tuple(x);
        let (gx, hx) = (tu[1] as usize, tu[2] as usize);
        let e1 = eta[0].apply(h[0].base.local(hx).expect("ker φ lies in BW"));
        let a = rho[1].apply(e1);
        let k2 = g1.mul(g1.inv(section_rho[1].apply(a)), e1);
        let gp = g0.mul(section_rho[0].apply(sig_top_inv.apply(a)), gx);
        let hp = eta_inv[1][gp] as usize;
        next[1].element_of(&[0, k2, hp]).expect("λ lands in ker π_{ℓ+1}")
    })?;
    checks.push(("λ is a bijective homomorphism".into(), true));
    let chain = lambda_chain_agrees(&g, &h, &rho, &phi, &eta, &section_rho, sig_top, &kn, &next, &lambda)?;
    require(path, chain, "explicit kernel chain composes to λ", &mut checks)?;

    let tops: Vec<Homomorphism> =
        (0..2).map(|d| pi_next[d].then(&s[d].down(l - 2, l))).collect::<Result<_>>()?;
    let nk = [tops[0].kernel(), tops[1].kernel()];
    let kappa = SubgroupIso::from_parent_fn(&nk[0], &nk[1], |x| {
        let tu = next[0].tuple(x);
        let (b, gx, hx) = (tu[0] as usize, tu[1] as usize, tu[2] as usize);
        let g2 = eta[0].apply(h[0].base.local(hx).expect("h lies in BW"));
        let h2 = eta_inv[1][gx] as usize;
        next[1].element_of(&[sig_mid.apply(b), g2, h2]).expect("κ lands in S_{ℓ+1;2}")
    })?;
    checks.push(("top kernel map of Contra² is a bijective homomorphism".into(), true));

    let contracted: Vec<GroupSequence> = (0..2)
        .map(|d| {
            let mut groups: Vec<Group> = (0..=l - 2).map(|i| s[d].group(i).clone()).collect();
            groups.push(next[d].group.clone());
            let mut maps: Vec<Homomorphism> = (1..=l - 2).map(|i| s[d].pi(i).clone()).collect();
            maps.push(tops[d].clone());
            GroupSequence::new(groups, maps)
        })
        .collect::<Result<_>>()?;

    Ok(RecursionStep {
        level: l,
        g: two(g),
        h: two(h),
        theta: two(theta),
        rho: two(rho),
        phi: two(phi),
        eta: two(eta),
        next: two(next),
        pi_next: two(pi_next),
        section_rho: two(section_rho),
        section_next: two(section_next),
        lambda,
        kappa,
        contracted: two(contracted),
        checks,
    })
}

fn two<T>(v: Vec<T>) -> [T; 2] {
    v.try_into().ok().expect("two sides")
}

/// Rebuilds `λ` link by link: `ker φ_1 →η_1 ker(π_ℓρ_2) = s(K_ℓ) × ker ρ_2`,
/// `σ_ℓ⁻¹` on the `K_ℓ` part, then `s(K_ℓ) × ker ρ_1 →η_2⁻¹ ker φ_2`.
/// Each link is checked to be a bijective homomorphism on its own.
#[allow(clippy::too_many_arguments)]
fn lambda_chain_agrees(
    g: &[LimitGroup],
    h: &[HybridWreath],
    rho: &[Homomorphism],
    phi: &[Homomorphism],
    eta: &[Homomorphism],
    section_rho: &[Section],
    sig_top: &SubgroupIso,
    kn: &[Subgroup; 2],
    next: &[LimitGroup],
    lambda: &SubgroupIso,
) -> Result<bool> {
    // ker(π_ℓ ρ_e) as the subgroup of base-trivial tuples
    let base_kernel = |e: usize| g[e].projections[0].kernel();
    let kphi = [phi[0].kernel(), phi[1].kernel()];
    // link 1: η_1 on ker φ_1
    let eta_on = |d: usize| {
        let e = 1 - d;
        SubgroupIso::from_parent_fn(&kphi[d], &base_kernel(e), |x| {
            eta[d].apply(h[d].base.local(x).expect("ker φ lies in BW"))
        })
    };
    let link1 = eta_on(0)?;
    // link 3 is the inverse of η_2 on ker φ_2
    let link3 = eta_on(1)?.inverse()?;
    // link 2: split ker(π_ℓ ρ_2) into the first copy and ker ρ_2; the first
    // copy crosses over with σ_ℓ⁻¹ while ker ρ_2 stays on side 2
    let sig_inv = sig_top.inverse()?;
    let (g0, g1) = (&g[0].group, &g[1].group);
    let split = |y: usize| {
        let a = rho[1].apply(y);
        (a, g1.mul(g1.inv(section_rho[1].apply(a)), y))
    };
    for x in kn[0].members() {
        let tu = next[0].tuple(x);
        let (gx, hx) = (tu[1] as usize, tu[2] as usize);
        let y = link1.apply(hx);
        let (a, k2) = split(y);
        let moved = g0.mul(section_rho[0].apply(sig_inv.apply(a)), gx);
        let h2 = link3.apply(moved);
        let Some(z) = next[1].element_of(&[0, k2, h2]) else {
            return Ok(false);
        };
        if lambda.apply(x) != z {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Recursively builds a good witness for `(S_1, S_2)` with Comp data:
/// length 1 and 2 directly, longer sequences through one recursion step,
/// a recursive call on `Contra²`, and a final composition.
pub fn build_good_witness(
    s: [&GroupSequence; 2],
    comp: &CompData,
    bounds: &Bounds,
) -> Result<WitnessCertificate> {
    let l = s[0].len();
    match l {
        0 => Err(Error::InvalidParameter("length-0 sequences have nothing to witness".into())),
        1 => build_witness_length1(s, comp.sigma(1)),
        2 => build_witness_length2(s, comp.sigma(1), comp.sigma(2), bounds),
        _ => {
            let step = build_recursion_step(s, comp, bounds)?;
            let inner_comp = comp.truncated_with_top(l - 2, step.kappa.clone());
            let inner = build_good_witness([&step.contracted[0], &step.contracted[1]], &inner_comp, bounds)?;
            let mut cert = compose_witness(
                &inner,
                [&step.pi_next[0], &step.pi_next[1]],
                &step.lambda,
                [&step.section_next[0], &step.section_next[1]],
            )?;
            let node = step.provenance();
            cert.provenance.children.push(node);
            Ok(cert)
        }
    }
}

impl RecursionStep {
    pub fn provenance(&self) -> Provenance {
        let mut orders = BTreeMap::new();
        for d in 0..2 {
            orders.insert(format!("G{}", d + 1), self.g[d].order());
            orders.insert(format!("H{}", d + 1), self.h[d].order());
            orders.insert(format!("BW{}", d + 1), self.h[d].base.order());
            orders.insert(format!("S_next{}", d + 1), self.next[d].order());
        }
        orders.insert("ker_pi_next".into(), self.lambda.source.order());
        Provenance {
            step: format!("recursion step (length {})", self.level),
            orders,
            checks: self.checks.clone(),
            children: Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::construct::by_name;
    use crate::witness::certificate::verify_witness;
    use crate::witness::comp::comp_membership;
    use crate::witness::series::{central_series, square_free_series, witness_nilpotent, witness_square_free};
    use crate::witness::sequence::series_to_sequence;

    fn bounds() -> Bounds {
        Bounds::default()
    }

    #[test]
    fn z4_and_v4_give_order_eight() {
        let (a, b) = (by_name("Z4").unwrap(), by_name("Z2xZ2").unwrap());
        let cert = witness_nilpotent(&a, &b, &bounds()).unwrap();
        assert_eq!(cert.order(), 8);
        assert_eq!(cert.kernel_order(), 2);
        let r = verify_witness(&cert, [&a, &b], &bounds());
        assert!(r.complete(), "{:?}", r.failures());
    }

    #[test]
    fn z6_and_s3_give_order_eighteen() {
        let (a, b) = (by_name("Z6").unwrap(), by_name("S3").unwrap());
        let cert = witness_square_free(&a, &b, &bounds()).unwrap();
        assert_eq!(cert.order(), 18);
        let r = verify_witness(&cert, [&a, &b], &bounds());
        assert!(r.complete(), "{:?}", r.failures());
    }

    #[test]
    fn d8_q8_recursion_step_orders() {
        let (a, b) = (by_name("D8").unwrap(), by_name("Q8").unwrap());
        let s = [
            series_to_sequence(&a, &central_series(&a).unwrap(), 20_000).unwrap(),
            series_to_sequence(&b, &central_series(&b).unwrap(), 20_000).unwrap(),
        ];
        let comp = comp_membership(&[&s[0], &s[1]], &bounds()).unwrap().unwrap();
        let step = build_recursion_step([&s[0], &s[1]], &comp, &bounds()).unwrap();
        for d in 0..2 {
            assert_eq!(step.g[d].order(), 16);
            assert_eq!(step.h[d].order(), 16);
            assert_eq!(step.next[d].order(), 64);
        }
        assert!(step.checks.iter().all(|(_, ok)| *ok));
        assert_eq!(step.contracted[0].len(), 2);
    }

    #[test]
    fn d8_q8_full_witness() {
        let (a, b) = (by_name("D8").unwrap(), by_name("Q8").unwrap());
        let cert = witness_nilpotent(&a, &b, &bounds()).unwrap();
        assert_eq!(cert.order(), 2048);
        assert_eq!(cert.kernel_order(), 256);
        let r = verify_witness(&cert, [&a, &b], &bounds());
        assert!(r.complete(), "{:?}", r.checks);
    }

    #[test]
    fn square_free_order_42_step() {
        let (a, b) = (by_name("F21xZ2").unwrap(), by_name("Z7xS3").unwrap());
        let s = [
            series_to_sequence(&a, &square_free_series(&a).unwrap(), 20_000).unwrap(),
            series_to_sequence(&b, &square_free_series(&b).unwrap(), 20_000).unwrap(),
        ];
        let comp = comp_membership(&[&s[0], &s[1]], &bounds()).unwrap().unwrap();
        let step = build_recursion_step([&s[0], &s[1]], &comp, &bounds()).unwrap();
        assert_eq!(step.g[0].order(), 294);
        assert_eq!(step.h[0].order(), 294);
        assert_eq!(step.next[0].order(), 14_406);
    }

    #[test]
    fn compose_rejects_a_section_outside_the_good_subgroup() {
        let (a, b) = (by_name("Z4").unwrap(), by_name("Z2xZ2").unwrap());
        let cert = witness_nilpotent(&a, &b, &bounds()).unwrap();
        // π = identity on both sides with trivial kernels; sections over the
        // whole group leave the good subgroup of order 2
        let ids = [Homomorphism::identity(&a), Homomorphism::identity(&b)];
        let one = SubgroupIso::from_parent_fn(&ids[0].kernel(), &ids[1].kernel(), |x| x).unwrap();
        let secs = [
            Section::from_parent_fn(&Subgroup::whole(&a), &a, |x| x).unwrap(),
            Section::from_parent_fn(&Subgroup::whole(&b), &b, |x| x).unwrap(),
        ];
        let err = compose_witness(&cert, [&ids[0], &ids[1]], &one, [&secs[0], &secs[1]]).unwrap_err();
        assert!(matches!(err, Error::Construction { .. }));
    }
}
