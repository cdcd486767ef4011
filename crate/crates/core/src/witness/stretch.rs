//! Stretch mode for length-3 sequences whose final witness is too large to
//! enumerate. The recursion step is built and checked in full; the last
//! fibre product `S_{4;1} ×_{S_1} S_{4;2}` is kept as a permutation group
//! given by generators, its order comes from a stabilizer chain, and the
//! kernel map is checked on generators and random samples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::build::{build_recursion_step, RecursionStep};
use super::certificate::{CheckStatus, GroupJson, Provenance, VerificationReport};
use super::comp::{comp_membership, CompData};
use super::sequence::GroupSequence;
use super::series::{sequences_for, square_free_series};
use super::SubgroupIso;
use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::group::hom::Homomorphism;
use crate::group::schreier::StabChain;
use crate::group::subgroup::Subgroup;
use crate::group::{Group, Perm};

/// Random samples for every sampled check.
pub const STRETCH_SAMPLES: usize = 10_000;

#[derive(Clone, Debug)]
pub struct StretchWitness {
    pub step: RecursionStep,
    /// `S_{1;1}`, `S_{1;2}` and `σ_1`.
    pub sigma1: SubgroupIso,
    /// `S_{4;δ} → S_1`, the top maps of the contracted sequences.
    pub tops: [Homomorphism; 2],
    /// Generators of `G ≤ S_{4;1} × S_{4;2}` on the disjoint union of the
    /// two point sets.
    pub generators: Vec<Perm>,
    pub degree: usize,
    pub chain: StabChain,
    pub provenance: Provenance,
}

impl StretchWitness {
    fn left(&self) -> &Group {
        &self.step.next[0].group
    }

    fn right(&self) -> &Group {
        &self.step.next[1].group
    }

    pub fn order(&self) -> u128 {
        self.chain.order()
    }

    /// `|S_{4;1}|·|S_{4;2}|/|S_1|`, the order of the full fibre product.
    pub fn expected_order(&self) -> u128 {
        let (a, b) = (self.left().order() as u128, self.right().order() as u128);
        a * b / self.sigma1.target.order() as u128
    }

    pub fn join(&self, u: usize, v: usize) -> Perm {
        Perm::disjoint_union([self.left().element(u), self.right().element(v)])
    }

    /// The two coordinates of an element of the ambient product.
    pub fn split(&self, x: &Perm) -> Option<(usize, usize)> {
        let d0 = self.left().degree();
        let im = x.images();
        let a = Perm::from_images(im[..d0].to_vec()).ok()?;
        let b = Perm::from_images(im[d0..].iter().map(|&y| y - d0 as u32).collect()).ok()?;
        Some((self.left().index_of(&a)?, self.right().index_of(&b)?))
    }

    fn in_fibre(&self, u: usize, v: usize) -> bool {
        self.sigma1.apply(self.tops[0].apply(u)) == self.tops[1].apply(v)
    }

    /// `p_δ = π_{4;δ} ∘ proj_δ`, landing in `S_{3;δ}`.
    pub fn project(&self, d: usize, x: &Perm) -> Option<usize> {
        let (u, v) = self.split(x)?;
        Some(self.step.pi_next[d].apply(if d == 0 { u } else { v }))
    }

    /// The kernel map `ker p_1 → ker p_2`, `(u, v) ↦ (κ⁻¹(v), λ(u))`, with
    /// `κ` the top kernel map of the contracted sequences.
    pub fn kernel_map(&self, kappa_inv: &SubgroupIso, u: usize, v: usize) -> (usize, usize) {
        (kappa_inv.apply(v), self.step.lambda.apply(u))
    }
}

/// Builds the stretch witness for length-3 sequences with Comp data.
pub fn build_stretch_witness(s: [&GroupSequence; 2], comp: &CompData, bounds: &Bounds) -> Result<StretchWitness> {
    if s[0].len() != 3 {
        return Err(Error::InvalidParameter("stretch mode covers length-3 sequences".into()));
    }
    let step = build_recursion_step(s, comp, bounds)?;
    let sigma1 = comp.sigma(1).clone();
    let tops = [step.contracted[0].pi(2).clone(), step.contracted[1].pi(2).clone()];
    let (left, right) = (&step.next[0].group, &step.next[1].group);
    // least lift of every element of S_{1;2} to S_{4;2}
    let mut lift = vec![usize::MAX; tops[1].target().order()];
    for v in 0..right.order() {
        let b = tops[1].apply(v);
        if lift[b] == usize::MAX {
            lift[b] = v;
        }
    }
    let degree = left.degree() + right.degree();
    let mut generators = Vec::new();
    for u in left.generators() {
        let v = lift[sigma1.apply(tops[0].apply(u))];
        generators.push(Perm::disjoint_union([left.element(u), right.element(v)]));
    }
    for k in tops[1].kernel().generators() {
        generators.push(Perm::disjoint_union([left.element(0), right.element(k)]));
    }
    let chain = StabChain::new(degree, &generators);
    let mut provenance = Provenance::leaf(
        "stretch fibre product",
        [("S4_1", left.order()), ("S4_2", right.order()), ("generators", generators.len())],
        vec![],
    );
    provenance.orders.insert("witness (stabilizer chain)".into(), chain.order().min(usize::MAX as u128) as usize);
    provenance.children.push(step.provenance());
    Ok(StretchWitness { step, sigma1, tops, generators, degree, chain, provenance })
}

/// Stretch witness for two groups of equal square-free order whose series
/// has length 3.
pub fn stretch_square_free(l1: &Group, l2: &Group, bounds: &Bounds) -> Result<StretchWitness> {
    if l1.order() != l2.order() {
        return Err(Error::Refuted(format!("orders {} and {} differ", l1.order(), l2.order())));
    }
    let chains = [square_free_series(l1)?, square_free_series(l2)?];
    let s = sequences_for([l1, l2], [&chains[0], &chains[1]], bounds.enumeration)?;
    let comp = comp_membership(&[&s[0], &s[1]], bounds)?
        .ok_or_else(|| Error::Refuted("the sequences fail the Comp condition".into()))?;
    build_stretch_witness([&s[0], &s[1]], &comp, bounds)
}

/// Checks a stretch witness: order from the stabilizer chain, generators in
/// the fibre product, surjectivity on generators, homomorphism property and
/// the kernel map on all generator pairs plus `samples` random pairs, and
/// the sections on all of their (small) domains.
pub fn verify_stretch(w: &StretchWitness, l: [&Group; 2], samples: usize, seed: u64) -> VerificationReport {
    let mut r = VerificationReport::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let push = |r: &mut VerificationReport, name: &str, ok: bool, why: String| {
        let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail(why) };
        r.checks.push(super::certificate::Check { name: name.into(), status });
    };
    let order = w.order();
    push(&mut r, "stabilizer-chain order equals the fibre product order", order == w.expected_order(), format!("{order} vs {}", w.expected_order()));
    let split: Vec<Option<(usize, usize)>> = w.generators.iter().map(|g| w.split(g)).collect();
    let fibre = split.iter().all(|c| matches!(c, Some((u, v)) if w.in_fibre(*u, *v)));
    push(&mut r, "generators lie in the fibre product", fibre, "a generator leaves the fibre product".into());
    if !fibre {
        return r;
    }
    for d in 0..2 {
        let target = w.step.pi_next[d].target();
        let same = target.same(l[d]) || target.order() == l[d].order();
        let imgs: Vec<usize> = w.generators.iter().map(|g| w.project(d, g).unwrap()).collect();
        let onto = Subgroup::generated(target, &imgs).order() == l[d].order();
        push(&mut r, &format!("p{} is onto L{}", d + 1, d + 1), same && onto, "generator images do not generate".into());
        let mut hom = true;
        for _ in 0..samples {
            let (x, y) = (w.chain.random_element(&mut rng), w.chain.random_element(&mut rng));
            let (px, py, pxy) = (w.project(d, &x), w.project(d, &y), w.project(d, &x.mul(&y)));
            match (px, py, pxy) {
                (Some(a), Some(b), Some(c)) if target.mul(a, b) == c => {}
                _ => {
                    hom = false;
                    break;
                }
            }
        }
        push(&mut r, &format!("p{} is multiplicative on {samples} random pairs", d + 1), hom, "product mismatch".into());
    }
    // kernel bookkeeping: ker p_1 = ker π_{4;1} × ker(S_{4;2} → S_1)
    let ka = w.step.pi_next[0].kernel();
    let kb = w.tops[1].kernel();
    let kc = w.step.pi_next[1].kernel();
    let kd = w.tops[0].kernel();
    let k1 = ka.order() as u128 * kb.order() as u128;
    let k2 = kc.order() as u128 * kd.order() as u128;
    push(&mut r, "|G| = |L1|·|ker p1|", order == l[0].order() as u128 * k1, format!("{order} vs {}·{k1}", l[0].order()));
    push(&mut r, "|G| = |L2|·|ker p2|", order == l[1].order() as u128 * k2, format!("{order} vs {}·{k2}", l[1].order()));
    let kappa_inv = match w.step.kappa.inverse() {
        Ok(k) => k,
        Err(e) => {
            push(&mut r, "kernel map", false, e.to_string());
            return r;
        }
    };
    let left = w.left();
    let right = w.right();
    let image_ok = |u: usize, v: usize| {
        let (a, b) = w.kernel_map(&kappa_inv, u, v);
        w.in_fibre(a, b) && kc.contains(b) && kd.contains(a)
    };
    let mul = |x: (usize, usize), y: (usize, usize)| (left.mul(x.0, y.0), right.mul(x.1, y.1));
    let mut gens: Vec<(usize, usize)> = ka.generators().into_iter().map(|a| (a, 0)).collect();
    gens.extend(kb.generators().into_iter().map(|b| (0, b)));
    let mut ok = gens.iter().all(|&(u, v)| image_ok(u, v));
    for &x in &gens {
        for &y in &gens {
            let lhs = w.kernel_map(&kappa_inv, mul(x, y).0, mul(x, y).1);
            let (a, b) = (w.kernel_map(&kappa_inv, x.0, x.1), w.kernel_map(&kappa_inv, y.0, y.1));
            ok &= lhs == (left.mul(a.0, b.0), right.mul(a.1, b.1));
        }
    }
    push(&mut r, "kernel map on generator pairs", ok, "generator relation broken".into());
    let sample = |rng: &mut ChaCha8Rng| (ka.lift(rng.gen_range(0..ka.order())), kb.lift(rng.gen_range(0..kb.order())));
    let mut ok = true;
    for _ in 0..samples {
        let (x, y) = (sample(&mut rng), sample(&mut rng));
        let xy = mul(x, y);
        let (a, b) = (w.kernel_map(&kappa_inv, x.0, x.1), w.kernel_map(&kappa_inv, y.0, y.1));
        if !image_ok(x.0, x.1) || w.kernel_map(&kappa_inv, xy.0, xy.1) != (left.mul(a.0, b.0), right.mul(a.1, b.1)) {
            ok = false;
            break;
        }
    }
    push(&mut r, &format!("kernel map on {samples} random pairs"), ok, "sampled relation broken".into());
    let bij = w.step.lambda.is_valid() && w.step.kappa.is_valid() && k1 == k2;
    push(&mut r, "kernel map components are bijective", bij, "λ or κ fails".into());
    // sections s_{p_δ} = (s_{π_4}, 1) resp. (1, s_{π_4}) over ker π_{3;δ}
    for d in 0..2 {
        let sec = &w.step.section_next[d];
        let mut ok = true;
        let kp: Vec<Perm> = if d == 0 {
            ka.generators().into_iter().map(|a| w.join(a, 0)).chain(kb.generators().into_iter().map(|b| w.join(0, b))).collect()
        } else {
            kc.generators().into_iter().map(|c| w.join(0, c)).chain(kd.generators().into_iter().map(|a| w.join(a, 0))).collect()
        };
        let dom = &sec.domain;
        for n in dom.members() {
            let m = sec.apply(n);
            let s = if d == 0 { w.join(m, 0) } else { w.join(0, m) };
            ok &= w.chain.contains(&s) && w.project(d, &s) == Some(n);
            ok &= kp.iter().all(|k| k.mul(&s) == s.mul(k));
        }
        let hom = dom.members().all(|a| dom.members().all(|b| sec.apply(dom.parent().mul(a, b)) == w.step.next[d].group.mul(sec.apply(a), sec.apply(b))));
        push(&mut r, &format!("p{} is trivially extendable at a subgroup of order {}", d + 1, dom.order()), ok && hom, "section defect".into());
    }
    r
}

/// JSON summary: generators with their images, orders, and the report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StretchJson {
    pub witness: GroupJson,
    pub order: String,
    pub targets: [GroupJson; 2],
    /// `p_δ` on the generators, as element indices of `L_δ`.
    pub generator_images: [Vec<u32>; 2],
    pub provenance: Provenance,
    pub report: VerificationReport,
}

impl StretchJson {
    pub fn of(w: &StretchWitness, report: VerificationReport) -> Self {
        let images = |d: usize| w.generators.iter().map(|g| w.project(d, g).unwrap_or(usize::MAX) as u32).collect();
        StretchJson {
            witness: GroupJson {
                degree: w.degree,
                generators: w.generators.iter().map(|g| g.images().to_vec()).collect(),
            },
            order: w.order().to_string(),
            targets: [GroupJson::of(w.step.pi_next[0].target()), GroupJson::of(w.step.pi_next[1].target())],
            generator_images: [images(0), images(1)],
            provenance: w.provenance.clone(),
            report,
        }
    }
}
