//! One line per acceptance criterion. Run with
//! `cargo test -p groupwit --test acceptance -- --nocapture` to see them.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use groupwit::group::construct::{by_name, cyclic};
use groupwit::group::iso::all_homomorphisms;
use groupwit::group::structure::center;
use groupwit::hybrid::HybridWreath;
use groupwit::limit::{limit, limit_of_morphism, subsystem_limit};
use groupwit::random::{
    random_embedding_instance, random_normal_hybrid, random_subgroup, random_surjective_system,
    random_system_morphism,
};
use groupwit::witness::certificate::CertificateJson;
use groupwit::witness::goodwit::hand_example;
use groupwit::witness::series::sequences_for;
use groupwit::witness::stretch::{stretch_square_free, verify_stretch, STRETCH_SAMPLES};
use groupwit::witness::{
    build_good_witness, build_recursion_step, central_series, comp_membership, is_trivially_extendable,
    series_to_sequence, square_free_series, verify_witness, witness_nilpotent, witness_square_free, Extendability,
    WitnessCertificate,
};
use groupwit::wreath::{embedding_conjugator, standard_embedding};
use groupwit::{Bounds, Error, Group, Homomorphism, Subgroup};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const BOUND: usize = 20_000;
const SEED: u64 = 20_240_601;

const HYBRID_LIMIT: Duration = Duration::from_secs(5);
const RANDOM_HYBRIDS: usize = 20;
const EMBEDDING_INSTANCES: usize = 200;
const EMBEDDING_MAX_ORDER: usize = 60;
const EMBEDDING_LIMIT: Duration = Duration::from_secs(30);
const SYSTEMS: usize = 200;
const SYSTEM_MAX_NODES: usize = 5;
const SYSTEM_MAX_ORDER: usize = 24;
const LENGTH_TWO_LIMIT: Duration = Duration::from_secs(5);
const ORDER_EIGHT_LIMIT: Duration = Duration::from_secs(600);
const ORDER_EIGHT_MAX_WITNESS: usize = 2048;
const ORDER_EIGHT_MAX_KERNEL: usize = 256;
const GOODWIT_LIMIT: Duration = Duration::from_secs(5);
const ORDER_42_LIMIT: Duration = Duration::from_secs(60);
const STRETCH_ORDERS: [(&str, &str, u128); 2] = [("Z30", "Z5xS3", 7_031_250), ("F21xZ2", "Z7xS3", 103_766_418)];

type Outcome = std::result::Result<String, String>;

fn ensure(ok: bool, what: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

/// Checks the homomorphism law on every pair, the way a reader would by
/// hand.
fn hom_on_all_pairs(f: &Homomorphism) -> bool {
    let (g, h) = (f.source(), f.target());
    (0..g.order()).all(|a| (0..g.order()).all(|b| f.apply(g.mul(a, b)) == h.mul(f.apply(a), f.apply(b))))
}

/// Isomorphism by exhausting every tuple of generator images.
fn brute_isomorphic(a: &Group, b: &Group) -> bool {
    if a.order() != b.order() {
        return false;
    }
    let gens = a.generators();
    let mut images = vec![0usize; gens.len()];
    loop {
        if let Ok(f) = Homomorphism::from_generator_images(a, b, &images) {
            if f.is_bijective() {
                return true;
            }
        }
        let mut k = 0;
        while k < images.len() {
            images[k] += 1;
            if images[k] < b.order() {
                break;
            }
            images[k] = 0;
            k += 1;
        }
        if k == images.len() {
            return false;
        }
    }
}

fn is_elementary_abelian(g: &Group, p: usize) -> bool {
    g.is_abelian() && (1..g.order()).all(|x| g.element_order(x) == p)
}

fn f21_theta() -> std::result::Result<Homomorphism, String> {
    let g = by_name("F21").map_err(err)?;
    let h = by_name("S3").map_err(err)?;
    all_homomorphisms(&g, &h, BOUND)
        .map_err(err)?
        .into_iter()
        .find(|f| f.image().order() == 3)
        .ok_or_else(|| "no F21 → S3 with image of order 3".into())
}

fn hybrid_example() -> Outcome {
    let hw = HybridWreath::new(&f21_theta()?, BOUND).map_err(err)?;
    ensure(hw.order() == 294, || format!("|HW| = {}", hw.order()))?;
    let k = hw.kernel();
    ensure(k.order() == 49 && is_elementary_abelian(&k.group(), 7), || format!("ker is not Z7² ({})", k.order()))?;
    ensure(hw.base.order() == 147, || format!("|BW| = {}", hw.base.order()))?;
    let evs = hw.evaluation_maps().map_err(err)?;
    ensure(evs.iter().all(|p| p.is_surjective()), || "a coordinate projection of BW misses F21".into())?;
    let g = hw.g().order();
    ensure(hw.base.order() < g * g, || "BW is all of F21²".into())?;
    ensure(k.is_subgroup_of(&hw.base) && k.is_normal() && hw.base.is_normal(), || "1 ⊴ ker ⊴ BW ⊴ HW fails".into())?;
    let quotients = [k.order(), hw.base.order() / k.order(), hw.order() / hw.base.order()];
    ensure(quotients == [49, 3, 2], || format!("series quotients {quotients:?}"))?;
    Ok("294, ker Z7², BW 147 proper subdirect, quotients 49/3/2".into())
}

fn base_matches_limit(hw: &HybridWreath) -> std::result::Result<(), String> {
    let bl = hw.base_as_limit(BOUND).map_err(err)?;
    let id = &bl.identification;
    ensure(id.is_bijective() && hom_on_all_pairs(id), || "BW → lim is not an isomorphism".into())?;
    for (i, p) in hw.evaluation_maps().map_err(err)?.iter().enumerate() {
        let via = id.then(&bl.limit.projections[i + 1]).map_err(err)?;
        ensure(via.table() == p.table(), || format!("evaluation map {i} does not commute"))?;
    }
    let ptheta = hw.standard_map.restrict_source(&hw.base).map_err(err)?;
    let via = id.then(&bl.limit.projections[0]).map_err(err)?;
    ensure((0..hw.base.order()).all(|k| hw.image.lift(via.apply(k)) == ptheta.apply(k)), || {
        "p_θ does not commute".into()
    })
}

fn bw_as_limit() -> Outcome {
    base_matches_limit(&HybridWreath::new(&f21_theta()?, BOUND).map_err(err)?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for n in 0..RANDOM_HYBRIDS {
        let (theta, reps) = random_normal_hybrid(&mut rng, 24, 8, 3).map_err(err)?;
        let hw = HybridWreath::with_transversal(&theta, reps, BOUND).map_err(err)?;
        base_matches_limit(&hw).map_err(|e| format!("random hybrid {n} ({}): {e}", hw.group.label()))?;
    }
    Ok(format!("example plus {RANDOM_HYBRIDS} random normal hybrids"))
}

fn embeddings() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    for n in 0..EMBEDDING_INSTANCES {
        let inst = random_embedding_instance(&mut rng, EMBEDDING_MAX_ORDER).map_err(err)?;
        let fail = |e: Error| format!("instance {n} ({}): {e}", inst.action.group().label());
        let iota = standard_embedding(&inst.action, &inst.transversals[0]).map_err(fail)?;
        let lambda = standard_embedding(&inst.action, &inst.transversals[1]).map_err(fail)?;
        iota.verify().map_err(fail)?;
        lambda.verify().map_err(fail)?;
        embedding_conjugator(&iota, &lambda).map_err(fail)?;
    }
    Ok(format!("{EMBEDDING_INSTANCES} instances, |G| ≤ {EMBEDDING_MAX_ORDER}"))
}

fn limit_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    for n in 0..SYSTEMS {
        let x = random_surjective_system(&mut rng, SYSTEM_MAX_NODES, SYSTEM_MAX_ORDER, BOUND).map_err(err)?;
        let lx = limit(&x, BOUND).map_err(err)?;
        ensure(lx.projections.iter().all(|p| p.is_surjective()), || format!("system {n}: a projection is not onto"))?;
        let (y, phi) = random_system_morphism(&mut rng, &x, BOUND).map_err(err)?;
        let ly = limit(&y, BOUND).map_err(err)?;
        let lim_phi = limit_of_morphism(&phi, &lx, &ly).map_err(err)?;
        // Z from a random subgroup of lim Y, and the trivial subsystem
        let a = random_subgroup(&mut rng, &ly.group);
        let z: Vec<Subgroup> = ly.projections.iter().map(|p| p.image_of(&a)).collect();
        for z in [z, y.trivial_subsystem()] {
            let left = subsystem_limit(&x, &lx, &phi.preimage_system(&z).map_err(err)?).map_err(err)?;
            let right = lim_phi.preimage(&subsystem_limit(&y, &ly, &z).map_err(err)?);
            ensure(left == right, || format!("system {n}: lim φ⁻¹(Z) ≠ (lim φ)⁻¹(lim Z)"))?;
        }
    }
    Ok(format!("{SYSTEMS} systems, ≤ {SYSTEM_MAX_NODES} nodes, groups ≤ {SYSTEM_MAX_ORDER}"))
}

/// The verifier plus brute-force quotient and kernel oracles.
fn oracle(cert: &WitnessCertificate, l: [&Group; 2]) -> std::result::Result<(), String> {
    let r = verify_witness(cert, l, &Bounds::default());
    ensure(r.complete(), || format!("verifier: {:?}", r.failures()))?;
    for d in 0..2 {
        let p = &cert.p[d];
        ensure(hom_on_all_pairs(p) && p.is_surjective(), || format!("p{} is not a surjection", d + 1))?;
        let (q, _) = groupwit::quotient(&cert.witness, &p.kernel(), BOUND).map_err(err)?;
        ensure(brute_isomorphic(&q, l[d]), || format!("G/ker p{} is not L{}", d + 1, d + 1))?;
    }
    let (k1, k2) = (cert.p[0].kernel(), cert.p[1].kernel());
    ensure(brute_isomorphic(&k1.group(), &k2.group()), || "kernels are not isomorphic".into())?;
    ensure(cert.kernel_iso.source == k1 && cert.kernel_iso.target == k2, || "κ is not placed on the kernels".into())?;
    ensure(hom_on_all_pairs(&cert.kernel_iso.map) && cert.kernel_iso.map.is_bijective(), || {
        "κ is not an isomorphism".into()
    })
}

fn cyclic_four_chain(g: &Group) -> std::result::Result<Vec<Subgroup>, String> {
    let x = (0..g.order()).find(|&x| g.element_order(x) == 4).ok_or("no element of order 4")?;
    let z4 = Subgroup::generated(g, &[x]);
    ensure(z4.is_normal(), || "⟨x⟩ is not normal".into())?;
    Ok(vec![Subgroup::trivial(g), z4, Subgroup::whole(g)])
}

fn length_two() -> Outcome {
    let b = Bounds::default();
    let mut orders = Vec::new();
    let (z4, v4) = (by_name("Z4").map_err(err)?, by_name("Z2xZ2").map_err(err)?);
    let cert = witness_nilpotent(&z4, &v4, &b).map_err(err)?;
    oracle(&cert, [&z4, &v4])?;
    orders.push(cert.order());
    let (z6, s3) = (by_name("Z6").map_err(err)?, by_name("S3").map_err(err)?);
    let cert = witness_square_free(&z6, &s3, &b).map_err(err)?;
    oracle(&cert, [&z6, &s3])?;
    orders.push(cert.order());
    let (d8, q8) = (by_name("D8").map_err(err)?, by_name("Q8").map_err(err)?);
    let chains = [cyclic_four_chain(&d8)?, cyclic_four_chain(&q8)?];
    let s = sequences_for([&d8, &q8], [&chains[0], &chains[1]], BOUND).map_err(err)?;
    let comp = comp_membership(&[&s[0], &s[1]], &b).map_err(err)?.ok_or("D8/Q8 over Z4 fails Comp")?;
    let cert = build_good_witness([&s[0], &s[1]], &comp, &b).map_err(err)?;
    oracle(&cert, [&d8, &q8])?;
    orders.push(cert.order());
    ensure(orders == [8, 18, 32], || format!("orders {orders:?}"))?;
    Ok("orders 8, 18, 32".into())
}

fn order_eight() -> Outcome {
    let names = ["Z8", "Z2xZ4", "Z2^3", "D8", "Q8"];
    let b = Bounds::default();
    let mut pairs = 0;
    for i in 0..names.len() {
        for j in i + 1..names.len() {
            let (a, c) = (by_name(names[i]).map_err(err)?, by_name(names[j]).map_err(err)?);
            let tag = format!("({}, {})", names[i], names[j]);
            let s = [
                series_to_sequence(&a, &central_series(&a).map_err(err)?, BOUND).map_err(err)?,
                series_to_sequence(&c, &central_series(&c).map_err(err)?, BOUND).map_err(err)?,
            ];
            for seq in &s {
                // central kernels make every inner restriction trivial
                for k in 1..=seq.len() {
                    ensure(seq.kernel(k).is_subgroup_of(&center(seq.group(k))), || format!("{tag}: non-central step"))?;
                }
            }
            let comp = comp_membership(&[&s[0], &s[1]], &b).map_err(err)?.ok_or(format!("{tag}: Comp fails"))?;
            let cert = build_good_witness([&s[0], &s[1]], &comp, &b).map_err(err)?;
            ensure(cert.order() <= ORDER_EIGHT_MAX_WITNESS && cert.kernel_order() <= ORDER_EIGHT_MAX_KERNEL, || {
                format!("{tag}: witness {} kernel {}", cert.order(), cert.kernel_order())
            })?;
            let r = verify_witness(&cert, [&a, &c], &b);
            ensure(r.complete(), || format!("{tag}: {:?}", r.failures()))?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs, witnesses ≤ {ORDER_EIGHT_MAX_WITNESS}"))
}

fn goodwit() -> Outcome {
    let ex = hand_example(2, 3, BOUND).map_err(err)?;
    ensure(ex.certificate.order() == 64, || format!("|G| = {}", ex.certificate.order()))?;
    let b = Bounds::default();
    let r = verify_witness(&ex.certificate, [&ex.targets[0], &ex.targets[1]], &b);
    ensure(r.complete(), || format!("hand certificate: {:?}", r.failures()))?;
    let good: Vec<usize> = ex.certificate.good_at.iter().map(|s| s.domain.order()).collect();
    ensure(good == [2, 2], || format!("good subgroups of orders {good:?}"))?;
    let r = verify_witness(&ex.composed, [&ex.composed_targets[0], &ex.composed_targets[1]], &b);
    ensure(r.complete(), || format!("composed: {:?}", r.failures()))?;
    let v4 = by_name("Z2xZ2").map_err(err)?;
    let z4 = cyclic(4).map_err(err)?;
    ensure(brute_isomorphic(&ex.composed_targets[0], &v4) && brute_isomorphic(&ex.composed_targets[1], &z4), || {
        "composed targets are not (Z2², Z4)".into()
    })?;
    Ok(format!("64 → composed witness of order {} for (Z2², Z4)", ex.composed.order()))
}

fn order_42_step() -> Outcome {
    let b = Bounds::default();
    let l = [by_name("F21xZ2").map_err(err)?, by_name("Z7xS3").map_err(err)?];
    let s = [
        series_to_sequence(&l[0], &square_free_series(&l[0]).map_err(err)?, BOUND).map_err(err)?,
        series_to_sequence(&l[1], &square_free_series(&l[1]).map_err(err)?, BOUND).map_err(err)?,
    ];
    let comp = comp_membership(&[&s[0], &s[1]], &b).map_err(err)?.ok_or("Comp fails")?;
    let step = build_recursion_step([&s[0], &s[1]], &comp, &b).map_err(err)?;
    let len = s[0].len();
    for d in 0..2 {
        let e = 1 - d;
        ensure(step.g[d].order() == 294 && step.h[d].order() == 294, || {
            format!("side {d}: |G| = {}, |H| = {}", step.g[d].order(), step.h[d].order())
        })?;
        let onto = step.rho[e].then(&s[e].down(len - 2, len)).map_err(err)?.kernel();
        ensure(step.eta[d].is_injective() && step.eta[d].image() == onto, || format!("η_{d} is not bijective"))?;
        let k = step.pi_next[d].kernel();
        ensure(k.order() == 343 && is_elementary_abelian(&k.group(), 7), || format!("side {d}: kernel is not Z7³"))?;
    }
    let failed: Vec<&String> = step.checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| n).collect();
    ensure(failed.is_empty(), || format!("failed checks {failed:?}"))?;
    Ok(format!("G, H of order 294, {} construction checks", step.checks.len()))
}

fn stretch() -> Outcome {
    let mut lines = Vec::new();
    for (a, c, want) in STRETCH_ORDERS {
        let l = [by_name(a).map_err(err)?, by_name(c).map_err(err)?];
        let w = stretch_square_free(&l[0], &l[1], &Bounds::default()).map_err(err)?;
        ensure(w.order() == want, || format!("({a}, {c}): order {}", w.order()))?;
        let r = verify_stretch(&w, [&l[0], &l[1]], STRETCH_SAMPLES, SEED);
        ensure(r.passed(), || format!("({a}, {c}): {:?}", r.failures()))?;
        lines.push(format!("({a}, {c}) order {want}"));
    }
    Ok(format!("{}, {STRETCH_SAMPLES} samples each", lines.join(", ")))
}

fn negative_controls() -> Outcome {
    let b = Bounds::default();
    let (z4, v4) = (by_name("Z4").map_err(err)?, by_name("Z2xZ2").map_err(err)?);
    let cert = witness_nilpotent(&z4, &v4, &b).map_err(err)?;
    let j = CertificateJson::of(&cert);
    let mut tampered = Vec::new();
    let mut p = j.clone();
    let last = p.p[0].len() - 1;
    p.p[0][last] = (p.p[0][last] + 1) % 4;
    tampered.push(("projection", p));
    let mut k = j.clone();
    k.kernel_iso.iter_mut().for_each(|pair| pair.1 = 0);
    tampered.push(("kernel map", k));
    let mut s = j.clone();
    s.good_at[1].images.iter_mut().for_each(|y| *y = 0);
    tampered.push(("section", s));
    for (what, t) in tampered {
        // a load rejected as malformed counts as caught
        if let Ok(bad) = t.load(BOUND) {
            ensure(!verify_witness(&bad, [&z4, &v4], &b).passed(), || format!("tampered {what} passes"))?;
        }
    }
    let z8 = by_name("Z8").map_err(err)?;
    ensure(!verify_witness(&cert, [&z8, &z8], &b).passed(), || "wrong targets pass".into())?;

    let z2 = cyclic(2).map_err(err)?;
    let mod2 = Homomorphism::from_generator_images(&z4, &z2, &[z2.generators()[0]]).map_err(err)?;
    let ext = is_trivially_extendable(&mod2, &Subgroup::whole(&z2), &b).map_err(err)?;
    ensure(matches!(ext, Extendability::Refuted(_)), || "Z4 → Z2 is not refuted at Z2".into())?;

    match witness_square_free(&z4, &v4, &b) {
        Err(Error::Refuted(_)) => {}
        other => return Err(format!("non-square-free input gave {:?}", other.map(|c| c.order()))),
    }
    Ok("3 tampered certificates and wrong targets rejected, Z4 → Z2 refuted, order 4 refuted".into())
}

struct Criterion {
    number: u32,
    name: &'static str,
    limit: Option<Duration>,
    gating: bool,
    run: fn() -> Outcome,
}

const CRITERIA: &[Criterion] = &[
    Criterion { number: 1, name: "hybrid F21 by S3", limit: Some(HYBRID_LIMIT), gating: true, run: hybrid_example },
    Criterion { number: 2, name: "base subgroup as a limit", limit: None, gating: true, run: bw_as_limit },
    Criterion { number: 3, name: "universal embeddings", limit: Some(EMBEDDING_LIMIT), gating: true, run: embeddings },
    Criterion { number: 4, name: "inverse limit laws", limit: None, gating: true, run: limit_laws },
    Criterion { number: 5, name: "length-2 witnesses", limit: Some(LENGTH_TWO_LIMIT), gating: true, run: length_two },
    Criterion { number: 6, name: "order-8 pairs", limit: Some(ORDER_EIGHT_LIMIT), gating: true, run: order_eight },
    Criterion { number: 7, name: "hand-built good witness", limit: Some(GOODWIT_LIMIT), gating: true, run: goodwit },
    Criterion { number: 8, name: "order-42 recursion step", limit: Some(ORDER_42_LIMIT), gating: true, run: order_42_step },
    Criterion { number: 9, name: "stretch witnesses", limit: None, gating: false, run: stretch },
    Criterion { number: 10, name: "negative controls", limit: None, gating: true, run: negative_controls },
];

#[test]
fn acceptance() {
    println!();
    let mut failed = Vec::new();
    for c in CRITERIA {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if took > limit => Err(format!("took {took:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        let limit = c.limit.map(|l| format!(", limit {l:?}")).unwrap_or_default();
        let tag = if c.gating { "" } else { " [not gating]" };
        match &outcome {
            Ok(detail) => println!("PASS {:>2} {}{tag}: {detail} ({took:.2?}{limit})", c.number, c.name),
            Err(e) => println!("FAIL {:>2} {}{tag}: {e} ({took:.2?}{limit})", c.number, c.name),
        }
        if outcome.is_err() && c.gating {
            failed.push(c.number);
        }
    }
    assert!(failed.is_empty(), "failed criteria {failed:?}");
}
