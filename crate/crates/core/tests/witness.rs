use groupwit::group::construct::by_name;
use groupwit::group::iso::find_isomorphism;
use groupwit::witness::certificate::{from_json, to_json};
use groupwit::witness::goodwit::hand_example;
use groupwit::witness::{
    build_recursion_step, central_series, comp_membership, series_to_sequence, square_free_series, verify_witness,
    witness_nilpotent, WitnessCertificate,
};
use groupwit::{Bounds, Group};

fn pair(a: &str, b: &str) -> [Group; 2] {
    [by_name(a).unwrap(), by_name(b).unwrap()]
}

fn bookkeeping(cert: &WitnessCertificate) {
    for p in &cert.p {
        assert_eq!(cert.order(), p.target().order() * p.kernel().order());
    }
}

#[test]
fn cyclic_against_elementary_abelian() {
    let l = pair("Z8", "Z2^3");
    let cert = witness_nilpotent(&l[0], &l[1], &Bounds::default()).unwrap();
    bookkeeping(&cert);
    let r = verify_witness(&cert, [&l[0], &l[1]], &Bounds::default());
    assert!(r.complete(), "{:?}", r.failures());
    let k = [cert.p[0].kernel().group(), cert.p[1].kernel().group()];
    assert!(find_isomorphism(&k[0], &k[1], 10_000).unwrap().is_some());
}

#[test]
fn certificate_survives_json() {
    let l = pair("D8", "Q8");
    let b = Bounds::default();
    let cert = witness_nilpotent(&l[0], &l[1], &b).unwrap();
    let back = from_json(&to_json(&cert).unwrap(), b.enumeration).unwrap();
    assert_eq!(back.order(), 2048);
    assert_eq!(to_json(&back).unwrap(), to_json(&cert).unwrap());
    assert!(verify_witness(&back, [&l[0], &l[1]], &b).complete());
}

#[test]
fn kernel_chain_composes_to_lambda() {
    let l = pair("D8", "Q8");
    let b = Bounds::default();
    let s = [
        series_to_sequence(&l[0], &central_series(&l[0]).unwrap(), b.enumeration).unwrap(),
        series_to_sequence(&l[1], &central_series(&l[1]).unwrap(), b.enumeration).unwrap(),
    ];
    let comp = comp_membership(&[&s[0], &s[1]], &b).unwrap().unwrap();
    let step = build_recursion_step([&s[0], &s[1]], &comp, &b).unwrap();
    assert!(step.checks.iter().any(|(n, ok)| n == "explicit kernel chain composes to λ" && *ok));
    assert!(step.lambda.is_valid());
    assert_eq!(step.lambda.source, step.pi_next[0].kernel());
    assert_eq!(step.lambda.target, step.pi_next[1].kernel());
}

#[test]
fn composed_kernel_is_an_internal_direct_product() {
    let ex = hand_example(2, 3, 20_000).unwrap();
    let checks = ex.composed.provenance.all_checks();
    assert!(checks.iter().any(|(n, ok)| n.starts_with("ker q splits") && *ok), "{checks:?}");
    bookkeeping(&ex.composed);
}

#[test]
fn order_30_recursion_objects() {
    let l = pair("Z30", "Z5xS3");
    let b = Bounds::default();
    let s = [
        series_to_sequence(&l[0], &square_free_series(&l[0]).unwrap(), b.enumeration).unwrap(),
        series_to_sequence(&l[1], &square_free_series(&l[1]).unwrap(), b.enumeration).unwrap(),
    ];
    let comp = comp_membership(&[&s[0], &s[1]], &b).unwrap().unwrap();
    let step = build_recursion_step([&s[0], &s[1]], &comp, &b).unwrap();
    for d in 0..2 {
        // 30²/6 and 6·5²
        assert_eq!(step.g[d].order(), 150);
        assert_eq!(step.h[d].order(), 150);
    }
    assert!(step.checks.iter().all(|(_, ok)| *ok));
}

#[test]
fn small_bounds_leave_the_kernel_search_undecided() {
    let l = pair("D8", "Q8");
    let cert = witness_nilpotent(&l[0], &l[1], &Bounds::default()).unwrap();
    let tight = Bounds { isomorphism: 100, ..Bounds::default() };
    let r = verify_witness(&cert, [&l[0], &l[1]], &tight);
    assert!(r.passed());
    assert!(!r.complete());
}
