//! Randomized laws, each case drawn from a seed so failures replay.

use groupwit::descriptor::GroupDescriptor;
use groupwit::group::construct::by_name;
use groupwit::group::iso::all_homomorphisms;
use groupwit::group::schreier::StabChain;
use groupwit::hybrid::HybridWreath;
use groupwit::limit::limit;
use groupwit::random::{random_group, random_normal_hybrid, random_subgroup, random_surjective_system, CATALOG};
use groupwit::witness::{all_subgroups, comp_membership, GroupSequence};
use groupwit::witness::sequence::series_to_sequence;
use groupwit::{Bounds, Group, Subgroup};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BOUND: usize = 20_000;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn stabilizer_chain_agrees_with_enumeration(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_group(&mut r, 60).unwrap();
        let h = random_subgroup(&mut r, &g);
        let gens: Vec<_> = h.generators().into_iter().map(|x| g.element(x).clone()).collect();
        let chain = StabChain::new(g.degree(), &gens);
        prop_assert_eq!(chain.order(), h.order() as u128);
        for x in 0..g.order() {
            prop_assert_eq!(chain.contains(g.element(x)), h.contains(x));
        }
    }

    #[test]
    fn descriptors_rebuild_the_same_group(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_group(&mut r, 60).unwrap();
        let d = GroupDescriptor::of(&g);
        let text = serde_json::to_string(&d).unwrap();
        let back = GroupDescriptor::parse(&text).unwrap().build(BOUND).unwrap();
        prop_assert_eq!(g.elements(), back.elements());
    }

    #[test]
    fn limit_order_matches_coherent_tuple_count(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_surjective_system(&mut r, 4, 12, BOUND).unwrap();
        let n = x.poset().len();
        let product: usize = (0..n).map(|i| x.group(i).order()).product();
        prop_assume!(product <= 50_000);
        let pairs = x.poset().strict_pairs();
        let mut count = 0;
        let mut t = vec![0usize; n];
        loop {
            if pairs.iter().all(|&(i, j)| x.transition(i, j).apply(t[j]) == t[i]) {
                count += 1;
            }
            let mut k = 0;
            while k < n {
                t[k] += 1;
                if t[k] < x.group(k).order() {
                    break;
                }
                t[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
        prop_assert_eq!(limit(&x, BOUND).unwrap().order(), count);
    }

    #[test]
    fn hybrid_orders_follow_the_kernel(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (theta, reps) = random_normal_hybrid(&mut r, 24, 8, 3).unwrap();
        let hw = HybridWreath::with_transversal(&theta, reps, BOUND).unwrap();
        let k = theta.kernel().order();
        let n = hw.points() as u32;
        prop_assert_eq!(hw.order(), k.pow(n) * theta.target().order());
        prop_assert_eq!(hw.kernel().order(), k.pow(n));
        prop_assert_eq!(hw.base.order(), k.pow(n) * theta.image().order());
    }
}

/// Chains `1 < N_1 < N_2 < G` of normal subgroups with prime steps.
fn prime_chains(g: &Group) -> Vec<Vec<Subgroup>> {
    let normal: Vec<Subgroup> =
        all_subgroups(&Subgroup::whole(g), BOUND).unwrap().into_iter().filter(|s| s.is_normal()).collect();
    let prime = |n: usize| n > 1 && (2..n).all(|d| !n.is_multiple_of(d));
    let mut out = Vec::new();
    for a in normal.iter().filter(|a| prime(a.order())) {
        for b in normal.iter().filter(|b| a.is_subgroup_of(b) && prime(b.order() / a.order())) {
            if prime(g.order() / b.order()) {
                out.push(vec![Subgroup::trivial(g), a.clone(), b.clone(), Subgroup::whole(g)]);
            }
        }
    }
    out
}

fn kernel_orders(s: &GroupSequence) -> Vec<usize> {
    (1..=s.len()).map(|i| s.kernel(i).order()).collect()
}

/// Length-3 sequences from groups of order 8 and 12, grouped by kernel
/// orders so that equal profiles are compatible.
fn sequence_pool() -> Vec<GroupSequence> {
    let mut pool = Vec::new();
    for name in CATALOG {
        let g = by_name(name).unwrap();
        if g.order() != 8 && g.order() != 12 {
            continue;
        }
        for chain in prime_chains(&g) {
            pool.push(series_to_sequence(&g, &chain, BOUND).unwrap());
        }
    }
    pool
}

/// `S` with its top replaced by a catalogue group of the same order
/// mapping onto `S_{ℓ−1}` with a kernel of the same order.
fn retopped<R: Rng>(r: &mut R, s: &GroupSequence) -> GroupSequence {
    let l = s.len();
    let below = s.group(l - 1);
    let want = s.kernel(l).order();
    let mut options = Vec::new();
    for name in CATALOG {
        let x = by_name(name).unwrap();
        if x.order() != s.top().order() {
            continue;
        }
        for f in all_homomorphisms(&x, below, BOUND).unwrap() {
            if f.is_surjective() && f.kernel().order() == want {
                options.push((x.clone(), f));
            }
        }
    }
    let (x, f) = options.choose(r).cloned().expect("the original top is always an option");
    let mut groups: Vec<Group> = (0..l).map(|i| s.group(i).clone()).collect();
    groups.push(x);
    let mut maps: Vec<_> = (1..l).map(|i| s.pi(i).clone()).collect();
    maps.push(f);
    GroupSequence::new(groups, maps).unwrap()
}

#[test]
fn sharp_and_retopping_preserve_comp() {
    let b = Bounds::default();
    let pool = sequence_pool();
    let mut r = rng(41);
    let mut members = 0;
    for _ in 0..60 {
        let s1 = pool.choose(&mut r).unwrap();
        let partners: Vec<&GroupSequence> =
            pool.iter().filter(|t| kernel_orders(t) == kernel_orders(s1) && t.top().order() == s1.top().order()).collect();
        let s2 = *partners.choose(&mut r).unwrap();
        let Some(_) = comp_membership(&[s1, s2], &b).unwrap() else { continue };
        members += 1;
        let t = [retopped(&mut r, s1), retopped(&mut r, s2)];
        assert!(t[0].almost_equal(s1) && t[1].almost_equal(s2));
        assert!(comp_membership(&[&t[0], &t[1]], &b).unwrap().is_some(), "retopping left Comp");
        let sharp = [s1.sharp(&t[0], BOUND).unwrap(), s2.sharp(&t[1], BOUND).unwrap()];
        assert!(sharp[0].kernel_isomorphisms(&sharp[1], b.isomorphism).unwrap().is_ok(), "sharps are not compatible");
        assert!(comp_membership(&[&sharp[0], &sharp[1]], &b).unwrap().is_some(), "sharp left Comp");
    }
    assert!(members >= 20, "only {members} Comp members drawn");
}
