//! Seeded random instances for property suites: small groups, transitive
//! actions with transversals, normal hybrids and surjective systems over
//! in-forests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::group::construct::{by_name, direct_product};
use crate::group::hom::{quotient, Homomorphism};
use crate::group::subgroup::{normal_closure_of, Subgroup};
use crate::group::Group;
use crate::limit::{projection_system, InverseSystem, SystemMorphism};
use crate::poset::Poset;
use crate::wreath::{coset_action, GroupAction, PermutationTransversal};

/// Named groups used as raw material, in increasing order.
pub const CATALOG: &[&str] = &[
    "1", "Z2", "Z3", "Z4", "Z2^2", "Z5", "Z6", "S3", "Z7", "Z8", "Z2xZ4", "Z2^3", "D8", "Q8", "Z9", "Z3^2", "D10",
    "Z10", "Z12", "A4", "D12", "Z2xZ6", "Z3xZ4", "Z2xD8", "Q16", "D16", "Z4^2", "Z2^4", "Z3xS3", "D18", "F20", "F21",
    "S4", "Z2xA4", "D24", "Z24", "Z3xD8", "Z5xS3", "D30", "Z3xA4", "Z2xF21", "A5",
];

/// A uniformly chosen catalogue group of order at most `max_order`.
pub fn random_group<R: Rng>(rng: &mut R, max_order: usize) -> Result<Group> {
    let mut names = Vec::new();
    for &n in CATALOG {
        let g = by_name(n)?;
        if g.order() > max_order {
            break;
        }
        names.push(g);
    }
    names.choose(rng).cloned().ok_or_else(|| Error::InvalidParameter("no catalogue group is that small".into()))
}

fn random_elements<R: Rng>(rng: &mut R, g: &Group, max: usize) -> Vec<usize> {
    let k = rng.gen_range(0..=max);
    (0..k).map(|_| rng.gen_range(0..g.order())).collect()
}

/// The subgroup generated by up to two random elements.
pub fn random_subgroup<R: Rng>(rng: &mut R, g: &Group) -> Subgroup {
    Subgroup::generated(g, &random_elements(rng, g, 2))
}

/// The normal closure of up to two random elements of `inside`, a normal
/// subgroup of its parent.
pub fn random_normal_subgroup<R: Rng>(rng: &mut R, inside: &Subgroup) -> Subgroup {
    let k = rng.gen_range(0..=2);
    let elems: Vec<usize> = (0..k).map(|_| inside.lift(rng.gen_range(0..inside.order()))).collect();
    normal_closure_of(inside.parent(), &elems)
}

/// `t_ν` drawn uniformly from the elements carrying the basepoint to `ν`.
pub fn random_transversal<R: Rng>(
    rng: &mut R,
    action: &GroupAction,
    basepoint: usize,
) -> Result<PermutationTransversal> {
    let g = action.group();
    let mut choices = vec![Vec::new(); action.len()];
    for x in 0..g.order() {
        choices[action.act(basepoint, x)].push(x);
    }
    let reps = choices
        .iter()
        .enumerate()
        .map(|(v, c)| if v == basepoint { Some(g.identity()) } else { c.choose(rng).copied() })
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::InvalidParameter("action is not transitive".into()))?;
    PermutationTransversal::new(action, basepoint, reps)
}

/// A transitive action with two independently drawn transversals.
#[derive(Clone, Debug)]
pub struct EmbeddingInstance {
    pub action: GroupAction,
    pub transversals: [PermutationTransversal; 2],
}

/// `G` on the cosets of a random subgroup, `|G| ≤ max_order`.
pub fn random_embedding_instance<R: Rng>(rng: &mut R, max_order: usize) -> Result<EmbeddingInstance> {
    let g = random_group(rng, max_order)?;
    let k = random_subgroup(rng, &g);
    let action = coset_action(&k);
    let basepoint = rng.gen_range(0..action.len());
    let transversals = [random_transversal(rng, &action, basepoint)?, random_transversal(rng, &action, basepoint)?];
    Ok(EmbeddingInstance { action, transversals })
}

/// `θ : I × K → H` projecting onto a normal subgroup `I ⊴ H` of index at
/// most `max_points`, with `K` of order at most `max_kernel`, together
/// with a random transversal of `H` over `I`.
pub fn random_normal_hybrid<R: Rng>(
    rng: &mut R,
    max_h: usize,
    max_kernel: usize,
    max_points: usize,
) -> Result<(Homomorphism, Vec<usize>)> {
    loop {
        let h = random_group(rng, max_h)?;
        let i = random_normal_subgroup(rng, &Subgroup::whole(&h));
        if i.index() > max_points {
            continue;
        }
        let k = random_group(rng, max_kernel)?;
        let dp = direct_product(&[i.group(), k])?;
        let theta = Homomorphism::from_fn(&dp.group, &h, |x| i.lift(dp.coords(x)[0]))?;
        let action = coset_action(&theta.image());
        let reps = random_transversal(rng, &action, 0)?.reps;
        return Ok((theta, reps));
    }
}

/// Random rooted forest on `n` nodes: node `i > 0` hangs under an earlier
/// node or starts a new tree.
pub fn random_forest<R: Rng>(rng: &mut R, n: usize) -> Poset {
    let mut pairs = Vec::new();
    for i in 1..n {
        if rng.gen_bool(0.75) {
            pairs.push((rng.gen_range(0..i), i));
        }
    }
    Poset::new(n, &pairs).expect("parents precede children")
}

/// `q` together with a lift table `Q → G`.
fn quotient_with_lifts(g: &Group, n: &Subgroup, bound: usize) -> Result<(Homomorphism, Vec<usize>)> {
    let (q, map) = quotient(g, n, bound)?;
    let mut lift = vec![usize::MAX; q.order()];
    for x in 0..g.order() {
        let y = map.apply(x);
        if lift[y] == usize::MAX {
            lift[y] = x;
        }
    }
    Ok((map, lift))
}

/// Quotients of each node group by `k[i]`, where `f_ij(K_j) ≤ K_i`, with
/// the induced transitions and the level-wise quotient morphism.
pub fn quotient_system(x: &InverseSystem, k: &[Subgroup], bound: usize) -> Result<(InverseSystem, SystemMorphism)> {
    let p = x.poset();
    let maps = (0..p.len()).map(|i| quotient_with_lifts(x.group(i), &k[i], bound)).collect::<Result<Vec<_>>>()?;
    let groups: Vec<Group> = maps.iter().map(|(m, _)| m.target().clone()).collect();
    let mut covers = Vec::new();
    for j in 0..p.len() {
        if let Some(i) = p.lower_cover(j) {
            let f = x.transition(i, j);
            let (qi, _) = &maps[i];
            let (_, lj) = &maps[j];
            covers.push(((i, j), Homomorphism::from_fn(&groups[j], &groups[i], |y| qi.apply(f.apply(lj[y])))?));
        }
    }
    let y = InverseSystem::from_covers(p.clone(), groups, covers)?;
    let levels = maps.into_iter().map(|(m, _)| m).collect();
    let phi = SystemMorphism::new(x, &y, levels)?;
    Ok((y, phi))
}

/// A surjective system over a random in-forest with at most `max_nodes`
/// nodes. Each tree is a tower of quotients of one catalogue group of
/// order at most `max_order`, deeper nodes by smaller normal subgroups.
pub fn random_surjective_system<R: Rng>(
    rng: &mut R,
    max_nodes: usize,
    max_order: usize,
    bound: usize,
) -> Result<InverseSystem> {
    let n = rng.gen_range(1..=max_nodes);
    let p = random_forest(rng, n);
    let mut masters: Vec<Option<Group>> = vec![None; n];
    let mut normals: Vec<Option<Subgroup>> = vec![None; n];
    for j in p.linear_extension() {
        let (m, inside) = match p.lower_cover(j) {
            None => {
                let m = random_group(rng, max_order)?;
                let whole = Subgroup::whole(&m);
                (m, whole)
            }
            Some(i) => (masters[i].clone().expect("lower cover first"), normals[i].clone().expect("lower cover first")),
        };
        normals[j] = Some(random_normal_subgroup(rng, &inside));
        masters[j] = Some(m);
    }
    // the tower of one master as a system of identities, then quotiented
    let masters: Vec<Group> = masters.into_iter().map(|m| m.expect("every node visited")).collect();
    let covers = (0..n)
        .filter_map(|j| p.lower_cover(j).map(|i| ((i, j), Homomorphism::identity(&masters[j]))))
        .collect();
    let top = InverseSystem::from_covers(p, masters, covers)?;
    let normals: Vec<Subgroup> = normals.into_iter().map(|s| s.expect("every node visited")).collect();
    Ok(quotient_system(&top, &normals, bound)?.0)
}

/// Either the projection system at a random node or the quotient by a
/// random normal subsystem.
pub fn random_system_morphism<R: Rng>(
    rng: &mut R,
    x: &InverseSystem,
    bound: usize,
) -> Result<(InverseSystem, SystemMorphism)> {
    let p = x.poset();
    if rng.gen_bool(0.5) {
        return projection_system(x, rng.gen_range(0..p.len()));
    }
    let mut k: Vec<Option<Subgroup>> = vec![None; p.len()];
    for j in p.linear_extension() {
        let inside = match p.lower_cover(j) {
            None => Subgroup::whole(x.group(j)),
            Some(i) => x.transition(i, j).preimage(k[i].as_ref().expect("lower cover first")),
        };
        k[j] = Some(random_normal_subgroup(rng, &inside));
    }
    let k: Vec<Subgroup> = k.into_iter().map(|s| s.expect("every node visited")).collect();
    quotient_system(x, &k, bound)
}
