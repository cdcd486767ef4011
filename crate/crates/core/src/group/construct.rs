//! Concrete groups: cyclic, symmetric, alternating, dihedral, quaternion,
//! elementary abelian, direct and semidirect products, plus a small name
//! parser (`"Z2xZ4"`, `"F21"`, `"S3"`, `"Z2^3"`).

use super::hom::Homomorphism;
use super::{FiniteGroup, Group, Perm};
use crate::bounds::Bounds;
use crate::error::{Error, Result};

fn limit() -> usize {
    Bounds::default().enumeration
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

pub fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Prime factorization as (prime, exponent) pairs, ascending.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn cyclic(n: usize) -> Result<Group> {
    if n < 1 {
        return Err(invalid("cyclic group needs n >= 1"));
    }
    if n == 1 {
        return Ok(FiniteGroup::trivial());
    }
    let c: Vec<u32> = (0..n as u32).collect();
    let g = Perm::from_cycles(n, &[&c])?;
    FiniteGroup::generate(format!("Z{n}"), n, vec![g], limit())
}

pub fn symmetric(n: usize) -> Result<Group> {
    if n < 1 {
        return Err(invalid("symmetric group needs n >= 1"));
    }
    if n == 1 {
        return Ok(FiniteGroup::trivial().relabeled("S1"));
    }
    let c: Vec<u32> = (0..n as u32).collect();
    let gens = vec![Perm::from_cycles(n, &[&[0, 1]])?, Perm::from_cycles(n, &[&c])?];
    FiniteGroup::generate(format!("S{n}"), n, gens, limit())
}

pub fn alternating(n: usize) -> Result<Group> {
    if n < 1 {
        return Err(invalid("alternating group needs n >= 1"));
    }
    if n < 3 {
        return Ok(FiniteGroup::trivial().relabeled(format!("A{n}")));
    }
    let gens = (2..n as u32)
        .map(|i| Perm::from_cycles(n, &[&[0, 1, i]]))
        .collect::<Result<Vec<_>>>()?;
    FiniteGroup::generate(format!("A{n}"), n, gens, limit())
}

/// Dihedral group of the given order (`dihedral(8)` is the symmetry
/// group of a square).
pub fn dihedral(order: usize) -> Result<Group> {
    if order < 2 || !order.is_multiple_of(2) {
        return Err(invalid("dihedral group needs an even order >= 2"));
    }
    let n = order / 2;
    let label = format!("D{order}");
    match n {
        1 => Ok(cyclic(2)?.relabeled(label)),
        2 => {
            let a = Perm::from_cycles(4, &[&[0, 1], &[2, 3]])?;
            let b = Perm::from_cycles(4, &[&[0, 2], &[1, 3]])?;
            FiniteGroup::generate(label, 4, vec![a, b], limit())
        }
        _ => {
            let c: Vec<u32> = (0..n as u32).collect();
            let r = Perm::from_cycles(n, &[&c])?;
            let s = Perm::from_images((0..n).map(|i| ((n - i) % n) as u32).collect())?;
            FiniteGroup::generate(label, n, vec![r, s], limit())
        }
    }
}

/// Generalized quaternion group of order `2^k`, `k >= 3`.
pub fn quaternion(order: usize) -> Result<Group> {
    if order < 8 || !order.is_power_of_two() {
        return Err(invalid("quaternion group needs order 2^k with k >= 3"));
    }
    let h = order / 2;
    // element (i, j) = a^i b^j with a^h = 1, b^2 = a^(h/2), b^-1 a b = a^-1
    let enc = |i: usize, j: usize| j * h + i;
    let mul = |x: usize, y: usize| {
        let (i1, j1) = (x % h, x / h);
        let (i2, j2) = (y % h, y / h);
        if j1 == 0 {
            enc((i1 + i2) % h, j2)
        } else if j2 == 0 {
            enc((i1 + h - i2) % h, 1)
        } else {
            enc((i1 + h - i2 + h / 2) % h, 0)
        }
    };
    from_multiplication(format!("Q{order}"), order, mul, &[enc(1, 0), enc(0, 1)])
}

pub fn elementary_abelian(p: usize, k: usize) -> Result<Group> {
    if !is_prime(p) {
        return Err(invalid(format!("{p} is not prime")));
    }
    if k == 0 {
        return Ok(FiniteGroup::trivial());
    }
    let factors = vec![cyclic(p)?; k];
    Ok(direct_product(&factors)?.group.relabeled(format!("Z{p}^{k}")))
}

/// Right regular representation of a group given by its multiplication on
/// `0..n` (0 must be the identity).
pub fn from_multiplication(
    label: impl Into<String>,
    n: usize,
    mul: impl Fn(usize, usize) -> usize,
    gens: &[usize],
) -> Result<Group> {
    let perms = gens
        .iter()
        .map(|&g| Perm::from_images((0..n).map(|x| mul(x, g) as u32).collect()))
        .collect::<Result<Vec<_>>>()?;
    FiniteGroup::generate(label, n, perms, limit())
}

/// A direct product realized on the disjoint union of factor domains.
pub struct DirectProduct {
    pub group: Group,
    pub factors: Vec<Group>,
    pub projections: Vec<Homomorphism>,
    pub embeddings: Vec<Homomorphism>,
}

impl DirectProduct {
    /// The element with the given coordinates.
    pub fn element(&self, coords: &[usize]) -> usize {
        let p = Perm::disjoint_union(
            self.factors.iter().zip(coords).map(|(f, &c)| f.element(c)),
        );
        self.group.index_of(&p).expect("coordinates of a product element")
    }

    pub fn coords(&self, x: usize) -> Vec<usize> {
        self.projections.iter().map(|p| p.apply(x)).collect()
    }
}

pub fn direct_product(factors: &[Group]) -> Result<DirectProduct> {
    direct_product_bounded(factors, limit())
}

pub fn direct_product_bounded(factors: &[Group], bound: usize) -> Result<DirectProduct> {
    if factors.is_empty() {
        return Err(invalid("empty direct product"));
    }
    let size: u128 = factors.iter().map(|f| f.order() as u128).product();
    if size > bound as u128 {
        return Err(Error::bound("direct product", size, bound));
    }
    let degree: usize = factors.iter().map(|f| f.degree()).sum();
    let ids: Vec<Perm> = factors.iter().map(|f| f.element(0).clone()).collect();
    let mut gens = Vec::new();
    for (k, f) in factors.iter().enumerate() {
        for g in f.generator_perms() {
            let mut parts = ids.clone();
            parts[k] = g;
            gens.push(Perm::disjoint_union(parts.iter()));
        }
    }
    let label = factors.iter().map(|f| f.label().to_string()).collect::<Vec<_>>().join("x");
    let group = FiniteGroup::generate(label, degree, gens, bound)?;
    let mut projections = Vec::new();
    let mut offset = 0;
    for f in factors {
        let d = f.degree();
        let table = group
            .elements()
            .iter()
            .map(|p| {
                let slice: Vec<u32> =
                    p.images()[offset..offset + d].iter().map(|&x| x - offset as u32).collect();
                f.index_of(&Perm::from_images_unchecked(slice)).expect("factor coordinate") as u32
            })
            .collect();
        projections.push(Homomorphism::from_table(&group, f, table)?);
        offset += d;
    }
    let mut embeddings = Vec::new();
    for (k, f) in factors.iter().enumerate() {
        let images: Vec<usize> = f
            .generator_perms()
            .into_iter()
            .map(|g| {
                let mut parts = ids.clone();
                parts[k] = g;
                group.index_of(&Perm::disjoint_union(parts.iter())).unwrap()
            })
            .collect();
        embeddings.push(Homomorphism::from_generator_images(f, &group, &images)?);
    }
    Ok(DirectProduct { group, factors: factors.to_vec(), projections, embeddings })
}

/// `P ⋊ Q` where the `k`-th generator of `Q` acts on `P` by
/// `action[k]`; the product is `(p₁,q₁)(p₂,q₂) = (p₁·φ_{q₁}(p₂), q₁q₂)`.
/// Realized by its right regular representation.
pub struct Semidirect {
    pub group: Group,
    /// Element index of the pair `(p, q)` at `pair[p * |Q| + q]`.
    pair: Vec<u32>,
    q_order: usize,
}

impl Semidirect {
    pub fn element(&self, p: usize, q: usize) -> usize {
        self.pair[p * self.q_order + q] as usize
    }
}

pub fn semidirect(p: &Group, q: &Group, action: &[Homomorphism]) -> Result<Semidirect> {
    let qg = q.generators();
    if action.len() != qg.len() {
        return Err(invalid("one automorphism per generator of Q is needed"));
    }
    for a in action {
        if !a.source().same(p) || !a.target().same(p) || !a.is_bijective() {
            return Err(Error::NotAHomomorphism("action images must be automorphisms of P".into()));
        }
    }
    // φ on all of Q by Cayley propagation, φ_{x·g} = φ_x ∘ φ_g
    let np = p.order();
    let nq = q.order();
    let mut phi: Vec<Option<Vec<u32>>> = vec![None; nq];
    phi[0] = Some((0..np as u32).collect());
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let fx = phi[x].clone().unwrap();
        for (k, a) in action.iter().enumerate() {
            let y = q.generator_column(k)[x] as usize;
            let fy: Vec<u32> = (0..np).map(|e| fx[a.apply(e)]).collect();
            match &phi[y] {
                None => {
                    phi[y] = Some(fy);
                    queue.push_back(y);
                }
                Some(old) if *old != fy => {
                    return Err(Error::NotAHomomorphism(
                        "action does not define a homomorphism Q -> Aut(P)".into(),
                    ))
                }
                _ => {}
            }
        }
    }
    let phi: Vec<Vec<u32>> = phi.into_iter().map(Option::unwrap).collect();
    let n = np * nq;
    let enc = |a: usize, b: usize| a * nq + b;
    let mul = |x: usize, y: usize| {
        let (p1, q1) = (x / nq, x % nq);
        let (p2, q2) = (y / nq, y % nq);
        enc(p.mul(p1, phi[q1][p2] as usize), q.mul(q1, q2))
    };
    let mut gens: Vec<usize> = p.generators().into_iter().map(|a| enc(a, 0)).collect();
    gens.extend(qg.iter().map(|&b| enc(0, b)));
    let label = format!("{}:{}", p.label(), q.label());
    let group = from_multiplication(label, n, mul, &gens)?;
    if group.order() != n {
        return Err(Error::construction("semidirect", "regular representation lost elements"));
    }
    // recover the pair encoding: the element (a, b) moves the point 0 to enc(a, b)
    let mut pair = vec![0u32; n];
    for (idx, perm) in group.elements().iter().enumerate() {
        pair[perm.apply(0)] = idx as u32;
    }
    Ok(Semidirect { group, pair, q_order: nq })
}

/// `Z_p ⋊ Z_q` with `q | p − 1` and a faithful action.
pub fn frobenius(p: usize, q: usize) -> Result<Group> {
    if !is_prime(p) || q < 2 || !(p - 1).is_multiple_of(q) {
        return Err(invalid(format!("no Frobenius group Z{p}:Z{q}")));
    }
    let zp = cyclic(p)?;
    let zq = cyclic(q)?;
    // smallest multiplier of multiplicative order q
    let r = (2..p)
        .find(|&r| {
            let mut x = 1;
            let mut ord = 0;
            loop {
                x = x * r % p;
                ord += 1;
                if x == 1 {
                    break ord == q;
                }
            }
        })
        .ok_or_else(|| invalid("no multiplier of the right order"))?;
    let g = zp.generators()[0];
    let aut = Homomorphism::from_generator_images(&zp, &zp, &[zp.pow(g, r as i64)])?;
    Ok(semidirect(&zp, &zq, &[aut])?.group.relabeled(format!("F{}", p * q)))
}

/// Parses names such as `Z6`, `S3`, `A4`, `D8`, `Q8`, `F21`, `Z2^3`,
/// `Z2xZ4` and `F21xZ2`.
pub fn by_name(name: &str) -> Result<Group> {
    let name = name.trim();
    if name.contains('x') {
        let parts = name.split('x').map(by_name).collect::<Result<Vec<_>>>()?;
        return Ok(direct_product(&parts)?.group.relabeled(name));
    }
    if let Some((base, exp)) = name.split_once('^') {
        let k: usize = exp.parse().map_err(|_| Error::Malformed(format!("bad exponent in {name}")))?;
        let g = by_name(base)?;
        if k == 0 {
            return Ok(FiniteGroup::trivial());
        }
        return Ok(direct_product(&vec![g; k])?.group.relabeled(name));
    }
    if name == "1" {
        return Ok(FiniteGroup::trivial());
    }
    let (kind, num) = name.split_at(1);
    let n: usize = num.parse().map_err(|_| Error::Malformed(format!("unknown group name {name}")))?;
    match kind {
        "Z" | "C" => cyclic(n),
        "S" => symmetric(n),
        "A" => alternating(n),
        "D" => dihedral(n),
        "Q" => quaternion(n),
        "F" => {
            let &(p, _) = factorize(n).last().ok_or_else(|| invalid("F needs an order"))?;
            frobenius(p, n / p)
        }
        _ => Err(Error::Malformed(format!("unknown group name {name}"))),
    }
}
