//! A hand-built good witness for `(Z_p^n, Z_{p^n})` with
//! `G = Z_p × Z_{p^2} × … × Z_{p^n}`, and its composition down to
//! `(Z_p^{n−1}, Z_{p^{n−1}})`.

use super::build::compose_witness;
use super::certificate::{Provenance, WitnessCertificate};
use super::extend::Section;
use super::SubgroupIso;
use crate::error::{Error, Result};
use crate::group::construct::{cyclic, direct_product_bounded, is_prime, DirectProduct};
use crate::group::hom::{quotient, Homomorphism};
use crate::group::subgroup::Subgroup;
use crate::group::Group;

/// Exponent coordinates of a product of cyclic groups, each factor read
/// against its first generator.
struct Exponents {
    dp: DirectProduct,
    /// `log[i][c]`: exponent of coordinate `c` in factor `i`.
    log: Vec<Vec<usize>>,
    gen: Vec<usize>,
}

impl Exponents {
    fn new(moduli: &[usize], bound: usize) -> Result<Self> {
        let factors = moduli.iter().map(|&m| cyclic(m)).collect::<Result<Vec<_>>>()?;
        let dp = direct_product_bounded(&factors, bound)?;
        let mut log = Vec::new();
        let mut gen = Vec::new();
        for f in &dp.factors {
            let g = f.generators().first().copied().unwrap_or(0);
            let mut l = vec![0; f.order()];
            let mut x = 0;
            for e in 0..f.order() {
                l[x] = e;
                x = f.mul(x, g);
            }
            log.push(l);
            gen.push(g);
        }
        Ok(Exponents { dp, log, gen })
    }

    fn group(&self) -> &Group {
        &self.dp.group
    }

    fn exps(&self, x: usize) -> Vec<usize> {
        self.dp.coords(x).iter().enumerate().map(|(i, &c)| self.log[i][c]).collect()
    }

    fn element_of(&self, e: &[usize]) -> usize {
        let coords: Vec<usize> =
            e.iter().enumerate().map(|(i, &k)| self.dp.factors[i].pow(self.gen[i], k as i64)).collect();
        self.dp.element(&coords)
    }
}

/// The hand certificate together with the composed one.
#[derive(Clone, Debug)]
pub struct HandExample {
    pub certificate: WitnessCertificate,
    pub targets: [Group; 2],
    pub composed: WitnessCertificate,
    pub composed_targets: [Group; 2],
}

pub fn hand_example(p: usize, n: usize, bound: usize) -> Result<HandExample> {
    if !is_prime(p) || n < 2 {
        return Err(Error::InvalidParameter("need a prime p and n ≥ 2".into()));
    }
    let pn = p.pow(n as u32);
    let gm = Exponents::new(&(1..=n).map(|i| p.pow(i as u32)).collect::<Vec<_>>(), bound)?;
    let l1 = Exponents::new(&vec![p; n], bound)?;
    let l2 = Exponents::new(&[pn], bound)?;
    let g = gm.group().clone();
    // p1 : a_i ↦ x_i, p2 : a_i ↦ 1 for i < n, a_n ↦ y
    let p1 = Homomorphism::from_fn(&g, l1.group(), |x| {
        let e: Vec<usize> = gm.exps(x).iter().map(|k| k % p).collect();
        l1.element_of(&e)
    })?;
    let p2 = Homomorphism::from_fn(&g, l2.group(), |x| l2.element_of(&[gm.exps(x)[n - 1]]))?;
    // κ : a_i^p ↦ a_{i−1}
    let kernel_iso = SubgroupIso::from_parent_fn(&p1.kernel(), &p2.kernel(), |x| {
        let e = gm.exps(x);
        let mut f = vec![0; n];
        for i in 1..n {
            f[i - 1] = e[i] / p;
        }
        gm.element_of(&f)
    })?;
    let mut unit = vec![0; n];
    unit[0] = 1;
    let x1 = l1.element_of(&unit);
    let a1 = gm.element_of(&unit);
    let n1 = Subgroup::generated(l1.group(), &[x1]);
    let s1 = Section::from_parent_fn(&n1, &g, |x| {
        let mut e = vec![0; n];
        e[0] = l1.exps(x)[0];
        gm.element_of(&e)
    })?;
    debug_assert_eq!(s1.apply(x1), a1);
    let top = p.pow(n as u32 - 1);
    let n2 = Subgroup::generated(l2.group(), &[l2.element_of(&[top])]);
    let s2 = Section::from_parent_fn(&n2, &g, |y| {
        let mut e = vec![0; n];
        e[n - 1] = l2.exps(y)[0];
        gm.element_of(&e)
    })?;
    let mut checks = Vec::new();
    for (d, (s, pi)) in [(&s1, &p1), (&s2, &p2)].into_iter().enumerate() {
        let ok = s.defect(pi).is_none();
        checks.push((format!("section {} certifies goodness", d + 1), ok));
        if !ok {
            return Err(Error::construction("hand example", "section defect"));
        }
    }
    let certificate = WitnessCertificate {
        witness: g.clone(),
        p: [p1, p2],
        kernel_iso,
        good_at: [s1, s2],
        provenance: Provenance::leaf("hand example", [("witness", g.order()), ("p", p), ("n", n)], checks),
    };

    // π_1 : L_1 → L_1/⟨x_1⟩, π_2 : L_2 → L_2/⟨y^{p^{n−1}}⟩
    let (q1, pi1) = quotient(l1.group(), &certificate.good_at[0].domain, bound)?;
    let (q2, pi2) = quotient(l2.group(), &certificate.good_at[1].domain, bound)?;
    let sigma = SubgroupIso::from_parent_fn(&pi1.kernel(), &pi2.kernel(), |x| {
        l2.element_of(&[l1.exps(x)[0] * top])
    })?;
    let t1 = Section::from_parent_fn(&Subgroup::trivial(&q1), l1.group(), |_| 0)?;
    let t2 = Section::from_parent_fn(&Subgroup::trivial(&q2), l2.group(), |_| 0)?;
    let composed = compose_witness(&certificate, [&pi1, &pi2], &sigma, [&t1, &t2])?;
    Ok(HandExample {
        certificate,
        targets: [l1.group().clone(), l2.group().clone()],
        composed,
        composed_targets: [q1, q2],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::Bounds;
    use crate::group::construct::by_name;
    use crate::group::iso::find_isomorphism;
    use crate::witness::certificate::verify_witness;

    #[test]
    fn p2_n3_certificate_and_composition() {
        let ex = hand_example(2, 3, 20_000).unwrap();
        assert_eq!(ex.certificate.order(), 64);
        assert_eq!(ex.certificate.kernel_order(), 8);
        let b = Bounds::default();
        let r = verify_witness(&ex.certificate, [&ex.targets[0], &ex.targets[1]], &b);
        assert!(r.complete(), "{:?}", r.checks);
        assert_eq!(ex.certificate.good_at[0].domain.order(), 2);
        assert_eq!(ex.certificate.good_at[1].domain.order(), 2);
        let r = verify_witness(&ex.composed, [&ex.composed_targets[0], &ex.composed_targets[1]], &b);
        assert!(r.complete(), "{:?}", r.checks);
        let v4 = by_name("Z2xZ2").unwrap();
        let z4 = by_name("Z4").unwrap();
        assert!(find_isomorphism(&ex.composed_targets[0], &v4, 100).unwrap().is_some());
        assert!(find_isomorphism(&ex.composed_targets[1], &z4, 100).unwrap().is_some());
        assert_eq!(ex.composed.kernel_order(), 16);
    }

    #[test]
    fn odd_prime() {
        let ex = hand_example(3, 2, 20_000).unwrap();
        assert_eq!(ex.certificate.order(), 27);
        let r = verify_witness(&ex.certificate, [&ex.targets[0], &ex.targets[1]], &Bounds::default());
        assert!(r.complete(), "{:?}", r.checks);
    }
}
