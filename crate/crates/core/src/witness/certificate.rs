//! Witness certificates, their JSON form, and a verifier that re-derives
//! every claim from the stored data alone.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::extend::Section;
use super::SubgroupIso;
use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::group::hom::{quotient, Homomorphism};
use crate::group::iso::find_isomorphism;
use crate::group::subgroup::Subgroup;
use crate::group::{FiniteGroup, Group, Perm};

/// What was built at each stage and which internal checks it passed.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub step: String,
    pub orders: BTreeMap<String, usize>,
    pub checks: Vec<(String, bool)>,
    pub children: Vec<Provenance>,
}

impl Provenance {
    pub fn leaf<const N: usize>(step: &str, orders: [(&str, usize); N], checks: Vec<(String, bool)>) -> Self {
        Provenance {
            step: step.to_string(),
            orders: orders.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            checks,
            children: Vec::new(),
        }
    }

    /// Every recorded check in this tree, depth first.
    pub fn all_checks(&self) -> Vec<(String, bool)> {
        let mut out = self.checks.clone();
        for c in &self.children {
            out.extend(c.all_checks());
        }
        out
    }

    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(Provenance::depth).max().unwrap_or(0)
    }
}

/// `G` with `p_δ : G ↠ L_δ`, `κ : ker p_1 → ker p_2`, and sections showing
/// `p_δ` is trivially extendable at `N_δ`.
#[derive(Clone, Debug)]
pub struct WitnessCertificate {
    pub witness: Group,
    pub p: [Homomorphism; 2],
    pub kernel_iso: SubgroupIso,
    pub good_at: [Section; 2],
    pub provenance: Provenance,
}

impl WitnessCertificate {
    pub fn order(&self) -> usize {
        self.witness.order()
    }

    pub fn kernel_order(&self) -> usize {
        self.kernel_iso.source.order()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CheckStatus {
    Pass,
    Fail(String),
    Skipped(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    fn push(&mut self, name: impl Into<String>, status: CheckStatus) {
        self.checks.push(Check { name: name.into(), status });
    }

    fn check(&mut self, name: impl Into<String>, ok: bool, why: impl FnOnce() -> String) {
        let status = if ok { CheckStatus::Pass } else { CheckStatus::Fail(why()) };
        self.push(name, status);
    }

    /// No failures. Skipped checks do not count against the report.
    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }

    /// Passed with nothing skipped.
    pub fn complete(&self) -> bool {
        self.checks.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| matches!(c.status, CheckStatus::Fail(_))).collect()
    }
}

/// Checks a certificate against `L_1`, `L_2` from scratch. Nothing in the
/// provenance is trusted except the final "recorded checks" line, which
/// only reports what the builder claimed.
pub fn verify_witness(cert: &WitnessCertificate, l: [&Group; 2], bounds: &Bounds) -> VerificationReport {
    let mut r = VerificationReport::default();
    let g = &cert.witness;
    let mut kernels: Vec<Option<Subgroup>> = vec![None, None];
    for d in 0..2 {
        let p = &cert.p[d];
        let tag = d + 1;
        let shaped = p.source().same(g) && p.table().len() == g.order();
        r.check(format!("p{tag} starts at the witness"), shaped, || "source mismatch".into());
        if !shaped {
            continue;
        }
        let hom = p.is_homomorphism();
        r.check(format!("p{tag} is a homomorphism"), hom, || "multiplication is not preserved".into());
        if !hom {
            continue;
        }
        let im = p.image().order();
        r.check(format!("p{tag} is surjective"), im == p.target().order(), || {
            format!("image has order {im} of {}", p.target().order())
        });
        let k = p.kernel();
        r.check(
            format!("|G| = |L{tag}|·|ker p{tag}|"),
            g.order() == l[d].order() * k.order(),
            || format!("{} ≠ {}·{}", g.order(), l[d].order(), k.order()),
        );
        if l[d].order() > bounds.isomorphism {
            r.push(format!("G/ker p{tag} ≅ L{tag}"), CheckStatus::Skipped(format!("|L{tag}| above the isomorphism bound")));
        } else {
            let status = match quotient(g, &k, bounds.enumeration)
                .and_then(|(q, _)| find_isomorphism(&q, l[d], bounds.isomorphism))
            {
                Ok(Some(_)) => CheckStatus::Pass,
                Ok(None) => CheckStatus::Fail("quotient is not isomorphic".into()),
                Err(e) if e.is_undecided() => CheckStatus::Skipped(e.to_string()),
                Err(e) => CheckStatus::Fail(e.to_string()),
            };
            r.push(format!("G/ker p{tag} ≅ L{tag}"), status);
        }
        kernels[d] = Some(k);
    }
    let (Some(k0), Some(k1)) = (&kernels[0], &kernels[1]) else {
        r.push("kernel isomorphism", CheckStatus::Skipped("projections are broken".into()));
        return r;
    };
    let iso = &cert.kernel_iso;
    let placed = iso.source == *k0 && iso.target == *k1;
    r.check("κ runs ker p1 → ker p2", placed, || "κ is stated on other subgroups".into());
    r.check("κ is a bijective homomorphism", iso.is_valid(), || "κ fails as an isomorphism".into());
    if k0.order() > bounds.isomorphism {
        r.push("ker p1 ≅ ker p2 by search", CheckStatus::Skipped("kernels above the isomorphism bound".into()));
    } else {
        let status = match find_isomorphism(&k0.group(), &k1.group(), bounds.isomorphism) {
            Ok(Some(_)) => CheckStatus::Pass,
            Ok(None) => CheckStatus::Fail("kernels are not isomorphic".into()),
            Err(e) if e.is_undecided() => CheckStatus::Skipped(e.to_string()),
            Err(e) => CheckStatus::Fail(e.to_string()),
        };
        r.push("ker p1 ≅ ker p2 by search", status);
    }
    for d in 0..2 {
        let sec = &cert.good_at[d];
        let defect = sec.defect(&cert.p[d]);
        let name = format!("p{} is trivially extendable at a subgroup of order {}", d + 1, sec.domain.order());
        r.check(name, defect.is_none(), || defect.clone().unwrap_or_default());
    }
    let recorded = cert.provenance.all_checks();
    let bad: Vec<&String> = recorded.iter().filter(|(_, ok)| !ok).map(|(n, _)| n).collect();
    r.check("recorded construction checks", bad.is_empty(), || format!("{bad:?}"));
    r
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupJson {
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
}

impl GroupJson {
    pub fn of(g: &Group) -> Self {
        GroupJson { degree: g.degree(), generators: g.generator_perms().iter().map(|p| p.images().to_vec()).collect() }
    }

    pub fn build(&self, label: &str, bound: usize) -> Result<Group> {
        let gens = self.generators.iter().map(|v| Perm::from_images(v.clone())).collect::<Result<Vec<_>>>()?;
        FiniteGroup::generate(label, self.degree, gens, bound)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectionJson {
    /// Parent indices of `N` in `L`, in increasing order.
    pub domain: Vec<u32>,
    /// `s(n)` for each listed `n`.
    pub images: Vec<u32>,
}

/// Groups are stored by generators; elements are canonical indices of the
/// enumerated groups, which regeneration reproduces.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub witness: GroupJson,
    pub targets: [GroupJson; 2],
    pub p: [Vec<u32>; 2],
    /// `(x, κ(x))` over `ker p1`.
    pub kernel_iso: Vec<(u32, u32)>,
    pub good_at: [SectionJson; 2],
    pub provenance: Provenance,
}

impl CertificateJson {
    pub fn of(cert: &WitnessCertificate) -> Self {
        let sec = |s: &Section| SectionJson {
            domain: s.domain.members().map(|x| x as u32).collect(),
            images: s.domain.members().map(|x| s.apply(x) as u32).collect(),
        };
        CertificateJson {
            witness: GroupJson::of(&cert.witness),
            targets: [GroupJson::of(cert.p[0].target()), GroupJson::of(cert.p[1].target())],
            p: [cert.p[0].table().to_vec(), cert.p[1].table().to_vec()],
            kernel_iso: cert
                .kernel_iso
                .source
                .members()
                .map(|x| (x as u32, cert.kernel_iso.apply(x) as u32))
                .collect(),
            good_at: [sec(&cert.good_at[0]), sec(&cert.good_at[1])],
            provenance: cert.provenance.clone(),
        }
    }

    /// Rebuilds the certificate without checking any of its claims, so that
    /// a tampered file loads and then fails verification.
    pub fn load(&self, bound: usize) -> Result<WitnessCertificate> {
        let g = self.witness.build("witness", bound)?;
        let l = [self.targets[0].build("L1", bound)?, self.targets[1].build("L2", bound)?];
        let malformed = |what: &str| Error::Malformed(what.to_string());
        let mut p = Vec::new();
        for d in 0..2 {
            let t = &self.p[d];
            if t.len() != g.order() || t.iter().any(|&y| y as usize >= l[d].order()) {
                return Err(malformed("projection table does not fit the groups"));
            }
            p.push(Homomorphism::from_table_unchecked(&g, &l[d], t.clone())?);
        }
        let in_range = |v: u32, n: usize| (v as usize) < n;
        if self.kernel_iso.iter().any(|&(a, b)| !in_range(a, g.order()) || !in_range(b, g.order())) {
            return Err(malformed("kernel map mentions elements outside the witness"));
        }
        let src: Vec<usize> = self.kernel_iso.iter().map(|&(a, _)| a as usize).collect();
        let dst: Vec<usize> = self.kernel_iso.iter().map(|&(_, b)| b as usize).collect();
        let source = Subgroup::from_members(&g, &src)?;
        let target = Subgroup::from_members(&g, &dst)?;
        if source.order() != src.len() || target.order() != dst.len() {
            return Err(malformed("kernel map is not a bijection between subgroups"));
        }
        let mut table = vec![0u32; source.order()];
        for (&a, &b) in src.iter().zip(&dst) {
            table[source.local(a).unwrap()] = target.local(b).unwrap() as u32;
        }
        let map = Homomorphism::from_table_unchecked(&source.group(), &target.group(), table)?;
        let kernel_iso = SubgroupIso { source, target, map };
        let mut good_at = Vec::new();
        for d in 0..2 {
            let s = &self.good_at[d];
            if s.domain.len() != s.images.len()
                || s.domain.iter().any(|&x| !in_range(x, l[d].order()))
                || s.images.iter().any(|&y| !in_range(y, g.order()))
            {
                return Err(malformed("section does not fit the groups"));
            }
            let members: Vec<usize> = s.domain.iter().map(|&x| x as usize).collect();
            let domain = Subgroup::from_members(&l[d], &members)?;
            if domain.order() != members.len() {
                return Err(malformed("section domain is not a subgroup"));
            }
            let mut table = vec![0u32; domain.order()];
            for (&x, &y) in s.domain.iter().zip(&s.images) {
                table[domain.local(x as usize).unwrap()] = y;
            }
            let map = Homomorphism::from_table_unchecked(&domain.group(), &g, table)?;
            good_at.push(Section { domain, map });
        }
        let [p0, p1]: [Homomorphism; 2] = p.try_into().ok().unwrap();
        let [s0, s1]: [Section; 2] = good_at.try_into().ok().unwrap();
        Ok(WitnessCertificate {
            witness: g,
            p: [p0, p1],
            kernel_iso,
            good_at: [s0, s1],
            provenance: self.provenance.clone(),
        })
    }
}

pub fn to_json(cert: &WitnessCertificate) -> Result<String> {
    serde_json::to_string_pretty(&CertificateJson::of(cert)).map_err(|e| Error::Malformed(e.to_string()))
}

pub fn from_json(text: &str, bound: usize) -> Result<WitnessCertificate> {
    let j: CertificateJson = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    j.load(bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::construct::by_name;
    use crate::witness::series::witness_nilpotent;

    fn z4_v4() -> (WitnessCertificate, [Group; 2]) {
        let (a, b) = (by_name("Z4").unwrap(), by_name("Z2xZ2").unwrap());
        let cert = witness_nilpotent(&a, &b, &Bounds::default()).unwrap();
        (cert, [a, b])
    }

    #[test]
    fn json_round_trip_verifies() {
        let (cert, _) = z4_v4();
        let text = to_json(&cert).unwrap();
        let back = from_json(&text, 10_000).unwrap();
        assert_eq!(back.order(), 8);
        assert_eq!(CertificateJson::of(&back), CertificateJson::of(&cert));
        let t = [back.p[0].target().clone(), back.p[1].target().clone()];
        assert!(verify_witness(&back, [&t[0], &t[1]], &Bounds::default()).complete());
    }

    #[test]
    fn tampered_projection_fails() {
        let (cert, l) = z4_v4();
        let mut j = CertificateJson::of(&cert);
        let last = j.p[0].len() - 1;
        j.p[0][last] = (j.p[0][last] + 1) % 4;
        let bad = j.load(10_000).unwrap();
        let r = verify_witness(&bad, [&l[0], &l[1]], &Bounds::default());
        assert!(!r.passed());
    }

    #[test]
    fn tampered_kernel_map_fails() {
        let (cert, l) = z4_v4();
        let mut j = CertificateJson::of(&cert);
        // send the non-identity kernel element to the identity as well
        for pair in j.kernel_iso.iter_mut() {
            pair.1 = 0;
        }
        match j.load(10_000) {
            Ok(bad) => assert!(!verify_witness(&bad, [&l[0], &l[1]], &Bounds::default()).passed()),
            Err(e) => assert!(matches!(e, Error::Malformed(_))),
        }
    }

    #[test]
    fn tampered_section_fails() {
        let (cert, l) = z4_v4();
        let mut j = CertificateJson::of(&cert);
        for y in j.good_at[1].images.iter_mut() {
            *y = 0;
        }
        let bad = j.load(10_000).unwrap();
        let r = verify_witness(&bad, [&l[0], &l[1]], &Bounds::default());
        assert!(r.failures().iter().any(|c| c.name.contains("trivially extendable")));
    }

    #[test]
    fn wrong_targets_fail() {
        let (cert, _) = z4_v4();
        let z8 = by_name("Z8").unwrap();
        let r = verify_witness(&cert, [&z8, &z8], &Bounds::default());
        assert!(!r.passed());
    }
}
