//! The Comp condition on a pair of sequences and the data it yields.
//!
//! Side `δ` is index `0` or `1` here; `σ_i` always runs side 0 → side 1,
//! so `σ^{δ̄−δ}` is `σ` from side 0 and `σ⁻¹` from side 1.

use std::collections::HashSet;
use std::ops::ControlFlow;

use super::sequence::GroupSequence;
use super::SubgroupIso;
use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::group::aut::{automorphism_set, stabilized};
use crate::group::hom::Homomorphism;
use crate::group::iso::{find_isomorphism, for_each_isomorphism};
use crate::group::subgroup::Subgroup;
use crate::group::Group;

/// Condition data at one level `2 ≤ i ≤ ℓ−1`.
#[derive(Clone, Debug)]
pub struct CompLevel {
    /// `alpha[d][x]`: automorphism of `S_{i;d}` stabilizing `ker π_{i;d}`,
    /// indexed by `x ∈ S_{i−1;1−d}`.
    pub alpha: [Vec<Homomorphism>; 2],
    /// `tau[d][x]`: least preimage of `x ∈ S_{i−1;d}` in `S_{i;d}`.
    pub tau: [Vec<usize>; 2],
}

#[derive(Clone, Debug)]
pub struct CompData {
    /// `sigma[i − 1] : ker π_{i;1} → ker π_{i;2}` for `1 ≤ i ≤ ℓ`.
    pub sigma: Vec<SubgroupIso>,
    /// `levels[i]` for `2 ≤ i ≤ ℓ−1`, `None` elsewhere.
    pub levels: Vec<Option<CompLevel>>,
}

impl CompData {
    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn sigma(&self, i: usize) -> &SubgroupIso {
        &self.sigma[i - 1]
    }

    pub fn level(&self, i: usize) -> &CompLevel {
        self.levels[i].as_ref().expect("condition data exists for 2 ≤ i ≤ ℓ−1")
    }

    /// Keeps levels `1..=keep` and appends a new top kernel isomorphism.
    pub fn truncated_with_top(&self, keep: usize, top: SubgroupIso) -> CompData {
        let mut sigma = self.sigma[..keep].to_vec();
        sigma.push(top);
        let mut levels = self.levels[..=keep].to_vec();
        levels.push(None);
        CompData { sigma, levels }
    }
}

/// Tables of `Inn(x)|_K` for every `x`, deduplicated.
fn inner_restrictions(k: &Subgroup) -> HashSet<Vec<u32>> {
    let g = k.parent();
    (0..g.order())
        .map(|x| k.members().map(|m| k.local(g.conj(x, m)).expect("K is normal") as u32).collect())
        .collect()
}

/// `Aut(S)_K` and the tables of its restrictions to `K`.
fn stabilizer_restrictions(k: &Subgroup, bound: usize) -> Result<(Vec<Homomorphism>, HashSet<Vec<u32>>)> {
    let all = automorphism_set(k.parent(), bound)?;
    let st = stabilized(&all, k).autos;
    let tables = st.iter().map(|a| restriction_table(a, k)).collect();
    Ok((st, tables))
}

fn restriction_table(a: &Homomorphism, k: &Subgroup) -> Vec<u32> {
    k.members().map(|m| k.local(a.apply(m)).expect("a stabilizes K") as u32).collect()
}

/// `f ∘ r ∘ f⁻¹` on local tables, for `f` given with its inverse.
fn conjugate_table(f: &[u32], finv: &[u32], r: &[u32]) -> Vec<u32> {
    (0..f.len()).map(|y| f[r[finv[y] as usize] as usize]).collect()
}

/// Searches for data witnessing the Comp condition. `Ok(None)` means the
/// kernels are isomorphic level by level but no `σ_i` satisfies the
/// condition at some level; incompatible kernels are a refuted hypothesis.
pub fn comp_membership(s: &[&GroupSequence; 2], bounds: &Bounds) -> Result<Option<CompData>> {
    let l = s[0].len();
    if s[1].len() != l {
        return Err(Error::Refuted("sequences have different lengths".into()));
    }
    if !s[0].is_surjective() || !s[1].is_surjective() {
        return Err(Error::Refuted("sequences must be surjective".into()));
    }
    let mut sigma = Vec::with_capacity(l);
    let mut levels = vec![None, None];
    for i in 1..=l {
        let k = [s[0].kernel(i), s[1].kernel(i)];
        let kg = [k[0].group(), k[1].group()];
        if i == 1 || i == l {
            let f = find_isomorphism(&kg[0], &kg[1], bounds.isomorphism)?
                .ok_or_else(|| Error::Refuted(format!("kernels at level {i} are not isomorphic")))?;
            sigma.push(SubgroupIso::from_local(&k[0], &k[1], f)?);
            continue;
        }
        let inn = [inner_restrictions(&k[0]), inner_restrictions(&k[1])];
        let (st0, a0) = stabilizer_restrictions(&k[0], bounds.automorphism)?;
        let (st1, a1) = stabilizer_restrictions(&k[1], bounds.automorphism)?;
        let mut found = None;
        let screened = for_each_isomorphism(&kg[0], &kg[1], &[], bounds.isomorphism, |f| {
            let finv = f.inverse().expect("isomorphism");
            let ok0 = inn[0].iter().all(|r| a1.contains(&conjugate_table(f.table(), finv.table(), r)));
            let ok1 = inn[1].iter().all(|r| a0.contains(&conjugate_table(finv.table(), f.table(), r)));
            if ok0 && ok1 {
                found = Some(f);
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        if !screened {
            return Err(Error::Refuted(format!("kernels at level {i} are not isomorphic")));
        }
        let Some(f) = found else {
            return Ok(None);
        };
        let sig = SubgroupIso::from_local(&k[0], &k[1], f)?;
        let level = derive_level(s, i, &sig, [&st0, &st1], &k)?;
        sigma.push(sig);
        levels.push(Some(level));
    }
    while levels.len() < l + 1 {
        levels.push(None);
    }
    Ok(Some(CompData { sigma, levels }))
}

/// `τ` and `α` at level `i` for a `σ_i` satisfying the condition.
fn derive_level(
    s: &[&GroupSequence; 2],
    i: usize,
    sig: &SubgroupIso,
    st: [&Vec<Homomorphism>; 2],
    k: &[Subgroup; 2],
) -> Result<CompLevel> {
    let mut tau: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for d in 0..2 {
        let pi = s[d].pi(i);
        let mut t = vec![usize::MAX; pi.target().order()];
        for y in 0..pi.source().order() {
            let x = pi.apply(y);
            if t[x] == usize::MAX {
                t[x] = y;
            }
        }
        tau[d] = t;
    }
    let sig_inv = sig.inverse()?;
    // transport from side d to side 1 − d
    let across = [&sig.map, &sig_inv.map];
    let back = [&sig_inv.map, &sig.map];
    let mut alpha: [Vec<Homomorphism>; 2] = [Vec::new(), Vec::new()];
    for d in 0..2 {
        let e = 1 - d;
        let g: &Group = s[d].group(i);
        let mut row = Vec::with_capacity(tau[d].len());
        for (x, &t) in tau[d].iter().enumerate() {
            let tinv = g.inv(t);
            let r: Vec<u32> =
                k[d].members().map(|m| k[d].local(g.conj(tinv, m)).unwrap() as u32).collect();
            let want = conjugate_table(across[d].table(), back[d].table(), &r);
            let a = if x == 0 {
                Homomorphism::identity(s[e].group(i))
            } else {
                st[e]
                    .iter()
                    .find(|a| restriction_table(a, &k[e]) == want)
                    .cloned()
                    .ok_or_else(|| {
                        Error::construction(
                            format!("comp level {i}"),
                            "no automorphism realizes a transported inner restriction",
                        )
                    })?
            };
            row.push(a);
        }
        alpha[e] = row;
    }
    Ok(CompLevel { alpha, tau })
}

/// Checks stored data against the defining identity: for every `x`,
/// `α_{d̄}(x)|_K = (σ^{±})_•(Inn(τ_d(x)⁻¹)|_K)` and each `α` stabilizes
/// the kernel.
pub fn check_comp_data(s: &[&GroupSequence; 2], data: &CompData) -> Result<()> {
    let l = s[0].len();
    for i in 2..l {
        let lv = data.level(i);
        let sig = data.sigma(i);
        let sig_inv = sig.inverse()?;
        let k = [s[0].kernel(i), s[1].kernel(i)];
        let across = [&sig.map, &sig_inv.map];
        let back = [&sig_inv.map, &sig.map];
        for d in 0..2 {
            let e = 1 - d;
            let g = s[d].group(i);
            for (x, &t) in lv.tau[d].iter().enumerate() {
                if s[d].pi(i).apply(t) != x {
                    return Err(Error::construction(format!("comp level {i}"), "τ is not a transversal"));
                }
                let a = &lv.alpha[e][x];
                if !a.is_homomorphism() || !a.is_bijective() || k[e].members().any(|m| !k[e].contains(a.apply(m))) {
                    return Err(Error::construction(format!("comp level {i}"), "α is not in Aut(S)_K"));
                }
                let tinv = g.inv(t);
                let r: Vec<u32> =
                    k[d].members().map(|m| k[d].local(g.conj(tinv, m)).unwrap() as u32).collect();
                let want = conjugate_table(across[d].table(), back[d].table(), &r);
                if restriction_table(a, &k[e]) != want {
                    return Err(Error::construction(format!("comp level {i}"), "α restriction mismatch"));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::construct::by_name;
    use crate::witness::series::central_series;
    use crate::witness::sequence::series_to_sequence;

    fn seq(name: &str) -> GroupSequence {
        let g = by_name(name).unwrap();
        let chain = central_series(&g).unwrap();
        series_to_sequence(&g, &chain, 20_000).unwrap()
    }

    #[test]
    fn length_two_pairs_are_members() {
        let a = seq("Z4");
        let b = seq("Z2xZ2");
        let d = comp_membership(&[&a, &b], &Bounds::default()).unwrap().unwrap();
        assert_eq!(d.sigma.len(), 2);
        assert!(d.levels.iter().all(Option::is_none));
    }

    #[test]
    fn central_series_of_d8_and_q8() {
        let a = seq("D8");
        let b = seq("Q8");
        assert_eq!(a.len(), 3);
        let d = comp_membership(&[&a, &b], &Bounds::default()).unwrap().unwrap();
        check_comp_data(&[&a, &b], &d).unwrap();
        // central kernels: every α restricts to the identity on K
        let lv = d.level(2);
        for (e, s) in [&a, &b].iter().enumerate() {
            let k = s.kernel(2);
            for al in &lv.alpha[e] {
                assert!(k.members().all(|m| al.apply(m) == m));
            }
        }
    }
}
