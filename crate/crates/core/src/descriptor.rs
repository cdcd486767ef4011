//! JSON descriptors for groups, homomorphisms and inverse systems.
//!
//! A group is a name (`"D8"`, `"Z2xZ2"`, `"F21"`), a family
//! `{"kind": "dihedral", "params": [8]}`, a product
//! `{"product": [g, h, ...]}`, or explicit generators
//! `{"generators": [[...], ...], "degree": n}`. A homomorphism lists
//! generator-image pairs of permutations.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::construct::{
    alternating, by_name, cyclic, dihedral, direct_product_bounded, elementary_abelian, frobenius, quaternion,
    symmetric,
};
use crate::group::hom::Homomorphism;
use crate::group::{FiniteGroup, Group, Perm};
use crate::limit::InverseSystem;
use crate::poset::Poset;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupDescriptor {
    Name(String),
    Family {
        kind: String,
        #[serde(default)]
        params: Vec<usize>,
    },
    Product {
        product: Vec<GroupDescriptor>,
    },
    Generators {
        generators: Vec<Vec<u32>>,
        degree: usize,
    },
}

impl GroupDescriptor {
    pub fn of(g: &Group) -> Self {
        GroupDescriptor::Generators {
            generators: g.generator_perms().iter().map(|p| p.images().to_vec()).collect(),
            degree: g.degree(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.starts_with('{') || text.starts_with('"') {
            Ok(serde_json::from_str(text)?)
        } else {
            Ok(GroupDescriptor::Name(text.to_string()))
        }
    }

    pub fn build(&self, bound: usize) -> Result<Group> {
        match self {
            GroupDescriptor::Name(n) => by_name(n),
            GroupDescriptor::Family { kind, params } => {
                let want = |k: usize| {
                    if params.len() == k {
                        Ok(())
                    } else {
                        Err(Error::Malformed(format!("{kind} takes {k} parameter(s)")))
                    }
                };
                match kind.as_str() {
                    "trivial" => want(0).map(|_| FiniteGroup::trivial()),
                    "cyclic" => want(1).and_then(|_| cyclic(params[0])),
                    "symmetric" => want(1).and_then(|_| symmetric(params[0])),
                    "alternating" => want(1).and_then(|_| alternating(params[0])),
                    "dihedral" => want(1).and_then(|_| dihedral(params[0])),
                    "quaternion" => want(1).and_then(|_| quaternion(params[0])),
                    "elementary_abelian" => want(2).and_then(|_| elementary_abelian(params[0], params[1])),
                    "frobenius" => want(2).and_then(|_| frobenius(params[0], params[1])),
                    other => Err(Error::Malformed(format!("unknown group kind {other}"))),
                }
            }
            GroupDescriptor::Product { product } => {
                let parts = product.iter().map(|d| d.build(bound)).collect::<Result<Vec<_>>>()?;
                Ok(direct_product_bounded(&parts, bound)?.group)
            }
            GroupDescriptor::Generators { generators, degree } => {
                let gens = generators.iter().map(|v| Perm::from_images(v.clone())).collect::<Result<Vec<_>>>()?;
                if gens.iter().any(|g| g.degree() != *degree) {
                    return Err(Error::Malformed("generator degree differs from the stated degree".into()));
                }
                FiniteGroup::generate("G", *degree, gens, bound)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomDescriptor {
    pub source: GroupDescriptor,
    pub target: GroupDescriptor,
    /// `(x, f(x))` for elements `x` generating the source.
    pub images: Vec<(Vec<u32>, Vec<u32>)>,
}

/// The homomorphism `source → target` sending each listed permutation to
/// its partner; the listed elements must generate the source.
pub fn hom_from_pairs(source: &Group, target: &Group, pairs: &[(Perm, Perm)], bound: usize) -> Result<Homomorphism> {
    let mut xs = Vec::with_capacity(pairs.len());
    let mut ys = Vec::with_capacity(pairs.len());
    for (x, y) in pairs {
        xs.push(source.index_of(x).ok_or_else(|| Error::Malformed("a listed element is not in the source".into()))?);
        ys.push(target.index_of(y).ok_or_else(|| Error::Malformed("a listed image is not in the target".into()))?);
    }
    let gens: Vec<Perm> = pairs.iter().map(|(x, _)| x.clone()).collect();
    // regenerating from the listed elements reproduces the canonical order
    let onto = FiniteGroup::generate(source.label(), source.degree(), gens, bound.max(source.order()))?;
    if onto.order() != source.order() {
        return Err(Error::Malformed("listed elements do not generate the source".into()));
    }
    let images: Vec<usize> = ys;
    let f = Homomorphism::from_generator_images(&onto, target, &images)?;
    debug_assert!(xs.iter().zip(&images).all(|(&x, &y)| f.apply(x) == y));
    Homomorphism::from_table(source, target, f.table().to_vec())
}

impl HomDescriptor {
    pub fn build(&self, bound: usize) -> Result<Homomorphism> {
        let (s, t) = (self.source.build(bound)?, self.target.build(bound)?);
        let pairs = self
            .images
            .iter()
            .map(|(a, b)| Ok((Perm::from_images(a.clone())?, Perm::from_images(b.clone())?)))
            .collect::<Result<Vec<_>>>()?;
        hom_from_pairs(&s, &t, &pairs, bound)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeDescriptor {
    pub id: String,
    pub group: GroupDescriptor,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransitionDescriptor {
    /// The larger node; the map runs from its group.
    pub from: String,
    pub to: String,
    pub images: Vec<(Vec<u32>, Vec<u32>)>,
}

/// Nodes with groups, covering relations `[lower, upper]` by id, and one
/// transition per covering pair; longer composites are derived.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemDescriptor {
    pub nodes: Vec<NodeDescriptor>,
    pub leq: Vec<(String, String)>,
    pub transitions: Vec<TransitionDescriptor>,
}

impl SystemDescriptor {
    pub fn build(&self, bound: usize) -> Result<InverseSystem> {
        let find = |id: &str| {
            self.nodes.iter().position(|n| n.id == id).ok_or_else(|| Error::Malformed(format!("unknown node {id}")))
        };
        let groups = self.nodes.iter().map(|n| n.group.build(bound)).collect::<Result<Vec<_>>>()?;
        let pairs = self.leq.iter().map(|(a, b)| Ok((find(a)?, find(b)?))).collect::<Result<Vec<_>>>()?;
        let poset = Poset::with_labels(self.nodes.iter().map(|n| n.id.clone()).collect(), &pairs)?;
        let mut covers = Vec::new();
        for t in &self.transitions {
            let (j, i) = (find(&t.from)?, find(&t.to)?);
            let pairs = t
                .images
                .iter()
                .map(|(a, b)| Ok((Perm::from_images(a.clone())?, Perm::from_images(b.clone())?)))
                .collect::<Result<Vec<_>>>()?;
            covers.push(((i, j), hom_from_pairs(&groups[j], &groups[i], &pairs, bound)?));
        }
        InverseSystem::from_covers(poset, groups, covers)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limit::limit;

    #[test]
    fn group_forms() {
        for (text, order) in [
            ("D8", 8),
            (r#"{"kind": "frobenius", "params": [7, 3]}"#, 21),
            (r#"{"product": ["Z2", {"kind": "symmetric", "params": [3]}]}"#, 12),
            (r#"{"generators": [[1, 2, 0]], "degree": 3}"#, 3),
            (r#""Q8""#, 8),
        ] {
            let d = GroupDescriptor::parse(text).unwrap();
            assert_eq!(d.build(1000).unwrap().order(), order, "{text}");
        }
        assert!(GroupDescriptor::parse(r#"{"kind": "cyclic", "params": []}"#).unwrap().build(10).is_err());
    }

    #[test]
    fn descriptor_round_trip_keeps_element_order() {
        let g = by_name("S4").unwrap();
        let back = GroupDescriptor::of(&g).build(1000).unwrap();
        assert_eq!(g.elements(), back.elements());
    }

    #[test]
    fn hom_from_generator_pairs() {
        // Z4 → Z2, generator to generator
        let d = HomDescriptor {
            source: GroupDescriptor::Generators { generators: vec![vec![1, 2, 3, 0]], degree: 4 },
            target: GroupDescriptor::Generators { generators: vec![vec![1, 0]], degree: 2 },
            images: vec![(vec![1, 2, 3, 0], vec![1, 0])],
        };
        let f = d.build(100).unwrap();
        assert_eq!(f.kernel().order(), 2);
        // a non-homomorphic assignment is rejected
        let bad = HomDescriptor {
            source: GroupDescriptor::Generators { generators: vec![vec![1, 2, 0]], degree: 3 },
            target: GroupDescriptor::Generators { generators: vec![vec![1, 0]], degree: 2 },
            images: vec![(vec![1, 2, 0], vec![1, 0])],
        };
        assert!(bad.build(100).is_err());
    }

    #[test]
    fn system_from_json() {
        let text = r#"{
            "nodes": [
                {"id": "base", "group": {"generators": [[1, 0]], "degree": 2}},
                {"id": "a", "group": {"generators": [[1, 2, 3, 0]], "degree": 4}},
                {"id": "b", "group": {"generators": [[1, 2, 3, 0]], "degree": 4}}
            ],
            "leq": [["base", "a"], ["base", "b"]],
            "transitions": [
                {"from": "a", "to": "base", "images": [[[1, 2, 3, 0], [1, 0]]]},
                {"from": "b", "to": "base", "images": [[[1, 2, 3, 0], [1, 0]]]}
            ]
        }"#;
        let d: SystemDescriptor = serde_json::from_str(text).unwrap();
        let sys = d.build(1000).unwrap();
        assert_eq!(limit(&sys, 1000).unwrap().order(), 8);
    }
}
