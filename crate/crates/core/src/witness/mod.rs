//! Group sequences, the Comp condition, and the recursive construction of
//! good witness systems together with their certificates.

pub mod build;
pub mod certificate;
pub mod comp;
pub mod extend;
pub mod goodwit;
pub mod sequence;
pub mod series;
pub mod stretch;

pub use build::{
    build_good_witness, build_recursion_step, build_witness_length2, compose_witness, RecursionStep,
};
pub use certificate::{verify_witness, Provenance, VerificationReport, WitnessCertificate};
pub use comp::{comp_membership, CompData};
pub use extend::{all_subgroups, find_section, is_trivially_extendable, Extendability, Section};
pub use sequence::{sequence_to_series, series_to_sequence, GroupSequence};
pub use series::{central_series, square_free_series, witness_nilpotent, witness_square_free};

use crate::error::{Error, Result};
use crate::group::hom::Homomorphism;
use crate::group::subgroup::Subgroup;

/// An isomorphism between two subgroups, stored on their local indices.
#[derive(Clone, Debug)]
pub struct SubgroupIso {
    pub source: Subgroup,
    pub target: Subgroup,
    /// `source.group() → target.group()`.
    pub map: Homomorphism,
}

impl SubgroupIso {
    /// Builds the map from a function on parent indices and checks that
    /// it is a bijective homomorphism.
    pub fn from_parent_fn(
        source: &Subgroup,
        target: &Subgroup,
        f: impl Fn(usize) -> usize,
    ) -> Result<Self> {
        let mut table = Vec::with_capacity(source.order());
        for x in source.members() {
            let y = f(x);
            let l = target.local(y).ok_or_else(|| {
                Error::Containment("kernel map leaves its target subgroup".into())
            })?;
            table.push(l as u32);
        }
        let map = Homomorphism::from_table(&source.group(), &target.group(), table)?;
        if !map.is_bijective() {
            return Err(Error::Mismatch("kernel map is not bijective".into()));
        }
        Ok(SubgroupIso { source: source.clone(), target: target.clone(), map })
    }

    /// Wraps a map between the subgroups viewed as groups.
    pub fn from_local(source: &Subgroup, target: &Subgroup, map: Homomorphism) -> Result<Self> {
        if !map.source().same(&source.group()) || !map.target().same(&target.group()) {
            return Err(Error::Mismatch("map does not run between the given subgroups".into()));
        }
        Ok(SubgroupIso { source: source.clone(), target: target.clone(), map })
    }

    pub fn apply(&self, x: usize) -> usize {
        let l = self.source.local(x).expect("argument lies in the source subgroup");
        self.target.lift(self.map.apply(l))
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(SubgroupIso {
            source: self.target.clone(),
            target: self.source.clone(),
            map: self.map.inverse()?,
        })
    }

    /// Bijective homomorphism between the stated subgroups.
    pub fn is_valid(&self) -> bool {
        self.map.source().same(&self.source.group())
            && self.map.target().same(&self.target.group())
            && self.map.is_homomorphism()
            && self.map.is_bijective()
    }
}
