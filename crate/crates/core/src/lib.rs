//! Construction and independent verification of witness systems for
//! compatible finite groups.
//!
//! Two finite groups `L₁`, `L₂` are compatible when some group `G` has
//! isomorphic normal subgroups `N₁ ≅ N₂` with `G/N₁ ≅ L₁` and `G/N₂ ≅ L₂`.
//! The crate builds such `G` from inverse limits and hybrid wreath
//! products, and checks the resulting certificates from scratch.

pub mod bounds;
pub mod descriptor;
pub mod error;
pub mod group;
pub mod hybrid;
pub mod limit;
pub mod poset;
pub mod random;
pub mod witness;
pub mod wreath;

pub use bounds::Bounds;
pub use error::{Error, Result};
pub use group::hom::{quotient, Homomorphism};
pub use group::subgroup::Subgroup;
pub use group::{FiniteGroup, Group, Perm};
