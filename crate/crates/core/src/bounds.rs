use serde::{Deserialize, Serialize};

/// Size guards. Anything that would need to enumerate past one of these
/// reports an undecided result instead of guessing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// Largest group whose elements are enumerated.
    pub enumeration: usize,
    /// Largest group handed to the backtracking isomorphism search.
    pub isomorphism: usize,
    /// Largest group whose full automorphism group is enumerated.
    pub automorphism: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { enumeration: 20_000, isomorphism: 2_000, automorphism: 2_000 }
    }
}
