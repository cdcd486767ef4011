use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{0, .., n-1}` stored as its image vector.
///
/// Permutations act on the right: `x^(ab) = (x^a)^b`, so `a.mul(&b)` applies
/// `a` first. Ordering is lexicographic on the image vector, which is the
/// canonical element order used everywhere in the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::InvalidParameter(format!(
                    "{images:?} is not a permutation"
                )));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    /// Builds a permutation of degree `n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut img: Vec<u32> = (0..n as u32).collect();
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                let y = cycle[(k + 1) % cycle.len()];
                if x as usize >= n || y as usize >= n {
                    return Err(Error::InvalidParameter(format!(
                        "cycle point out of range for degree {n}"
                    )));
                }
                img[x as usize] = y;
            }
        }
        Perm::from_images(img)
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        Perm(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    /// `self` followed by `other`.
    pub fn mul(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u64 {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut ord = 1u64;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            ord = lcm(ord, len);
        }
        ord
    }

    /// Concatenates permutations acting on consecutive blocks of points.
    pub fn disjoint_union<'a>(parts: impl IntoIterator<Item = &'a Perm>) -> Perm {
        let mut out = Vec::new();
        for p in parts {
            let shift = out.len() as u32;
            out.extend(p.0.iter().map(|&x| x + shift));
        }
        Perm(out)
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn right_action_composition() {
        let a = Perm::from_cycles(3, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        let ab = a.mul(&b);
        // 0 -a-> 1 -b-> 2
        assert_eq!(ab.apply(0), 2);
        assert_eq!(ab.order(), 3);
        assert!(ab.mul(&ab.inverse()).is_identity());
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn identity_is_lex_smallest() {
        let id = Perm::identity(3);
        let t = Perm::from_cycles(3, &[&[1, 2]]).unwrap();
        assert!(id < t);
    }

    #[test]
    fn disjoint_union_shifts_points() {
        let a = Perm::from_cycles(2, &[&[0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let u = Perm::disjoint_union([&a, &b]);
        assert_eq!(u.images(), &[1, 0, 3, 4, 2]);
        assert_eq!(u.order(), 6);
    }
}
