//! Finite posets, the in-forest property, ranks and meets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    nodes: Vec<serde_json::Value>,
    leq: Vec<(serde_json::Value, serde_json::Value)>,
}

impl Poset {
    /// Builds the reflexive-transitive closure of `pairs` on `n` nodes and
    /// rejects it unless antisymmetric.
    pub fn new(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::with_labels((0..n).map(|i| i.to_string()).collect(), pairs)
    }

    pub fn with_labels(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(Error::InvalidParameter(format!("pair ({i},{j}) names an unknown node")));
            }
            leq[i][j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::InvalidParameter(format!(
                        "relation is not antisymmetric on {i} and {j}"
                    )));
                }
            }
        }
        Ok(Poset { labels, leq })
    }

    /// Reads `{"nodes": [...], "leq": [[i, j], ...]}` where pair entries
    /// are node values.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: PosetJson = serde_json::from_str(text)?;
        let find = |v: &serde_json::Value| {
            raw.nodes
                .iter()
                .position(|n| n == v)
                .ok_or_else(|| Error::Malformed(format!("unknown node {v}")))
        };
        let pairs = raw
            .leq
            .iter()
            .map(|(a, b)| Ok((find(a)?, find(b)?)))
            .collect::<Result<Vec<_>>>()?;
        let labels = raw
            .nodes
            .iter()
            .map(|v| v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string()))
            .collect();
        Self::with_labels(labels, &pairs)
    }

    pub fn to_json(&self) -> String {
        let nodes: Vec<serde_json::Value> =
            (0..self.len()).map(serde_json::Value::from).collect();
        let mut leq = Vec::new();
        for i in 0..self.len() {
            for j in self.upper_covers(i) {
                leq.push((serde_json::Value::from(i), serde_json::Value::from(j)));
            }
        }
        serde_json::to_string(&PosetJson { nodes, leq }).expect("poset serializes")
    }

    /// A chain `0 < 1 < … < n−1`.
    pub fn chain(n: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &pairs).expect("a chain is a poset")
    }

    /// Root `0` below leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Self {
        let pairs: Vec<(usize, usize)> = (1..=leaves).map(|i| (0, i)).collect();
        Self::new(leaves + 1, &pairs).expect("a star is a poset")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    fn check(&self, i: usize) -> Result<()> {
        if i >= self.len() {
            return Err(Error::InvalidParameter(format!("unknown node {i}")));
        }
        Ok(())
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq[i][j]
    }

    /// All comparable pairs `(i, j)` with `i < j`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if self.lt(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn downset(&self, i: usize) -> Result<Vec<usize>> {
        self.check(i)?;
        Ok((0..self.len()).filter(|&k| self.leq[k][i]).collect())
    }

    fn is_chain(&self, nodes: &[usize]) -> bool {
        nodes
            .iter()
            .all(|&a| nodes.iter().all(|&b| self.leq[a][b] || self.leq[b][a]))
    }

    /// Every downset is totally ordered.
    pub fn is_in_forest(&self) -> bool {
        (0..self.len()).all(|i| self.is_chain(&self.downset(i).unwrap()))
    }

    fn require_in_forest(&self) -> Result<()> {
        if !self.is_in_forest() {
            return Err(Error::InvalidParameter("poset is not an in-forest".into()));
        }
        Ok(())
    }

    /// `ρ(i) = |↓i| − 1`.
    pub fn rank(&self, i: usize) -> Result<usize> {
        self.require_in_forest()?;
        Ok(self.downset(i)?.len() - 1)
    }

    /// The greatest common lower bound, if any.
    pub fn meet(&self, i: usize, j: usize) -> Result<Option<usize>> {
        self.check(i)?;
        self.check(j)?;
        self.require_in_forest()?;
        // common lower bounds form a chain; take its top
        let common: Vec<usize> =
            (0..self.len()).filter(|&k| self.leq[k][i] && self.leq[k][j]).collect();
        Ok(common.into_iter().max_by_key(|&k| self.downset(k).unwrap().len()))
    }

    /// Nodes covering `i` from above.
    pub fn upper_covers(&self, i: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| self.lt(i, j) && !(0..self.len()).any(|k| self.lt(i, k) && self.lt(k, j)))
            .collect()
    }

    /// In an in-forest every non-minimal node has exactly one lower cover.
    pub fn lower_cover(&self, j: usize) -> Option<usize> {
        (0..self.len())
            .filter(|&i| self.lt(i, j))
            .max_by_key(|&i| self.downset(i).unwrap().len())
    }

    /// Nodes sorted so that every node comes after everything below it.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.downset(i).unwrap().len(), i));
        order
    }
}
