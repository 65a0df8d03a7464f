//! Finite posets over labelled elements.
//!
//! The order relation is stored as a closed incidence table: constructors
//! take any generating set of pairs, add the reflexive pairs and close
//! transitively, so `leq` is a plain table lookup afterwards.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PosetError {
    #[error("duplicate element label `{0}`")]
    DuplicateElement(String),
    #[error("order cycle: `{0}` and `{1}` are mutually reachable")]
    Cycle(String, String),
    #[error("unknown element label `{0}`")]
    UnknownElement(String),
}

/// A finite poset. Elements are indices into a stable label array.
#[derive(Debug, Clone)]
pub struct FinitePoset {
    labels: Vec<String>,
    rel: Vec<bool>, // row-major: rel[a * n + b] == (a <= b)
}

impl FinitePoset {
    /// Builds a poset from labels and generating `(lower, upper)` pairs.
    ///
    /// The relation is closed reflexively and transitively; the closure must
    /// be antisymmetric or a `Cycle` error names an offending pair.
    pub fn new<S: AsRef<str>>(labels: &[S], pairs: &[(S, S)]) -> Result<Self, PosetError> {
        let mut index = HashMap::new();
        let mut owned = Vec::with_capacity(labels.len());
        for l in labels {
            let l = l.as_ref().to_string();
            if index.insert(l.clone(), owned.len()).is_some() {
                return Err(PosetError::DuplicateElement(l));
            }
            owned.push(l);
        }
        let n = owned.len();
        let mut rel = vec![false; n * n];
        for i in 0..n {
            rel[i * n + i] = true;
        }
        for (a, b) in pairs {
            let ia = *index
                .get(a.as_ref())
                .ok_or_else(|| PosetError::UnknownElement(a.as_ref().to_string()))?;
            let ib = *index
                .get(b.as_ref())
                .ok_or_else(|| PosetError::UnknownElement(b.as_ref().to_string()))?;
            rel[ia * n + ib] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if rel[i * n + k] {
                    for j in 0..n {
                        if rel[k * n + j] {
                            rel[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if rel[i * n + j] && rel[j * n + i] {
                    return Err(PosetError::Cycle(owned[i].clone(), owned[j].clone()));
                }
            }
        }
        Ok(FinitePoset { labels: owned, rel })
    }

    /// Wraps an already closed, antisymmetric relation.
    pub(crate) fn from_closed(labels: Vec<String>, rel: Vec<bool>) -> Self {
        debug_assert_eq!(rel.len(), labels.len() * labels.len());
        FinitePoset { labels, rel }
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

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.rel[a * self.len() + b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// Up-set of a set: everything above some member.
    pub fn upset(&self, s: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| s.iter().any(|&m| self.leq(m, x)))
            .collect()
    }

    /// Down-set of a set: everything below some member.
    pub fn downset(&self, s: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| s.iter().any(|&m| self.leq(x, m)))
            .collect()
    }

    /// Members of `s` with nothing of `s` strictly below them.
    pub fn minimal_of(&self, s: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = s
            .iter()
            .copied()
            .filter(|&m| !s.iter().any(|&x| self.lt(x, m)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Members of `s` with nothing of `s` strictly above them.
    pub fn maximal_of(&self, s: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = s
            .iter()
            .copied()
            .filter(|&m| !s.iter().any(|&x| self.lt(m, x)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Covering pairs `(a, b)`: `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.lt(a, b) && !(0..n).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Hasse diagram in DOT format: one node per element, one edge per cover.
    pub fn to_hasse_dot(&self) -> String {
        let mut s = String::from("digraph hasse {\n  rankdir=BT;\n");
        for l in &self.labels {
            let _ = writeln!(s, "  \"{l}\";");
        }
        for (a, b) in self.covers() {
            let _ = writeln!(s, "  \"{}\" -> \"{}\";", self.labels[a], self.labels[b]);
        }
        s.push_str("}\n");
        s
    }
}
