//! Finite lattices: join/meet tables, Heyting implication, connectivity
//! (join-primeness) and connected decompositions.

use thiserror::Error;

use crate::poset::FinitePoset;

/// Cap on the element count of a generated down-set lattice.
pub const DEFAULT_DOWNSET_CAP: u128 = 1 << 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("not a lattice: `{a}` and `{b}` have no {kind}")]
    NotLattice {
        a: String,
        b: String,
        kind: &'static str,
    },
    #[error("no Heyting arrow for (`{0}`, `{1}`): the candidate set has no maximum")]
    NotHeyting(String, String),
    #[error("element `{0}` has no connected decomposition")]
    NoDecomposition(String),
    #[error("down-set lattice of {points} points would have 2^{points} elements, cap is {cap}")]
    SizeLimit { points: usize, cap: u128 },
    #[error("empty poset has no lattice bounds")]
    Empty,
}

/// Result of a predicate scan: `holds`, or a counterexample tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
}

impl CheckOutcome {
    fn ok() -> Self {
        CheckOutcome {
            holds: true,
            witness: None,
        }
    }

    fn fail(witness: Vec<usize>) -> Self {
        CheckOutcome {
            holds: false,
            witness: Some(witness),
        }
    }
}

/// Heyting implication table: `arrow(b, c)` is the largest `a` with
/// `a ∧ b ≤ c`.
#[derive(Debug, Clone)]
pub struct HeytingTable {
    n: usize,
    arrow: Vec<usize>,
}

impl HeytingTable {
    pub fn arrow(&self, b: usize, c: usize) -> usize {
        self.arrow[b * self.n + c]
    }
}

/// The connected (join-prime) elements of a lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectedSet {
    pub members: Vec<usize>,
}

impl ConnectedSet {
    pub fn contains(&self, a: usize) -> bool {
        self.members.binary_search(&a).is_ok()
    }
}

/// A finite bounded lattice with explicit join/meet tables.
#[derive(Debug, Clone)]
pub struct FiniteLattice {
    poset: FinitePoset,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
    cn: std::sync::OnceLock<Vec<usize>>,
}

/// Checks whether every pair of the poset has a least upper bound and a
/// greatest lower bound; the witness is the first failing pair.
pub fn is_lattice(p: &FinitePoset) -> CheckOutcome {
    if p.is_empty() {
        return CheckOutcome::fail(vec![]);
    }
    for a in 0..p.len() {
        for b in 0..p.len() {
            if bound_of(p, a, b, true).is_none() || bound_of(p, a, b, false).is_none() {
                return CheckOutcome::fail(vec![a, b]);
            }
        }
    }
    CheckOutcome::ok()
}

fn bound_of(p: &FinitePoset, a: usize, b: usize, upper: bool) -> Option<usize> {
    let cands: Vec<usize> = (0..p.len())
        .filter(|&c| {
            if upper {
                p.leq(a, c) && p.leq(b, c)
            } else {
                p.leq(c, a) && p.leq(c, b)
            }
        })
        .collect();
    cands.iter().copied().find(|&c| {
        cands
            .iter()
            .all(|&d| if upper { p.leq(c, d) } else { p.leq(d, c) })
    })
}

impl FiniteLattice {
    /// Builds the join/meet tables, failing on the first pair without a
    /// least upper bound or greatest lower bound.
    pub fn try_from_poset(poset: FinitePoset) -> Result<Self, LatticeError> {
        let n = poset.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut join = vec![0usize; n * n];
        let mut meet = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                join[a * n + b] =
                    bound_of(&poset, a, b, true).ok_or_else(|| LatticeError::NotLattice {
                        a: poset.label(a).to_string(),
                        b: poset.label(b).to_string(),
                        kind: "least upper bound",
                    })?;
                meet[a * n + b] =
                    bound_of(&poset, a, b, false).ok_or_else(|| LatticeError::NotLattice {
                        a: poset.label(a).to_string(),
                        b: poset.label(b).to_string(),
                        kind: "greatest lower bound",
                    })?;
            }
        }
        let bottom = (0..n)
            .find(|&x| (0..n).all(|y| poset.leq(x, y)))
            .ok_or(LatticeError::Empty)?;
        let top = (0..n)
            .find(|&x| (0..n).all(|y| poset.leq(y, x)))
            .ok_or(LatticeError::Empty)?;
        Ok(FiniteLattice {
            poset,
            join,
            meet,
            bottom,
            top,
            cn: std::sync::OnceLock::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn label(&self, i: usize) -> &str {
        self.poset.label(i)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.poset.index_of(label)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Join of a finite family; the empty join is the bottom.
    pub fn join_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Meet of a finite family; the empty meet is the top.
    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, xs: I) -> usize {
        xs.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Distributivity scan: `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)` for all
    /// triples; the witness is the first failing triple.
    pub fn is_distributive(&self) -> CheckOutcome {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return CheckOutcome::fail(vec![a, b, c]);
                    }
                }
            }
        }
        CheckOutcome::ok()
    }

    /// The largest `a` with `a ∧ b ≤ c`, found by scanning candidates.
    pub fn heyting_arrow(&self, b: usize, c: usize) -> Result<usize, LatticeError> {
        let cands: Vec<usize> = (0..self.len())
            .filter(|&a| self.leq(self.meet(a, b), c))
            .collect();
        cands
            .iter()
            .copied()
            .find(|&m| cands.iter().all(|&a| self.leq(a, m)))
            .ok_or_else(|| {
                LatticeError::NotHeyting(self.label(b).to_string(), self.label(c).to_string())
            })
    }

    pub fn is_heyting(&self) -> bool {
        self.heyting_table().is_ok()
    }

    pub fn heyting_table(&self) -> Result<HeytingTable, LatticeError> {
        let n = self.len();
        let mut arrow = vec![0usize; n * n];
        for b in 0..n {
            for c in 0..n {
                arrow[b * n + c] = self.heyting_arrow(b, c)?;
            }
        }
        Ok(HeytingTable { n, arrow })
    }

    /// An element is connected when `a ≤ b ∨ c` forces `a ≤ b` or `a ≤ c`.
    pub fn is_connected(&self, a: usize) -> bool {
        let n = self.len();
        for b in 0..n {
            for c in 0..n {
                if self.leq(a, self.join(b, c)) && !self.leq(a, b) && !self.leq(a, c) {
                    return false;
                }
            }
        }
        true
    }

    fn connected_members(&self) -> &[usize] {
        self.cn
            .get_or_init(|| (0..self.len()).filter(|&a| self.is_connected(a)).collect())
    }

    pub fn connected_elements(&self) -> ConnectedSet {
        ConnectedSet {
            members: self.connected_members().to_vec(),
        }
    }

    /// Maximal connected elements below `a`; errors when their join is not
    /// `a` itself.
    pub fn components(&self, a: usize) -> Result<Vec<usize>, LatticeError> {
        let below: Vec<usize> = self
            .connected_members()
            .iter()
            .copied()
            .filter(|&c| self.leq(c, a))
            .collect();
        let comps = self.poset.maximal_of(&below);
        if self.join_all(comps.iter().copied()) != a {
            return Err(LatticeError::NoDecomposition(self.label(a).to_string()));
        }
        Ok(comps)
    }

    /// Union of `components` over a set, sorted and deduplicated.
    pub fn components_of_set(&self, s: &[usize]) -> Result<Vec<usize>, LatticeError> {
        let mut out = Vec::new();
        for &a in s {
            out.extend(self.components(a)?);
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// True when every element is the join of its components. Scanned from
    /// the top down; the witness is the first failing element.
    pub fn has_connected_decompositions(&self) -> CheckOutcome {
        for a in (0..self.len()).rev() {
            if self.components(a).is_err() {
                return CheckOutcome::fail(vec![a]);
            }
        }
        CheckOutcome::ok()
    }
}

/// The lattice of down-sets of a poset, ordered by inclusion. Join is
/// union, meet is intersection.
pub fn downset_lattice(p: &FinitePoset) -> Result<FiniteLattice, LatticeError> {
    downset_lattice_with_cap(p, DEFAULT_DOWNSET_CAP)
}

pub fn downset_lattice_with_cap(p: &FinitePoset, cap: u128) -> Result<FiniteLattice, LatticeError> {
    let n = p.len();
    if n >= 64 || (1u128 << n) > cap {
        return Err(LatticeError::SizeLimit { points: n, cap });
    }
    let down_mask: Vec<u64> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| p.leq(j, i))
                .fold(0u64, |m, j| m | (1 << j))
        })
        .collect();
    let mut masks = Vec::new();
    for s in 0..(1u64 << n) {
        let closed = (0..n).all(|i| s & (1 << i) == 0 || s & down_mask[i] == down_mask[i]);
        if closed {
            masks.push(s);
        }
    }
    let index_of = |m: u64| masks.binary_search(&m).expect("closed under set ops");
    let k = masks.len();
    let labels: Vec<String> = masks
        .iter()
        .map(|&m| {
            let names: Vec<&str> = (0..n)
                .filter(|&i| m & (1 << i) != 0)
                .map(|i| p.label(i))
                .collect();
            format!("{{{}}}", names.join(","))
        })
        .collect();
    let mut rel = vec![false; k * k];
    for (i, &a) in masks.iter().enumerate() {
        for (j, &b) in masks.iter().enumerate() {
            rel[i * k + j] = a & b == a;
        }
    }
    let poset = FinitePoset::from_closed(labels, rel);
    let mut join = vec![0usize; k * k];
    let mut meet = vec![0usize; k * k];
    for (i, &a) in masks.iter().enumerate() {
        for (j, &b) in masks.iter().enumerate() {
            join[i * k + j] = index_of(a | b);
            meet[i * k + j] = index_of(a & b);
        }
    }
    Ok(FiniteLattice {
        poset,
        join,
        meet,
        bottom: index_of(0),
        top: index_of(masks[k - 1]),
        cn: std::sync::OnceLock::new(),
    })
}
