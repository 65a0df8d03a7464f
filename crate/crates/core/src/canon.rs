//! Canonical forms for small digraphs and enumeration of isomorphism
//! classes.
//!
//! The canonical key is the lexicographic minimum, over all vertex
//! permutations, of a staircase encoding of the adjacency matrix: placing
//! vertex `v` at position `k` appends the bits `(a_0,v), (v,a_0), ...,
//! (a_{k-1},v), (v,a_{k-1}), (v,v)`. Each prefix depends only on the
//! positions chosen so far, so the permutation search prunes exactly.

use std::collections::HashSet;

use crate::digraph::{Digraph, DigraphError};

/// Exhaustive permutation search is capped here.
pub const MAX_CANON_VERTICES: usize = 8;

/// Default cap for enumeration by vertex count.
pub const DEFAULT_ENUMERATION_CAP: usize = 5;

/// Total-order-comparable encoding of an isomorphism class. Keys of
/// digraphs with the same vertex count are equal iff the digraphs are
/// isomorphic; ordering is by vertex count, then key bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    n: u8,
    bits: u64,
}

struct Search {
    n: usize,
    adj: Vec<bool>,
    best_bits: u64,
    best_perm: Vec<usize>,
    found: bool,
}

fn prefix_mask(bits: u32) -> u64 {
    if bits == 0 {
        0
    } else {
        u64::MAX << (64 - bits)
    }
}

impl Search {
    fn arc(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    fn run(&mut self, chosen: &mut Vec<usize>, used: &mut [bool], bits: u64, nbits: u32) {
        let k = chosen.len();
        if k == self.n {
            if !self.found || bits < self.best_bits {
                self.found = true;
                self.best_bits = bits;
                self.best_perm = chosen.clone();
            }
            return;
        }
        for v in 0..self.n {
            if used[v] {
                continue;
            }
            let mut ext = bits;
            let mut nb = nbits;
            let push = |bit: bool, ext: &mut u64, nb: &mut u32| {
                if bit {
                    *ext |= 1u64 << (63 - *nb);
                }
                *nb += 1;
            };
            for &prev in chosen.iter() {
                push(self.arc(prev, v), &mut ext, &mut nb);
                push(self.arc(v, prev), &mut ext, &mut nb);
            }
            push(self.arc(v, v), &mut ext, &mut nb);
            if self.found && ext > self.best_bits & prefix_mask(nb) {
                continue;
            }
            chosen.push(v);
            used[v] = true;
            self.run(chosen, used, ext, nb);
            chosen.pop();
            used[v] = false;
        }
    }
}

/// Canonical relabelling plus key. Errors above [`MAX_CANON_VERTICES`].
pub fn canonical_form(g: &Digraph) -> Result<(Digraph, CanonicalKey), DigraphError> {
    let n = g.vertex_count();
    if n > MAX_CANON_VERTICES {
        return Err(DigraphError::SizeLimit {
            what: "canonical form",
            size: n,
            cap: MAX_CANON_VERTICES,
        });
    }
    if n == 0 {
        return Ok((Digraph::empty(), CanonicalKey { n: 0, bits: 0 }));
    }
    let mut adj = vec![false; n * n];
    for &(u, v) in g.arcs() {
        adj[u * n + v] = true;
    }
    let mut search = Search {
        n,
        adj,
        best_bits: 0,
        best_perm: Vec::new(),
        found: false,
    };
    search.run(&mut Vec::with_capacity(n), &mut vec![false; n], 0, 0);
    let mut position = vec![0usize; n];
    for (pos, &orig) in search.best_perm.iter().enumerate() {
        position[orig] = pos;
    }
    let relabelled = g.relabel(&position);
    Ok((
        relabelled,
        CanonicalKey {
            n: n as u8,
            bits: search.best_bits,
        },
    ))
}

pub fn canonical_key(g: &Digraph) -> Result<CanonicalKey, DigraphError> {
    canonical_form(g).map(|(_, k)| k)
}

pub fn is_isomorphic(g: &Digraph, h: &Digraph) -> Result<bool, DigraphError> {
    if g.vertex_count() != h.vertex_count() || g.arc_count() != h.arc_count() {
        return Ok(false);
    }
    Ok(canonical_key(g)? == canonical_key(h)?)
}

/// One canonical representative per isomorphism class of digraphs with at
/// most `n_max` vertices (loops allowed), ordered by vertex count and key.
///
/// Classes on `k` vertices are generated by extending the classes on
/// `k - 1` vertices with one new vertex in every possible way, then
/// deduplicating by canonical key.
pub fn enumerate_digraphs(n_max: usize, cap: usize) -> Result<Vec<Digraph>, DigraphError> {
    if n_max > cap || n_max > MAX_CANON_VERTICES {
        return Err(DigraphError::SizeLimit {
            what: "enumeration",
            size: n_max,
            cap: cap.min(MAX_CANON_VERTICES),
        });
    }
    let mut out = vec![Digraph::empty()];
    let mut level = vec![Digraph::empty()];
    for k in 1..=n_max {
        let new_v = k - 1;
        let mut seen: HashSet<CanonicalKey> = HashSet::new();
        let mut next: Vec<(CanonicalKey, Digraph)> = Vec::new();
        for g in &level {
            for pattern in 0u32..(1 << (2 * new_v + 1)) {
                let mut arcs: Vec<(usize, usize)> = g.arcs().to_vec();
                for j in 0..new_v {
                    if pattern & (1 << j) != 0 {
                        arcs.push((j, new_v));
                    }
                    if pattern & (1 << (new_v + j)) != 0 {
                        arcs.push((new_v, j));
                    }
                }
                if pattern & (1 << (2 * new_v)) != 0 {
                    arcs.push((new_v, new_v));
                }
                let candidate = Digraph::new(k, arcs).expect("arcs in range");
                let (form, key) = canonical_form(&candidate)?;
                if seen.insert(key) {
                    next.push((key, form));
                }
            }
        }
        next.sort_by_key(|(key, _)| *key);
        level = next.into_iter().map(|(_, g)| g).collect();
        out.extend(level.iter().cloned());
    }
    Ok(out)
}

/// Class counts per exact vertex count `0..=n_max`.
pub fn enumeration_counts(n_max: usize, cap: usize) -> Result<Vec<usize>, DigraphError> {
    let all = enumerate_digraphs(n_max, cap)?;
    let mut counts = vec![0usize; n_max + 1];
    for g in &all {
        counts[g.vertex_count()] += 1;
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelled_graphs_share_keys() {
        let g = Digraph::new(4, [(0, 1), (1, 2), (2, 3), (3, 3)]).unwrap();
        let h = g.relabel(&[2, 0, 3, 1]);
        assert!(is_isomorphic(&g, &h).unwrap());
    }

    #[test]
    fn path_is_isomorphic_to_its_reversal() {
        let p2 = Digraph::path(2);
        let reversed = Digraph::new(3, [(1, 0), (2, 1)]).unwrap();
        assert!(is_isomorphic(&p2, &reversed).unwrap());
    }

    #[test]
    fn path_differs_from_zigzag() {
        let p2 = Digraph::path(2);
        let zigzag = Digraph::new(3, [(0, 1), (2, 1)]).unwrap();
        assert!(!is_isomorphic(&p2, &zigzag).unwrap());
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let g = Digraph::new(3, [(0, 1), (1, 0), (2, 0)]).unwrap();
        let (form, key) = canonical_form(&g).unwrap();
        let (form2, key2) = canonical_form(&form).unwrap();
        assert_eq!(key, key2);
        assert_eq!(form, form2);
    }

    #[test]
    fn enumeration_small_counts() {
        let counts = enumeration_counts(3, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(counts, vec![1, 2, 10, 104]);
    }

    #[test]
    fn enumeration_yields_canonical_distinct_classes() {
        let all = enumerate_digraphs(2, DEFAULT_ENUMERATION_CAP).unwrap();
        assert_eq!(all.len(), 13);
        for g in &all {
            let (form, _) = canonical_form(g).unwrap();
            assert_eq!(&form, g);
        }
        for (i, g) in all.iter().enumerate() {
            for h in &all[i + 1..] {
                if g.vertex_count() == h.vertex_count() {
                    assert!(!is_isomorphic(g, h).unwrap());
                }
            }
        }
    }

    #[test]
    fn size_limits() {
        let big = Digraph::new(9, []).unwrap();
        assert!(canonical_key(&big).is_err());
        assert!(enumerate_digraphs(6, 5).is_err());
    }
}
