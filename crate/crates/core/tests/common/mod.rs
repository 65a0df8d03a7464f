//! Shared helpers for the integration suites: exhaustive enumeration of
//! small posets up to isomorphism, an independent Burnside count of
//! digraph classes, and standard lattice fixtures.

#![allow(dead_code)]

use duality_core::{downset_lattice, FiniteLattice, FinitePoset, LatticeBackend};

const LABELS: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

/// All posets with at most `n_max` points, one representative per
/// isomorphism class, found by filtering every strict relation for
/// antisymmetry and transitivity and deduplicating by the minimum
/// relation matrix over all permutations.
pub fn all_posets_up_to(n_max: usize) -> Vec<FinitePoset> {
    assert!(n_max <= 6);
    let mut out = Vec::new();
    for n in 0..=n_max {
        let mut seen = std::collections::HashSet::new();
        let positions: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        let perms = permutations(n);
        for mask in 0u64..(1 << positions.len()) {
            let mut rel = vec![false; n * n];
            for (bit, &(i, j)) in positions.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    rel[i * n + j] = true;
                }
            }
            if !is_strict_order(&rel, n) {
                continue;
            }
            let canon = perms
                .iter()
                .map(|p| {
                    let mut m = 0u64;
                    for i in 0..n {
                        for j in 0..n {
                            if rel[i * n + j] {
                                m |= 1 << (p[i] * n + p[j]);
                            }
                        }
                    }
                    m
                })
                .min()
                .unwrap_or(0);
            if !seen.insert(canon) {
                continue;
            }
            let labels: Vec<&str> = LABELS[..n].to_vec();
            let pairs: Vec<(&str, &str)> = positions
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask & (1 << bit) != 0)
                .map(|(_, &(i, j))| (LABELS[i], LABELS[j]))
                .collect();
            out.push(FinitePoset::new(&labels, &pairs).expect("valid strict order"));
        }
    }
    out
}

fn is_strict_order(rel: &[bool], n: usize) -> bool {
    for i in 0..n {
        for j in 0..n {
            if rel[i * n + j] {
                if rel[j * n + i] {
                    return false;
                }
                for k in 0..n {
                    if rel[j * n + k] && !rel[i * n + k] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    permute(&mut items, 0, &mut out);
    out
}

fn permute(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, out);
        items.swap(k, i);
    }
}

/// Burnside count of digraph isomorphism classes on exactly `n` labelled
/// vertices (loops allowed): the average over all permutations of
/// `2^(cycles of the induced action on ordered vertex pairs)`.
pub fn burnside_digraph_count(n: usize) -> u64 {
    if n == 0 {
        return 1;
    }
    let perms = permutations(n);
    let total: u64 = perms
        .iter()
        .map(|p| {
            let mut visited = vec![false; n * n];
            let mut cycles = 0u32;
            for start in 0..n * n {
                if visited[start] {
                    continue;
                }
                cycles += 1;
                let mut cur = start;
                while !visited[cur] {
                    visited[cur] = true;
                    let (i, j) = (cur / n, cur % n);
                    cur = p[i] * n + p[j];
                }
            }
            2u64.pow(cycles)
        })
        .sum();
    total / perms.len() as u64
}

pub fn lattice_from(labels: &[&str], pairs: &[(&str, &str)]) -> FiniteLattice {
    FiniteLattice::try_from_poset(FinitePoset::new(labels, pairs).unwrap()).unwrap()
}

/// The four-element Boolean lattice as the down-set lattice of a
/// two-element antichain: indices 0 = bottom, 1 = x, 2 = y, 3 = top.
pub fn bool4_backend() -> LatticeBackend {
    let p = FinitePoset::new(&["x", "y"], &[]).unwrap();
    LatticeBackend::new(downset_lattice(&p).unwrap())
}

/// A chain 0 < 1 < ... < k-1.
pub fn chain_backend(k: usize) -> LatticeBackend {
    let labels: Vec<String> = (0..k).map(|i| i.to_string()).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let pairs: Vec<(&str, &str)> = (1..k).map(|i| (refs[i - 1], refs[i])).collect();
    LatticeBackend::new(lattice_from(&refs, &pairs))
}

/// The diamond M3: three incomparable atoms between the bounds.
pub fn m3_lattice() -> FiniteLattice {
    lattice_from(
        &["bot", "a", "b", "c", "top"],
        &[
            ("bot", "a"),
            ("bot", "b"),
            ("bot", "c"),
            ("a", "top"),
            ("b", "top"),
            ("c", "top"),
        ],
    )
}

/// The pentagon N5: bot < a < c < top and bot < b < top.
pub fn n5_lattice() -> FiniteLattice {
    lattice_from(
        &["bot", "a", "c", "b", "top"],
        &[
            ("bot", "a"),
            ("a", "c"),
            ("c", "top"),
            ("bot", "b"),
            ("b", "top"),
        ],
    )
}
