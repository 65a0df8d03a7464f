//! File formats: poset/lattice JSON, digraph JSON and adjacency-matrix
//! text, plus JSON rendering of engine results.

use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::backend::OrderBackend;
use crate::digraph::{Digraph, DigraphError};
use crate::duality::{DualitySpec, DualityStatus, Transversal};
use crate::poset::{FinitePoset, PosetError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Digraph(#[from] DigraphError),
}

#[derive(Deserialize)]
struct PosetFile {
    elements: Vec<String>,
    #[serde(default)]
    leq: Vec<(String, String)>,
}

/// Parses `{"elements": [...], "leq": [["a","b"], ...]}`. The pairs need
/// not include reflexive or transitive pairs; the loader closes them.
pub fn poset_from_json_str(s: &str) -> Result<FinitePoset, IoError> {
    let file: PosetFile = serde_json::from_str(s)?;
    let labels: Vec<&str> = file.elements.iter().map(String::as_str).collect();
    let pairs: Vec<(&str, &str)> = file
        .leq
        .iter()
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .collect();
    Ok(FinitePoset::new(&labels, &pairs)?)
}

#[derive(Deserialize)]
struct DigraphFile {
    n: usize,
    #[serde(default)]
    arcs: Vec<(usize, usize)>,
}

/// Parses `{"n": 3, "arcs": [[0,1],[1,2]]}`.
pub fn digraph_from_json_str(s: &str) -> Result<Digraph, IoError> {
    let file: DigraphFile = serde_json::from_str(s)?;
    Ok(Digraph::new(file.n, file.arcs)?)
}

pub fn digraph_to_json(g: &Digraph) -> Value {
    json!({ "n": g.vertex_count(), "arcs": g.arcs() })
}

pub fn duality_status_json<B: OrderBackend>(bk: &B, status: &DualityStatus<B::Elem>) -> Value {
    match status {
        DualityStatus::Verified { bound } => json!({ "verified_bound": bound }),
        DualityStatus::Refuted { witness } => json!({ "refuted_witness": bk.elem_json(witness) }),
        DualityStatus::Unchecked => json!("unchecked"),
    }
}

pub fn duality_to_json<B: OrderBackend>(bk: &B, d: &DualitySpec<B::Elem>) -> Value {
    json!({
        "left": d.left.iter().map(|e| bk.elem_json(e)).collect::<Vec<_>>(),
        "right": d.right.iter().map(|e| bk.elem_json(e)).collect::<Vec<_>>(),
        "status": duality_status_json(bk, &d.status),
        "degenerate": d.degenerate,
    })
}

pub fn transversals_to_json<B: OrderBackend>(bk: &B, ts: &[Transversal<B::Elem>]) -> Value {
    Value::Array(
        ts.iter()
            .map(|t| {
                json!({
                    "members": t.members.iter().map(|e| bk.elem_json(e)).collect::<Vec<_>>(),
                    "complement": t.complement.iter().map(|e| bk.elem_json(e)).collect::<Vec<_>>(),
                    "r": t.r.as_ref().map(|e| bk.elem_json(e)),
                })
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_json_roundtrip() {
        let p = poset_from_json_str(r#"{"elements": ["a", "b"], "leq": [["a", "b"]]}"#).unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.leq(0, 1));
    }

    #[test]
    fn poset_json_cycle_is_an_error() {
        let err =
            poset_from_json_str(r#"{"elements": ["a", "b"], "leq": [["a", "b"], ["b", "a"]]}"#)
                .unwrap_err();
        assert!(matches!(err, IoError::Poset(PosetError::Cycle(..))));
    }

    #[test]
    fn digraph_json_roundtrip() {
        let g = digraph_from_json_str(r#"{"n": 3, "arcs": [[0, 1], [1, 2]]}"#).unwrap();
        assert_eq!(g, Digraph::path(2));
        assert_eq!(
            digraph_to_json(&g).to_string(),
            r#"{"arcs":[[0,1],[1,2]],"n":3}"#
        );
    }

    #[test]
    fn digraph_json_validates_range() {
        assert!(digraph_from_json_str(r#"{"n": 1, "arcs": [[0, 5]]}"#).is_err());
    }
}
