//! Duality pairs, finite dualities, transversals and the constructions
//! connecting them, expressed against an abstract order backend.
//!
//! A duality pair `(l, r)` satisfies `l ≰ x` iff `x ≤ r`; a finite duality
//! `(A, B)` is a pair of antichains with `x ∈ ↑A` iff `x ∉ ↓B`. Every
//! universally quantified predicate here is checked over the backend's
//! bounded universe and reports that bound: a `Verified` verdict is a
//! proof only on exhaustive backends.

use crate::backend::{EngineError, OrderBackend};

/// Pairs of backend elements: duality pairs, gaps, decompositions.
pub type ElemPairs<B> = Vec<(<B as OrderBackend>::Elem, <B as OrderBackend>::Elem)>;

/// Verification status of a duality, always carrying the evidence bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DualityStatus<E> {
    Verified { bound: usize },
    Refuted { witness: E },
    Unchecked,
}

impl<E> DualityStatus<E> {
    pub fn is_verified(&self) -> bool {
        matches!(self, DualityStatus::Verified { .. })
    }
}

/// A pair of antichains with a verification status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualitySpec<E> {
    pub left: Vec<E>,
    pub right: Vec<E>,
    pub status: DualityStatus<E>,
    /// True when one side is empty; such pairs satisfy the definition
    /// literally but are tracked separately.
    pub degenerate: bool,
}

/// An antichain of components of `A` covering `A` from below, maximal in
/// the refinement order, together with its complement in `A`'s component
/// set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transversal<E> {
    pub members: Vec<E>,
    pub complement: Vec<E>,
    pub r: Option<E>,
}

/// Largest antichain-of-components size the subset scan will take on.
pub const MAX_COMPONENT_SET: usize = 20;

pub(crate) fn contains_equiv<B: OrderBackend>(bk: &B, set: &[B::Elem], x: &B::Elem) -> bool {
    set.iter().any(|y| bk.equivalent(x, y))
}

pub(crate) fn dedupe_equiv<B: OrderBackend>(bk: &B, items: &[B::Elem]) -> Vec<B::Elem> {
    let mut out: Vec<B::Elem> = Vec::new();
    for x in items {
        if !contains_equiv(bk, &out, x) {
            out.push(x.clone());
        }
    }
    out
}

pub(crate) fn set_equiv<B: OrderBackend>(bk: &B, a: &[B::Elem], b: &[B::Elem]) -> bool {
    a.iter().all(|x| contains_equiv(bk, b, x)) && b.iter().all(|x| contains_equiv(bk, a, x))
}

pub(crate) fn antichain_violation<B: OrderBackend>(
    bk: &B,
    set: &[B::Elem],
) -> Option<(B::Elem, B::Elem)> {
    for (i, a) in set.iter().enumerate() {
        for b in &set[i + 1..] {
            if bk.leq(a, b) || bk.leq(b, a) {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}

fn require_verified<B: OrderBackend>(d: &DualitySpec<B::Elem>) -> Result<(), EngineError> {
    if d.status.is_verified() {
        Ok(())
    } else {
        Err(EngineError::Precondition(
            "duality is not verified".to_string(),
        ))
    }
}

/// Checks `l ≰ x` iff `x ≤ r` over the bounded universe.
pub fn is_duality_pair<B: OrderBackend>(
    bk: &B,
    l: &B::Elem,
    r: &B::Elem,
    bound: usize,
) -> DualityStatus<B::Elem> {
    for x in bk.universe(bound) {
        if bk.leq(l, x) == bk.leq(x, r) {
            return DualityStatus::Refuted { witness: x.clone() };
        }
    }
    DualityStatus::Verified {
        bound: bk.report_bound(bound),
    }
}

/// First universe element verified as the right dual of `l` at the bound,
/// after the backend's catalog hint. `None` when nothing passes.
pub fn right_dual_of<B: OrderBackend>(bk: &B, l: &B::Elem, bound: usize) -> Option<B::Elem> {
    if let Some(hint) = bk.right_dual_hint(l) {
        if is_duality_pair(bk, l, &hint, bound).is_verified() {
            return Some(hint);
        }
    }
    bk.universe(bound)
        .iter()
        .find(|r| is_duality_pair(bk, l, r, bound).is_verified())
        .cloned()
}

/// Checks the antichain condition on both sides, then `x ∈ ↑A` iff
/// `x ∉ ↓B` over the bounded universe.
pub fn is_finite_duality<B: OrderBackend>(
    bk: &B,
    left: &[B::Elem],
    right: &[B::Elem],
    bound: usize,
) -> Result<DualityStatus<B::Elem>, EngineError> {
    let left = dedupe_equiv(bk, left);
    let right = dedupe_equiv(bk, right);
    for side in [&left, &right] {
        if let Some((a, b)) = antichain_violation(bk, side) {
            return Err(EngineError::MalformedAntichain(
                bk.render(&a),
                bk.render(&b),
            ));
        }
    }
    for x in bk.universe(bound) {
        let in_up = left.iter().any(|a| bk.leq(a, x));
        let in_down = right.iter().any(|b| bk.leq(x, b));
        if in_up == in_down {
            return Ok(DualityStatus::Refuted { witness: x.clone() });
        }
    }
    Ok(DualityStatus::Verified {
        bound: bk.report_bound(bound),
    })
}

/// Assembles a [`DualitySpec`], checking it at the bound.
pub fn duality_spec<B: OrderBackend>(
    bk: &B,
    left: &[B::Elem],
    right: &[B::Elem],
    bound: usize,
) -> Result<DualitySpec<B::Elem>, EngineError> {
    let status = is_finite_duality(bk, left, right, bound)?;
    let left = dedupe_equiv(bk, left);
    let right = dedupe_equiv(bk, right);
    let degenerate = left.is_empty() || right.is_empty();
    Ok(DualitySpec {
        left,
        right,
        status,
        degenerate,
    })
}

/// Component set of `A`: all connected components of its elements, sorted
/// and deduplicated.
pub fn component_set<B: OrderBackend>(bk: &B, a: &[B::Elem]) -> Result<Vec<B::Elem>, EngineError> {
    let mut out: Vec<B::Elem> = Vec::new();
    for x in a {
        for c in bk.components(x)? {
            if !contains_equiv(bk, &out, &c) {
                out.push(c);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// All antichains `M` inside the component set of `A` with `A ⊆ ↑M`,
/// enumerated by subset scan in mask order.
pub fn quasitransversals<B: OrderBackend>(
    bk: &B,
    a: &[B::Elem],
) -> Result<Vec<Vec<B::Elem>>, EngineError> {
    let acn = component_set(bk, a)?;
    let k = acn.len();
    if k > MAX_COMPONENT_SET {
        return Err(EngineError::SizeLimit(format!(
            "component set has {k} elements, subset scan cap is {MAX_COMPONENT_SET}"
        )));
    }
    let mut comparable = vec![false; k * k];
    for i in 0..k {
        for j in 0..k {
            comparable[i * k + j] =
                i != j && (bk.leq(&acn[i], &acn[j]) || bk.leq(&acn[j], &acn[i]));
        }
    }
    let mut out = Vec::new();
    'mask: for mask in 0u32..(1 << k) {
        let members: Vec<usize> = (0..k).filter(|&i| mask & (1 << i) != 0).collect();
        for (pos, &i) in members.iter().enumerate() {
            for &j in &members[pos + 1..] {
                if comparable[i * k + j] {
                    continue 'mask;
                }
            }
        }
        let covers = a
            .iter()
            .all(|x| members.iter().any(|&i| bk.leq(&acn[i], x)));
        if covers {
            out.push(members.iter().map(|&i| acn[i].clone()).collect());
        }
    }
    Ok(out)
}

fn refines<B: OrderBackend>(bk: &B, m: &[B::Elem], n: &[B::Elem]) -> bool {
    // m ⊴ n: every element of n lies above some element of m.
    n.iter().all(|c| m.iter().any(|x| bk.leq(x, c)))
}

/// The refinement-maximal quasitransversals, each with its complement
/// (the components of `A` not above the transversal).
pub fn transversals<B: OrderBackend>(
    bk: &B,
    a: &[B::Elem],
) -> Result<Vec<Transversal<B::Elem>>, EngineError> {
    let acn = component_set(bk, a)?;
    let quasis = quasitransversals(bk, a)?;
    let mut out = Vec::new();
    for m in &quasis {
        let maximal = quasis
            .iter()
            .all(|n| !refines(bk, m, n) || set_equiv(bk, m, n));
        if maximal {
            let complement: Vec<B::Elem> = acn
                .iter()
                .filter(|c| !m.iter().any(|x| bk.leq(x, c)))
                .cloned()
                .collect();
            out.push(Transversal {
                members: m.clone(),
                complement,
                r: None,
            });
        }
    }
    Ok(out)
}

/// The unique `r ∈ B` with `M ∩ ↓r = ∅` and `M̄ ⊆ ↓r`.
pub fn r_of_transversal<B: OrderBackend>(
    bk: &B,
    duality: &DualitySpec<B::Elem>,
    m: &Transversal<B::Elem>,
) -> Result<B::Elem, EngineError> {
    require_verified::<B>(duality)?;
    let hits: Vec<&B::Elem> = duality
        .right
        .iter()
        .filter(|r| {
            m.members.iter().all(|c| !bk.leq(c, r)) && m.complement.iter().all(|c| bk.leq(c, r))
        })
        .collect();
    match hits.as_slice() {
        [r] => Ok((*r).clone()),
        [] => Err(EngineError::Inconsistent(
            "no right element matches the transversal".to_string(),
        )),
        many => Err(EngineError::Inconsistent(format!(
            "{} right elements match the transversal",
            many.len()
        ))),
    }
}

/// The transversal associated with `r ∈ B`: the unique transversal
/// coarsening `Min { x ∈ A_components : x ≰ r }`.
pub fn transversal_of_r<B: OrderBackend>(
    bk: &B,
    duality: &DualitySpec<B::Elem>,
    r: &B::Elem,
) -> Result<Transversal<B::Elem>, EngineError> {
    require_verified::<B>(duality)?;
    if !contains_equiv(bk, &duality.right, r) {
        return Err(EngineError::Precondition(format!(
            "`{}` is not a right element of the duality",
            bk.render(r)
        )));
    }
    let acn = component_set(bk, &duality.left)?;
    let off: Vec<B::Elem> = acn.iter().filter(|x| !bk.leq(x, r)).cloned().collect();
    let seed: Vec<B::Elem> = off
        .iter()
        .filter(|x| !off.iter().any(|y| bk.leq(y, x) && !bk.equivalent(y, x)))
        .cloned()
        .collect();
    let mut matches = Vec::new();
    for t in transversals(bk, &duality.left)? {
        if refines(bk, &seed, &t.members) && bk.equivalent(&r_of_transversal(bk, duality, &t)?, r) {
            matches.push(t);
        }
    }
    match matches.len() {
        1 => {
            let mut t = matches.remove(0);
            t.r = Some(r.clone());
            Ok(t)
        }
        0 => Err(EngineError::Inconsistent(format!(
            "no transversal maps back to `{}`",
            bk.render(r)
        ))),
        k => Err(EngineError::Inconsistent(format!(
            "{k} transversals map back to `{}`",
            bk.render(r)
        ))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionReport {
    pub holds: bool,
    pub detail: Option<String>,
}

/// Checks that `M ↦ r(M)` is a bijection from the transversals of the
/// duality onto `B`, with inverse `r ↦ M_r`.
pub fn check_transversal_bijection<B: OrderBackend>(
    bk: &B,
    duality: &DualitySpec<B::Elem>,
) -> Result<BijectionReport, EngineError> {
    require_verified::<B>(duality)?;
    let ts = transversals(bk, &duality.left)?;
    if ts.len() != duality.right.len() {
        return Ok(BijectionReport {
            holds: false,
            detail: Some(format!(
                "{} transversals vs {} right elements",
                ts.len(),
                duality.right.len()
            )),
        });
    }
    let mut images: Vec<B::Elem> = Vec::new();
    for t in &ts {
        let r = match r_of_transversal(bk, duality, t) {
            Ok(r) => r,
            Err(e) => {
                return Ok(BijectionReport {
                    holds: false,
                    detail: Some(e.to_string()),
                })
            }
        };
        if contains_equiv(bk, &images, &r) {
            return Ok(BijectionReport {
                holds: false,
                detail: Some(format!("`{}` is hit twice", bk.render(&r))),
            });
        }
        let back = match transversal_of_r(bk, duality, &r) {
            Ok(t) => t,
            Err(e) => {
                return Ok(BijectionReport {
                    holds: false,
                    detail: Some(e.to_string()),
                })
            }
        };
        if !set_equiv(bk, &back.members, &t.members) {
            return Ok(BijectionReport {
                holds: false,
                detail: Some(format!(
                    "round trip through `{}` changes the transversal",
                    bk.render(&r)
                )),
            });
        }
        images.push(r);
    }
    Ok(BijectionReport {
        holds: true,
        detail: None,
    })
}

/// The sub-duality `(M, {r(M)})` carried by a transversal, checked at the
/// bound.
pub fn duality_of_transversal<B: OrderBackend>(
    bk: &B,
    duality: &DualitySpec<B::Elem>,
    m: &Transversal<B::Elem>,
    bound: usize,
) -> Result<DualitySpec<B::Elem>, EngineError> {
    let r = r_of_transversal(bk, duality, m)?;
    duality_spec(bk, &m.members, &[r], bound)
}

/// Builds the finite duality on `A` from right duals of its components:
/// every transversal `M` contributes the meet of the duals of its members,
/// and `B` collects those meets. The result is self-checked at the bound.
pub fn build_duality<B: OrderBackend>(
    bk: &B,
    a: &[B::Elem],
    bound: usize,
) -> Result<DualitySpec<B::Elem>, EngineError> {
    build_duality_with(bk, a, bound, right_dual_of)
}

/// [`build_duality`] with an explicit dual oracle for components.
pub fn build_duality_with<B, F>(
    bk: &B,
    a: &[B::Elem],
    bound: usize,
    dual_oracle: F,
) -> Result<DualitySpec<B::Elem>, EngineError>
where
    B: OrderBackend,
    F: Fn(&B, &B::Elem, usize) -> Option<B::Elem>,
{
    let a = dedupe_equiv(bk, a);
    if let Some((x, y)) = antichain_violation(bk, &a) {
        return Err(EngineError::MalformedAntichain(
            bk.render(&x),
            bk.render(&y),
        ));
    }
    let acn = component_set(bk, &a)?;
    let duals: Vec<B::Elem> = acn
        .iter()
        .map(|c| {
            dual_oracle(bk, c, bound).ok_or_else(|| EngineError::MissingRightDual(bk.render(c)))
        })
        .collect::<Result<_, _>>()?;
    let dual_of = |c: &B::Elem| -> &B::Elem {
        let i = acn
            .iter()
            .position(|x| bk.equivalent(x, c))
            .expect("component set is closed");
        &duals[i]
    };
    let mut right: Vec<B::Elem> = Vec::new();
    for t in transversals(bk, &a)? {
        let r_m = match t.members.split_first() {
            None => bk.top(),
            Some((first, rest)) => rest
                .iter()
                .fold(dual_of(first).clone(), |acc, c| bk.meet(&acc, dual_of(c))),
        };
        if !contains_equiv(bk, &right, &r_m) {
            right.push(r_m);
        }
    }
    right.sort();
    duality_spec(bk, &a, &right, bound)
}

/// Splits a single-right-element duality `(A, {r})` into duality pairs
/// `(l_i, r_i)` with `⋀ r_i` equivalent to `r`.
pub fn decompose_right<B: OrderBackend>(
    bk: &B,
    duality: &DualitySpec<B::Elem>,
    bound: usize,
) -> Result<ElemPairs<B>, EngineError> {
    require_verified::<B>(duality)?;
    let r = match duality.right.as_slice() {
        [r] => r,
        other => {
            return Err(EngineError::Precondition(format!(
                "right side has {} elements, expected exactly one",
                other.len()
            )))
        }
    };
    let mut pairs = Vec::new();
    for l in &duality.left {
        let dual = right_dual_of(bk, l, bound)
            .ok_or_else(|| EngineError::MissingRightDual(bk.render(l)))?;
        pairs.push((l.clone(), dual));
    }
    let meet = pairs
        .iter()
        .map(|(_, ri)| ri)
        .fold(bk.top(), |acc, ri| bk.meet(&acc, ri));
    if !bk.equivalent(&meet, r) {
        return Err(EngineError::MeetMismatch {
            expected: bk.render(r),
            computed: bk.render(&meet),
        });
    }
    Ok(pairs)
}
