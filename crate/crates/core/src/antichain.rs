//! Gaps, weak-left-dual membership, maximal antichains and the bounded
//! sparse-incomparability check.

use crate::backend::{EngineError, OrderBackend};
use crate::duality::{
    antichain_violation, build_duality, contains_equiv, dedupe_equiv, set_equiv, DualitySpec,
    ElemPairs,
};

/// Weak-left-dual membership report. `component_duals` is the bounded
/// right-dual search per component: the deciding evidence on exhaustive
/// backends, side evidence on structural ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WldMembership<E> {
    pub member: bool,
    /// Membership (or its rejection) hinged on the degenerate duality of
    /// the bottom element.
    pub degenerate: bool,
    /// The element has no connected decomposition, so it cannot be a join
    /// of left duals.
    pub undecomposable: bool,
    pub component_duals: Vec<(E, Option<E>)>,
}

/// Decides whether `a` appears on the left of some finite duality.
///
/// The bottom element is a left side only of the degenerate duality
/// `({bottom}, {})`, admitted exactly when `allow_degenerate` is set. For
/// other elements the backend's structural criterion decides when there is
/// one; otherwise `a` is a member iff every component has a right dual at
/// the bound.
pub fn wld_membership<B: OrderBackend>(
    bk: &B,
    a: &B::Elem,
    bound: usize,
    allow_degenerate: bool,
) -> Result<WldMembership<B::Elem>, EngineError> {
    let evidence = |comps: &[B::Elem]| -> Vec<(B::Elem, Option<B::Elem>)> {
        comps
            .iter()
            .map(|c| (c.clone(), crate::duality::right_dual_of(bk, c, bound)))
            .collect()
    };
    if bk.equivalent(a, &bk.bottom()) {
        let comps = bk.components(a).unwrap_or_default();
        return Ok(WldMembership {
            member: allow_degenerate,
            degenerate: true,
            undecomposable: false,
            component_duals: evidence(&comps),
        });
    }
    if let Some(structural) = bk.structural_wld(a) {
        let comps = bk.components(a).unwrap_or_default();
        return Ok(WldMembership {
            member: structural,
            degenerate: false,
            undecomposable: false,
            component_duals: evidence(&comps),
        });
    }
    match bk.components(a) {
        Err(EngineError::NoDecomposition(_)) => Ok(WldMembership {
            member: false,
            degenerate: false,
            undecomposable: true,
            component_duals: vec![],
        }),
        Err(e) => Err(e),
        Ok(comps) => {
            let component_duals = evidence(&comps);
            let member = component_duals.iter().all(|(_, d)| d.is_some());
            Ok(WldMembership {
                member,
                degenerate: false,
                undecomposable: false,
                component_duals,
            })
        }
    }
}

/// Universe members that are weak left duals at the bound; the exact set
/// on exhaustive backends.
pub fn wld_set<B: OrderBackend>(
    bk: &B,
    bound: usize,
    allow_degenerate: bool,
) -> Result<Vec<B::Elem>, EngineError> {
    let mut out = Vec::new();
    for x in bk.universe(bound) {
        if wld_membership(bk, x, bound, allow_degenerate)?.member {
            out.push(x.clone());
        }
    }
    Ok(out)
}

/// Whether `a` lies below some weak left dual.
pub fn in_down_wld<B: OrderBackend>(
    bk: &B,
    a: &B::Elem,
    bound: usize,
    allow_degenerate: bool,
) -> Result<bool, EngineError> {
    if let Some(structural) = bk.structural_down_wld(a) {
        return Ok(structural);
    }
    let wld = wld_set(bk, bound, allow_degenerate)?;
    Ok(wld.iter().any(|w| bk.leq(a, w)))
}

/// All duality pairs of an exhaustive backend.
pub fn duality_pairs<B: OrderBackend>(bk: &B) -> Result<ElemPairs<B>, EngineError> {
    if !bk.is_exhaustive() {
        return Err(EngineError::ExhaustiveRequired);
    }
    let uni = bk.universe(bk.max_bound());
    let mut out = Vec::new();
    for l in uni {
        for r in uni {
            if uni.iter().all(|x| bk.leq(l, x) != bk.leq(x, r)) {
                out.push((l.clone(), r.clone()));
            }
        }
    }
    Ok(out)
}

fn lt<B: OrderBackend>(bk: &B, a: &B::Elem, b: &B::Elem) -> bool {
    bk.leq(a, b) && !bk.leq(b, a)
}

fn require_gap_preconditions<B: OrderBackend>(bk: &B) -> Result<(), EngineError> {
    if !bk.is_exhaustive() {
        return Err(EngineError::ExhaustiveRequired);
    }
    let uni = bk.universe(bk.max_bound());
    for a in uni {
        bk.components(a)?;
    }
    for b in uni {
        for c in uni {
            let cands: Vec<&B::Elem> = uni.iter().filter(|a| bk.leq(&bk.meet(a, b), c)).collect();
            let has_max = cands.iter().any(|m| cands.iter().all(|a| bk.leq(a, m)));
            if !has_max {
                return Err(EngineError::Precondition(format!(
                    "no Heyting arrow for (`{}`, `{}`)",
                    bk.render(b),
                    bk.render(c)
                )));
            }
        }
    }
    Ok(())
}

/// All gaps (covering pairs) of an exhaustive Heyting backend with
/// connected decompositions.
pub fn gaps<B: OrderBackend>(bk: &B) -> Result<ElemPairs<B>, EngineError> {
    require_gap_preconditions(bk)?;
    let uni = bk.universe(bk.max_bound());
    let mut out = Vec::new();
    for a in uni {
        for b in uni {
            if lt(bk, a, b) && !uni.iter().any(|c| lt(bk, a, c) && lt(bk, c, b)) {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(out)
}

/// The first duality pair `(l, r)` with `l ∧ r ≤ a ≤ r` and `b = a ∨ l`.
/// Absence is surfaced as an error: it contradicts the gap
/// characterization's hypotheses.
pub fn gap_witness<B: OrderBackend>(
    bk: &B,
    a: &B::Elem,
    b: &B::Elem,
) -> Result<(B::Elem, B::Elem), EngineError> {
    require_gap_preconditions(bk)?;
    let uni = bk.universe(bk.max_bound());
    if !lt(bk, a, b) || uni.iter().any(|c| lt(bk, a, c) && lt(bk, c, b)) {
        return Err(EngineError::Precondition(format!(
            "(`{}`, `{}`) is not a gap",
            bk.render(a),
            bk.render(b)
        )));
    }
    for (l, r) in duality_pairs(bk)? {
        if bk.leq(&bk.meet(&l, &r), a) && bk.leq(a, &r) && bk.equivalent(b, &bk.join(a, &l)) {
            return Ok((l, r));
        }
    }
    Err(EngineError::NoWitness(bk.render(a), bk.render(b)))
}

/// The gap set generated by the duality-pair characterization: every
/// `(a, a ∨ l)` with `l ∧ r ≤ a ≤ r` over all duality pairs `(l, r)`.
pub fn gaps_via_duality_formula<B: OrderBackend>(bk: &B) -> Result<ElemPairs<B>, EngineError> {
    require_gap_preconditions(bk)?;
    let uni = bk.universe(bk.max_bound());
    let mut out: ElemPairs<B> = Vec::new();
    for (l, r) in duality_pairs(bk)? {
        for a in uni {
            if bk.leq(&bk.meet(&l, &r), a) && bk.leq(a, &r) {
                let b = bk.join(a, &l);
                if !out
                    .iter()
                    .any(|(x, y)| bk.equivalent(x, a) && bk.equivalent(y, &b))
                {
                    out.push((a.clone(), b));
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

fn check_maximal_antichain<B: OrderBackend>(
    bk: &B,
    c: &[B::Elem],
    bound: usize,
) -> Result<Vec<B::Elem>, EngineError> {
    let c = dedupe_equiv(bk, c);
    if let Some((x, y)) = antichain_violation(bk, &c) {
        return Err(EngineError::MalformedAntichain(
            bk.render(&x),
            bk.render(&y),
        ));
    }
    for x in bk.universe(bound) {
        if !contains_equiv(bk, &c, x) && !c.iter().any(|m| bk.leq(m, x) || bk.leq(x, m)) {
            let rendered: Vec<String> = c.iter().map(|e| bk.render(e)).collect();
            return Err(EngineError::NotMaximalAntichain(
                format!("{{{}}}", rendered.join(", ")),
                format!("`{}` is incomparable to every member", bk.render(x)),
            ));
        }
    }
    Ok(c)
}

/// The maximal antichain `A ∪ (B ∖ ↓A)` carried by a verified duality.
/// Antichain and maximality failures signal broken preconditions and are
/// surfaced as errors.
pub fn antichain_from_duality<B: OrderBackend>(
    bk: &B,
    duality: &DualitySpec<B::Elem>,
) -> Result<Vec<B::Elem>, EngineError> {
    if !duality.status.is_verified() {
        return Err(EngineError::Precondition(
            "duality is not verified".to_string(),
        ));
    }
    let mut c = duality.left.clone();
    for b in &duality.right {
        if !duality.left.iter().any(|a| bk.leq(b, a)) {
            c.push(b.clone());
        }
    }
    check_maximal_antichain(bk, &c, bk.max_bound())
        .map_err(|e| EngineError::Inconsistent(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AntichainDuality<E> {
    /// Some member lies below a weak left dual without being one, so the
    /// reconstruction hypothesis fails.
    NotApplicable { offender: E },
    Applicable {
        duality: DualitySpec<E>,
        reconstructed: Vec<E>,
        matches: bool,
    },
}

/// Recovers the duality behind a finite maximal antichain `C`: takes
/// `A = C ∩ wld`, requires `A = C ∩ ↓wld`, builds the duality on `A` and
/// compares `A ∪ (B ∖ ↓A)` against `C`.
pub fn duality_from_antichain<B: OrderBackend>(
    bk: &B,
    c: &[B::Elem],
    bound: usize,
    allow_degenerate: bool,
) -> Result<AntichainDuality<B::Elem>, EngineError> {
    let c = check_maximal_antichain(bk, c, bound)?;
    let mut members = Vec::new();
    let mut below = Vec::new();
    for x in &c {
        if wld_membership(bk, x, bound, allow_degenerate)?.member {
            members.push(x.clone());
        }
        if in_down_wld(bk, x, bound, allow_degenerate)? {
            below.push(x.clone());
        }
    }
    if !set_equiv(bk, &members, &below) {
        let offender = below
            .iter()
            .find(|x| !contains_equiv(bk, &members, x))
            .or_else(|| members.iter().find(|x| !contains_equiv(bk, &below, x)))
            .expect("sets differ")
            .clone();
        return Ok(AntichainDuality::NotApplicable { offender });
    }
    let duality = build_duality(bk, &members, bound)?;
    let mut reconstructed = duality.left.clone();
    for b in &duality.right {
        if !duality.left.iter().any(|a| bk.leq(b, a)) {
            reconstructed.push(b.clone());
        }
    }
    let matches = set_equiv(bk, &reconstructed, &c);
    Ok(AntichainDuality::Applicable {
        duality,
        reconstructed,
        matches,
    })
}

/// Splits a finite maximal antichain of an exhaustive backend into
/// `(A, B)` with every outside element above `A` or below `B`, scanning
/// 2-partitions in subset-mask order. `None` when no split exists.
#[allow(clippy::type_complexity)]
pub fn antichain_split<B: OrderBackend>(
    bk: &B,
    c: &[B::Elem],
) -> Result<Option<(Vec<B::Elem>, Vec<B::Elem>)>, EngineError> {
    if !bk.is_exhaustive() {
        return Err(EngineError::ExhaustiveRequired);
    }
    let mut c = check_maximal_antichain(bk, c, bk.max_bound())?;
    c.sort();
    if c.len() > 20 {
        return Err(EngineError::SizeLimit(format!(
            "antichain has {} elements, partition scan cap is 20",
            c.len()
        )));
    }
    let outside: Vec<&B::Elem> = bk
        .universe(bk.max_bound())
        .iter()
        .filter(|x| !contains_equiv(bk, &c, x))
        .collect();
    for mask in 0u32..(1 << c.len()) {
        let (mut upper, mut lower) = (Vec::new(), Vec::new());
        for (i, e) in c.iter().enumerate() {
            if mask & (1 << i) != 0 {
                upper.push(e.clone());
            } else {
                lower.push(e.clone());
            }
        }
        let covers = outside
            .iter()
            .all(|x| upper.iter().any(|a| bk.leq(a, x)) || lower.iter().any(|b| bk.leq(x, b)));
        if covers {
            return Ok(Some((upper, lower)));
        }
    }
    Ok(None)
}

/// Outcome of a bounded sparse-incomparability check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SiaOutcome<E> {
    /// `x` or the up-set of some test element meets the weak left duals,
    /// so the axiom's hypothesis does not apply.
    PreconditionFails {
        offender: E,
    },
    Witness(E),
    /// No witness at the bound: a refutation on exhaustive backends,
    /// inconclusive otherwise.
    NoWitness {
        bound: usize,
        refuted: bool,
    },
}

/// Searches for `y` strictly below `x`, outside the weak left duals and
/// the up-set of `u_set`, that agrees with `x` on every comparison
/// against `m_set`.
pub fn sia_check<B: OrderBackend>(
    bk: &B,
    x: &B::Elem,
    m_set: &[B::Elem],
    u_set: &[B::Elem],
    bound: usize,
    allow_degenerate: bool,
) -> Result<SiaOutcome<B::Elem>, EngineError> {
    if wld_membership(bk, x, bound, allow_degenerate)?.member {
        return Ok(SiaOutcome::PreconditionFails {
            offender: x.clone(),
        });
    }
    for u in u_set {
        if in_down_wld(bk, u, bound, allow_degenerate)? {
            return Ok(SiaOutcome::PreconditionFails {
                offender: u.clone(),
            });
        }
    }
    for y in bk.universe(bound) {
        if !bk.leq(y, x) || bk.leq(x, y) {
            continue;
        }
        if u_set.iter().any(|u| bk.leq(u, y)) {
            continue;
        }
        if m_set.iter().any(|m| bk.leq(y, m) != bk.leq(x, m)) {
            continue;
        }
        if wld_membership(bk, y, bound, allow_degenerate)?.member {
            continue;
        }
        return Ok(SiaOutcome::Witness(y.clone()));
    }
    Ok(SiaOutcome::NoWitness {
        bound: bk.report_bound(bound),
        refuted: bk.is_exhaustive(),
    })
}

/// Result of sweeping [`sia_check`] over every pair of subsets of a pool.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiaSweep<E> {
    /// Instances whose hypothesis held and produced a witness.
    pub witnessed: usize,
    /// Instances whose hypothesis failed (vacuous for the axiom).
    pub vacuous: usize,
    /// First instance left without a witness, with its test and avoid
    /// sets; a refutation when the backend is exhaustive.
    pub unwitnessed: Option<(Vec<E>, Vec<E>)>,
}

/// Runs [`sia_check`] for every pair `(M, U)` of subsets of `pool`,
/// in subset-mask order.
pub fn sia_sweep<B: OrderBackend>(
    bk: &B,
    x: &B::Elem,
    pool: &[B::Elem],
    bound: usize,
    allow_degenerate: bool,
) -> Result<SiaSweep<B::Elem>, EngineError> {
    if pool.len() > 10 {
        return Err(EngineError::SizeLimit(format!(
            "pool has {} elements, sweep cap is 10",
            pool.len()
        )));
    }
    let subsets: Vec<Vec<B::Elem>> = (0u32..(1 << pool.len()))
        .map(|mask| {
            pool.iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, e)| e.clone())
                .collect()
        })
        .collect();
    let mut sweep = SiaSweep {
        witnessed: 0,
        vacuous: 0,
        unwitnessed: None,
    };
    for m_set in &subsets {
        for u_set in &subsets {
            match sia_check(bk, x, m_set, u_set, bound, allow_degenerate)? {
                SiaOutcome::Witness(_) => sweep.witnessed += 1,
                SiaOutcome::PreconditionFails { .. } => sweep.vacuous += 1,
                SiaOutcome::NoWitness { .. } => {
                    if sweep.unwitnessed.is_none() {
                        sweep.unwitnessed = Some((m_set.clone(), u_set.clone()));
                    }
                }
            }
        }
    }
    Ok(sweep)
}
