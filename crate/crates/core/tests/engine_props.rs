//! Engine behaviour over both backends: duality predicates on the digraph
//! order, weak-left-dual membership, antichain reconstruction including
//! its inapplicable case, and the bounded sparse-incomparability check.

mod common;

use duality_core::{
    antichain_split, build_duality, decompose_right, duality_from_antichain,
    duality_of_transversal, duality_spec, gaps, gaps_via_duality_formula, in_down_wld,
    is_duality_pair, is_finite_duality, is_isomorphic, right_dual_of, sia_check, transversals,
    wld_membership, wld_set, AntichainDuality, Digraph, DigraphBackend, DualityStatus,
    LatticeBackend, OrderBackend, SiaOutcome,
};

fn digraph_backend4() -> DigraphBackend {
    DigraphBackend::new(4).unwrap()
}

#[test]
fn path_tournament_pair_verifies_at_bound_four() {
    let bk = digraph_backend4();
    let status = is_duality_pair(
        &bk,
        &Digraph::path(2),
        &Digraph::transitive_tournament(2).unwrap(),
        4,
    );
    assert_eq!(status, DualityStatus::Verified { bound: 4 });
}

#[test]
fn cycle_fails_against_tournament_with_a_checkable_witness() {
    let bk = digraph_backend4();
    let c3 = Digraph::cycle(3).unwrap();
    let tt2 = Digraph::transitive_tournament(2).unwrap();
    match is_finite_duality(
        &bk,
        std::slice::from_ref(&c3),
        std::slice::from_ref(&tt2),
        3,
    )
    .unwrap()
    {
        DualityStatus::Refuted { witness } => {
            // The witness violates "x above A iff x outside the down-set
            // of B": here nothing maps either way.
            assert!(!bk.leq(&c3, &witness));
            assert!(!bk.leq(&witness, &tt2));
        }
        other => panic!("expected refutation, got {other:?}"),
    }
}

#[test]
fn directed_cycle_has_no_right_dual_at_bound_four() {
    let bk = digraph_backend4();
    assert_eq!(right_dual_of(&bk, &Digraph::cycle(3).unwrap(), 4), None);
}

#[test]
fn catalog_duals_resolve_paths() {
    let bk = digraph_backend4();
    for k in 1..=2usize {
        let dual = right_dual_of(&bk, &Digraph::path(k), 4).unwrap();
        assert!(is_isomorphic(&dual, &Digraph::transitive_tournament(k).unwrap()).unwrap());
    }
    // The one-vertex path is the left dual of the empty digraph.
    assert_eq!(
        right_dual_of(&bk, &Digraph::path(0), 4),
        Some(Digraph::empty())
    );
}

#[test]
fn connected_left_sides_are_their_own_transversal() {
    let bk = digraph_backend4();
    let ts = transversals(&bk, &[Digraph::path(2)]).unwrap();
    assert_eq!(ts.len(), 1);
    assert_eq!(ts[0].members.len(), 1);
    assert!(bk.equivalent(&ts[0].members[0], &Digraph::path(2)));
    assert!(ts[0].complement.is_empty());
}

#[test]
fn build_duality_recovers_the_tournament_dual() {
    let bk = digraph_backend4();
    let d = build_duality(&bk, &[Digraph::path(2)], 4).unwrap();
    assert_eq!(d.right.len(), 1);
    assert!(is_isomorphic(&d.right[0], &Digraph::transitive_tournament(2).unwrap()).unwrap());
    assert_eq!(d.status, DualityStatus::Verified { bound: 4 });
}

#[test]
fn digraph_transversal_round_trip_returns_the_same_pair() {
    let bk = digraph_backend4();
    let d = build_duality(&bk, &[Digraph::path(2)], 4).unwrap();
    let ts = transversals(&bk, &d.left).unwrap();
    assert_eq!(ts.len(), 1);
    let sub = duality_of_transversal(&bk, &d, &ts[0], 4).unwrap();
    assert!(sub.status.is_verified());
    assert!(bk.equivalent(&sub.left[0], &d.left[0]));
    assert!(bk.equivalent(&sub.right[0], &d.right[0]));
}

#[test]
fn digraph_decompose_right_recovers_the_pair() {
    let bk = digraph_backend4();
    let d = build_duality(&bk, &[Digraph::path(2)], 4).unwrap();
    let pairs = decompose_right(&bk, &d, 4).unwrap();
    assert_eq!(pairs.len(), 1);
    assert!(bk.equivalent(&pairs[0].0, &Digraph::path(2)));
    assert!(bk.equivalent(&pairs[0].1, &Digraph::transitive_tournament(2).unwrap()));
}

#[test]
fn digraph_antichain_reconstruction_at_the_bound() {
    let bk = digraph_backend4();
    // The looped vertex tops the order, so it forms a maximal antichain
    // on its own; it is no forest, and nothing above it is, so the
    // reconstruction goes through the degenerate duality.
    match duality_from_antichain(&bk, &[Digraph::looped_vertex()], 4, false).unwrap() {
        AntichainDuality::Applicable {
            duality, matches, ..
        } => {
            assert!(duality.left.is_empty());
            assert!(duality.degenerate);
            assert!(matches);
        }
        other => panic!("unexpected: {other:?}"),
    }
    // The one-arc path is comparable to everything at this bound and is
    // its own left side; its dual is the single vertex.
    match duality_from_antichain(&bk, &[Digraph::path(1)], 4, false).unwrap() {
        AntichainDuality::Applicable {
            duality, matches, ..
        } => {
            assert!(matches);
            assert_eq!(duality.right.len(), 1);
            assert!(bk.equivalent(&duality.right[0], &Digraph::path(0)));
        }
        other => panic!("unexpected: {other:?}"),
    }
}

#[test]
fn digraph_wld_is_the_forest_criterion() {
    let bk = digraph_backend4();
    let forest = duality_core::coproduct(&[Digraph::path(3), Digraph::path(1)]);
    assert!(wld_membership(&bk, &forest, 4, false).unwrap().member);
    let report = wld_membership(&bk, &Digraph::cycle(3).unwrap(), 4, false).unwrap();
    assert!(!report.member);
    // Bounded dual evidence accompanies the structural verdict.
    let path_report = wld_membership(&bk, &Digraph::path(2), 4, false).unwrap();
    assert_eq!(path_report.component_duals.len(), 1);
    assert!(path_report.component_duals[0].1.is_some());
}

#[test]
fn empty_digraph_is_wld_only_with_degenerate_dualities() {
    let bk = digraph_backend4();
    assert!(
        !wld_membership(&bk, &Digraph::empty(), 4, false)
            .unwrap()
            .member
    );
    assert!(
        wld_membership(&bk, &Digraph::empty(), 4, true)
            .unwrap()
            .member
    );
}

#[test]
fn pentagon_yields_the_inapplicable_reconstruction_case() {
    // In N5 the element c sits below the weak left dual `top` yet is not
    // one itself (it has no connected decomposition), so the antichain
    // {c, b} cannot come from a duality.
    let bk = LatticeBackend::new(common::n5_lattice());
    let c = bk.lattice().index_of("c").unwrap();
    let b = bk.lattice().index_of("b").unwrap();
    let top = bk.lattice().index_of("top").unwrap();
    assert!(!wld_membership(&bk, &c, 0, false).unwrap().member);
    assert!(wld_membership(&bk, &c, 0, false).unwrap().undecomposable);
    assert!(wld_membership(&bk, &top, 0, false).unwrap().member);
    assert!(in_down_wld(&bk, &c, 0, false).unwrap());
    match duality_from_antichain(&bk, &[c, b], 0, false).unwrap() {
        AntichainDuality::NotApplicable { offender } => assert_eq!(offender, c),
        other => panic!("expected the inapplicable case, got {other:?}"),
    }
}

#[test]
fn pentagon_wld_set() {
    let bk = LatticeBackend::new(common::n5_lattice());
    let labels: Vec<&str> = wld_set(&bk, 0, false)
        .unwrap()
        .iter()
        .map(|&i| bk.lattice().label(i))
        .collect();
    assert_eq!(labels, vec!["a", "b", "top"]);
}

#[test]
fn up_set_equality_for_maximal_antichains_of_downset_lattices() {
    // For every finite maximal antichain C, the strict up-sets of C and of
    // A = C ∩ ↓wld agree.
    for p in common::all_posets_up_to(3) {
        let bk = LatticeBackend::new(duality_core::downset_lattice(&p).unwrap());
        let n = bk.lattice().len();
        let wld = wld_set(&bk, 0, false).unwrap();
        for mask in 1u32..(1 << n) {
            let c: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let antichain = c.iter().all(|&x| {
                c.iter()
                    .all(|&y| x == y || !bk.lattice().poset().comparable(x, y))
            });
            let maximal = antichain
                && (0..n).all(|x| {
                    c.contains(&x) || c.iter().any(|&m| bk.lattice().poset().comparable(x, m))
                });
            if !maximal {
                continue;
            }
            let a: Vec<usize> = c
                .iter()
                .copied()
                .filter(|&x| wld.iter().any(|&w| bk.leq(&x, &w)))
                .collect();
            let strict_up = |s: &[usize]| -> Vec<usize> {
                (0..n)
                    .filter(|&x| !s.contains(&x) && s.iter().any(|&m| bk.leq(&m, &x)))
                    .collect()
            };
            assert_eq!(strict_up(&c), strict_up(&a), "C = {c:?}");
        }
    }
}

#[test]
fn components_of_joins_come_from_the_summands_in_distributive_lattices() {
    for p in common::all_posets_up_to(3) {
        let l = duality_core::downset_lattice(&p).unwrap();
        for a1 in 0..l.len() {
            for a2 in 0..l.len() {
                let joined = l.join(a1, a2);
                let of_join = l.components(joined).unwrap();
                let mut pool = l.components(a1).unwrap();
                pool.extend(l.components(a2).unwrap());
                for c in of_join {
                    assert!(
                        pool.contains(&c),
                        "component {c} of {joined} not in {pool:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn gap_routes_agree_on_small_downset_lattices() {
    for p in common::all_posets_up_to(3) {
        let bk = LatticeBackend::new(duality_core::downset_lattice(&p).unwrap());
        assert_eq!(gaps(&bk).unwrap(), gaps_via_duality_formula(&bk).unwrap());
    }
}

#[test]
fn gaps_refuse_backends_without_the_hypotheses() {
    let bk = DigraphBackend::new(2).unwrap();
    assert!(matches!(
        gaps(&bk),
        Err(duality_core::EngineError::ExhaustiveRequired)
    ));
    let m3 = LatticeBackend::new(common::m3_lattice());
    assert!(gaps(&m3).is_err());
}

#[test]
fn split_is_exhaustive_only() {
    let bk = DigraphBackend::new(2).unwrap();
    assert!(matches!(
        antichain_split(&bk, &[Digraph::path(0)]),
        Err(duality_core::EngineError::ExhaustiveRequired)
    ));
}

#[test]
fn sia_witness_below_the_two_cycle() {
    // x = the 2-cycle: the directed 4-cycle sits strictly below it, is no
    // forest, and agrees with x against the tournament test set.
    let bk = digraph_backend4();
    let c2 = Digraph::cycle(2).unwrap();
    let tt2 = Digraph::transitive_tournament(2).unwrap();
    match sia_check(&bk, &c2, std::slice::from_ref(&tt2), &[], 4, false).unwrap() {
        SiaOutcome::Witness(y) => {
            assert!(bk.leq(&y, &c2) && !bk.leq(&c2, &y));
            assert!(!wld_membership(&bk, &y, 4, false).unwrap().member);
            assert_eq!(bk.leq(&y, &tt2), bk.leq(&c2, &tt2));
            // First hit in canonical order: the 3-arc path closed by a
            // chord, a non-forest core below the 2-cycle. The directed
            // 4-cycle qualifies too but comes later.
            let chorded_path = Digraph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
            assert!(is_isomorphic(&y, &chorded_path).unwrap());
        }
        other => panic!("expected a witness, got {other:?}"),
    }
    // The directed 4-cycle is itself a qualifying witness.
    let c4 = Digraph::cycle(4).unwrap();
    assert!(bk.leq(&c4, &c2) && !bk.leq(&c2, &c4));
    assert!(!wld_membership(&bk, &c4, 4, false).unwrap().member);
}

#[test]
fn sia_sweep_partitions_pool_instances() {
    let bk = digraph_backend4();
    let c2 = Digraph::cycle(2).unwrap();
    let pool = [Digraph::transitive_tournament(2).unwrap(), Digraph::path(1)];
    let sweep = duality_core::sia_sweep(&bk, &c2, &pool, 4, false).unwrap();
    // Any U containing a forest breaks the hypothesis; everything else is
    // witnessed. TT2 and the one-arc path are hom-equivalent, so 12 of
    // the 16 (M, U) pairs have a forest in U.
    assert_eq!(sweep.unwitnessed, None);
    assert_eq!(sweep.vacuous, 12);
    assert_eq!(sweep.witnessed, 4);
}

#[test]
fn sia_precondition_fails_on_forests() {
    let bk = digraph_backend4();
    let p1 = Digraph::path(1);
    assert_eq!(
        sia_check(&bk, &p1, &[], &[], 4, false).unwrap(),
        SiaOutcome::PreconditionFails { offender: p1 }
    );
}

#[test]
fn sia_precondition_checks_the_up_set_of_u() {
    let bk = digraph_backend4();
    let c2 = Digraph::cycle(2).unwrap();
    // A forest in U puts wld members above U, breaking the hypothesis.
    let outcome = sia_check(&bk, &c2, &[], &[Digraph::path(1)], 4, false).unwrap();
    assert_eq!(
        outcome,
        SiaOutcome::PreconditionFails {
            offender: Digraph::path(1)
        }
    );
}

#[test]
fn degenerate_dualities_are_flagged() {
    let bk = common::bool4_backend();
    let d = duality_spec(&bk, &[], &[3], 0).unwrap();
    assert!(d.degenerate);
    assert!(d.status.is_verified());
    let d2 = duality_spec(&bk, &[0], &[], 0).unwrap();
    assert!(d2.degenerate);
    assert!(d2.status.is_verified());
}

#[test]
fn right_dual_uniqueness_up_to_equivalence_at_bound() {
    // Every universe element verified against the path's dual is
    // hom-equivalent to the catalog answer.
    let bk = DigraphBackend::new(3).unwrap();
    let p1 = Digraph::path(1);
    let tt1 = Digraph::transitive_tournament(1).unwrap();
    let verified: Vec<&Digraph> = bk
        .universe(3)
        .iter()
        .filter(|r| is_duality_pair(&bk, &p1, r, 3).is_verified())
        .collect();
    assert!(!verified.is_empty());
    for r in verified {
        assert!(bk.equivalent(r, &tt1));
    }
}
