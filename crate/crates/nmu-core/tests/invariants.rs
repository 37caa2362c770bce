//! Cross-cutting invariant tests: sorting algebra, canonical forms against an
//! independent canonicalizer, mode equivalence, reduction round trips, and a
//! fault-injection check that the classifier's diamond-size condition is
//! load-bearing.

use proptest::prelude::*;

use nmu_core::oracle::{brute_force_n2, enumerate_chain_covers, enumerate_posets};
use nmu_core::sorting::{grid_col_cover, grid_row_cover};
use nmu_core::{
    canonical_key, chain_sort, classify, classify_n2, is_sorted_along, most_reduced, nmu_check,
    nmu_check_seq, restrict_pair_to_convex, split_element, ClassifyOptions, CoverPair, Element,
    Mode, Poset,
};

fn grid_pair(rows: usize, cols: usize) -> (Poset, CoverPair) {
    let p = Poset::grid(rows, cols);
    let pair = CoverPair::from_covers(grid_row_cover(&p, rows, cols), grid_col_cover(&p, rows, cols));
    (p, pair)
}

/// Permutation of 1..=n derived from sort keys (ties broken by position).
fn perm_from_keys(keys: &[u64]) -> Vec<Element> {
    let n = keys.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (keys[i], i));
    let mut perm = vec![0; n];
    for (rank, &i) in order.iter().enumerate() {
        perm[i] = rank + 1;
    }
    perm
}

proptest! {
    #[test]
    fn sort_is_idempotent(labels in prop::collection::vec(-50i64..50, 12)) {
        let (p, pair) = grid_pair(3, 4);
        for cover in [pair.first(), pair.second()] {
            let once = chain_sort(&p, cover, &labels);
            prop_assert!(is_sorted_along(cover, &once));
            prop_assert_eq!(chain_sort(&p, cover, &once), once);
        }
    }

    #[test]
    fn sort_preserves_the_multiset(labels in prop::collection::vec(-50i64..50, 12)) {
        let (p, pair) = grid_pair(3, 4);
        let sorted = chain_sort(&p, pair.first(), &labels);
        let mut a = labels.clone();
        let mut b = sorted.clone();
        a.sort_unstable();
        b.sort_unstable();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn monotone_maps_commute_with_sorting(labels in prop::collection::vec(-50i64..50, 12)) {
        let (p, pair) = grid_pair(3, 4);
        let f = |v: i64| v.div_euclid(3); // weakly monotone
        let mapped: Vec<i64> = labels.iter().map(|&v| f(v)).collect();
        let sort_then_map: Vec<i64> = chain_sort(&p, pair.first(), &labels)
            .iter()
            .map(|&v| f(v))
            .collect();
        prop_assert_eq!(chain_sort(&p, pair.first(), &mapped), sort_then_map);
    }

    #[test]
    fn double_sort_leaves_the_first_cover_sorted_on_grids(
        labels in prop::collection::vec(-50i64..50, 12)
    ) {
        let (p, pair) = grid_pair(3, 4);
        let once = chain_sort(&p, pair.first(), &labels);
        let twice = chain_sort(&p, pair.second(), &once);
        prop_assert!(is_sorted_along(pair.first(), &twice));
        prop_assert!(is_sorted_along(pair.second(), &twice));
    }

    #[test]
    fn classification_is_isomorphism_invariant(keys in prop::collection::vec(any::<u64>(), 6)) {
        // A poset in N2 but not N2'' (pendant chain below a diamond) keeps
        // all three verdicts under relabeling.
        let p = split_element(&Poset::grid(2, 2), 1, 3);
        prop_assert_eq!(p.n(), 6);
        let q = p.relabel(&perm_from_keys(&keys));
        let (cp, cq) = (classify_n2(&p), classify_n2(&q));
        prop_assert_eq!(cp.in_n2, cq.in_n2);
        prop_assert_eq!(cp.in_n2_prime, cq.in_n2_prime);
        prop_assert_eq!(cp.in_n2_doubleprime, cq.in_n2_doubleprime);
    }

    #[test]
    fn canonical_key_is_isomorphism_invariant(keys in prop::collection::vec(any::<u64>(), 6)) {
        let p = Poset::grid(2, 3);
        prop_assert_eq!(canonical_key(&p.relabel(&perm_from_keys(&keys))), canonical_key(&p));
    }
}

/// Independent canonical form: the minimum bit-packed strict-order matrix over
/// all n! relabelings.
fn minimal_matrix_form(p: &Poset) -> Vec<u64> {
    let n = p.n();
    let mut perm: Vec<Element> = (1..=n).collect();
    let mut best: Option<Vec<u64>> = None;
    loop {
        // perm[e - 1] is the new id of element e; pack lt over new ids.
        let mut inv = vec![0; n];
        for e in 1..=n {
            inv[perm[e - 1] - 1] = e;
        }
        let mut words = vec![0u64; (n * n + 63) / 64];
        for a in 0..n {
            for b in 0..n {
                if p.lt(inv[a], inv[b]) {
                    let bit = a * n + b;
                    words[bit / 64] |= 1 << (bit % 64);
                }
            }
        }
        if best.as_ref().is_none_or(|b| words < *b) {
            best = Some(words);
        }
        // Next lexicographic permutation.
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    best.unwrap_or_default()
}

#[test]
fn canonical_key_agrees_with_the_minimal_matrix_canonicalizer() {
    let posets = enumerate_posets(5, false).unwrap();
    assert_eq!(posets.len(), 1 + 2 + 5 + 16 + 63);
    let keys: Vec<Vec<u64>> = posets.iter().map(canonical_key).collect();
    let forms: Vec<(usize, Vec<u64>)> = posets
        .iter()
        .map(|p| (p.n(), minimal_matrix_form(p)))
        .collect();
    for i in 0..posets.len() {
        for j in i + 1..posets.len() {
            assert_eq!(
                keys[i] == keys[j],
                forms[i] == forms[j],
                "canonicalizers disagree on posets {i} and {j}"
            );
        }
    }
}

#[test]
fn chain_covers_of_a_chain_are_its_compositions() {
    for n in 1..=6 {
        let covers = enumerate_chain_covers(&Poset::chain(n)).unwrap();
        assert_eq!(covers.len(), 1 << (n - 1), "chain of {n}");
    }
}

#[test]
fn modes_agree_on_all_small_posets() {
    for p in enumerate_posets(4, false).unwrap() {
        let covers = enumerate_chain_covers(&p).unwrap();
        for (i, c1) in covers.iter().enumerate() {
            for c2 in &covers[i..] {
                let pair = CoverPair::from_covers(c1.clone(), c2.clone());
                assert_eq!(
                    nmu_check_seq(&p, &pair, Mode::Permutations).holds,
                    nmu_check_seq(&p, &pair, Mode::ZeroOne).holds,
                    "modes disagree on a {}-element poset",
                    p.n()
                );
            }
        }
    }
}

#[test]
fn reduction_reconstruction_round_trips() {
    for p in enumerate_posets(5, true).unwrap() {
        let w = most_reduced(&p);
        assert_eq!(w.reconstruct(), p);
        assert!(w.reduced().n() <= p.n());
    }
}

#[test]
fn splitting_then_reducing_returns_the_reduced_poset() {
    for p in enumerate_posets(4, true).unwrap() {
        let q = most_reduced(&p).reduced().clone();
        for x in q.elements() {
            for s in 2..=3 {
                let split = split_element(&q, x, s);
                assert_eq!(
                    canonical_key(most_reduced(&split).reduced()),
                    canonical_key(&q),
                    "splitting {x} by {s} did not reduce back"
                );
            }
        }
    }
}

#[test]
fn restrictions_to_convex_subsets_preserve_the_property() {
    let (p, pair) = grid_pair(2, 3);
    for mask in 1u64..(1 << p.n()) {
        if !p.is_convex(mask) {
            continue;
        }
        let (sub, sub_pair, _) = restrict_pair_to_convex(&p, &pair, mask).unwrap();
        assert!(
            nmu_check(&sub, &sub_pair, Mode::ZeroOne).holds,
            "restriction to {mask:#b} fails"
        );
    }
}

#[test]
fn rectangle_windows_are_isomorphic_to_grids() {
    let cyl = nmu_core::Cylinder::new(3, 7).unwrap();
    for rows in 1..=3i64 {
        for cols in 1..=4i64 {
            let w = nmu_core::rectangle_window(cyl.clone(), rows, cols).unwrap();
            assert_eq!(
                canonical_key(w.poset()),
                canonical_key(&Poset::grid(rows as usize, cols as usize))
            );
        }
    }
}

/// Fault injection: with the diamond-size condition disabled, the classifier
/// must disagree with brute force on a poset whose only flaw is that
/// condition. This proves the check is load-bearing.
#[test]
fn disabling_the_diamond_size_condition_breaks_the_classifier() {
    let p = split_element(&Poset::grid(2, 3), 1, 2);
    let honest = classify_n2(&p);
    let brute = brute_force_n2(&p).unwrap();
    assert!(!honest.in_n2);
    assert!(!brute.in_n2());
    let broken = classify(
        &p,
        &ClassifyOptions {
            check_technical_condition: false,
            verification_cutoff: 0,
            fallback_partial_splits: true,
        },
    );
    assert!(broken.in_n2, "fault injection was not detected");
    assert_ne!(broken.in_n2, brute.in_n2());
}
