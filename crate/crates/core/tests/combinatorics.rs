use std::collections::BTreeSet;

use num_bigint::BigUint;
use opgb_core::permutations::{count_shuffle_permutations, shuffle_permutations};
use opgb_core::trees::{enumerate_monomials, enumerate_monomials_bounded};
use opgb_core::Signature;
use opgb_testkit::oracle::{all_monomials, arity, binary_trees_by_insertion, brute_shuffles, shuffle_count};

fn compositions(total: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![vec![]];
    }
    (1..=total)
        .flat_map(|first| {
            compositions(total - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

#[test]
fn shuffle_permutations_match_brute_force() {
    for total in 1..=6 {
        for blocks in compositions(total) {
            let got: BTreeSet<Vec<u32>> = shuffle_permutations(&blocks)
                .unwrap()
                .into_iter()
                .map(|p| p.images().to_vec())
                .collect();
            assert_eq!(got, brute_shuffles(&blocks), "{blocks:?}");
        }
    }
}

#[test]
fn shuffle_counts_match_closed_form() {
    for total in 1..=8 {
        for blocks in compositions(total) {
            let listed = shuffle_permutations(&blocks).unwrap();
            let distinct: BTreeSet<_> = listed.iter().collect();
            assert_eq!(distinct.len(), listed.len());
            assert_eq!(listed.len() as u128, shuffle_count(&blocks), "{blocks:?}");
            assert_eq!(count_shuffle_permutations(&blocks).unwrap(), BigUint::from(shuffle_count(&blocks)));
        }
    }
}

#[test]
fn binary_enumeration_matches_insertion() {
    let one = Signature::from_pairs([("m", 2)]).unwrap();
    let counts: Vec<usize> = (2..=7).map(|n| enumerate_monomials(one.generators(), n).unwrap().len()).collect();
    assert_eq!(counts, [1, 3, 15, 105, 945, 10395]);
    for n in 1..=6 {
        let got: BTreeSet<_> = enumerate_monomials(one.generators(), n).unwrap().into_iter().collect();
        assert_eq!(got, binary_trees_by_insertion(&[0], n), "arity {n}");
    }
    let two = Signature::from_pairs([("m", 2), ("mop", 2)]).unwrap();
    for n in 1..=5 {
        let got: BTreeSet<_> = enumerate_monomials(two.generators(), n).unwrap().into_iter().collect();
        assert_eq!(got, binary_trees_by_insertion(&[0, 1], n), "arity {n}");
    }
}

#[test]
fn mixed_enumeration_matches_labeled_shapes() {
    let sig = Signature::from_pairs([("m", 2), ("t", 3)]).unwrap();
    let oracle = all_monomials(sig.generators(), 4, 5);
    for n in 1..=5 {
        let got: BTreeSet<_> = enumerate_monomials(sig.generators(), n).unwrap().into_iter().collect();
        let want: BTreeSet<_> = oracle.iter().filter(|t| arity(t) == n).cloned().collect();
        let want: BTreeSet<_> = if n == 1 { [opgb_core::Tree::Leaf(1)].into() } else { want };
        assert_eq!(got, want, "arity {n}");
    }
}

#[test]
fn unary_generators_need_a_weight_bound() {
    let sig = Signature::from_pairs([("d", 1), ("m", 2)]).unwrap();
    assert!(enumerate_monomials(sig.generators(), 2).is_err());
    let oracle = all_monomials(sig.generators(), 3, 3);
    for n in 1..=3 {
        let got: BTreeSet<_> = enumerate_monomials_bounded(sig.generators(), n, 3).into_iter().collect();
        let mut want: BTreeSet<_> = oracle.iter().filter(|t| arity(t) == n).cloned().collect();
        if n == 1 {
            want.insert(opgb_core::Tree::Leaf(1));
        }
        assert_eq!(got, want, "arity {n}");
    }
}
