use std::collections::BTreeSet;

use opgb_core::scm::small_common_multiples;
use opgb_core::{Signature, Tree};
use opgb_testkit::gen;
use opgb_testkit::oracle::{all_cuts, arity, brute_scms, rank_labels};
use rand::seq::IndexedRandom;
use rand::Rng;

fn m(a: Tree, b: Tree) -> Tree {
    Tree::Vertex { gen: 0, children: vec![a, b] }
}

fn check(alpha: &Tree, beta: &Tree, sig: &Signature) -> usize {
    let found = small_common_multiples(alpha, beta);
    let got: BTreeSet<(Tree, usize, usize)> = found
        .iter()
        .map(|s| (s.multiple.clone(), s.emb_a.position(), s.emb_b.position()))
        .collect();
    assert_eq!(got.len(), found.len(), "duplicates for {alpha:?} {beta:?}");
    for s in &found {
        assert_eq!(s.emb_a.reconstruct(alpha).unwrap(), s.multiple);
        assert_eq!(s.emb_b.reconstruct(beta).unwrap(), s.multiple);
    }
    let want = brute_scms(alpha, beta, sig.generators());
    assert_eq!(got, want, "{alpha:?} {beta:?}");
    got.len()
}

#[test]
fn left_comb_overlaps_itself_twice() {
    let sig = Signature::from_pairs([("m", 2)]).unwrap();
    let comb = m(m(Tree::Leaf(1), Tree::Leaf(2)), Tree::Leaf(3));
    assert_eq!(check(&comb, &comb, &sig), 2);
    let right = m(Tree::Leaf(1), m(Tree::Leaf(2), Tree::Leaf(3)));
    check(&comb, &right, &sig);
    check(&right, &right, &sig);
}

#[test]
fn small_common_multiples_match_definition() {
    let mut rng = opgb_testkit::rng(31);
    let mut nonempty = 0;
    let mut pairs = 0;
    while pairs < 200 {
        let sig = gen::signature(&mut rng);
        let gens = sig.generators();
        let alpha = gen::monomial_up_to_arity(&mut rng, gens, 5).unwrap();
        let beta = match rng.random_range(0..3) {
            0 => alpha.clone(),
            1 => rank_labels(&all_cuts(&alpha).choose(&mut rng).unwrap().pattern),
            _ => gen::monomial_up_to_arity(&mut rng, gens, 4).unwrap(),
        };
        if arity(&alpha) + arity(&beta) > 7 {
            continue;
        }
        pairs += 1;
        if check(&alpha, &beta, &sig) > 0 {
            nonempty += 1;
        }
    }
    assert!(nonempty > 50, "only {nonempty} pairs overlapped");
}
