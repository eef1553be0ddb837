use std::collections::BTreeSet;

use opgb_core::division::{all_embeddings, divides, first_embedding};
use opgb_testkit::gen;
use opgb_testkit::oracle::{all_cuts, arity, fill, occurrences, rank_labels};
use rand::seq::IndexedRandom;

#[test]
fn embeddings_reconstruct_and_match_definition() {
    let mut rng = opgb_testkit::rng(21);
    for _ in 0..1000 {
        let sig = gen::signature(&mut rng);
        let alpha = gen::monomial_up_to_arity(&mut rng, sig.generators(), 8).unwrap();
        let cuts = all_cuts(&alpha);
        let cut = cuts.choose(&mut rng).unwrap();
        let beta = rank_labels(&cut.pattern);
        assert!(divides(&alpha, &beta));

        let embeddings = all_embeddings(&alpha, &beta);
        let positions: BTreeSet<usize> = embeddings.iter().map(|e| e.position()).collect();
        let expected = occurrences(&alpha, &beta);
        let want: BTreeSet<usize> = expected.iter().map(|c| c.position).collect();
        assert_eq!(positions, want, "{alpha:?} / {beta:?}");
        assert_eq!(first_embedding(&alpha, &beta).map(|e| e.position()), positions.first().copied());

        let other = gen::monomial_of_arity(&mut rng, sig.generators(), arity(&beta)).unwrap();
        for e in &embeddings {
            assert_eq!(e.hole_arity(), arity(&beta));
            let back = e.reconstruct(&beta).unwrap();
            assert_eq!(back, alpha);
            assert!(back.is_shuffle_monomial().unwrap());
            let c = expected.iter().find(|c| c.position == e.position()).unwrap();
            let swapped = e.reconstruct(&other).unwrap();
            assert_eq!(swapped, fill(&alpha, c, &other));
            assert!(swapped.is_shuffle_monomial().unwrap());
        }
    }
}

#[test]
fn divisibility_matches_definition() {
    let mut rng = opgb_testkit::rng(22);
    for _ in 0..1000 {
        let sig = gen::signature(&mut rng);
        let alpha = gen::monomial_up_to_arity(&mut rng, sig.generators(), 6).unwrap();
        let beta = gen::monomial_up_to_arity(&mut rng, sig.generators(), 4).unwrap();
        assert_eq!(divides(&alpha, &beta), !occurrences(&alpha, &beta).is_empty());
    }
}
