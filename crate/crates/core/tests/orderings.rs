use std::cmp::Ordering;

use opgb_core::{OrderingSpec, Tree};
use opgb_testkit::gen;
use opgb_testkit::oracle::arity;
use rand::Rng;

#[test]
fn total_order_axioms() {
    let mut rng = opgb_testkit::rng(11);
    for spec in OrderingSpec::all() {
        for _ in 0..2000 {
            let sig = gen::signature(&mut rng);
            let n = rng.random_range(2..=6);
            let Some(a) = gen::monomial_of_arity(&mut rng, sig.generators(), n) else { continue };
            let b = gen::monomial_of_arity(&mut rng, sig.generators(), n).unwrap();
            let c = gen::monomial_of_arity(&mut rng, sig.generators(), n).unwrap();
            assert_eq!(spec.compare(&a, &a), Ordering::Equal);
            assert_eq!(spec.compare(&a, &b), spec.compare(&b, &a).reverse());
            assert_eq!(spec.compare(&a, &b) == Ordering::Equal, a == b);
            if spec.compare(&a, &b).is_le() && spec.compare(&b, &c).is_le() {
                assert!(spec.compare(&a, &c).is_le(), "{spec}: {a:?} {b:?} {c:?}");
            }
        }
    }
}

fn args_for(rng: &mut impl Rng, gens: &[opgb_core::Generator], k: usize, budget: usize) -> Vec<Tree> {
    let mut spare = budget;
    (0..k)
        .map(|_| {
            let pick = if spare > 0 && rng.random_bool(0.4) {
                gen::monomial_up_to_arity(rng, gens, 3.min(spare + 1))
            } else {
                None
            };
            let t = pick.unwrap_or(Tree::Leaf(1));
            spare -= arity(&t) - 1;
            t
        })
        .collect()
}

#[test]
fn orderings_are_admissible() {
    let mut rng = opgb_testkit::rng(12);
    for spec in OrderingSpec::all() {
        let mut checked = 0;
        while checked < 2000 {
            let sig = gen::signature(&mut rng);
            let gens = sig.generators();
            let n = rng.random_range(2..=4);
            let (Some(s), Some(t)) = (
                gen::monomial_of_arity(&mut rng, gens, n),
                gen::monomial_of_arity(&mut rng, gens, n),
            ) else {
                continue;
            };
            if s == t {
                continue;
            }
            let before = spec.compare(&s, &t);

            // s and t as the inner operation
            let outer = gen::monomial_up_to_arity(&mut rng, gens, 3).unwrap();
            let k = arity(&outer);
            let slot = rng.random_range(0..k);
            let mut args = args_for(&mut rng, gens, k, 8 - n - k + 1);
            let mut other = args.clone();
            args[slot] = s.clone();
            other[slot] = t.clone();
            let blocks: Vec<usize> = args.iter().map(arity).collect();
            let sigma = gen::shuffle(&mut rng, &blocks);
            let a = outer.shuffle_compose(&args, &sigma).unwrap();
            let b = outer.shuffle_compose(&other, &sigma).unwrap();
            assert_eq!(spec.compare(&a, &b), before, "{spec}: inner {s:?} {t:?} in {outer:?}");

            // s and t as the outer operation
            let args = args_for(&mut rng, gens, n, 8 - n);
            let blocks: Vec<usize> = args.iter().map(arity).collect();
            let sigma = gen::shuffle(&mut rng, &blocks);
            let a = s.shuffle_compose(&args, &sigma).unwrap();
            let b = t.shuffle_compose(&args, &sigma).unwrap();
            assert_eq!(spec.compare(&a, &b), before, "{spec}: outer {s:?} {t:?} with {args:?}");
            checked += 1;
        }
    }
}

#[test]
fn names_round_trip() {
    for spec in OrderingSpec::all() {
        assert_eq!(spec.name().parse::<OrderingSpec>().unwrap(), spec);
        assert_eq!(spec.name().to_lowercase().parse::<OrderingSpec>().unwrap(), spec);
    }
    assert!("pathpath".parse::<OrderingSpec>().is_err());
}
