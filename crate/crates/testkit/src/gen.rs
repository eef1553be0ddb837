//! Random inputs.

use num_bigint::BigInt;
use opgb_core::{Coeff, Generator, OperadPolynomial, OrderingSpec, Permutation, Signature, Tree};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;

use crate::oracle::{arity, sort_children};

/// A signature of one to three generators of arity two or three.
pub fn signature(rng: &mut impl Rng) -> Signature {
    let names = ["a", "b", "c"];
    let k = rng.random_range(1..=3);
    let mut sig = Signature::new();
    for name in &names[..k] {
        sig.declare(name, rng.random_range(2..=3)).expect("distinct names");
    }
    sig
}

/// A random planar shape with `vertices` internal vertices and all leaves labeled 0.
pub fn shape(rng: &mut impl Rng, gens: &[Generator], vertices: usize) -> Tree {
    fn corolla(g: &Generator) -> Tree {
        Tree::Vertex {
            gen: g.ordinal,
            children: vec![Tree::Leaf(0); g.arity],
        }
    }
    let mut t = corolla(gens.choose(rng).expect("nonempty signature"));
    for _ in 1..vertices {
        let mut k = rng.random_range(0..arity(&t));
        let g = gens.choose(rng).expect("nonempty signature");
        graft_at(&mut t, &mut k, &corolla(g));
    }
    t
}

/// Labels the leaves of `t` by a random permutation and sorts children into
/// canonical position.
pub fn label(rng: &mut impl Rng, t: &Tree) -> Tree {
    fn go(t: &Tree, labels: &mut std::vec::IntoIter<u32>) -> Tree {
        match t {
            Tree::Leaf(_) => Tree::Leaf(labels.next().expect("enough labels")),
            Tree::Vertex { gen, children } => Tree::Vertex {
                gen: *gen,
                children: children.iter().map(|c| go(c, labels)).collect(),
            },
        }
    }
    let mut labels: Vec<u32> = (1..=arity(t) as u32).collect();
    labels.shuffle(rng);
    sort_children(go(t, &mut labels.into_iter()))
}

/// A random tree monomial with between one and `max_vertices` vertices.
pub fn monomial(rng: &mut impl Rng, gens: &[Generator], max_vertices: usize) -> Tree {
    let w = rng.random_range(1..=max_vertices);
    let s = shape(rng, gens, w);
    label(rng, &s)
}

/// A random tree monomial of arity at most `max_arity`, built only from
/// generators that fit. `None` when no generator does.
pub fn monomial_up_to_arity(rng: &mut impl Rng, gens: &[Generator], max_arity: usize) -> Option<Tree> {
    let fitting: Vec<Generator> = gens.iter().filter(|g| g.arity <= max_arity).cloned().collect();
    if fitting.is_empty() {
        return None;
    }
    loop {
        let t = monomial(rng, &fitting, max_arity - 1);
        if arity(&t) <= max_arity {
            return Some(t);
        }
    }
}

/// A random tree monomial of arity exactly `n`, or `None` when repeated
/// attempts find none.
pub fn monomial_of_arity(rng: &mut impl Rng, gens: &[Generator], n: usize) -> Option<Tree> {
    if n == 1 {
        return Some(Tree::Leaf(1));
    }
    'attempt: for _ in 0..100 {
        let mut t = Tree::Leaf(0);
        let mut k = 1;
        while k < n {
            let fitting: Vec<&Generator> = gens.iter().filter(|g| k + g.arity - 1 <= n).collect();
            let Some(g) = fitting.choose(rng) else { continue 'attempt };
            let corolla = Tree::Vertex {
                gen: g.ordinal,
                children: vec![Tree::Leaf(0); g.arity],
            };
            let mut slot = rng.random_range(0..k);
            graft_at(&mut t, &mut slot, &corolla);
            k += g.arity - 1;
        }
        return Some(label(rng, &t));
    }
    None
}

fn graft_at(t: &mut Tree, k: &mut usize, with: &Tree) -> bool {
    match t {
        Tree::Leaf(_) => {
            if *k == 0 {
                *t = with.clone();
                return true;
            }
            *k -= 1;
            false
        }
        Tree::Vertex { children, .. } => children.iter_mut().any(|c| graft_at(c, k, with)),
    }
}

/// A uniformly chosen shuffle permutation for the given block sizes.
///
/// Block `i` must contain the smallest label not used by earlier blocks;
/// its remaining labels are any subset of what is left.
pub fn shuffle(rng: &mut impl Rng, blocks: &[usize]) -> Permutation {
    let total: usize = blocks.iter().sum();
    let mut remaining: Vec<u32> = (1..=total as u32).collect();
    let mut images = Vec::with_capacity(total);
    for &k in blocks {
        let first = remaining.remove(0);
        remaining.shuffle(rng);
        let mut block: Vec<u32> = remaining.drain(..k - 1).collect();
        block.push(first);
        block.sort_unstable();
        remaining.sort_unstable();
        images.extend(block);
    }
    Permutation::new(images).expect("a permutation")
}

pub fn coefficient(rng: &mut impl Rng) -> Coeff {
    loop {
        let n: i64 = rng.random_range(-5..=5);
        let d: i64 = rng.random_range(1..=3);
        if n != 0 {
            return Coeff::new(BigInt::from(n), BigInt::from(d));
        }
    }
}

/// A random combination of up to `terms` monomials of arity `n`.
pub fn polynomial(
    rng: &mut impl Rng,
    gens: &[Generator],
    n: usize,
    terms: usize,
    order: OrderingSpec,
) -> OperadPolynomial {
    let k = rng.random_range(1..=terms);
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        if let Some(t) = monomial_of_arity(rng, gens, n) {
            out.push((t, coefficient(rng)));
        }
    }
    OperadPolynomial::from_terms(out, order).expect("one arity")
}

/// Builds a random element of the ideal generated by `relations` by composing
/// a relation with corollas, as an argument or as the outer operation, until
/// arity `n` is reached.
pub fn ideal_element(
    rng: &mut impl Rng,
    relations: &[OperadPolynomial],
    gens: &[Generator],
    n: usize,
) -> Option<OperadPolynomial> {
    let candidates: Vec<&OperadPolynomial> = relations
        .iter()
        .filter(|r| r.arity().is_some_and(|k| k <= n))
        .collect();
    let mut f = (*candidates.choose(rng)?).clone();
    let order = f.order();
    let leaf = OperadPolynomial::monomial(Tree::Leaf(1), order);
    while let Some(k) = f.arity().filter(|&k| k < n) {
        let fitting: Vec<&Generator> = gens.iter().filter(|g| k + g.arity - 1 <= n).collect();
        let g = fitting.choose(rng)?;
        let corolla = OperadPolynomial::monomial(Tree::standard_corolla(g), order);
        if rng.random_bool(0.5) {
            let slot = rng.random_range(0..k);
            let args: Vec<OperadPolynomial> = (0..k)
                .map(|i| if i == slot { corolla.clone() } else { leaf.clone() })
                .collect();
            let blocks: Vec<usize> = (0..k).map(|i| if i == slot { g.arity } else { 1 }).collect();
            f = f.compose(&args, &shuffle(rng, &blocks)).expect("valid composition");
        } else {
            let slot = rng.random_range(0..g.arity);
            let args: Vec<OperadPolynomial> = (0..g.arity)
                .map(|i| if i == slot { f.clone() } else { leaf.clone() })
                .collect();
            let blocks: Vec<usize> = (0..g.arity).map(|i| if i == slot { k } else { 1 }).collect();
            f = corolla.compose(&args, &shuffle(rng, &blocks)).expect("valid composition");
        }
    }
    Some(f.scale(&coefficient(rng)))
}
