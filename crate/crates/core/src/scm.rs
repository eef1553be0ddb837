//! Small common multiples of two tree monomials.
//!
//! Search runs in two stages. First the leaf-forgetting shapes are superposed:
//! the root of one pattern is identified with a vertex of the other and the
//! two are overlaid, requiring generator labels to agree where both have a
//! vertex. Then the leaf labelings of the overlaid shape that make both
//! occurrences divisors are exactly the linear extensions of a poset made of
//! two chains, one per pattern.

use crate::division::{all_embeddings, Embedding};
use crate::error::{OperadError, Result};
use crate::permutations::Permutation;
use crate::trees::Tree;

/// A poset on `0..n` given by (at most) two chains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoChainPoset {
    n: usize,
    chains: [Vec<usize>; 2],
}

impl TwoChainPoset {
    /// Each chain lists element indices from smallest to largest.
    pub fn new(n: usize, first: Vec<usize>, second: Vec<usize>) -> Result<Self> {
        for chain in [&first, &second] {
            let mut seen = vec![false; n];
            for &e in chain.iter() {
                if e >= n || seen[e] {
                    return Err(OperadError::InvalidPermutation(
                        chain.iter().map(|&x| x as u32).collect(),
                    ));
                }
                seen[e] = true;
            }
        }
        Ok(Self {
            n,
            chains: [first, second],
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn chains(&self) -> &[Vec<usize>; 2] {
        &self.chains
    }
}

/// All total orders extending both chains, as permutations sending element
/// `e` (1-based) to its rank.
///
/// The largest remaining rank goes to an element that is last in every chain
/// that still contains it; removing it leaves the same problem one size smaller.
pub fn linear_extensions(p: &TwoChainPoset) -> Vec<Permutation> {
    let mut index_in: [Vec<Option<usize>>; 2] = [vec![None; p.n], vec![None; p.n]];
    for (c, chain) in p.chains.iter().enumerate() {
        for (i, &e) in chain.iter().enumerate() {
            index_in[c][e] = Some(i);
        }
    }
    let mut state = Peel {
        p,
        index_in,
        lens: [p.chains[0].len(), p.chains[1].len()],
        labels: vec![0; p.n],
        assigned: vec![false; p.n],
        out: Vec::new(),
    };
    state.run(p.n);
    state.out
}

struct Peel<'a> {
    p: &'a TwoChainPoset,
    index_in: [Vec<Option<usize>>; 2],
    lens: [usize; 2],
    labels: Vec<u32>,
    assigned: Vec<bool>,
    out: Vec<Permutation>,
}

impl Peel<'_> {
    fn is_maximal(&self, e: usize) -> bool {
        (0..2).all(|c| match self.index_in[c][e] {
            Some(i) => i + 1 == self.lens[c],
            None => true,
        })
    }

    fn candidates(&self) -> Vec<usize> {
        let mut cands = Vec::new();
        for c in 0..2 {
            if self.lens[c] > 0 {
                let e = self.p.chains[c][self.lens[c] - 1];
                if self.is_maximal(e) && !cands.contains(&e) {
                    cands.push(e);
                }
            }
        }
        for e in 0..self.p.n {
            if !self.assigned[e]
                && self.index_in[0][e].is_none()
                && self.index_in[1][e].is_none()
            {
                cands.push(e);
            }
        }
        cands
    }

    fn run(&mut self, remaining: usize) {
        if remaining == 0 {
            self.out.push(
                Permutation::new(self.labels.clone()).expect("every element labeled once"),
            );
            return;
        }
        for e in self.candidates() {
            self.assigned[e] = true;
            self.labels[e] = remaining as u32;
            let saved = self.lens;
            for c in 0..2 {
                if self.index_in[c][e].is_some() {
                    self.lens[c] -= 1;
                }
            }
            self.run(remaining - 1);
            self.lens = saved;
            self.assigned[e] = false;
        }
    }
}

/// A common multiple `multiple` with an occurrence of each pattern, smaller
/// than the two patterns put side by side and covered by the two occurrences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallCommonMultiple {
    pub multiple: Tree,
    pub emb_a: Embedding,
    pub emb_b: Embedding,
}

/// Leaf of an overlaid shape, tagged by its role in each pattern.
#[derive(Debug, Clone, Copy, Default)]
struct LeafTag {
    /// The outer pattern's leaf label, when this leaf is one of its leaves.
    outer: Option<u32>,
    inner: Option<u32>,
    /// The outer leaf whose hanging subtree (a piece of the inner pattern)
    /// contains this leaf.
    under_outer: Option<u32>,
    under_inner: Option<u32>,
}

#[derive(Debug, Clone)]
enum Shape {
    Leaf(LeafTag),
    Vertex { gen: u32, children: Vec<Shape> },
}

impl Shape {
    fn tags(&self, out: &mut Vec<LeafTag>) {
        match self {
            Shape::Leaf(t) => out.push(*t),
            Shape::Vertex { children, .. } => children.iter().for_each(|c| c.tags(out)),
        }
    }

    fn label(&self, labels: &Permutation, next: &mut u32) -> Tree {
        match self {
            Shape::Leaf(_) => {
                *next += 1;
                Tree::Leaf(labels.image(*next))
            }
            Shape::Vertex { gen, children } => Tree::Vertex {
                gen: *gen,
                children: children.iter().map(|c| c.label(labels, next)).collect(),
            },
        }
    }
}

fn copy_tagged(t: &Tree, tag: &impl Fn(u32) -> LeafTag) -> Shape {
    match t {
        Tree::Leaf(l) => Shape::Leaf(tag(*l)),
        Tree::Vertex { gen, children } => Shape::Vertex {
            gen: *gen,
            children: children.iter().map(|c| copy_tagged(c, tag)).collect(),
        },
    }
}

/// Overlays `inner` on `outer` with shared roots.
fn superpose(outer: &Tree, inner: &Tree) -> Option<Shape> {
    match (outer, inner) {
        (
            Tree::Vertex { gen: go, children: co },
            Tree::Vertex { gen: gi, children: ci },
        ) => {
            if go != gi || co.len() != ci.len() {
                return None;
            }
            let children = co
                .iter()
                .zip(ci)
                .map(|(a, b)| superpose(a, b))
                .collect::<Option<Vec<_>>>()?;
            Some(Shape::Vertex { gen: *go, children })
        }
        (Tree::Leaf(lo), Tree::Vertex { .. }) => {
            let lo = *lo;
            Some(copy_tagged(inner, &|li| LeafTag {
                inner: Some(li),
                under_outer: Some(lo),
                ..Default::default()
            }))
        }
        (Tree::Vertex { .. }, Tree::Leaf(li)) => {
            let li = *li;
            Some(copy_tagged(outer, &|lo| LeafTag {
                outer: Some(lo),
                under_inner: Some(li),
                ..Default::default()
            }))
        }
        (Tree::Leaf(lo), Tree::Leaf(li)) => Some(Shape::Leaf(LeafTag {
            outer: Some(*lo),
            inner: Some(*li),
            ..Default::default()
        })),
    }
}

/// `outer` with `inner` overlaid at the vertex of pre-order index `position`.
fn overlay_at(outer: &Tree, inner: &Tree, position: usize) -> Option<Shape> {
    fn go(t: &Tree, inner: &Tree, target: usize, counter: &mut usize) -> Option<Shape> {
        match t {
            Tree::Leaf(l) => Some(Shape::Leaf(LeafTag {
                outer: Some(*l),
                ..Default::default()
            })),
            Tree::Vertex { gen, children } => {
                let here = *counter;
                *counter += 1;
                if here == target {
                    // skip the counter past this subtree's remaining vertices
                    *counter += t.weight() - 1;
                    return superpose(t, inner);
                }
                let children = children
                    .iter()
                    .map(|c| go(c, inner, target, counter))
                    .collect::<Option<Vec<_>>>()?;
                Some(Shape::Vertex { gen: *gen, children })
            }
        }
    }
    go(outer, inner, position, &mut 0)
}

/// The chain a pattern's leaf order imposes on the leaves of the overlay.
///
/// Pattern leaf `j` is represented by the overlay leaf that will carry the
/// minimum of the subtree hanging from it: the leaf itself, or, inside a piece
/// of the other pattern, the leaf with the smallest label in that pattern.
fn chain(
    tags: &[LeafTag],
    k: usize,
    direct: impl Fn(&LeafTag) -> Option<u32>,
    under: impl Fn(&LeafTag) -> Option<u32>,
    other: impl Fn(&LeafTag) -> Option<u32>,
) -> Vec<usize> {
    (1..=k as u32)
        .map(|j| {
            tags.iter()
                .position(|t| direct(t) == Some(j))
                .or_else(|| {
                    tags.iter()
                        .enumerate()
                        .filter(|(_, t)| under(t) == Some(j))
                        .min_by_key(|(_, t)| other(t))
                        .map(|(i, _)| i)
                })
                .expect("every pattern leaf covers some overlay leaf")
        })
        .collect()
}

/// Multiples with `outer` at the root and `inner` at some vertex of `outer`,
/// as `(multiple, inner position)`.
fn rooted_overlaps(outer: &Tree, inner: &Tree) -> Vec<(Tree, usize)> {
    let mut out = Vec::new();
    for position in 0..outer.weight() {
        let Some(shape) = overlay_at(outer, inner, position) else {
            continue;
        };
        let mut tags = Vec::new();
        shape.tags(&mut tags);
        let outer_chain = chain(&tags, outer.arity(), |t| t.outer, |t| t.under_outer, |t| t.inner);
        let inner_chain = chain(&tags, inner.arity(), |t| t.inner, |t| t.under_inner, |t| t.outer);
        let poset = TwoChainPoset::new(tags.len(), outer_chain, inner_chain)
            .expect("chains list distinct overlay leaves");
        for labels in linear_extensions(&poset) {
            let gamma = shape.label(&labels, &mut 0);
            debug_assert_eq!(gamma.is_shuffle_monomial(), Ok(true));
            out.push((gamma, position));
        }
    }
    out
}

fn occurrence(gamma: &Tree, pattern: &Tree, position: usize) -> Embedding {
    all_embeddings(gamma, pattern)
        .into_iter()
        .find(|e| e.position() == position)
        .expect("overlay labeling yields a divisor occurrence")
}

/// All small common multiples of `alpha` and `beta`, with either pattern at
/// the root. The trivial overlap of a monomial with itself is left out.
pub fn small_common_multiples(alpha: &Tree, beta: &Tree) -> Vec<SmallCommonMultiple> {
    if alpha.is_leaf() || beta.is_leaf() {
        return Vec::new();
    }
    let mut keyed: Vec<(Tree, usize, usize)> = Vec::new();
    for (gamma, pos) in rooted_overlaps(alpha, beta) {
        keyed.push((gamma, 0, pos));
    }
    for (gamma, pos) in rooted_overlaps(beta, alpha) {
        keyed.push((gamma, pos, 0));
    }
    keyed.sort();
    keyed.dedup();
    keyed
        .into_iter()
        .filter(|(_, pa, pb)| !(alpha == beta && pa == pb))
        .map(|(gamma, pa, pb)| SmallCommonMultiple {
            emb_a: occurrence(&gamma, alpha, pa),
            emb_b: occurrence(&gamma, beta, pb),
            multiple: gamma,
        })
        .collect()
}
