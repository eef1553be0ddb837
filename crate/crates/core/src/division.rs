//! Divisor occurrences as trees with a hole, and reinsertion into the hole.
//!
//! An [`Embedding`] of `beta` in `alpha` is `alpha` with the occurrence of
//! `beta` collapsed into a single hole vertex. The hole's children are the
//! ambient subtrees that hung below the occurrence, sorted by minimal leaf.
//! Inserting any tree `gamma` of the same arity into the hole computes
//! `m_{alpha,beta}(gamma)`.

use crate::error::{OperadError, Result};
use crate::polynomials::OperadPolynomial;
use crate::trees::Tree;

/// A tree in which exactly one vertex is the hole.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Framed {
    Leaf(u32),
    Vertex { gen: u32, children: Vec<Framed> },
    Hole(Vec<Tree>),
}

impl Framed {
    fn from_tree(t: &Tree) -> Framed {
        match t {
            Tree::Leaf(l) => Framed::Leaf(*l),
            Tree::Vertex { gen, children } => Framed::Vertex {
                gen: *gen,
                children: children.iter().map(Framed::from_tree).collect(),
            },
        }
    }

    fn fill(&self, gamma: &Tree) -> Tree {
        match self {
            Framed::Leaf(l) => Tree::Leaf(*l),
            Framed::Vertex { gen, children } => Tree::Vertex {
                gen: *gen,
                children: children.iter().map(|c| c.fill(gamma)).collect(),
            },
            Framed::Hole(subtrees) => insert(gamma, subtrees),
        }
    }
}

/// Replaces leaf `j` of `gamma` by `subtrees[j - 1]`.
fn insert(gamma: &Tree, subtrees: &[Tree]) -> Tree {
    match gamma {
        Tree::Leaf(l) => subtrees[*l as usize - 1].clone(),
        Tree::Vertex { gen, children } => Tree::Vertex {
            gen: *gen,
            children: children.iter().map(|c| insert(c, subtrees)).collect(),
        },
    }
}

/// One occurrence of a divisor inside an ambient tree monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Embedding {
    frame: Framed,
    /// Pre-order index (among vertices) of the occurrence's root in the ambient tree.
    position: usize,
    hole_arity: usize,
}

impl Embedding {
    pub fn frame(&self) -> &Framed {
        &self.frame
    }

    pub fn position(&self) -> usize {
        self.position
    }

    pub fn hole_arity(&self) -> usize {
        self.hole_arity
    }

    /// The ambient subtrees attached to the hole, in minimal-leaf order.
    pub fn hole_children(&self) -> &[Tree] {
        fn find(f: &Framed) -> Option<&[Tree]> {
            match f {
                Framed::Leaf(_) => None,
                Framed::Hole(c) => Some(c),
                Framed::Vertex { children, .. } => children.iter().find_map(find),
            }
        }
        find(&self.frame).expect("embedding without a hole")
    }

    /// `m_{alpha,beta}(gamma)`: the ambient tree with `gamma` in place of the divisor.
    pub fn reconstruct(&self, gamma: &Tree) -> Result<Tree> {
        if gamma.arity() != self.hole_arity {
            return Err(OperadError::WrongArity {
                expected: self.hole_arity,
                found: gamma.arity(),
            });
        }
        Ok(self.frame.fill(gamma))
    }

    /// Linear extension of [`Embedding::reconstruct`].
    pub fn substitute(&self, g: &OperadPolynomial) -> Result<OperadPolynomial> {
        if let Some(n) = g.arity() {
            if n != self.hole_arity {
                return Err(OperadError::WrongArity {
                    expected: self.hole_arity,
                    found: n,
                });
            }
        }
        g.map_monomials(|t| self.frame.fill(t))
    }
}

/// Matches `beta` against `alpha` with shared roots. On success returns the
/// ambient subtrees hanging from the occurrence, listed in `beta`'s planar
/// leaf order.
fn match_rooted<'a>(alpha: &'a Tree, beta: &Tree, out: &mut Vec<&'a Tree>) -> bool {
    match (alpha, beta) {
        (_, Tree::Leaf(_)) => {
            out.push(alpha);
            true
        }
        (
            Tree::Vertex { gen: ga, children: ca },
            Tree::Vertex { gen: gb, children: cb },
        ) => {
            ga == gb
                && ca.len() == cb.len()
                && ca.iter().zip(cb).all(|(a, b)| match_rooted(a, b, out))
        }
        (Tree::Leaf(_), Tree::Vertex { .. }) => false,
    }
}

/// The hole children of a root-sharing occurrence of `beta` in `alpha`, sorted
/// by minimal leaf, if the occurrence exists and its leaf order matches.
fn rooted_hole(alpha: &Tree, beta: &Tree) -> Option<Vec<Tree>> {
    let mut hanging = Vec::with_capacity(beta.arity());
    if !match_rooted(alpha, beta, &mut hanging) {
        return None;
    }
    let mins: Vec<u32> = hanging.iter().map(|t| t.min_leaf()).collect();
    let mut order: Vec<usize> = (0..mins.len()).collect();
    order.sort_unstable_by_key(|&i| mins[i]);
    // leaf at planar position p of beta must carry the rank of mins[p]
    let mut rank = vec![0u32; mins.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r as u32 + 1;
    }
    if beta.leaves() != rank {
        return None;
    }
    Some(order.into_iter().map(|i| hanging[i].clone()).collect())
}

/// The unique embedding of `beta` in `alpha` sharing the root, if any.
pub fn rooted_embedding(alpha: &Tree, beta: &Tree) -> Option<Embedding> {
    if beta.is_leaf() {
        return None;
    }
    let children = rooted_hole(alpha, beta)?;
    Some(Embedding {
        hole_arity: children.len(),
        frame: Framed::Hole(children),
        position: 0,
    })
}

/// The embedding of `beta` whose root sits at the vertex with pre-order index
/// `position` of `alpha`.
pub fn embedding_at(alpha: &Tree, beta: &Tree, position: usize) -> Option<Embedding> {
    all_embeddings(alpha, beta)
        .into_iter()
        .find(|e| e.position == position)
}

/// Every occurrence of `beta` in `alpha`, in pre-order of the occurrence root.
pub fn all_embeddings(alpha: &Tree, beta: &Tree) -> Vec<Embedding> {
    if beta.is_leaf() || beta.arity() > alpha.arity() || beta.weight() > alpha.weight() {
        return Vec::new();
    }
    let hole_arity = beta.arity();
    let mut counter = 0usize;
    let mut out = Vec::new();
    for (frame, position) in embeddings_in(alpha, beta, &mut counter) {
        out.push(Embedding {
            frame,
            position,
            hole_arity,
        });
    }
    out
}

fn embeddings_in(alpha: &Tree, beta: &Tree, counter: &mut usize) -> Vec<(Framed, usize)> {
    let Tree::Vertex { gen, children } = alpha else {
        return Vec::new();
    };
    let here = *counter;
    *counter += 1;
    let mut out = Vec::new();
    if let Some(hole) = rooted_hole(alpha, beta) {
        out.push((Framed::Hole(hole), here));
    }
    for (i, child) in children.iter().enumerate() {
        for (sub, pos) in embeddings_in(child, beta, counter) {
            let framed_children = children
                .iter()
                .enumerate()
                .map(|(j, c)| {
                    if j == i {
                        sub.clone()
                    } else {
                        Framed::from_tree(c)
                    }
                })
                .collect();
            out.push((
                Framed::Vertex {
                    gen: *gen,
                    children: framed_children,
                },
                pos,
            ));
        }
    }
    out
}

pub fn divides(alpha: &Tree, beta: &Tree) -> bool {
    first_embedding(alpha, beta).is_some()
}

/// The first occurrence in pre-order, without building the others.
pub fn first_embedding(alpha: &Tree, beta: &Tree) -> Option<Embedding> {
    if beta.is_leaf() || beta.arity() > alpha.arity() || beta.weight() > alpha.weight() {
        return None;
    }
    fn go(alpha: &Tree, beta: &Tree, counter: &mut usize) -> Option<(Framed, usize)> {
        let Tree::Vertex { gen, children } = alpha else {
            return None;
        };
        let here = *counter;
        *counter += 1;
        if let Some(hole) = rooted_hole(alpha, beta) {
            return Some((Framed::Hole(hole), here));
        }
        for (i, child) in children.iter().enumerate() {
            if let Some((sub, pos)) = go(child, beta, counter) {
                let mut framed: Vec<Framed> = children.iter().map(Framed::from_tree).collect();
                framed[i] = sub;
                return Some((
                    Framed::Vertex {
                        gen: *gen,
                        children: framed,
                    },
                    pos,
                ));
            }
        }
        None
    }
    let mut counter = 0;
    go(alpha, beta, &mut counter).map(|(frame, position)| Embedding {
        frame,
        position,
        hole_arity: beta.arity(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orderings::OrderingSpec;
    use crate::polynomials::Coeff;
    use crate::trees::fixtures::*;
    use num_traits::One;

    #[test]
    fn self_division_is_a_hole_corolla() {
        let t = m(m(leaf(1), leaf(3)), leaf(2));
        let e = rooted_embedding(&t, &t).unwrap();
        assert_eq!(e.frame(), &Framed::Hole(vec![leaf(1), leaf(2), leaf(3)]));
        assert_eq!(all_embeddings(&t, &t).len(), 1);
    }

    #[test]
    fn rooted_examples() {
        let c = m(leaf(1), leaf(2));
        let comb = m(c.clone(), leaf(3));
        let e = rooted_embedding(&comb, &c).unwrap();
        assert_eq!(e.frame(), &Framed::Hole(vec![c.clone(), leaf(3)]));
        let right = m(leaf(1), m(leaf(2), leaf(3)));
        assert!(rooted_embedding(&right, &comb).is_none());
    }

    #[test]
    fn all_occurrences() {
        let c = m(leaf(1), leaf(2));
        let comb = m(c.clone(), leaf(3));
        let es = all_embeddings(&comb, &c);
        assert_eq!(es.len(), 2);
        assert_eq!(es[0].position(), 0);
        assert_eq!(es[1].position(), 1);
        assert_eq!(
            es[1].frame(),
            &Framed::Vertex {
                gen: 0,
                children: vec![Framed::Hole(vec![leaf(1), leaf(2)]), Framed::Leaf(3)]
            }
        );
        assert!(!divides(&c, &comb));
        assert!(divides(&comb, &c));
    }

    #[test]
    fn leaf_order_must_match() {
        // m(m(1,3),2) at the root has minimal descendants (1,3 | 2) -> m(m(1,3),2)
        let t = m(m(leaf(1), leaf(3)), leaf(2));
        let comb = m(m(leaf(1), leaf(2)), leaf(3));
        assert!(!divides(&t, &comb));
        assert!(divides(&t, &m(leaf(1), leaf(2))));
    }

    #[test]
    fn reconstruction() {
        let c = m(leaf(1), leaf(2));
        let comb = m(c.clone(), leaf(3));
        for e in all_embeddings(&comb, &c) {
            assert_eq!(e.reconstruct(&c).unwrap(), comb);
        }
        let inner = &all_embeddings(&comb, &c)[1];
        assert!(inner.reconstruct(&comb).is_err());
    }

    #[test]
    fn inserting_into_a_hole() {
        // hole over [m(1,3), 2, m(4,5)] receiving m(m(1,3),2)
        let e = Embedding {
            frame: Framed::Hole(vec![m(leaf(1), leaf(3)), leaf(2), m(leaf(4), leaf(5))]),
            position: 0,
            hole_arity: 3,
        };
        let beta = m(m(leaf(1), leaf(3)), leaf(2));
        let want = m(m(m(leaf(1), leaf(3)), m(leaf(4), leaf(5))), leaf(2));
        assert_eq!(e.reconstruct(&beta).unwrap(), want);
        assert_eq!(want.is_shuffle_monomial(), Ok(true));
    }

    #[test]
    fn substitution_is_linear() {
        let o = OrderingSpec::PATH_PERM;
        let c = m(leaf(1), leaf(2));
        let comb4 = m(m(m(leaf(1), leaf(2)), leaf(3)), leaf(4));
        let comb3 = m(c.clone(), leaf(3));
        let inner = all_embeddings(&comb4, &comb3)
            .into_iter()
            .find(|e| e.position() == 1)
            .unwrap();
        let assoc = OperadPolynomial::from_terms(
            [
                (comb3.clone(), Coeff::one()),
                (m(leaf(1), m(leaf(2), leaf(3))), -Coeff::one()),
            ],
            o,
        )
        .unwrap();
        let s = inner.substitute(&assoc).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.leading_term().unwrap(), &comb4);
        assert_eq!(
            s.coefficient(&m(m(leaf(1), m(leaf(2), leaf(3))), leaf(4))),
            -Coeff::one()
        );
        assert!(inner.substitute(&OperadPolynomial::zero(o)).unwrap().is_zero());
        let single = inner
            .substitute(&OperadPolynomial::monomial(comb3.clone(), o))
            .unwrap();
        assert_eq!(single, OperadPolynomial::monomial(comb4, o));
    }
}
