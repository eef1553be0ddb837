//! Symmetric-group actions on shuffle-operad elements.
//!
//! Symmetric operads enter the shuffle world through two steps: leaf-permuted
//! monomials are rewritten back into canonical tree monomials, and relation
//! sets are closed under the symmetric group so that they generate the right
//! shuffle ideal. Both need to know how each generator transforms when two
//! adjacent inputs are swapped; [`GeneratorAction`] records that.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::error::{OperadError, Result};
use crate::permutations::{relabel_leaves, Permutation};
use crate::polynomials::{Coeff, OperadPolynomial};
use crate::trees::{Signature, Tree};

/// For a generator `g` and `1 <= i < arity(g)`: `g` with inputs `i` and `i+1`
/// swapped, written as a combination of generators of the same arity.
///
/// An entry `g, i -> [(c, h)]` reads `g(.., x_{i+1}, x_i, ..) = Σ c·h(.., x_i, x_{i+1}, ..)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GeneratorAction {
    table: BTreeMap<(u32, usize), Vec<(Coeff, u32)>>,
}

impl GeneratorAction {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn set(
        &mut self,
        sig: &Signature,
        gen: u32,
        index: usize,
        expansion: Vec<(Coeff, u32)>,
    ) -> Result<()> {
        let g = sig.get(gen);
        if index == 0 || index >= g.arity {
            return Err(OperadError::MissingAction {
                name: g.name.clone(),
                index,
            });
        }
        if let Some((_, h)) = expansion.iter().find(|(_, h)| sig.get(*h).arity != g.arity) {
            return Err(OperadError::ArityMismatch {
                name: sig.get(*h).name.clone(),
                expected: g.arity,
                found: sig.get(*h).arity,
            });
        }
        self.table.insert((gen, index), expansion);
        Ok(())
    }

    pub fn get(&self, gen: u32, index: usize) -> Option<&[(Coeff, u32)]> {
        self.table.get(&(gen, index)).map(Vec::as_slice)
    }

    /// Entries as `(generator, transposition index, expansion)`.
    pub fn entries(&self) -> impl Iterator<Item = (u32, usize, &[(Coeff, u32)])> {
        self.table.iter().map(|(&(g, i), e)| (g, i, e.as_slice()))
    }

    fn lookup(&self, sig: &Signature, gen: u32, index: usize) -> Result<&[(Coeff, u32)]> {
        self.get(gen, index).ok_or_else(|| OperadError::MissingAction {
            name: sig.get(gen).name.clone(),
            index,
        })
    }

    /// Checks that every listed swap, applied twice, gives back the generator.
    pub fn check_involutions(&self, sig: &Signature) -> Result<()> {
        for (&(g, i), expansion) in &self.table {
            let mut twice: BTreeMap<u32, Coeff> = BTreeMap::new();
            for (c, h) in expansion {
                for (d, k) in self.lookup(sig, *h, i)? {
                    *twice.entry(*k).or_insert_with(Coeff::zero) += c * d;
                }
            }
            twice.retain(|_, c| !c.is_zero());
            if twice.len() != 1 || twice.get(&g).is_none_or(|c| !c.is_one()) {
                return Err(OperadError::ActionNotInvolution {
                    name: sig.get(g).name.clone(),
                    index: i,
                });
            }
        }
        Ok(())
    }
}

/// Rewrites a tree with distinct leaf labels into a combination of trees whose
/// children are sorted by minimal leaf, pushing each needed swap of adjacent
/// children through the generator action.
pub fn canonicalize(t: &Tree, actions: &GeneratorAction, sig: &Signature) -> Result<Vec<(Tree, Coeff)>> {
    match t {
        Tree::Leaf(_) => Ok(vec![(t.clone(), Coeff::one())]),
        Tree::Vertex { gen, children } => {
            let expanded = children
                .iter()
                .map(|c| canonicalize(c, actions, sig))
                .collect::<Result<Vec<_>>>()?;
            let mut out: Vec<(Tree, Coeff)> = Vec::new();
            for combo in expanded.iter().multi_cartesian_product() {
                let coeff = combo.iter().fold(Coeff::one(), |acc, (_, c)| acc * c);
                let kids: Vec<Tree> = combo.iter().map(|(t, _)| t.clone()).collect();
                sort_children(*gen, kids, coeff, actions, sig, &mut out)?;
            }
            Ok(merge(out))
        }
    }
}

fn sort_children(
    gen: u32,
    children: Vec<Tree>,
    coeff: Coeff,
    actions: &GeneratorAction,
    sig: &Signature,
    out: &mut Vec<(Tree, Coeff)>,
) -> Result<()> {
    let mut stack = vec![(gen, children, coeff)];
    while let Some((g, mut kids, c)) = stack.pop() {
        let mins: Vec<u32> = kids.iter().map(Tree::min_leaf).collect();
        match mins.windows(2).position(|w| w[0] > w[1]) {
            None => out.push((Tree::Vertex { gen: g, children: kids }, c)),
            Some(i) => {
                kids.swap(i, i + 1);
                for (d, h) in actions.lookup(sig, g, i + 1)? {
                    stack.push((*h, kids.clone(), &c * d));
                }
            }
        }
    }
    Ok(())
}

fn merge(terms: Vec<(Tree, Coeff)>) -> Vec<(Tree, Coeff)> {
    let mut acc: BTreeMap<Tree, Coeff> = BTreeMap::new();
    for (t, c) in terms {
        *acc.entry(t).or_insert_with(Coeff::zero) += c;
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Rewrites an arbitrary combination of leaf-labeled trees into canonical form.
pub fn canonicalize_polynomial(
    terms: &[(Tree, Coeff)],
    actions: &GeneratorAction,
    sig: &Signature,
    order: crate::orderings::OrderingSpec,
) -> Result<OperadPolynomial> {
    let mut out = Vec::new();
    for (t, c) in terms {
        for (u, d) in canonicalize(t, actions, sig)? {
            out.push((u, c * d));
        }
    }
    OperadPolynomial::from_terms(out, order)
}

/// The action of `sigma` on `f`: relabel every leaf `l` to `sigma(l)`, then
/// restore canonical form.
pub fn act(
    sigma: &Permutation,
    f: &OperadPolynomial,
    actions: &GeneratorAction,
    sig: &Signature,
) -> Result<OperadPolynomial> {
    let mut relabeled = Vec::with_capacity(f.len());
    for (m, c) in f.terms() {
        relabeled.push((relabel_leaves(m.tree(), sigma)?, c.clone()));
    }
    canonicalize_polynomial(&relabeled, actions, sig, f.order())
}

/// Adds the full symmetric-group orbit of each relation, keeping one
/// representative per line (elements equal up to a nonzero scalar coincide).
pub fn orbit_closure(
    relations: &[OperadPolynomial],
    actions: &GeneratorAction,
    sig: &Signature,
) -> Result<Vec<OperadPolynomial>> {
    let mut out: Vec<OperadPolynomial> = Vec::new();
    let mut seen: Vec<OperadPolynomial> = Vec::new();
    for r in relations {
        let Some(n) = r.arity() else { continue };
        for images in (1..=n as u32).permutations(n) {
            let sigma = Permutation::new(images).expect("a permutation of 1..=n");
            let image = act(&sigma, r, actions, sig)?;
            if image.is_zero() {
                continue;
            }
            let key = image.monic()?;
            if !seen.contains(&key) {
                seen.push(key);
                out.push(image);
            }
        }
    }
    Ok(out)
}
