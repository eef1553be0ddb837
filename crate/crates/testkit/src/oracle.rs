//! Brute-force reference implementations. Everything here works directly
//! from the definitions and shares no algorithmic code with the engine.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_traits::{One, Zero};
use opgb_core::{Coeff, Generator, OperadPolynomial, Tree};

pub fn arity(t: &Tree) -> usize {
    match t {
        Tree::Leaf(_) => 1,
        Tree::Vertex { children, .. } => children.iter().map(arity).sum(),
    }
}

pub fn weight(t: &Tree) -> usize {
    match t {
        Tree::Leaf(_) => 0,
        Tree::Vertex { children, .. } => 1 + children.iter().map(weight).sum::<usize>(),
    }
}

pub fn min_leaf(t: &Tree) -> u32 {
    match t {
        Tree::Leaf(l) => *l,
        Tree::Vertex { children, .. } => children.iter().map(min_leaf).min().expect("vertex with children"),
    }
}

fn planar_leaves(t: &Tree, out: &mut Vec<u32>) {
    match t {
        Tree::Leaf(l) => out.push(*l),
        Tree::Vertex { children, .. } => children.iter().for_each(|c| planar_leaves(c, out)),
    }
}

/// Recursively sorts children by minimal leaf.
pub fn sort_children(t: Tree) -> Tree {
    match t {
        Tree::Leaf(_) => t,
        Tree::Vertex { gen, children } => {
            let mut children: Vec<Tree> = children.into_iter().map(sort_children).collect();
            children.sort_by_key(min_leaf);
            Tree::Vertex { gen, children }
        }
    }
}

pub fn is_canonical(t: &Tree) -> bool {
    match t {
        Tree::Leaf(_) => true,
        Tree::Vertex { children, .. } => {
            children.windows(2).all(|w| min_leaf(&w[0]) < min_leaf(&w[1]))
                && children.iter().all(is_canonical)
        }
    }
}

/// Replaces every leaf label by its rank among all leaf labels.
pub fn rank_labels(t: &Tree) -> Tree {
    let mut labels = Vec::new();
    planar_leaves(t, &mut labels);
    labels.sort_unstable();
    fn go(t: &Tree, labels: &[u32]) -> Tree {
        match t {
            Tree::Leaf(l) => Tree::Leaf(labels.binary_search(l).expect("present") as u32 + 1),
            Tree::Vertex { gen, children } => Tree::Vertex {
                gen: *gen,
                children: children.iter().map(|c| go(c, labels)).collect(),
            },
        }
    }
    go(t, &labels)
}

/// Shuffle permutations of the given type, by filtering all of `S_n`.
pub fn brute_shuffles(blocks: &[usize]) -> BTreeSet<Vec<u32>> {
    let n: usize = blocks.iter().sum();
    (1..=n as u32)
        .permutations(n)
        .filter(|p| {
            let mut start = 0;
            let mut last_first = 0;
            for &k in blocks {
                let block = &p[start..start + k];
                if block.windows(2).any(|w| w[0] > w[1]) || block[0] < last_first {
                    return false;
                }
                last_first = block[0];
                start += k;
            }
            true
        })
        .collect()
}

/// `n! / (k1!⋯kn!) · (k1⋯kn) / (N (N-k1) (N-k1-k2) ⋯ kn)`.
pub fn shuffle_count(blocks: &[usize]) -> u128 {
    let fact = |n: usize| (1..=n as u128).product::<u128>();
    let total: usize = blocks.iter().sum();
    let mut num = fact(total);
    let mut den = 1u128;
    let mut suffix = total;
    for &k in blocks {
        num *= k as u128;
        den *= fact(k) * suffix as u128;
        suffix -= k;
    }
    assert_eq!(num % den, 0);
    num / den
}

/// All canonical leaf-labeled binary trees on `n` leaves over the given
/// binary generators, grown by inserting leaf `n` into every edge of the
/// trees on `n - 1` leaves.
pub fn binary_trees_by_insertion(gens: &[u32], n: usize) -> BTreeSet<Tree> {
    let mut trees: BTreeSet<Tree> = [Tree::Leaf(1)].into_iter().collect();
    for k in 2..=n as u32 {
        let mut next = BTreeSet::new();
        for t in &trees {
            for &g in gens {
                for e in 0..edges(t) {
                    let mut e = e;
                    next.insert(sort_children(insert_at(t, &mut e, g, k)));
                }
            }
        }
        trees = next;
    }
    trees
}

/// Edges of a tree counting the one above the root.
fn edges(t: &Tree) -> usize {
    match t {
        Tree::Leaf(_) => 1,
        Tree::Vertex { children, .. } => 1 + children.iter().map(edges).sum::<usize>(),
    }
}

fn insert_at(t: &Tree, e: &mut usize, g: u32, label: u32) -> Tree {
    if *e == 0 {
        *e = usize::MAX;
        return Tree::Vertex {
            gen: g,
            children: vec![t.clone(), Tree::Leaf(label)],
        };
    }
    *e -= 1;
    match t {
        Tree::Leaf(_) => t.clone(),
        Tree::Vertex { gen, children } => Tree::Vertex {
            gen: *gen,
            children: children.iter().map(|c| insert_at(c, e, g, label)).collect(),
        },
    }
}

/// Every canonical tree monomial over `gens` with at most `max_weight`
/// vertices and arity at most `max_arity`, by labeling all planar shapes
/// in every way and keeping the canonical labelings.
pub fn all_monomials(gens: &[Generator], max_weight: usize, max_arity: usize) -> Vec<Tree> {
    let mut out = Vec::new();
    for w in 1..=max_weight {
        for s in shapes(gens, w) {
            let n = arity(&s);
            if n > max_arity {
                continue;
            }
            for labels in (1..=n as u32).permutations(n) {
                let mut it = labels.into_iter();
                let t = fill_leaves(&s, &mut it);
                if is_canonical(&t) {
                    out.push(t);
                }
            }
        }
    }
    out
}

fn fill_leaves(t: &Tree, labels: &mut impl Iterator<Item = u32>) -> Tree {
    match t {
        Tree::Leaf(_) => Tree::Leaf(labels.next().expect("enough labels")),
        Tree::Vertex { gen, children } => Tree::Vertex {
            gen: *gen,
            children: children.iter().map(|c| fill_leaves(c, labels)).collect(),
        },
    }
}

/// Planar shapes with exactly `w` vertices (leaves labeled 0).
fn shapes(gens: &[Generator], w: usize) -> Vec<Tree> {
    if w == 0 {
        return vec![Tree::Leaf(0)];
    }
    let mut out = Vec::new();
    for g in gens {
        for split in compositions(w - 1, g.arity) {
            let options: Vec<Vec<Tree>> = split.iter().map(|&k| shapes(gens, k)).collect();
            for kids in options.iter().multi_cartesian_product() {
                out.push(Tree::Vertex {
                    gen: g.ordinal,
                    children: kids.into_iter().cloned().collect(),
                });
            }
        }
    }
    out
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// A connected piece of a tree starting at some vertex.
#[derive(Debug, Clone)]
pub struct Cut {
    /// Pre-order vertex index of the piece's root.
    pub position: usize,
    /// Pre-order indices of all vertices in the piece.
    pub vertices: BTreeSet<usize>,
    /// The piece with each leaf carrying the minimal label hanging below it.
    pub pattern: Tree,
    /// The hanging subtrees, sorted by minimal leaf.
    pub hanging: Vec<Tree>,
}

/// All connected pieces rooted at every vertex of `t`.
pub fn all_cuts(t: &Tree) -> Vec<Cut> {
    let mut out = Vec::new();
    let mut id = 0;
    visit(t, &mut id, &mut out);
    out
}

fn visit(t: &Tree, id: &mut usize, out: &mut Vec<Cut>) {
    if let Tree::Vertex { children, .. } = t {
        let here = *id;
        out.extend(rooted_cuts(t, here));
        *id += 1;
        for c in children {
            visit(c, id, out);
        }
    }
}

fn rooted_cuts(t: &Tree, id: usize) -> Vec<Cut> {
    let Tree::Vertex { gen, children } = t else {
        return vec![];
    };
    let mut per_child: Vec<Vec<Cut>> = Vec::new();
    let mut child_id = id + 1;
    for c in children {
        let mut options = vec![Cut {
            position: child_id,
            vertices: BTreeSet::new(),
            pattern: Tree::Leaf(min_leaf(c)),
            hanging: vec![c.clone()],
        }];
        options.extend(rooted_cuts(c, child_id));
        per_child.push(options);
        child_id += weight(c);
    }
    per_child
        .iter()
        .multi_cartesian_product()
        .map(|pick| {
            let mut vertices: BTreeSet<usize> = [id].into_iter().collect();
            let mut hanging = Vec::new();
            let mut kids = Vec::new();
            for c in pick {
                vertices.extend(&c.vertices);
                hanging.extend(c.hanging.iter().cloned());
                kids.push(c.pattern.clone());
            }
            hanging.sort_by_key(min_leaf);
            Cut {
                position: id,
                vertices,
                pattern: Tree::Vertex { gen: *gen, children: kids },
                hanging,
            }
        })
        .collect()
}

/// Occurrences of `beta` in `gamma`: pieces whose pattern, relabeled by rank,
/// equals `beta`.
pub fn occurrences(gamma: &Tree, beta: &Tree) -> Vec<Cut> {
    all_cuts(gamma)
        .into_iter()
        .filter(|c| rank_labels(&c.pattern) == *beta)
        .collect()
}

/// Replaces the piece `cut` of `gamma` by `tau`, attaching the hanging
/// subtree of rank `j` at leaf `j` of `tau`, and restores canonical order.
pub fn fill(gamma: &Tree, cut: &Cut, tau: &Tree) -> Tree {
    fn plug(tau: &Tree, hanging: &[Tree]) -> Tree {
        match tau {
            Tree::Leaf(j) => hanging[*j as usize - 1].clone(),
            Tree::Vertex { gen, children } => Tree::Vertex {
                gen: *gen,
                children: children.iter().map(|c| plug(c, hanging)).collect(),
            },
        }
    }
    fn go(t: &Tree, id: &mut usize, cut: &Cut, tau: &Tree) -> Tree {
        match t {
            Tree::Leaf(_) => t.clone(),
            Tree::Vertex { gen, children } => {
                if *id == cut.position {
                    *id += weight(t);
                    return plug(tau, &cut.hanging);
                }
                *id += 1;
                Tree::Vertex {
                    gen: *gen,
                    children: children.iter().map(|c| go(c, id, cut, tau)).collect(),
                }
            }
        }
    }
    let mut id = 0;
    sort_children(go(gamma, &mut id, cut, tau))
}

/// Small common multiples from the definition: common multiples with fewer
/// vertices than `alpha` and `beta` together, covered by the two occurrences.
/// The occurrence of a pattern overlapping itself in place is left out.
/// Results are `(multiple, position of alpha, position of beta)`.
pub fn brute_scms(alpha: &Tree, beta: &Tree, gens: &[Generator]) -> BTreeSet<(Tree, usize, usize)> {
    let (wa, wb) = (weight(alpha), weight(beta));
    let max_arity = arity(alpha) + arity(beta) - 2;
    let mut out = BTreeSet::new();
    for gamma in all_monomials(gens, wa + wb - 1, max_arity) {
        let wg = weight(&gamma);
        if wg < wa.max(wb) {
            continue;
        }
        let oa = occurrences(&gamma, alpha);
        let ob = occurrences(&gamma, beta);
        for a in &oa {
            for b in &ob {
                if alpha == beta && a.position == b.position {
                    continue;
                }
                if a.vertices.union(&b.vertices).count() == wg {
                    out.insert((gamma.clone(), a.position, b.position));
                }
            }
        }
    }
    out
}

/// Dimension of the quotient in arity `n`: the ideal is spanned by every
/// relation substituted into every piece of matching arity of every tree
/// monomial; rank is computed by exact elimination.
pub fn naive_quotient_dimension(relations: &[OperadPolynomial], gens: &[Generator], n: usize) -> usize {
    let monomials: Vec<Tree> = all_monomials(gens, n - 1, n)
        .into_iter()
        .filter(|t| arity(t) == n)
        .collect();
    let index: BTreeMap<&Tree, usize> = monomials.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut pivots: Vec<(usize, BTreeMap<usize, Coeff>)> = Vec::new();
    for gamma in &monomials {
        for cut in all_cuts(gamma) {
            let k = cut.hanging.len();
            for r in relations.iter().filter(|r| r.arity() == Some(k)) {
                let mut row: BTreeMap<usize, Coeff> = BTreeMap::new();
                for (m, c) in r.terms() {
                    let t = fill(gamma, &cut, m.tree());
                    *row.entry(index[&t]).or_insert_with(Coeff::zero) += c;
                }
                row.retain(|_, c| !c.is_zero());
                eliminate(&mut pivots, row);
            }
        }
    }
    monomials.len() - pivots.len()
}

fn eliminate(pivots: &mut Vec<(usize, BTreeMap<usize, Coeff>)>, mut row: BTreeMap<usize, Coeff>) {
    for (p, prow) in pivots.iter() {
        if let Some(c) = row.get(p).cloned() {
            for (j, x) in prow {
                *row.entry(*j).or_insert_with(Coeff::zero) -= &c * x;
            }
            row.retain(|_, c| !c.is_zero());
        }
    }
    if let Some((&p, lead)) = row.iter().next() {
        let inv = Coeff::one() / lead;
        let row: BTreeMap<usize, Coeff> = row.iter().map(|(j, x)| (*j, x * &inv)).collect();
        pivots.push((p, row));
    }
}
