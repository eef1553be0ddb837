//! Tree monomials of the free shuffle operad.
//!
//! A [`Tree`] is a planar rooted tree whose internal vertices carry generator
//! ordinals and whose leaves carry positive integer labels. A tree whose leaf
//! labels are exactly `1..=n` and whose children are sorted at every vertex by
//! their minimal reachable leaf is a *tree monomial*; [`Tree::is_shuffle_monomial`]
//! checks this. Operations that can leave the canonical form (grafting, leaf
//! relabeling) say so in their docs.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{OperadError, Result};
use crate::permutations::{shuffle_permutations, Permutation};

/// A generating operation of the presentation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub arity: usize,
    /// Position in the declared generator list; this is the alphabet order
    /// used by the monomial orderings.
    pub ordinal: u32,
}

/// The ordered list of generators of a presentation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    generators: Vec<Generator>,
    by_name: HashMap<String, u32>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a signature from `(name, arity)` pairs in declaration order.
    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, usize)>) -> Result<Self> {
        let mut sig = Self::new();
        for (name, arity) in pairs {
            sig.declare(name, arity)?;
        }
        Ok(sig)
    }

    pub fn declare(&mut self, name: &str, arity: usize) -> Result<&Generator> {
        if self.by_name.contains_key(name) {
            return Err(OperadError::DuplicateGenerator(name.to_string()));
        }
        if arity == 0 {
            return Err(OperadError::NullaryGenerator(name.to_string()));
        }
        let ordinal = self.generators.len() as u32;
        self.by_name.insert(name.to_string(), ordinal);
        self.generators.push(Generator {
            name: name.to_string(),
            arity,
            ordinal,
        });
        Ok(&self.generators[ordinal as usize])
    }

    pub fn get(&self, ordinal: u32) -> &Generator {
        &self.generators[ordinal as usize]
    }

    pub fn lookup(&self, name: &str) -> Option<&Generator> {
        self.by_name.get(name).map(|&i| &self.generators[i as usize])
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn has_unary(&self) -> bool {
        self.generators.iter().any(|g| g.arity == 1)
    }
}

/// A leaf-labeled planar tree with generator-decorated vertices.
///
/// The derived `Ord` is a structural order used only for deterministic output;
/// it is not a monomial ordering.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    Leaf(u32),
    Vertex { gen: u32, children: Vec<Tree> },
}

impl Tree {
    /// The single-vertex tree on `g` with the given leaves, children sorted by label.
    pub fn corolla(g: &Generator, leaf_labels: &[u32]) -> Result<Tree> {
        if leaf_labels.len() != g.arity {
            return Err(OperadError::ArityMismatch {
                name: g.name.clone(),
                expected: g.arity,
                found: leaf_labels.len(),
            });
        }
        let mut labels = leaf_labels.to_vec();
        labels.sort_unstable();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(OperadError::DuplicateLabel(w[0]));
        }
        if labels.first() == Some(&0) {
            return Err(OperadError::InvalidPermutation(leaf_labels.to_vec()));
        }
        Ok(Tree::Vertex {
            gen: g.ordinal,
            children: labels.into_iter().map(Tree::Leaf).collect(),
        })
    }

    /// The corolla of `g` on leaves `1..=arity`.
    pub fn standard_corolla(g: &Generator) -> Tree {
        Tree::Vertex {
            gen: g.ordinal,
            children: (1..=g.arity as u32).map(Tree::Leaf).collect(),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf(_))
    }

    /// Number of leaves.
    pub fn arity(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Vertex { children, .. } => children.iter().map(Tree::arity).sum(),
        }
    }

    /// Number of internal vertices.
    pub fn weight(&self) -> usize {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Vertex { children, .. } => 1 + children.iter().map(Tree::weight).sum::<usize>(),
        }
    }

    pub fn min_leaf(&self) -> u32 {
        match self {
            Tree::Leaf(l) => *l,
            Tree::Vertex { children, .. } => children
                .iter()
                .map(Tree::min_leaf)
                .min()
                .expect("vertex without children"),
        }
    }

    /// Leaf labels in planar left-to-right order.
    pub fn leaves(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.arity());
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<u32>) {
        match self {
            Tree::Leaf(l) => out.push(*l),
            Tree::Vertex { children, .. } => children.iter().for_each(|c| c.collect_leaves(out)),
        }
    }

    /// Generator ordinals of all vertices in pre-order.
    pub fn vertex_labels(&self) -> Vec<u32> {
        let mut out = Vec::new();
        self.walk_vertices(&mut |t| {
            if let Tree::Vertex { gen, .. } = t {
                out.push(*gen);
            }
        });
        out
    }

    fn walk_vertices(&self, f: &mut impl FnMut(&Tree)) {
        if let Tree::Vertex { children, .. } = self {
            f(self);
            children.iter().for_each(|c| c.walk_vertices(f));
        }
    }

    /// The subtree rooted at the vertex with the given pre-order index.
    pub fn vertex_at(&self, position: usize) -> Option<&Tree> {
        let mut seen = 0usize;
        let mut found = None;
        fn go<'a>(t: &'a Tree, target: usize, seen: &mut usize, found: &mut Option<&'a Tree>) {
            if found.is_some() {
                return;
            }
            if let Tree::Vertex { children, .. } = t {
                if *seen == target {
                    *found = Some(t);
                    return;
                }
                *seen += 1;
                for c in children {
                    go(c, target, seen, found);
                }
            }
        }
        go(self, position, &mut seen, &mut found);
        found
    }

    /// Checks that leaf labels are a bijection onto `1..=arity`.
    pub fn check_labels(&self) -> Result<()> {
        let n = self.arity();
        let mut seen = vec![false; n + 1];
        for l in self.leaves() {
            let l = l as usize;
            if l == 0 || l > n || seen[l] {
                return Err(OperadError::NonBijectiveLabels(n));
            }
            seen[l] = true;
        }
        Ok(())
    }

    /// True iff every vertex lists its children by increasing minimal leaf.
    ///
    /// Malformed labelings are reported as an error rather than `false`.
    pub fn is_shuffle_monomial(&self) -> Result<bool> {
        self.check_labels()?;
        Ok(self.children_sorted())
    }

    /// The canonical-order check without the label bijection check.
    pub(crate) fn children_sorted(&self) -> bool {
        fn go(t: &Tree) -> Option<u32> {
            match t {
                Tree::Leaf(l) => Some(*l),
                Tree::Vertex { children, .. } => {
                    let mut prev = None;
                    let mut min = u32::MAX;
                    for c in children {
                        let m = go(c)?;
                        if prev.is_some_and(|p| p >= m) {
                            return None;
                        }
                        prev = Some(m);
                        min = min.min(m);
                    }
                    Some(min)
                }
            }
        }
        go(self).is_some()
    }

    /// Applies `f` to every leaf label.
    pub fn map_leaves(&self, f: &impl Fn(u32) -> u32) -> Tree {
        match self {
            Tree::Leaf(l) => Tree::Leaf(f(*l)),
            Tree::Vertex { gen, children } => Tree::Vertex {
                gen: *gen,
                children: children.iter().map(|c| c.map_leaves(f)).collect(),
            },
        }
    }

    /// Relabels leaves `1..=k` by the rank of their current labels.
    ///
    /// Applied to a subtree whose leaves carry the minimal ambient descendants
    /// of a divisor occurrence, this yields the divisor tree monomial.
    pub fn standardize(&self) -> Tree {
        let mut labels = self.leaves();
        labels.sort_unstable();
        let rank: HashMap<u32, u32> = labels
            .into_iter()
            .enumerate()
            .map(|(i, l)| (l, i as u32 + 1))
            .collect();
        self.map_leaves(&|l| rank[&l])
    }

    /// Nonsymmetric composition: leaf `i` of `self` is replaced by `args[i-1]`
    /// with its labels shifted by the total arity of the earlier arguments.
    ///
    /// The result is canonical only when `self` is and the arguments are.
    pub fn graft(&self, args: &[Tree]) -> Result<Tree> {
        let n = self.arity();
        if args.len() != n {
            return Err(OperadError::WrongArity {
                expected: n,
                found: args.len(),
            });
        }
        let mut shifts = Vec::with_capacity(n);
        let mut total = 0u32;
        for a in args {
            shifts.push(total);
            total += a.arity() as u32;
        }
        fn go(t: &Tree, args: &[Tree], shifts: &[u32]) -> Tree {
            match t {
                Tree::Leaf(l) => {
                    let i = *l as usize - 1;
                    let s = shifts[i];
                    args[i].map_leaves(&|x| x + s)
                }
                Tree::Vertex { gen, children } => Tree::Vertex {
                    gen: *gen,
                    children: children.iter().map(|c| go(c, args, shifts)).collect(),
                },
            }
        }
        self.check_labels()?;
        Ok(go(self, args, &shifts))
    }

    /// Shuffle composition `self(args)_sigma`: graft, then send every leaf
    /// label `l` to `sigma(l)`.
    pub fn shuffle_compose(&self, args: &[Tree], sigma: &Permutation) -> Result<Tree> {
        let blocks: Vec<usize> = args.iter().map(Tree::arity).collect();
        if !sigma.is_shuffle_of(&blocks) {
            return Err(OperadError::NotShuffle(blocks));
        }
        let grafted = self.graft(args)?;
        Ok(grafted.map_leaves(&|l| sigma.image(l)))
    }

    /// Displays the tree using generator names from `sig`.
    pub fn display<'a>(&'a self, sig: &'a Signature) -> TreeDisplay<'a> {
        TreeDisplay { tree: self, sig }
    }
}

pub struct TreeDisplay<'a> {
    tree: &'a Tree,
    sig: &'a Signature,
}

impl fmt::Display for TreeDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tree {
            Tree::Leaf(l) => write!(f, "{l}"),
            Tree::Vertex { gen, children } => {
                write!(f, "{}(", self.sig.get(*gen).name)?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{}", c.display(self.sig))?;
                }
                f.write_str(")")
            }
        }
    }
}

/// All tree monomials of arity `n` over `generators`, each exactly once.
///
/// Fails when a unary generator is present, since the set is then infinite;
/// use [`enumerate_monomials_bounded`] instead.
pub fn enumerate_monomials(generators: &[Generator], n: usize) -> Result<Vec<Tree>> {
    if generators.iter().any(|g| g.arity == 1) {
        return Err(OperadError::UnboundedEnumeration(n));
    }
    Ok(enumerate_monomials_bounded(generators, n, n.saturating_sub(1)))
}

/// All tree monomials of arity `n` and weight at most `max_weight`, ordered by
/// weight and then by generation order.
pub fn enumerate_monomials_bounded(generators: &[Generator], n: usize, max_weight: usize) -> Vec<Tree> {
    let mut en = Enumerator::new(generators);
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for w in 0..=max_weight {
        for t in en.exact(n, w).iter() {
            if seen.insert(t.clone()) {
                out.push(t.clone());
            }
        }
    }
    out
}

/// Memoized generator of tree monomials by exact arity and weight.
///
/// Every tree monomial is a root corolla shuffle-composed with child monomials,
/// and that decomposition is unique, so no tree is produced twice.
pub struct Enumerator<'a> {
    generators: &'a [Generator],
    memo: HashMap<(usize, usize), std::rc::Rc<Vec<Tree>>>,
    shuffles: HashMap<Vec<usize>, std::rc::Rc<Vec<Permutation>>>,
}

impl<'a> Enumerator<'a> {
    pub fn new(generators: &'a [Generator]) -> Self {
        Self {
            generators,
            memo: HashMap::new(),
            shuffles: HashMap::new(),
        }
    }

    pub fn exact(&mut self, n: usize, w: usize) -> std::rc::Rc<Vec<Tree>> {
        if let Some(v) = self.memo.get(&(n, w)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if w == 0 {
            if n == 1 {
                out.push(Tree::Leaf(1));
            }
        } else if n >= 1 {
            for g in self.generators {
                let k = g.arity;
                if k > n {
                    continue;
                }
                let root = Tree::standard_corolla(g);
                for arities in compositions(n, k, 1) {
                    for weights in compositions(w - 1, k, 0) {
                        let pools: Vec<_> = arities
                            .iter()
                            .zip(&weights)
                            .map(|(&a, &wt)| self.exact(a, wt))
                            .collect();
                        if pools.iter().any(|p| p.is_empty()) {
                            continue;
                        }
                        let sigmas = self.shuffles_of(&arities);
                        let mut idx = vec![0usize; k];
                        loop {
                            let args: Vec<Tree> =
                                idx.iter().zip(&pools).map(|(&i, p)| p[i].clone()).collect();
                            for s in sigmas.iter() {
                                out.push(
                                    root.shuffle_compose(&args, s)
                                        .expect("enumeration composes valid shuffles"),
                                );
                            }
                            if !advance(&mut idx, &pools) {
                                break;
                            }
                        }
                    }
                }
            }
        }
        let rc = std::rc::Rc::new(out);
        self.memo.insert((n, w), rc.clone());
        rc
    }

    fn shuffles_of(&mut self, blocks: &[usize]) -> std::rc::Rc<Vec<Permutation>> {
        self.shuffles
            .entry(blocks.to_vec())
            .or_insert_with(|| {
                std::rc::Rc::new(shuffle_permutations(blocks).expect("positive block sizes"))
            })
            .clone()
    }
}

fn advance(idx: &mut [usize], pools: &[std::rc::Rc<Vec<Tree>>]) -> bool {
    for i in (0..idx.len()).rev() {
        idx[i] += 1;
        if idx[i] < pools[i].len() {
            return true;
        }
        idx[i] = 0;
    }
    false
}

/// Ordered compositions of `total` into `parts` parts, each at least `min`.
fn compositions(total: usize, parts: usize, min: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(parts);
    fn go(rest: usize, parts: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if rest < min * parts {
            return;
        }
        for first in min..=rest - min * (parts - 1) {
            cur.push(first);
            go(rest - first, parts - 1, min, cur, out);
            cur.pop();
        }
    }
    go(total, parts, min, &mut cur, &mut out);
    out
}
