//! Path-sequence invariants and the eight admissible orderings built from them.
//!
//! To a tree monomial of arity `n` we attach `n` words (the generator ordinals
//! met on the path from the root to leaf `i`, root first) and the permutation
//! listing leaf labels in planar order. Orderings compare arities first, then
//! the two components in a chosen priority, each in a chosen direction.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::trees::Tree;

/// The cached comparison invariant of a tree monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathKey {
    /// `words[i]` is the root-to-leaf word of the leaf labeled `i + 1`.
    pub words: Vec<Vec<u32>>,
    /// Leaf labels in planar left-to-right order.
    pub perm: Vec<u32>,
}

impl PathKey {
    pub fn of(t: &Tree) -> PathKey {
        let n = t.arity();
        let mut words = vec![Vec::new(); n];
        let mut perm = Vec::with_capacity(n);
        let mut path = Vec::new();
        fn go(t: &Tree, path: &mut Vec<u32>, words: &mut [Vec<u32>], perm: &mut Vec<u32>) {
            match t {
                Tree::Leaf(l) => {
                    words[*l as usize - 1] = path.clone();
                    perm.push(*l);
                }
                Tree::Vertex { gen, children } => {
                    path.push(*gen);
                    for c in children {
                        go(c, path, words, perm);
                    }
                    path.pop();
                }
            }
        }
        go(t, &mut path, &mut words, &mut perm);
        PathKey { words, perm }
    }

    pub fn arity(&self) -> usize {
        self.perm.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Priority {
    PathFirst,
    PermFirst,
}

/// How two words are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WordOrder {
    /// Longer words are greater; equal lengths compare lexicographically.
    DegLex,
    /// Shorter words are greater; equal lengths compare lexicographically.
    RevDegLex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PermOrder {
    Lex,
    /// The opposite of the lexicographic order on image lists.
    RevLex,
}

/// One of the eight path/permutation orderings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrderingSpec {
    pub priority: Priority,
    pub words: WordOrder,
    pub perm: PermOrder,
}

impl Default for OrderingSpec {
    fn default() -> Self {
        OrderingSpec::PATH_PERM
    }
}

impl OrderingSpec {
    pub const PATH_PERM: Self = Self::new(Priority::PathFirst, WordOrder::DegLex, PermOrder::Lex);

    pub const fn new(priority: Priority, words: WordOrder, perm: PermOrder) -> Self {
        Self { priority, words, perm }
    }

    /// All eight orderings, in the order their names are listed.
    pub fn all() -> [OrderingSpec; 8] {
        use PermOrder::*;
        use Priority::*;
        use WordOrder::*;
        [
            Self::new(PathFirst, DegLex, Lex),
            Self::new(PathFirst, RevDegLex, Lex),
            Self::new(PathFirst, DegLex, RevLex),
            Self::new(PathFirst, RevDegLex, RevLex),
            Self::new(PermFirst, DegLex, Lex),
            Self::new(PermFirst, DegLex, RevLex),
            Self::new(PermFirst, RevDegLex, Lex),
            Self::new(PermFirst, RevDegLex, RevLex),
        ]
    }

    pub fn name(&self) -> &'static str {
        use PermOrder::*;
        use Priority::*;
        use WordOrder::*;
        match (self.priority, self.words, self.perm) {
            (PathFirst, DegLex, Lex) => "PathPerm",
            (PathFirst, RevDegLex, Lex) => "RPathPerm",
            (PathFirst, DegLex, RevLex) => "PathRPerm",
            (PathFirst, RevDegLex, RevLex) => "RPathRPerm",
            (PermFirst, DegLex, Lex) => "PermPath",
            (PermFirst, DegLex, RevLex) => "RPermPath",
            (PermFirst, RevDegLex, Lex) => "PermRPath",
            (PermFirst, RevDegLex, RevLex) => "RPermRPath",
        }
    }

    pub fn compare_words(&self, a: &[u32], b: &[u32]) -> Ordering {
        let by_len = a.len().cmp(&b.len());
        let by_len = match self.words {
            WordOrder::DegLex => by_len,
            WordOrder::RevDegLex => by_len.reverse(),
        };
        by_len.then_with(|| a.cmp(b))
    }

    fn compare_paths(&self, a: &PathKey, b: &PathKey) -> Ordering {
        for (x, y) in a.words.iter().zip(&b.words) {
            let o = self.compare_words(x, y);
            if o != Ordering::Equal {
                return o;
            }
        }
        Ordering::Equal
    }

    fn compare_perms(&self, a: &PathKey, b: &PathKey) -> Ordering {
        let o = a.perm.cmp(&b.perm);
        match self.perm {
            PermOrder::Lex => o,
            PermOrder::RevLex => o.reverse(),
        }
    }

    /// Compares two cached keys. `Greater` means the larger monomial.
    pub fn compare_keys(&self, a: &PathKey, b: &PathKey) -> Ordering {
        a.arity().cmp(&b.arity()).then_with(|| match self.priority {
            Priority::PathFirst => self
                .compare_paths(a, b)
                .then_with(|| self.compare_perms(a, b)),
            Priority::PermFirst => self
                .compare_perms(a, b)
                .then_with(|| self.compare_paths(a, b)),
        })
    }

    pub fn compare(&self, s: &Tree, t: &Tree) -> Ordering {
        self.compare_keys(&PathKey::of(s), &PathKey::of(t))
    }
}

impl fmt::Display for OrderingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown ordering `{0}` (expected one of pathperm, rpathperm, pathrperm, rpathrperm, permpath, rpermpath, permrpath, rpermrpath)")]
pub struct UnknownOrdering(pub String);

impl FromStr for OrderingSpec {
    type Err = UnknownOrdering;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        OrderingSpec::all()
            .into_iter()
            .find(|o| o.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownOrdering(s.to_string()))
    }
}
