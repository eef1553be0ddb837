//! Linear combinations of tree monomials over the rationals.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{OperadError, Result};
use crate::orderings::{OrderingSpec, PathKey};
use crate::permutations::Permutation;
use crate::trees::{Signature, Tree};

pub type Coeff = BigRational;

/// A tree monomial together with its cached ordering key.
#[derive(Clone)]
pub struct Monomial(Arc<MonomialData>);

struct MonomialData {
    tree: Tree,
    key: PathKey,
}

impl Monomial {
    pub fn new(tree: Tree) -> Self {
        let key = PathKey::of(&tree);
        Monomial(Arc::new(MonomialData { tree, key }))
    }

    pub fn tree(&self) -> &Tree {
        &self.0.tree
    }

    pub fn key(&self) -> &PathKey {
        &self.0.key
    }

    pub fn arity(&self) -> usize {
        self.0.key.arity()
    }
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.tree == other.0.tree
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.tree.hash(state)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.tree.fmt(f)
    }
}

/// A finite linear combination of tree monomials of a single arity.
///
/// Terms are kept strictly decreasing under the polynomial's ordering, with no
/// zero coefficients, so the leading term is the first one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperadPolynomial {
    order: OrderingSpec,
    terms: Vec<(Monomial, Coeff)>,
}

impl OperadPolynomial {
    pub fn zero(order: OrderingSpec) -> Self {
        Self {
            order,
            terms: Vec::new(),
        }
    }

    pub fn monomial(tree: Tree, order: OrderingSpec) -> Self {
        Self {
            order,
            terms: vec![(Monomial::new(tree), Coeff::one())],
        }
    }

    /// Combines duplicate monomials and drops zero coefficients.
    pub fn from_terms(
        pairs: impl IntoIterator<Item = (Tree, Coeff)>,
        order: OrderingSpec,
    ) -> Result<Self> {
        Self::from_monomials(pairs.into_iter().map(|(t, c)| (Monomial::new(t), c)), order)
    }

    pub fn from_monomials(
        pairs: impl IntoIterator<Item = (Monomial, Coeff)>,
        order: OrderingSpec,
    ) -> Result<Self> {
        let mut terms: Vec<(Monomial, Coeff)> = pairs.into_iter().collect();
        if let Some((first, _)) = terms.first() {
            let n = first.arity();
            if let Some((bad, _)) = terms.iter().find(|(m, _)| m.arity() != n) {
                return Err(OperadError::WrongArity {
                    expected: n,
                    found: bad.arity(),
                });
            }
        }
        // stable sort: linear on already sorted input
        terms.sort_by(|a, b| order.compare_keys(b.0.key(), a.0.key()));
        let mut out: Vec<(Monomial, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if out.last().is_some_and(|(last, _)| *last == m) {
                out.last_mut().expect("nonempty").1 += c;
                continue;
            }
            if out.last().is_some_and(|(_, c)| c.is_zero()) {
                out.pop();
            }
            out.push((m, c));
        }
        if out.last().is_some_and(|(_, c)| c.is_zero()) {
            out.pop();
        }
        Ok(Self { order, terms: out })
    }

    pub fn order(&self) -> OrderingSpec {
        self.order
    }

    /// The same element sorted under another ordering.
    pub fn with_order(&self, order: OrderingSpec) -> Self {
        Self::from_monomials(self.terms.iter().cloned(), order).expect("arity already uniform")
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn arity(&self) -> Option<usize> {
        self.terms.first().map(|(m, _)| m.arity())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in decreasing monomial order.
    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn coefficient(&self, t: &Tree) -> Coeff {
        self.terms
            .iter()
            .find(|(m, _)| m.tree() == t)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Coeff::zero)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            return Err(OperadError::OrderingMismatch);
        }
        match (self.arity(), other.arity()) {
            (Some(a), Some(b)) if a != b => Err(OperadError::WrongArity {
                expected: a,
                found: b,
            }),
            _ => Ok(()),
        }
    }

    /// `self + c * other`, merging the two sorted term lists.
    pub fn add_scaled(&self, c: &Coeff, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if c.is_zero() || other.is_zero() {
            return Ok(self.clone());
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match self.order.compare_keys(a[i].0.key(), b[j].0.key()) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), c * &b[j].1));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &a[i].1 + c * &b[j].1;
                    if !s.is_zero() {
                        out.push((a[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, x)| (m.clone(), c * x)));
        Ok(Self {
            order: self.order,
            terms: out,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.add_scaled(&Coeff::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add_scaled(&-Coeff::one(), other)
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        Self {
            order: self.order,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn leading_monomial(&self) -> Result<&Monomial> {
        self.terms
            .first()
            .map(|(m, _)| m)
            .ok_or(OperadError::ZeroPolynomial)
    }

    pub fn leading_term(&self) -> Result<&Tree> {
        self.leading_monomial().map(Monomial::tree)
    }

    pub fn leading_coefficient(&self) -> Result<&Coeff> {
        self.terms
            .first()
            .map(|(_, c)| c)
            .ok_or(OperadError::ZeroPolynomial)
    }

    pub fn monic(&self) -> Result<Self> {
        let c = self.leading_coefficient()?;
        Ok(self.scale(&c.recip()))
    }

    /// Everything but the leading term.
    pub fn tail(&self) -> Self {
        Self {
            order: self.order,
            terms: self.terms.iter().skip(1).cloned().collect(),
        }
    }

    /// Applies a monomial-to-monomial map linearly. The map need not preserve
    /// the order; terms are re-sorted.
    pub fn map_monomials(&self, mut f: impl FnMut(&Tree) -> Tree) -> Result<Self> {
        Self::from_terms(
            self.terms.iter().map(|(m, c)| (f(m.tree()), c.clone())),
            self.order,
        )
    }

    /// Multilinear shuffle composition `self(args)_sigma`.
    pub fn compose(&self, args: &[OperadPolynomial], sigma: &Permutation) -> Result<Self> {
        let mut acc: Vec<(Tree, Coeff)> = Vec::new();
        let mut picks: Vec<(Vec<Tree>, Coeff)> = vec![(Vec::new(), Coeff::one())];
        for a in args {
            let mut next = Vec::with_capacity(picks.len() * a.len());
            for (trees, c) in &picks {
                for (m, x) in &a.terms {
                    let mut ts = trees.clone();
                    ts.push(m.tree().clone());
                    next.push((ts, c * x));
                }
            }
            picks = next;
        }
        for (root, c) in &self.terms {
            for (trees, x) in &picks {
                acc.push((root.tree().shuffle_compose(trees, sigma)?, c * x));
            }
        }
        Self::from_terms(acc, self.order)
    }

    /// Largest number of vertices among the terms.
    pub fn max_weight(&self) -> usize {
        self.terms.iter().map(|(m, _)| m.tree().weight()).max().unwrap_or(0)
    }

    /// True when every term has exactly `w` vertices.
    pub fn is_weight_homogeneous(&self, w: usize) -> bool {
        self.terms.iter().all(|(m, _)| m.tree().weight() == w)
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> PolynomialDisplay<'a> {
        PolynomialDisplay { poly: self, sig }
    }
}

pub struct PolynomialDisplay<'a> {
    poly: &'a OperadPolynomial,
    sig: &'a Signature,
}

impl fmt::Display for PolynomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.poly.terms.iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if !a.is_one() {
                write!(f, "{a}*")?;
            }
            write!(f, "{}", m.tree().display(self.sig))?;
        }
        Ok(())
    }
}
