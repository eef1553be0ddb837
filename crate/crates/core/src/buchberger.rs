//! Reduction, S-polynomials and the Buchberger completion loop.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::division::{all_embeddings, first_embedding, Embedding};
use crate::error::{OperadError, Result};
use crate::orderings::OrderingSpec;
use crate::polynomials::{Coeff, Monomial, OperadPolynomial};
use crate::scm::small_common_multiples;
use crate::trees::{enumerate_monomials, Generator, Signature, Tree};

/// Generators, relations and the ordering used to pick leading terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub signature: Signature,
    pub relations: Vec<OperadPolynomial>,
    pub order: OrderingSpec,
}

impl Presentation {
    /// The same presentation with every relation re-sorted under `order`.
    pub fn with_order(&self, order: OrderingSpec) -> Presentation {
        Presentation {
            signature: self.signature.clone(),
            relations: self.relations.iter().map(|r| r.with_order(order)).collect(),
            order,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Limits {
    /// Skip small common multiples above this arity.
    pub max_arity: Option<usize>,
    /// Stop after this many rounds, returning a partial result.
    pub max_rounds: Option<usize>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    pub s_polynomials: usize,
    pub reduced_to_zero: usize,
    /// Small common multiples skipped because of the arity bound.
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerResult {
    /// Monic, inter-reduced, sorted by increasing leading term.
    pub basis: Vec<OperadPolynomial>,
    /// Set when pairs were skipped: the basis is valid up to this arity only.
    pub truncation_arity: Option<usize>,
    pub complete: bool,
    /// Every basis element is a combination of two-vertex monomials.
    pub quadratic: bool,
    pub rounds: usize,
    /// The round budget ran out before the pair queue emptied.
    pub exhausted: bool,
    pub stats: Stats,
}

impl GroebnerResult {
    fn check_arity(&self, n: usize) -> Result<()> {
        match self.truncation_arity {
            Some(t) if n > t => Err(OperadError::AboveTruncation {
                requested: n,
                truncation: t,
            }),
            _ => Ok(()),
        }
    }

    pub fn normal_monomials(&self, generators: &[Generator], n: usize) -> Result<Vec<Tree>> {
        self.check_arity(n)?;
        normal_monomials(&self.basis, generators, n)
    }

    pub fn dimension(&self, generators: &[Generator], n: usize) -> Result<usize> {
        self.check_arity(n)?;
        dimension(&self.basis, generators, n)
    }
}

fn find_divisor<'a>(
    t: &Tree,
    basis: &'a [OperadPolynomial],
) -> Option<(&'a OperadPolynomial, Embedding)> {
    basis.iter().find_map(|g| {
        let lt = g.leading_term().ok()?;
        first_embedding(t, lt).map(|e| (g, e))
    })
}

/// Fully reduces `f` modulo `basis`, always rewriting with the first basis
/// element whose leading term divides, at its first occurrence.
pub fn normal_form(f: &OperadPolynomial, basis: &[OperadPolynomial]) -> OperadPolynomial {
    reduce_by(f, |t| find_divisor(t, basis))
}

/// Full reduction where `choose` picks one of the available reducers for the
/// current term, given as `(basis index, occurrence)` pairs.
pub fn normal_form_with(
    f: &OperadPolynomial,
    basis: &[OperadPolynomial],
    mut choose: impl FnMut(&[(usize, Embedding)]) -> usize,
) -> OperadPolynomial {
    reduce_by(f, |t| {
        let options: Vec<(usize, Embedding)> = basis
            .iter()
            .enumerate()
            .filter_map(|(i, g)| g.leading_term().ok().map(|lt| (i, lt)))
            .flat_map(|(i, lt)| all_embeddings(t, lt).into_iter().map(move |e| (i, e)))
            .collect();
        if options.is_empty() {
            return None;
        }
        let k = choose(&options);
        let (i, e) = options.into_iter().nth(k).expect("choice in range");
        Some((&basis[i], e))
    })
}

fn reduce_by<'a>(
    f: &OperadPolynomial,
    mut reducer: impl FnMut(&Tree) -> Option<(&'a OperadPolynomial, Embedding)>,
) -> OperadPolynomial {
    let order = f.order();
    let mut done: Vec<(Monomial, Coeff)> = Vec::new();
    let mut cur = f.clone();
    while let Some((m, c)) = cur.terms().first().cloned() {
        match reducer(m.tree()) {
            Some((g, e)) => {
                let lifted = e.substitute(g).expect("occurrence arity matches");
                let ratio = &c / g.leading_coefficient().expect("basis elements are nonzero");
                cur = cur
                    .add_scaled(&-ratio, &lifted)
                    .expect("reduction stays in one arity");
            }
            None => {
                done.push((m, c));
                cur = cur.tail();
            }
        }
    }
    OperadPolynomial::from_monomials(done, order).expect("terms share one arity")
}

/// One S-polynomial per small common multiple of the leading terms, in the
/// order the multiples are listed. Leading terms cancel in each.
pub fn s_polynomials(f: &OperadPolynomial, g: &OperadPolynomial) -> Vec<OperadPolynomial> {
    s_polynomials_bounded(f, g, None).0
}

fn s_polynomials_bounded(
    f: &OperadPolynomial,
    g: &OperadPolynomial,
    max_arity: Option<usize>,
) -> (Vec<OperadPolynomial>, usize) {
    let (Ok(lf), Ok(lg)) = (f.leading_term(), g.leading_term()) else {
        return (Vec::new(), 0);
    };
    let ratio = f.leading_coefficient().expect("nonzero") / g.leading_coefficient().expect("nonzero");
    let mut out = Vec::new();
    let mut skipped = 0;
    for scm in small_common_multiples(lf, lg) {
        if max_arity.is_some_and(|n| scm.multiple.arity() > n) {
            skipped += 1;
            continue;
        }
        let a = scm.emb_a.substitute(f).expect("arity matches");
        let b = scm.emb_b.substitute(g).expect("arity matches");
        out.push(a.add_scaled(&-ratio.clone(), &b).expect("same arity"));
    }
    (out, skipped)
}

struct Element {
    id: usize,
    poly: OperadPolynomial,
    paired: bool,
}

struct Completion {
    order: OrderingSpec,
    elements: Vec<Element>,
    next_id: usize,
}

impl Completion {
    fn polys(&self) -> Vec<OperadPolynomial> {
        self.elements.iter().map(|e| e.poly.clone()).collect()
    }

    /// Reduces `f` and adds it if nonzero. Elements whose leading term becomes
    /// divisible by the new one are taken out and re-inserted in reduced form.
    fn insert(&mut self, f: OperadPolynomial) -> bool {
        let mut work = vec![f];
        let mut added = false;
        while let Some(f) = work.pop() {
            let r = normal_form(&f, &self.polys());
            if r.is_zero() {
                continue;
            }
            let r = r.monic().expect("nonzero");
            let lt = r.leading_term().expect("nonzero").clone();
            let (keep, displaced): (Vec<_>, Vec<_>) = std::mem::take(&mut self.elements)
                .into_iter()
                .partition(|e| first_embedding(e.poly.leading_term().expect("nonzero"), &lt).is_none());
            self.elements = keep;
            work.extend(displaced.into_iter().map(|e| e.poly));
            self.elements.push(Element {
                id: self.next_id,
                poly: r,
                paired: false,
            });
            self.next_id += 1;
            added = true;
        }
        added
    }

    /// Rewrites every tail into normal form.
    fn reduce_tails(&mut self) {
        for i in 0..self.elements.len() {
            let polys = self.polys();
            let e = &self.elements[i].poly;
            let head = OperadPolynomial::from_monomials(
                e.terms().first().cloned(),
                self.order,
            )
            .expect("single term");
            let tail = normal_form(&e.tail(), &polys);
            self.elements[i].poly = head.add(&tail).expect("same arity");
        }
    }
}

/// Runs the completion loop.
///
/// Each round forms the S-polynomials of every pair involving an element
/// added since the previous round, reduces them against the basis as it stood
/// at the start of the round (in parallel), and then merges the nonzero
/// remainders one at a time in order of increasing arity. With
/// `limits.max_arity = Some(n)` every multiple above arity `n` is skipped;
/// leading terms above arity `n` never divide monomials of arity at most `n`,
/// so the result is still a Gröbner basis in those arities.
pub fn buchberger(p: &Presentation, limits: Limits) -> GroebnerResult {
    let order = p.order;
    let mut state = Completion {
        order,
        elements: Vec::new(),
        next_id: 0,
    };
    for r in &p.relations {
        state.insert(r.with_order(order));
    }
    state.reduce_tails();

    let mut stats = Stats::default();
    let mut rounds = 0;
    let mut exhausted = false;
    loop {
        let fresh: Vec<usize> = state
            .elements
            .iter()
            .filter(|e| !e.paired)
            .map(|e| e.id)
            .collect();
        if fresh.is_empty() {
            break;
        }
        if limits.max_rounds.is_some_and(|k| rounds >= k) {
            exhausted = true;
            break;
        }
        rounds += 1;

        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for (j, b) in state.elements.iter().enumerate() {
            if b.paired {
                continue;
            }
            for (i, a) in state.elements.iter().enumerate() {
                if a.paired || a.id <= b.id {
                    pairs.push((i, j));
                }
            }
        }
        pairs.sort_by_key(|&(i, j)| (state.elements[j].id, state.elements[i].id));
        state.elements.iter_mut().for_each(|e| e.paired = true);

        let snapshot = state.polys();
        let formed: Vec<(Vec<OperadPolynomial>, usize)> = pairs
            .par_iter()
            .map(|&(i, j)| s_polynomials_bounded(&snapshot[i], &snapshot[j], limits.max_arity))
            .collect();
        let mut spolys: Vec<(usize, usize, usize, OperadPolynomial)> = Vec::new();
        for (pair_idx, (list, skipped)) in formed.into_iter().enumerate() {
            stats.skipped += skipped;
            for (k, s) in list.into_iter().enumerate() {
                stats.s_polynomials += 1;
                let arity = s.arity().unwrap_or(0);
                spolys.push((arity, pair_idx, k, s));
            }
        }
        spolys.sort_by_key(|a| (a.0, a.1, a.2));
        let reduced: Vec<OperadPolynomial> = spolys
            .par_iter()
            .map(|(_, _, _, s)| normal_form(s, &snapshot))
            .collect();
        for r in reduced {
            if r.is_zero() || !state.insert(r) {
                stats.reduced_to_zero += 1;
            }
        }
        state.reduce_tails();
    }

    let mut basis = state.polys();
    basis.sort_by(|a, b| compare_by_leading_term(order, a, b));
    let quadratic = is_quadratic(&basis);
    GroebnerResult {
        truncation_arity: if stats.skipped > 0 { limits.max_arity } else { None },
        complete: !exhausted && stats.skipped == 0,
        quadratic,
        rounds,
        exhausted,
        stats,
        basis,
    }
}

/// Tree monomials of arity `n` not divisible by any leading term of `basis`.
pub fn normal_monomials(
    basis: &[OperadPolynomial],
    generators: &[Generator],
    n: usize,
) -> Result<Vec<Tree>> {
    let leads: Vec<&Tree> = basis
        .iter()
        .filter_map(|g| g.leading_term().ok())
        .filter(|lt| lt.arity() <= n)
        .collect();
    Ok(enumerate_monomials(generators, n)?
        .into_iter()
        .filter(|t| !leads.iter().any(|lt| first_embedding(t, lt).is_some()))
        .collect())
}

pub fn dimension(basis: &[OperadPolynomial], generators: &[Generator], n: usize) -> Result<usize> {
    normal_monomials(basis, generators, n).map(|v| v.len())
}

/// True when every element involves only two-vertex monomials.
pub fn is_quadratic(basis: &[OperadPolynomial]) -> bool {
    basis.iter().all(|g| g.is_weight_homogeneous(2))
}

/// Compares polynomials by leading term; zero sorts first.
pub fn compare_by_leading_term(order: OrderingSpec, a: &OperadPolynomial, b: &OperadPolynomial) -> Ordering {
    match (a.leading_monomial(), b.leading_monomial()) {
        (Ok(x), Ok(y)) => order.compare_keys(x.key(), y.key()),
        (Err(_), Ok(_)) => Ordering::Less,
        (Ok(_), Err(_)) => Ordering::Greater,
        (Err(_), Err(_)) => Ordering::Equal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetrize::{canonicalize_polynomial, orbit_closure, GeneratorAction};
    use crate::trees::fixtures::{leaf, m, sig};
    use num_bigint::BigInt;

    fn q(n: i64) -> Coeff {
        Coeff::from_integer(BigInt::from(n))
    }

    fn assoc() -> OperadPolynomial {
        OperadPolynomial::from_terms(
            vec![
                (m(m(leaf(1), leaf(2)), leaf(3)), q(1)),
                (m(leaf(1), m(leaf(2), leaf(3))), q(-1)),
            ],
            OrderingSpec::PATH_PERM,
        )
        .unwrap()
    }

    fn binary() -> Signature {
        Signature::from_pairs([("m", 2)]).unwrap()
    }

    fn lie() -> (Signature, Vec<OperadPolynomial>) {
        let sig = binary();
        let mut act = GeneratorAction::new();
        act.set(&sig, 0, 1, vec![(q(-1), 0)]).unwrap();
        let jacobi = canonicalize_polynomial(
            &[
                (m(m(leaf(1), leaf(2)), leaf(3)), q(1)),
                (m(m(leaf(2), leaf(3)), leaf(1)), q(1)),
                (m(m(leaf(3), leaf(1)), leaf(2)), q(1)),
            ],
            &act,
            &sig,
            OrderingSpec::PATH_PERM,
        )
        .unwrap();
        let rels = orbit_closure(&[jacobi], &act, &sig).unwrap();
        (sig, rels)
    }

    #[test]
    fn normal_form_examples() {
        let a = assoc();
        assert_eq!(a.leading_term().unwrap(), &m(m(leaf(1), leaf(2)), leaf(3)));
        assert!(normal_form(&a, std::slice::from_ref(&a)).is_zero());
        let lhs = OperadPolynomial::monomial(m(m(leaf(1), leaf(2)), leaf(3)), a.order());
        let rhs = OperadPolynomial::monomial(m(leaf(1), m(leaf(2), leaf(3))), a.order());
        assert_eq!(normal_form(&lhs, std::slice::from_ref(&a)), rhs);
        assert_eq!(normal_form(&rhs, std::slice::from_ref(&a)), rhs);
        let zero = OperadPolynomial::zero(a.order());
        assert!(normal_form(&zero, std::slice::from_ref(&a)).is_zero());
    }

    #[test]
    fn s_polynomials_of_associativity() {
        let a = assoc();
        let lt = a.leading_term().unwrap();
        let s = s_polynomials(&a, &a);
        assert_eq!(s.len(), 2);
        for (p, scm) in s.iter().zip(small_common_multiples(lt, lt)) {
            assert_eq!(p.arity(), Some(4));
            if let Ok(head) = p.leading_monomial() {
                let gamma = Monomial::new(scm.multiple);
                assert_eq!(a.order().compare_keys(head.key(), gamma.key()), Ordering::Less);
            }
        }
        let mono = OperadPolynomial::monomial(lt.clone(), a.order());
        assert!(s_polynomials(&mono, &mono).iter().all(OperadPolynomial::is_zero));
        let corolla = OperadPolynomial::monomial(m(leaf(1), leaf(2)), a.order());
        let ternary = OperadPolynomial::monomial(
            Tree::Vertex { gen: 1, children: vec![leaf(1), leaf(2), leaf(3)] },
            a.order(),
        );
        assert!(s_polynomials(&corolla, &ternary).is_empty());
    }

    #[test]
    fn trivial_presentations() {
        let sig = binary();
        let empty = Presentation {
            signature: sig.clone(),
            relations: vec![],
            order: OrderingSpec::PATH_PERM,
        };
        let res = buchberger(&empty, Limits::default());
        assert!(res.basis.is_empty() && res.complete && res.quadratic);
        assert_eq!(res.dimension(sig.generators(), 3).unwrap(), 3);
        assert_eq!(res.dimension(sig.generators(), 5).unwrap(), 105);

        let mono = OperadPolynomial::monomial(m(m(leaf(1), leaf(2)), leaf(3)), OrderingSpec::PATH_PERM);
        let p = Presentation {
            relations: vec![mono.scale(&q(3))],
            ..empty
        };
        let res = buchberger(&p, Limits::default());
        assert_eq!(res.basis, vec![mono]);
        assert!(res.complete);
        assert_eq!(res.rounds, 1);
    }

    #[test]
    fn killing_a_generator() {
        let s = sig();
        let u = Tree::Vertex { gen: 2, children: vec![leaf(1), leaf(2)] };
        let g = vec![OperadPolynomial::monomial(u, OrderingSpec::PATH_PERM)];
        for n in 2..=4 {
            let survivors = normal_monomials(&g, s.generators(), n).unwrap();
            assert!(!survivors.is_empty());
            assert!(survivors.iter().all(|t| !t.vertex_labels().contains(&2)));
        }
    }

    #[test]
    fn lie_is_quadratic_with_factorial_dimensions() {
        let (sig, rels) = lie();
        assert_eq!(rels.len(), 1);
        let p = Presentation {
            signature: sig.clone(),
            relations: rels,
            order: OrderingSpec::PATH_PERM,
        };
        let res = buchberger(&p, Limits::default());
        assert!(res.complete && res.quadratic);
        assert_eq!(res.normal_monomials(sig.generators(), 3).unwrap().len(), 2);
        let dims: Vec<usize> = (2..=5).map(|n| res.dimension(sig.generators(), n).unwrap()).collect();
        assert_eq!(dims, [1, 2, 6, 24]);
    }

    #[test]
    fn truncation_is_reported() {
        let s = Signature::from_pairs([("m", 2), ("mop", 2)]).unwrap();
        let mut act = GeneratorAction::new();
        act.set(&s, 0, 1, vec![(q(1), 1)]).unwrap();
        act.set(&s, 1, 1, vec![(q(1), 0)]).unwrap();
        let rels = orbit_closure(&[assoc()], &act, &s).unwrap();
        let perm_first = OrderingSpec::all()[4];
        let p = Presentation {
            signature: s.clone(),
            relations: rels,
            order: OrderingSpec::PATH_PERM,
        }
        .with_order(perm_first);
        let res = buchberger(&p, Limits { max_arity: Some(4), max_rounds: None });
        assert!(!res.complete);
        assert_eq!(res.truncation_arity, Some(4));
        assert_eq!(res.dimension(s.generators(), 4).unwrap(), 24);
        assert!(matches!(
            res.dimension(s.generators(), 5),
            Err(OperadError::AboveTruncation { requested: 5, truncation: 4 })
        ));
        let partial = buchberger(&p, Limits { max_arity: None, max_rounds: Some(0) });
        assert!(partial.exhausted && !partial.complete);
    }
}
