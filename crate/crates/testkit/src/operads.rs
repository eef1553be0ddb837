//! Classical presentations built directly in code.

use num_bigint::BigInt;
use opgb_core::symmetrize::{canonicalize_polynomial, orbit_closure, GeneratorAction};
use opgb_core::{Coeff, OperadPolynomial, OrderingSpec, Signature, Tree};

pub struct Symmetric {
    pub signature: Signature,
    pub actions: GeneratorAction,
    pub relations: Vec<OperadPolynomial>,
}

fn q(n: i64) -> Coeff {
    Coeff::from_integer(BigInt::from(n))
}

fn v(g: u32, a: Tree, b: Tree) -> Tree {
    Tree::Vertex { gen: g, children: vec![a, b] }
}

fn l(i: u32) -> Tree {
    Tree::Leaf(i)
}

fn close(signature: Signature, actions: GeneratorAction, raw: Vec<(Tree, Coeff)>) -> Symmetric {
    let r = canonicalize_polynomial(&raw, &actions, &signature, OrderingSpec::PATH_PERM).expect("valid input");
    let relations = orbit_closure(&[r], &actions, &signature).expect("actions cover all generators");
    Symmetric { signature, actions, relations }
}

/// Antisymmetric bracket with the Jacobi identity.
pub fn lie() -> Symmetric {
    let sig = Signature::from_pairs([("b", 2)]).expect("valid");
    let mut act = GeneratorAction::new();
    act.set(&sig, 0, 1, vec![(q(-1), 0)]).expect("valid");
    let raw = vec![
        (v(0, v(0, l(1), l(2)), l(3)), q(1)),
        (v(0, v(0, l(2), l(3)), l(1)), q(1)),
        (v(0, v(0, l(3), l(1)), l(2)), q(1)),
    ];
    close(sig, act, raw)
}

/// Symmetric associative product.
pub fn com() -> Symmetric {
    let sig = Signature::from_pairs([("c", 2)]).expect("valid");
    let mut act = GeneratorAction::new();
    act.set(&sig, 0, 1, vec![(q(1), 0)]).expect("valid");
    let raw = vec![(v(0, v(0, l(1), l(2)), l(3)), q(1)), (v(0, l(1), v(0, l(2), l(3))), q(-1))];
    close(sig, act, raw)
}

/// Associative product without symmetry: `m` and its opposite `mop`.
pub fn assoc() -> Symmetric {
    let sig = Signature::from_pairs([("m", 2), ("mop", 2)]).expect("valid");
    let mut act = GeneratorAction::new();
    act.set(&sig, 0, 1, vec![(q(1), 1)]).expect("valid");
    act.set(&sig, 1, 1, vec![(q(1), 0)]).expect("valid");
    let raw = vec![(v(0, v(0, l(1), l(2)), l(3)), q(1)), (v(0, l(1), v(0, l(2), l(3))), q(-1))];
    close(sig, act, raw)
}
