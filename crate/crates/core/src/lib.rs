//! Gröbner bases for finitely presented shuffle operads over the rationals.
//!
//! The pieces, bottom-up: [`trees`] (tree monomials and shuffle composition),
//! [`permutations`], [`orderings`] (path-sequence orderings), [`polynomials`],
//! [`division`] (divisor occurrences and `m_{α,β}`), [`scm`] (small common
//! multiples), [`buchberger`] (completion, normal forms, dimensions) and
//! [`symmetrize`] (orbit closure for symmetric presentations).

pub mod buchberger;
pub mod division;
pub mod error;
pub mod orderings;
pub mod permutations;
pub mod polynomials;
pub mod scm;
pub mod symmetrize;
pub mod trees;

pub use error::{OperadError, Result};
pub use orderings::{OrderingSpec, PathKey};
pub use permutations::Permutation;
pub use polynomials::{Coeff, Monomial, OperadPolynomial};
pub use trees::{Generator, Signature, Tree};
