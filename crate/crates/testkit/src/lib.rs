//! Test support: random tree monomials, polynomials and ideal elements, plus
//! slow reference implementations written without the engine's algorithms.

pub mod gen;
pub mod operads;
pub mod oracle;

pub use rand::rngs::StdRng;
pub use rand::SeedableRng;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}
