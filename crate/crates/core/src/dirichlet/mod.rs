//! Dirichlet character groups mod q: enumeration, conductors and the
//! primitive set X_q^*, Gauss sums, and orthogonality.

mod group;
mod sums;

pub use group::{CharacterGroup, DirichletCharacter, MAX_MODULUS};
pub use sums::{additively_twisted_sum, gauss_sum, orthogonality_sum};
