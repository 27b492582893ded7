//! Exact-arithmetic toolkit for deciding when an Eisenstein polynomial of
//! degree p^2 or p^3 over an unramified p-adic base field generates a cyclic
//! extension, for classifying the Galois group of the normal closure in the
//! degree-p^2 p-group case, and for verifying every verdict independently
//! through a class-field-theoretic norm-subgroup computation.
//!
//! Layout:
//! - [`gf`]: residue-field arithmetic and F_p-linear algebra,
//! - [`additive`]: range containment and splitting criteria for additive
//!   polynomials,
//! - [`zq`]: the unramified ring W(F_{p^f}) truncated at p^N,
//! - [`upoly`]: Eisenstein polynomials, norms, ramification polygons and
//!   Artin-Hasse norm evaluation,
//! - [`cyclosum`]: the root-of-unity sums over distinct index tuples,
//! - [`classify2`] / [`classify3`]: the coefficient-wise cyclicity checkers
//!   and the degree-p^2 p-group classifier,
//! - [`cft_oracle`]: the brute-force norm-group oracle,
//! - [`doc`]: the JSON polynomial document interchange format.

pub mod additive;
pub mod cft_oracle;
pub mod classify2;
pub mod classify3;
pub mod cyclosum;
pub mod doc;
pub mod error;
pub mod gf;
pub mod upoly;
pub mod zq;

pub use error::{Error, Result};
