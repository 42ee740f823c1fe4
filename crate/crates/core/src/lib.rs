//! Exact computations with Laurent phenomenon algebras: seeds, mutation,
//! mutation classes, symmetry orbits and a catalog of built-in examples.

pub mod catalog;
pub mod error;
pub mod explore;
pub mod parser;
pub mod poly;
pub mod seed;
pub mod symmetry;

pub use error::{Error, ParseError, PolyError, Result, Violation};
pub use poly::{Coefficient, LaurentExpansion, Monomial, Polynomial, VariableTable};
pub use seed::{CanonicalKey, Seed};

/// Integer coefficients used throughout the built-in examples.
pub type Integer = num_bigint::BigInt;
pub type ZPolynomial = Polynomial<Integer>;
pub type ZLaurent = LaurentExpansion<Integer>;
pub type ZSeed = Seed<Integer>;
