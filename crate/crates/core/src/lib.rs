//! Standard monomial theory for Schubert varieties in the flag manifolds of GL_n,
//! computed in exact rational arithmetic.
//!
//! The crate covers scanning tableaux and right keys, straightening of tabloid
//! monomials into tableau and Demazure bases, Bruhat-cell geometry of ordered
//! bases, and key (Demazure) polynomials.

pub mod chain;
pub mod characters;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod scan;
pub mod shape;
pub mod straighten;
pub mod verify;

pub use chain::{step_down, QChain, QSet};
pub use error::{Error, Result};
pub use linalg::{eval_monomial, initial_minor, MonomialEvaluator, Rational, RationalMatrix};
pub use scan::{enumerate_demazure, ewis, is_demazure, scan, ScanResult};
pub use shape::{Location, Partition, Region, Tabloid};
pub use straighten::{
    first_row_violation,
    demazure_region, mu_shuffles, reduce_mod, snake_region, straighten, straighten_step, straighten_step_mod,
    verify_master_identity, LinearCombination, ShuffleTerm, Straightener,
};
pub use geometry::{
    cell_of, gamma_path, perm_matrix, q_preferred_reduce, sample_cell, sample_schubert, QPreferredBasis,
};
pub use characters::{demazure_dimension, demazure_oracle, key_polynomial, weight, Polynomial};
