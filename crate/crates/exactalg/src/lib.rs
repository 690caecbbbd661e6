//! Exact arithmetic substrate for the quadratic-points verification
//! toolkit: prime and extension finite fields with deterministic defining
//! polynomials, arbitrary-precision rationals and quadratic irrationals,
//! univariate polynomials with finite-field factorization, truncated power
//! series, exact dense linear algebra, and integer-lattice normal forms
//! with coset algebra.
//!
//! Everything here is immutable after construction and all operations are
//! pure functions, so values can be shared freely across worker threads.

pub mod coset;
pub mod error;
pub mod ff;
pub mod field;
pub mod intmat;
pub mod lattice;
pub mod linalg;
pub mod localq;
pub mod poly;
pub mod quadirr;
pub mod ratrecon;
pub mod series;

pub use coset::CosetUnion;
pub use error::{Error, Result};
pub use ff::{
    decode_to_subfield, element_degree, embed, field_make, is_prime_u64, FFElem, FieldDesc,
};
pub use field::{rat, rat_int, Field, FiniteField};
pub use intmat::{
    abs_det, hnf, hnf_with_transform, imat_from_i64, left_kernel, mat_mul, row_vec_mul,
    snf_diagonal, snf_with_transforms, solve_left, IMat,
};
pub use lattice::IntLattice;
pub use linalg::Mat;
pub use localq::lift_coordinates;
pub use poly::Poly;
pub use quadirr::QuadIrr;
pub use ratrecon::{crt_pair, mod_inverse, rational_reconstruct};
pub use series::TruncSeries;

/// Re-export of the rational type used across the workspace.
pub type Rational = num_rational::BigRational;
pub type Int = num_bigint::BigInt;
