//! Exact arithmetic: big rationals, cyclotomic numbers, dense matrices, HNF and SNF.

pub mod cyclotomic;
pub mod matrix;
pub mod normal_form;
pub mod ring;

pub use cyclotomic::{cyc_conjugate, cyc_normalize, cyclotomic_polynomial, totient, Cyclotomic};
pub use matrix::Matrix;
pub use normal_form::{
    det_bareiss, hermite_normal_form, int_identity, int_matrix, int_zeros, integer_kernel, invariant_factors,
    lattice_basis, lattice_contains, lattice_index, lattice_intersection, lattice_preimage, lattice_sum,
    lattices_equal, smith_normal_form, IntMatrix,
};
pub use ring::{exact_div, p_part, rational_to_int, valuation, CommRing, Field};

/// Rational number alias used throughout the crate.
pub type Rational = num_rational::BigRational;

/// Rational matrix alias.
pub type QMatrix = Matrix<Rational>;

/// Matrix over a cyclotomic field.
pub type CycMatrix = Matrix<Cyclotomic>;
