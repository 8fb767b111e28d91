//! Exact differential calculus of left Hopf algebroids at finite dimension.
//!
//! Every space is a finite-dimensional quotient of a plain tensor space and
//! every operator is an exact matrix, so identities between operators are
//! checked as matrix equalities.

pub mod algebra;
pub mod calculus;
pub mod cli;
pub mod complexes;
pub mod hochschild;
pub mod homology;
pub mod hopf;
pub mod instance_file;
pub mod instances;
pub mod linalg;
pub mod report;
pub mod spaces;
pub mod suite;
pub mod tensor;
