//! Exact linear algebra over ℚ and F_p.

mod matrix;
mod quotient;
mod scalar;
mod sparse;
mod subspace;

pub use matrix::Matrix;
pub use quotient::{induced_on_quotient, induced_with, quotient_by, QuotientPresentation, WellDefinednessError};
pub use scalar::{is_prime, Field, FieldError, Scalar};
pub use sparse::{SAcc, SVec};
pub use subspace::{kernel, rref_kernel_image, split_check, Echelon, Subspace};
