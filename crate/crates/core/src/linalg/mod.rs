//! Exact linear algebra over the rationals.
//!
//! Kernels are computed by fraction-free elimination on integer vectors
//! (rows are rescaled by their content after every combination step), so no
//! rational arithmetic appears inside the elimination loop.

mod dense;
mod sparse;
mod upoly;

pub use dense::RatMatrix;
pub use sparse::{rational_kernel, Eliminator, Kernel, SparseRationalMatrix};
pub use upoly::UPoly;
