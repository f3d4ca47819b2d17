//! Small dense linear algebra used by the algebra kernel.
//!
//! Everything here targets matrices of order at most a few dozen, so storage
//! is a flat row-major `Vec` and products are the naive triple loop.

mod complex;
mod eigen;
mod nullspace;
mod real;

pub use complex::ComplexMatrix;
pub use eigen::{hermitian_eigen, symmetric_eigen, HermitianEigen, SymmetricEigen};
pub use nullspace::null_space;
pub use real::RealMatrix;
