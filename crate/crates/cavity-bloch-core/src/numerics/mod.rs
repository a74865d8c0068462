//! Special functions and the dense Hermitian eigensolver shared by the physics modules.

mod eigen;
mod hermitian;
mod special;

pub use eigen::{hermitian_eigvals, symmetric_eigen, tridiagonal_eigvals};
pub use hermitian::HermitianMatrix;
pub use special::{displacement_matrix, displacement_matrix_element, laguerre_assoc, ln_factorial};
