//! Dense complex linear algebra over labelled tensor-product spaces.

mod eigen;
mod layout;
mod operator;
mod ops;
mod state;

pub use eigen::{hermitian_eigenvalues, negativity, negativity_from_spectrum};
pub use layout::ModeLayout;
pub use operator::{DensityOperator, HermitianOperator};
pub use ops::{
    partial_trace, partial_transpose, partial_transpose_negativity, tensor_product, TensorProduct,
};
pub use state::StateVector;

pub use nalgebra::DMatrix;
pub use num_complex::Complex64;

/// Entry-wise tolerance on `|M - M^dagger|`.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Tolerance on `|Tr rho - 1|` and on the unit norm of state vectors.
pub const TRACE_TOL: f64 = 1e-12;
/// Eigenvalues of a density operator may dip this far below zero.
pub const PSD_TOL: f64 = 1e-10;
/// Eigenvalues above `-NEGATIVE_EIGENVALUE_THRESHOLD` count as zero in the
/// negativity.
pub const NEGATIVE_EIGENVALUE_THRESHOLD: f64 = 1e-12;

pub(crate) fn max_hermitian_deviation(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    let mut worst: f64 = 0.0;
    for j in 0..n {
        for i in 0..=j {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub(crate) fn trace(m: &DMatrix<Complex64>) -> Complex64 {
    (0..m.nrows()).map(|i| m[(i, i)]).sum()
}
