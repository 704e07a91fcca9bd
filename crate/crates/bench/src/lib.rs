//! Fixtures shared by the benchmarks.

use horizon_tangle::linalg::{Complex64, DMatrix};
use horizon_tangle::sweep::{physical_state, CutoffPolicy};
use horizon_tangle::{DensityOperator, FieldKind, StateKind};

/// Physical three-mode state at `omega = 1` with the default adaptive cutoff.
pub fn physical(state: StateKind, field: FieldKind, temperature: f64) -> DensityOperator {
    physical_state(state, field, 1.0, temperature, CutoffPolicy::default())
        .expect("valid benchmark point")
        .0
}

/// Dense Hermitian `n x n` matrix with no zero entries.
pub fn dense_hermitian(n: usize) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(n, n, |i, j| {
        let x = (i * 31 + j * 17) as f64;
        Complex64::new(x.sin(), (0.5 * x).cos())
    });
    &g + g.adjoint()
}
