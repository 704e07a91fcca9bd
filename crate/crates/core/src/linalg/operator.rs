use nalgebra::DMatrix;
use num_complex::Complex64;

use super::eigen::eigenvalues_unchecked;
use super::layout::ModeLayout;
use super::{max_hermitian_deviation, trace, HERMITIAN_TOL, PSD_TOL, TRACE_TOL};
use crate::error::{Error, Result};

/// Hermitian, unit-trace, positive semidefinite operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    layout: ModeLayout,
    matrix: DMatrix<Complex64>,
}

/// Hermitian operator with no positivity requirement; partial transposes
/// land here.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    layout: ModeLayout,
    matrix: DMatrix<Complex64>,
}

fn check_shape(layout: &ModeLayout, m: &DMatrix<Complex64>) -> Result<()> {
    let n = layout.total_dim();
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: m.nrows().max(m.ncols()),
        });
    }
    Ok(())
}

fn check_hermitian(m: &DMatrix<Complex64>) -> Result<()> {
    let deviation = max_hermitian_deviation(m);
    if !(deviation < HERMITIAN_TOL) {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

impl DensityOperator {
    /// Validates shape, hermiticity, unit trace and positivity.
    pub fn new(layout: ModeLayout, matrix: DMatrix<Complex64>) -> Result<Self> {
        let rho = Self { layout, matrix };
        rho.validate()?;
        Ok(rho)
    }

    pub(crate) fn from_parts(layout: ModeLayout, matrix: DMatrix<Complex64>) -> Self {
        Self { layout, matrix }
    }

    /// Re-checks every invariant of the type.
    pub fn validate(&self) -> Result<()> {
        check_shape(&self.layout, &self.matrix)?;
        check_hermitian(&self.matrix)?;
        let tr = self.trace();
        if !((tr - 1.0).abs() < TRACE_TOL) {
            return Err(Error::BadTrace { trace: tr });
        }
        let min = self.eigenvalues().first().copied().unwrap_or(0.0);
        if min < -PSD_TOL {
            return Err(Error::NotPositive {
                min_eigenvalue: min,
            });
        }
        Ok(())
    }

    pub fn layout(&self) -> &ModeLayout {
        &self.layout
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> f64 {
        trace(&self.matrix).re
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }

    /// Ascending spectrum.
    pub fn eigenvalues(&self) -> Vec<f64> {
        eigenvalues_unchecked(&self.matrix)
    }

    pub fn into_hermitian(self) -> HermitianOperator {
        HermitianOperator {
            layout: self.layout,
            matrix: self.matrix,
        }
    }

    /// Same operator with the modes renamed; dimensions must match.
    pub fn with_layout(self, layout: ModeLayout) -> Result<Self> {
        check_shape(&layout, &self.matrix)?;
        if layout.dims() != self.layout.dims() {
            return Err(Error::InvalidLayout(format!(
                "cannot relabel {} as {}",
                self.layout, layout
            )));
        }
        Ok(Self {
            layout,
            matrix: self.matrix,
        })
    }

    /// Conjugates by the permutation that reorders the modes to `order`.
    pub fn permute_modes(&self, order: &[&str]) -> Result<Self> {
        let (layout, m) = permute(&self.layout, &self.matrix, order)?;
        Ok(Self { layout, matrix: m })
    }
}

impl HermitianOperator {
    pub fn new(layout: ModeLayout, matrix: DMatrix<Complex64>) -> Result<Self> {
        check_shape(&layout, &matrix)?;
        check_hermitian(&matrix)?;
        Ok(Self { layout, matrix })
    }

    pub(crate) fn from_parts(layout: ModeLayout, matrix: DMatrix<Complex64>) -> Self {
        Self { layout, matrix }
    }

    pub fn layout(&self) -> &ModeLayout {
        &self.layout
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        trace(&self.matrix).re
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }

    /// Ascending spectrum.
    pub fn eigenvalues(&self) -> Vec<f64> {
        eigenvalues_unchecked(&self.matrix)
    }
}

fn permute(
    layout: &ModeLayout,
    m: &DMatrix<Complex64>,
    order: &[&str],
) -> Result<(ModeLayout, DMatrix<Complex64>)> {
    if order.len() != layout.len() {
        return Err(Error::InvalidLayout(format!(
            "permutation {order:?} does not cover {layout}"
        )));
    }
    let mut positions = Vec::with_capacity(order.len());
    for label in order {
        let p = layout.position(label)?;
        if positions.contains(&p) {
            return Err(Error::DuplicateLabel(label.to_string()));
        }
        positions.push(p);
    }
    let target = layout.select(&positions);
    let n = layout.total_dim();
    // old index of every new basis index
    let map: Vec<usize> = (0..n)
        .map(|new| {
            let digits = target.digits_of(new);
            let mut old = vec![0; digits.len()];
            for (k, &p) in positions.iter().enumerate() {
                old[p] = digits[k];
            }
            layout.index_of(&old)
        })
        .collect();
    let out = DMatrix::from_fn(n, n, |i, j| m[(map[i], map[j])]);
    Ok((target, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(n: usize, entries: &[f64]) -> DMatrix<Complex64> {
        DMatrix::from_row_slice(n, n, entries).map(|x| Complex64::new(x, 0.0))
    }

    #[test]
    fn density_validation() {
        let l = ModeLayout::qubits(["X"]).unwrap();
        assert!(DensityOperator::new(l.clone(), real(2, &[0.5, 0.5, 0.5, 0.5])).is_ok());
        assert!(matches!(
            DensityOperator::new(l.clone(), real(2, &[0.5, 0.2, 0.3, 0.5])),
            Err(Error::NotHermitian { .. })
        ));
        assert!(matches!(
            DensityOperator::new(l.clone(), real(2, &[0.5, 0.0, 0.0, 0.6])),
            Err(Error::BadTrace { .. })
        ));
        assert!(matches!(
            DensityOperator::new(l.clone(), real(2, &[1.5, 0.0, 0.0, -0.5])),
            Err(Error::NotPositive { .. })
        ));
        assert!(DensityOperator::new(l, real(1, &[1.0])).is_err());
    }

    #[test]
    fn hermitian_allows_negative_spectrum() {
        let l = ModeLayout::qubits(["X"]).unwrap();
        let h = HermitianOperator::new(l, real(2, &[0.0, 1.0, 1.0, 0.0])).unwrap();
        assert_eq!(h.eigenvalues().len(), 2);
        assert!((h.eigenvalues()[0] + 1.0).abs() < 1e-15);
    }

    #[test]
    fn permute_swaps_qubits() {
        let l = ModeLayout::qubits(["A", "B"]).unwrap();
        // |01><01|
        let mut m = DMatrix::from_element(4, 4, Complex64::new(0.0, 0.0));
        m[(1, 1)] = Complex64::new(1.0, 0.0);
        let rho = DensityOperator::new(l, m).unwrap();
        let swapped = rho.permute_modes(&["B", "A"]).unwrap();
        assert_eq!(swapped.layout().labels(), &["B", "A"]);
        assert_eq!(swapped.entry(2, 2).re, 1.0);
        assert!(rho.permute_modes(&["A", "A"]).is_err());
    }
}
