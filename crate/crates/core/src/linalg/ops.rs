use nalgebra::DMatrix;
use num_complex::Complex64;

use super::eigen::{negativity_from_spectrum, nonzeros, spectrum_from_entries};
use super::layout::ModeLayout;
use super::operator::{DensityOperator, HermitianOperator};
use super::state::{split_positions, StateVector};
use crate::error::Result;

/// Kronecker product with `self`'s modes placed first.
pub trait TensorProduct: Sized {
    fn tensor(&self, other: &Self) -> Result<Self>;
}

impl TensorProduct for StateVector {
    fn tensor(&self, other: &Self) -> Result<Self> {
        let layout = self.layout().concat(other.layout())?;
        let amps = self
            .amplitudes()
            .iter()
            .flat_map(|a| other.amplitudes().iter().map(move |b| a * b))
            .collect();
        // (1 - d_a)(1 - d_b) is the retained weight of the product
        let deficit = 1.0 - (1.0 - self.norm_deficit()) * (1.0 - other.norm_deficit());
        Ok(StateVector::from_parts(layout, amps, deficit))
    }
}

impl TensorProduct for DensityOperator {
    fn tensor(&self, other: &Self) -> Result<Self> {
        let layout = self.layout().concat(other.layout())?;
        Ok(DensityOperator::from_parts(
            layout,
            self.matrix().kronecker(other.matrix()),
        ))
    }
}

pub fn tensor_product<T: TensorProduct>(a: &T, b: &T) -> Result<T> {
    a.tensor(b)
}

/// Traces out the modes in `discard`; the remaining modes keep their order.
pub fn partial_trace(rho: &DensityOperator, discard: &[&str]) -> Result<DensityOperator> {
    let layout = rho.layout();
    let (keep_pos, disc_pos) = split_positions(layout, discard)?;
    let keep = layout.select(&keep_pos);
    let disc = layout.select(&disc_pos);
    let strides = layout.strides();

    let offsets = |sub: &ModeLayout, positions: &[usize]| -> Vec<usize> {
        (0..sub.total_dim())
            .map(|i| {
                sub.digits_of(i)
                    .iter()
                    .zip(positions)
                    .map(|(d, &p)| d * strides[p])
                    .sum()
            })
            .collect()
    };
    let keep_off = offsets(&keep, &keep_pos);
    let disc_off = offsets(&disc, &disc_pos);

    let m = rho.matrix();
    let n = keep.total_dim();
    let out = DMatrix::from_fn(n, n, |i, j| {
        disc_off
            .iter()
            .map(|&d| m[(keep_off[i] + d, keep_off[j] + d)])
            .sum::<Complex64>()
    });
    Ok(DensityOperator::from_parts(keep, out))
}

/// Maps each non-zero `(i, j, x)` of `m` to its position in `m^{T_pivot}`.
fn transposed_entries(
    layout: &ModeLayout,
    m: &DMatrix<Complex64>,
    pivot: &str,
) -> Result<Vec<(usize, usize, Complex64)>> {
    let pos = layout.position(pivot)?;
    let stride = layout.strides()[pos];
    let dim = layout.dims()[pos];
    // index with the pivot digit removed, and the pivot offset itself
    let (rest, own): (Vec<usize>, Vec<usize>) = (0..m.nrows())
        .map(|i| {
            let d = (i / stride) % dim * stride;
            (i - d, d)
        })
        .unzip();
    let mut entries = nonzeros(m);
    for e in &mut entries {
        let (i, j) = (e.0, e.1);
        e.0 = rest[i] + own[j];
        e.1 = rest[j] + own[i];
    }
    Ok(entries)
}

pub(crate) fn partial_transpose_matrix(
    layout: &ModeLayout,
    m: &DMatrix<Complex64>,
    pivot: &str,
) -> Result<DMatrix<Complex64>> {
    let n = m.nrows();
    let mut out = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for (i, j, x) in transposed_entries(layout, m, pivot)? {
        out[(i, j)] = x;
    }
    Ok(out)
}

/// Negativity of `rho^{T_pivot}`, without forming the transposed matrix.
pub fn partial_transpose_negativity(rho: &DensityOperator, pivot: &str) -> Result<f64> {
    let entries = transposed_entries(rho.layout(), rho.matrix(), pivot)?;
    Ok(negativity_from_spectrum(&spectrum_from_entries(
        rho.dim(),
        &entries,
    )))
}

/// Transposes the indices of the `pivot` subsystem only.
pub fn partial_transpose(rho: &DensityOperator, pivot: &str) -> Result<HermitianOperator> {
    let m = partial_transpose_matrix(rho.layout(), rho.matrix(), pivot)?;
    Ok(HermitianOperator::from_parts(rho.layout().clone(), m))
}

impl HermitianOperator {
    pub fn partial_transpose(&self, pivot: &str) -> Result<HermitianOperator> {
        let m = partial_transpose_matrix(self.layout(), self.matrix(), pivot)?;
        Ok(HermitianOperator::from_parts(self.layout().clone(), m))
    }
}
