use nalgebra::DMatrix;
use num_complex::Complex64;

use super::layout::ModeLayout;
use super::operator::DensityOperator;
use super::TRACE_TOL;
use crate::error::{Error, Result};

/// Normalised pure state over a [`ModeLayout`].
///
/// `norm_deficit` is `1 - |psi|^2` of the amplitudes handed to
/// [`StateVector::renormalized`] before they were rescaled; it is zero for
/// states that were exact to begin with.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    layout: ModeLayout,
    amplitudes: Vec<Complex64>,
    norm_deficit: f64,
}

fn squared_norm(amps: &[Complex64]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum()
}

impl StateVector {
    /// Wraps amplitudes that already have unit norm.
    pub fn new(layout: ModeLayout, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_len(&layout, amplitudes.len())?;
        let n2 = squared_norm(&amplitudes);
        if (n2 - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidParameter(format!(
                "state vector has squared norm {n2}, expected 1"
            )));
        }
        Ok(Self {
            layout,
            amplitudes,
            norm_deficit: 0.0,
        })
    }

    /// Rescales a truncated expansion to unit norm, recording the lost weight.
    ///
    /// The squared norm of `amplitudes` must lie in `(0, 1 + TRACE_TOL]`.
    pub fn renormalized(layout: ModeLayout, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        check_len(&layout, amplitudes.len())?;
        let n2 = squared_norm(&amplitudes);
        if !(n2 > 0.0) || n2 > 1.0 + TRACE_TOL {
            return Err(Error::InvalidParameter(format!(
                "truncated amplitudes have squared norm {n2}, expected (0, 1]"
            )));
        }
        let scale = n2.sqrt().recip();
        amplitudes.iter_mut().for_each(|a| *a *= scale);
        Ok(Self {
            layout,
            amplitudes,
            norm_deficit: (1.0 - n2).max(0.0),
        })
    }

    /// Computational basis state `|digits>`.
    pub fn basis(layout: ModeLayout, digits: &[usize]) -> Result<Self> {
        if digits.len() != layout.len() {
            return Err(Error::DimensionMismatch {
                expected: layout.len(),
                found: digits.len(),
            });
        }
        if let Some((d, n)) = digits.iter().zip(layout.dims()).find(|(d, n)| d >= n) {
            return Err(Error::InvalidParameter(format!(
                "basis digit {d} out of range for local dimension {n}"
            )));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); layout.total_dim()];
        amplitudes[layout.index_of(digits)] = Complex64::new(1.0, 0.0);
        Ok(Self {
            layout,
            amplitudes,
            norm_deficit: 0.0,
        })
    }

    pub fn layout(&self) -> &ModeLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_deficit(&self) -> f64 {
        self.norm_deficit
    }

    pub fn amplitude(&self, digits: &[usize]) -> Complex64 {
        self.amplitudes[self.layout.index_of(digits)]
    }

    pub(crate) fn from_parts(
        layout: ModeLayout,
        amplitudes: Vec<Complex64>,
        norm_deficit: f64,
    ) -> Self {
        Self {
            layout,
            amplitudes,
            norm_deficit,
        }
    }

    /// `|psi><psi|` over the full layout.
    pub fn projector(&self) -> DensityOperator {
        let n = self.amplitudes.len();
        let m = DMatrix::from_fn(n, n, |i, j| self.amplitudes[i] * self.amplitudes[j].conj());
        DensityOperator::from_parts(self.layout.clone(), m)
    }

    /// Reduced density operator after tracing out `discard`.
    ///
    /// Equivalent to `partial_trace(&self.projector(), discard)` but never
    /// forms the full projector; only non-zero amplitudes are visited.
    pub fn reduced_density(&self, discard: &[&str]) -> Result<DensityOperator> {
        let (keep_pos, disc_pos) = split_positions(&self.layout, discard)?;
        let keep = self.layout.select(&keep_pos);
        let disc = self.layout.select(&disc_pos);
        let strides = self.layout.strides();

        // Bucket the non-zero amplitudes by their discarded-mode index.
        let mut buckets: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); disc.total_dim()];
        for (index, &amp) in self.amplitudes.iter().enumerate() {
            if amp == Complex64::new(0.0, 0.0) {
                continue;
            }
            let mut rest = index;
            let mut k_idx = 0;
            let mut d_idx = 0;
            for (pos, &stride) in strides.iter().enumerate() {
                let digit = rest / stride;
                rest %= stride;
                if keep_pos.contains(&pos) {
                    k_idx = k_idx * self.layout.dims()[pos] + digit;
                } else {
                    d_idx = d_idx * self.layout.dims()[pos] + digit;
                }
            }
            buckets[d_idx].push((k_idx, amp));
        }

        let n = keep.total_dim();
        let mut m = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
        for bucket in &buckets {
            for &(i, a) in bucket {
                for &(j, b) in bucket {
                    m[(i, j)] += a * b.conj();
                }
            }
        }
        Ok(DensityOperator::from_parts(keep, m))
    }
}

fn check_len(layout: &ModeLayout, len: usize) -> Result<()> {
    if layout.total_dim() != len {
        return Err(Error::DimensionMismatch {
            expected: layout.total_dim(),
            found: len,
        });
    }
    Ok(())
}

/// Positions of the kept and discarded modes; rejects unknown labels and
/// discarding every mode.
pub(crate) fn split_positions(
    layout: &ModeLayout,
    discard: &[&str],
) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut disc = Vec::new();
    for label in discard {
        let p = layout.position(label)?;
        if !disc.contains(&p) {
            disc.push(p);
        }
    }
    disc.sort_unstable();
    let keep: Vec<usize> = (0..layout.len()).filter(|p| !disc.contains(p)).collect();
    if keep.is_empty() {
        return Err(Error::InvalidParameter(
            "cannot trace out every subsystem".into(),
        ));
    }
    Ok((keep, disc))
}
