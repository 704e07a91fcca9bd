//! Hermitian spectra via cyclic complex Jacobi rotations.
//!
//! The matrices this crate diagonalises (partial transposes of truncated
//! Fock-space states) are mostly exact zeros, so the matrix is first split
//! into the connected components of its non-zero pattern. Each component is
//! an invariant subspace and is diagonalised on its own.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::operator::HermitianOperator;
use super::{max_hermitian_deviation, HERMITIAN_TOL, NEGATIVE_EIGENVALUE_THRESHOLD};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 64;

/// Ascending spectrum of a Hermitian matrix; rejects non-Hermitian input.
pub fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Result<Vec<f64>> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            found: m.ncols(),
        });
    }
    let deviation = max_hermitian_deviation(m);
    if !(deviation < HERMITIAN_TOL) {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(eigenvalues_unchecked(m))
}

/// `2 * sum |lambda|` over eigenvalues below `-NEGATIVE_EIGENVALUE_THRESHOLD`.
pub fn negativity_from_spectrum(spectrum: &[f64]) -> f64 {
    2.0 * spectrum
        .iter()
        .filter(|&&l| l < -NEGATIVE_EIGENVALUE_THRESHOLD)
        .fold(0.0, |acc, l| acc - l)
}

pub fn negativity(m: &HermitianOperator) -> f64 {
    negativity_from_spectrum(&m.eigenvalues())
}

pub(crate) fn eigenvalues_unchecked(m: &DMatrix<Complex64>) -> Vec<f64> {
    spectrum_from_entries(m.nrows(), &nonzeros(m))
}

/// Non-zero entries `(row, col, value)`, column by column.
pub(crate) fn nonzeros(m: &DMatrix<Complex64>) -> Vec<(usize, usize, Complex64)> {
    let zero = Complex64::new(0.0, 0.0);
    let mut out = Vec::new();
    for j in 0..m.ncols() {
        for (i, &x) in m.column(j).iter().enumerate() {
            if x != zero {
                out.push((i, j, x));
            }
        }
    }
    out
}

/// Ascending spectrum of the Hermitian `n x n` matrix whose non-zero entries
/// are `entries`; each connected component of the pattern is diagonalised
/// separately.
pub(crate) fn spectrum_from_entries(n: usize, entries: &[(usize, usize, Complex64)]) -> Vec<f64> {
    let groups = components(n, entries);
    let mut block_of = vec![0usize; n];
    let mut local = vec![0usize; n];
    for (g, members) in groups.iter().enumerate() {
        for (k, &i) in members.iter().enumerate() {
            block_of[i] = g;
            local[i] = k;
        }
    }
    let mut blocks: Vec<Vec<Complex64>> = groups
        .iter()
        .map(|g| vec![Complex64::new(0.0, 0.0); g.len() * g.len()])
        .collect();
    for &(i, j, x) in entries {
        let n = groups[block_of[i]].len();
        blocks[block_of[i]][local[i] * n + local[j]] = x;
    }
    let mut out = Vec::with_capacity(n);
    for (g, mut a) in groups.iter().zip(blocks) {
        if g.len() == 1 {
            out.push(a[0].re);
        } else {
            out.extend(jacobi(&mut a, g.len()));
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

/// Index sets of the connected components of the non-zero pattern.
fn components(n: usize, entries: &[(usize, usize, Complex64)]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(i, j, _) in entries {
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri != rj {
            parent[ri.max(rj)] = ri.min(rj);
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        let r = find(&mut parent, i);
        groups[r].push(i);
    }
    groups.retain(|g| !g.is_empty());
    groups
}

/// Eigenvalues of the Hermitian `n x n` row-major matrix `a` (destroyed).
fn jacobi(a: &mut [Complex64], n: usize) -> Vec<f64> {
    let at = |i: usize, j: usize| i * n + j;
    for k in 0..n {
        a[at(k, k)].im = 0.0;
    }
    for sweep in 0..MAX_SWEEPS {
        let mut off = 0.0;
        let mut diag = 0.0;
        for i in 0..n {
            diag += a[at(i, i)].re * a[at(i, i)].re;
            for j in (i + 1)..n {
                off += a[at(i, j)].norm_sqr();
            }
        }
        if off == 0.0 || off <= 1e-34 * (diag + 2.0 * off) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[at(p, q)];
                let mag = apq.norm();
                if mag == 0.0 {
                    continue;
                }
                let app = a[at(p, p)].re;
                let aqq = a[at(q, q)].re;
                // Once converging, drop entries below the diagonal's resolution.
                if sweep > 3
                    && app.abs() + 1e3 * mag == app.abs()
                    && aqq.abs() + 1e3 * mag == aqq.abs()
                {
                    a[at(p, q)] = Complex64::new(0.0, 0.0);
                    a[at(q, p)] = Complex64::new(0.0, 0.0);
                    continue;
                }
                let phase = apq / mag;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + tau.hypot(1.0))
                } else {
                    -1.0 / (-tau + tau.hypot(1.0))
                };
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                let phase_c = phase.conj();
                for k in 0..n {
                    let x = a[at(k, p)];
                    let y = a[at(k, q)] * phase_c;
                    a[at(k, p)] = x * c - y * s;
                    a[at(k, q)] = x * s + y * c;
                }
                for k in 0..n {
                    let x = a[at(p, k)];
                    let y = a[at(q, k)] * phase;
                    a[at(p, k)] = x * c - y * s;
                    a[at(q, k)] = x * s + y * c;
                }
                a[at(p, q)] = Complex64::new(0.0, 0.0);
                a[at(q, p)] = Complex64::new(0.0, 0.0);
                a[at(p, p)] = Complex64::new(app - t * mag, 0.0);
                a[at(q, q)] = Complex64::new(aqq + t * mag, 0.0);
            }
        }
    }
    (0..n).map(|k| a[at(k, k)].re).collect()
}
