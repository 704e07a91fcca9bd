//! Hawking-dressed bosonic GHZ and W states with a truncated Fock expansion.
//!
//! Only Charlie's mode is dressed. The Kruskal vacuum and one-particle state
//! become two-mode squeezed expansions
//!
//! ```text
//! |0>_K = (1/a)   sum_n g^n            |n>_out   |n>_in
//! |1>_K = (1/a^2) sum_n g^n sqrt(n+1)  |n+1>_out |n>_in
//! ```
//!
//! with `a = (1 - e^{-w/T})^{-1/2}` and `g = e^{-w/(2T)}`. The sums are cut
//! at `n_max`, renormalised, and the discarded weight recorded.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fermion::boltzmann;
use crate::linalg::{DensityOperator, ModeLayout, StateVector};
use crate::KruskalLevel;

pub const BOSON_MODES: [&str; 4] = ["A", "B", "C_out", "C_in"];
pub const PHYSICAL_MODES: [&str; 3] = ["A", "B", "C_out"];

pub const DEFAULT_CUTOFF_TOL: f64 = 1e-10;
pub const DEFAULT_CUTOFF_CAP: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BosonThermalParams {
    pub omega: f64,
    pub temperature: f64,
    pub alpha: f64,
    pub gamma: f64,
}

impl BosonThermalParams {
    /// `1 - gamma^2 = 1 / alpha^2`, computed without cancellation.
    fn one_minus_gamma_sq(&self) -> f64 {
        self.alpha.powi(-2)
    }
}

pub fn boson_params(omega: f64, temperature: f64) -> Result<BosonThermalParams> {
    boltzmann(omega, temperature)?;
    if temperature == 0.0 {
        return Ok(BosonThermalParams {
            omega,
            temperature,
            alpha: 1.0,
            gamma: 0.0,
        });
    }
    let one_minus = -(-omega / temperature).exp_m1();
    Ok(BosonThermalParams {
        omega,
        temperature,
        alpha: one_minus.sqrt().recip(),
        gamma: (-omega / (2.0 * temperature)).exp(),
    })
}

/// Truncation level of the Fock expansion.
///
/// `trace_deficit` bounds the squared-norm loss of both truncated Kruskal
/// states, and so of any superposition built from them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockCutoff {
    pub n_max: usize,
    pub trace_deficit: f64,
}

/// Weight of the vacuum series beyond `n_max`: `sum_{n > n_max} (1-g^2) g^{2n}`.
pub fn vacuum_tail(params: &BosonThermalParams, n_max: usize) -> f64 {
    let x = params.gamma * params.gamma;
    x.powi(n_max as i32 + 1)
}

/// Weight of the one-particle series beyond `n_max`:
/// `sum_{n > n_max} (1-g^2)^2 (n+1) g^{2n}`.
pub fn excited_tail(params: &BosonThermalParams, n_max: usize) -> f64 {
    let x = params.gamma * params.gamma;
    let m = (n_max + 1) as f64;
    x.powi(n_max as i32 + 1) * (1.0 + m * params.one_minus_gamma_sq())
}

impl FockCutoff {
    pub fn fixed(params: &BosonThermalParams, n_max: usize) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::InvalidParameter("n_max must be at least 1".into()));
        }
        Ok(Self {
            n_max,
            trace_deficit: excited_tail(params, n_max),
        })
    }
}

/// Smallest `n_max >= 1` whose truncation loses less than `tol` of either
/// Kruskal state.
pub fn choose_cutoff(params: &BosonThermalParams, tol: f64) -> Result<FockCutoff> {
    choose_cutoff_capped(params, tol, DEFAULT_CUTOFF_CAP)
}

pub fn choose_cutoff_capped(
    params: &BosonThermalParams,
    tol: f64,
    cap: usize,
) -> Result<FockCutoff> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "cutoff tolerance must lie in (0, 1), got {tol}"
        )));
    }
    // excited_tail >= vacuum_tail, so it alone decides
    for n_max in 1..=cap {
        let deficit = excited_tail(params, n_max);
        if deficit < tol {
            return Ok(FockCutoff {
                n_max,
                trace_deficit: deficit,
            });
        }
    }
    Err(Error::CutoffCapExceeded {
        gamma: params.gamma,
        tol,
        cap,
    })
}

/// `(n, g^n)` for `n = 0..=n_max`.
fn powers(gamma: f64, n_max: usize) -> impl Iterator<Item = (usize, f64)> {
    (0..=n_max).scan(1.0, move |g, n| {
        let cur = *g;
        *g *= gamma;
        Some((n, cur))
    })
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn kruskal_layout(out_label: &str, in_label: &str, n_max: usize) -> ModeLayout {
    ModeLayout::new([(out_label, n_max + 2), (in_label, n_max + 1)]).expect("distinct labels")
}

/// Truncated Kruskal number state over `(out, in)` with dimensions
/// `(n_max + 2, n_max + 1)`, renormalised.
pub fn kruskal_boson(
    level: KruskalLevel,
    params: &BosonThermalParams,
    cutoff: &FockCutoff,
) -> StateVector {
    let layout = kruskal_layout("out", "in", cutoff.n_max);
    let mut amps = vec![c(0.0); layout.total_dim()];
    let a = params.alpha;
    for (n, g) in powers(params.gamma, cutoff.n_max) {
        match level {
            KruskalLevel::Vacuum => amps[layout.index_of(&[n, n])] = c(g / a),
            KruskalLevel::Excited => {
                amps[layout.index_of(&[n + 1, n])] = c(g * ((n + 1) as f64).sqrt() / (a * a))
            }
        }
    }
    StateVector::renormalized(layout, amps).expect("non-empty truncation")
}

fn boson_layout(n_max: usize) -> ModeLayout {
    ModeLayout::new([
        ("A", 2),
        ("B", 2),
        ("C_out", n_max + 2),
        ("C_in", n_max + 1),
    ])
    .expect("static labels")
}

/// `(|000> + |111>)/sqrt 2` with Charlie's mode dressed; layout
/// [`BOSON_MODES`].
pub fn build_ghz_boson(params: &BosonThermalParams, cutoff: &FockCutoff) -> StateVector {
    let layout = boson_layout(cutoff.n_max);
    let mut amps = vec![c(0.0); layout.total_dim()];
    let a = params.alpha;
    let pre = (2f64.sqrt() * a).recip();
    for (n, g) in powers(params.gamma, cutoff.n_max) {
        let s = ((n + 1) as f64).sqrt();
        amps[layout.index_of(&[0, 0, n, n])] = c(pre * g);
        amps[layout.index_of(&[1, 1, n + 1, n])] = c(pre * g * s / a);
    }
    StateVector::renormalized(layout, amps).expect("non-empty truncation")
}

/// `(|001> + |010> + |100>)/sqrt 3` with Charlie's mode dressed; layout
/// [`BOSON_MODES`].
pub fn build_w_boson(params: &BosonThermalParams, cutoff: &FockCutoff) -> StateVector {
    let layout = boson_layout(cutoff.n_max);
    let mut amps = vec![c(0.0); layout.total_dim()];
    let a = params.alpha;
    let pre = (3f64.sqrt() * a).recip();
    for (n, g) in powers(params.gamma, cutoff.n_max) {
        let s = ((n + 1) as f64).sqrt();
        amps[layout.index_of(&[0, 0, n + 1, n])] = c(pre * g * s / a);
        amps[layout.index_of(&[0, 1, n, n])] = c(pre * g);
        amps[layout.index_of(&[1, 0, n, n])] = c(pre * g);
    }
    StateVector::renormalized(layout, amps).expect("non-empty truncation")
}

/// Traces Charlie's interior mode `C_in` out of a dressed bosonic state.
pub fn physical_density_boson(state: &StateVector) -> Result<DensityOperator> {
    let layout = state.layout();
    if layout.labels() != BOSON_MODES || layout.dims()[..2] != [2, 2] {
        return Err(Error::InvalidLayout(format!(
            "expected modes {BOSON_MODES:?} with qubit A and B, got {layout}"
        )));
    }
    state.reduced_density(&["C_in"])
}
