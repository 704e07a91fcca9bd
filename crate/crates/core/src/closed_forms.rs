//! Analytic expressions for the fermionic W and GHZ families, used as an
//! independent check on the numeric pipeline.
//!
//! W-state forms take `mu` alone (`nu^2 = 1 - mu^2`); physical temperatures
//! give `mu^2` in `[1/2, 1]`.

use std::f64::consts::{FRAC_1_SQRT_2, LN_2, SQRT_2};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fermion::fermion_params;

const RANGE_SLACK: f64 = 1e-12;

fn check_mu(mu: f64) -> Result<()> {
    if !(FRAC_1_SQRT_2 - RANGE_SLACK..=1.0 + RANGE_SLACK).contains(&mu) {
        return Err(Error::InvalidParameter(format!(
            "mu = {mu} outside the physical range [1/sqrt 2, 1]"
        )));
    }
    Ok(())
}

/// Square root of the polynomial shared by the one-tangle and its
/// negative eigenvalue.
fn one_tangle_radical(mu: f64) -> f64 {
    let m2 = mu * mu;
    let m4 = m2 * m2;
    (35.0 * m4 + 28.0 * m4 * (2.0 * m2 - 1.0) + m4 * (8.0 * m4 - 8.0 * m2 + 1.0)).sqrt()
}

/// Negative eigenvalue of `rho_ABC^{T_A}`.
pub fn w_negative_eigenvalue_a(mu: f64) -> Result<f64> {
    check_mu(mu)?;
    let m2 = mu * mu;
    Ok((-8.0 * m2 * m2 + 8.0 * m2 - 2.0 * SQRT_2 * one_tangle_radical(mu)) / 48.0)
}

/// `N_{A(BC)}` of the dressed W state.
pub fn w_one_tangle_a(mu: f64) -> Result<f64> {
    check_mu(mu)?;
    let m2 = mu * mu;
    Ok((8.0 * m2 * m2 - 8.0 * m2 + 2.0 * SQRT_2 * one_tangle_radical(mu)) / 24.0)
}

/// `N_AB` (= `N_AC`) of the dressed W state.
pub fn w_two_tangle_ab(mu: f64) -> Result<f64> {
    check_mu(mu)?;
    let m2 = mu * mu;
    let inner = 4.0 * (2.0 * m2 - 1.0) + (8.0 * m2 * m2 - 8.0 * m2 + 1.0) + 5.0;
    Ok((SQRT_2 * inner.sqrt() - 2.0) / 6.0)
}

/// Unclamped `N_BC` expression; negative past sudden death. Only useful as a
/// sign-changing function for root finding.
pub fn w_two_tangle_bc_raw(mu: f64) -> Result<f64> {
    check_mu(mu)?;
    let m2 = mu * mu;
    let m4 = m2 * m2;
    Ok(
        (-12.0 - 8.0 * m4 + 16.0 * m2 + 2.0 * SQRT_2 * (18.0 + 40.0 * m4 - 48.0 * m2).sqrt())
            / 12.0,
    )
}

/// `N_BC` of the dressed W state, zero past sudden death.
pub fn w_two_tangle_bc(mu: f64) -> Result<f64> {
    Ok(w_two_tangle_bc_raw(mu)?.max(0.0))
}

/// Residual tangle of the W state with Alice as pivot.
pub fn w_gte_a_pivot(mu: f64) -> Result<f64> {
    check_mu(mu)?;
    let m2 = mu * mu;
    let m4 = m2 * m2;
    let first = 8.0 * m4 - 8.0 * m2 + 2.0 * SQRT_2 * one_tangle_radical(mu);
    let second = SQRT_2 * (5.0 + 4.0 * (2.0 * m2 - 1.0) + (8.0 * m4 - 8.0 * m2 + 1.0)).sqrt() - 2.0;
    Ok(first * first / 576.0 - second * second / 18.0)
}

/// GTE of the dressed GHZ state as quoted in the literature.
pub fn ghz_gte(mu: f64, nu: f64) -> Result<f64> {
    check_mu(mu)?;
    if !(0.0..=FRAC_1_SQRT_2 + RANGE_SLACK).contains(&nu) {
        return Err(Error::InvalidParameter(format!(
            "nu = {nu} outside the physical range [0, 1/sqrt 2]"
        )));
    }
    let (m2, n2) = (mu * mu, nu * nu);
    let inner = m2 - m2 * n2 + mu * (n2 * n2 * m2 + m2).sqrt();
    Ok(inner * inner / 4.0)
}

/// Temperature at which `N_BC` of the W state dies: `mu^2 = 2 - sqrt 2`,
/// i.e. `T* = 2 w / ln 2`.
pub fn sudden_death_temperature(omega: f64) -> Result<f64> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "mode frequency must be positive and finite, got {omega}"
        )));
    }
    Ok(2.0 * omega / LN_2)
}

pub fn mu_of_t(omega: f64, temperature: f64) -> Result<f64> {
    Ok(fermion_params(omega, temperature)?.mu)
}

/// Symbolic `rho_ABC` of the dressed W state (basis `|ABC>`, A most
/// significant).
pub fn w_density_abc(mu: f64, nu: f64) -> DMatrix<Complex64> {
    let (m2, n2) = (mu * mu, nu * nu);
    let mut m = DMatrix::<f64>::zeros(8, 8);
    let mut set = |i: usize, j: usize, v: f64| {
        m[(i, j)] = v / 3.0;
        m[(j, i)] = v / 3.0;
    };
    set(1, 1, m2);
    set(1, 2, m2);
    set(2, 2, m2);
    set(1, 4, m2 * mu);
    set(2, 4, m2 * mu);
    set(4, 4, m2 * m2);
    set(3, 3, 2.0 * n2);
    set(3, 5, mu * n2);
    set(3, 6, mu * n2);
    set(5, 5, m2 * n2);
    set(6, 6, m2 * n2);
    set(7, 7, n2 * n2);
    m.map(|x| Complex64::new(x, 0.0))
}
