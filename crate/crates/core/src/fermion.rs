//! Hawking-dressed fermionic W and GHZ states.
//!
//! A Kruskal qubit held by an observer near the horizon is rewritten in the
//! exterior/interior Schwarzschild basis as
//!
//! ```text
//! |0>_K = mu |0>_out |0>_in + nu |1>_out |1>_in
//! |1>_K = |1>_out |0>_in
//! ```
//!
//! with `mu = (e^{-w/T} + 1)^{-1/2}` and `nu = (e^{w/T} + 1)^{-1/2}`. Modes
//! are treated as distinguishable qubit factors; no exchange signs are
//! applied.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{DensityOperator, ModeLayout, StateVector, TensorProduct};
use crate::KruskalLevel;

/// Mode labels of a dressed fermionic three-party state, in basis order.
pub const FERMION_MODES: [&str; 5] = ["A", "B", "Bbar", "C", "Cbar"];
/// Modes left after tracing out the interior partners.
pub const PHYSICAL_MODES: [&str; 3] = ["A", "B", "C"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FermionThermalParams {
    pub omega: f64,
    pub temperature: f64,
    pub mu: f64,
    pub nu: f64,
}

/// Boltzmann factor `e^{-w/T}`, with the `T = 0` limit taken exactly.
pub(crate) fn boltzmann(omega: f64, temperature: f64) -> Result<f64> {
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "mode frequency must be positive and finite, got {omega}"
        )));
    }
    if !(temperature >= 0.0) || !temperature.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "Hawking temperature must be non-negative and finite, got {temperature}"
        )));
    }
    if temperature == 0.0 {
        return Ok(0.0);
    }
    Ok((-omega / temperature).exp())
}

pub fn fermion_params(omega: f64, temperature: f64) -> Result<FermionThermalParams> {
    let x = boltzmann(omega, temperature)?;
    Ok(FermionThermalParams {
        omega,
        temperature,
        mu: (1.0 / (1.0 + x)).sqrt(),
        nu: (x / (1.0 + x)).sqrt(),
    })
}

/// Fermi-Dirac occupation `1 / (e^{w/T} + 1)` seen by the exterior observer.
pub fn fermi_occupation(omega: f64, temperature: f64) -> Result<f64> {
    let x = boltzmann(omega, temperature)?;
    Ok(x / (1.0 + x))
}

fn dressed(
    level: KruskalLevel,
    params: &FermionThermalParams,
    out_label: &str,
    in_label: &str,
) -> StateVector {
    let layout = ModeLayout::qubits([out_label, in_label]).expect("distinct labels");
    let c = |x: f64| Complex64::new(x, 0.0);
    let amps = match level {
        // |00>, |01>, |10>, |11> in (out, in) order
        KruskalLevel::Vacuum => vec![c(params.mu), c(0.0), c(0.0), c(params.nu)],
        KruskalLevel::Excited => vec![c(0.0), c(0.0), c(1.0), c(0.0)],
    };
    StateVector::new(layout, amps).expect("mu^2 + nu^2 = 1")
}

/// Kruskal number state of one fermionic mode over `(out, in)`.
pub fn dress_kruskal_qubit(level: KruskalLevel, params: &FermionThermalParams) -> StateVector {
    dressed(level, params, "out", "in")
}

fn alice(level: usize) -> StateVector {
    StateVector::basis(ModeLayout::qubits(["A"]).unwrap(), &[level]).unwrap()
}

/// Superposes product terms `|a>_A (x)_B (x)_C` with equal weight.
fn dressed_superposition(
    terms: &[(usize, KruskalLevel, KruskalLevel)],
    params_b: &FermionThermalParams,
    params_c: &FermionThermalParams,
) -> StateVector {
    let weight = (terms.len() as f64).sqrt().recip();
    let mut layout = None;
    let mut amps: Vec<Complex64> = Vec::new();
    for &(a, b, c) in terms {
        let term = alice(a)
            .tensor(&dressed(b, params_b, "B", "Bbar"))
            .and_then(|s| s.tensor(&dressed(c, params_c, "C", "Cbar")))
            .expect("disjoint labels");
        if amps.is_empty() {
            amps = vec![Complex64::new(0.0, 0.0); term.amplitudes().len()];
            layout = Some(term.layout().clone());
        }
        for (acc, x) in amps.iter_mut().zip(term.amplitudes()) {
            *acc += x * weight;
        }
    }
    StateVector::new(layout.expect("at least one term"), amps).expect("orthonormal terms")
}

/// W state `(|001> + |010> + |100>)/sqrt 3` with Bob's and Charlie's qubits
/// dressed; layout [`FERMION_MODES`].
pub fn build_w_fermion(
    params_b: &FermionThermalParams,
    params_c: &FermionThermalParams,
) -> StateVector {
    use KruskalLevel::{Excited as One, Vacuum as Zero};
    dressed_superposition(
        &[(0, Zero, One), (0, One, Zero), (1, Zero, Zero)],
        params_b,
        params_c,
    )
}

/// GHZ state `(|000> + |111>)/sqrt 2` with Bob's and Charlie's qubits
/// dressed; layout [`FERMION_MODES`].
pub fn build_ghz_fermion(
    params_b: &FermionThermalParams,
    params_c: &FermionThermalParams,
) -> StateVector {
    use KruskalLevel::{Excited as One, Vacuum as Zero};
    dressed_superposition(&[(0, Zero, Zero), (1, One, One)], params_b, params_c)
}

/// Traces the interior modes `Bbar`, `Cbar` out of a dressed state.
pub fn physical_density(state: &StateVector) -> Result<DensityOperator> {
    let layout = state.layout();
    if layout.labels() != FERMION_MODES || layout.dims().iter().any(|&d| d != 2) {
        return Err(Error::InvalidLayout(format!(
            "expected qubit modes {FERMION_MODES:?}, got {layout}"
        )));
    }
    state.reduced_density(&["Bbar", "Cbar"])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn params_limits() {
        let p = fermion_params(1.0, 0.0).unwrap();
        assert_eq!((p.mu, p.nu), (1.0, 0.0));

        let p = fermion_params(1.0, 1e9).unwrap();
        assert!((p.mu * p.mu - 0.5).abs() < 1e-9);
        assert!((p.nu * p.nu - 0.5).abs() < 1e-9);

        // e^{w/T} = 4
        let p = fermion_params(1.0, 0.5 / LN_2).unwrap();
        assert!((p.nu - 0.2f64.sqrt()).abs() < 1e-14);
        assert!((p.mu - 2.0 / 5f64.sqrt()).abs() < 1e-14);
        // e^{w/T} = 2
        let p = fermion_params(1.0, 1.0 / LN_2).unwrap();
        assert!((p.nu * p.nu - 1.0 / 3.0).abs() < 1e-14);

        let p = fermion_params(1.0, 1e-6).unwrap();
        assert_eq!(p.mu, 1.0);
        assert_eq!(p.nu, 0.0);
    }

    #[test]
    fn params_reject_bad_input() {
        assert!(fermion_params(0.0, 1.0).is_err());
        assert!(fermion_params(-1.0, 1.0).is_err());
        assert!(fermion_params(1.0, -0.1).is_err());
        assert!(fermion_params(f64::NAN, 1.0).is_err());
        assert!(fermi_occupation(1.0, -1.0).is_err());
    }

    #[test]
    fn occupation_values() {
        assert_eq!(fermi_occupation(1.0, 0.0).unwrap(), 0.0);
        assert!((fermi_occupation(1.0, 1e12).unwrap() - 0.5).abs() < 1e-11);
        assert!((fermi_occupation(1.0, 0.5 / LN_2).unwrap() - 0.2).abs() < 1e-14);
        assert!((fermi_occupation(1.0, 1.0 / LN_2).unwrap() - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn kruskal_qubit() {
        let cold = fermion_params(1.0, 0.0).unwrap();
        let v = dress_kruskal_qubit(KruskalLevel::Vacuum, &cold);
        assert_eq!(v.amplitude(&[0, 0]).re, 1.0);
        assert_eq!(v.layout().labels(), &["out", "in"]);

        let hot = fermion_params(1.0, 3.7).unwrap();
        let e = dress_kruskal_qubit(KruskalLevel::Excited, &hot);
        assert_eq!(e.amplitude(&[1, 0]).re, 1.0);

        let sym = FermionThermalParams {
            omega: 1.0,
            temperature: f64::INFINITY,
            mu: 0.5f64.sqrt(),
            nu: 0.5f64.sqrt(),
        };
        let v = dress_kruskal_qubit(KruskalLevel::Vacuum, &sym);
        assert!((v.amplitude(&[0, 0]).re - 0.5f64.sqrt()).abs() < 1e-16);
        assert!((v.amplitude(&[1, 1]).re - 0.5f64.sqrt()).abs() < 1e-16);
    }

    #[test]
    fn w_state_terms() {
        let p = fermion_params(1.0, 2.3).unwrap();
        let (mu, nu) = (p.mu, p.nu);
        let w = build_w_fermion(&p, &p);
        assert_eq!(w.layout().labels(), FERMION_MODES);
        let s3 = 3f64.sqrt();
        let expected: [([usize; 5], f64); 8] = [
            ([0, 0, 0, 1, 0], mu),
            ([0, 1, 0, 0, 0], mu),
            ([0, 1, 0, 1, 1], nu),
            ([0, 1, 1, 1, 0], nu),
            ([1, 0, 0, 0, 0], mu * mu),
            ([1, 0, 0, 1, 1], mu * nu),
            ([1, 1, 1, 0, 0], mu * nu),
            ([1, 1, 1, 1, 1], nu * nu),
        ];
        let mut covered = 0.0;
        for (digits, amp) in expected {
            assert!(
                (w.amplitude(&digits).re - amp / s3).abs() < 1e-15,
                "{digits:?}"
            );
            covered += (amp / s3).powi(2);
        }
        assert!((covered - 1.0).abs() < 1e-14);
    }

    #[test]
    fn flat_space_limit() {
        let p = fermion_params(1.0, 0.0).unwrap();
        let w = build_w_fermion(&p, &p);
        let s3 = 3f64.sqrt().recip();
        for digits in [[0, 0, 0, 1, 0], [0, 1, 0, 0, 0], [1, 0, 0, 0, 0]] {
            assert_eq!(w.amplitude(&digits).re, s3);
        }
        let g = build_ghz_fermion(&p, &p);
        let s2 = 0.5f64.sqrt();
        assert!((g.amplitude(&[0, 0, 0, 0, 0]).re - s2).abs() < 1e-15);
        assert!((g.amplitude(&[1, 1, 0, 1, 0]).re - s2).abs() < 1e-15);
    }

    #[test]
    fn physical_density_entries() {
        let p = fermion_params(1.0, 1.7).unwrap();
        let (mu, nu) = (p.mu, p.nu);
        let rho = physical_density(&build_w_fermion(&p, &p)).unwrap();
        assert_eq!(rho.layout().labels(), PHYSICAL_MODES);
        assert!((rho.entry(3, 3).re - 2.0 * nu * nu / 3.0).abs() < 1e-15);
        assert!((rho.entry(3, 5).re - mu * nu * nu / 3.0).abs() < 1e-15);
        rho.validate().unwrap();
    }

    #[test]
    fn physical_density_rejects_other_layouts() {
        let s =
            StateVector::basis(ModeLayout::qubits(["A", "B", "C"]).unwrap(), &[0, 0, 0]).unwrap();
        assert!(matches!(physical_density(&s), Err(Error::InvalidLayout(_))));
    }
}
