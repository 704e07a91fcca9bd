//! One-tangles, two-tangles, residual tangles and genuine tripartite
//! entanglement (GTE) of three-party density operators.
//!
//! `one_tangle(rho, a)` is the negativity of `rho^{T_a}`; `two_tangle(rho,
//! (a, b))` that of the `ab` marginal transposed on `a`. The residual for
//! pivot `a` is `N_a(bc)^2 - N_ab^2 - N_ac^2` (non-negative by the CKW
//! monogamy inequality) and the GTE is the smallest residual.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{partial_trace, partial_transpose_negativity, DensityOperator};

/// Residuals may dip this far below zero before monogamy counts as violated.
pub const MONOGAMY_TOL: f64 = 1e-9;
/// Residuals within this distance of the minimum tie; the alphabetically
/// first pivot wins.
pub const GTE_TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StateKind {
    W,
    Ghz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldKind {
    Fermion,
    Boson,
}

impl fmt::Display for StateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StateKind::W => "w",
            StateKind::Ghz => "ghz",
        })
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FieldKind::Fermion => "fermion",
            FieldKind::Boson => "boson",
        })
    }
}

impl FromStr for StateKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "w" => Ok(StateKind::W),
            "ghz" => Ok(StateKind::Ghz),
            _ => Err(Error::InvalidConfig(format!("unknown state `{s}` (w|ghz)"))),
        }
    }
}

impl FromStr for FieldKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fermion" => Ok(FieldKind::Fermion),
            "boson" => Ok(FieldKind::Boson),
            _ => Err(Error::InvalidConfig(format!(
                "unknown field `{s}` (fermion|boson)"
            ))),
        }
    }
}

/// Where a report came from.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportMeta {
    pub state: StateKind,
    pub field: FieldKind,
    pub omega: f64,
    pub temperature: f64,
    /// Fock cutoff `n_max`; bosonic states only.
    pub cutoff: Option<usize>,
    pub trace_deficit: Option<f64>,
}

fn require_tripartite(rho: &DensityOperator) -> Result<()> {
    if rho.layout().len() != 3 {
        return Err(Error::InvalidLayout(format!(
            "tangles need exactly three modes, got {}",
            rho.layout()
        )));
    }
    Ok(())
}

/// `N_{pivot(rest)}`.
pub fn one_tangle(rho: &DensityOperator, pivot: &str) -> Result<f64> {
    require_tripartite(rho)?;
    partial_transpose_negativity(rho, pivot)
}

/// `N_{ab}`: negativity of the `ab` marginal. Zero past sudden death.
pub fn two_tangle(rho: &DensityOperator, pair: (&str, &str)) -> Result<f64> {
    require_tripartite(rho)?;
    let (a, b) = pair;
    if a == b {
        return Err(Error::InvalidParameter(format!(
            "two-tangle needs distinct modes, got ({a}, {b})"
        )));
    }
    rho.layout().position(a)?;
    rho.layout().position(b)?;
    let third = rho
        .layout()
        .labels()
        .iter()
        .find(|l| *l != a && *l != b)
        .expect("three distinct labels")
        .clone();
    let marginal = partial_trace(rho, &[third.as_str()])?;
    partial_transpose_negativity(&marginal, a)
}

fn residual_from(pivot: &str, one: f64, two: [f64; 2]) -> Result<f64> {
    let residual = one * one - two[0] * two[0] - two[1] * two[1];
    if residual < -MONOGAMY_TOL {
        return Err(Error::MonogamyViolation {
            pivot: pivot.to_string(),
            one_tangle: one,
            two_tangles: two,
            residual,
        });
    }
    Ok(residual)
}

fn others<'a>(rho: &'a DensityOperator, pivot: &str) -> Result<[&'a str; 2]> {
    rho.layout().position(pivot)?;
    let rest: Vec<&str> = rho
        .layout()
        .labels()
        .iter()
        .map(String::as_str)
        .filter(|l| *l != pivot)
        .collect();
    Ok([rest[0], rest[1]])
}

/// CKW residual `N_{p(bc)}^2 - N_{pb}^2 - N_{pc}^2`.
///
/// Values in `[-MONOGAMY_TOL, 0)` are returned as is; anything lower is a
/// [`Error::MonogamyViolation`].
pub fn residual(rho: &DensityOperator, pivot: &str) -> Result<f64> {
    require_tripartite(rho)?;
    let [b, c] = others(rho, pivot)?;
    let one = one_tangle(rho, pivot)?;
    let two = [two_tangle(rho, (pivot, b))?, two_tangle(rho, (pivot, c))?];
    residual_from(pivot, one, two)
}

fn min_residual<'a>(residuals: impl IntoIterator<Item = (&'a str, f64)>) -> (f64, String) {
    let mut sorted: Vec<(&str, f64)> = residuals.into_iter().collect();
    sorted.sort_by(|x, y| x.0.cmp(y.0));
    let min = sorted.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    let (pivot, _) = sorted
        .iter()
        .find(|r| r.1 <= min + GTE_TIE_TOL)
        .expect("three residuals");
    (min.max(0.0), pivot.to_string())
}

/// Minimum residual over the three pivots, clamped at zero, with the pivot
/// attaining it.
pub fn gte(rho: &DensityOperator) -> Result<(f64, String)> {
    require_tripartite(rho)?;
    let mut residuals = Vec::new();
    for label in rho.layout().labels() {
        residuals.push((label.as_str(), residual(rho, label)?));
    }
    Ok(min_residual(residuals))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntanglementReport {
    pub one_tangles: BTreeMap<String, f64>,
    /// Keyed by the pair in layout order.
    pub two_tangles: BTreeMap<(String, String), f64>,
    pub residuals: BTreeMap<String, f64>,
    pub gte: f64,
    pub gte_pivot: String,
    pub meta: ReportMeta,
    labels: [String; 3],
}

impl EntanglementReport {
    /// Mode labels in layout order.
    pub fn labels(&self) -> &[String; 3] {
        &self.labels
    }

    pub fn one_tangle(&self, pivot: &str) -> Option<f64> {
        self.one_tangles.get(pivot).copied()
    }

    /// Order-insensitive lookup.
    pub fn two_tangle(&self, a: &str, b: &str) -> Option<f64> {
        self.two_tangles
            .get(&(a.to_string(), b.to_string()))
            .or_else(|| self.two_tangles.get(&(b.to_string(), a.to_string())))
            .copied()
    }

    pub fn residual(&self, pivot: &str) -> Option<f64> {
        self.residuals.get(pivot).copied()
    }

    /// Pairs in layout order: (0,1), (0,2), (1,2).
    pub fn pairs(&self) -> [(String, String); 3] {
        let [a, b, c] = self.labels.clone();
        [(a.clone(), b.clone()), (a, c.clone()), (b, c)]
    }
}

/// Every one-tangle, two-tangle and residual plus the GTE of `rho`.
pub fn full_report(rho: &DensityOperator, meta: ReportMeta) -> Result<EntanglementReport> {
    require_tripartite(rho)?;
    let labels: [String; 3] = [0, 1, 2].map(|k| rho.layout().labels()[k].clone());

    let mut one_tangles = BTreeMap::new();
    for l in &labels {
        one_tangles.insert(l.clone(), one_tangle(rho, l)?);
    }
    let mut two_tangles = BTreeMap::new();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let value = two_tangle(rho, (&labels[i], &labels[j]))?;
        two_tangles.insert((labels[i].clone(), labels[j].clone()), value);
    }
    let pair = |a: &str, b: &str| {
        two_tangles
            .get(&(a.to_string(), b.to_string()))
            .or_else(|| two_tangles.get(&(b.to_string(), a.to_string())))
            .copied()
            .expect("all pairs computed")
    };
    let mut residuals = BTreeMap::new();
    for l in &labels {
        let [b, c] = others(rho, l)?;
        let r = residual_from(l, one_tangles[l], [pair(l, b), pair(l, c)])?;
        residuals.insert(l.clone(), r);
    }
    let (gte, gte_pivot) = min_residual(residuals.iter().map(|(k, v)| (k.as_str(), *v)));
    Ok(EntanglementReport {
        one_tangles,
        two_tangles,
        residuals,
        gte,
        gte_pivot,
        meta,
        labels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermion::{build_ghz_fermion, build_w_fermion, fermion_params, physical_density};
    use crate::linalg::{ModeLayout, StateVector};

    fn w_flat() -> DensityOperator {
        let p = fermion_params(1.0, 0.0).unwrap();
        physical_density(&build_w_fermion(&p, &p)).unwrap()
    }

    fn product_state() -> DensityOperator {
        let l = ModeLayout::qubits(["A", "B", "C"]).unwrap();
        StateVector::basis(l, &[1, 0, 1]).unwrap().projector()
    }

    fn meta() -> ReportMeta {
        ReportMeta {
            state: StateKind::W,
            field: FieldKind::Fermion,
            omega: 1.0,
            temperature: 0.0,
            cutoff: None,
            trace_deficit: None,
        }
    }

    #[test]
    fn flat_w_values() {
        let rho = w_flat();
        let one = 2.0 * 2f64.sqrt() / 3.0;
        let two = (5f64.sqrt() - 1.0) / 3.0;
        let res = (4.0 * 5f64.sqrt() - 4.0) / 9.0;
        for p in ["A", "B", "C"] {
            assert!((one_tangle(&rho, p).unwrap() - one).abs() < 1e-12);
            assert!((residual(&rho, p).unwrap() - res).abs() < 1e-12);
        }
        assert!((two_tangle(&rho, ("A", "B")).unwrap() - two).abs() < 1e-12);
        let (g, pivot) = gte(&rho).unwrap();
        assert!((g - res).abs() < 1e-12);
        assert_eq!(pivot, "A");
    }

    #[test]
    fn flat_ghz_values() {
        let p = fermion_params(1.0, 0.0).unwrap();
        let rho = physical_density(&build_ghz_fermion(&p, &p)).unwrap();
        assert!((residual(&rho, "A").unwrap() - 1.0).abs() < 1e-12);
        let (g, pivot) = gte(&rho).unwrap();
        assert!((g - 1.0).abs() < 1e-12);
        assert_eq!(pivot, "A");
        assert_eq!(two_tangle(&rho, ("B", "C")).unwrap(), 0.0);
    }

    #[test]
    fn separable_state_is_unentangled() {
        let rho = product_state();
        assert_eq!(one_tangle(&rho, "B").unwrap(), 0.0);
        assert_eq!(residual(&rho, "C").unwrap(), 0.0);
        assert_eq!(gte(&rho).unwrap(), (0.0, "A".to_string()));
    }

    #[test]
    fn rejects_bad_arguments() {
        let rho = w_flat();
        assert!(matches!(one_tangle(&rho, "Z"), Err(Error::UnknownLabel(_))));
        assert!(two_tangle(&rho, ("A", "A")).is_err());
        assert!(two_tangle(&rho, ("A", "Q")).is_err());
        let two_mode = crate::linalg::partial_trace(&rho, &["C"]).unwrap();
        assert!(matches!(
            one_tangle(&two_mode, "A"),
            Err(Error::InvalidLayout(_))
        ));
    }

    #[test]
    fn monogamy_violation_is_flagged() {
        assert!(residual_from("A", 0.1, [0.1, 0.0]).is_ok());
        let err = residual_from("A", 0.1, [0.1, 0.01]).unwrap_err();
        assert!(matches!(err, Error::MonogamyViolation { .. }));
        assert!(err.is_numeric());
        // inside the tolerance the raw negative value is reported
        let r = residual_from("A", 0.0, [0.0, 3e-5]).unwrap();
        assert!(r < 0.0 && r > -MONOGAMY_TOL);
    }

    #[test]
    fn gte_tie_break_and_clamp() {
        let (g, p) = min_residual([("C", 0.2), ("A", 0.2 + 1e-14), ("B", 0.3)]);
        assert_eq!(p, "A");
        assert!((g - 0.2).abs() < 1e-13);
        let (g, p) = min_residual([("A", 0.1), ("B", -5e-10), ("C", 0.1)]);
        assert_eq!((g, p.as_str()), (0.0, "B"));
    }

    #[test]
    fn report_consistency() {
        let p = fermion_params(1.0, 1.3).unwrap();
        let rho = physical_density(&build_w_fermion(&p, &p)).unwrap();
        let r = full_report(&rho, meta()).unwrap();
        for l in ["A", "B", "C"] {
            let [b, c] = others(&rho, l).unwrap();
            let want = r.one_tangle(l).unwrap().powi(2)
                - r.two_tangle(l, b).unwrap().powi(2)
                - r.two_tangle(l, c).unwrap().powi(2);
            assert!((r.residual(l).unwrap() - want).abs() < 1e-12);
            assert!((r.residual(l).unwrap() - residual(&rho, l).unwrap()).abs() < 1e-15);
        }
        let min = r.residuals.values().copied().fold(f64::INFINITY, f64::min);
        assert_eq!(r.gte, min.max(0.0));
        assert_eq!(r.residual(&r.gte_pivot).unwrap(), min);
        assert!((r.one_tangle("B").unwrap() - r.one_tangle("C").unwrap()).abs() < 1e-10);
        assert!((r.two_tangle("A", "B").unwrap() - r.two_tangle("C", "A").unwrap()).abs() < 1e-10);
        assert_eq!(r.pairs()[2], ("B".to_string(), "C".to_string()));
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("W".parse::<StateKind>().unwrap(), StateKind::W);
        assert_eq!("ghz".parse::<StateKind>().unwrap(), StateKind::Ghz);
        assert_eq!("boson".parse::<FieldKind>().unwrap(), FieldKind::Boson);
        assert!("x".parse::<StateKind>().is_err());
        assert_eq!(FieldKind::Fermion.to_string(), "fermion");
    }
}
