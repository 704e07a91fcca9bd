//! Negativity-based entanglement of Hawking-dressed tripartite states.
//!
//! Fermionic and bosonic W and GHZ states shared by an inertial observer and
//! observers hovering outside a Schwarzschild horizon are built in an
//! explicit (out, in) mode basis, the inaccessible interior modes are traced
//! out, and one-tangles, two-tangles, residual tangles and the genuine
//! tripartite entanglement (GTE) are computed from partial-transpose spectra.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod linalg;

pub mod boson;
pub mod closed_forms;
pub mod fermion;
pub mod measures;
pub mod sweep;

pub use boson::{BosonThermalParams, FockCutoff};
pub use error::{Error, Result};
pub use fermion::FermionThermalParams;
pub use linalg::{
    negativity, partial_trace, partial_transpose, partial_transpose_negativity, tensor_product,
    DensityOperator, HermitianOperator, ModeLayout, StateVector,
};
pub use measures::{full_report, EntanglementReport, FieldKind, ReportMeta, StateKind};
pub use sweep::{run_sweep, CutoffPolicy, Measure, SweepConfig, SweepRow};

/// Occupation of a Kruskal mode before it is rewritten in the
/// exterior/interior basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KruskalLevel {
    Vacuum,
    Excited,
}
