//! Numeric curvature of Kähler products of complex space forms.
//!
//! The circle bundle of a negative line bundle over a Kähler base is Sasakian:
//! its Tanaka–Webster torsion vanishes and its Tanaka–Webster curvature is the
//! pullback of the Kähler curvature. Every CR tensor needed here is therefore
//! computed on the base, on a coordinate patch, and [`SasakiCorrespondence`]
//! only records that identification.
//!
//! Conventions:
//! - `g_{αβ̄} = ∂_α ∂_β̄ φ` for a Kähler potential `φ`;
//! - `R_{αβ̄γδ̄} = -∂_γ∂_δ̄ g_{αβ̄} + g^{ρσ̄} ∂_γ g_{ασ̄} ∂_δ̄ g_{ρβ̄}`;
//! - holomorphic sectional curvature `R(v,v̄,v,v̄) / g(v,v̄)²`, positive on
//!   projective space.
//!
//! The metric has a closed form; its first and second derivatives are central
//! finite differences with step `1e-4`, and derivatives of curvature
//! quantities use step `1e-3`.

mod batch;
mod patch;
mod sasaki;
mod space_form;
mod tensors;

use thiserror::Error;

pub use batch::{BatchOutcome, BochnerBatch, FactorSpec, PointSummary, Scenario, Tolerances};
pub use patch::{KahlerProductPatch, C64};
pub use sasaki::SasakiCorrespondence;
pub use space_form::{calibrate_space_form, measure_hsc, Calibration, Potential, SpaceFormFactor};
pub use tensors::{
    chern_tensor, curvature_at, first_pair_trace, metric_jet, pseudo_einstein_residual, richardson, ricci,
    scalar_curvature, schouten, space_form_oracle, v_tensor_at, FdSteps, MetricField, MetricJet, PointTensors,
    VTensorData,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KahlerError {
    #[error("holomorphic sectional curvature must be nonzero")]
    ZeroCurvature,
    #[error("factor dimension must be positive")]
    ZeroDimension,
    #[error("point is outside the coordinate patch (|z| = {norm} >= {radius})")]
    OutsidePatch { norm: f64, radius: f64 },
    #[error("metric is not positive definite at the sample point")]
    NotPositive,
    #[error("metric is ill-conditioned (condition number {0:e})")]
    IllConditioned(f64),
    #[error("calibration measured {measured} for target {target}: sign convention error")]
    ConventionError { measured: f64, target: f64 },
    #[error("calibration residual {0:e} exceeds 1e-10")]
    Calibration(f64),
    #[error("point has {got} coordinates, patch has dimension {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("{0}")]
    InvalidParameter(String),
    #[error("invalid scenario: {0}")]
    Scenario(String),
}
