//! Chern-class calculus on top of [`crate::cohomology`]: standard total
//! classes, Whitney sums, circle-bundle Gysin tests, the spherical constraint
//! `c_k = C(n+2,k)/(n+2)^k · c₁^k`, the named example computations and the
//! tractor determinant identity.
//!
//! Classes on the total space `S` of a circle bundle are never modeled
//! directly: a base class stands for its pullback, and two pullbacks agree
//! iff their difference lies in `e ∪ H(Y)`.

mod bundle;
mod checks;
mod circle;
mod models;
mod tractor;

use thiserror::Error;

use crate::cohomology::CohomologyError;

pub use bundle::{bundle_product, chern_projective_space, chern_space_form_quotient, chern_surface, BundleClass};
pub use checks::{
    check_integral_counterexample, check_nonzero_first_chern, check_nonzero_first_chern_model,
    check_nonzero_second_chern, check_spherical_family, check_stein_fillable_violation, SphericalFamily,
};
pub use circle::{spherical_coefficient, spherical_residual, verify_spherical_on_circle_bundle, CircleBundleSetup};
pub use models::{fpp_product, nilsquare_product, projective_space, surface_product, FppProduct, SurfaceProduct};
pub use tractor::{tractor_determinant, tractor_determinant_check, tractor_identity_report, TractorMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChernError {
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error("ring has no generator `{0}`")]
    MissingGenerator(String),
    #[error("total Chern class must have constant term 1")]
    ConstantTermNotOne,
    #[error("total Chern class has a component in degree {degree}, above twice the rank {rank}")]
    AboveRank { degree: u32, rank: u32 },
    #[error("{0}")]
    InvalidParameter(String),
    #[error("the spherical formula is rational; use rational coefficients")]
    RationalCoefficientsRequired,
}
