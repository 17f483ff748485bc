//! Exact even-degree cohomology rings and the integer linear algebra behind
//! Gysin-sequence arguments.
//!
//! Only even-degree cohomology is modeled. Rings are tensor products of
//! truncated polynomial rings on even generators, which is enough for
//! projective spaces, the even part of surfaces and of fake projective planes,
//! and products of classes with vanishing square. Odd-degree classes never
//! enter the maps `∪ e : H^{2k-2} → H^{2k}` used here, so leaving them out
//! does not change any image, membership or cokernel computation.
//!
//! Real coefficients are handled over ℚ: for rational data, `A x = y` is
//! solvable over ℝ exactly when it is solvable over ℚ, since both conditions
//! say `rank A = rank [A | y]`.

mod coefficients;
mod gysin;
mod matrix;
mod parse;
mod ring;
mod solve;

use thiserror::Error;

pub use coefficients::CoefficientDomain;
pub use gysin::{
    coordinates, cokernel, cup_matrix, image_membership, image_membership_in_degree, Cokernel,
    CokernelClass, CupMatrix, Membership, MembershipCertificate,
};
pub use matrix::{smith_normal_form, IntegerMatrix, SmithNormalForm};
pub use parse::{parse_element, ParseError};
pub use ring::{Exponents, Generator, RingElement, RingPresentation};
pub use solve::{
    modular_augmentation, solve_integral, solve_modular, solve_rational, Obstruction, Solution,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("generator `{name}` has degree {degree}; only positive even degrees are supported")]
    OddDegree { name: String, degree: u32 },
    #[error("generator `{0}` has truncation 0; truncation must be at least 1")]
    ZeroTruncation(String),
    #[error("`{0}` is not a valid generator name")]
    InvalidName(String),
    #[error("modulus {0} is invalid; need m >= 2")]
    InvalidModulus(u64),
    #[error("unknown coefficient domain `{0}` (expected \"Z\", \"Q\" or {{\"mod\": m}})")]
    UnknownCoefficients(String),
    #[error("{value} is not representable over {domain}")]
    NotRepresentable { value: String, domain: CoefficientDomain },
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("element is not homogeneous of the required degree")]
    NotHomogeneous,
    #[error("integer coefficients required")]
    NonIntegerCoefficients,
    #[error("parse error: {0}")]
    Parse(ParseError),
}
