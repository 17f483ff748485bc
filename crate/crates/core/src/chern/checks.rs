//! The named example computations, each producing a [`CheckReport`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::cohomology::{
    cokernel, coordinates, image_membership_in_degree, CoefficientDomain, RingElement,
};
use crate::report::CheckReport;

use super::models::{fpp_product, nilsquare_product, projective_space, surface_product, SurfaceProduct};
use super::{spherical_residual, verify_spherical_on_circle_bundle, ChernError};

fn require(cond: bool, message: impl FnOnce() -> String) -> Result<(), ChernError> {
    if cond {
        Ok(())
    } else {
        Err(ChernError::InvalidParameter(message()))
    }
}

/// `p* c₁(T^{1,0}Y) ≠ 0` on the circle bundle over `Σ₂ × CP^{n-1}`.
pub fn check_nonzero_first_chern(n: u32) -> Result<CheckReport, ChernError> {
    check_nonzero_first_chern_model(&surface_product(n)?)
}

/// Same check for arbitrary line bundle data on `Σ₂ × CP^{n-1}`.
pub fn check_nonzero_first_chern_model(model: &SurfaceProduct) -> Result<CheckReport, ChernError> {
    let setup = &model.setup;
    let beta = setup.base_tangent().c1();
    let e = setup.euler();
    let mut report = CheckReport::new("nonzero-first-chern").param("n", model.n);
    report.witness("c_1(L_1)", model.c1_l1.to_string());
    report.witness("c_1(L_2)", model.c1_l2.to_string());
    report.witness("c_1(T^{1,0}Y)", beta.to_string());
    report.witness("e = c_1(L)", e.to_string());

    let basis = setup.base().degree_basis(2);
    let xb = coordinates(&beta, &basis);
    let xe = coordinates(e, &basis);
    let minor = if basis.len() == 2 {
        &xb[0] * &xe[1] - &xb[1] * &xe[0]
    } else {
        BigRational::zero()
    };
    report.witness("det [c_1(T^{1,0}Y) | e] in basis (s, h)", minor.to_string());
    report.check_that("c_1(T^{1,0}Y) is not proportional to e", !minor.is_zero());

    let membership = setup.pullback_membership(&beta)?;
    report.witness("membership certificate", membership.to_json());
    report.check_that("c_1(T^{1,0}Y) is not in e ∪ H^0, so p* c_1(T^{1,0}S) != 0", !membership.member);
    Ok(report)
}

/// The spherical circle bundles on which the constraint is exercised.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SphericalFamily {
    /// `Σ₂ × CP^{n-1}`, `n >= 2`.
    SurfaceProduct,
    /// `CPⁿ` with `e = -dτ` over ℚ.
    ProjectiveSpace { d: u32 },
    /// `FPP × CP^{n-2}`, `n >= 4`.
    FppProduct,
}

impl SphericalFamily {
    pub fn name(self) -> &'static str {
        match self {
            SphericalFamily::SurfaceProduct => "surface x CP^(n-1)",
            SphericalFamily::ProjectiveSpace { .. } => "CP^n",
            SphericalFamily::FppProduct => "FPP x CP^(n-2)",
        }
    }
}

/// Checks `c_k = C(n+2,k)/(n+2)^k c₁^k` on `S` for `k = 1..=n+1`.
pub fn check_spherical_family(family: SphericalFamily, n: u32) -> Result<CheckReport, ChernError> {
    let setup = match family {
        SphericalFamily::SurfaceProduct => surface_product(n)?.setup,
        SphericalFamily::ProjectiveSpace { d } => projective_space(n, d, CoefficientDomain::Rationals)?,
        SphericalFamily::FppProduct => fpp_product(n)?.setup,
    };
    let report = verify_spherical_on_circle_bundle(&setup, n, family.name())?;
    Ok(match family {
        SphericalFamily::ProjectiveSpace { d } => report.param("d", d),
        _ => report,
    })
}

/// `2(n+2)c₂ - (n+1)c₁²` in `H⁴(S; ℤ) ≅ ℤ/dℤ` for the lens space `S^{2n+1}/ℤ_d`.
///
/// The report passes when the class is nonzero exactly for `d ∤ (n+1)`; for
/// `d | (n+1)` the class vanishes and the report records that the constraint
/// is not violated.
pub fn check_integral_counterexample(n: u32, d: u32) -> Result<CheckReport, ChernError> {
    require(n >= 2 && d >= 1, || format!("need n >= 2 and d >= 1, got n={n}, d={d}"))?;
    let setup = projective_space(n, d, CoefficientDomain::Integers)?;
    let r = setup.base().clone();
    let c = setup.base_tangent();
    let mut report = CheckReport::new("integral-counterexample").param("n", n).param("d", d);

    let class = c
        .chern_class(2)
        .scale_int(2 * i64::from(n + 2))
        .sub(&c.c1().pow(2).scale_int(i64::from(n + 1)))?;
    let tau2 = RingElement::generator(&r, "τ")?.pow(2);
    report.exact_residual("2(n+2) c_2 - (n+1) c_1^2 on base", &class);
    report.check_that(
        "2(n+2) c_2 - (n+1) c_1^2 = -(n+1) τ^2",
        class == tau2.scale_int(-i64::from(n + 1)),
    );

    let cok = cokernel(setup.euler(), 4)?;
    report.witness("H^4(S; Z)", cok.to_json());
    let d_big = BigInt::from(d);
    report.check_that("H^4(S; Z) ≅ Z/d", cok.order() == Some(d_big.clone()));
    let generator = cok.class_of(&tau2)?;
    report.check_that("p* τ^2 generates H^4(S; Z)", generator.order() == Some(d_big.clone()));

    let value = cok.class_of(&class)?;
    let k = -BigInt::from(n + 1);
    let consistent = value.free.is_empty()
        && value.torsion.len() == generator.torsion.len()
        && value
            .torsion
            .iter()
            .zip(&generator.torsion)
            .all(|((r, m), (g, _))| (r - &k * g).mod_floor(m).is_zero());
    report.check_that("class = -(n+1) · generator", consistent);

    let nonzero = !value.is_zero();
    let expected = !(n + 1).is_multiple_of(d);
    report.witness("class", format!("{k} mod {d}"));
    report.witness("class (canonical)", value.to_json());
    report.witness(
        "verdict",
        if nonzero {
            "2(n+2) c_2 != (n+1) c_1^2 in H^4(S; Z): constraint violated"
        } else {
            "class vanishes: constraint not violated"
        },
    );
    report.check_that("class is nonzero iff d does not divide n+1", nonzero == expected);
    Ok(report)
}

/// `p* c₁(T^{1,0}Y)² ≠ 0` on the circle bundle over `FPP × CP^{n-2}`,
/// together with the decomposition
/// `c₁(TY)² = (n+2)²/9 · c₁(L₂)² + e ∪ (e - 2(n+2)/3 · c₁(L₂))`.
pub fn check_nonzero_second_chern(n: u32) -> Result<CheckReport, ChernError> {
    let model = fpp_product(n)?;
    let e = model.setup.euler();
    let c1 = model.c1_tangent();
    let beta = c1.pow(2);
    let mut report = CheckReport::new("nonzero-second-chern").param("n", n);
    report.witness("c_1(T^{1,0}Y)", c1.to_string());
    report.witness("e = c_1(L)", e.to_string());
    report.witness("c_1(T^{1,0}Y)^2", beta.to_string());

    let membership = image_membership_in_degree(e, &beta, 4)?;
    report.witness("membership certificate", membership.to_json());
    report.check_that("c_1(T^{1,0}Y)^2 is not in e ∪ H^2", !membership.member);

    let shift = BigRational::new((2 * (n + 2)).into(), 3.into());
    let preimage = e.sub(&model.c1_l2.scale(&shift)?)?;
    let residual = beta.sub(&e.mul(&preimage)?)?;
    let expected = model.c1_l2.pow(2).scale(&model.residual_coefficient())?;
    report.witness("preimage c_1(L) - 2(n+2)/3 c_1(L_2)", preimage.to_string());
    report.exact_residual("c_1(T^{1,0}Y)^2 - e ∪ preimage", &residual);
    report.check_that("residual = (n+2)^2/9 c_1(L_2)^2", residual == expected);
    let l2_square = image_membership_in_degree(e, &model.c1_l2.pow(2), 4)?;
    report.check_that("c_1(L_2)^2 is not in e ∪ H^2", !l2_square.member);
    Ok(report)
}

/// The Stein fillable examples: `c = Π(1 + τ_j)` with `τ_j² = 0`, `n = 2m - 1`
/// or, with one extra trivial factor, `n = 2m`. Shows `c₂ = ½c₁² ≠ 0` and
/// that the spherical residual at `k = 2` is `c₁²/(2(n+2)) ≠ 0`.
pub fn check_stein_fillable_violation(m: u32, even: bool) -> Result<CheckReport, ChernError> {
    require(m >= 2, || format!("need m >= 2, got {m}"))?;
    let n = if even { 2 * m } else { 2 * m - 1 };
    let tangent = nilsquare_product(m, n)?;
    let xi = tangent.as_contact_structure();
    let c1 = xi.c1();
    let c2 = xi.chern_class(2);
    let c1_sq = c1.pow(2);
    let half = BigRational::new(1.into(), 2.into());
    let mut report = CheckReport::new("stein-fillable-violation")
        .param("m", m)
        .param("n", n)
        .param("parity", if even { "even" } else { "odd" });
    report.witness("c(ξ) = c(T^{1,0}M)", xi.total().to_string());
    report.check_that("c_1 != 0", !c1.is_zero());
    report.check_that("c_2 = 1/2 c_1^2", c2 == c1_sq.scale(&half)?);
    report.check_that("c_2 != 0", !c2.is_zero());

    let residual = spherical_residual(xi, n, 2)?;
    let expected = c1_sq.scale(&BigRational::new(1.into(), (2 * (n + 2)).into()))?;
    report.exact_residual("c_2 - (n+1)/(2(n+2)) c_1^2", &residual);
    report.check_that("residual = c_1^2 / (2(n+2))", residual == expected);
    report.check_that("residual != 0", !residual.is_zero());
    Ok(report)
}
