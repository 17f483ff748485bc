use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};

use crate::cohomology::{
    image_membership_in_degree, CoefficientDomain, CohomologyError, Membership, RingElement,
    RingPresentation,
};
use crate::report::CheckReport;

use super::{BundleClass, ChernError};

/// A circle bundle `p: S → Y` given by its Euler class `e = c₁(L)`.
///
/// A class on `S` pulled back from `Y` is represented by the base class; by
/// exactness of the Gysin sequence it vanishes on `S` iff it lies in
/// `e ∪ H^{*-2}(Y)`.
#[derive(Clone, Debug)]
pub struct CircleBundleSetup {
    euler: RingElement,
    base_tangent: BundleClass,
}

impl CircleBundleSetup {
    pub fn new(euler: RingElement, base_tangent: BundleClass) -> Result<Self, ChernError> {
        if !euler.is_homogeneous_of_degree(2) {
            return Err(CohomologyError::NotHomogeneous.into());
        }
        if !euler.same_ring(base_tangent.total()) {
            return Err(CohomologyError::RingMismatch.into());
        }
        Ok(CircleBundleSetup { euler, base_tangent })
    }

    pub fn base(&self) -> &Arc<RingPresentation> {
        self.euler.ring()
    }

    pub fn euler(&self) -> &RingElement {
        &self.euler
    }

    /// `T^{1,0}Y`; its pullback is `T^{1,0}S`.
    pub fn base_tangent(&self) -> &BundleClass {
        &self.base_tangent
    }

    /// Membership of `beta` in the kernel of `p*`.
    pub fn pullback_membership(&self, beta: &RingElement) -> Result<Membership, ChernError> {
        let degree = beta.homogeneous_degree()?.unwrap_or(2);
        Ok(image_membership_in_degree(&self.euler, beta, degree)?)
    }

    /// `p* beta ≠ 0`.
    pub fn pullback_nonzero(&self, beta: &RingElement) -> Result<bool, ChernError> {
        Ok(!self.pullback_membership(beta)?.member)
    }
}

/// `C(n+2, k) / (n+2)^k`.
pub fn spherical_coefficient(n: u32, k: u32) -> BigRational {
    let m = BigInt::from(n + 2);
    let binom = (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n + 2 - i) / BigInt::from(i + 1));
    BigRational::new(binom, Pow::pow(&m, k))
}

/// `c_k − C(n+2,k)/(n+2)^k · c₁^k`.
pub fn spherical_residual(c: &BundleClass, n: u32, k: u32) -> Result<RingElement, ChernError> {
    if c.ring().coefficients() != &CoefficientDomain::Rationals {
        return Err(ChernError::RationalCoefficientsRequired);
    }
    if k == 0 || k > n + 1 {
        return Err(ChernError::InvalidParameter(format!("need 1 <= k <= n+1, got k={k}, n={n}")));
    }
    let predicted = c.c1().pow(k).scale(&spherical_coefficient(n, k))?;
    Ok(c.chern_class(k).sub(&predicted)?)
}

/// Checks `c_k(T^{1,0}S) = C(n+2,k)/(n+2)^k c₁(T^{1,0}S)^k` in `H^{2k}(S; ℚ)`
/// for `k = 1..=n+1`, i.e. that every residual dies under `p*`.
///
/// At `k = n+1` both sides may vanish on `S` for degree reasons; the check is
/// still recorded.
pub fn verify_spherical_on_circle_bundle(
    setup: &CircleBundleSetup,
    n: u32,
    name: &str,
) -> Result<CheckReport, ChernError> {
    let mut report = CheckReport::new("spherical-constraint")
        .param("model", name)
        .param("n", n);
    report.witness("euler class", setup.euler().to_string());
    report.witness("total chern class of base", setup.base_tangent().total().to_string());
    for k in 1..=n + 1 {
        let residual = spherical_residual(setup.base_tangent(), n, k)?;
        let membership = image_membership_in_degree(setup.euler(), &residual, 2 * k)?;
        report.exact_residual(format!("c_{k} - C(n+2,{k})/(n+2)^{k} c_1^{k} on base"), &residual);
        report.witness(format!("k={k} membership"), membership.to_json());
        report.check_that(
            format!("residual at k={k} lies in e ∪ H^{}", 2 * k - 2),
            membership.member,
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chern::{bundle_product, chern_projective_space, chern_surface};
    use crate::cohomology::{parse_element, Generator};

    fn ring(gens: &[(&str, u32)]) -> Arc<RingPresentation> {
        Arc::new(
            RingPresentation::new(
                gens.iter().map(|(n, t)| Generator::new(*n, 2, *t)).collect(),
                CoefficientDomain::Rationals,
            )
            .unwrap(),
        )
    }

    #[test]
    fn coefficient_values() {
        assert_eq!(spherical_coefficient(2, 1), BigRational::one());
        // (n+1)/(2(n+2)) at k=2
        for n in 1..8 {
            assert_eq!(spherical_coefficient(n, 2), BigRational::new((n + 1).into(), (2 * (n + 2)).into()));
        }
    }

    #[test]
    fn projective_residual_in_degree_four() {
        for n in 2..=6u32 {
            let r = ring(&[("τ", n + 1)]);
            let c = chern_projective_space(n, &r, "τ").unwrap();
            let residual = spherical_residual(&c, n, 2).unwrap();
            let tau2 = RingElement::generator(&r, "τ").unwrap().pow(2);
            let expected = tau2.scale(&BigRational::new(-BigInt::from(n + 1), BigInt::from(2 * (n + 2)))).unwrap();
            assert_eq!(residual, expected);
            // integral form: 2(n+2) times the residual is -(n+1) τ²
            assert_eq!(residual.scale_int(2 * i64::from(n + 2)), tau2.scale_int(-i64::from(n + 1)));
        }
    }

    #[test]
    fn first_residual_vanishes() {
        let r = ring(&[("s", 2), ("h", 4)]);
        let c = bundle_product(&chern_surface(2, &r, "s").unwrap(), &chern_projective_space(3, &r, "h").unwrap()).unwrap();
        assert!(spherical_residual(&c, 4, 1).unwrap().is_zero());
        assert!(spherical_residual(&c, 4, 0).is_err());
        assert!(spherical_residual(&c, 4, 6).is_err());
    }

    #[test]
    fn integer_ring_is_rejected() {
        let r = Arc::new(
            RingPresentation::new(vec![Generator::new("t", 2, 3)], CoefficientDomain::Integers).unwrap(),
        );
        let c = chern_projective_space(2, &r, "t").unwrap();
        assert!(matches!(spherical_residual(&c, 2, 2), Err(ChernError::RationalCoefficientsRequired)));
    }

    #[test]
    fn surface_times_line_setup() {
        let r = ring(&[("s", 2), ("h", 2)]);
        let c = bundle_product(&chern_surface(2, &r, "s").unwrap(), &chern_projective_space(1, &r, "h").unwrap()).unwrap();
        assert_eq!(spherical_residual(&c, 2, 2).unwrap(), parse_element("-s*h", &r).unwrap());
        let e = parse_element("-2*s - 2*h", &r).unwrap();
        let setup = CircleBundleSetup::new(e.clone(), c.clone()).unwrap();
        assert!(setup.pullback_nonzero(&c.c1()).unwrap());
        assert!(!setup.pullback_nonzero(&e).unwrap());
        let report = verify_spherical_on_circle_bundle(&setup, 2, "surface x CP^1").unwrap();
        assert!(report.passed(), "{report:#?}");
    }

    #[test]
    fn setup_rejects_bad_euler_class() {
        let r = ring(&[("t", 3)]);
        let c = chern_projective_space(2, &r, "t").unwrap();
        let bad = parse_element("t^2", &r).unwrap();
        assert!(CircleBundleSetup::new(bad, c).is_err());
    }
}
