//! Base manifolds and line bundles of the example circle bundles.

use std::sync::Arc;

use num_rational::BigRational;

use crate::cohomology::{CoefficientDomain, Generator, RingElement, RingPresentation};

use super::{bundle_product, chern_projective_space, chern_space_form_quotient, chern_surface};
use super::{BundleClass, ChernError, CircleBundleSetup};

fn ring(gens: Vec<Generator>, coefficients: CoefficientDomain) -> Result<Arc<RingPresentation>, ChernError> {
    Ok(Arc::new(RingPresentation::new(gens, coefficients)?))
}

fn gen(r: &Arc<RingPresentation>, name: &str) -> RingElement {
    RingElement::generator(r, name).expect("generator declared by the model")
}

/// `Y = Σ₂ × CP^{n-1}` with `L = L₁ ⊠ L₂`, `L₁ = T^{1,0}Σ₂`, `L₂ = O(-2)`.
#[derive(Clone, Debug)]
pub struct SurfaceProduct {
    pub n: u32,
    pub c1_l1: RingElement,
    pub c1_l2: RingElement,
    pub setup: CircleBundleSetup,
}

/// Even rational cohomology `ℚ[s,h]/(s², hⁿ)`; `c₁(L₁) = -2s`, `c₁(L₂) = -2h`.
pub fn surface_product(n: u32) -> Result<SurfaceProduct, ChernError> {
    if n < 2 {
        return Err(ChernError::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    let r = ring(
        vec![Generator::new("s", 2, 2), Generator::new("h", 2, n)],
        CoefficientDomain::Rationals,
    )?;
    let tangent = bundle_product(&chern_surface(2, &r, "s")?, &chern_projective_space(n - 1, &r, "h")?)?;
    let c1_l1 = gen(&r, "s").scale_int(-2);
    let c1_l2 = gen(&r, "h").scale_int(-2);
    SurfaceProduct::with_line_bundles(n, tangent, c1_l1, c1_l2)
}

impl SurfaceProduct {
    /// Same base with arbitrary first Chern classes for `L₁` and `L₂`.
    pub fn with_line_bundles(
        n: u32,
        tangent: BundleClass,
        c1_l1: RingElement,
        c1_l2: RingElement,
    ) -> Result<Self, ChernError> {
        let e = c1_l1.add(&c1_l2)?;
        let setup = CircleBundleSetup::new(e, tangent)?;
        Ok(SurfaceProduct { n, c1_l1, c1_l2, setup })
    }

    /// Replaces `c₁(L₂)` by `n·h`, which makes `c₁(T^{1,0}Y)` equal to the
    /// Euler class. Used as a negative control.
    pub fn degenerate(&self) -> Result<Self, ChernError> {
        let r = self.setup.base().clone();
        let c1_l2 = gen(&r, "h").scale_int(i64::from(self.n));
        Self::with_line_bundles(self.n, self.setup.base_tangent().clone(), self.c1_l1.clone(), c1_l2)
    }
}

/// `CPⁿ` with `e = -dτ`; the total space is the lens space `S^{2n+1}/ℤ_d`.
pub fn projective_space(n: u32, d: u32, coefficients: CoefficientDomain) -> Result<CircleBundleSetup, ChernError> {
    if n < 1 || d < 1 {
        return Err(ChernError::InvalidParameter(format!("need n >= 1 and d >= 1, got n={n}, d={d}")));
    }
    let r = ring(vec![Generator::new("τ", 2, n + 1)], coefficients)?;
    let tangent = chern_projective_space(n, &r, "τ")?;
    let e = gen(&r, "τ").scale_int(-i64::from(d));
    CircleBundleSetup::new(e, tangent)
}

/// `Y = FPP × CP^{n-2}` with `L₁ = K_{FPP}`, `L₂ = O(-3)`.
#[derive(Clone, Debug)]
pub struct FppProduct {
    pub n: u32,
    pub c1_l1: RingElement,
    pub c1_l2: RingElement,
    pub setup: CircleBundleSetup,
}

/// Even real cohomology `ℚ[t,h]/(t³, h^{n-1})` with `t = c₁(K⁻¹_{FPP})`;
/// `e = t - 3h`, `c₁(T^{1,0}Y) = t + (n-1)h`.
///
/// Only the ring structure enters; the self-intersection number of `t` is not
/// encoded.
pub fn fpp_product(n: u32) -> Result<FppProduct, ChernError> {
    if n < 4 {
        return Err(ChernError::InvalidParameter(format!("need n >= 4, got {n}")));
    }
    let r = ring(
        vec![Generator::new("t", 2, 3), Generator::new("h", 2, n - 1)],
        CoefficientDomain::Rationals,
    )?;
    let fpp = chern_space_form_quotient(2, &gen(&r, "t"))?;
    let tangent = bundle_product(&fpp, &chern_projective_space(n - 2, &r, "h")?)?;
    let c1_l1 = gen(&r, "t");
    let c1_l2 = gen(&r, "h").scale_int(-3);
    let setup = CircleBundleSetup::new(c1_l1.add(&c1_l2)?, tangent)?;
    Ok(FppProduct { n, c1_l1, c1_l2, setup })
}

impl FppProduct {
    pub fn c1_tangent(&self) -> RingElement {
        self.setup.base_tangent().c1()
    }

    /// `(n+2)²/9`.
    pub fn residual_coefficient(&self) -> BigRational {
        let k = BigRational::from_integer((self.n + 2).into());
        &k * &k / BigRational::from_integer(9.into())
    }
}

/// `c = Π (1 + τ_j)` in `ℚ[τ₁..τ_m]/(τ_j²)`, padded with a trivial summand to
/// rank `n`. Each `τ_j` stands for `c₁` of one `M₀` factor.
pub fn nilsquare_product(m: u32, n: u32) -> Result<BundleClass, ChernError> {
    if m < 1 || n < m {
        return Err(ChernError::InvalidParameter(format!("need 1 <= m <= n, got m={m}, n={n}")));
    }
    let r = ring(
        (1..=m).map(|j| Generator::new(format!("t{j}"), 2, 2)).collect(),
        CoefficientDomain::Rationals,
    )?;
    let mut c = BundleClass::trivial(&r, 0);
    for j in 1..=m {
        c = bundle_product(&c, &BundleClass::line(&gen(&r, &format!("t{j}")))?)?;
    }
    Ok(c.with_trivial_summand(n - m))
}
