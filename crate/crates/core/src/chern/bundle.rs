use std::sync::Arc;

use num_rational::BigRational;
use num_traits::One;

use crate::cohomology::{RingElement, RingPresentation};

use super::ChernError;

/// A complex vector bundle seen through its rank and total Chern class.
///
/// The same value serves for the CR bundle `T^{1,0}M` and for the underlying
/// contact structure `ξ`: their total Chern classes agree, so
/// [`BundleClass::as_contact_structure`] hands back the very same value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleClass {
    rank: u32,
    total: RingElement,
}

impl BundleClass {
    /// Requires constant term 1 and nothing above degree `2 * rank`.
    pub fn new(rank: u32, total: RingElement) -> Result<Self, ChernError> {
        if !total.constant_term().is_one() {
            return Err(ChernError::ConstantTermNotOne);
        }
        if let Some(&degree) = total.degrees().iter().find(|&&d| d > 2 * rank) {
            return Err(ChernError::AboveRank { degree, rank });
        }
        Ok(BundleClass { rank, total })
    }

    pub fn trivial(ring: &Arc<RingPresentation>, rank: u32) -> Self {
        BundleClass {
            rank,
            total: RingElement::one(ring),
        }
    }

    /// Line bundle with first Chern class `c1`.
    pub fn line(c1: &RingElement) -> Result<Self, ChernError> {
        if !c1.is_homogeneous_of_degree(2) {
            return Err(crate::cohomology::CohomologyError::NotHomogeneous.into());
        }
        Self::new(1, RingElement::one(c1.ring()).add(c1)?)
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn total(&self) -> &RingElement {
        &self.total
    }

    pub fn ring(&self) -> &Arc<RingPresentation> {
        self.total.ring()
    }

    /// `c_k`, the degree-`2k` component of the total class.
    pub fn chern_class(&self, k: u32) -> RingElement {
        self.total.homogeneous_component(2 * k)
    }

    pub fn c1(&self) -> RingElement {
        self.chern_class(1)
    }

    /// The contact structure underlying a CR structure with this bundle.
    pub fn as_contact_structure(&self) -> &BundleClass {
        self
    }

    /// Direct sum with a trivial bundle of the given rank.
    pub fn with_trivial_summand(&self, rank: u32) -> Self {
        BundleClass {
            rank: self.rank + rank,
            total: self.total.clone(),
        }
    }
}

/// Whitney sum: ranks add, total classes multiply.
pub fn bundle_product(a: &BundleClass, b: &BundleClass) -> Result<BundleClass, ChernError> {
    let total = a.total.mul(&b.total)?;
    BundleClass::new(a.rank + b.rank, total)
}

/// `T^{1,0} CP^n`: rank `n`, total class `(1 + h)^{n+1}`.
pub fn chern_projective_space(
    n: u32,
    ring: &Arc<RingPresentation>,
    hyperplane: &str,
) -> Result<BundleClass, ChernError> {
    let h = generator(ring, hyperplane)?;
    BundleClass::new(n, RingElement::one(ring).add(&h)?.pow(n + 1))
}

/// `T^{1,0} Σ_g`: rank 1, total class `1 + (2 - 2g) σ` with `σ` the
/// orientation class (`σ² = 0`).
pub fn chern_surface(genus: u32, ring: &Arc<RingPresentation>, sigma: &str) -> Result<BundleClass, ChernError> {
    let s = generator(ring, sigma)?;
    let idx = ring.generator_index(sigma).expect("checked above");
    let g = &ring.generators()[idx];
    if g.degree != 2 || g.truncation != 2 {
        return Err(ChernError::InvalidParameter(format!(
            "surface class `{sigma}` must have degree 2 and square zero"
        )));
    }
    BundleClass::line(&s.scale_int(2 - 2 * i64::from(genus)))
}

/// Tangent bundle of a compact quotient of a complex space form of dimension
/// `dim` whose first Chern class is `c1`: the curvature is a constant
/// multiple of the identity, so `c = (1 + c1/(dim+1))^{dim+1}` in real
/// cohomology. For a fake projective plane this is `1 + c1 + c1²/3`.
pub fn chern_space_form_quotient(dim: u32, c1: &RingElement) -> Result<BundleClass, ChernError> {
    if !c1.is_homogeneous_of_degree(2) {
        return Err(crate::cohomology::CohomologyError::NotHomogeneous.into());
    }
    let ring = c1.ring();
    let root = c1.scale(&BigRational::new(1.into(), (dim + 1).into()))?;
    BundleClass::new(dim, RingElement::one(ring).add(&root)?.pow(dim + 1))
}

fn generator(ring: &Arc<RingPresentation>, name: &str) -> Result<RingElement, ChernError> {
    RingElement::generator(ring, name).map_err(|_| ChernError::MissingGenerator(name.to_string()))
}
