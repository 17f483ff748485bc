//! The Gysin-sequence queries: the map `∪ e : H^{k-2} → H^k`, membership in
//! its image and, over ℤ, its cokernel.
//!
//! Sign convention: `e` is used exactly as passed in. For the circle bundle of
//! a line bundle `L` callers pass `e = c₁(L)`; membership and cokernel answers
//! do not depend on replacing `e` by `-e`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::json;

use super::matrix::{bigint_json, smith_normal_form, IntegerMatrix, SmithNormalForm};
use super::ring::{Exponents, RingElement};
use super::solve::{common_denominator, solve_integral, solve_modular, solve_rational, Obstruction, Solution};
use super::{CoefficientDomain, CohomologyError};

/// Matrix of `x ↦ e·x` from degree `k-2` to degree `k` in the enumerated
/// monomial bases. `matrix = scale · (true matrix)`, with `scale` the least
/// common denominator of the coefficients of `e`.
#[derive(Clone, Debug)]
pub struct CupMatrix {
    pub matrix: IntegerMatrix,
    pub scale: BigInt,
    pub source_basis: Vec<Exponents>,
    pub target_basis: Vec<Exponents>,
    pub degree: u32,
}

fn require_degree_two(e: &RingElement) -> Result<(), CohomologyError> {
    if e.is_homogeneous_of_degree(2) {
        Ok(())
    } else {
        Err(CohomologyError::NotHomogeneous)
    }
}

pub fn cup_matrix(e: &RingElement, k: u32) -> Result<CupMatrix, CohomologyError> {
    require_degree_two(e)?;
    let ring = e.ring();
    let source_basis = if k >= 2 { ring.degree_basis(k - 2) } else { Vec::new() };
    let target_basis = ring.degree_basis(k);
    let scale = common_denominator(e.terms().values());
    let mut matrix = IntegerMatrix::zeros(target_basis.len(), source_basis.len());
    for (j, mono) in source_basis.iter().enumerate() {
        let x = RingElement::from_monomial(ring, mono.clone(), BigRational::one())?;
        let product = x.mul(e)?;
        for (i, target) in target_basis.iter().enumerate() {
            let c = product.coefficient(target) * BigRational::from_integer(scale.clone());
            debug_assert!(c.is_integer());
            matrix[(i, j)] = c.to_integer();
        }
    }
    Ok(CupMatrix {
        matrix,
        scale,
        source_basis,
        target_basis,
        degree: k,
    })
}

/// Coordinates of `beta` in the degree-`k` monomial basis.
pub fn coordinates(beta: &RingElement, basis: &[Exponents]) -> Vec<BigRational> {
    basis.iter().map(|m| beta.coefficient(m)).collect()
}

#[derive(Clone, Debug)]
pub enum MembershipCertificate {
    /// `beta = e · preimage`.
    Preimage(RingElement),
    /// The image of `∪ e` is annihilated by a functional that does not
    /// annihilate `beta`. The functional lives on the (scaled) cup matrix, or
    /// on `[A | m·I]` over ℤ/m.
    Obstruction(Obstruction),
}

#[derive(Clone, Debug)]
pub struct Membership {
    pub member: bool,
    pub degree: u32,
    pub cup: CupMatrix,
    pub certificate: MembershipCertificate,
}

impl Membership {
    pub fn preimage(&self) -> Option<&RingElement> {
        match &self.certificate {
            MembershipCertificate::Preimage(x) => Some(x),
            MembershipCertificate::Obstruction(_) => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let certificate = match &self.certificate {
            MembershipCertificate::Preimage(x) => json!({ "preimage": x.to_string() }),
            MembershipCertificate::Obstruction(ob) => json!({ "obstruction": ob.to_json() }),
        };
        json!({
            "member": self.member,
            "degree": self.degree,
            "cup_matrix": self.cup.matrix.to_json(),
            "scale": bigint_json(&self.cup.scale),
            "certificate": certificate,
        })
    }
}

/// Decide whether the homogeneous class `beta` lies in `e ∪ H^{k-2}`, where
/// `k = deg beta`. A zero `beta` is tested in degree 2; use
/// [`image_membership_in_degree`] to choose the degree explicitly.
pub fn image_membership(e: &RingElement, beta: &RingElement) -> Result<Membership, CohomologyError> {
    let degree = beta.homogeneous_degree()?.unwrap_or(2);
    image_membership_in_degree(e, beta, degree)
}

pub fn image_membership_in_degree(
    e: &RingElement,
    beta: &RingElement,
    degree: u32,
) -> Result<Membership, CohomologyError> {
    if !e.same_ring(beta) {
        return Err(CohomologyError::RingMismatch);
    }
    if !beta.is_homogeneous_of_degree(degree) {
        return Err(CohomologyError::NotHomogeneous);
    }
    let cup = cup_matrix(e, degree)?;
    let ring = e.ring();
    let y = coordinates(beta, &cup.target_basis);
    let solution = match ring.coefficients() {
        CoefficientDomain::Rationals => {
            let scale = BigRational::from_integer(cup.scale.clone());
            let rhs: Vec<BigRational> = y.iter().map(|v| v * &scale).collect();
            solve_rational(&cup.matrix, &rhs)
        }
        CoefficientDomain::Integers => {
            let rhs: Vec<BigInt> = y.iter().map(|v| v.to_integer()).collect();
            solve_integral(&cup.matrix, &rhs)
        }
        CoefficientDomain::IntegersMod(m) => {
            let rhs: Vec<BigInt> = y.iter().map(|v| v.to_integer()).collect();
            solve_modular(&cup.matrix, &rhs, *m)
        }
    };
    let certificate = match solution {
        Solution::Solvable(x) => {
            let preimage = RingElement::from_terms(ring, cup.source_basis.iter().cloned().zip(x))?;
            debug_assert_eq!(&preimage.mul(e)?, beta);
            MembershipCertificate::Preimage(preimage)
        }
        Solution::Unsolvable(ob) => MembershipCertificate::Obstruction(ob),
    };
    Ok(Membership {
        member: matches!(certificate, MembershipCertificate::Preimage(_)),
        degree,
        cup,
        certificate,
    })
}

/// Cokernel of `∪ e` into degree `k` over ℤ, in Smith coordinates.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub degree: u32,
    /// Invariant factors greater than one.
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
    pub basis: Vec<Exponents>,
    /// Class of each degree-`k` basis monomial.
    pub generator_classes: Vec<CokernelClass>,
    snf: SmithNormalForm,
}

/// An element of `⊕ ℤ/dᵢ ⊕ ℤ^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelClass {
    /// `(residue, modulus)` pairs, residues in `[0, modulus)`.
    pub torsion: Vec<(BigInt, BigInt)>,
    pub free: Vec<BigInt>,
}

impl CokernelClass {
    pub fn is_zero(&self) -> bool {
        self.torsion.iter().all(|(r, _)| r.is_zero()) && self.free.iter().all(Zero::is_zero)
    }

    /// Additive order; `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(self.torsion.iter().fold(BigInt::one(), |acc, (r, m)| {
            acc.lcm(&(m / r.gcd(m)))
        }))
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "torsion": self.torsion.iter().map(|(r, m)| format!("{r} mod {m}")).collect::<Vec<_>>(),
            "free": self.free.iter().map(bigint_json).collect::<Vec<_>>(),
        })
    }
}

impl Cokernel {
    /// Group order; `None` when the cokernel has a free part.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            None
        } else {
            Some(self.invariant_factors.iter().product())
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    pub fn class_of(&self, beta: &RingElement) -> Result<CokernelClass, CohomologyError> {
        if !beta.is_homogeneous_of_degree(self.degree) {
            return Err(CohomologyError::NotHomogeneous);
        }
        let y: Vec<BigInt> = self
            .basis
            .iter()
            .map(|m| {
                let c = beta.coefficient(m);
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(CohomologyError::NonIntegerCoefficients)
                }
            })
            .collect::<Result<_, _>>()?;
        Ok(self.class_of_vector(&y))
    }

    fn class_of_vector(&self, y: &[BigInt]) -> CokernelClass {
        let w = self.snf.u.mul_vec(y);
        let mut torsion = Vec::new();
        let mut free = Vec::new();
        for (i, wi) in w.into_iter().enumerate() {
            if i < self.snf.rank {
                let d = &self.snf.d[(i, i)];
                if !d.is_one() {
                    torsion.push((wi.mod_floor(d), d.clone()));
                }
            } else {
                free.push(wi);
            }
        }
        CokernelClass { torsion, free }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "degree": self.degree,
            "invariant_factors": self.invariant_factors.iter().map(bigint_json).collect::<Vec<_>>(),
            "free_rank": self.free_rank,
            "generator_classes": self.generator_classes.iter().map(CokernelClass::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Cokernel of `∪ e : H^{k-2}(ℤ) → H^k(ℤ)`. Requires integer coefficients.
pub fn cokernel(e: &RingElement, k: u32) -> Result<Cokernel, CohomologyError> {
    if e.ring().coefficients() != &CoefficientDomain::Integers {
        return Err(CohomologyError::NonIntegerCoefficients);
    }
    let cup = cup_matrix(e, k)?;
    let snf = smith_normal_form(&cup.matrix);
    let invariant_factors = snf
        .invariant_factors()
        .into_iter()
        .filter(|d| !d.is_one())
        .collect();
    let free_rank = cup.target_basis.len() - snf.rank;
    let mut out = Cokernel {
        degree: k,
        invariant_factors,
        free_rank,
        basis: cup.target_basis.clone(),
        generator_classes: Vec::new(),
        snf,
    };
    let n = out.basis.len();
    out.generator_classes = (0..n)
        .map(|j| {
            let unit: Vec<BigInt> = (0..n).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect();
            out.class_of_vector(&unit)
        })
        .collect();
    Ok(out)
}
