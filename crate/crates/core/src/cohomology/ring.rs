use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{CoefficientDomain, CohomologyError};

/// Exponent vector of a monomial, one entry per generator in presentation order.
pub type Exponents = Vec<u32>;

/// A polynomial generator `name` of even cohomological `degree` with
/// `name^truncation = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub truncation: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32, truncation: u32) -> Self {
        Generator {
            name: name.into(),
            degree,
            truncation,
        }
    }
}

/// Graded tensor product of truncated polynomial rings `K[x]/(x^k)` over one
/// coefficient domain.
///
/// Only even degrees occur, so the ring is commutative. Presentations compare
/// by value; elements of equal presentations may be mixed freely.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PresentationRepr")]
pub struct RingPresentation {
    coefficients: CoefficientDomain,
    generators: Vec<Generator>,
}

#[derive(Deserialize)]
struct PresentationRepr {
    coefficients: CoefficientDomain,
    generators: Vec<Generator>,
}

impl TryFrom<PresentationRepr> for RingPresentation {
    type Error = CohomologyError;

    fn try_from(r: PresentationRepr) -> Result<Self, Self::Error> {
        RingPresentation::new(r.generators, r.coefficients)
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if is_ident_start(c) => chars.all(is_ident_continue),
        _ => false,
    }
}

pub(crate) fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

pub(crate) fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\'' || ('\u{2080}'..='\u{2089}').contains(&c)
}

impl RingPresentation {
    /// Validates the generator list and builds the presentation.
    pub fn new(
        generators: Vec<Generator>,
        coefficients: CoefficientDomain,
    ) -> Result<Self, CohomologyError> {
        for (i, g) in generators.iter().enumerate() {
            if !is_identifier(&g.name) {
                return Err(CohomologyError::InvalidName(g.name.clone()));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(CohomologyError::DuplicateGenerator(g.name.clone()));
            }
            if g.degree == 0 || g.degree % 2 != 0 {
                return Err(CohomologyError::OddDegree {
                    name: g.name.clone(),
                    degree: g.degree,
                });
            }
            if g.truncation == 0 {
                return Err(CohomologyError::ZeroTruncation(g.name.clone()));
            }
        }
        Ok(RingPresentation {
            coefficients,
            generators,
        })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn coefficients(&self) -> &CoefficientDomain {
        &self.coefficients
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn monomial_degree(&self, exps: &[u32]) -> u32 {
        exps.iter()
            .zip(&self.generators)
            .map(|(e, g)| e * g.degree)
            .sum()
    }

    /// Largest degree carrying a nonzero monomial.
    pub fn top_degree(&self) -> u32 {
        self.generators
            .iter()
            .map(|g| (g.truncation - 1) * g.degree)
            .sum()
    }

    /// All reduced monomials of degree `k`, in descending lexicographic order
    /// of exponent vectors (so `t^2, t*h, h^2` for generators `t, h`).
    pub fn degree_basis(&self, k: u32) -> Vec<Exponents> {
        let mut out = Vec::new();
        let mut current = vec![0; self.generators.len()];
        self.enumerate(0, k, &mut current, &mut out);
        out
    }

    fn enumerate(&self, idx: usize, remaining: u32, current: &mut Exponents, out: &mut Vec<Exponents>) {
        if idx == self.generators.len() {
            if remaining == 0 {
                out.push(current.clone());
            }
            return;
        }
        let g = &self.generators[idx];
        let max = (g.truncation - 1).min(remaining / g.degree);
        for e in (0..=max).rev() {
            current[idx] = e;
            self.enumerate(idx + 1, remaining - e * g.degree, current, out);
        }
        current[idx] = 0;
    }

    fn is_reduced(&self, exps: &[u32]) -> bool {
        exps.iter().zip(&self.generators).all(|(e, g)| *e < g.truncation)
    }

    /// Total order used for display: by degree, then descending lex.
    pub fn display_order(&self, a: &[u32], b: &[u32]) -> Ordering {
        self.monomial_degree(a)
            .cmp(&self.monomial_degree(b))
            .then_with(|| b.cmp(a))
    }

    pub fn format_monomial(&self, exps: &[u32]) -> String {
        let parts: Vec<String> = exps
            .iter()
            .zip(&self.generators)
            .filter(|(e, _)| **e > 0)
            .map(|(e, g)| {
                if *e == 1 {
                    g.name.clone()
                } else {
                    format!("{}^{}", g.name, e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Element of a [`RingPresentation`], kept in reduced canonical form: every
/// stored monomial is below the truncations and every stored coefficient is
/// nonzero and canonical for the coefficient domain.
#[derive(Clone, Debug)]
pub struct RingElement {
    ring: Arc<RingPresentation>,
    terms: BTreeMap<Exponents, BigRational>,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.terms == other.terms
    }
}

impl Eq for RingElement {}

impl RingElement {
    pub fn zero(ring: &Arc<RingPresentation>) -> Self {
        RingElement {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<RingPresentation>) -> Self {
        Self::from_monomial(ring, vec![0; ring.generators.len()], BigRational::one())
            .expect("1 is representable in every domain")
    }

    pub fn scalar(ring: &Arc<RingPresentation>, value: BigRational) -> Result<Self, CohomologyError> {
        Self::from_monomial(ring, vec![0; ring.generators.len()], value)
    }

    pub fn integer(ring: &Arc<RingPresentation>, value: i64) -> Self {
        Self::scalar(ring, BigRational::from_integer(value.into()))
            .expect("integers are representable in every domain")
    }

    pub fn generator(ring: &Arc<RingPresentation>, name: &str) -> Result<Self, CohomologyError> {
        let idx = ring
            .generator_index(name)
            .ok_or_else(|| CohomologyError::UnknownGenerator(name.to_string()))?;
        let mut exps = vec![0; ring.generators.len()];
        exps[idx] = 1;
        Self::from_monomial(ring, exps, BigRational::one())
    }

    /// `coeff * monomial`, reduced (a monomial past a truncation gives zero).
    pub fn from_monomial(
        ring: &Arc<RingPresentation>,
        exps: Exponents,
        coeff: BigRational,
    ) -> Result<Self, CohomologyError> {
        assert_eq!(exps.len(), ring.generators.len(), "exponent vector length");
        let coeff = ring.coefficients.normalize(&coeff)?;
        let mut terms = BTreeMap::new();
        if ring.is_reduced(&exps) && !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        Ok(RingElement {
            ring: ring.clone(),
            terms,
        })
    }

    /// Build from arbitrary terms; each coefficient is normalized and
    /// monomials past a truncation are dropped.
    pub fn from_terms(
        ring: &Arc<RingPresentation>,
        terms: impl IntoIterator<Item = (Exponents, BigRational)>,
    ) -> Result<Self, CohomologyError> {
        let mut acc: BTreeMap<Exponents, BigRational> = BTreeMap::new();
        for (exps, c) in terms {
            assert_eq!(exps.len(), ring.generators.len(), "exponent vector length");
            if ring.is_reduced(&exps) {
                *acc.entry(exps).or_insert_with(BigRational::zero) += c;
            }
        }
        let mut out = BTreeMap::new();
        for (exps, c) in acc {
            let c = ring.coefficients.normalize(&c)?;
            if !c.is_zero() {
                out.insert(exps, c);
            }
        }
        Ok(RingElement {
            ring: ring.clone(),
            terms: out,
        })
    }

    pub fn ring(&self) -> &Arc<RingPresentation> {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&vec![0; self.ring.generators.len()])
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    fn check_ring(&self, other: &Self) -> Result<(), CohomologyError> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(CohomologyError::RingMismatch)
        }
    }

    // Coefficients of both operands are already canonical, so the only
    // normalization needed is the domain reduction of sums and products,
    // which never fails.
    fn rebuild(&self, terms: impl IntoIterator<Item = (Exponents, BigRational)>) -> Self {
        Self::from_terms(&self.ring, terms).expect("closed under ring operations")
    }

    pub fn add(&self, other: &Self) -> Result<Self, CohomologyError> {
        self.check_ring(other)?;
        Ok(self.rebuild(
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(e, c)| (e.clone(), c.clone())),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CohomologyError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.rebuild(self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, CohomologyError> {
        self.check_ring(other)?;
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.push((exps, ca * cb));
            }
        }
        Ok(self.rebuild(out))
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut result = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = exponent;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        result
    }

    /// Multiply by a scalar; fails if the scalar has no image in the domain.
    pub fn scale(&self, factor: &BigRational) -> Result<Self, CohomologyError> {
        let factor = self.ring.coefficients.normalize(factor)?;
        Ok(self.rebuild(self.terms.iter().map(|(e, c)| (e.clone(), c * &factor))))
    }

    pub fn scale_int(&self, factor: i64) -> Self {
        let f = BigRational::from_integer(BigInt::from(factor));
        self.rebuild(self.terms.iter().map(|(e, c)| (e.clone(), c * &f)))
    }

    pub fn homogeneous_component(&self, degree: u32) -> Self {
        RingElement {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| self.ring.monomial_degree(e) == degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Degree of a homogeneous element. Zero is homogeneous of every degree
    /// and yields `None`.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>, CohomologyError> {
        let mut degrees = self.terms.keys().map(|e| self.ring.monomial_degree(e));
        match degrees.next() {
            None => Ok(None),
            Some(d) => {
                if degrees.all(|x| x == d) {
                    Ok(Some(d))
                } else {
                    Err(CohomologyError::NotHomogeneous)
                }
            }
        }
    }

    pub fn is_homogeneous_of_degree(&self, degree: u32) -> bool {
        self.terms
            .keys()
            .all(|e| self.ring.monomial_degree(e) == degree)
    }

    /// Degrees with a nonzero component, ascending.
    pub fn degrees(&self) -> Vec<u32> {
        let mut ds: Vec<u32> = self
            .terms
            .keys()
            .map(|e| self.ring.monomial_degree(e))
            .collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    /// Terms in display order (by degree, then descending lex).
    pub fn sorted_terms(&self) -> Vec<(&Exponents, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| self.ring.display_order(a.0, b.0));
        v
    }
}

fn write_coefficient_and_monomial(
    f: &mut fmt::Formatter<'_>,
    coeff: &BigRational,
    monomial: &str,
    first: bool,
) -> fmt::Result {
    let negative = coeff.is_negative();
    let abs = coeff.abs();
    if first {
        if negative {
            f.write_str("-")?;
        }
    } else if negative {
        f.write_str(" - ")?;
    } else {
        f.write_str(" + ")?;
    }
    if monomial == "1" {
        write!(f, "{abs}")
    } else if abs.is_one() {
        f.write_str(monomial)
    } else {
        write!(f, "{abs}*{monomial}")
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (exps, c)) in self.sorted_terms().into_iter().enumerate() {
            write_coefficient_and_monomial(f, c, &self.ring.format_monomial(exps), i == 0)?;
        }
        Ok(())
    }
}
