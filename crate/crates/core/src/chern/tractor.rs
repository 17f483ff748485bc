//! The determinant identity behind the spherical constraint.
//!
//! With vanishing Chern tensor the tractor curvature is
//! `Ω = (block lower triangular with zero diagonal blocks) + ω·I`, the `∗`
//! blocks being arbitrary. Then `det(I + sΩ) = (1 + sω)^{n+2}`, and reading
//! off the coefficient of `s^k` gives `c_k = C(n+2,k)/(n+2)^k c₁^k` with
//! `c₁ = (n+2)ω`.
//!
//! Entries live in a polynomial ring over ℚ whose indeterminates are `s`, `ω`,
//! the `∗` entries `x<i>_<j>` and, for the control, `ξ`. Every indeterminate
//! gets truncation `n+3`; no monomial of the determinant reaches exponent
//! `n+3`, so the truncated computation is an exact polynomial identity.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cohomology::{CoefficientDomain, Generator, RingElement, RingPresentation};
use crate::report::CheckReport;

use super::{spherical_coefficient, ChernError};

/// `I + sΩ` for the block form of the tractor curvature.
#[derive(Clone, Debug)]
pub struct TractorMatrix {
    pub n: u32,
    pub ring: Arc<RingPresentation>,
    pub entries: Vec<Vec<RingElement>>,
    pub s: RingElement,
    pub omega: RingElement,
    /// `x<i>_<j>` names of the free `∗` entries.
    pub stars: Vec<String>,
    /// Set when `ξ` sits in the middle diagonal block.
    pub xi: Option<RingElement>,
}

impl TractorMatrix {
    /// `with_xi` places a nonzero indeterminate `ξ` at the first diagonal
    /// entry of the middle block.
    pub fn new(n: u32, with_xi: bool) -> Result<Self, ChernError> {
        if n < 1 {
            return Err(ChernError::InvalidParameter("need n >= 1".into()));
        }
        let size = (n + 2) as usize;
        let last = size - 1;
        let mut positions = Vec::new();
        for i in 1..size {
            positions.push((i, 0));
        }
        for j in 1..last {
            positions.push((last, j));
        }
        let stars: Vec<String> = positions.iter().map(|(i, j)| format!("x{i}_{j}")).collect();
        let trunc = n + 3;
        let mut gens = vec![Generator::new("s", 2, trunc), Generator::new("ω", 2, trunc)];
        if with_xi {
            gens.push(Generator::new("ξ", 2, trunc));
        }
        gens.extend(stars.iter().map(|name| Generator::new(name.clone(), 2, trunc)));
        let ring = Arc::new(RingPresentation::new(gens, CoefficientDomain::Rationals)?);
        let g = |name: &str| RingElement::generator(&ring, name).expect("declared above");

        let s = g("s");
        let omega = g("ω");
        let xi = with_xi.then(|| g("ξ"));
        let mut curvature = vec![vec![RingElement::zero(&ring); size]; size];
        for (i, row) in curvature.iter_mut().enumerate() {
            row[i] = omega.clone();
        }
        if let Some(xi) = &xi {
            curvature[1][1] = curvature[1][1].add(xi)?;
        }
        for ((i, j), name) in positions.iter().zip(&stars) {
            curvature[*i][*j] = g(name);
        }
        let one = RingElement::one(&ring);
        let mut entries = Vec::with_capacity(size);
        for (i, row) in curvature.iter().enumerate() {
            let mut out = Vec::with_capacity(size);
            for (j, x) in row.iter().enumerate() {
                let mut v = s.mul(x)?;
                if i == j {
                    v = v.add(&one)?;
                }
                out.push(v);
            }
            entries.push(out);
        }
        Ok(TractorMatrix { n, ring, entries, s, omega, stars, xi })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// `(1 + sω)^{n+2}`.
    pub fn expected_determinant(&self) -> Result<RingElement, ChernError> {
        let base = RingElement::one(&self.ring).add(&self.s.mul(&self.omega)?)?;
        Ok(base.pow(self.n + 2))
    }
}

/// Determinant by Laplace expansion over row prefixes: `f[mask]` is the
/// minor on the first `|mask|` rows and the columns in `mask`.
pub fn tractor_determinant(m: &TractorMatrix) -> Result<RingElement, ChernError> {
    let size = m.size();
    let mut f = vec![RingElement::zero(&m.ring); 1 << size];
    f[0] = RingElement::one(&m.ring);
    for mask in 1usize..(1 << size) {
        let k = mask.count_ones() as usize - 1;
        let mut acc = RingElement::zero(&m.ring);
        for j in 0..size {
            if mask & (1 << j) == 0 || m.entries[k][j].is_zero() {
                continue;
            }
            let rest = &f[mask & !(1 << j)];
            if rest.is_zero() {
                continue;
            }
            let pos = (mask & ((1 << j) - 1)).count_ones() as usize;
            let term = m.entries[k][j].mul(rest)?;
            acc = if (k + pos).is_multiple_of(2) { acc.add(&term)? } else { acc.sub(&term)? };
        }
        f[mask] = acc;
    }
    Ok(f.pop().expect("nonempty"))
}

fn evaluate(x: &RingElement, values: &[BigRational]) -> BigRational {
    x.terms()
        .iter()
        .map(|(exps, c)| {
            exps.iter()
                .zip(values)
                .fold(c.clone(), |acc, (&e, v)| acc * num_traits::pow(v.clone(), e as usize))
        })
        .fold(BigRational::zero(), |a, b| a + b)
}

/// Exact determinant by Gaussian elimination over ℚ.
fn rational_determinant(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let size = a.len();
    let mut det = BigRational::one();
    for col in 0..size {
        let Some(p) = (col..size).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in col + 1..size {
            let factor = &a[r][col] / &pivot;
            if factor.is_zero() {
                continue;
            }
            for c in col..size {
                let delta = &factor * &a[col][c];
                a[r][c] -= delta;
            }
        }
    }
    det
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let p: i64 = rng.random_range(-20..=20);
    let q: i64 = rng.random_range(1..=9);
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Symbolic identity `det(I + sΩ) = (1 + sω)^{n+2}` plus a check at
/// `points` random rational specializations, each evaluated independently by
/// Gaussian elimination.
pub fn tractor_identity_report(n: u32, with_xi: bool, points: usize, seed: u64) -> Result<CheckReport, ChernError> {
    let m = TractorMatrix::new(n, with_xi)?;
    let det = tractor_determinant(&m)?;
    let expected = m.expected_determinant()?;
    let mut report = CheckReport::new("tractor-determinant")
        .param("n", n)
        .param("xi", with_xi);
    report.witness("star indeterminates", m.stars.len());
    let difference = det.sub(&expected)?;
    report.exact_residual("det(I + sΩ) - (1 + sω)^(n+2)", &difference);
    report.check_that("det(I + sΩ) = (1 + sω)^(n+2)", difference.is_zero());

    // c_k is the s^k coefficient; compare with C(n+2,k)/(n+2)^k c_1^k, c_1 = (n+2)ω.
    let s_index = m.ring.generator_index("s").expect("declared");
    let mut by_power: BTreeMap<u32, RingElement> = BTreeMap::new();
    for (exps, c) in det.terms() {
        let mut rest = exps.clone();
        let k = std::mem::take(&mut rest[s_index]);
        let term = RingElement::from_terms(&m.ring, [(rest, c.clone())])?;
        let slot = by_power.entry(k).or_insert_with(|| RingElement::zero(&m.ring));
        *slot = slot.add(&term)?;
    }
    let c1 = m.omega.scale_int(i64::from(n + 2));
    let mut coefficients_match = true;
    for k in 1..=n + 2 {
        let ck = by_power.remove(&k).unwrap_or_else(|| RingElement::zero(&m.ring));
        let predicted = c1.pow(k).scale(&spherical_coefficient(n, k))?;
        coefficients_match &= ck == predicted;
    }
    report.check_that("s^k coefficient = C(n+2,k)/(n+2)^k c_1^k for k = 1..n+2", coefficients_match);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens = m.ring.generators().len();
    let mut agree = 0;
    for _ in 0..points {
        let values: Vec<BigRational> = (0..gens).map(|_| random_rational(&mut rng)).collect();
        let numeric: Vec<Vec<BigRational>> = m
            .entries
            .iter()
            .map(|row| row.iter().map(|x| evaluate(x, &values)).collect())
            .collect();
        let lhs = rational_determinant(numeric);
        if lhs == evaluate(&expected, &values) {
            agree += 1;
        }
    }
    report.witness("random rational points agreeing", format!("{agree}/{points} (seed {seed})"));
    report.check_that("identity holds at random rational points", agree == points);
    Ok(report)
}

/// The identity with `Ξ = 0`, plus the control that inserting `ξ ≠ 0` in the
/// middle block breaks it.
pub fn tractor_determinant_check(n: u32, seed: u64) -> Result<CheckReport, ChernError> {
    let mut report = tractor_identity_report(n, false, 10, seed)?;
    let control = tractor_identity_report(n, true, 10, seed)?;
    report.check_that("control with Ξ != 0 violates the identity", !control.passed());
    report.exact_residual("control: det(I + sΩ) - (1 + sω)^(n+2)", control.residuals[0].value.as_str().unwrap_or(""));
    Ok(report.param("xi", false))
}
