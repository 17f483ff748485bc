//! Generators and oracles shared by the property suite and the acceptance
//! run.
#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use crchern::cohomology::{
    smith_normal_form, solve_integral, CoefficientDomain, Generator, IntegerMatrix, RingElement, RingPresentation,
    Solution,
};

/// `K[a, b, c]/(a⁴, b², c³)` with `deg b = 4`, over ℤ, ℚ and ℤ/6.
pub fn rings() -> Vec<Arc<RingPresentation>> {
    let gens = || vec![Generator::new("a", 2, 4), Generator::new("b", 4, 2), Generator::new("c", 2, 3)];
    [CoefficientDomain::Integers, CoefficientDomain::Rationals, CoefficientDomain::IntegersMod(6)]
        .into_iter()
        .map(|k| Arc::new(RingPresentation::new(gens(), k).unwrap()))
        .collect()
}

pub type RawTerms = Vec<(Vec<u32>, i64, i64)>;

pub fn raw_terms() -> impl Strategy<Value = RawTerms> {
    // Exponents may exceed the truncations; construction must reduce them.
    prop::collection::vec((prop::collection::vec(0u32..5, 3), -9i64..=9, 1i64..=4), 0..6)
}

pub fn element(ring: &Arc<RingPresentation>, raw: &RawTerms) -> RingElement {
    let integral = ring.coefficients().is_integral();
    RingElement::from_terms(
        ring,
        raw.iter().map(|(e, p, q)| {
            let q = if integral { 1 } else { *q };
            (e.clone(), BigRational::new((*p).into(), q.into()))
        }),
    )
    .unwrap()
}

pub fn ring_axioms_hold(which: usize, x: &RawTerms, y: &RawTerms, z: &RawTerms) -> Result<(), TestCaseError> {
    let r = &rings()[which];
    let (a, b, c) = (element(r, x), element(r, y), element(r, z));
    prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
    prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
    prop_assert_eq!(
        a.mul(&b.add(&c).unwrap()).unwrap(),
        a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
    );
    prop_assert_eq!(a.mul(&RingElement::one(r)).unwrap(), a.clone());
    prop_assert!(a.sub(&a).unwrap().is_zero());
    let again = RingElement::from_terms(r, a.terms().iter().map(|(e, c)| (e.clone(), c.clone()))).unwrap();
    prop_assert_eq!(again, a);
    Ok(())
}

pub fn small_matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_dim, 1..=max_dim)
        .prop_flat_map(move |(m, n)| prop::collection::vec(prop::collection::vec(-bound..=bound, n), m))
}

pub fn snf_is_valid(rows: &[Vec<i64>]) -> Result<(), TestCaseError> {
    let a = IntegerMatrix::from_rows(rows);
    let snf = smith_normal_form(&a);
    prop_assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d.clone());
    prop_assert!(snf.u.determinant().abs().is_one());
    prop_assert!(snf.v.determinant().abs().is_one());
    prop_assert!(snf.d.is_diagonal());
    for i in 0..a.rows().min(a.cols()) {
        let x = &snf.d[(i, i)];
        prop_assert_eq!(i < snf.rank, !x.is_zero());
        prop_assert!(!x.is_negative());
    }
    for w in snf.invariant_factors().windows(2) {
        prop_assert!(w[1].is_multiple_of(&w[0]));
    }
    Ok(())
}

/// Searches `x ∈ [-50, 50]^cols` with `A x = y`.
pub fn brute_force(rows: &[Vec<i64>], y: &[i64]) -> Option<Vec<i64>> {
    let cols = rows[0].len();
    let mut x = vec![-50i64; cols];
    loop {
        if rows.iter().zip(y).all(|(r, yi)| r.iter().zip(&x).map(|(a, b)| a * b).sum::<i64>() == *yi) {
            return Some(x);
        }
        let mut i = 0;
        loop {
            if i == cols {
                return None;
            }
            x[i] += 1;
            if x[i] <= 50 {
                break;
            }
            x[i] = -50;
            i += 1;
        }
    }
}

/// Solvability read off the Smith form directly: `d_i | (U y)_i` below the
/// rank and `(U y)_i = 0` above it.
pub fn smith_verdict(a: &IntegerMatrix, y: &[BigInt]) -> bool {
    let snf = smith_normal_form(a);
    let w = snf.u.mul_vec(y);
    w.iter().enumerate().all(|(i, wi)| {
        if i < snf.rank {
            wi.is_multiple_of(&snf.d[(i, i)])
        } else {
            wi.is_zero()
        }
    })
}

/// Small integer systems; half of the right-hand sides are in the image.
pub fn system() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<i64>)> {
    small_matrix(3, 5).prop_flat_map(|rows| {
        let (m, n) = (rows.len(), rows[0].len());
        let image = prop::collection::vec(-3i64..=3, n).prop_map({
            let rows = rows.clone();
            move |x| rows.iter().map(|r| r.iter().zip(&x).map(|(a, b)| a * b).sum()).collect::<Vec<i64>>()
        });
        let anything = prop::collection::vec(-15i64..=15, m);
        (Just(rows), prop_oneof![image, anything])
    })
}

pub fn membership_agrees(rows: &[Vec<i64>], y: &[i64]) -> Result<(), TestCaseError> {
    let a = IntegerMatrix::from_rows(rows);
    let yb: Vec<BigInt> = y.iter().map(|&v| v.into()).collect();
    let solution = solve_integral(&a, &yb);
    prop_assert_eq!(solution.is_solvable(), smith_verdict(&a, &yb));
    if brute_force(rows, y).is_some() {
        prop_assert!(solution.is_solvable());
    }
    match solution {
        Solution::Solvable(x) => {
            prop_assert!(x.iter().all(|v| v.is_integer()));
            let xi: Vec<BigInt> = x.iter().map(|v| v.to_integer()).collect();
            prop_assert_eq!(a.mul_vec(&xi), yb);
        }
        Solution::Unsolvable(ob) => {
            let yq: Vec<BigRational> = yb.into_iter().map(BigRational::from_integer).collect();
            prop_assert!(ob.verify(&a, &yq));
        }
    }
    Ok(())
}
