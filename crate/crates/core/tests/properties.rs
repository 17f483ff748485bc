use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use crchern::chern::{bundle_product, spherical_residual, tractor_determinant_check, BundleClass};
use crchern::cohomology::{
    cokernel, image_membership, parse_element, CoefficientDomain, Generator, RingElement, RingPresentation,
};

mod common;
use common::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(which in 0usize..3, x in raw_terms(), y in raw_terms(), z in raw_terms()) {
        ring_axioms_hold(which, &x, &y, &z)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn products_of_homogeneous_parts_are_graded(which in 0usize..3, x in raw_terms(), y in raw_terms()) {
        let r = &rings()[which];
        let (a, b) = (element(r, &x), element(r, &y));
        for da in a.degrees() {
            for db in b.degrees() {
                let p = a.homogeneous_component(da).mul(&b.homogeneous_component(db)).unwrap();
                prop_assert!(p.is_zero() || p.is_homogeneous_of_degree(da + db));
            }
        }
    }

    #[test]
    fn display_parses_back(which in 0usize..3, x in raw_terms()) {
        let r = &rings()[which];
        let a = element(r, &x);
        prop_assert_eq!(parse_element(&a.to_string(), r).unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn smith_normal_form_is_valid(rows in small_matrix(6, 9)) {
        snf_is_valid(&rows)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn membership_matches_brute_force((rows, y) in system()) {
        membership_agrees(&rows, &y)?;
    }

    #[test]
    fn products_with_e_are_members(coeffs in prop::collection::vec(-5i64..=5, 4), p in -4i64..=4, q in -4i64..=4) {
        prop_assume!(p != 0 || q != 0);
        let r = &rings()[0];
        let e = element(r, &vec![(vec![1, 0, 0], p, 1), (vec![0, 0, 1], q, 1)]);
        let basis = r.degree_basis(4);
        let x = element(r, &basis.into_iter().zip(coeffs).map(|(m, c)| (m, c, 1)).collect());
        let beta = e.mul(&x).unwrap();
        prop_assume!(!beta.is_zero());
        let m = image_membership(&e, &beta).unwrap();
        prop_assert!(m.member);
        prop_assert_eq!(e.mul(m.preimage().unwrap()).unwrap(), beta);
    }
}

#[test]
fn projective_cokernel_order_is_d() {
    for n in 2..=6u32 {
        for d in 1..=10i64 {
            let r = Arc::new(
                RingPresentation::new(vec![Generator::new("t", 2, n + 1)], CoefficientDomain::Integers).unwrap(),
            );
            let e = RingElement::generator(&r, "t").unwrap().scale_int(-d);
            let c = cokernel(&e, 4).unwrap();
            assert_eq!(c.order(), Some(BigInt::from(d)), "n={n} d={d}");
        }
    }
}

fn line_bundles() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-3i64..=3, -3i64..=3), 1..=4)
}

fn bundle(ring: &Arc<RingPresentation>, lines: &[(i64, i64)]) -> BundleClass {
    let mut c = BundleClass::trivial(ring, 0);
    for &(p, q) in lines {
        let c1 = element(ring, &vec![(vec![1, 0, 0], p, 1), (vec![0, 0, 1], q, 1)]);
        c = bundle_product(&c, &BundleClass::line(&c1).unwrap()).unwrap();
    }
    c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn whitney_product_is_commutative_and_associative(x in line_bundles(), y in line_bundles(), z in line_bundles()) {
        let r = &rings()[1];
        let (a, b, c) = (bundle(r, &x), bundle(r, &y), bundle(r, &z));
        prop_assert_eq!(bundle_product(&a, &b).unwrap(), bundle_product(&b, &a).unwrap());
        prop_assert_eq!(
            bundle_product(&bundle_product(&a, &b).unwrap(), &c).unwrap(),
            bundle_product(&a, &bundle_product(&b, &c).unwrap()).unwrap()
        );
        prop_assert_eq!(bundle_product(&a, &b).unwrap().rank(), a.rank() + b.rank());
    }

    #[test]
    fn spherical_residual_vanishes_in_degree_two(x in line_bundles(), n in 1u32..=8) {
        let c = bundle(&rings()[1], &x);
        prop_assert!(spherical_residual(&c, n, 1).unwrap().is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn tractor_identity_does_not_depend_on_sample_values(n in 1u32..=3, seed in any::<u64>()) {
        let r = tractor_determinant_check(n, seed).unwrap();
        prop_assert!(r.passed(), "{:?}", r);
    }
}

#[test]
fn brute_force_finds_simple_witness() {
    assert_eq!(brute_force(&[vec![2, 3]], &[1]).map(|x| 2 * x[0] + 3 * x[1]), Some(1));
    assert_eq!(brute_force(&[vec![2, 4]], &[1]), None);
}
