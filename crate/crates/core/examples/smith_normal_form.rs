//! Smith normal form and the cokernel of a cup product map.
use std::sync::Arc;

use crchern::cohomology::{
    cokernel, smith_normal_form, CoefficientDomain, Generator, IntegerMatrix, RingElement, RingPresentation,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = IntegerMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let snf = smith_normal_form(&a);
    println!("A =\n{a}");
    println!("D = U A V =\n{}", snf.d);
    println!("invariant factors: {:?}", snf.invariant_factors().iter().map(|x| x.to_string()).collect::<Vec<_>>());

    // H^4 of the lens space S^5/Z_7 is the cokernel of cup with e = -7t.
    let ring = Arc::new(RingPresentation::new(vec![Generator::new("t", 2, 3)], CoefficientDomain::Integers)?);
    let e = RingElement::generator(&ring, "t")?.scale_int(-7);
    let c = cokernel(&e, 4)?;
    println!("coker(e: H^2 -> H^4) = {}", c.to_json());
    let t2 = RingElement::generator(&ring, "t")?.pow(2);
    println!("class of t^2: {}", c.class_of(&t2)?.to_json());
    Ok(())
}
