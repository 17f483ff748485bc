//! Image membership with certificates, over Z and Q.
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crchern::cohomology::{
    image_membership, solve_integral, solve_rational, CoefficientDomain, Generator, IntegerMatrix, RingElement,
    RingPresentation, Solution,
};

fn show(name: &str, s: &Solution) {
    match s {
        Solution::Solvable(x) => println!("{name}: x = {:?}", x.iter().map(|v| v.to_string()).collect::<Vec<_>>()),
        Solution::Unsolvable(ob) => println!("{name}: no solution, certificate {}", ob.to_json()),
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
    let y = [BigInt::from(1), BigInt::from(3)];
    show("over Z", &solve_integral(&a, &y));
    let yq: Vec<BigRational> = y.iter().cloned().map(BigRational::from_integer).collect();
    show("over Q", &solve_rational(&a, &yq));

    // Is s*h in the image of cup with e = -2s - 2h on Q[s,h]/(s^2, h^3)?
    let ring = Arc::new(RingPresentation::new(
        vec![Generator::new("s", 2, 2), Generator::new("h", 2, 3)],
        CoefficientDomain::Rationals,
    )?);
    let s = RingElement::generator(&ring, "s")?;
    let h = RingElement::generator(&ring, "h")?;
    let e = s.add(&h)?.scale_int(-2);
    for beta in [s.mul(&h)?, h.pow(2), s.mul(&h)?.add(&h.pow(2))?] {
        let m = image_membership(&e, &beta)?;
        println!("{beta}: {}", m.to_json());
    }
    Ok(())
}
