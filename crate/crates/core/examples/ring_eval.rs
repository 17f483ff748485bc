//! Parse and reduce elements of a truncated polynomial ring.
use std::sync::Arc;

use crchern::cohomology::{parse_element, CoefficientDomain, Generator, RingPresentation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // H^even(CP^2 x CP^2) with coefficients mod 5.
    let ring = Arc::new(RingPresentation::new(
        vec![Generator::new("t", 2, 3), Generator::new("h", 2, 3)],
        CoefficientDomain::IntegersMod(5),
    )?);
    for text in ["(t+h)^2", "(1+t)^3*(1+h)^3", "-3*t^2*h"] {
        let x = parse_element(text, &ring)?;
        println!("{text:>18}  =  {x}");
        for d in x.degrees() {
            println!("{:>22} {d}: {}", "degree", x.homogeneous_component(d));
        }
    }
    match parse_element("2t", &ring) {
        Err(e) => println!("rejected `2t`: {e}"),
        Ok(x) => println!("unexpected: {x}"),
    }
    Ok(())
}
