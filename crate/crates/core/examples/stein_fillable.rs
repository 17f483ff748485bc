//! Chern classes with square-zero roots break the degree four relation.
use num_rational::BigRational;

use crchern::chern::{check_stein_fillable_violation, nilsquare_product, spherical_residual};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = nilsquare_product(3, 5)?;
    println!("c = {}", c.total());
    println!("c1^2 / 2 = {}", c.c1().pow(2).scale(&BigRational::new(1.into(), 2.into()))?);
    println!("c2       = {}", c.chern_class(2));
    println!("residual = {}", spherical_residual(&c, 5, 2)?);
    for (m, even) in [(2, false), (3, false), (2, true)] {
        let report = check_stein_fillable_violation(m, even)?;
        println!("m = {m}, even = {even}: {}", report.status.as_str());
    }
    Ok(())
}
