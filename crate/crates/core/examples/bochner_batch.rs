//! Bochner flatness of products of space forms with opposite curvature.
use num_rational::BigRational;

use crchern::kahler::BochnerBatch;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let one = BigRational::from_integer(1.into());
    let flat = BochnerBatch::new(&[(1, one.clone()), (2, -one.clone())], 5, 3)?;
    let outcome = flat.run()?;
    print!("{}", outcome.report.to_markdown());
    println!("convergence ratios: {:?}", outcome.convergence);

    let mut control = BochnerBatch::new(&[(1, one.clone()), (1, one)], 5, 3)?;
    control.expect_flat = false;
    let report = control.run()?.report;
    let s = report.residuals.iter().find(|r| r.label == "max |S|").map(|r| r.value.to_string());
    println!("control {}: max |S| = {}", report.status.as_str(), s.unwrap_or_default());
    Ok(())
}
