//! Tanaka-Webster tensors of a circle bundle read off its Kähler base.
use num_rational::BigRational;

use crchern::kahler::{FdSteps, KahlerProductPatch, SasakiCorrespondence, SpaceFormFactor, C64};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let one = BigRational::from_integer(1.into());
    let base = KahlerProductPatch::new(vec![SpaceFormFactor::new(1, one.clone())?, SpaceFormFactor::new(1, -one)?])?;
    let sasaki = SasakiCorrespondence::new(base);
    println!("{}", serde_json::to_string_pretty(&sasaki.to_json())?);
    let z = [C64::new(0.1, -0.2), C64::new(0.05, 0.3)];
    let t = sasaki.tanaka_webster_at(&z, FdSteps::default())?;
    println!("Scal = {:.9}", t.scal);
    println!("max |R| = {:.9}, max |S| = {:.2e}", t.max_r(), t.max_s());
    Ok(())
}
