//! The tractor determinant identity and its control.
use crchern::chern::{tractor_determinant, tractor_determinant_check, TractorMatrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = TractorMatrix::new(1, false)?;
    for row in &m.entries {
        println!("{}", row.iter().map(|x| format!("{:>12}", x.to_string())).collect::<Vec<_>>().join(" "));
    }
    println!("det = {}", tractor_determinant(&m)?);
    let with_xi = TractorMatrix::new(1, true)?;
    println!("with xi: det = {}", tractor_determinant(&with_xi)?);
    for n in 1..=4 {
        println!("n = {n}: {}", tractor_determinant_check(n, 0)?.status.as_str());
    }
    Ok(())
}
