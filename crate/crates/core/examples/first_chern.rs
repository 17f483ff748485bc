//! Nonvanishing of the pulled back first Chern class on circle bundles over
//! a genus two surface times projective space.
use crchern::chern::check_nonzero_first_chern;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 2..=5 {
        let report = check_nonzero_first_chern(n)?;
        println!("n = {n}: {}", report.status.as_str());
        for w in &report.witnesses {
            println!("    {}: {}", w.label, w.value);
        }
    }
    Ok(())
}
