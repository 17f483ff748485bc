//! The integral relation fails on lens spaces S^{2n+1}/Z_d with d not
//! dividing n+1.
use crchern::chern::check_integral_counterexample;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (n, d) in [(2, 5), (2, 7), (3, 5), (2, 3), (3, 2)] {
        let report = check_integral_counterexample(n, d)?;
        let verdict = report.witnesses.iter().find(|w| w.label == "verdict").map(|w| w.value.to_string());
        println!("n = {n}, d = {d}: {} {}", report.status.as_str(), verdict.unwrap_or_default());
    }
    println!("\n{}", check_integral_counterexample(2, 5)?.to_markdown());
    Ok(())
}
