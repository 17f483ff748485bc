//! Calibrating the Kähler potential of a complex space form.
use crchern::kahler::{calibrate_space_form, measure_hsc, Potential};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let flat = Potential { dim: 1, a: 1.0, b: 1.0, c: 1.0 };
    println!("a = b = 1, c = 1: measured hsc {:.12}", measure_hsc(&flat));
    for (dim, hsc) in [(1, 1.0), (2, -1.0), (3, 0.5)] {
        let cal = calibrate_space_form(dim, hsc)?;
        println!(
            "dim {dim}, hsc {hsc:+}: a = b = {:.12}, measured {:.12}, residual {:.1e}",
            cal.potential.a, cal.measured_hsc, cal.residual
        );
    }
    Ok(())
}
