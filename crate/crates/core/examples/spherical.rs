//! The spherical Chern class relations on the total space of circle bundles.
use crchern::chern::{check_spherical_family, spherical_coefficient, SphericalFamily};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 4;
    print!("coefficients C(n+2,k)/(n+2)^k for n = {n}:");
    for k in 1..=n + 1 {
        print!(" {}", spherical_coefficient(n, k));
    }
    println!();
    for family in [
        SphericalFamily::SurfaceProduct,
        SphericalFamily::ProjectiveSpace { d: 3 },
        SphericalFamily::FppProduct,
    ] {
        let report = check_spherical_family(family, n)?;
        println!("\n{} ({})", family.name(), report.status.as_str());
        for r in &report.residuals {
            println!("    {}: {}", r.label, r.value);
        }
    }
    Ok(())
}
