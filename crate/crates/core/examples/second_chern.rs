//! Nonvanishing of the square of the first Chern class over a fake
//! projective plane times projective space.
use crchern::chern::check_nonzero_second_chern;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in 4..=6 {
        print!("{}", check_nonzero_second_chern(n)?.to_markdown());
    }
    Ok(())
}
