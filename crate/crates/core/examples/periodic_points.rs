//! Periodic points, cycles and multipliers.

use splitdyn::cli::parse_rational_map;
use splitdyn::numeric::{group_cycles, periodic_points};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse_rational_map("x^2 - 1")?;
    for n in 1..=8 {
        let pts = periodic_points(&f, n, 1e-9)?;
        let cycles = group_cycles(&f, &pts, 1e-7);
        let repelling = cycles.iter().filter(|c| c[0].repelling).count();
        println!("period {n}: {} points, {} cycles, {repelling} repelling", pts.len(), cycles.len());
    }
    let newton = parse_rational_map("(x^2 + 1)/(2x)")?;
    for p in periodic_points(&newton, 1, 1e-9)? {
        println!("Newton map fixed point {}: multiplier {:.6}", p.point, p.multiplier);
    }
    Ok(())
}
