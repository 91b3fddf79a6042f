//! Deciding preperiodicity and enumerating all rational preperiodic points.

use splitdyn::cli::parse_rational_map;
use splitdyn::heights::{is_preperiodic, preperiodic_points};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse_rational_map("x^2 - 3/4")?;
    let all = preperiodic_points(&f, 0.0, 50_000_000)?;
    println!("escape bound {:.4}, coordinates up to {}", all.escape_bound, all.coordinate_bound);
    for x in &all.points {
        let cert = is_preperiodic(&f, x);
        println!("  {x}: {:?}", cert.decision);
    }
    let cert = is_preperiodic(&f, &"1".parse()?);
    println!("x = 1: {:?} after {} orbit points", cert.decision, cert.orbit.len());
    Ok(())
}
