//! Rational points with preperiodic coordinates on curves, and the transfer
//! of preperiodicity between the two coordinates.

use splitdyn::cli::{parse_curve, parse_rational_map};
use splitdyn::curves::preperiodic_pairs_on_curve;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (c, f, g) in [
        ("x - y", "x^2 - 1", "x^2 - 1"),
        ("y - x^2 + 1", "x^2 - 1", "x^2 - 1"),
        ("x + y", "x^3 + 1", "x^3 - 1"),
        ("y - x^2", "x^2 - 1", "x^3"),
    ] {
        let r = preperiodic_pairs_on_curve(&parse_curve(c)?, &parse_rational_map(f)?, &parse_rational_map(g)?, 10_000_000)?;
        let pairs: Vec<String> = r.pairs.iter().map(|(x, y)| format!("({x}, {y})")).collect();
        println!("{c} = 0 under ({f}, {g}): pairs {}", pairs.join(" "));
        println!(
            "    transfer failures {} / {}, truncated {}",
            r.transfer_failures.len(),
            r.reverse_failures.len(),
            r.truncated
        );
    }
    Ok(())
}
