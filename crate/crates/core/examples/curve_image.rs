//! Images of curves under split maps and invariance.

use splitdyn::cli::{parse_curve, parse_rational_map};
use splitdyn::curves::{image_curve, is_invariant, SplitEndo};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cases = [
        ("y - x^2", "x^2", "x^3"),
        ("x - y", "x^2 - 1", "x^2 - 1"),
        ("x + y", "x^3 + 1", "x^3 - 1"),
        ("x y - 1", "x^2", "x^2"),
        ("y - x^2 - x", "x^2 + 1", "x^2 - 1"),
    ];
    for (c, f, g) in cases {
        let curve = parse_curve(c)?;
        let phi = SplitEndo::new(parse_rational_map(f)?, parse_rational_map(g)?, 1, 1)?;
        let image = image_curve(&curve, &phi)?;
        println!(
            "({f}, {g}) maps {c} = 0 to {image} = 0, bidegree {:?}, invariant: {}",
            image.bidegree(),
            is_invariant(&curve, &phi)?
        );
    }
    Ok(())
}
