//! Pullback measures on curves through each projection.

use splitdyn::cli::{parse_curve, parse_rational_map};
use splitdyn::numeric::{config, curve_measure_discrepancy, curve_pullback_measure};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (c, f, g) in [("x - y", "x^2 - 1", "x^2 - 1"), ("x + y", "x^3 + 1", "x^3 - 1"), ("x - y", "x^3 + 1", "x^3 - 1")] {
        let curve = parse_curve(c)?;
        let first = curve_pullback_measure(&curve, &parse_rational_map(f)?, 1, config::SAMPLES, 0)?;
        let second = curve_pullback_measure(&curve, &parse_rational_map(g)?, 2, config::SAMPLES, 1)?;
        println!("{c} = 0 under ({f}, {g}): discrepancy {:.4}", curve_measure_discrepancy(&first, &second)?);
    }
    Ok(())
}
