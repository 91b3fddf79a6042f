//! Sampling the equilibrium measure and checking invariance under pushforward.

use splitdyn::cli::parse_rational_map;
use splitdyn::numeric::{config, measure_discrepancy, sample_invariant_measure};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for text in ["x^2", "x^2 - 1", "(x^2 + 1)/(2x)"] {
        let f = parse_rational_map(text)?;
        let mu = sample_invariant_measure(&f, config::SAMPLES, config::BURN_IN, 1)?;
        let nu = sample_invariant_measure(&f, config::SAMPLES, config::BURN_IN, 2)?;
        println!(
            "{text}: self-distance {:.4}, pushforward distance {:.4}",
            measure_discrepancy(&mu, &nu)?,
            measure_discrepancy(&mu.pushforward(&f), &nu)?
        );
    }
    let mu = sample_invariant_measure(&parse_rational_map("x^2")?, 1000, 50, 0)?;
    let worst = mu.points.iter().map(|p| (p.value_or_inf().norm() - 1.0).abs()).fold(0.0, f64::max);
    println!("x^2 samples deviate from |z| = 1 by at most {worst:.2e}");
    Ok(())
}
