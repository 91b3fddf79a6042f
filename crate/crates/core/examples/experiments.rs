//! The scripted scenarios, run through the library.

use splitdyn::cli::{run_experiment, ExperimentSpec, SCENARIOS};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in SCENARIOS {
        let report = run_experiment(&ExperimentSpec::named(name)?)?;
        for c in &report.checks {
            println!("{name} {}: {} {}", c.name, if c.passed { "pass" } else { "FAIL" }, c.detail);
        }
    }
    Ok(())
}
