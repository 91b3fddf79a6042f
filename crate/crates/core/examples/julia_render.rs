//! Julia set images written as binary PGM files.

use splitdyn::cli::parse_rational_map;
use splitdyn::numeric::julia_render;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir();
    for (name, text) in [("basilica", "x^2 - 1"), ("segment", "x^2 - 2"), ("newton", "(x^2 + 1)/(2x)")] {
        let img = julia_render(&parse_rational_map(text)?, 128, 200);
        let path = dir.join(format!("{name}.pgm"));
        std::fs::write(&path, img.to_pgm())?;
        println!("{text}: {}", path.display());
    }
    Ok(())
}
