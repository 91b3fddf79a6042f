//! Canonical heights by local contributions, with the functional equation
//! and the product formula.

use num_rational::BigRational;
use splitdyn::cli::parse_rational_map;
use splitdyn::heights::{canonical_height, product_formula_check, ProjPointQ};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for text in ["x^2 - 1", "(x^2 + 1)/(2x)", "x^3 - 2x + 1"] {
        let f = parse_rational_map(text)?;
        let x: ProjPointQ = "3/2".parse()?;
        let h = canonical_height(&f, &x, 1e-9)?;
        let hf = canonical_height(&f, &f.apply(&x), 1e-9)?;
        println!("f = {text}: h(3/2) = {:.12} ± {:.1e}", h.value, h.error_radius);
        for (v, l) in &h.per_place {
            println!("    place {v}: {l:.12}");
        }
        println!("    h(f(x)) - d h(x) = {:.2e}", hf.value - f.degree() as f64 * h.value);
    }
    let alpha = BigRational::new((-360).into(), 49.into());
    let report = product_formula_check(&alpha)?;
    println!("product formula for -360/49: exact = {}, sum = {:.2e}", report.exact, report.float_sum);
    Ok(())
}
