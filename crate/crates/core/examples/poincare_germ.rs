//! Linearizing series at repelling fixed points and germ residuals.

use num_complex::Complex64;
use splitdyn::cli::parse_rational_map;
use splitdyn::numeric::{germ_equality_residual, poincare_series, Germ};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sq = parse_rational_map("x^2")?;
    let one = Complex64::new(1.0, 0.0);
    let s = poincare_series(&sq, one, 10)?;
    println!("x^2 at 1: lambda = {}, coefficients {:?}", s.lambda, s.coefficients.iter().map(|c| c.re).collect::<Vec<_>>());

    let f = parse_rational_map("x^2 - 1")?;
    let x0 = Complex64::new((1.0 + 5f64.sqrt()) / 2.0, 0.0);
    for order in [4, 8, 12] {
        let s = poincare_series(&f, x0, order)?;
        println!("x^2 - 1, order {order}: residual {:.2e}, evaluation residual at 0.25 {:.2e}", s.residual, s.evaluation_residual(&f, 0.25, 64));
    }

    let quartic = parse_rational_map("x^4")?;
    let r = germ_equality_residual(&sq, &quartic, 2, 1, &Germ::identity(one), 0.1, 16)?;
    println!("h(f^2(z)) - g(h(z)) for f = x^2, g = x^4: {r:.2e}");
    Ok(())
}
