//! Linear symmetries, iterate detection and gap data.

use splitdyn::algebra::{iterate, Field};
use splitdyn::classify::{gap_data, is_iterate_of, symmetries_of};
use splitdyn::cli::parse_poly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k = Field::extension_from_ints(&[1, 0, 1])?;
    for (text, field) in [("x^2 + 3x", &Field::Rational), ("x^4 + 1", &Field::Rational), ("x^4 + 1", &k), ("x^3", &Field::Rational)] {
        let g = parse_poly(text, field)?;
        let syms: Vec<String> = symmetries_of(&g)?.iter().map(|l| l.to_string()).collect();
        println!("symmetries of {text}: {}", syms.join(", "));
    }
    let g = parse_poly("x^2 - 1", &Field::Rational)?;
    let big = iterate(&g, 3)?;
    println!("(x^2 - 1)^3 is the iterate of order {:?}", is_iterate_of(&big, &g, 5)?);
    for text in ["x^4 + x^2 + 1", "2x^6 - x^3 + 5", "x^5 + x^4"] {
        println!("gap data of {text}: {:?}", gap_data(&parse_poly(text, &Field::Rational)?)?);
    }
    Ok(())
}
