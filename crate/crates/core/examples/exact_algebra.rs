//! Composition, iteration, normal forms, Chebyshev polynomials and the
//! Engstrom reconstructions over Q and Q(i).

use splitdyn::algebra::{
    chebyshev, engstrom_left, engstrom_right, is_exceptional_poly, iterate, normal_form, Field, Poly,
};
use splitdyn::cli::parse_poly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = Field::Rational;
    let p = parse_poly("2x^2 + 4x + 1", &q)?;
    let (nf, l) = normal_form(&p)?;
    println!("normal form of {p}: {nf} via L = {l}");
    println!("(x^2 - 1)^3 = {}", iterate(&parse_poly("x^2 - 1", &q)?, 3)?);
    println!("T_5 = {}", chebyshev(5));
    println!("x^2 - 2 is {:?}", is_exceptional_poly(&parse_poly("x^2 - 2", &q)?)?);

    let a = parse_poly("x^2", &q)?;
    let b = parse_poly("x^2 + 2x + 2", &q)?;
    let c = parse_poly("(x^2 + 1)^2", &q)?;
    let d = parse_poly("x + 1", &q)?;
    println!("engstrom_left: P = {}", engstrom_left(&a, &b, &c, &d)?);
    println!("engstrom_right: Q = {}", engstrom_right(&c, &d, &a, &b)?);

    let k = Field::extension_from_ints(&[1, 0, 1])?;
    let g = parse_poly("x^3 + t", &k)?;
    println!("over Q(i): ({g}) composed with itself = {}", g.compose(&g)?);
    let _ = Poly::x(&k);
    Ok(())
}
