//! Generating solutions of f^n(A) = A(B) for unicritical f and recovering
//! their parameters.

use splitdyn::algebra::LinearPoly;
use splitdyn::classify::{classify_semiconjugacy, generate_semiconjugacy, UnicriticalMap};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let u = UnicriticalMap::from_int(4, 1)?;
    for (n, m, delta, a, b) in [(1, 0, 2, 1, 0), (1, 1, 4, 2, 3), (2, 1, 1, -1, 1), (1, 2, 2, 3, -2)] {
        let l = LinearPoly::from_ints(a, b)?;
        let (pa, pb) = generate_semiconjugacy(&u, n, m, delta, &l)?;
        let sol = classify_semiconjugacy(&u, n, &pa, &pb)?;
        println!(
            "n={n} m={m} delta={delta} L={l}: deg A = {}, deg B = {}, recovered m={} delta={} L={}",
            pa.deg(),
            pb.deg(),
            sol.m,
            sol.delta,
            sol.l
        );
    }
    Ok(())
}
