//! Curve orbits: exact repeats for invariant curves, bidegree growth otherwise,
//! and the curves f^n(x) = L(f^m(y)).

use splitdyn::algebra::{LinearPoly, Poly};
use splitdyn::cli::parse_curve;
use splitdyn::curves::{curve_preperiodicity, ms_curve, BiCurve, SplitEndo};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Poly::from_ints(&[-1, 0, 1]);
    let phi = SplitEndo::polynomial(&f, &f, 1, 1)?;
    let graph = BiCurve::graph(&f)?;
    let r = curve_preperiodicity(&graph, &phi, 3, 64)?;
    println!("graph of x^2 - 1: {:?}", r.status);

    let phi = SplitEndo::polynomial(&Poly::from_ints(&[0, 0, 1]), &Poly::from_ints(&[0, 0, 0, 1]), 1, 1)?;
    let r = curve_preperiodicity(&parse_curve("x - y")?, &phi, 3, 1000)?;
    println!("diagonal under (x^2, x^3): {:?}, bidegrees {:?}", r.status, r.bidegrees);

    let c = ms_curve(&Poly::from_ints(&[0, 0, 1]), 2, 1, &LinearPoly::from_ints(-1, 0)?)?;
    println!("x^4 = -y^2 gives {c}");
    let r = curve_preperiodicity(&c, &SplitEndo::polynomial(&Poly::from_ints(&[0, 0, 1]), &Poly::from_ints(&[0, 0, 1]), 1, 1)?, 4, 256)?;
    println!("  its orbit under (x^2, x^2): {:?}", r.status);
    Ok(())
}
