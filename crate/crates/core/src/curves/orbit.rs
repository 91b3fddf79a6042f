use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::curve::BiCurve;
use super::image::image_curve;
use super::{CurveError, SplitEndo};
use crate::algebra::{iterate, LinearPoly, Poly};
use crate::algebra::qpoly;
use crate::heights::{self, ProjPointQ, RationalMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrbitStatus {
    /// Two normalized iterates coincided exactly.
    Preperiodic { preperiod: usize, period: usize },
    /// The step or degree budget ran out first.
    Undecided { reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveOrbitReport {
    pub status: OrbitStatus,
    pub fingerprints: Vec<u64>,
    pub bidegrees: Vec<(u32, u32)>,
    pub curves: Vec<BiCurve>,
}

impl CurveOrbitReport {
    pub fn preperiod(&self) -> Option<usize> {
        match self.status {
            OrbitStatus::Preperiodic { preperiod, .. } => Some(preperiod),
            OrbitStatus::Undecided { .. } => None,
        }
    }

    pub fn period(&self) -> Option<usize> {
        match self.status {
            OrbitStatus::Preperiodic { period, .. } => Some(period),
            OrbitStatus::Undecided { .. } => None,
        }
    }
}

/// Iterates Φ on C until an exact repeat, or until `max_steps` images have
/// been computed or the next image could exceed `degree_budget` in either
/// coordinate.
pub fn curve_preperiodicity(
    c: &BiCurve,
    phi: &SplitEndo,
    max_steps: usize,
    degree_budget: u32,
) -> Result<CurveOrbitReport, CurveError> {
    let (f, g) = phi.components()?;
    let mut seen: HashMap<BiCurve, usize> = HashMap::new();
    let mut report = CurveOrbitReport {
        status: OrbitStatus::Undecided {
            reason: String::new(),
        },
        fingerprints: Vec::new(),
        bidegrees: Vec::new(),
        curves: Vec::new(),
    };
    let mut cur = c.clone();
    for step in 0.. {
        if let Some(&first) = seen.get(&cur) {
            report.status = OrbitStatus::Preperiodic {
                preperiod: first,
                period: step - first,
            };
            return Ok(report);
        }
        seen.insert(cur.clone(), step);
        report.fingerprints.push(cur.fingerprint());
        report.bidegrees.push(cur.bidegree());
        report.curves.push(cur.clone());
        if step == max_steps {
            report.status = OrbitStatus::Undecided {
                reason: format!("no repeat within {max_steps} steps"),
            };
            return Ok(report);
        }
        let (dx, dy) = cur.bidegree();
        let bound = (dx * g.degree()).max(dy * f.degree());
        if bound > degree_budget {
            report.status = OrbitStatus::Undecided {
                reason: format!("next image may reach degree {bound} > budget {degree_budget}"),
            };
            return Ok(report);
        }
        cur = image_curve(&cur, phi)?;
    }
    unreachable!()
}

/// The curve f̃ⁿ(x) = L(f̃ᵐ(y)), squarefree and normalized.
pub fn ms_curve(ft: &Poly, n: u32, m: u32, l: &LinearPoly) -> Result<BiCurve, CurveError> {
    if ft.deg() < 2 {
        return Err(CurveError::InvalidArgument("f̃ must have degree at least 2".into()));
    }
    let lhs = iterate(ft, n)?;
    let rhs = l.to_poly().compose(&iterate(ft, m)?)?;
    BiCurve::difference(&lhs, &rhs)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairReport {
    /// Rational points (x, y) on C with both coordinates preperiodic.
    pub pairs: Vec<(ProjPointQ, ProjPointQ)>,
    /// x preperiodic for f but y wandering for g.
    pub transfer_failures: Vec<(ProjPointQ, ProjPointQ)>,
    /// y preperiodic for g but x wandering for f.
    pub reverse_failures: Vec<(ProjPointQ, ProjPointQ)>,
    pub preperiodic_x: usize,
    pub preperiodic_y: usize,
    /// The enumeration or a rational-root search hit the budget.
    pub truncated: bool,
    /// Fibers of C contained in the curve (vertical or horizontal lines).
    pub fiber_components: Vec<String>,
}

/// Rational points on C above the given first coordinate.
fn points_over(c: &BiCurve, x: &ProjPointQ, budget: usize) -> Option<Result<Vec<ProjPointQ>, ()>> {
    let (dx, dy) = c.bidegree();
    let fiber: Vec<BigRational> = match x.to_rational() {
        Some(q) => c.fiber_in_y(&q),
        None => {
            let mut v = vec![BigRational::zero(); dy as usize + 1];
            for (i, j, coef) in c.terms() {
                if i == dx {
                    v[j as usize] = BigRational::from_integer(coef.clone());
                }
            }
            v
        }
    };
    if fiber.iter().all(|c| c.is_zero()) {
        return None;
    }
    let at_infinity = fiber[dy as usize].is_zero();
    let roots = match qpoly::rational_roots(&fiber, budget) {
        Some(r) => r,
        None => return Some(Err(())),
    };
    let mut out: Vec<ProjPointQ> = roots.iter().map(ProjPointQ::from_rational).collect();
    if at_infinity {
        out.push(ProjPointQ::infinity());
    }
    Some(Ok(out))
}

fn enumerate(f: &RationalMap, budget: u64) -> (Vec<ProjPointQ>, bool) {
    let full = heights::escape_bound(f).exp().floor();
    let cap = (((budget as f64) / 2.0).sqrt()).floor();
    if full <= cap {
        (heights::preperiodic_points_up_to(f, full as u64), false)
    } else {
        (heights::preperiodic_points_up_to(f, cap.max(1.0) as u64), true)
    }
}

/// Rational points on C whose coordinates are preperiodic, with the transfer
/// property checked in both directions. `budget` bounds the number of
/// candidate points examined per enumeration.
pub fn preperiodic_pairs_on_curve(
    c: &BiCurve,
    f: &RationalMap,
    g: &RationalMap,
    budget: u64,
) -> Result<PairReport, CurveError> {
    let root_budget = 100_000usize;
    let (xs, trunc_x) = enumerate(f, budget);
    let (ys, trunc_y) = enumerate(g, budget);
    let mut report = PairReport {
        pairs: Vec::new(),
        transfer_failures: Vec::new(),
        reverse_failures: Vec::new(),
        preperiodic_x: xs.len(),
        preperiodic_y: ys.len(),
        truncated: trunc_x || trunc_y,
        fiber_components: Vec::new(),
    };
    for x in &xs {
        match points_over(c, x, root_budget) {
            None => report.fiber_components.push(format!("x = {x}")),
            Some(Err(())) => report.truncated = true,
            Some(Ok(pts)) => {
                for y in pts {
                    if heights::is_preperiodic(g, &y).decision.is_preperiodic() {
                        report.pairs.push((x.clone(), y));
                    } else {
                        report.transfer_failures.push((x.clone(), y));
                    }
                }
            }
        }
    }
    let swapped = c.swapped();
    for y in &ys {
        match points_over(&swapped, y, root_budget) {
            None => report.fiber_components.push(format!("y = {y}")),
            Some(Err(())) => report.truncated = true,
            Some(Ok(pts)) => {
                for x in pts {
                    if !heights::is_preperiodic(f, &x).decision.is_preperiodic() {
                        report.reverse_failures.push((x, y.clone()));
                    }
                }
            }
        }
    }
    report.pairs.sort();
    Ok(report)
}
