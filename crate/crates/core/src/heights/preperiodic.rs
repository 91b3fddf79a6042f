use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use super::local::total_constant;
use super::map::RationalMap;
use super::point::{naive_height, ProjPointQ};
use super::HeightError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Preperiodicity {
    /// The orbit enters a cycle of length `period` after `tail` steps.
    Preperiodic { tail: usize, period: usize },
    /// Some orbit point has naive height above the escape bound.
    Wandering { escaped_at: usize },
}

impl Preperiodicity {
    pub fn is_preperiodic(&self) -> bool {
        matches!(self, Preperiodicity::Preperiodic { .. })
    }
}

/// Decision together with the exact orbit that certifies it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitCertificate {
    pub decision: Preperiodicity,
    pub orbit: Vec<ProjPointQ>,
    pub escape_bound: f64,
}

/// B = C/(d−1) + 1: every point of a finite orbit has naive height ≤ B.
pub fn escape_bound(f: &RationalMap) -> f64 {
    total_constant(f) / (f.degree() as f64 - 1.0) + 1.0
}

/// Terminating preperiodicity test by exact iteration against the escape bound.
pub fn is_preperiodic(f: &RationalMap, x: &ProjPointQ) -> OrbitCertificate {
    decide(f, x, escape_bound(f))
}

pub(crate) fn decide(f: &RationalMap, x: &ProjPointQ, bound: f64) -> OrbitCertificate {
    let mut seen: HashMap<ProjPointQ, usize> = HashMap::new();
    let mut orbit = Vec::new();
    let mut cur = x.clone();
    loop {
        if let Some(&first) = seen.get(&cur) {
            return OrbitCertificate {
                decision: Preperiodicity::Preperiodic {
                    tail: first,
                    period: orbit.len() - first,
                },
                orbit,
                escape_bound: bound,
            };
        }
        if naive_height(&cur) > bound {
            let escaped_at = orbit.len();
            orbit.push(cur);
            return OrbitCertificate {
                decision: Preperiodicity::Wandering { escaped_at },
                orbit,
                escape_bound: bound,
            };
        }
        seen.insert(cur.clone(), orbit.len());
        orbit.push(cur.clone());
        cur = f.apply(&cur);
    }
}

/// The first `steps` + 1 points of the exact forward orbit.
pub fn orbit(f: &RationalMap, x: &ProjPointQ, steps: usize) -> Vec<ProjPointQ> {
    let mut out = Vec::with_capacity(steps + 1);
    let mut cur = x.clone();
    out.push(cur.clone());
    for _ in 0..steps {
        cur = f.apply(&cur);
        out.push(cur.clone());
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PreperiodicEnumeration {
    pub points: Vec<ProjPointQ>,
    pub escape_bound: f64,
    /// Largest |a|, |b| examined.
    pub coordinate_bound: u64,
    /// The requested bound was below the escape bound; the escape bound was used.
    pub raised_bound: bool,
}

/// All preperiodic points of f in P¹(Q). Every such point has naive height
/// at most the escape bound B, so the coprime pairs [a : b] with
/// max(|a|, |b|) ≤ exp(B) are enumerated whatever `height_bound` asks for;
/// `budget` caps the number of candidate pairs.
pub fn preperiodic_points(
    f: &RationalMap,
    height_bound: f64,
    budget: u64,
) -> Result<PreperiodicEnumeration, HeightError> {
    let bound = escape_bound(f);
    let n = bound.exp().floor();
    let candidates = (2.0 * n + 1.0) * (n + 1.0);
    if !n.is_finite() || candidates > budget as f64 {
        return Err(HeightError::Budget(format!(
            "escape bound {bound:.3} needs about {candidates:.0} candidate points, budget {budget}"
        )));
    }
    let n = n.to_u64().unwrap_or(0).max(1);
    Ok(PreperiodicEnumeration {
        points: preperiodic_points_up_to(f, n),
        escape_bound: bound,
        coordinate_bound: n,
        raised_bound: height_bound < bound,
    })
}

/// Preperiodic points [a : b] with max(|a|, |b|) ≤ `coordinate_bound`; the
/// list is complete once the bound reaches exp(B).
pub fn preperiodic_points_up_to(f: &RationalMap, coordinate_bound: u64) -> Vec<ProjPointQ> {
    let bound = escape_bound(f);
    let ni = coordinate_bound as i64;
    let mut points: Vec<ProjPointQ> = (0..=ni)
        .into_par_iter()
        .flat_map_iter(|b| {
            let lo = if b == 0 { 1 } else { -ni };
            let hi = if b == 0 { 1 } else { ni };
            (lo..=hi).filter_map(move |a| {
                if BigInt::from(a).gcd(&BigInt::from(b)).is_one() {
                    Some(ProjPointQ::normalized(a.into(), b.into()))
                } else {
                    None
                }
            })
        })
        .filter(|x| decide(f, x, bound).decision.is_preperiodic())
        .collect();
    points.sort();
    points.dedup();
    points
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad(c: &[i64]) -> RationalMap {
        RationalMap::from_int_coeffs(c, &[1]).unwrap()
    }

    #[test]
    fn decisions() {
        let f = quad(&[-1, 0, 1]);
        let c = is_preperiodic(&f, &ProjPointQ::integer(0));
        assert_eq!(c.decision, Preperiodicity::Preperiodic { tail: 0, period: 2 });
        let g = quad(&[0, 0, 1]);
        let c = is_preperiodic(&g, &ProjPointQ::infinity());
        assert_eq!(c.decision, Preperiodicity::Preperiodic { tail: 0, period: 1 });
        let h = quad(&[1, 0, 1]);
        let c = is_preperiodic(&h, &ProjPointQ::from_ints(1, 2).unwrap());
        assert!(matches!(c.decision, Preperiodicity::Wandering { .. }));
    }

    fn as_strings(e: &PreperiodicEnumeration) -> Vec<String> {
        let mut v: Vec<String> = e.points.iter().map(|p| p.to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn enumerations() {
        let e = preperiodic_points(&quad(&[0, 0, 1]), 0.0, 1_000_000).unwrap();
        assert_eq!(as_strings(&e), vec!["-1", "0", "1", "inf"]);
        let e = preperiodic_points(&quad(&[-1, 0, 1]), 0.0, 1_000_000).unwrap();
        for s in ["-1", "0", "1", "inf"] {
            assert!(as_strings(&e).contains(&s.to_string()));
        }
        let e = preperiodic_points(&quad(&[1, 0, 1]), 0.0, 1_000_000).unwrap();
        assert_eq!(as_strings(&e), vec!["inf"]);
        assert!(e.raised_bound);
    }
}
