use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::json::rational;
use super::parse::{parse_curve, parse_rational, parse_rational_map};
use super::CliError;
use crate::algebra::FieldElement;
use crate::classify::{classify_unicritical_pair, PairingVerdict, UnicriticalMap};
use crate::curves::{is_invariant, preperiodic_pairs_on_curve, SplitEndo};
use crate::heights::RationalMap;
use crate::numeric::{config, curve_measure_discrepancy, curve_pullback_measure};

pub const SCENARIOS: [&str; 3] = ["thm13-grid", "prop42-diagonal", "lemma61-transfer"];

/// A named scenario with its parameter ranges and the checks it runs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub name: String,
    /// Degrees d of the unicritical grid.
    pub degrees: Vec<u32>,
    /// Constants c of the unicritical grid, as exact rationals.
    pub grid: Vec<String>,
    /// Samples per measure.
    pub samples: usize,
    pub seed: u64,
    /// Candidate-point budget for rational enumeration.
    pub budget: u64,
    pub checks: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub scenario: String,
    pub checks: Vec<Check>,
    pub failures: usize,
}

const GRID: [&str; 20] = [
    "-5", "-4", "-3", "-5/2", "-2", "-1", "-3/4", "-2/3", "-1/2", "-1/3", "1/3", "1/2", "2/3", "3/4",
    "1", "2", "5/2", "3", "4", "5",
];

/// Curves, split maps and expected invariance shared by the measure and
/// transfer scenarios.
const CURVES: [(&str, &str, &str, &str, bool); 4] = [
    ("diagonal", "x - y", "x^2 - 1", "x^2 - 1", true),
    ("graph", "y - x^2 + 1", "x^2 - 1", "x^2 - 1", true),
    ("conjugacy", "x + y", "x^3 + 1", "x^3 - 1", true),
    ("control", "x - y", "x^3 + 1", "x^3 - 1", false),
];

impl ExperimentSpec {
    pub fn named(name: &str) -> Result<ExperimentSpec, CliError> {
        let checks: Vec<&str> = match name {
            "thm13-grid" => vec!["verdicts-match"],
            "prop42-diagonal" => vec![
                "diagonal-invariant",
                "diagonal-agree",
                "conjugacy-invariant",
                "conjugacy-agree",
                "control-not-invariant",
                "control-differs",
            ],
            "lemma61-transfer" => vec!["diagonal-transfer", "graph-transfer", "conjugacy-transfer"],
            other => return Err(CliError::UnknownScenario(other.to_string())),
        };
        Ok(ExperimentSpec {
            name: name.to_string(),
            degrees: vec![2, 3, 4, 5],
            grid: GRID.iter().map(|s| s.to_string()).collect(),
            samples: config::SAMPLES,
            seed: config::SEED,
            budget: super::ENUMERATION_BUDGET,
            checks: checks.into_iter().map(String::from).collect(),
        })
    }
}

pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentReport, CliError> {
    let checks = match spec.name.as_str() {
        "thm13-grid" => thm13_grid(spec)?,
        "prop42-diagonal" => prop42(spec)?,
        "lemma61-transfer" => lemma61(spec)?,
        other => return Err(CliError::UnknownScenario(other.to_string())),
    };
    let checks: Vec<Check> = checks.into_iter().filter(|c| spec.checks.contains(&c.name)).collect();
    Ok(ExperimentReport {
        scenario: spec.name.clone(),
        failures: checks.iter().filter(|c| !c.passed).count(),
        checks,
    })
}

/// ζ with ζ·c₁ = c₂ among rationals p/q, |p|, q ≤ 3, having ζ^{d−1} = 1 by
/// repeated multiplication.
fn brute_force_zeta(d: u32, c1: &BigRational, c2: &BigRational) -> Option<BigRational> {
    let one = BigRational::one();
    for q in 1..=3i64 {
        for p in -3..=3i64 {
            let r = BigRational::new(BigInt::from(p), BigInt::from(q));
            let mut pow = one.clone();
            for _ in 0..d - 1 {
                pow = &pow * &r;
            }
            if pow == one && &r * c1 == *c2 {
                return Some(r);
            }
        }
    }
    None
}

fn thm13_grid(spec: &ExperimentSpec) -> Result<Vec<Check>, CliError> {
    let grid: Vec<BigRational> = spec.grid.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?;
    let mut cases = 0usize;
    let mut paired = 0usize;
    let mut mismatches = Vec::new();
    for &d1 in &spec.degrees {
        for &d2 in &spec.degrees {
            for c1 in &grid {
                for c2 in &grid {
                    let u1 = UnicriticalMap::new(d1, FieldElement::rational(c1.clone()))?;
                    let u2 = UnicriticalMap::new(d2, FieldElement::rational(c2.clone()))?;
                    if u1.is_exceptional() || u2.is_exceptional() {
                        continue;
                    }
                    cases += 1;
                    let verdict = classify_unicritical_pair(&u1, &u2)?;
                    let expected = if d1 == d2 { brute_force_zeta(d1, c1, c2) } else { None };
                    let agree = match (&verdict, &expected) {
                        (PairingVerdict::Paired(z), Some(r)) => z.as_rational().as_ref() == Some(r),
                        (PairingVerdict::NotPaired, None) => true,
                        _ => false,
                    };
                    paired += usize::from(verdict.is_paired());
                    if !agree {
                        mismatches.push(json!([d1, rational(c1), d2, rational(c2)]));
                    }
                }
            }
        }
    }
    Ok(vec![Check {
        name: "verdicts-match".into(),
        passed: mismatches.is_empty() && cases > 0,
        detail: json!({ "cases": cases, "paired": paired, "mismatches": mismatches }),
    }])
}

fn maps(f: &str, g: &str) -> Result<(RationalMap, RationalMap), CliError> {
    Ok((parse_rational_map(f)?, parse_rational_map(g)?))
}

fn prop42(spec: &ExperimentSpec) -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for (label, curve, f, g, invariant) in CURVES {
        if label == "graph" {
            continue;
        }
        let c = parse_curve(curve)?;
        let (f, g) = maps(f, g)?;
        let phi = SplitEndo::new(f.clone(), g.clone(), 1, 1)?;
        let inv = is_invariant(&c, &phi)?;
        let first = curve_pullback_measure(&c, &f, 1, spec.samples, spec.seed)?;
        let second = curve_pullback_measure(&c, &g, 2, spec.samples, spec.seed.wrapping_add(1))?;
        let d = curve_measure_discrepancy(&first, &second)?;
        let detail = json!({ "curve": curve, "discrepancy": d, "samples": spec.samples });
        if invariant {
            out.push(Check { name: format!("{label}-invariant"), passed: inv, detail: json!({ "curve": curve }) });
            out.push(Check { name: format!("{label}-agree"), passed: d < config::AGREE_THRESHOLD, detail });
        } else {
            out.push(Check { name: format!("{label}-not-invariant"), passed: !inv, detail: json!({ "curve": curve }) });
            out.push(Check { name: format!("{label}-differs"), passed: d > config::DIFFER_THRESHOLD, detail });
        }
    }
    Ok(out)
}

fn lemma61(spec: &ExperimentSpec) -> Result<Vec<Check>, CliError> {
    let mut out = Vec::new();
    for (label, curve, f, g, invariant) in CURVES {
        if !invariant {
            continue;
        }
        let c = parse_curve(curve)?;
        let (f, g) = maps(f, g)?;
        let inv = is_invariant(&c, &SplitEndo::new(f.clone(), g.clone(), 1, 1)?)?;
        let r = preperiodic_pairs_on_curve(&c, &f, &g, spec.budget)?;
        let failures = r.transfer_failures.len() + r.reverse_failures.len();
        out.push(Check {
            name: format!("{label}-transfer"),
            passed: inv && failures == 0 && !r.truncated,
            detail: json!({
                "curve": curve,
                "invariant": inv,
                "pairs": r.pairs.len(),
                "transfer_failures": failures,
                "truncated": r.truncated,
            }),
        });
    }
    Ok(out)
}
