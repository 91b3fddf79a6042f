//! The `splitdyn` command line: expression parsing, the serializable
//! [`Command`] record, the dispatcher [`run`] and the experiment runner.
//!
//! Every output embeds the command record that produced it, so a run can be
//! repeated from its own output.

mod experiment;
pub mod json;
pub mod parse;

pub use experiment::{run_experiment, Check, ExperimentReport, ExperimentSpec, SCENARIOS};
pub use parse::{
    format_map, parse_curve, parse_field, parse_field_element, parse_linear, parse_map, parse_poly,
    parse_rational, parse_rational_map, ParseError, ParseErrorKind, ParsedMap,
};

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::{self, AlgebraError, Field, Poly, DEFAULT_COEFFICIENT_BITS};
use crate::classify::{self, ClassifyError, SemiconjugacySolution, UnicriticalMap};
use crate::curves::{self, CurveError, SplitEndo};
use crate::heights::{self, HeightError, Place, ProjPointQ, RationalMap};
use crate::numeric::{self, config, ComplexPoint, CurveMeasure, EmpiricalMeasure, GrayImage, NumericError};

/// Default step budget for orbits and curve orbits.
pub const MAX_STEPS: usize = 16;
/// Default bidegree budget for curve orbits.
pub const DEGREE_BUDGET: u32 = 64;
/// Default candidate-point budget for rational preperiodic enumeration.
pub const ENUMERATION_BUDGET: u64 = 50_000_000;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Height(#[from] HeightError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error("{0}")]
    Io(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("coefficient budget exceeded: {bits} bits > {budget}")]
    Budget { bits: u64, budget: u64 },
    #[error("unknown scenario '{0}'")]
    UnknownScenario(String),
}

/// A complete, reproducible invocation.
#[derive(Parser, Serialize, Deserialize, Clone, Debug, PartialEq)]
#[command(name = "splitdyn", version, about = "Dynamics of split maps (x, y) -> (f(x), g(y)) of P1 x P1")]
pub struct Command {
    /// Seed for every random choice.
    #[arg(long, global = true, env = "SPLITDYN_SEED", default_value_t = config::SEED)]
    pub seed: u64,
    /// Numeric tolerance.
    #[arg(long, global = true, default_value_t = config::TOL)]
    pub tol: f64,
    /// JSON output (the default).
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// CSV output where a table exists.
    #[arg(long, global = true)]
    pub csv: bool,
    /// Largest total coefficient size of exact polynomial results.
    #[arg(long, global = true, default_value_t = DEFAULT_COEFFICIENT_BITS)]
    pub budget_bits: u64,
    /// Step budget for orbits.
    #[arg(long, global = true, default_value_t = MAX_STEPS)]
    pub max_steps: usize,
    /// Write the primary artifact here; the JSON document goes to stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads for sampling.
    #[arg(long, global = true, env = "SPLITDYN_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub action: Action,
}

#[derive(Subcommand, Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(rename_all = "kebab-case")]
pub enum Action {
    /// Canonical height of a rational point, optionally at a single place.
    Height {
        #[arg(long, allow_hyphen_values = true)]
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// `inf` or a prime.
        #[arg(long, allow_hyphen_values = true)]
        place: Option<String>,
    },
    /// Decide preperiodicity of a rational point.
    Preperiodic {
        #[arg(long, allow_hyphen_values = true)]
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Exact forward orbit (length from --max-steps unless --steps is given).
    Orbit {
        #[arg(long, allow_hyphen_values = true)]
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long)]
        steps: Option<usize>,
    },
    /// All preperiodic points in P1(Q).
    EnumeratePreperiodic {
        #[arg(long, allow_hyphen_values = true)]
        map: String,
        #[arg(long, default_value_t = 0.0)]
        height_bound: f64,
        #[arg(long, default_value_t = ENUMERATION_BUDGET)]
        budget: u64,
    },
    /// Image of a curve under (f^n, g^m).
    CurveImage {
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
    /// Whether (f^n, g^m) maps the curve onto itself.
    CurveInvariant {
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
    /// Iterate a curve until an exact repeat or a budget (--max-steps).
    CurveOrbit {
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, default_value_t = DEGREE_BUDGET)]
        degree_budget: u32,
    },
    /// The curve f^n(x) = L(f^m(y)).
    MsCurve {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value = "x", allow_hyphen_values = true)]
        l: String,
    },
    /// Rational points of a curve with preperiodic coordinates.
    CurvePreperiodicPairs {
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, default_value_t = ENUMERATION_BUDGET)]
        budget: u64,
    },
    /// Pairing verdict for x^d1 + c1 and x^d2 + c2.
    ClassifyPair {
        #[arg(long)]
        d1: u32,
        #[arg(long, allow_hyphen_values = true)]
        c1: String,
        #[arg(long)]
        d2: u32,
        #[arg(long, allow_hyphen_values = true)]
        c2: String,
        /// Modulus m(t) of the coefficient field Q[t]/(m); Q when absent.
        #[arg(long, allow_hyphen_values = true)]
        field: Option<String>,
    },
    /// Build (A, B) from (m, delta, L).
    SemiconjGenerate {
        #[arg(long)]
        d: u32,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        delta: u32,
        #[arg(long, default_value = "x", allow_hyphen_values = true)]
        l: String,
        #[arg(long, allow_hyphen_values = true)]
        field: Option<String>,
    },
    /// Recover (m, delta, L) from a solution (A, B) of f^n A = A B.
    SemiconjClassify {
        #[arg(long)]
        d: u32,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        field: Option<String>,
    },
    /// Linear L with g(L(x)) = g(x).
    Symmetries {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        field: Option<String>,
    },
    /// Degree, gap and gcd exponent of a polynomial.
    Gap {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        field: Option<String>,
    },
    /// Points of exact period n with multipliers.
    PeriodicPoints {
        #[arg(long, allow_hyphen_values = true)]
        map: String,
        #[arg(long)]
        period: u32,
    },
    /// Sample the equilibrium measure by backward orbits.
    SampleMeasure {
        #[arg(long, allow_hyphen_values = true)]
        map: String,
        #[arg(long, default_value_t = config::SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = config::BURN_IN)]
        burn_in: usize,
    },
    /// Pull the equilibrium measure back to a curve through one projection.
    PullbackMeasure {
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        #[arg(long, allow_hyphen_values = true)]
        map: String,
        #[arg(long, default_value_t = 1)]
        coordinate: usize,
        #[arg(long, default_value_t = config::SAMPLES)]
        samples: usize,
    },
    /// Discrepancy between two measure CSV files of the same kind.
    Discrepancy {
        first: PathBuf,
        second: PathBuf,
    },
    /// Linearizing series at a repelling fixed point.
    Poincare {
        #[arg(long, allow_hyphen_values = true)]
        map: String,
        /// `re` or `re,im`; refined to the nearest fixed point.
        #[arg(long, allow_hyphen_values = true)]
        x0: String,
        #[arg(long, default_value_t = config::POINCARE_ORDER)]
        order: usize,
    },
    /// Residual of h(f^n(z)) = g^m(h(z)) near a repelling fixed point of f.
    GermCheck {
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// `re` or `re,im`; refined to the nearest fixed point of f.
        #[arg(long, allow_hyphen_values = true)]
        x0: String,
        /// Polynomial h over Q.
        #[arg(long, default_value = "x", allow_hyphen_values = true)]
        h: String,
        #[arg(long, default_value_t = config::GERM_RADIUS)]
        radius: f64,
        #[arg(long, default_value_t = config::GERM_GRID)]
        grid: usize,
    },
    /// Grayscale Julia image as binary PGM.
    JuliaRender {
        #[arg(long, allow_hyphen_values = true)]
        map: String,
        #[arg(long, default_value_t = config::JULIA_RESOLUTION)]
        resolution: usize,
        #[arg(long, default_value_t = config::JULIA_ITERATIONS)]
        iterations: usize,
    },
    /// Run a named scenario; exits 1 when a check fails.
    Experiment {
        /// One of thm13-grid, prop42-diagonal, lemma61-transfer.
        name: String,
        #[arg(long, default_value_t = config::SAMPLES)]
        samples: usize,
    },
}

impl Action {
    pub fn name(&self) -> &'static str {
        match self {
            Action::Height { .. } => "height",
            Action::Preperiodic { .. } => "preperiodic",
            Action::Orbit { .. } => "orbit",
            Action::EnumeratePreperiodic { .. } => "enumerate-preperiodic",
            Action::CurveImage { .. } => "curve-image",
            Action::CurveInvariant { .. } => "curve-invariant",
            Action::CurveOrbit { .. } => "curve-orbit",
            Action::MsCurve { .. } => "ms-curve",
            Action::CurvePreperiodicPairs { .. } => "curve-preperiodic-pairs",
            Action::ClassifyPair { .. } => "classify-pair",
            Action::SemiconjGenerate { .. } => "semiconj-generate",
            Action::SemiconjClassify { .. } => "semiconj-classify",
            Action::Symmetries { .. } => "symmetries",
            Action::Gap { .. } => "gap",
            Action::PeriodicPoints { .. } => "periodic-points",
            Action::SampleMeasure { .. } => "sample-measure",
            Action::PullbackMeasure { .. } => "pullback-measure",
            Action::Discrepancy { .. } => "discrepancy",
            Action::Poincare { .. } => "poincare",
            Action::GermCheck { .. } => "germ-check",
            Action::JuliaRender { .. } => "julia-render",
            Action::Experiment { .. } => "experiment",
        }
    }
}

impl Command {
    /// A record with every global flag at its default.
    pub fn new(action: Action) -> Command {
        Command {
            seed: config::SEED,
            tol: config::TOL,
            json: false,
            csv: false,
            budget_bits: DEFAULT_COEFFICIENT_BITS,
            max_steps: MAX_STEPS,
            output: None,
            threads: None,
            action,
        }
    }

    /// Compact JSON of the record.
    pub fn record(&self) -> Value {
        serde_json::to_value(self).expect("command serializes")
    }
}

/// Result of a run before rendering.
#[derive(Clone, Debug, PartialEq)]
pub struct Output {
    /// `{"command": …, "result": …}`
    pub document: Value,
    pub csv: Option<String>,
    pub image: Option<GrayImage>,
    /// Failed experiment checks.
    pub failures: usize,
}

/// Bytes for stdout and, with --output, for the artifact file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rendered {
    pub stdout: Vec<u8>,
    pub file: Option<(PathBuf, Vec<u8>)>,
}

pub fn render(cmd: &Command, out: &Output) -> Rendered {
    let record = serde_json::to_string(&cmd.record()).expect("json");
    let mut doc = serde_json::to_string_pretty(&out.document).expect("json").into_bytes();
    doc.push(b'\n');
    let primary = if let Some(img) = &out.image {
        img.to_pgm_with_comment(Some(&record))
    } else if let (true, Some(csv)) = (cmd.csv, &out.csv) {
        format!("# command: {record}\n{csv}").into_bytes()
    } else {
        doc.clone()
    };
    match &cmd.output {
        Some(path) => Rendered { stdout: doc, file: Some((path.clone(), primary)) },
        None => Rendered { stdout: primary, file: None },
    }
}

fn field_of(spec: &Option<String>) -> Result<Field, CliError> {
    match spec {
        None => Ok(Field::Rational),
        Some(m) => Ok(parse_field(m)?),
    }
}

fn point(text: &str) -> Result<ProjPointQ, CliError> {
    Ok(text.parse::<ProjPointQ>()?)
}

fn place(text: &str) -> Result<Place, CliError> {
    let t = text.trim();
    if t == "inf" || t == "∞" {
        return Ok(Place::Infinite);
    }
    let p: u64 = t.parse().map_err(|_| CliError::Invalid(format!("place '{t}'")))?;
    Ok(Place::prime(p)?)
}

/// `re` or `re,im`.
pub fn parse_complex(text: &str) -> Result<Complex64, CliError> {
    let bad = || CliError::Invalid(format!("complex number '{text}'"));
    let mut parts = text.split(',').map(|s| s.trim().parse::<f64>());
    let re = parts.next().ok_or_else(bad)?.map_err(|_| bad())?;
    let im = match parts.next() {
        Some(v) => v.map_err(|_| bad())?,
        None => 0.0,
    };
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok(Complex64::new(re, im))
}

/// The finite fixed point of f nearest to `guess`, within 1e-3.
pub fn nearest_fixed_point(f: &RationalMap, guess: Complex64, tol: f64) -> Result<Complex64, CliError> {
    let best = numeric::periodic_points(f, 1, tol)?
        .into_iter()
        .filter_map(|p| p.point.value())
        .min_by(|a, b| (a - guess).norm().total_cmp(&(b - guess).norm()));
    match best {
        Some(z) if (z - guess).norm() <= 1e-3 => Ok(z),
        _ => Err(NumericError::NotFixed(format!("no fixed point within 1e-3 of {guess}")).into()),
    }
}

fn check_bits(p: &Poly, budget: u64) -> Result<(), CliError> {
    let bits = p.coefficient_bits();
    if bits > budget {
        return Err(CliError::Budget { bits, budget });
    }
    Ok(())
}

fn split(f: &str, g: &str, n: u32, m: u32) -> Result<SplitEndo, CliError> {
    Ok(SplitEndo::new(parse_rational_map(f)?, parse_rational_map(g)?, n, m)?)
}

fn complex(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn point_value(p: &ComplexPoint) -> Value {
    match p.value() {
        Some(z) => complex(z),
        None => Value::String("inf".into()),
    }
}

fn exact(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("json")
}

fn solution_json(sol: &SemiconjugacySolution) -> Value {
    json!({ "m": sol.m, "delta": sol.delta, "L": json::linear(&sol.l) })
}

/// Executes a command. Output writing is left to the caller.
pub fn run(cmd: &Command) -> Result<Output, CliError> {
    let mut csv = None;
    let mut image = None;
    let mut failures = 0;
    let result = match &cmd.action {
        Action::Height { map, point: x, place: v } => {
            let f = parse_rational_map(map)?;
            let x = point(x)?;
            match v {
                None => json::height(&heights::canonical_height(&f, &x, cmd.tol)?),
                Some(v) => {
                    let v = place(v)?;
                    let (h, e) = heights::local_canonical_height_with_error(&f, &x, &v, cmd.tol)?;
                    json!({ "value": h, "error": e, "places": [{ "v": v.to_string(), "lambda": h }] })
                }
            }
        }
        Action::Preperiodic { map, point: x } => {
            let f = parse_rational_map(map)?;
            exact(&heights::is_preperiodic(&f, &point(x)?))
        }
        Action::Orbit { map, point: x, steps } => {
            let f = parse_rational_map(map)?;
            let orbit = heights::orbit(&f, &point(x)?, steps.unwrap_or(cmd.max_steps));
            csv = Some(orbit.iter().fold(String::from("step,point\n"), |s, p| {
                format!("{s}{},{p}\n", s.lines().count() - 1)
            }));
            json!({ "orbit": exact(&orbit) })
        }
        Action::EnumeratePreperiodic { map, height_bound, budget } => {
            let f = parse_rational_map(map)?;
            let e = heights::preperiodic_points(&f, *height_bound, *budget)?;
            csv = Some(e.points.iter().map(|p| format!("{p}\n")).fold(String::from("point\n"), |a, b| a + &b));
            exact(&e)
        }
        Action::CurveImage { curve, f, g, n, m } => {
            let c = parse_curve(curve)?;
            let image = curves::image_curve(&c, &split(f, g, *n, *m)?)?;
            json!({ "curve": exact(&image), "text": image.to_string(), "bidegree": image.bidegree() })
        }
        Action::CurveInvariant { curve, f, g, n, m } => {
            let c = parse_curve(curve)?;
            json!({ "invariant": curves::is_invariant(&c, &split(f, g, *n, *m)?)? })
        }
        Action::CurveOrbit { curve, f, g, n, m, degree_budget } => {
            let c = parse_curve(curve)?;
            let phi = split(f, g, *n, *m)?;
            exact(&curves::curve_preperiodicity(&c, &phi, cmd.max_steps, *degree_budget)?)
        }
        Action::MsCurve { f, n, m, l } => {
            let ft = parse_poly(f, &Field::Rational)?;
            check_bits(&algebra::iterate_with_budget(&ft, (*n).max(*m), cmd.budget_bits)?, cmd.budget_bits)?;
            let c = curves::ms_curve(&ft, *n, *m, &parse_linear(l, &Field::Rational)?)?;
            json!({ "curve": exact(&c), "text": c.to_string(), "bidegree": c.bidegree() })
        }
        Action::CurvePreperiodicPairs { curve, f, g, budget } => {
            let c = parse_curve(curve)?;
            let (f, g) = (parse_rational_map(f)?, parse_rational_map(g)?);
            let r = curves::preperiodic_pairs_on_curve(&c, &f, &g, *budget)?;
            csv = Some(r.pairs.iter().fold(String::from("x,y\n"), |s, (x, y)| format!("{s}{x},{y}\n")));
            exact(&r)
        }
        Action::ClassifyPair { d1, c1, d2, c2, field } => {
            let k = field_of(field)?;
            let u1 = UnicriticalMap::new(*d1, parse_field_element(c1, &k)?)?;
            let u2 = UnicriticalMap::new(*d2, parse_field_element(c2, &k)?)?;
            let verdict = classify::classify_unicritical_pair(&u1, &u2)?;
            let mut v = exact(&verdict);
            v["f1"] = json::poly(&u1.poly());
            v["f2"] = json::poly(&u2.poly());
            v
        }
        Action::SemiconjGenerate { d, c, n, m, delta, l, field } => {
            let k = field_of(field)?;
            let u = UnicriticalMap::new(*d, parse_field_element(c, &k)?)?;
            let l = parse_linear(l, &k)?;
            let (a, b) = classify::generate_semiconjugacy(&u, *n, *m, *delta, &l)?;
            check_bits(&a, cmd.budget_bits)?;
            check_bits(&b, cmd.budget_bits)?;
            let sol = SemiconjugacySolution { m: *m, delta: *delta, l };
            json!({
                "A": json::poly(&a),
                "B": json::poly(&b),
                "intertwines": classify::intertwine_check(&u, *n, &sol)?,
                "canonical": solution_json(&sol.canonical(&u)),
            })
        }
        Action::SemiconjClassify { d, c, n, a, b, field } => {
            let k = field_of(field)?;
            let u = UnicriticalMap::new(*d, parse_field_element(c, &k)?)?;
            let (a, b) = (parse_poly(a, &k)?, parse_poly(b, &k)?);
            solution_json(&classify::classify_semiconjugacy(&u, *n, &a, &b)?)
        }
        Action::Symmetries { poly, field } => {
            let g = parse_poly(poly, &field_of(field)?)?;
            let syms = classify::symmetries_of(&g)?;
            json!({ "count": syms.len(), "symmetries": syms.iter().map(json::linear).collect::<Vec<_>>() })
        }
        Action::Gap { poly, field } => exact(&classify::gap_data(&parse_poly(poly, &field_of(field)?)?)?),
        Action::PeriodicPoints { map, period } => {
            let f = parse_rational_map(map)?;
            let pts = numeric::periodic_points(&f, *period, cmd.tol)?;
            let cycles = numeric::group_cycles(&f, &pts, cmd.tol.max(1e-7));
            let mut table = String::from("re,im,multiplier_re,multiplier_im,repelling,converged\n");
            for p in &pts {
                let z = p.point.value_or_inf();
                table += &format!(
                    "{:.16e},{:.16e},{:.16e},{:.16e},{},{}\n",
                    z.re, z.im, p.multiplier.re, p.multiplier.im, p.repelling, p.converged
                );
            }
            csv = Some(table);
            json!({
                "period": period,
                "count": pts.len(),
                "cycles": cycles.len(),
                "repelling_cycles": cycles.iter().filter(|c| c[0].repelling).count(),
                "points": pts.iter().map(|p| json!({
                    "z": point_value(&p.point),
                    "multiplier": complex(p.multiplier),
                    "repelling": p.repelling,
                    "converged": p.converged,
                })).collect::<Vec<_>>(),
            })
        }
        Action::SampleMeasure { map, samples, burn_in } => {
            let f = parse_rational_map(map)?;
            let mu = numeric::sample_invariant_measure(&f, *samples, *burn_in, cmd.seed)?;
            let text = mu.to_csv();
            let v = json!({ "samples": mu.len(), "seed": mu.seed, "csv": text });
            csv = Some(text);
            v
        }
        Action::PullbackMeasure { curve, map, coordinate, samples } => {
            let c = parse_curve(curve)?;
            let f = parse_rational_map(map)?;
            let mu = numeric::curve_pullback_measure(&c, &f, *coordinate, *samples, cmd.seed)?;
            let text = mu.to_csv();
            let v = json!({ "samples": mu.len(), "seed": mu.seed, "perturbed": mu.perturbed, "csv": text });
            csv = Some(text);
            v
        }
        Action::Discrepancy { first, second } => {
            let read = |p: &PathBuf| {
                std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
            };
            let (a, b) = (read(first)?, read(second)?);
            let columns = |t: &str| {
                t.lines()
                    .find(|l| !l.trim().is_empty() && !l.starts_with('#'))
                    .map_or(0, |l| l.split(',').count())
            };
            let d = match (columns(&a), columns(&b)) {
                (3, 3) => numeric::measure_discrepancy(&EmpiricalMeasure::from_csv(&a)?, &EmpiricalMeasure::from_csv(&b)?)?,
                (5, 5) => numeric::curve_measure_discrepancy(&CurveMeasure::from_csv(&a)?, &CurveMeasure::from_csv(&b)?)?,
                (x, y) => return Err(CliError::Invalid(format!("incompatible measure files ({x} and {y} columns)"))),
            };
            json!({
                "discrepancy": d,
                "agree": d < config::AGREE_THRESHOLD,
                "differ": d > config::DIFFER_THRESHOLD,
            })
        }
        Action::Poincare { map, x0, order } => {
            let f = parse_rational_map(map)?;
            let z = nearest_fixed_point(&f, parse_complex(x0)?, cmd.tol)?;
            let s = numeric::poincare_series(&f, z, *order)?;
            json!({
                "x0": complex(z),
                "lambda": complex(s.lambda),
                "coefficients": s.coefficients.iter().map(|c| complex(*c)).collect::<Vec<_>>(),
                "radius": s.radius,
                "residual": s.residual,
            })
        }
        Action::GermCheck { f, g, n, m, x0, h, radius, grid } => {
            let (f, g) = (parse_rational_map(f)?, parse_rational_map(g)?);
            let z = nearest_fixed_point(&f, parse_complex(x0)?, cmd.tol)?;
            let hp = parse_poly(h, &Field::Rational)?;
            let coeffs: Vec<Complex64> = hp
                .rational_coeffs()
                .expect("rational")
                .iter()
                .map(|q| Complex64::new(num_traits::ToPrimitive::to_f64(q).unwrap_or(f64::NAN), 0.0))
                .collect();
            let germ = numeric::Germ::from_polynomial(z, &coeffs);
            let r = numeric::germ_equality_residual(&f, &g, *n, *m, &germ, *radius, *grid)?;
            json!({ "x0": complex(z), "residual": r, "radius": radius, "grid": grid })
        }
        Action::JuliaRender { map, resolution, iterations } => {
            let f = parse_rational_map(map)?;
            let img = numeric::julia_render(&f, *resolution, *iterations);
            let mean = img.pixels.iter().map(|&p| p as f64).sum::<f64>() / img.pixels.len() as f64;
            let v = json!({ "width": img.width, "height": img.height, "mean": mean });
            image = Some(img);
            v
        }
        Action::Experiment { name, samples } => {
            let mut spec = ExperimentSpec::named(name)?;
            spec.seed = cmd.seed;
            spec.samples = *samples;
            let report = run_experiment(&spec)?;
            failures = report.failures;
            exact(&report)
        }
    };
    Ok(Output {
        document: json!({ "command": cmd.record(), "result": result }),
        csv,
        image,
        failures,
    })
}
