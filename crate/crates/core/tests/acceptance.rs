use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use splitdyn::algebra::{compose, engstrom_left, engstrom_right, iterate, FieldElement, LinearPoly, Poly};
use splitdyn::classify::{
    classify_solution, classify_unicritical_pair, gap_data, generate_semiconjugacy, solves, PairingVerdict,
    SemiconjugacySolution, UnicriticalMap,
};
use splitdyn::cli::parse::{parse_curve, parse_rational_map};
use splitdyn::cli::{run_experiment, ExperimentSpec, DEGREE_BUDGET, ENUMERATION_BUDGET};
use splitdyn::curves::{curve_preperiodicity, is_invariant, preperiodic_pairs_on_curve, OrbitStatus, SplitEndo};
use splitdyn::heights::{canonical_height, preperiodic_points, product_formula_check, ProjPointQ, RationalMap};
use splitdyn::numeric::{germ_equality_residual, poincare_series, Germ};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn map(text: &str) -> RationalMap {
    parse_rational_map(text).unwrap()
}

fn random_rational(rng: &mut ChaCha8Rng, num: i64, den: i64) -> BigRational {
    rational(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

fn random_poly(rng: &mut ChaCha8Rng, max_degree: usize) -> Poly {
    let degree = rng.gen_range(1..=max_degree);
    let mut c: Vec<BigRational> = (0..degree).map(|_| random_rational(rng, 5, 3)).collect();
    let mut lead = BigRational::zero();
    while lead.is_zero() {
        lead = random_rational(rng, 3, 2);
    }
    c.push(lead);
    Poly::from_rationals(c)
}

/// Every r with r^{d−1} = 1 among p/q, |p|, q ≤ 3, by repeated multiplication.
fn brute_force_zeta(d: u32, c1: &BigRational, c2: &BigRational) -> Option<BigRational> {
    for q in 1..=3 {
        for p in -3..=3 {
            let r = rational(p, q);
            let mut pow = BigRational::one();
            for _ in 0..d - 1 {
                pow *= &r;
            }
            if pow.is_one() && &r * c1 == *c2 {
                return Some(r);
            }
        }
    }
    None
}

const GRID: [(i64, i64); 20] = [
    (-5, 1), (-4, 1), (-3, 1), (-5, 2), (-2, 1), (-1, 1), (-3, 4), (-2, 3), (-1, 2), (-1, 3),
    (1, 3), (1, 2), (2, 3), (3, 4), (1, 1), (2, 1), (5, 2), (3, 1), (4, 1), (5, 1),
];

fn unicritical_grid() -> Outcome {
    let (mut cases, mut paired, mut mismatches) = (0, 0, 0);
    for d1 in 2..=5u32 {
        for d2 in 2..=5u32 {
            for &(a, b) in &GRID {
                for &(p, q) in &GRID {
                    let (c1, c2) = (rational(a, b), rational(p, q));
                    let u1 = UnicriticalMap::new(d1, FieldElement::rational(c1.clone())).unwrap();
                    let u2 = UnicriticalMap::new(d2, FieldElement::rational(c2.clone())).unwrap();
                    if u1.is_exceptional() || u2.is_exceptional() {
                        continue;
                    }
                    cases += 1;
                    let verdict = classify_unicritical_pair(&u1, &u2).unwrap();
                    let expected = if d1 == d2 { brute_force_zeta(d1, &c1, &c2) } else { None };
                    let agree = match (&verdict, &expected) {
                        (PairingVerdict::Paired(z), Some(r)) => z.as_rational().as_ref() == Some(r),
                        (PairingVerdict::NotPaired, None) => true,
                        _ => false,
                    };
                    paired += usize::from(verdict.is_paired());
                    mismatches += usize::from(!agree);
                }
            }
        }
    }
    outcome(mismatches == 0, format!("{cases} cases, {paired} paired, {mismatches} mismatches"))
}

fn divisors(d: u32) -> Vec<u32> {
    (1..=d).filter(|k| d % k == 0).collect()
}

fn semiconjugacy_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    let (mut generated, mut failures) = (0, 0);
    while generated < 200 {
        let d = [2u32, 3, 4, 6][rng.gen_range(0..4)];
        let c = random_rational(&mut rng, 4, 3);
        let u = UnicriticalMap::new(d, FieldElement::rational(c)).unwrap();
        if u.is_exceptional() {
            continue;
        }
        let n = rng.gen_range(1..=2u32);
        let m = rng.gen_range(0..=2u32);
        let ds = divisors(d);
        let delta = ds[rng.gen_range(0..ds.len())];
        let mut a = BigRational::zero();
        while a.is_zero() {
            a = random_rational(&mut rng, 3, 3);
        }
        let l = LinearPoly::new(FieldElement::rational(a), FieldElement::rational(random_rational(&mut rng, 3, 3)))
            .unwrap();
        let sol = SemiconjugacySolution { m, delta, l };
        let (pa, pb) = generate_semiconjugacy(&u, n, m, delta, &sol.l).unwrap();
        generated += 1;
        let verifies = solves(&u, n, &pa, &pb).unwrap_or(false);
        let recovered = verifies && classify_solution(&u, n, &pa, &pb).ok() == Some(sol.canonical(&u));
        failures += usize::from(!recovered);
    }
    outcome(failures == 0, format!("{generated} pairs, {failures} failures"))
}

fn engstrom_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(74);
    let mut failures = 0;
    for _ in 0..300 {
        let a = random_poly(&mut rng, 3);
        let p = random_poly(&mut rng, 3);
        let d = random_poly(&mut rng, 2);
        let b = compose(&p, &d).unwrap();
        let c = compose(&a, &p).unwrap();
        let left = engstrom_left(&a, &b, &c, &d).ok() == Some(p.clone());
        let right = engstrom_right(&c, &d, &a, &b).ok() == Some(p.clone());
        failures += usize::from(!(left && right));
    }
    outcome(failures == 0, format!("300 triples, {failures} failures"))
}

fn gap_preservation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(72);
    let mut failures = 0;
    for _ in 0..100 {
        let big_d = rng.gen_range(2..=4usize);
        let gap = rng.gen_range(2..=big_d);
        let n = rng.gen_range(1..=3u32);
        let mut c: Vec<BigRational> = vec![BigRational::zero(); big_d + 1];
        for coeff in c.iter_mut().take(big_d - gap) {
            *coeff = random_rational(&mut rng, 4, 2);
        }
        while c[big_d].is_zero() {
            c[big_d] = random_rational(&mut rng, 3, 2);
        }
        while c[big_d - gap].is_zero() {
            c[big_d - gap] = random_rational(&mut rng, 3, 2);
        }
        let p = Poly::from_rationals(c);
        let before = gap_data(&p).unwrap().gap;
        let after = gap_data(&iterate(&p, n).unwrap()).unwrap().gap;
        failures += usize::from(before != Some(gap as u32) || after != Some(gap as u32));
    }
    outcome(failures == 0, format!("100 polynomials, {failures} failures"))
}

fn naive_bits(x: &ProjPointQ) -> u64 {
    x.max_abs().bits()
}

/// Preperiodic by exact iteration: an orbit repeats before its coordinates
/// exceed 256 bits or 40 steps pass.
fn brute_force_preperiodic(f: &RationalMap, x: &ProjPointQ) -> bool {
    let mut seen = vec![x.clone()];
    let mut y = x.clone();
    for _ in 0..40 {
        y = f.apply(&y);
        if seen.contains(&y) {
            return true;
        }
        if naive_bits(&y) > 256 {
            return false;
        }
        seen.push(y.clone());
    }
    false
}

fn height_checks() -> Outcome {
    let maps = ["x^2 - 1", "(x^2 + 1)/(2*x)", "x^3 - x", "x^2 - 2", "x^2 + x"];
    let mut rng = ChaCha8Rng::seed_from_u64(75);
    let mut worst = 0.0f64;
    for text in maps {
        let f = map(text);
        let d = f.degree() as f64;
        for _ in 0..10 {
            let x = ProjPointQ::from_rational(&random_rational(&mut rng, 50, 50));
            let h = canonical_height(&f, &x, 1e-10).unwrap().value;
            let hf = canonical_height(&f, &f.apply(&x), 1e-10).unwrap().value;
            worst = worst.max((hf - d * h).abs());
        }
    }
    let mut zero_failures = 0;
    let mut preperiodic_total = 0;
    for text in maps {
        let f = map(text);
        let enumerated = preperiodic_points(&f, 0.0, ENUMERATION_BUDGET).unwrap();
        let mut box_points = vec![ProjPointQ::infinity()];
        for q in 1..=12i64 {
            for p in -12..=12i64 {
                let x = ProjPointQ::from_rational(&rational(p, q));
                if !box_points.contains(&x) {
                    box_points.push(x);
                }
            }
        }
        for x in &box_points {
            let pre = brute_force_preperiodic(&f, x);
            let h = canonical_height(&f, x, 1e-10).unwrap().value;
            preperiodic_total += usize::from(pre);
            let consistent = pre == (h.abs() <= 1e-8) && pre == enumerated.points.contains(x);
            zero_failures += usize::from(!consistent);
        }
    }
    outcome(
        worst <= 1e-6 && zero_failures == 0,
        format!("max |h(f(x)) - d h(x)| = {worst:.2e}; {preperiodic_total} preperiodic points, {zero_failures} mismatches"),
    )
}

fn product_formula() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(76);
    let mut failures = 0;
    for _ in 0..1000 {
        let mut q = BigRational::zero();
        while q.is_zero() {
            q = rational(rng.gen_range(-1_000_000_000..=1_000_000_000), rng.gen_range(1..=1_000_000_000));
        }
        failures += usize::from(!product_formula_check(&q).unwrap().exact);
    }
    outcome(failures == 0, format!("1000 rationals, {failures} inexact"))
}

fn transfer() -> Outcome {
    let cases = [("x - y", "x^2 - 1", "x^2 - 1"), ("y - x^2 + 1", "x^2 - 1", "x^2 - 1"), ("x + y", "x^3 + 1", "x^3 - 1")];
    let mut parts = Vec::new();
    let mut passed = true;
    for (curve, f, g) in cases {
        let c = parse_curve(curve).unwrap();
        let (f, g) = (map(f), map(g));
        let invariant = is_invariant(&c, &SplitEndo::new(f.clone(), g.clone(), 1, 1).unwrap()).unwrap();
        let r = preperiodic_pairs_on_curve(&c, &f, &g, ENUMERATION_BUDGET).unwrap();
        let failures = r.transfer_failures.len() + r.reverse_failures.len();
        passed &= invariant && failures == 0 && !r.truncated;
        parts.push(format!("{curve}: {} pairs, {failures} failures", r.pairs.len()));
    }
    outcome(passed, parts.join("; "))
}

fn measures() -> Outcome {
    let report = run_experiment(&ExperimentSpec::named("prop42-diagonal").unwrap()).unwrap();
    let parts: Vec<String> = report
        .checks
        .iter()
        .filter_map(|c| c.detail.get("discrepancy").map(|d| format!("{} {:.4}", c.name, d.as_f64().unwrap())))
        .collect();
    outcome(report.failures == 0, format!("N = 10^4; {}", parts.join(", ")))
}

fn poincare() -> Outcome {
    let s = poincare_series(&map("x^2"), Complex64::new(1.0, 0.0), 10).unwrap();
    let mut fact = 1.0;
    let mut worst = 0.0f64;
    for (k, c) in s.coefficients.iter().enumerate() {
        fact *= (k + 1) as f64;
        worst = worst.max((c - 1.0 / fact).norm());
    }
    let one = Complex64::new(1.0, 0.0);
    let r = germ_equality_residual(&map("x^2"), &map("x^4"), 2, 1, &Germ::identity(one), 0.1, 16).unwrap();
    outcome(
        s.coefficients.len() == 10 && worst < 1e-10 && r < 1e-12,
        format!("max |s_k - 1/k!| = {worst:.2e}, germ residual = {r:.2e}"),
    )
}

fn curve_orbits() -> Outcome {
    let f = map("x^2 - 1");
    let phi = SplitEndo::new(f.clone(), f, 1, 1).unwrap();
    let mut passed = true;
    let mut parts = Vec::new();
    for curve in ["x - y", "y - x^2 + 1"] {
        let r = curve_preperiodicity(&parse_curve(curve).unwrap(), &phi, 3, DEGREE_BUDGET).unwrap();
        passed &= r.status == OrbitStatus::Preperiodic { preperiod: 0, period: 1 };
        parts.push(format!("{curve}: {:?}", r.status));
    }
    let mono = SplitEndo::new(map("x^2"), map("x^3"), 1, 1).unwrap();
    let r = curve_preperiodicity(&parse_curve("x - y").unwrap(), &mono, 3, DEGREE_BUDGET).unwrap();
    let predicted: Vec<(u32, u32)> = (0..=3).map(|k| (3u32.pow(k), 2u32.pow(k))).collect();
    passed &= matches!(r.status, OrbitStatus::Undecided { .. }) && r.bidegrees == predicted;
    parts.push(format!("(x^2, x^3) diagonal: bidegrees {:?}", r.bidegrees));
    outcome(passed, parts.join("; "))
}

#[test]
fn acceptance_suite() {
    let criteria: [(&str, Option<u64>, fn() -> Outcome); 10] = [
        ("unicritical pairing grid", Some(5), unicritical_grid),
        ("semiconjugacy round trip", Some(60), semiconjugacy_round_trip),
        ("decomposition oracle", None, engstrom_oracle),
        ("gap preserved under iteration", None, gap_preservation),
        ("height functional equation and zeros", Some(30), height_checks),
        ("product formula", None, product_formula),
        ("preperiodic transfer on invariant curves", Some(60), transfer),
        ("pullback measures on curves", Some(120), measures),
        ("Poincare series and germ residual", None, poincare),
        ("curve orbits", None, curve_orbits),
    ];
    let mut out = std::io::stdout();
    let mut failed = Vec::new();
    for (k, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|e| outcome(false, format!("panicked: {:?}", e.downcast_ref::<String>())));
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|s| elapsed < Duration::from_secs(s));
        let passed = result.passed && in_time;
        let budget = limit.map_or(String::new(), |s| format!(" (limit {s} s)"));
        writeln!(
            out,
            "{} {:>2} {name}: {}; {:.2} s{budget}",
            if passed { "PASS" } else { "FAIL" },
            k + 1,
            result.detail,
            elapsed.as_secs_f64()
        )
        .unwrap();
        if !passed {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
