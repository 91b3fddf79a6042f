use std::process::{Command, Output};

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use serde_json::Value;
use splitdyn::algebra::{Field, Poly};
use splitdyn::cli::parse::{parse_curve, parse_poly, parse_rational_map, ParseError};

fn coefficient() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn polynomials_round_trip(coeffs in prop::collection::vec(coefficient(), 1..9)) {
        let p = Poly::from_rationals(coeffs);
        let back = parse_poly(&p.to_string(), &Field::Rational)?;
        prop_assert_eq!(back, p);
    }
}

#[test]
fn extension_polynomials_round_trip() {
    let k = Field::extension_from_ints(&[1, 0, 1]).unwrap();
    for text in ["t*x^2 + 1", "(1 + 2t)x^3 - t", "x^4 + 1/2*t*x"] {
        let p = parse_poly(text, &k).unwrap();
        assert_eq!(parse_poly(&p.to_string(), &k).unwrap(), p);
    }
}

#[test]
fn maps_and_curves_round_trip() {
    for text in ["x^2 - 1", "(x^2 + 1)/(2*x)", "(3x - 1)/(x^2 + x + 1)"] {
        let f = parse_rational_map(text).unwrap();
        assert_eq!(parse_rational_map(&splitdyn::cli::parse::format_map(&f)).unwrap(), f);
    }
    for text in ["x - y", "y = x^2 - 1", "x*y + 3x - y^2/2 + 1"] {
        let c = parse_curve(text).unwrap();
        assert_eq!(parse_curve(&c.to_string()).unwrap(), c);
    }
}

#[test]
fn parse_errors_carry_positions() {
    let err: ParseError = parse_poly("x^2 + * 3", &Field::Rational).unwrap_err();
    assert_eq!((err.line, err.column), (1, 7));
    assert!(parse_poly("x^-2", &Field::Rational).is_err());
    assert!(parse_poly("z^2", &Field::Rational).is_err());
    assert!(parse_rational_map("1/0").is_err());
}

fn splitdyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_splitdyn")).args(args).env_remove("SPLITDYN_SEED").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn every_subcommand_runs() {
    let cases: &[&[&str]] = &[
        &["height", "--map", "x^2 - 1", "--point", "1/2"],
        &["preperiodic", "--map", "x^2 - 1", "--point", "-1"],
        &["orbit", "--map", "x^2 - 1", "--point", "1/2", "--steps", "3"],
        &["enumerate-preperiodic", "--map", "x^2 - 1"],
        &["curve-image", "--curve", "y - x^2", "--f", "x^2", "--g", "x^3"],
        &["curve-invariant", "--curve", "x - y", "--f", "x^2 - 1", "--g", "x^2 - 1"],
        &["curve-orbit", "--curve", "x - y", "--f", "x^2", "--g", "x^3", "--max-steps", "3"],
        &["ms-curve", "--f", "x^2 - 1", "--n", "1", "--m", "1", "--l", "x"],
        &["curve-preperiodic-pairs", "--curve", "x - y", "--f", "x^2 - 1", "--g", "x^2 - 1"],
        &["classify-pair", "--d1", "3", "--c1", "1", "--d2", "3", "--c2", "-1"],
        &["semiconj-generate", "--d", "2", "--c", "1", "--n", "1", "--m", "1", "--delta", "1", "--l", "x"],
        &["symmetries", "--poly", "x^4 + 1"],
        &["gap", "--poly", "x^6 + x^2"],
        &["periodic-points", "--map", "x^2 - 1", "--period", "2"],
        &["sample-measure", "--map", "x^2 - 1", "--samples", "100"],
        &["pullback-measure", "--curve", "x - y", "--map", "x^2 - 1", "--coordinate", "1", "--samples", "100"],
        &["poincare", "--map", "x^2", "--x0", "1", "--order", "6"],
        &["germ-check", "--f", "x^2 + 1", "--g", "x^2 - 1", "--x0", "0.5,0.866"],
        &["julia-render", "--map", "x^2 - 1", "--resolution", "16"],
    ];
    for args in cases {
        let out = splitdyn(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        if args[0] != "julia-render" {
            assert_eq!(json(&out)["command"]["action"].as_object().unwrap().keys().next().unwrap(), args[0]);
        }
    }
}

#[test]
fn errors_exit_with_two() {
    for args in [
        &["height", "--map", "x^2 +", "--point", "1"][..],
        &["preperiodic", "--map", "x^2 - 1", "--point", "1/0"],
        &["experiment", "nonexistent"],
        &["curve-image", "--curve", "x - 1", "--f", "x^2", "--g", "x^2"],
    ] {
        let out = splitdyn(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn budget_is_enforced() {
    let out = splitdyn(&["--budget-bits", "8", "ms-curve", "--f", "x^2 - 1", "--n", "3", "--m", "1", "--l", "x"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reruns_are_byte_identical() {
    let args = ["--seed", "7", "sample-measure", "--map", "x^2 - 1", "--samples", "500", "--csv"];
    let a = splitdyn(&args);
    let b = splitdyn(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let one = Command::new(env!("CARGO_BIN_EXE_splitdyn")).args(["--threads", "1"]).args(args).output().unwrap();
    let text = String::from_utf8(a.stdout).unwrap();
    let body = |t: &str| t.lines().skip(1).map(String::from).collect::<Vec<_>>();
    assert_eq!(body(&String::from_utf8(one.stdout).unwrap()), body(&text));
    let record: Value = serde_json::from_str(text.lines().next().unwrap().trim_start_matches("# command: ")).unwrap();
    assert_eq!(record["seed"], 7);
    let env = Command::new(env!("CARGO_BIN_EXE_splitdyn"))
        .args(&args[2..])
        .env("SPLITDYN_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(env.stdout).unwrap(), text);
}

#[test]
fn julia_file_and_document() {
    let dir = std::env::temp_dir().join(format!("splitdyn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("j.pgm");
    let out = splitdyn(&["julia-render", "--map", "x^2 - 1", "--resolution", "32", "-o", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let bytes = std::fs::read(&path).unwrap();
    let img = splitdyn::numeric::GrayImage::from_pgm(&bytes).unwrap();
    assert_eq!((img.width, img.height), (32, 32));
    assert_eq!(json(&out)["command"]["action"]["julia-render"]["resolution"], 32);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn experiments_pass() {
    for name in ["thm13-grid", "lemma61-transfer"] {
        let out = splitdyn(&["experiment", name]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert_eq!(json(&out)["result"]["failures"], 0);
    }
}
