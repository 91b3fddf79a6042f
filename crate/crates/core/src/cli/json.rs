//! Canonical JSON forms for exact values.

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::algebra::{Field, FieldElement, LinearPoly, Poly};
use crate::heights::{HeightValue, RationalMap};

/// `"p/q"`, or `"p"` for integers.
pub fn rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn field(k: &Field) -> Value {
    match k {
        Field::Rational => json!({ "kind": "Q" }),
        Field::Extension(e) => json!({
            "kind": "extension",
            "modulus": e.modulus().iter().map(rational).collect::<Vec<_>>(),
        }),
    }
}

/// A rational as a string; an extension element as its coefficient list in t.
pub fn element(x: &FieldElement) -> Value {
    match x.as_rational() {
        Some(q) if x.field().is_rational() => Value::String(rational(&q)),
        _ => Value::Array(x.coefficients().iter().map(|q| Value::String(rational(q))).collect()),
    }
}

/// `{"field": …, "coeffs": […], "text": …}` with coefficients from degree 0 up.
pub fn poly(p: &Poly) -> Value {
    json!({
        "field": field(p.field()),
        "coeffs": p.coeffs().iter().map(element).collect::<Vec<_>>(),
        "text": p.to_string(),
    })
}

pub fn linear(l: &LinearPoly) -> Value {
    json!({ "a": element(l.a()), "b": element(l.b()), "text": l.to_string() })
}

pub fn map(f: &RationalMap) -> Value {
    json!({
        "numerator": poly(f.numerator()),
        "denominator": poly(f.denominator()),
        "degree": f.degree(),
        "text": super::parse::format_map(f),
    })
}

pub fn height(h: &HeightValue) -> Value {
    json!({
        "value": h.value,
        "error": h.error_radius,
        "places": h
            .per_place
            .iter()
            .map(|(v, l)| json!({ "v": v.to_string(), "lambda": l }))
            .collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_form() {
        let p = Poly::from_ints(&[0, -1, 2]);
        let v = poly(&p);
        assert_eq!(v["field"]["kind"], "Q");
        assert_eq!(v["coeffs"], json!(["0", "-1", "2"]));
        let q = Poly::from_rationals(vec![BigRational::new(1.into(), 3.into())]);
        assert_eq!(poly(&q)["coeffs"], json!(["1/3"]));
    }

    #[test]
    fn extension_form() {
        let k = Field::extension_from_ints(&[1, 0, 1]).unwrap();
        assert_eq!(field(&k), json!({ "kind": "extension", "modulus": ["1", "0", "1"] }));
        assert_eq!(element(&k.generator().unwrap()), json!(["0", "1"]));
    }
}
