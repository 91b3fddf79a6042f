//! Expressions over Q or Q[t]/(m): integer literals, the variables `x`, `y`
//! and `t`, `+ - * / ^`, parentheses and implicit multiplication (`2x`,
//! `3(x+1)`, `x y`). An `=` at the top level of a curve moves the right side
//! to the left.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::{Field, FieldElement, LinearPoly, Poly};
use crate::curves::BiCurve;
use crate::heights::RationalMap;

const MAX_EXPONENT: u32 = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("unexpected character '{0}'")]
    UnexpectedChar(char),
    #[error("unexpected {0}")]
    UnexpectedToken(String),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported symbol '{0}'")]
    UnsupportedSymbol(String),
    #[error("exponent must be an integer literal in 0..={MAX_EXPONENT}")]
    BadExponent,
    #[error("expected a polynomial, found a quotient with nonconstant denominator")]
    NotPolynomial,
    #[error("{0}")]
    Invalid(String),
}

/// A parse failure at a 1-based line and column.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{kind} at line {line}, column {column}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
    /// Byte offset into the input.
    pub offset: usize,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    offset: usize,
}

fn locate(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn lex(text: &str) -> Result<Vec<Spanned>, (ParseErrorKind, usize)> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
        } else if c.is_ascii_digit() {
            let mut end = i;
            while let Some(&(j, d)) = it.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = j + 1;
                it.next();
            }
            let n: BigInt = text[i..end].parse().expect("digits");
            out.push(Spanned { tok: Tok::Num(n), offset: i });
        } else if c.is_alphabetic() {
            // identifiers are single letters so that `xy` reads as x·y
            let end = i + c.len_utf8();
            it.next();
            out.push(Spanned { tok: Tok::Ident(text[i..end].to_string()), offset: i });
        } else if "+-*/^()=".contains(c) {
            out.push(Spanned { tok: Tok::Op(c), offset: i });
            it.next();
        } else if c == '−' {
            out.push(Spanned { tok: Tok::Op('-'), offset: i });
            it.next();
        } else {
            return Err((ParseErrorKind::UnexpectedChar(c), i));
        }
    }
    Ok(out)
}

/// Sparse polynomial in (x, y, t) with rational coefficients; t is reduced
/// later by the field.
type Mono = (u32, u32, u32);

#[derive(Clone, Debug, PartialEq)]
struct Sparse(BTreeMap<Mono, BigRational>);

impl Sparse {
    fn constant(q: BigRational) -> Sparse {
        let mut m = BTreeMap::new();
        if !q.is_zero() {
            m.insert((0, 0, 0), q);
        }
        Sparse(m)
    }

    fn var(mono: Mono) -> Sparse {
        let mut m = BTreeMap::new();
        m.insert(mono, BigRational::from_integer(1.into()));
        Sparse(m)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn as_constant(&self) -> Option<BigRational> {
        match self.0.len() {
            0 => Some(BigRational::zero()),
            1 => self.0.get(&(0, 0, 0)).cloned(),
            _ => None,
        }
    }

    fn add(&self, o: &Sparse, sign: i32) -> Sparse {
        let mut m = self.0.clone();
        for (k, v) in &o.0 {
            let e = m.entry(*k).or_insert_with(BigRational::zero);
            if sign > 0 {
                *e += v;
            } else {
                *e -= v;
            }
        }
        m.retain(|_, v| !v.is_zero());
        Sparse(m)
    }

    fn mul(&self, o: &Sparse) -> Sparse {
        let mut m: BTreeMap<Mono, BigRational> = BTreeMap::new();
        for (a, x) in &self.0 {
            for (b, y) in &o.0 {
                *m.entry((a.0 + b.0, a.1 + b.1, a.2 + b.2)).or_insert_with(BigRational::zero) += x * y;
            }
        }
        m.retain(|_, v| !v.is_zero());
        Sparse(m)
    }

    fn scale(&self, q: &BigRational) -> Sparse {
        let mut m = self.0.clone();
        for v in m.values_mut() {
            *v *= q;
        }
        m.retain(|_, v| !v.is_zero());
        Sparse(m)
    }

    fn uses(&self, var: usize) -> bool {
        self.0.keys().any(|k| [k.0, k.1, k.2][var] > 0)
    }
}

/// A quotient of sparse polynomials.
#[derive(Clone, Debug)]
struct Frac {
    num: Sparse,
    den: Sparse,
}

impl Frac {
    fn poly(p: Sparse) -> Frac {
        Frac { num: p, den: Sparse::constant(BigRational::from_integer(1.into())) }
    }
}

struct Parser<'a> {
    text: &'a str,
    toks: Vec<Spanned>,
    pos: usize,
    allowed: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn err(&self, kind: ParseErrorKind, offset: usize) -> ParseError {
        let (line, column) = locate(self.text, offset);
        ParseError { kind, line, column, offset }
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.text.len(), |t| t.offset)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn expr(&mut self) -> Result<Frac, ParseError> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek() {
            let sign = if *c == '+' { 1 } else { -1 };
            self.pos += 1;
            let rhs = self.term()?;
            acc = Frac {
                num: acc.num.mul(&rhs.den).add(&rhs.num.mul(&acc.den), sign),
                den: acc.den.mul(&rhs.den),
            };
        }
        Ok(acc)
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')))
    }

    fn term(&mut self) -> Result<Frac, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = Frac { num: acc.num.mul(&rhs.num), den: acc.den.mul(&rhs.den) };
                }
                Some(Tok::Op('/')) => {
                    let at = self.here();
                    self.pos += 1;
                    let rhs = self.unary()?;
                    if rhs.num.is_zero() {
                        return Err(self.err(ParseErrorKind::DivisionByZero, at));
                    }
                    acc = Frac { num: acc.num.mul(&rhs.den), den: acc.den.mul(&rhs.num) };
                }
                _ if self.starts_factor() => {
                    let rhs = self.power()?;
                    acc = Frac { num: acc.num.mul(&rhs.num), den: acc.den.mul(&rhs.den) };
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Frac, ParseError> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                let v = self.unary()?;
                Ok(Frac { num: v.num.scale(&BigRational::from_integer((-1).into())), den: v.den })
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Frac, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let at = self.here();
            let e = match self.toks.get(self.pos).map(|t| t.tok.clone()) {
                Some(Tok::Num(n)) => n.to_u32().filter(|&e| e <= MAX_EXPONENT),
                Some(Tok::Op('(')) => {
                    // allow x^(3)
                    match (self.toks.get(self.pos + 1).map(|t| &t.tok), self.toks.get(self.pos + 2).map(|t| &t.tok)) {
                        (Some(Tok::Num(n)), Some(Tok::Op(')'))) => {
                            let e = n.to_u32().filter(|&e| e <= MAX_EXPONENT);
                            self.pos += 2;
                            e
                        }
                        _ => None,
                    }
                }
                None => return Err(self.err(ParseErrorKind::UnexpectedEnd, at)),
                _ => None,
            };
            let e = e.ok_or_else(|| self.err(ParseErrorKind::BadExponent, at))?;
            self.pos += 1;
            let mut num = Sparse::constant(BigRational::from_integer(1.into()));
            let mut den = num.clone();
            for _ in 0..e {
                num = num.mul(&base.num);
                den = den.mul(&base.den);
            }
            return Ok(Frac { num, den });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Frac, ParseError> {
        let at = self.here();
        let tok = match self.toks.get(self.pos) {
            Some(t) => t.tok.clone(),
            None => return Err(self.err(ParseErrorKind::UnexpectedEnd, at)),
        };
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(Frac::poly(Sparse::constant(BigRational::from_integer(n)))),
            Tok::Ident(name) => {
                if !self.allowed.contains(&name.as_str()) {
                    return Err(self.err(ParseErrorKind::UnsupportedSymbol(name), at));
                }
                let mono = match name.as_str() {
                    "x" => (1, 0, 0),
                    "y" => (0, 1, 0),
                    _ => (0, 0, 1),
                };
                Ok(Frac::poly(Sparse::var(mono)))
            }
            Tok::Op('(') => {
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    Some(t) => {
                        let d = describe(t);
                        Err(self.err(ParseErrorKind::UnexpectedToken(d), self.here()))
                    }
                    None => Err(self.err(ParseErrorKind::UnexpectedEnd, self.here())),
                }
            }
            t => Err(self.err(ParseErrorKind::UnexpectedToken(describe(&t)), at)),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("number {n}"),
        Tok::Ident(s) => format!("symbol '{s}'"),
        Tok::Op(c) => format!("'{c}'"),
    }
}

fn parse_frac(text: &str, allowed: &[&str], allow_equation: bool) -> Result<Frac, ParseError> {
    let toks = lex(text).map_err(|(kind, offset)| {
        let (line, column) = locate(text, offset);
        ParseError { kind, line, column, offset }
    })?;
    let mut p = Parser { text, toks, pos: 0, allowed };
    if p.toks.is_empty() {
        return Err(p.err(ParseErrorKind::UnexpectedEnd, 0));
    }
    let mut v = p.expr()?;
    if allow_equation {
        if let Some(Tok::Op('=')) = p.peek() {
            p.pos += 1;
            let rhs = p.expr()?;
            v = Frac {
                num: v.num.mul(&rhs.den).add(&rhs.num.mul(&v.den), -1),
                den: v.den.mul(&rhs.den),
            };
        }
    }
    if let Some(t) = p.peek() {
        let d = describe(t);
        return Err(p.err(ParseErrorKind::UnexpectedToken(d), p.here()));
    }
    Ok(v)
}

fn invalid(text: &str, msg: String) -> ParseError {
    let _ = text;
    ParseError { kind: ParseErrorKind::Invalid(msg), line: 1, column: 1, offset: 0 }
}

fn allowed_for(field: &Field) -> &'static [&'static str] {
    if field.is_rational() {
        &["x"]
    } else {
        &["x", "t"]
    }
}

/// Collects a sparse polynomial in (x, t) into a polynomial in x over `field`.
fn to_poly(s: &Sparse, field: &Field, text: &str) -> Result<Poly, ParseError> {
    let deg = s.0.keys().map(|k| k.0).max().unwrap_or(0) as usize;
    let mut coeffs: Vec<Vec<BigRational>> = vec![Vec::new(); deg + 1];
    for (&(i, _, k), c) in &s.0 {
        let v = &mut coeffs[i as usize];
        if v.len() <= k as usize {
            v.resize(k as usize + 1, BigRational::zero());
        }
        v[k as usize] += c;
    }
    let elems: Result<Vec<FieldElement>, _> = coeffs
        .into_iter()
        .map(|c| element_from_t_poly(field, c))
        .collect();
    let elems = elems.map_err(|e| invalid(text, e.to_string()))?;
    Poly::new(field, elems).map_err(|e| invalid(text, e.to_string()))
}

fn element_from_t_poly(field: &Field, c: Vec<BigRational>) -> Result<FieldElement, crate::algebra::AlgebraError> {
    if field.is_rational() {
        return field.element(c);
    }
    // Horner in t reduces powers beyond the field degree
    let t = field.generator()?;
    let mut acc = field.zero();
    for q in c.into_iter().rev() {
        acc = &(&acc * &t) + &field.from_rational(q);
    }
    Ok(acc)
}

/// A numerator/denominator pair over `field`.
pub fn parse_rational_function(text: &str, field: &Field) -> Result<(Poly, Poly), ParseError> {
    let f = parse_frac(text, allowed_for(field), false)?;
    let num = to_poly(&f.num, field, text)?;
    let den = to_poly(&f.den, field, text)?;
    if den.is_zero() {
        return Err(invalid(text, "denominator vanishes in the field".into()));
    }
    // normalize so that a constant denominator is 1
    if den.is_constant() {
        let inv = den.leading().inv().map_err(|e| invalid(text, e.to_string()))?;
        let num = num.scale(&inv).map_err(|e| invalid(text, e.to_string()))?;
        return Ok((num, Poly::constant(field.one())));
    }
    Ok((num, den))
}

pub fn parse_poly(text: &str, field: &Field) -> Result<Poly, ParseError> {
    let (num, den) = parse_rational_function(text, field)?;
    if !den.is_constant() {
        return Err(ParseError { kind: ParseErrorKind::NotPolynomial, line: 1, column: 1, offset: 0 });
    }
    Ok(num)
}

pub fn parse_field_element(text: &str, field: &Field) -> Result<FieldElement, ParseError> {
    let allowed: &[&str] = if field.is_rational() { &[] } else { &["t"] };
    let f = parse_frac(text, allowed, false)?;
    let num = to_poly(&f.num, field, text)?;
    let den = to_poly(&f.den, field, text)?;
    let (n, d) = (num.coeff(0), den.coeff(0));
    n.try_div(&d).map_err(|_| {
        ParseError { kind: ParseErrorKind::DivisionByZero, line: 1, column: 1, offset: 0 }
    })
}

pub fn parse_rational(text: &str) -> Result<BigRational, ParseError> {
    let e = parse_field_element(text, &Field::Rational)?;
    Ok(e.as_rational().expect("rational field"))
}

/// `a*x + b` with a ≠ 0.
pub fn parse_linear(text: &str, field: &Field) -> Result<LinearPoly, ParseError> {
    let p = parse_poly(text, field)?;
    LinearPoly::from_poly(&p).map_err(|e| invalid(text, e.to_string()))
}

/// A modulus such as `t^2 + 1` for Q[t]/(m).
pub fn parse_field(text: &str) -> Result<Field, ParseError> {
    let f = parse_frac(text, &["t"], false)?;
    let c = f.den.as_constant().ok_or_else(|| invalid(text, "modulus must be a polynomial".into()))?;
    let deg = f.num.0.keys().map(|k| k.2).max().unwrap_or(0) as usize;
    let mut m = vec![BigRational::zero(); deg + 1];
    for (k, v) in &f.num.0 {
        m[k.2 as usize] += v / &c;
    }
    Field::extension(m).map_err(|e| invalid(text, e.to_string()))
}

/// A parsed map: a polynomial, or a rational map with nonconstant denominator.
#[derive(Clone, Debug, PartialEq)]
pub enum ParsedMap {
    Poly(Poly),
    Rational(RationalMap),
}

impl ParsedMap {
    /// The map as a rational map over Q (polynomials included).
    pub fn to_rational_map(&self) -> Result<RationalMap, crate::heights::HeightError> {
        match self {
            ParsedMap::Poly(p) => RationalMap::from_poly(p),
            ParsedMap::Rational(r) => Ok(r.clone()),
        }
    }
}

impl fmt::Display for ParsedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParsedMap::Poly(p) => write!(f, "{p}"),
            ParsedMap::Rational(r) => write!(f, "{}", format_map(r)),
        }
    }
}

/// Parses a map over Q. A constant denominator yields a polynomial.
pub fn parse_map(text: &str) -> Result<ParsedMap, ParseError> {
    let (num, den) = parse_rational_function(text, &Field::Rational)?;
    if den.is_constant() {
        return Ok(ParsedMap::Poly(num));
    }
    RationalMap::new(num, den)
        .map(ParsedMap::Rational)
        .map_err(|e| invalid(text, e.to_string()))
}

/// A rational map of degree at least 2 over Q.
pub fn parse_rational_map(text: &str) -> Result<RationalMap, ParseError> {
    parse_map(text)?.to_rational_map().map_err(|e| invalid(text, e.to_string()))
}

/// `(N)/(D)`, or the polynomial alone when D = 1.
pub fn format_map(f: &RationalMap) -> String {
    if f.is_polynomial() {
        if let Some(p) = f.as_poly() {
            return p.to_string();
        }
    }
    format!("({})/({})", f.numerator(), f.denominator())
}

/// A curve C(x, y) = 0 over Q, given as an expression or an equation.
pub fn parse_curve(text: &str) -> Result<BiCurve, ParseError> {
    let f = parse_frac(text, &["x", "y"], true)?;
    let c = f
        .den
        .as_constant()
        .ok_or_else(|| ParseError { kind: ParseErrorKind::NotPolynomial, line: 1, column: 1, offset: 0 })?;
    if f.num.uses(2) {
        return Err(invalid(text, "curves are defined over Q".into()));
    }
    let terms: Vec<(u32, u32, BigRational)> =
        f.num.0.iter().map(|(k, v)| (k.0, k.1, v / &c)).collect();
    BiCurve::new(&terms).map_err(|e| invalid(text, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials() {
        assert_eq!(parse_poly("x^2 - 1", &Field::Rational).unwrap(), Poly::from_ints(&[-1, 0, 1]));
        assert_eq!(parse_poly("2x(x+1)", &Field::Rational).unwrap(), Poly::from_ints(&[0, 2, 2]));
        assert_eq!(parse_poly("(x^2+1)^2", &Field::Rational).unwrap(), Poly::from_ints(&[1, 0, 2, 0, 1]));
        assert_eq!(parse_poly("-x^2", &Field::Rational).unwrap(), Poly::from_ints(&[0, 0, -1]));
        let p = parse_poly("1/2*x + 3/4", &Field::Rational).unwrap();
        assert_eq!(p.to_string(), "1/2*x + 3/4");
    }

    #[test]
    fn rational_maps() {
        match parse_map("(x^2+1)/(2x)").unwrap() {
            ParsedMap::Rational(f) => {
                assert_eq!(f.degree(), 2);
                assert_eq!(f.resultant().magnitude(), &num_bigint::BigUint::from(4u32));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_map("x^2 - 1").unwrap(), ParsedMap::Poly(_)));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_map("x^2 + 1/0").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::DivisionByZero);
        assert_eq!((e.line, e.column), (1, 8));
        let e = parse_map("x^2 + z").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnsupportedSymbol("z".into()));
        assert_eq!(e.column, 7);
        let e = parse_map("x^2 +\n (x").unwrap_err();
        assert_eq!((e.kind, e.line), (ParseErrorKind::UnexpectedEnd, 2));
        assert_eq!(parse_map("x ^ y").unwrap_err().kind, ParseErrorKind::BadExponent);
        assert_eq!(parse_map("x $ 1").unwrap_err().kind, ParseErrorKind::UnexpectedChar('$'));
    }

    #[test]
    fn extension_elements() {
        let k = parse_field("t^2 + 1").unwrap();
        let i = parse_field_element("t", &k).unwrap();
        assert_eq!(&i * &i, k.from_int(-1));
        let p = parse_poly("x^2 + t^3", &k).unwrap();
        assert_eq!(p.coeff(0), -&i);
        assert_eq!(parse_poly(&p.to_string(), &k).unwrap(), p);
        assert!(parse_poly("x + t", &Field::Rational).is_err());
    }

    #[test]
    fn curves() {
        assert_eq!(parse_curve("x - y").unwrap(), BiCurve::diagonal());
        assert_eq!(parse_curve("y = x^2 - 1").unwrap(), BiCurve::graph(&Poly::from_ints(&[-1, 0, 1])).unwrap());
        assert_eq!(parse_curve("x y - 1").unwrap(), BiCurve::from_int_terms(&[(1, 1, 1), (0, 0, -1)]).unwrap());
        let c = parse_curve("x^2 - 2xy + 3").unwrap();
        assert_eq!(parse_curve(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn linear_maps() {
        assert_eq!(parse_linear("-x + 3", &Field::Rational).unwrap(), LinearPoly::from_ints(-1, 3).unwrap());
        assert!(parse_linear("3", &Field::Rational).is_err());
    }
}
