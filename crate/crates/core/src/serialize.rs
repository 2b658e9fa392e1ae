//! Text, LaTeX and JSON forms of polynomials with field coefficients.
//!
//! Terms are always emitted in ascending lexicographic exponent order and
//! every coefficient is brought to canonical form first, so output is
//! byte-stable.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{ParamMonomial, ParamPoly, Scalar, Symbol};
use crate::laurent::{Exponent, LaurentPolynomial};

fn canonical(c: &Scalar, half: Option<Symbol>) -> Result<Scalar> {
    c.normalize(half)
}

fn x_part(e: &[i64], latex: bool) -> String {
    let mut parts = Vec::new();
    for (i, &a) in e.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let base = if latex { format!("x_{{{}}}", i + 1) } else { format!("x{}", i + 1) };
        parts.push(match (a, latex) {
            (1, _) => base,
            (_, true) => format!("{base}^{{{a}}}"),
            (_, false) => format!("{base}^{a}"),
        });
    }
    parts.join(" ")
}

// A coefficient needs parentheses unless it is a product of atoms and
// parenthesized groups.
fn needs_parens(s: &str) -> bool {
    let mut depth = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            ' ' | '+' | '/' if depth == 0 => return true,
            '-' | '\\' if depth == 0 && i > 0 => return true,
            _ => {}
        }
    }
    false
}

fn render(p: &LaurentPolynomial<Scalar>, half: Option<Symbol>, latex: bool) -> Result<String> {
    let mut out = String::new();
    for (e, c) in p.terms() {
        let c = canonical(c, half)?;
        if c.is_zero() {
            continue;
        }
        let (negative, c) = if c.num().leading().is_some_and(|(_, lc)| lc.is_negative()) {
            (true, c.neg())
        } else {
            (false, c)
        };
        let coef = if latex { c.render_latex() } else { c.render_text() };
        let xs = x_part(e, latex);
        let constant = xs.is_empty();
        let term = match (coef.as_str(), constant) {
            (_, true) => coef.clone(),
            ("1", false) => xs,
            (s, false) if !needs_parens(s) => format!("{s} {xs}"),
            (s, false) if latex => format!("\\left({s}\\right) {xs}"),
            (s, false) => format!("({s}) {xs}"),
        };
        let term = if constant && negative && needs_parens(&term) && !single_group(&term) {
            format!("({term})")
        } else {
            term
        };
        match (out.is_empty(), negative) {
            (true, false) => out.push_str(&term),
            (true, true) => {
                out.push('-');
                out.push_str(&term);
            }
            (false, false) => {
                out.push_str(" + ");
                out.push_str(&term);
            }
            (false, true) => {
                out.push_str(" - ");
                out.push_str(&term);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    Ok(out)
}

// `(...)` with the outer parentheses matching each other.
fn single_group(s: &str) -> bool {
    let mut depth = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 && i + 1 != s.len() {
                    return false;
                }
            }
            _ if depth == 0 => return false,
            _ => {}
        }
    }
    depth == 0 && !s.is_empty()
}

/// Plain-text rendering, e.g. `x2 + ((k-1)(k+1)/(k^4 q - 1)) x1`.
pub fn to_text(p: &LaurentPolynomial<Scalar>, half: Option<Symbol>) -> Result<String> {
    render(p, half, false)
}

/// LaTeX rendering of the right-hand side only.
pub fn to_latex(p: &LaurentPolynomial<Scalar>, half: Option<Symbol>) -> Result<String> {
    render(p, half, true)
}

/// A full LaTeX line `label = body`, e.g. for `E_{(0,1,0)}^{(1)}`.
pub fn latex_line(object: &str, mu: &[i64], n: i64, p: &LaurentPolynomial<Scalar>, half: Option<Symbol>) -> Result<String> {
    let mu: Vec<String> = mu.iter().map(|v| v.to_string()).collect();
    Ok(format!("{object}_{{({})}}^{{({n})}} = {}", mu.join(","), to_latex(p, half)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialDoc {
    pub c: String,
    pub pow: BTreeMap<String, i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientDoc {
    pub num: Vec<MonomialDoc>,
    pub den: Vec<MonomialDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub exp: Exponent,
    pub coeff: CoefficientDoc,
}

/// The JSON document for one computed polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyDocument {
    pub r: usize,
    pub n: i64,
    pub mu: Exponent,
    pub object: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub normalization: Option<String>,
    /// Basement permutation, one-line and 1-based.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub u: Option<Vec<usize>>,
    /// `q0` or `qinf` for limits.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub direction: Option<String>,
    pub terms: Vec<TermDoc>,
}

fn poly_doc(p: &ParamPoly) -> Vec<MonomialDoc> {
    // descending, the order in which polynomials print
    p.terms()
        .iter()
        .rev()
        .map(|(m, c)| MonomialDoc {
            c: c.to_string(),
            pow: Symbol::all()
                .filter(|&s| m.exponent(s) != 0)
                .map(|s| (s.name(), m.exponent(s)))
                .collect(),
        })
        .collect()
}

fn poly_from_doc(ms: &[MonomialDoc]) -> Result<ParamPoly> {
    let mut terms = Vec::with_capacity(ms.len());
    for m in ms {
        let c: BigRational = m
            .c
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational coefficient {:?}", m.c)))?;
        let mut mono = ParamMonomial::ONE;
        for (name, &e) in &m.pow {
            let s = Symbol::parse(name).ok_or_else(|| Error::Parse(format!("unknown symbol {name:?}")))?;
            mono = mono.mul(&ParamMonomial::var(s, e));
        }
        terms.push((mono, c));
    }
    Ok(ParamPoly::from_terms(terms))
}

impl PolyDocument {
    pub fn new(
        object: &str,
        mu: &[i64],
        n: i64,
        normalization: Option<&str>,
        p: &LaurentPolynomial<Scalar>,
        half: Option<Symbol>,
    ) -> Result<Self> {
        let mut terms = Vec::new();
        for (e, c) in p.terms() {
            let c = canonical(c, half)?;
            if c.is_zero() {
                continue;
            }
            terms.push(TermDoc {
                exp: e.clone(),
                coeff: CoefficientDoc { num: poly_doc(c.num()), den: poly_doc(c.den()) },
            });
        }
        Ok(PolyDocument {
            r: p.rank(),
            n,
            mu: mu.to_vec(),
            object: object.to_string(),
            normalization: normalization.map(str::to_string),
            u: None,
            direction: None,
            terms,
        })
    }

    pub fn polynomial(&self) -> Result<LaurentPolynomial<Scalar>> {
        let mut p = LaurentPolynomial::zero(self.r);
        for t in &self.terms {
            if t.exp.len() != self.r {
                return Err(Error::RankMismatch { expected: self.r, got: t.exp.len() });
            }
            let c = Scalar::new(poly_from_doc(&t.coeff.num)?, poly_from_doc(&t.coeff.den)?)?;
            p.add_term(t.exp.clone(), c);
        }
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("json: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_scalar;

    fn poly(terms: &[(&[i64], &str)]) -> LaurentPolynomial<Scalar> {
        let mut p = LaurentPolynomial::zero(terms[0].0.len());
        for (e, c) in terms {
            p.add_term(e.to_vec(), parse_scalar(c).unwrap());
        }
        p
    }

    #[test]
    fn text_examples() {
        let e010 = poly(&[(&[0, 1, 0], "1"), (&[1, 0, 0], "(1-k^2)/(1-q k^4)")]);
        assert_eq!(to_text(&e010, None).unwrap(), "x2 + ((k-1)(k+1)/(k^4 q - 1)) x1");
        let p = poly(&[(&[0, 0, 0], "k^6+2k^4+2k^2+1")]);
        assert_eq!(to_text(&p, None).unwrap().replace(' ', ""), "k^6+2k^4+2k^2+1");
        let p = poly(&[(&[2, 0, -1], "-k"), (&[0, 0, 0], "-1"), (&[1, 0, 0], "G1")]);
        assert_eq!(to_text(&p, None).unwrap(), "-1 + G1 x1 - k x1^2 x3^-1");
        assert_eq!(to_text(&LaurentPolynomial::zero(2), None).unwrap(), "0");
        let p = poly(&[(&[0, 1], "1"), (&[1, 0], "k^2-1")]);
        assert_eq!(to_text(&p, None).unwrap(), "x2 + (k-1)(k+1) x1");
        let p = poly(&[(&[0, 0], "-k-1"), (&[0, 1], "1")]);
        assert_eq!(to_text(&p, None).unwrap(), "-(k+1) + x2");
        let p = poly(&[(&[0], "-k^2-2")]);
        assert_eq!(to_text(&p, None).unwrap(), "-(k^2 + 2)");
    }

    #[test]
    fn latex_line_shape() {
        let e010 = poly(&[(&[0, 1, 0], "1"), (&[1, 0, 0], "(1-k^2)/(1-q k^4)")]);
        let line = latex_line("E", &[0, 1, 0], 1, &e010, None).unwrap();
        assert!(line.starts_with("E_{(0,1,0)}^{(1)} = x_{2} + "));
        assert!(line.contains("\\frac{"));
        assert!(!line.contains('\n'));
    }

    #[test]
    fn json_round_trip() {
        let p = poly(&[
            (&[2, 0, 0], "1"),
            (&[1, 1, 0], "(1-k^2) q G1^-1/(1-q k^2 G2)"),
            (&[0, 0, 2], "-3/2 k^-1"),
        ]);
        let doc = PolyDocument::new("E", &[2, 0, 0], 3, Some("monic"), &p, None).unwrap();
        let s = doc.to_json();
        let back = PolyDocument::from_json(&s).unwrap();
        assert_eq!(back, doc);
        assert!(back.polynomial().unwrap().equals(&p, None));
        assert_eq!(doc.terms[0].exp, vec![0, 0, 2]);
    }
}
