//! Reference tables of `E_mu^{(n)}` and `P_mu^{(n)}` for `r = 3`, shipped
//! as JSON. Each coefficient is stored as the list of unsimplified summands
//! printed in the source tables; comparisons are exact.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::field::{parse_scalar, Scalar};
use crate::laurent::{Exponent, LaurentPolynomial};

const TABLES: &str = include_str!("../data/reference_tables.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    Nonsymmetric,
    Symmetric,
}

#[derive(Deserialize)]
struct RawTables {
    r: usize,
    nonsymmetric: Vec<RawEntry>,
    symmetric: Vec<RawEntry>,
}

#[derive(Deserialize)]
struct RawEntry {
    mu: Vec<i64>,
    n: i64,
    terms: Vec<RawTerm>,
}

#[derive(Deserialize)]
struct RawTerm {
    exp: Vec<i64>,
    coeff: Vec<String>,
}

/// One table entry with its coefficients parsed.
#[derive(Clone, Debug)]
pub struct ReferenceEntry {
    pub kind: TableKind,
    pub r: usize,
    pub mu: Exponent,
    pub n: i64,
    pub poly: LaurentPolynomial<Scalar>,
    /// Number of printed summands, before combining.
    pub summands: usize,
}

fn convert(kind: TableKind, r: usize, e: RawEntry) -> Result<ReferenceEntry> {
    let mut poly = LaurentPolynomial::zero(r);
    let mut summands = 0;
    for t in e.terms {
        if t.exp.len() != r {
            return Err(Error::RankMismatch { expected: r, got: t.exp.len() });
        }
        for c in &t.coeff {
            poly.add_term(t.exp.clone(), parse_scalar(c)?);
            summands += 1;
        }
    }
    Ok(ReferenceEntry { kind, r, mu: e.mu, n: e.n, poly, summands })
}

/// All reference entries, nonsymmetric first, in file order.
pub fn reference_entries() -> Result<Vec<ReferenceEntry>> {
    let raw: RawTables =
        serde_json::from_str(TABLES).map_err(|e| Error::Parse(format!("reference tables: {e}")))?;
    let r = raw.r;
    let mut out = Vec::new();
    for e in raw.nonsymmetric {
        out.push(convert(TableKind::Nonsymmetric, r, e)?);
    }
    for e in raw.symmetric {
        out.push(convert(TableKind::Symmetric, r, e)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_load() {
        let all = reference_entries().unwrap();
        let ns = all.iter().filter(|e| e.kind == TableKind::Nonsymmetric).count();
        let sy = all.iter().filter(|e| e.kind == TableKind::Symmetric).count();
        assert_eq!((ns, sy), (50, 20));
        for e in &all {
            assert_eq!(e.r, 3);
            assert!(!e.poly.is_zero());
        }
    }

    #[test]
    fn tables_match_walk_formulas() {
        use crate::formulas::{compute_e, compute_p, Normalization};
        use crate::rootsys::MetaplecticContext;
        let mut bad = Vec::new();
        for e in reference_entries().unwrap() {
            let ctx = MetaplecticContext::new(e.r, e.n).unwrap();
            let got = match e.kind {
                TableKind::Nonsymmetric => compute_e(&e.mu, &ctx, Normalization::Monic),
                TableKind::Symmetric => compute_p(&e.mu, &ctx),
            }
            .unwrap();
            if !got.equals(&e.poly, ctx.half_symbol()) {
                bad.push((e.kind, e.mu.clone(), e.n));
            }
        }
        assert!(bad.is_empty(), "{bad:?}");
    }
}
