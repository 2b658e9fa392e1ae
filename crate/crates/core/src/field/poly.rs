use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Symbol, MAX_SYMBOLS};

/// A Laurent monomial in the parameters, stored as a fixed exponent array.
///
/// The derived ordering is lexicographic with `k` most significant.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ParamMonomial([i16; MAX_SYMBOLS]);

impl ParamMonomial {
    pub const ONE: ParamMonomial = ParamMonomial([0; MAX_SYMBOLS]);

    pub fn var(s: Symbol, e: i64) -> Self {
        ParamMonomial::ONE.with(s, e)
    }

    pub fn from_exponents(e: [i16; MAX_SYMBOLS]) -> Self {
        ParamMonomial(e)
    }

    pub fn exponents(&self) -> &[i16; MAX_SYMBOLS] {
        &self.0
    }

    pub fn exponent(&self, s: Symbol) -> i64 {
        self.0[s.index()] as i64
    }

    pub fn with(mut self, s: Symbol, e: i64) -> Self {
        self.0[s.index()] = narrow(e);
        self
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = self.0;
        for (a, b) in out.iter_mut().zip(o.0.iter()) {
            *a = a.checked_add(*b).expect("parameter exponent overflow");
        }
        ParamMonomial(out)
    }

    pub fn div(&self, o: &Self) -> Self {
        let mut out = self.0;
        for (a, b) in out.iter_mut().zip(o.0.iter()) {
            *a = a.checked_sub(*b).expect("parameter exponent overflow");
        }
        ParamMonomial(out)
    }

    pub fn inv(&self) -> Self {
        ParamMonomial::ONE.div(self)
    }

    pub fn pow(&self, e: i64) -> Self {
        let mut out = [0i16; MAX_SYMBOLS];
        for (o, a) in out.iter_mut().zip(self.0.iter()) {
            *o = narrow(*a as i64 * e);
        }
        ParamMonomial(out)
    }

    pub fn meet(&self, o: &Self) -> Self {
        let mut out = self.0;
        for (a, b) in out.iter_mut().zip(o.0.iter()) {
            *a = (*a).min(*b);
        }
        ParamMonomial(out)
    }

    pub fn join(&self, o: &Self) -> Self {
        let mut out = self.0;
        for (a, b) in out.iter_mut().zip(o.0.iter()) {
            *a = (*a).max(*b);
        }
        ParamMonomial(out)
    }

    /// Componentwise `self <= o`.
    pub fn divides(&self, o: &Self) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    fn fmt_with(&self, latex: bool) -> String {
        let mut parts = Vec::new();
        for s in Symbol::all() {
            let e = self.exponent(s);
            if e == 0 {
                continue;
            }
            let name = if latex {
                match s.gauss_index() {
                    Some(j) => format!("G_{{{j}}}"),
                    None => s.name(),
                }
            } else {
                s.name()
            };
            parts.push(match (e, latex) {
                (1, _) => name,
                (_, true) => format!("{name}^{{{e}}}"),
                (_, false) => format!("{name}^{e}"),
            });
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

fn narrow(e: i64) -> i16 {
    i16::try_from(e).expect("parameter exponent overflow")
}

impl fmt::Debug for ParamMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(false))
    }
}

impl fmt::Display for ParamMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(false))
    }
}

/// Sparse Laurent polynomial in the parameters with rational coefficients.
///
/// Terms are kept sorted ascending by monomial, with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPoly {
    terms: Vec<(ParamMonomial, BigRational)>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(ParamMonomial::ONE, c)
    }

    pub fn integer(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(s: Symbol) -> Self {
        Self::term(ParamMonomial::var(s, 1), BigRational::one())
    }

    pub fn monomial(m: ParamMonomial) -> Self {
        Self::term(m, BigRational::one())
    }

    pub fn term(m: ParamMonomial, c: BigRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            ParamPoly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, combining repeated monomials.
    pub fn from_terms<I: IntoIterator<Item = (ParamMonomial, BigRational)>>(it: I) -> Self {
        let mut acc: BTreeMap<ParamMonomial, BigRational> = BTreeMap::new();
        for (m, c) in it {
            *acc.entry(m).or_insert_with(BigRational::zero) += c;
        }
        ParamPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn terms(&self) -> &[(ParamMonomial, BigRational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// The single term, if there is exactly one.
    pub fn as_term(&self) -> Option<(&ParamMonomial, &BigRational)> {
        match self.terms.as_slice() {
            [(m, c)] => Some((m, c)),
            _ => None,
        }
    }

    /// Lexicographically largest term.
    pub fn leading(&self) -> Option<(&ParamMonomial, &BigRational)> {
        self.terms.last().map(|(m, c)| (m, c))
    }

    pub fn neg(&self) -> Self {
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        merge(&self.terms, &o.terms, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        merge(&self.terms, &o.terms, true)
    }

    pub fn mul_term(&self, m: &ParamMonomial, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(a, b)| (a.mul(m), b * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &ParamMonomial) -> Self {
        ParamPoly {
            terms: self.terms.iter().map(|(a, b)| (a.mul(m), b.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        self.mul_term(&ParamMonomial::ONE, c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if let Some((m, c)) = o.as_term() {
            return self.mul_term(m, c);
        }
        if let Some((m, c)) = self.as_term() {
            return o.mul_term(m, c);
        }
        let mut acc: HashMap<ParamMonomial, BigRational> =
            HashMap::with_capacity(self.len() * o.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let c = ca * cb;
                acc.entry(ma.mul(mb))
                    .and_modify(|e| *e += &c)
                    .or_insert(c);
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by_key(|t| t.0);
        ParamPoly { terms }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Componentwise minimum of all exponents (the largest monomial factor).
    pub fn min_monomial(&self) -> ParamMonomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => ParamMonomial::ONE,
            Some((m, _)) => it.fold(*m, |acc, (m, _)| acc.meet(m)),
        }
    }

    pub fn max_monomial(&self) -> ParamMonomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => ParamMonomial::ONE,
            Some((m, _)) => it.fold(*m, |acc, (m, _)| acc.join(m)),
        }
    }

    /// Splits off the monomial content: `self = m * p` with `p` a polynomial
    /// having no monomial factor.
    pub fn strip_monomial(&self) -> (ParamMonomial, ParamPoly) {
        let m = self.min_monomial();
        if m.is_one() {
            (m, self.clone())
        } else {
            (m, self.mul_monomial(&m.inv()))
        }
    }

    pub fn degree(&self, s: Symbol) -> i64 {
        self.terms.iter().map(|(m, _)| m.exponent(s)).max().unwrap_or(0)
    }

    pub fn low_degree(&self, s: Symbol) -> i64 {
        self.terms.iter().map(|(m, _)| m.exponent(s)).min().unwrap_or(0)
    }

    pub fn involves(&self, s: Symbol) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(s) != 0)
    }

    /// Coefficients with respect to one symbol, keyed by its exponent.
    pub fn coefficients_in(&self, s: Symbol) -> BTreeMap<i64, ParamPoly> {
        let mut out: BTreeMap<i64, ParamPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(s);
            // Fixing one coordinate preserves the lexicographic order of the rest.
            out.entry(e)
                .or_default()
                .terms
                .push((m.with(s, 0), c.clone()));
        }
        out
    }

    pub fn coefficient_in(&self, s: Symbol, e: i64) -> ParamPoly {
        ParamPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(s) == e)
                .map(|(m, c)| (m.with(s, 0), c.clone()))
                .collect(),
        }
    }

    /// Reduces exponents of an involutive symbol (`s^2 = 1`) to 0 or 1.
    pub fn reduce_involution(&self, s: Symbol) -> Self {
        if !self
            .terms
            .iter()
            .any(|(m, _)| !(0..=1).contains(&m.exponent(s)))
        {
            return self.clone();
        }
        Self::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.with(s, m.exponent(s).rem_euclid(2)), c.clone())),
        )
    }

    /// Substitutes `s -> s^n`.
    pub fn scale_exponent(&self, s: Symbol, n: i64) -> Self {
        if n > 0 {
            // Order is preserved for positive n.
            ParamPoly {
                terms: self
                    .terms
                    .iter()
                    .map(|(m, c)| (m.with(s, m.exponent(s) * n), c.clone()))
                    .collect(),
            }
        } else {
            Self::from_terms(
                self.terms
                    .iter()
                    .map(|(m, c)| (m.with(s, m.exponent(s) * n), c.clone())),
            )
        }
    }

    /// Positive rational `c` such that `self / c` has coprime integer coefficients.
    pub fn rational_content(&self) -> BigRational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            BigRational::one()
        } else {
            BigRational::new(num, den)
        }
    }

    /// Canonical associate: no monomial content, coprime integer
    /// coefficients, positive leading coefficient.
    pub fn normalize_unit(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (_, p) = self.strip_monomial();
        let mut c = p.rational_content();
        if p.leading().map(|(_, lc)| lc.is_negative()).unwrap_or(false) {
            c = -c;
        }
        if c.is_one() {
            p
        } else {
            p.scale(&c.recip())
        }
    }

    /// Exact division in the Laurent ring. `None` when `d` does not divide.
    pub fn exact_div(&self, d: &ParamPoly) -> Option<ParamPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some((m, c)) = d.as_term() {
            return Some(self.mul_term(&m.inv(), &c.recip()));
        }
        let (ma, a) = self.strip_monomial();
        let (mb, b) = d.strip_monomial();
        let (lm, lc) = b.leading().map(|(m, c)| (*m, c.clone()))?;
        let bound = a.max_monomial().div(&b.max_monomial());
        if !ParamMonomial::ONE.divides(&bound) {
            return None;
        }
        let mut rem: BTreeMap<ParamMonomial, BigRational> = a.terms.into_iter().collect();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.iter().next_back() {
            if !lm.divides(m) {
                return None;
            }
            let qm = m.div(&lm);
            if !qm.divides(&bound) {
                return None;
            }
            let qc = c / &lc;
            for (bm, bc) in &b.terms {
                let t = bm.mul(&qm);
                let v = &qc * bc;
                let entry = rem.entry(t).or_insert_with(BigRational::zero);
                *entry -= v;
                if entry.is_zero() {
                    rem.remove(&t);
                }
            }
            quot.push((qm, qc));
        }
        quot.reverse();
        let q = ParamPoly { terms: quot };
        let shift = ma.div(&mb);
        Some(if shift.is_one() { q } else { q.mul_monomial(&shift) })
    }

    /// Plain-text rendering, terms in descending order.
    pub fn to_text(&self) -> String {
        render(self, false)
    }

    pub fn to_latex(&self) -> String {
        render(self, true)
    }
}

fn merge(
    a: &[(ParamMonomial, BigRational)],
    b: &[(ParamMonomial, BigRational)],
    negate_b: bool,
) -> ParamPoly {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                let c = if negate_b { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0, c));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate_b {
                    &a[i].1 - &b[j].1
                } else {
                    &a[i].1 + &b[j].1
                };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    for t in &b[j..] {
        let c = if negate_b { -&t.1 } else { t.1.clone() };
        out.push((t.0, c));
    }
    ParamPoly { terms: out }
}

fn fmt_rational(c: &BigRational, latex: bool) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else if latex {
        format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn render(p: &ParamPoly, latex: bool) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (m, c)) in p.terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        let body = if m.is_one() {
            fmt_rational(&abs, latex)
        } else if abs.is_one() {
            m.fmt_with(latex)
        } else {
            format!("{} {}", fmt_rational(&abs, latex), m.fmt_with(latex))
        };
        match (idx, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    out
}

impl fmt::Debug for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Greatest common divisor in the Laurent ring, returned as its canonical
/// associate (see [`ParamPoly::normalize_unit`]). `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    if a.is_zero() {
        return b.normalize_unit();
    }
    if b.is_zero() {
        return a.normalize_unit();
    }
    let a = a.normalize_unit();
    let b = b.normalize_unit();
    gcd_rec(&a, &b)
}

fn active_symbols(p: &ParamPoly) -> Vec<Symbol> {
    let top = p.max_monomial();
    Symbol::all().filter(|&s| top.exponent(s) > 0).collect()
}

// Inputs and output are canonical associates with nonnegative exponents.
fn gcd_rec(a: &ParamPoly, b: &ParamPoly) -> ParamPoly {
    if a.len() <= 1 || b.len() <= 1 {
        return ParamPoly::one();
    }
    if a == b {
        return a.clone();
    }
    let va = active_symbols(a);
    let vb = active_symbols(b);
    // A symbol only one side depends on: descend into that side's content.
    if let Some(&s) = va.iter().find(|s| !vb.contains(s)) {
        return gcd_rec(&content_in(a, s), b);
    }
    if let Some(&s) = vb.iter().find(|s| !va.contains(s)) {
        return gcd_rec(a, &content_in(b, s));
    }
    let s = *va
        .iter()
        .min_by_key(|&&s| a.degree(s).max(b.degree(s)))
        .expect("nonconstant polynomial has an active symbol");
    let ca = content_in(a, s);
    let cb = content_in(b, s);
    let c = gcd_rec(&ca, &cb);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let g = primitive_prs(pa, pb, s);
    c.mul(&g).normalize_unit()
}

fn content_in(p: &ParamPoly, s: Symbol) -> ParamPoly {
    let coeffs = p.coefficients_in(s);
    let mut it = coeffs.into_values();
    let mut g = it.next().map(|c| c.normalize_unit()).unwrap_or_default();
    for c in it {
        if g.len() <= 1 {
            return ParamPoly::one();
        }
        g = gcd_rec(&g, &c.normalize_unit());
    }
    g
}

fn primitive_part_in(p: &ParamPoly, s: Symbol) -> ParamPoly {
    let c = content_in(p, s);
    p.exact_div(&c).expect("content divides").normalize_unit()
}

fn pseudo_remainder(a: &ParamPoly, b: &ParamPoly, s: Symbol) -> ParamPoly {
    let d = b.degree(s);
    let lb = b.coefficient_in(s, d);
    let mut r = a.clone();
    while !r.is_zero() {
        let e = r.degree(s);
        if e < d {
            break;
        }
        let lr = r.coefficient_in(s, e);
        let shift = ParamMonomial::var(s, e - d);
        r = r.mul(&lb).sub(&b.mul(&lr).mul_monomial(&shift));
    }
    r
}

fn primitive_prs(a: ParamPoly, b: ParamPoly, s: Symbol) -> ParamPoly {
    let (mut a, mut b) = if a.degree(s) >= b.degree(s) { (a, b) } else { (b, a) };
    loop {
        if b.degree(s) == 0 {
            return ParamPoly::one();
        }
        let r = pseudo_remainder(&a, &b, s);
        if r.is_zero() {
            return b.normalize_unit();
        }
        if r.degree(s) == 0 && r.low_degree(s) == 0 {
            return ParamPoly::one();
        }
        a = b;
        b = primitive_part_in(&r, s);
    }
}
