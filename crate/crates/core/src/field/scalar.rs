use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::poly::{poly_gcd, ParamMonomial, ParamPoly};
use super::Symbol;
use crate::error::{Error, Result};

/// Direction of a `q` limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LimitDirection {
    Zero,
    Infinity,
}

/// An element of the coefficient field, `num / den`.
///
/// Arithmetic keeps fractions unreduced; only denominators that are single
/// terms get folded into the numerator, since those are units.
#[derive(Clone)]
pub struct Scalar {
    num: ParamPoly,
    den: ParamPoly,
}

impl Scalar {
    pub fn new(num: ParamPoly, den: ParamPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::MalformedScalar("zero denominator".into()));
        }
        Ok(Self::raw(num, den))
    }

    fn raw(num: ParamPoly, den: ParamPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        if let Some((m, c)) = den.as_term() {
            if den.is_one() {
                return Scalar { num, den };
            }
            let num = num.mul_term(&m.inv(), &c.recip());
            return Scalar { num, den: ParamPoly::one() };
        }
        Scalar { num, den }
    }

    pub fn zero() -> Self {
        Scalar { num: ParamPoly::zero(), den: ParamPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(ParamPoly::one())
    }

    pub fn from_poly(p: ParamPoly) -> Self {
        Scalar { num: p, den: ParamPoly::one() }
    }

    pub fn integer(c: i64) -> Self {
        Self::from_poly(ParamPoly::integer(c))
    }

    pub fn rational(c: BigRational) -> Self {
        Self::from_poly(ParamPoly::constant(c))
    }

    pub fn var(s: Symbol) -> Self {
        Self::from_poly(ParamPoly::var(s))
    }

    pub fn monomial(m: ParamMonomial) -> Self {
        Self::from_poly(ParamPoly::monomial(m))
    }

    pub fn num(&self) -> &ParamPoly {
        &self.num
    }

    pub fn den(&self) -> &ParamPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The underlying Laurent polynomial, when the denominator is trivial.
    pub fn as_poly(&self) -> Option<&ParamPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn neg(&self) -> Self {
        Scalar { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return Self::raw(self.num.add(&o.num), self.den.clone());
        }
        if self.den.is_one() {
            return Self::raw(self.num.mul(&o.den).add(&o.num), o.den.clone());
        }
        if o.den.is_one() {
            return Self::raw(self.num.add(&o.num.mul(&self.den)), self.den.clone());
        }
        if o.den.len() >= self.den.len() {
            if let Some(f) = o.den.exact_div(&self.den) {
                return Self::raw(self.num.mul(&f).add(&o.num), o.den.clone());
            }
        }
        if self.den.len() >= o.den.len() {
            if let Some(f) = self.den.exact_div(&o.den) {
                return Self::raw(self.num.add(&o.num.mul(&f)), self.den.clone());
            }
        }
        let g = poly_gcd(&self.den, &o.den);
        if g.is_one() {
            return Self::raw(
                self.num.mul(&o.den).add(&o.num.mul(&self.den)),
                self.den.mul(&o.den),
            );
        }
        let b = self.den.exact_div(&g).expect("gcd divides");
        let d = o.den.exact_div(&g).expect("gcd divides");
        Self::raw(self.num.mul(&d).add(&o.num.mul(&b)), b.mul(&o.den))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar { num: self.num.mul(&o.num), den: ParamPoly::one() };
        }
        if self.num == o.den {
            return Self::raw(o.num.clone(), self.den.clone());
        }
        if self.den == o.num {
            return Self::raw(self.num.clone(), o.den.clone());
        }
        Self::raw(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn mul_poly(&self, p: &ParamPoly) -> Self {
        if p.is_zero() {
            return Self::zero();
        }
        Self::raw(self.num.mul(p), self.den.clone())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::MalformedScalar("inverse of zero".into()));
        }
        Ok(Self::raw(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = u32::try_from(e.unsigned_abs())
            .map_err(|_| Error::InvalidInput("exponent too large".into()))?;
        Ok(Scalar { num: base.num.pow(e), den: base.den.pow(e) })
    }

    /// Cross-multiplication equality; `half` names an involutive symbol
    /// (`G^2 = 1`) to reduce before testing for zero.
    pub fn equals(&self, o: &Self, half: Option<Symbol>) -> bool {
        let diff = if self.den == o.den {
            self.num.sub(&o.num)
        } else {
            self.num.mul(&o.den).sub(&o.num.mul(&self.den))
        };
        match half {
            Some(s) => diff.reduce_involution(s).is_zero(),
            None => diff.is_zero(),
        }
    }

    /// Canonical representative: coprime polynomial numerator and
    /// denominator, denominator with coprime integer coefficients and a
    /// positive leading coefficient.
    pub fn normalize(&self, half: Option<Symbol>) -> Result<Self> {
        let (mut n, mut d) = (self.num.clone(), self.den.clone());
        if let Some(s) = half {
            n = n.reduce_involution(s);
            d = d.reduce_involution(s);
        }
        if d.is_zero() {
            return Err(Error::MalformedScalar("denominator vanishes".into()));
        }
        if n.is_zero() {
            return Ok(Self::zero());
        }
        let g = poly_gcd(&n, &d);
        if !g.is_one() {
            n = n.exact_div(&g).expect("gcd divides");
            d = d.exact_div(&g).expect("gcd divides");
        }
        let (md, dd) = d.strip_monomial();
        n = n.mul_monomial(&md.inv());
        d = dd;
        let low = n.min_monomial();
        let lift = ParamMonomial::ONE.div(&low.meet(&ParamMonomial::ONE));
        if !lift.is_one() {
            n = n.mul_monomial(&lift);
            d = d.mul_monomial(&lift);
        }
        let mut c = d.rational_content();
        if d.leading().map(|(_, lc)| lc.is_negative()).unwrap_or(false) {
            c = -c;
        }
        if !c.is_one() {
            let ci = c.recip();
            n = n.scale(&ci);
            d = d.scale(&ci);
        }
        Ok(Scalar { num: n, den: d })
    }

    /// Limit as `q -> 0` or `q -> infinity`, treating the other symbols as
    /// generic.
    pub fn limit_q(&self, dir: LimitDirection, half: Option<Symbol>) -> Result<Self> {
        let (n, d) = match half {
            Some(s) => (self.num.reduce_involution(s), self.den.reduce_involution(s)),
            None => (self.num.clone(), self.den.clone()),
        };
        if n.is_zero() {
            return Ok(Self::zero());
        }
        // Orders are negated for infinity so that "larger wins" in both cases.
        let (en, ed, pn, pd) = match dir {
            LimitDirection::Zero => {
                let (a, b) = (n.low_degree(Symbol::Q), d.low_degree(Symbol::Q));
                (a, b, a, b)
            }
            LimitDirection::Infinity => {
                let (a, b) = (n.degree(Symbol::Q), d.degree(Symbol::Q));
                (-a, -b, a, b)
            }
        };
        if en > ed {
            return Ok(Self::zero());
        }
        if en < ed {
            let to = match dir {
                LimitDirection::Zero => "0",
                LimitDirection::Infinity => "infinity",
            };
            return Err(Error::DivergentLimit(format!("{self} at q -> {to}")));
        }
        let (cn, cd) = (n.coefficient_in(Symbol::Q, pn), d.coefficient_in(Symbol::Q, pd));
        Self::new(cn, cd)
    }

    /// Homomorphic substitution of symbols by scalars.
    pub fn substitute(&self, bindings: &BTreeMap<Symbol, Scalar>) -> Result<Self> {
        let mut cache = HashMap::new();
        let n = eval_poly(&self.num, bindings, &mut cache)?;
        let d = eval_poly(&self.den, bindings, &mut cache)?;
        if d.is_zero() {
            return Err(Error::SpecializationPole(format!(
                "denominator {} vanishes",
                self.den
            )));
        }
        n.div(&d)
    }

    /// Renders the current representation, pulling out factors `(v-1)` and
    /// `(v+1)` for readability. Callers normally normalize first.
    pub fn render_text(&self) -> String {
        self.render(false)
    }

    pub fn render_latex(&self) -> String {
        self.render(true)
    }

    fn render(&self, latex: bool) -> String {
        if self.den.is_one() {
            let (factors, rest) = extract_binomials(&self.num);
            return join_factors(&factors, &rest, latex);
        }
        let (nf, nrest) = extract_binomials(&self.num);
        let (df, drest) = extract_binomials(&self.den);
        let num = join_factors(&nf, &nrest, latex);
        let den = join_factors(&df, &drest, latex);
        if latex {
            return format!("\\frac{{{num}}}{{{den}}}");
        }
        let num = if nf.is_empty() && nrest.len() > 1 {
            format!("({num})")
        } else {
            num
        };
        let bare = (df.is_empty() && drest.len() == 1 && !den.contains(' '))
            || (df.len() == 1 && df[0].1 == 1 && drest.is_one());
        if bare {
            format!("{num}/{den}")
        } else {
            format!("{num}/({den})")
        }
    }
}

fn eval_poly(
    p: &ParamPoly,
    bindings: &BTreeMap<Symbol, Scalar>,
    cache: &mut HashMap<(Symbol, i64), Scalar>,
) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for (m, c) in p.terms() {
        let mut free = ParamMonomial::ONE;
        let mut val = Scalar::rational(c.clone());
        for s in Symbol::all() {
            let e = m.exponent(s);
            if e == 0 {
                continue;
            }
            match bindings.get(&s) {
                None => free = free.with(s, e),
                Some(v) => {
                    let pw = match cache.entry((s, e)) {
                        std::collections::hash_map::Entry::Occupied(o) => o.into_mut(),
                        std::collections::hash_map::Entry::Vacant(slot) => slot.insert(v.pow(e).map_err(|_| {
                            Error::SpecializationPole(format!("{s} bound to zero with exponent {e}"))
                        })?),
                    };
                    val = val.mul(pw);
                }
            }
        }
        acc = acc.add(&val.mul_poly(&ParamPoly::monomial(free)));
    }
    Ok(acc)
}

fn binomial(s: Symbol, sign: i64) -> ParamPoly {
    ParamPoly::var(s).add(&ParamPoly::integer(sign))
}

fn extract_binomials(p: &ParamPoly) -> (Vec<(String, u32)>, ParamPoly) {
    let mut rest = p.clone();
    let mut found = Vec::new();
    if rest.len() <= 1 {
        return (found, rest);
    }
    for s in Symbol::all() {
        if !rest.involves(s) {
            continue;
        }
        for sign in [-1, 1] {
            let b = binomial(s, sign);
            let mut mult = 0;
            while rest.len() > 1 {
                match rest.exact_div(&b) {
                    Some(r) => {
                        rest = r;
                        mult += 1;
                    }
                    None => break,
                }
            }
            if mult > 0 {
                let op = if sign < 0 { '-' } else { '+' };
                found.push((format!("({s}{op}1)"), mult));
            }
        }
    }
    if found.is_empty() {
        return (found, p.clone());
    }
    (found, rest)
}

fn join_factors(factors: &[(String, u32)], rest: &ParamPoly, latex: bool) -> String {
    let render_poly = |p: &ParamPoly| if latex { p.to_latex() } else { p.to_text() };
    if factors.is_empty() {
        return render_poly(rest);
    }
    let mut body = String::new();
    for (f, e) in factors {
        body.push_str(f);
        if *e > 1 {
            if latex {
                body.push_str(&format!("^{{{e}}}"));
            } else {
                body.push_str(&format!("^{e}"));
            }
        }
    }
    if rest.is_one() {
        body
    } else if rest.neg().is_one() {
        format!("-{body}")
    } else if rest.len() == 1 {
        format!("{}{body}", render_poly(rest))
    } else {
        format!("({}){body}", render_poly(rest))
    }
}

impl PartialEq for Scalar {
    fn eq(&self, o: &Self) -> bool {
        self.equals(o, None)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.normalize(None) {
            Ok(s) => f.write_str(&s.render_text()),
            Err(_) => write!(f, "{self:?}"),
        }
    }
}

impl From<i64> for Scalar {
    fn from(c: i64) -> Self {
        Scalar::integer(c)
    }
}

impl From<ParamPoly> for Scalar {
    fn from(p: ParamPoly) -> Self {
        Scalar::from_poly(p)
    }
}
