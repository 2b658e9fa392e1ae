//! Sparse Laurent polynomials in `x_1, ..., x_r`.
//!
//! The coefficient type is generic so that the operator code can run over
//! the parameter ring (no denominators, cheap) as well as over the field.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{ParamMonomial, ParamPoly, Scalar, Symbol};

/// Exponent vector of a monomial `x^e`, length `r`.
pub type Exponent = Vec<i64>;

/// What a coefficient ring has to provide.
pub trait Coefficient: Clone + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn from_poly(p: ParamPoly) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn times_poly(&self, p: &ParamPoly) -> Self;
    /// Applies a ring endomorphism of the parameter ring.
    fn map_params(&self, f: &dyn Fn(&ParamPoly) -> ParamPoly) -> Self;
    /// Reduces an involutive symbol (`s^2 = 1`).
    fn reduce_involution(&self, s: Symbol) -> Self;
}

impl Coefficient for ParamPoly {
    fn zero() -> Self {
        ParamPoly::zero()
    }
    fn from_poly(p: ParamPoly) -> Self {
        p
    }
    fn is_zero(&self) -> bool {
        ParamPoly::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn times_poly(&self, p: &ParamPoly) -> Self {
        self.mul(p)
    }
    fn map_params(&self, f: &dyn Fn(&ParamPoly) -> ParamPoly) -> Self {
        f(self)
    }
    fn reduce_involution(&self, s: Symbol) -> Self {
        ParamPoly::reduce_involution(self, s)
    }
}

impl Coefficient for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn from_poly(p: ParamPoly) -> Self {
        Scalar::from_poly(p)
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn times_poly(&self, p: &ParamPoly) -> Self {
        self.mul_poly(p)
    }
    fn map_params(&self, f: &dyn Fn(&ParamPoly) -> ParamPoly) -> Self {
        Scalar::new(f(self.num()), f(self.den())).expect("endomorphism kept denominator nonzero")
    }
    fn reduce_involution(&self, s: Symbol) -> Self {
        Scalar::new(self.num().reduce_involution(s), self.den().reduce_involution(s))
            .expect("reduced denominator is nonzero")
    }
}

/// A Laurent polynomial with exponents in `Z^r`, iterated in lexicographic
/// exponent order.
#[derive(Clone, Debug)]
pub struct LaurentPolynomial<C> {
    rank: usize,
    terms: BTreeMap<Exponent, C>,
}

impl<C: Coefficient> LaurentPolynomial<C> {
    pub fn zero(rank: usize) -> Self {
        LaurentPolynomial { rank, terms: BTreeMap::new() }
    }

    pub fn monomial(exp: Exponent, c: C) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    /// `x^exp` with coefficient one.
    pub fn x(exp: Exponent) -> Self {
        Self::monomial(exp, C::from_poly(ParamPoly::one()))
    }

    pub fn constant(rank: usize, c: C) -> Self {
        Self::monomial(vec![0; rank], c)
    }

    pub fn rank(&self) -> usize {
        self.rank
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

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[i64]) -> Option<&C> {
        self.terms.get(e)
    }

    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().cloned().collect()
    }

    /// Adds `c x^exp` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, exp: Exponent, c: C) {
        assert_eq!(exp.len(), self.rank, "exponent length does not match rank");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(cur) => {
                let s = cur.plus(&c);
                if s.is_zero() {
                    self.terms.remove(&exp);
                } else {
                    *cur = s;
                }
            }
            None => {
                self.terms.insert(exp, c);
            }
        }
    }

    fn check_rank(&self, o: &Self) -> Result<()> {
        if self.rank != o.rank {
            return Err(Error::RankMismatch { expected: self.rank, got: o.rank });
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check_rank(o)?;
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.negate())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check_rank(o)?;
        let mut out = Self::zero(self.rank);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.times(cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank);
        }
        self.map(|x| x.times(c))
    }

    pub fn scale_poly(&self, p: &ParamPoly) -> Self {
        if p.is_zero() {
            return Self::zero(self.rank);
        }
        self.map(|x| x.times_poly(p))
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        LaurentPolynomial {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Coefficientwise map; terms mapping to zero are dropped.
    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> LaurentPolynomial<D> {
        LaurentPolynomial {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter_map(|(e, c)| {
                    let d = f(c);
                    (!d.is_zero()).then(|| (e.clone(), d))
                })
                .collect(),
        }
    }

    pub fn try_map<D: Coefficient>(
        &self,
        f: impl Fn(&C) -> Result<D>,
    ) -> Result<LaurentPolynomial<D>> {
        let mut out = LaurentPolynomial::zero(self.rank);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn reduce_involution(&self, s: Option<Symbol>) -> Self {
        match s {
            Some(s) => self.map(|c| c.reduce_involution(s)),
            None => self.clone(),
        }
    }

    /// `x_i -> x_i^n` together with `q -> q^n` in every coefficient.
    pub fn substitute_power(&self, n: i64) -> Self {
        assert!(n > 0, "power must be positive");
        let qmap = |p: &ParamPoly| p.scale_exponent(Symbol::Q, n);
        LaurentPolynomial {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|a| a * n).collect(), c.map_params(&qmap)))
                .collect(),
        }
    }
}

impl LaurentPolynomial<Scalar> {
    /// Exact equality of every coefficient, optionally modulo `s^2 = 1`.
    pub fn equals(&self, o: &Self, half: Option<Symbol>) -> bool {
        if self.rank != o.rank {
            return false;
        }
        let keys: std::collections::BTreeSet<&Exponent> =
            self.terms.keys().chain(o.terms.keys()).collect();
        let zero = Scalar::zero();
        keys.into_iter().all(|e| {
            let a = self.terms.get(e).unwrap_or(&zero);
            let b = o.terms.get(e).unwrap_or(&zero);
            a.equals(b, half)
        })
    }

    /// Support after discarding coefficients that vanish modulo `s^2 = 1`.
    pub fn effective_support(&self, half: Option<Symbol>) -> Vec<Exponent> {
        self.terms
            .iter()
            .filter(|(_, c)| !c.equals(&Scalar::zero(), half))
            .map(|(e, _)| e.clone())
            .collect()
    }
}

impl LaurentPolynomial<ParamPoly> {
    pub fn equals(&self, o: &Self, half: Option<Symbol>) -> bool {
        match self.sub(o) {
            Ok(d) => d.reduce_involution(half).is_zero(),
            Err(_) => false,
        }
    }

    pub fn to_scalar(&self) -> LaurentPolynomial<Scalar> {
        self.map(|c| Scalar::from_poly(c.clone()))
    }
}

/// Expansion of `(1 - y^{-t/n}) / (1 - y)` with `y = q^{q_step} x^{n alpha}`,
/// as a finite Laurent polynomial.
pub fn geometric_ratio(
    t: i64,
    n: i64,
    alpha: &[i64],
    q_step: i64,
) -> Result<LaurentPolynomial<ParamPoly>> {
    if n <= 0 || t % n != 0 {
        return Err(Error::NotMultiple { value: t, n });
    }
    let m = t / n;
    let mut out = LaurentPolynomial::zero(alpha.len());
    let power = |j: i64| -> (Exponent, ParamPoly) {
        let e = alpha.iter().map(|a| a * n * j).collect();
        let c = ParamPoly::monomial(ParamMonomial::var(Symbol::Q, q_step * j));
        (e, c)
    };
    if m > 0 {
        for j in 1..=m {
            let (e, c) = power(-j);
            out.add_term(e, c.neg());
        }
    } else {
        for j in 0..-m {
            let (e, c) = power(j);
            out.add_term(e, c);
        }
    }
    Ok(out)
}

/// Exact quotient of `a` by `1 - c x^alpha`.
///
/// Each line `{base + j alpha}` is divided independently by running the
/// recurrence `Q_j = a_j + c Q_{j-1}` from the bottom; the top value must
/// vanish. `half` is reduced before every zero test.
pub fn exact_divide_linear<C: Coefficient>(
    a: &LaurentPolynomial<C>,
    c: &C,
    alpha: &[i64],
    half: Option<Symbol>,
) -> Result<LaurentPolynomial<C>> {
    if alpha.len() != a.rank() {
        return Err(Error::RankMismatch { expected: a.rank(), got: alpha.len() });
    }
    let pivot = alpha
        .iter()
        .position(|&v| v != 0)
        .ok_or_else(|| Error::InvalidInput("division direction is zero".into()))?;
    let mut lines: BTreeMap<Exponent, BTreeMap<i64, C>> = BTreeMap::new();
    for (e, v) in a.terms() {
        let j = e[pivot].div_euclid(alpha[pivot]);
        let base: Exponent = e.iter().zip(alpha).map(|(x, y)| x - j * y).collect();
        lines.entry(base).or_default().insert(j, v.clone());
    }
    let reduce = |x: C| match half {
        Some(s) => x.reduce_involution(s),
        None => x,
    };
    let mut out = LaurentPolynomial::zero(a.rank());
    for (base, line) in lines {
        let lo = *line.keys().next().expect("nonempty line");
        let hi = *line.keys().next_back().expect("nonempty line");
        let mut prev = C::zero();
        for j in lo..=hi {
            let aj = line.get(&j).cloned().unwrap_or_else(C::zero);
            let qj = reduce(aj.plus(&c.times(&prev)));
            if j == hi {
                if !qj.is_zero() {
                    return Err(Error::NotDivisible(format!(
                        "nonzero remainder along the line through {base:?}"
                    )));
                }
            } else {
                let e = base.iter().zip(alpha).map(|(x, y)| x + j * y).collect();
                out.add_term(e, qj.clone());
            }
            prev = qj;
        }
    }
    Ok(out)
}
