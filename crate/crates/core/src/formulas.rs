//! The alcove-walk formulas for `E_mu`, `T_u E_mu`, `P_mu` and their
//! `q -> 0` / `q -> infinity` limits.
//!
//! Every walk of type `w` contributes
//! `sigma-product * prod (fold factors) * x^{n wt + phi(lambda)}`; fold
//! denominators are all of the form `1 - gamma_j` with `gamma_j` a
//! monomial, so the walk sum is accumulated over the common denominator
//! `prod_j (1 - gamma_j)` and never needs a gcd.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{LimitDirection, ParamMonomial, ParamPoly, Scalar, Symbol};
use crate::laurent::{Exponent, LaurentPolynomial};
use crate::rootsys::{
    all_perms, dot, is_dominant, perm_apply, perm_length, simple_root_vector, AffineWeylElement,
    MetaplecticContext, Perm,
};
use crate::walks::{AlcoveWalk, WalkFilter};
use crate::words::{canonical_perm_word, reduce_to_fundamental, ReducedDecomposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// Coefficient of `x^mu` equal to one.
    Monic,
    /// The literal walk sum.
    Raw,
}

/// One summand of the walk formula.
#[derive(Clone, Debug)]
pub struct WalkTerm {
    pub exponent: Exponent,
    pub coefficient: Scalar,
}

/// `k^{-1} - k`.
pub fn hecke_gap() -> ParamPoly {
    ParamPoly::monomial(ParamMonomial::var(Symbol::K, -1)).sub(&ParamPoly::var(Symbol::K))
}

/// `prod_a sigma((lambda, s_{u_t} ... s_{u_{a+1}} alpha_{u_a}))` over the
/// canonical reduced word `u_1 ... u_t` of `phi`.
pub fn sigma_product(phi: &[usize], lambda: &[i64], ctx: &MetaplecticContext) -> ParamMonomial {
    let r = ctx.r();
    let word = canonical_perm_word(phi);
    let mut m = ParamMonomial::ONE;
    for a in 0..word.len() {
        let mut v = simple_root_vector(word[a], r);
        for &u in &word[a + 1..] {
            v.swap(u - 1, u);
        }
        m = m.mul(&ctx.sigma(dot(lambda, &v)));
    }
    m
}

/// Exponent `n wt + phi(lambda)` of a walk.
pub fn walk_exponent(walk: &AlcoveWalk, lambda: &[i64], n: i64) -> Exponent {
    perm_apply(&walk.phi, lambda)
        .iter()
        .zip(&walk.wt)
        .map(|(a, w)| a + n * w)
        .collect()
}

/// The monomials `gamma(-beta_j; lambda)`.
pub fn fold_gammas(dec: &ReducedDecomposition, ctx: &MetaplecticContext) -> Result<Vec<ParamMonomial>> {
    dec.betas
        .iter()
        .map(|b| ctx.gamma(&b.neg(), &dec.lambda))
        .collect()
}

/// The full coefficient of a single walk, as a field element.
pub fn walk_coefficient(
    walk: &AlcoveWalk,
    dec: &ReducedDecomposition,
    ctx: &MetaplecticContext,
) -> Result<WalkTerm> {
    let gammas = fold_gammas(dec, ctx)?;
    let gap = Scalar::from_poly(hecke_gap());
    let mut c = Scalar::monomial(sigma_product(&walk.phi, &dec.lambda, ctx));
    for &j in walk.pos_folds.iter().chain(&walk.neg_folds) {
        let g = Scalar::monomial(gammas[j]);
        let mut f = gap.div(&Scalar::one().sub(&g))?;
        if walk.neg_folds.contains(&j) {
            f = f.mul(&g);
        }
        c = c.mul(&f);
    }
    Ok(WalkTerm { exponent: walk_exponent(walk, &dec.lambda, ctx.n()), coefficient: c })
}

/// What the walk sum should produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SumMode {
    Full,
    Limit(LimitDirection),
}

/// Sum of walk terms over `B(u, w)` for each `(u, weight)` in `starts`.
fn walk_sum(
    dec: &ReducedDecomposition,
    starts: &[(Perm, ParamPoly)],
    ctx: &MetaplecticContext,
    mode: SumMode,
) -> Result<LaurentPolynomial<Scalar>> {
    let r = ctx.r();
    let n = ctx.n();
    let l = dec.word.len();
    if l >= 40 {
        return Err(Error::InvalidInput(format!("reduced word of length {l} is too long")));
    }
    let gammas = fold_gammas(dec, ctx)?;
    let binomials: Vec<ParamPoly> = gammas
        .iter()
        .map(|g| ParamPoly::one().sub(&ParamPoly::monomial(*g)))
        .collect();
    let count = 1u64 << l;
    let gap = hecke_gap();
    let gap_powers: Vec<ParamPoly> = (0..=l as u32).map(|e| gap.pow(e)).collect();
    let neg_gap_powers: Vec<ParamPoly> = (0..=l as u32).map(|e| gap.neg().pow(e)).collect();
    let starts_el: Vec<AffineWeylElement> =
        starts.iter().map(|(u, _)| AffineWeylElement::finite(u.clone())).collect();

    let numerators: BTreeMap<Exponent, ParamPoly> = (0..starts.len() as u64 * count)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<Exponent, ParamPoly>, idx| {
            let s = (idx / count) as usize;
            let walk = AlcoveWalk::from_index(&starts_el[s], &dec.word, idx % count);
            let keep = match mode {
                SumMode::Full => true,
                SumMode::Limit(LimitDirection::Zero) => walk.passes(WalkFilter::PositiveFoldsOnly),
                SumMode::Limit(LimitDirection::Infinity) => {
                    walk.passes(WalkFilter::NegativeFoldsOnly)
                }
            };
            if !keep {
                return acc;
            }
            let mut mono = sigma_product(&walk.phi, &dec.lambda, ctx);
            let folds = walk.fold_count();
            let term = match mode {
                SumMode::Full => {
                    for &j in &walk.neg_folds {
                        mono = mono.mul(&gammas[j]);
                    }
                    let mut p = starts[s].1.mul(&gap_powers[folds]).mul_monomial(&mono);
                    for (j, b) in binomials.iter().enumerate() {
                        if walk.choices[j] == crate::walks::StepChoice::Cross {
                            p = p.mul(b);
                        }
                    }
                    p
                }
                SumMode::Limit(LimitDirection::Zero) => {
                    starts[s].1.mul(&gap_powers[folds]).mul_monomial(&mono)
                }
                SumMode::Limit(LimitDirection::Infinity) => {
                    starts[s].1.mul(&neg_gap_powers[folds]).mul_monomial(&mono)
                }
            };
            let e = walk_exponent(&walk, &dec.lambda, n);
            let slot = acc.entry(e).or_default();
            *slot = slot.add(&term);
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (e, p) in b {
                let slot = a.entry(e).or_default();
                *slot = slot.add(&p);
            }
            a
        });

    let mut out = LaurentPolynomial::zero(r);
    for (e, num) in numerators {
        if num.is_zero() {
            continue;
        }
        let coeff = match mode {
            SumMode::Full => cancel_binomials(num, &binomials),
            SumMode::Limit(_) => Scalar::from_poly(num),
        };
        out.add_term(e, coeff);
    }
    Ok(out)
}

/// `num / prod(factors)`, cancelling any factor that divides `num`.
fn cancel_binomials(mut num: ParamPoly, factors: &[ParamPoly]) -> Scalar {
    let mut den = ParamPoly::one();
    for f in factors {
        match num.exact_div(f) {
            Some(q) => num = q,
            None => den = den.mul(f),
        }
    }
    Scalar::new(num, den).expect("binomial product is nonzero")
}

fn monic_divisor(dec: &ReducedDecomposition, ctx: &MetaplecticContext) -> ParamMonomial {
    let unfolded = AlcoveWalk::from_index(&AffineWeylElement::identity(ctx.r()), &dec.word, 0);
    sigma_product(&unfolded.phi, &dec.lambda, ctx)
}

fn normalize(
    p: LaurentPolynomial<Scalar>,
    dec: &ReducedDecomposition,
    ctx: &MetaplecticContext,
    normalization: Normalization,
) -> LaurentPolynomial<Scalar> {
    match normalization {
        Normalization::Raw => p,
        Normalization::Monic => {
            let d = monic_divisor(dec, ctx).inv();
            p.scale_poly(&ParamPoly::monomial(d))
        }
    }
}

/// `E_mu^{(n)}` by the alcove-walk formula.
pub fn compute_e(
    mu: &[i64],
    ctx: &MetaplecticContext,
    normalization: Normalization,
) -> Result<LaurentPolynomial<Scalar>> {
    let dec = reduce_to_fundamental(mu, ctx)?;
    let id = crate::rootsys::perm_identity(ctx.r());
    let raw = walk_sum(&dec, &[(id, ParamPoly::one())], ctx, SumMode::Full)?;
    Ok(normalize(raw, &dec, ctx, normalization))
}

/// The walk sum over `B(u, w)`: a nonzero multiple of `T_u E_mu^{(n)}`.
pub fn compute_tu_e(u: &[usize], mu: &[i64], ctx: &MetaplecticContext) -> Result<LaurentPolynomial<Scalar>> {
    check_perm(u, ctx.r())?;
    let dec = reduce_to_fundamental(mu, ctx)?;
    walk_sum(&dec, &[(u.to_vec(), ParamPoly::one())], ctx, SumMode::Full)
}

fn symmetric_starts(r: usize) -> Vec<(Perm, ParamPoly)> {
    all_perms(r)
        .into_iter()
        .map(|u| {
            let w = ParamPoly::monomial(ParamMonomial::var(Symbol::K, perm_length(&u) as i64));
            (u, w)
        })
        .collect()
}

/// `P_mu^{(n)} = sum_u k^{l(u)} sum_{B(u, w)}` walk terms, for dominant `mu`.
pub fn compute_p(mu: &[i64], ctx: &MetaplecticContext) -> Result<LaurentPolynomial<Scalar>> {
    ctx.check_rank(mu)?;
    if !is_dominant(mu) {
        return Err(Error::NotDominant(mu.to_vec()));
    }
    let dec = reduce_to_fundamental(mu, ctx)?;
    walk_sum(&dec, &symmetric_starts(ctx.r()), ctx, SumMode::Full)
}

/// `E_mu^{(n)}` at `q -> 0` (positive folds only) or `q -> infinity`
/// (negative folds only).
pub fn compute_e_limit(
    mu: &[i64],
    ctx: &MetaplecticContext,
    direction: LimitDirection,
    normalization: Normalization,
) -> Result<LaurentPolynomial<Scalar>> {
    let dec = reduce_to_fundamental(mu, ctx)?;
    let id = crate::rootsys::perm_identity(ctx.r());
    let raw = walk_sum(&dec, &[(id, ParamPoly::one())], ctx, SumMode::Limit(direction))?;
    Ok(normalize(raw, &dec, ctx, normalization))
}

pub fn compute_p_limit(
    mu: &[i64],
    ctx: &MetaplecticContext,
    direction: LimitDirection,
) -> Result<LaurentPolynomial<Scalar>> {
    ctx.check_rank(mu)?;
    if !is_dominant(mu) {
        return Err(Error::NotDominant(mu.to_vec()));
    }
    let dec = reduce_to_fundamental(mu, ctx)?;
    walk_sum(&dec, &symmetric_starts(ctx.r()), ctx, SumMode::Limit(direction))
}

/// Coefficientwise `q` limit of a polynomial.
pub fn limit_coefficients(
    p: &LaurentPolynomial<Scalar>,
    direction: LimitDirection,
    half: Option<Symbol>,
) -> Result<LaurentPolynomial<Scalar>> {
    p.try_map(|c| c.limit_q(direction, half))
}

fn check_perm(u: &[usize], r: usize) -> Result<()> {
    let mut seen = vec![false; r];
    if u.len() != r {
        return Err(Error::RankMismatch { expected: r, got: u.len() });
    }
    for &v in u {
        if v >= r || seen[v] {
            return Err(Error::InvalidInput(format!("{u:?} is not a permutation")));
        }
        seen[v] = true;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_scalar;
    use crate::rootsys::perm_simple;
    use crate::walks::enumerate_walks;

    fn ctx(r: usize, n: i64) -> MetaplecticContext {
        MetaplecticContext::new(r, n).unwrap()
    }

    fn s(e: &str) -> Scalar {
        parse_scalar(e).unwrap()
    }

    fn poly(terms: &[(&[i64], &str)]) -> LaurentPolynomial<Scalar> {
        let mut p = LaurentPolynomial::zero(terms[0].0.len());
        for (e, c) in terms {
            p.add_term(e.to_vec(), s(c));
        }
        p
    }

    #[test]
    fn single_walk_terms() {
        let c3 = ctx(3, 3);
        let dec = reduce_to_fundamental(&[0, 1, 0], &c3).unwrap();
        let id = AffineWeylElement::identity(3);
        let walks = enumerate_walks(&id, &dec.word);
        let t = walk_coefficient(&walks[0], &dec, &c3).unwrap();
        assert_eq!(t.exponent, vec![0, 1, 0]);
        assert_eq!(t.coefficient, s("G1"));
        let c1 = ctx(3, 1);
        let dec = reduce_to_fundamental(&[0, 1, 0], &c1).unwrap();
        let t = walk_coefficient(&walks[1], &dec, &c1).unwrap();
        assert_eq!(t.exponent, vec![1, 0, 0]);
        assert_eq!(t.coefficient, s("(k^-1 - k)/(1 - q*k^4)"));
        let dec = reduce_to_fundamental(&[1, 0, 0], &c1).unwrap();
        let t = walk_coefficient(&enumerate_walks(&id, &[])[0], &dec, &c1).unwrap();
        assert_eq!(t.coefficient, Scalar::one());
    }

    #[test]
    fn small_e_polynomials() {
        for n in 1..=4 {
            let e = compute_e(&[1, 0, 0], &ctx(3, n), Normalization::Monic).unwrap();
            assert!(e.equals(&poly(&[(&[1, 0, 0], "1")]), None));
        }
        let e = compute_e(&[0, 1, 0], &ctx(3, 1), Normalization::Monic).unwrap();
        let want = poly(&[(&[0, 1, 0], "1"), (&[1, 0, 0], "(k-1)*(k+1)/(k^4*q-1)")]);
        assert!(e.equals(&want, None));
        let e = compute_e(&[0, 1, 0], &ctx(3, 3), Normalization::Monic).unwrap();
        let want = poly(&[
            (&[0, 1, 0], "1"),
            (&[1, 0, 0], "(k-1)*(k+1)*G1^2/(k*(-G1^3+k*q))"),
        ]);
        assert!(e.equals(&want, None));
        let c2 = ctx(3, 2);
        let e = compute_e(&[2, 0, 0], &c2, Normalization::Monic).unwrap();
        assert!(e.equals(&poly(&[(&[2, 0, 0], "1")]), c2.half_symbol()));
    }

    #[test]
    fn permuted_basement_examples() {
        let c = ctx(3, 1);
        let got = compute_tu_e(&perm_simple(1, 3), &[1, 0, 0], &c).unwrap();
        assert!(got.equals(&poly(&[(&[0, 1, 0], "k^-1")]), None));
        let id = crate::rootsys::perm_identity(3);
        let raw = compute_e(&[0, 1, 0], &c, Normalization::Raw).unwrap();
        assert!(compute_tu_e(&id, &[0, 1, 0], &c).unwrap().equals(&raw, None));
        assert!(compute_tu_e(&[0, 0, 1], &[0, 1, 0], &c).is_err());
    }

    #[test]
    fn symmetric_examples() {
        let p = compute_p(&[0, 0, 0], &ctx(3, 1)).unwrap();
        assert!(p.equals(&poly(&[(&[0, 0, 0], "k^6+2*k^4+2*k^2+1")]), None));
        let c2 = ctx(3, 2);
        let p = compute_p(&[1, 0, 0], &c2).unwrap();
        let want = poly(&[
            (&[0, 0, 1], "k^4 + k^2"),
            (&[0, 1, 0], "k^3*G1 + k*G1"),
            (&[1, 0, 0], "k^2 + 1"),
        ]);
        assert!(p.equals(&want, c2.half_symbol()));
        let p = compute_p(&[2, 0, 0], &c2).unwrap();
        let want = poly(&[
            (&[0, 0, 2], "k^2+1"),
            (&[0, 2, 0], "k^2+1"),
            (&[2, 0, 0], "k^2+1"),
        ]);
        assert!(p.equals(&want, c2.half_symbol()));
        assert!(matches!(compute_p(&[0, 1, 0], &c2), Err(Error::NotDominant(_))));
    }

    #[test]
    fn limit_examples() {
        let c = ctx(3, 1);
        let z = compute_e_limit(&[0, 1, 0], &c, LimitDirection::Zero, Normalization::Monic).unwrap();
        assert!(z.equals(&poly(&[(&[0, 1, 0], "1"), (&[1, 0, 0], "1-k^2")]), None));
        let i = compute_e_limit(&[0, 1, 0], &c, LimitDirection::Infinity, Normalization::Monic)
            .unwrap();
        assert!(i.equals(&poly(&[(&[0, 1, 0], "1")]), None));
        let dom = compute_e_limit(&[2, 1, 0], &c, LimitDirection::Zero, Normalization::Monic)
            .unwrap();
        assert!(dom.equals(&poly(&[(&[2, 1, 0], "1")]), None));
        let p0 = compute_p(&[0, 0, 0], &c).unwrap();
        for d in [LimitDirection::Zero, LimitDirection::Infinity] {
            assert!(compute_p_limit(&[0, 0, 0], &c, d).unwrap().equals(&p0, None));
        }
    }
}
