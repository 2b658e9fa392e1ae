//! The polynomial representation as executable operators, and an
//! intertwiner recursion for `E_mu` that is independent of the walk
//! formulas.
//!
//! Operators are generic over the coefficient type. They preserve
//! `Q[k^±, q^±, G^±][x^±]`, so the oracle runs over [`ParamPoly`] and only
//! divides once, at the very end.

use crate::error::{Error, Result};
use crate::field::{poly_gcd, ParamMonomial, ParamPoly, Scalar, Symbol};
use crate::laurent::{exact_divide_linear, geometric_ratio, Coefficient, Exponent, LaurentPolynomial};
use crate::rootsys::{all_perms, perm_length, simple_root_vector, theta, AffineRoot, MetaplecticContext};
use crate::words::{canonical_perm_word, reduce_to_fundamental};

type Image = Vec<(Exponent, ParamPoly)>;

fn k_minus_kinv() -> ParamPoly {
    ParamPoly::var(Symbol::K).sub(&ParamPoly::monomial(ParamMonomial::var(Symbol::K, -1)))
}

fn apply_monomialwise<C: Coefficient>(
    f: &LaurentPolynomial<C>,
    image: impl Fn(&[i64]) -> Image,
) -> LaurentPolynomial<C> {
    let mut out = LaurentPolynomial::zero(f.rank());
    for (lam, c) in f.terms() {
        for (e, p) in image(lam) {
            out.add_term(e, c.times_poly(&p));
        }
    }
    out
}

fn add_vec(a: &[i64], b: &[i64]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Image of `x^lam` under `T_i`, `1 <= i <= r - 1`.
fn ti_image(i: usize, lam: &[i64], ctx: &MetaplecticContext) -> Image {
    let a = lam[i - 1] - lam[i];
    let t = ctx.floor_multiple(a);
    let alpha = simple_root_vector(i, ctx.r());
    let gap = k_minus_kinv();
    let mut out: Image = geometric_ratio(t, ctx.n(), &alpha, 0)
        .expect("floor multiple is divisible")
        .terms()
        .map(|(e, c)| (add_vec(lam, e), c.mul(&gap)))
        .collect();
    let mut swapped = lam.to_vec();
    swapped.swap(i - 1, i);
    out.push((swapped, ParamPoly::monomial(ctx.gauss(a))));
    out
}

/// Image of `x^lam` under `T_0`.
fn t0_image(lam: &[i64], ctx: &MetaplecticContext) -> Image {
    let r = ctx.r();
    let b = lam[0] - lam[r - 1];
    let t = ctx.floor_multiple(-b);
    let neg_theta: Vec<i64> = theta(r).iter().map(|v| -v).collect();
    let gap = k_minus_kinv();
    let mut out: Image = geometric_ratio(t, ctx.n(), &neg_theta, ctx.n())
        .expect("floor multiple is divisible")
        .terms()
        .map(|(e, c)| (add_vec(lam, e), c.mul(&gap)))
        .collect();
    let mut swapped = lam.to_vec();
    swapped.swap(0, r - 1);
    let coeff = ctx.gauss(-b).mul(&ParamMonomial::var(Symbol::Q, b));
    out.push((swapped, ParamPoly::monomial(coeff)));
    out
}

/// `T_i f` for `0 <= i <= r - 1`.
pub fn apply_t<C: Coefficient>(i: usize, f: &LaurentPolynomial<C>, ctx: &MetaplecticContext) -> LaurentPolynomial<C> {
    assert!(i < ctx.r(), "Hecke generator index {i} out of range");
    if i == 0 {
        apply_monomialwise(f, |lam| t0_image(lam, ctx))
    } else {
        apply_monomialwise(f, |lam| ti_image(i, lam, ctx))
    }
}

/// `T_i^{-1} = T_i - k + k^{-1}`.
pub fn apply_t_inv<C: Coefficient>(i: usize, f: &LaurentPolynomial<C>, ctx: &MetaplecticContext) -> LaurentPolynomial<C> {
    let tf = apply_t(i, f, ctx);
    tf.sub(&f.scale_poly(&k_minus_kinv())).expect("same rank")
}

/// `omega x^lam = q^{-lam_r} x^{(lam_r, lam_1, ..., lam_{r-1})}`, or its inverse.
pub fn apply_omega<C: Coefficient>(f: &LaurentPolynomial<C>, ctx: &MetaplecticContext, inverse: bool) -> LaurentPolynomial<C> {
    let r = ctx.r();
    apply_monomialwise(f, |lam| {
        let mut e = lam.to_vec();
        let qexp = if inverse {
            e.rotate_left(1);
            lam[0]
        } else {
            e.rotate_right(1);
            -lam[r - 1]
        };
        vec![(e, ParamPoly::monomial(ParamMonomial::var(Symbol::Q, qexp)))]
    })
}

/// `Y^{n e_i}` (or its inverse), `1 <= i <= r`:
/// `T_{i-1}^{-1} ... T_1^{-1} omega T_{r-1} ... T_i`.
pub fn apply_y<C: Coefficient>(i: usize, f: &LaurentPolynomial<C>, ctx: &MetaplecticContext, inverse: bool) -> LaurentPolynomial<C> {
    let r = ctx.r();
    assert!((1..=r).contains(&i), "Y index {i} out of range");
    let mut g = f.clone();
    if !inverse {
        for j in i..r {
            g = apply_t(j, &g, ctx);
        }
        g = apply_omega(&g, ctx, false);
        for j in 1..i {
            g = apply_t_inv(j, &g, ctx);
        }
    } else {
        for j in (1..i).rev() {
            g = apply_t(j, &g, ctx);
        }
        g = apply_omega(&g, ctx, true);
        for j in (i..r).rev() {
            g = apply_t_inv(j, &g, ctx);
        }
    }
    g
}

/// `Y^{Psi(mu + s delta)} = q^{-sn} prod_i (Y^{n e_i})^{mu_i}`.
pub fn apply_y_lattice<C: Coefficient>(
    mu: &[i64],
    s: i64,
    f: &LaurentPolynomial<C>,
    ctx: &MetaplecticContext,
) -> Result<LaurentPolynomial<C>> {
    ctx.check_rank(mu)?;
    let mut g = f.clone();
    for (idx, &m) in mu.iter().enumerate() {
        for _ in 0..m.abs() {
            g = apply_y(idx + 1, &g, ctx, m < 0);
        }
    }
    Ok(g.scale_poly(&ParamPoly::monomial(ParamMonomial::var(Symbol::Q, -s * ctx.n()))))
}

/// `Y^{-alpha_i^{(n)}} f`.
fn apply_y_neg_simple<C: Coefficient>(i: usize, f: &LaurentPolynomial<C>, ctx: &MetaplecticContext) -> LaurentPolynomial<C> {
    let r = ctx.r();
    if i == 0 {
        let g = apply_y(r, f, ctx, true);
        let g = apply_y(1, &g, ctx, false);
        g.scale_poly(&ParamPoly::monomial(ParamMonomial::var(Symbol::Q, ctx.n())))
    } else {
        let g = apply_y(i + 1, f, ctx, false);
        apply_y(i, &g, ctx, true)
    }
}

/// `T_0^vee = T_{s_theta}^{-1} X^{-theta}`, with `T_{s_theta}` along the
/// palindrome `s_1 ... s_{r-1} ... s_1`.
fn apply_t0_vee<C: Coefficient>(f: &LaurentPolynomial<C>, ctx: &MetaplecticContext) -> LaurentPolynomial<C> {
    let r = ctx.r();
    let shift: Vec<i64> = theta(r).iter().map(|v| -v * ctx.n()).collect();
    let mut g = f.shift(&shift);
    let palindrome: Vec<usize> = (1..r).chain((1..r - 1).rev()).collect();
    for &j in palindrome.iter().rev() {
        g = apply_t_inv(j, &g, ctx);
    }
    g
}

/// Polynomial intertwiner `S_i = T_i^vee (1 - Y^{-alpha_i}) + (k^{-1} - k)`.
pub fn apply_s<C: Coefficient>(i: usize, f: &LaurentPolynomial<C>, ctx: &MetaplecticContext) -> LaurentPolynomial<C> {
    let diff = f.sub(&apply_y_neg_simple(i, f, ctx)).expect("same rank");
    let head = if i == 0 { apply_t0_vee(&diff, ctx) } else { apply_t(i, &diff, ctx) };
    head.sub(&f.scale_poly(&k_minus_kinv())).expect("same rank")
}

/// `E_mu^{(n)}` from `x^lambda` by the intertwiner recursion, made monic at
/// the end.
pub fn intertwiner_e(mu: &[i64], ctx: &MetaplecticContext) -> Result<LaurentPolynomial<Scalar>> {
    let dec = reduce_to_fundamental(mu, ctx)?;
    let half = ctx.half_symbol();
    let mut f = LaurentPolynomial::<ParamPoly>::x(dec.lambda.clone());
    let mut cur = dec.lambda.clone();
    for &i in dec.word.iter().rev() {
        f = apply_s(i, &f, ctx).reduce_involution(half);
        cur = ctx.simple_reflection(i).act(&cur);
        if f.coefficient(&cur).is_none_or(|c| c.is_zero()) {
            return Err(Error::Internal(format!(
                "intertwiner lost the leading term x^{cur:?} while building E_{mu:?}"
            )));
        }
    }
    let lead = Scalar::from_poly(f.coefficient(mu).expect("checked above").clone());
    f.try_map(|c| Scalar::from_poly(c.clone()).div(&lead))
}

/// Hecke symmetrizer `U = sum_u k^{l(u)} T_u`.
pub fn apply_u<C: Coefficient>(f: &LaurentPolynomial<C>, ctx: &MetaplecticContext) -> LaurentPolynomial<C> {
    let mut out = LaurentPolynomial::zero(f.rank());
    for u in all_perms(ctx.r()) {
        let mut g = f.clone();
        for &i in canonical_perm_word(&u).iter().rev() {
            g = apply_t(i, &g, ctx);
        }
        let w = ParamPoly::monomial(ParamMonomial::var(Symbol::K, perm_length(&u) as i64));
        out = out.add(&g.scale_poly(&w)).expect("same rank");
    }
    out
}

/// Multiplies by the least common multiple of the denominators, giving a
/// polynomial with parameter-ring coefficients.
pub fn clear_denominators(p: &LaurentPolynomial<Scalar>) -> (LaurentPolynomial<ParamPoly>, ParamPoly) {
    let mut l = ParamPoly::one();
    for (_, c) in p.terms() {
        let d = c.den();
        if d.is_one() || l.exact_div(d).is_some() {
            continue;
        }
        let g = poly_gcd(&l, d);
        l = l.mul(&d.exact_div(&g).expect("gcd divides"));
    }
    let cleared = p.map(|c| c.num().mul(&l.exact_div(c.den()).expect("lcm is a multiple")));
    (cleared, l)
}

/// Whether `Y^{n e_i} E = gamma(n e_i; mu) E` for every `i`.
pub fn eigenvalue_check(e: &LaurentPolynomial<Scalar>, mu: &[i64], ctx: &MetaplecticContext) -> Result<bool> {
    ctx.check_rank(mu)?;
    let (f, _) = clear_denominators(e);
    let half = ctx.half_symbol();
    for i in 0..ctx.r() {
        let mut eps = vec![0; ctx.r()];
        eps[i] = ctx.n();
        let gamma = ctx.gamma(&AffineRoot::new(eps, 0), mu)?;
        let lhs = apply_y(i + 1, &f, ctx, false);
        let rhs = f.scale_poly(&ParamPoly::monomial(gamma));
        if !lhs.equals(&rhs, half) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The operator determined by `(T_i - k) f = k^{-1} (1 - k^2 x^{n alpha_i})
/// / (1 - x^{n alpha_i}) (sbar(s_i) - 1) f`, i.e.
/// `sbar(s_i) f = f + k (1 - x^{n alpha_i}) (T_i - k) f / (1 - k^2 x^{n alpha_i})`.
pub fn apply_cg<C: Coefficient>(i: usize, f: &LaurentPolynomial<C>, ctx: &MetaplecticContext) -> Result<LaurentPolynomial<C>> {
    if !(1..ctx.r()).contains(&i) {
        return Err(Error::InvalidInput(format!("index {i} out of range")));
    }
    let k = ParamPoly::var(Symbol::K);
    let g = apply_t(i, f, ctx).sub(&f.scale_poly(&k)).expect("same rank");
    let n_alpha: Vec<i64> = simple_root_vector(i, ctx.r()).iter().map(|v| v * ctx.n()).collect();
    let h = g.sub(&g.shift(&n_alpha)).expect("same rank");
    let c = C::from_poly(k.mul(&k));
    let q = exact_divide_linear(&h, &c, &n_alpha, ctx.half_symbol()).map_err(|e| match e {
        Error::NotDivisible(m) => Error::IdentityViolated(format!("Chinta-Gunnells division: {m}")),
        other => other,
    })?;
    Ok(f.add(&q.scale_poly(&k)).expect("same rank"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_scalar;

    fn ctx(r: usize, n: i64) -> MetaplecticContext {
        MetaplecticContext::new(r, n).unwrap()
    }

    fn pp(e: &str) -> ParamPoly {
        parse_scalar(e).unwrap().as_poly().unwrap().clone()
    }

    fn poly(terms: &[(&[i64], &str)]) -> LaurentPolynomial<ParamPoly> {
        let mut p = LaurentPolynomial::zero(terms[0].0.len());
        for (e, c) in terms {
            p.add_term(e.to_vec(), pp(c));
        }
        p
    }

    fn x(e: &[i64]) -> LaurentPolynomial<ParamPoly> {
        LaurentPolynomial::x(e.to_vec())
    }

    #[test]
    fn ti_examples() {
        let c = ctx(3, 1);
        let got = apply_t(1, &x(&[2, 0, 0]), &c);
        assert!(got.equals(&poly(&[(&[1, 1, 0], "k^-1 - k"), (&[0, 2, 0], "k^-1")]), None));
        // 0 <= (lam, alpha_i) <= n gives a single sigma-weighted term
        for n in 1..=4 {
            let c = ctx(3, n);
            for a in 0..=n {
                let got = apply_t(1, &x(&[a, 0, 0]), &c);
                let want = LaurentPolynomial::monomial(vec![0, a, 0], ParamPoly::monomial(c.sigma(a)));
                assert!(got.equals(&want, None), "n={n} a={a}");
            }
        }
    }

    #[test]
    fn t0_examples() {
        let c = ctx(3, 1);
        assert!(apply_t(0, &x(&[0, 0, 0]), &c).equals(&poly(&[(&[0, 0, 0], "k")]), None));
        let got = apply_t(0, &x(&[1, 0, 0]), &c);
        assert!(got.equals(&poly(&[(&[1, 0, 0], "k - k^-1"), (&[0, 0, 1], "k*q")]), None));
    }

    #[test]
    fn omega_examples() {
        let c = ctx(3, 2);
        assert!(apply_omega(&x(&[0, 0, 0]), &c, false).equals(&x(&[0, 0, 0]), None));
        let got = apply_omega(&x(&[0, 0, 1]), &c, false);
        assert!(got.equals(&poly(&[(&[1, 0, 0], "q^-1")]), None));
        let f = poly(&[(&[2, -1, 0], "k + q"), (&[0, 1, 3], "G1")]);
        assert!(apply_omega(&apply_omega(&f, &c, false), &c, true).equals(&f, None));
    }

    #[test]
    fn y_examples() {
        let c = ctx(3, 1);
        assert!(apply_y(1, &x(&[0, 0, 0]), &c, false).equals(&poly(&[(&[0, 0, 0], "k^2")]), None));
        let got = apply_y(1, &x(&[1, 0, 0]), &c, false);
        assert!(got.equals(&poly(&[(&[1, 0, 0], "q^-1*k^-2")]), None));
        let f = poly(&[(&[1, -1, 2], "k"), (&[0, 2, 0], "q + G1")]);
        for n in 1..=3 {
            let c = ctx(3, n);
            let h = c.half_symbol();
            let ab = apply_y(2, &apply_y(1, &f, &c, false), &c, false);
            let ba = apply_y(1, &apply_y(2, &f, &c, false), &c, false);
            assert!(ab.equals(&ba, h));
            let back = apply_y(3, &apply_y(3, &f, &c, false), &c, true);
            assert!(back.equals(&f, h));
        }
    }

    #[test]
    fn s_example() {
        let c = ctx(3, 1);
        let got = apply_s(1, &x(&[1, 0, 0]), &c);
        let want = poly(&[(&[0, 1, 0], "(1 - q*k^4)*k^-1"), (&[1, 0, 0], "k^-1 - k")]);
        assert!(got.equals(&want, None));
    }

    #[test]
    fn oracle_examples() {
        let c = ctx(3, 1);
        let e = intertwiner_e(&[1, 0, 0], &c).unwrap();
        assert!(e.equals(&x(&[1, 0, 0]).to_scalar(), None));
        let e = intertwiner_e(&[0, 1, 0], &c).unwrap();
        let mut want = LaurentPolynomial::zero(3);
        want.add_term(vec![0, 1, 0], Scalar::one());
        want.add_term(vec![1, 0, 0], parse_scalar("(1-k^2)/(1-q*k^4)").unwrap());
        assert!(e.equals(&want, None));
    }

    #[test]
    fn symmetrizer_on_one() {
        let c = ctx(3, 1);
        let got = apply_u(&x(&[0, 0, 0]), &c);
        assert!(got.equals(&poly(&[(&[0, 0, 0], "k^6 + 2*k^4 + 2*k^2 + 1")]), None));
    }

    #[test]
    fn cg_examples() {
        for n in 1..=3 {
            let c = ctx(3, n);
            let h = c.half_symbol();
            let one = x(&[0, 0, 0]);
            assert!(apply_cg(1, &one, &c).unwrap().equals(&one, h));
            // exponents with all differences divisible by n stay polynomial
            let f = poly(&[
                (&[1, 1 - n, 1 + 2 * n], "k"),
                (&[0, 2 * n, 0], "q + G1"),
                (&[3 * n, 0, 0], "1"),
            ]);
            for i in 1..3 {
                let once = apply_cg(i, &f, &c).unwrap();
                assert!(!once.equals(&f, h));
                let twice = apply_cg(i, &once, &c).unwrap();
                assert!(twice.equals(&f, h), "n={n} i={i}");
            }
        }
    }

    #[test]
    fn cg_leaves_polynomials_off_the_sublattice() {
        let c = ctx(3, 2);
        let err = apply_cg(1, &x(&[0, 1, 0]), &c).unwrap_err();
        assert!(matches!(err, Error::IdentityViolated(_)));
        assert!(apply_cg(1, &x(&[0, 1, 0]), &ctx(3, 1)).is_ok());
    }
}
