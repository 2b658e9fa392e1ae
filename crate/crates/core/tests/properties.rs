use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use ssv_core::field::{parse_scalar, LimitDirection, ParamMonomial, ParamPoly, Scalar, Symbol, MAX_SYMBOLS};
use ssv_core::formulas::{compute_e, Normalization};
use ssv_core::laurent::LaurentPolynomial;
use ssv_core::rootsys::MetaplecticContext;
use ssv_core::serialize::{to_text, PolyDocument};
use ssv_core::words::{apply_word, bruhat_lower_set, reduce_to_fundamental};

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-5i64..=5, 1i64..=3).prop_map(|(a, b)| BigRational::new(BigInt::from(a), BigInt::from(b)))
}

// k, q, G1 with exponents in `lo..=hi`.
fn monomial(lo: i16, hi: i16) -> impl Strategy<Value = ParamMonomial> {
    (lo..=hi, lo..=hi, lo..=hi).prop_map(|(k, q, g)| {
        let mut e = [0i16; MAX_SYMBOLS];
        e[0] = k;
        e[1] = q;
        e[2] = g;
        ParamMonomial::from_exponents(e)
    })
}

fn poly(lo: i16, hi: i16) -> impl Strategy<Value = ParamPoly> {
    prop::collection::vec((monomial(lo, hi), small_rational()), 0..4).prop_map(ParamPoly::from_terms)
}

fn nonzero_poly(lo: i16, hi: i16) -> impl Strategy<Value = ParamPoly> {
    poly(lo, hi).prop_filter("nonzero", |p| !p.is_zero())
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (poly(-1, 2), nonzero_poly(0, 2)).prop_map(|(n, d)| Scalar::new(n, d).unwrap())
}

fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |s| !s.is_zero())
}

fn laurent(rank: usize) -> impl Strategy<Value = LaurentPolynomial<Scalar>> {
    prop::collection::vec((prop::collection::vec(-2i64..=2, rank), scalar()), 0..4).prop_map(move |ts| {
        let mut p = LaurentPolynomial::zero(rank);
        for (e, c) in ts {
            p.add_term(e, c);
        }
        p
    })
}

fn rat(a: i64, b: i64) -> Scalar {
    Scalar::rational(BigRational::new(BigInt::from(a), BigInt::from(b)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert!(a.add(&b).equals(&b.add(&a), None));
        prop_assert!(a.mul(&b).equals(&b.mul(&a), None));
        prop_assert!(a.add(&b).add(&c).equals(&a.add(&b.add(&c)), None));
        prop_assert!(a.mul(&b).mul(&c).equals(&a.mul(&b.mul(&c)), None));
        prop_assert!(a.mul(&b.add(&c)).equals(&a.mul(&b).add(&a.mul(&c)), None));
        prop_assert!(a.sub(&a).is_zero() || a.sub(&a).equals(&Scalar::zero(), None));
    }

    #[test]
    fn inverses(a in nonzero_scalar()) {
        prop_assert!(a.mul(&a.inv().unwrap()).equals(&Scalar::one(), None));
        prop_assert!(a.pow(-2).unwrap().mul(&a.pow(2).unwrap()).equals(&Scalar::one(), None));
    }

    #[test]
    fn normalize_is_canonical(a in scalar(), f in nonzero_poly(0, 1)) {
        let n = a.normalize(None).unwrap();
        prop_assert!(n.equals(&a, None));
        prop_assert_eq!(n.normalize(None).unwrap().render_text(), n.render_text());
        // scaling numerator and denominator by the same factor changes nothing
        let b = Scalar::new(a.num().mul(&f), a.den().mul(&f)).unwrap();
        prop_assert_eq!(b.normalize(None).unwrap().render_text(), n.render_text());
    }

    #[test]
    fn text_rendering_parses_back(a in scalar()) {
        let text = a.normalize(None).unwrap().render_text();
        let back = parse_scalar(&text).unwrap();
        prop_assert!(back.equals(&a, None), "{}", text);
    }

    #[test]
    fn substitution_is_a_homomorphism(a in scalar(), b in scalar(), k in 2i64..5, g in 1i64..4) {
        let bind = BTreeMap::from([
            (Symbol::K, rat(k, 3)),
            (Symbol::Q, rat(1, 7)),
            (Symbol::gauss(1), rat(g, 5)),
        ]);
        let (Ok(sa), Ok(sb)) = (a.substitute(&bind), b.substitute(&bind)) else {
            return Ok(());
        };
        prop_assert!(a.add(&b).substitute(&bind).unwrap().equals(&sa.add(&sb), None));
        prop_assert!(a.mul(&b).substitute(&bind).unwrap().equals(&sa.mul(&sb), None));
        // every symbol present is bound, so the value is a rational number
        prop_assert!(sa.normalize(None).unwrap().num().as_constant().is_some());
    }

    #[test]
    fn limit_at_zero_is_evaluation_when_regular(n in poly(0, 2), d in nonzero_poly(0, 2), c in small_rational()) {
        // force a nonzero value at q = 0
        let d = d.add(&ParamPoly::constant(c.clone() + BigRational::from_integer(7.into())));
        let a = Scalar::new(n, d).unwrap();
        let at_zero = a.substitute(&BTreeMap::from([(Symbol::Q, Scalar::zero())]));
        if let Ok(v) = at_zero {
            prop_assert!(a.limit_q(LimitDirection::Zero, None).unwrap().equals(&v, None));
        }
    }

    #[test]
    fn json_round_trip(p in laurent(3)) {
        let doc = PolyDocument::new("E", &[0, 0, 0], 2, None, &p, None).unwrap();
        let back = PolyDocument::from_json(&doc.to_json()).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert!(back.polynomial().unwrap().equals(&p, None));
        prop_assert_eq!(to_text(&back.polynomial().unwrap(), None).unwrap(), to_text(&p, None).unwrap());
    }

    #[test]
    fn power_substitution_is_a_ring_map(a in laurent(2), b in laurent(2), n in 1i64..4) {
        let lhs = a.mul(&b).unwrap().substitute_power(n);
        let rhs = a.substitute_power(n).mul(&b.substitute_power(n)).unwrap();
        prop_assert!(lhs.equals(&rhs, None));
        let lhs = a.add(&b).unwrap().substitute_power(n);
        let rhs = a.substitute_power(n).add(&b.substitute_power(n)).unwrap();
        prop_assert!(lhs.equals(&rhs, None));
    }

    #[test]
    fn decompositions_rebuild_mu(mu in prop::collection::vec(-3i64..=3, 3), n in 1i64..=4) {
        let ctx = MetaplecticContext::new(3, n).unwrap();
        let d = reduce_to_fundamental(&mu, &ctx).unwrap();
        prop_assert_eq!(apply_word(&d.word, &d.lambda, &ctx), mu.clone());
        prop_assert!(ctx.in_fundamental_domain(&d.lambda));
        prop_assert!(d.betas.iter().all(|b| b.is_positive() && b.pair(&d.lambda) != 0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn e_is_monic_and_triangular(mu in prop::collection::vec(-2i64..=3, 3), n in 1i64..=4) {
        let ctx = MetaplecticContext::new(3, n).unwrap();
        let e = compute_e(&mu, &ctx, Normalization::Monic).unwrap();
        prop_assert!(e.coefficient(&mu).unwrap().equals(&Scalar::one(), ctx.half_symbol()));
        let lower = bruhat_lower_set(&mu, &ctx).unwrap();
        prop_assert!(e.support().iter().all(|s| lower.contains(s)));
    }
}
