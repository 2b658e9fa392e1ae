//! Batch checks of the identities everything else rests on: reference
//! tables, the operator relations, the operator oracle, eigenvalues,
//! triangularity, the `n = 1` embedding and the `q` limits.
//!
//! Each check sweeps a family of inputs in parallel and reports the first
//! failure in input order, so reports are deterministic.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;

use num_traits::Signed;
use rayon::prelude::*;

use crate::daha::{apply_cg, apply_omega, apply_t, apply_t_inv, apply_y, eigenvalue_check, intertwiner_e};
use crate::error::{Error, Result};
use crate::field::{LimitDirection, ParamPoly, Scalar, Symbol};
use crate::formulas::{compute_e, hecke_gap, compute_e_limit, compute_p, compute_p_limit, limit_coefficients, Normalization};
use crate::golden::{reference_entries, TableKind};
use crate::laurent::{Exponent, LaurentPolynomial};
use crate::rootsys::{is_dominant, is_antidominant, MetaplecticContext};
use crate::serialize::to_text;
use crate::words::bruhat_lower_set;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// The check itself could not be carried out.
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl CheckOutcome {
    fn from_first_failure(name: String, total: usize, unit: &str, first: Option<Failure>) -> Self {
        match first {
            None => CheckOutcome { name, status: Status::Pass, detail: format!("{total} {unit}") },
            Some(Failure::Mismatch(d)) => CheckOutcome { name, status: Status::Fail, detail: d },
            Some(Failure::Error(d)) => CheckOutcome { name, status: Status::Error, detail: d },
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Error => "ERROR",
        };
        write!(f, "[{tag}] {}: {}", self.name, self.detail)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<CheckOutcome>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed())
    }

    pub fn has_errors(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Error)
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

enum Failure {
    Mismatch(String),
    Error(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn mismatch(msg: String) -> Outcome {
    Err(Failure::Mismatch(msg))
}

/// Runs `check` on every input in parallel, keeping the first failure in
/// input order.
fn sweep<T: Sync>(name: String, unit: &str, inputs: &[T], check: impl Fn(&T) -> Outcome + Sync) -> CheckOutcome {
    let first = inputs
        .par_iter()
        .map(|x| check(x).err())
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .next();
    CheckOutcome::from_first_failure(name, inputs.len(), unit, first)
}

/// Every integer vector of length `r` with entries in `low..=high`, in
/// lexicographic order.
pub fn weights(r: usize, low: i64, high: i64) -> Vec<Exponent> {
    let mut out = vec![vec![]];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|w: Vec<i64>| {
                (low..=high).map(move |x| {
                    let mut w = w.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// The ranks, degrees and entry range a suite runs over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sweep {
    pub ranks: Vec<usize>,
    pub degrees: Vec<i64>,
    pub low: i64,
    pub high: i64,
}

impl Sweep {
    /// `r in {2, 3}`, `n in {1, 2, 3}`, entries in `[-1, 2]`.
    pub fn standard() -> Self {
        Sweep { ranks: vec![2, 3], degrees: vec![1, 2, 3], low: -1, high: 2 }
    }

    /// `r = 3`, `n in {1, 2, 3}`, entries in `[-2, 2]`.
    pub fn relations() -> Self {
        Sweep { ranks: vec![3], degrees: vec![1, 2, 3], low: -2, high: 2 }
    }

    fn contexts(&self) -> Result<Vec<MetaplecticContext>> {
        let mut out = Vec::new();
        for &r in &self.ranks {
            for &n in &self.degrees {
                out.push(MetaplecticContext::new(r, n)?);
            }
        }
        Ok(out)
    }
}

fn mu_label(mu: &[i64]) -> String {
    let parts: Vec<String> = mu.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(","))
}

fn show(p: &LaurentPolynomial<Scalar>, half: Option<Symbol>) -> String {
    to_text(p, half).unwrap_or_else(|e| format!("<unrenderable: {e}>"))
}

fn show_poly(p: &LaurentPolynomial<ParamPoly>, half: Option<Symbol>) -> String {
    show(&p.to_scalar(), half)
}

fn ctx_label(ctx: &MetaplecticContext) -> String {
    format!("r={} n={}", ctx.r(), ctx.n())
}

/// Reference tables against the walk formulas.
pub fn golden() -> Result<Report> {
    let entries = reference_entries()?;
    let checks = entries
        .par_iter()
        .map(|e| {
            let name = match e.kind {
                TableKind::Nonsymmetric => format!("golden E_{}^({})", mu_label(&e.mu), e.n),
                TableKind::Symmetric => format!("golden P_{}^({})", mu_label(&e.mu), e.n),
            };
            let run = || -> Outcome {
                let ctx = MetaplecticContext::new(e.r, e.n)?;
                let got = match e.kind {
                    TableKind::Nonsymmetric => compute_e(&e.mu, &ctx, Normalization::Monic)?,
                    TableKind::Symmetric => compute_p(&e.mu, &ctx)?,
                };
                if got.equals(&e.poly, ctx.half_symbol()) {
                    Ok(())
                } else {
                    let diff = got.sub(&e.poly)?;
                    mismatch(format!("computed minus table = {}", show(&diff, ctx.half_symbol())))
                }
            };
            CheckOutcome::from_first_failure(name, e.summands, "summands", run().err())
        })
        .collect();
    Ok(Report { checks })
}

type Op<'a> = Box<dyn Fn(&LaurentPolynomial<ParamPoly>) -> LaurentPolynomial<ParamPoly> + Sync + 'a>;

fn identity_check(name: String, ctx: &MetaplecticContext, basis: &[Exponent], lhs: Op, rhs: Op) -> CheckOutcome {
    let half = ctx.half_symbol();
    sweep(name, "monomials", basis, |lam| {
        let x = LaurentPolynomial::x(lam.clone());
        let (a, b) = (lhs(&x), rhs(&x));
        if a.equals(&b, half) {
            Ok(())
        } else {
            let d = a.sub(&b).map_err(Failure::from)?;
            mismatch(format!("on x^{}: lhs - rhs = {}", mu_label(lam), show_poly(&d, half)))
        }
    })
}

/// Hecke, braid, `omega`-twist and `Y` relations on a monomial basis.
pub fn relations(sweep_cfg: &Sweep) -> Result<Report> {
    let mut checks = Vec::new();
    for ctx in sweep_cfg.contexts()? {
        let r = ctx.r();
        let basis = weights(r, sweep_cfg.low, sweep_cfg.high);
        let c = &ctx;
        let label = ctx_label(c);
        let gap = hecke_gap();
        for i in 0..r {
            let g = gap.clone();
            checks.push(identity_check(
                format!("hecke T_{i} {label}"),
                c,
                &basis,
                Box::new(move |f| {
                    // (T - k)(T + k^{-1}) = T^2 + (k^{-1} - k) T - 1
                    let t = apply_t(i, f, c);
                    let tt = apply_t(i, &t, c);
                    tt.add(&t.scale_poly(&g)).unwrap().sub(f).unwrap()
                }),
                Box::new(|f| LaurentPolynomial::zero(f.rank())),
            ));
        }
        if r >= 3 {
            for i in 0..r {
                let j = (i + 1) % r;
                checks.push(identity_check(
                    format!("braid T_{i} T_{j} T_{i} {label}"),
                    c,
                    &basis,
                    Box::new(move |f| apply_t(i, &apply_t(j, &apply_t(i, f, c), c), c)),
                    Box::new(move |f| apply_t(j, &apply_t(i, &apply_t(j, f, c), c), c)),
                ));
            }
        }
        for i in 0..r {
            let j = (i + 1) % r;
            checks.push(identity_check(
                format!("omega T_{i} = T_{j} omega {label}"),
                c,
                &basis,
                Box::new(move |f| apply_omega(&apply_t(i, f, c), c, false)),
                Box::new(move |f| apply_t(j, &apply_omega(f, c, false), c)),
            ));
        }
        for i in 1..=r {
            for j in i + 1..=r {
                checks.push(identity_check(
                    format!("Y_{i} Y_{j} = Y_{j} Y_{i} {label}"),
                    c,
                    &basis,
                    Box::new(move |f| apply_y(i, &apply_y(j, f, c, false), c, false)),
                    Box::new(move |f| apply_y(j, &apply_y(i, f, c, false), c, false)),
                ));
            }
            checks.push(identity_check(
                format!("Y_{i} Y_{i}^-1 = 1 {label}"),
                c,
                &basis,
                Box::new(move |f| apply_y(i, &apply_y(i, f, c, true), c, false)),
                Box::new(|f| f.clone()),
            ));
            checks.push(identity_check(
                format!("Y_{i}^-1 Y_{i} = 1 {label}"),
                c,
                &basis,
                Box::new(move |f| apply_y(i, &apply_y(i, f, c, false), c, true)),
                Box::new(|f| f.clone()),
            ));
        }
        checks.push(identity_check(
            format!("T_1 T_1^-1 = 1 {label}"),
            c,
            &basis,
            Box::new(move |f| apply_t(1, &apply_t_inv(1, f, c), c)),
            Box::new(|f| f.clone()),
        ));
    }
    Ok(Report { checks })
}

/// Walk formula against the intertwiner recursion.
pub fn oracle(sweep_cfg: &Sweep) -> Result<Report> {
    let mut checks = Vec::new();
    for ctx in sweep_cfg.contexts()? {
        let basis = weights(ctx.r(), sweep_cfg.low, sweep_cfg.high);
        let half = ctx.half_symbol();
        checks.push(sweep(format!("oracle {}", ctx_label(&ctx)), "weights", &basis, |mu| {
            let walk = compute_e(mu, &ctx, Normalization::Monic)?;
            let op = intertwiner_e(mu, &ctx)?;
            if walk.equals(&op, half) {
                Ok(())
            } else {
                let d = walk.sub(&op)?;
                mismatch(format!("E_{}: walks minus operators = {}", mu_label(mu), show(&d, half)))
            }
        }));
    }
    Ok(Report { checks })
}

/// `Y` eigenvalues of every `E_mu` and `T_i P_mu = k P_mu`.
pub fn eigen(sweep_cfg: &Sweep) -> Result<Report> {
    let mut checks = Vec::new();
    for ctx in sweep_cfg.contexts()? {
        let basis = weights(ctx.r(), sweep_cfg.low, sweep_cfg.high);
        let dominant: Vec<Exponent> = basis.iter().filter(|m| is_dominant(m)).cloned().collect();
        let half = ctx.half_symbol();
        checks.push(sweep(format!("eigenvalues {}", ctx_label(&ctx)), "weights", &basis, |mu| {
            let e = compute_e(mu, &ctx, Normalization::Monic)?;
            if eigenvalue_check(&e, mu, &ctx)? {
                Ok(())
            } else {
                mismatch(format!("E_{} = {} is not a Y-eigenfunction with eigenvalues gamma(n e_i; mu)", mu_label(mu), show(&e, half)))
            }
        }));
        checks.push(sweep(format!("T_i P = k P, sbar(s_i) P = P {}", ctx_label(&ctx)), "dominant weights", &dominant, |mu| {
            let p = compute_p(mu, &ctx)?;
            let kp = p.scale_poly(&ParamPoly::var(Symbol::K));
            for i in 1..ctx.r() {
                let tp = apply_t(i, &p, &ctx);
                if !tp.equals(&kp, half) {
                    let d = tp.sub(&kp)?;
                    return mismatch(format!("T_{i} P_{} - k P = {}", mu_label(mu), show(&d, half)));
                }
                let sp = apply_cg(i, &p, &ctx)?;
                if !sp.equals(&p, half) {
                    let d = sp.sub(&p)?;
                    return mismatch(format!("sbar(s_{i}) P_{} - P = {}", mu_label(mu), show(&d, half)));
                }
            }
            Ok(())
        }));
    }
    Ok(Report { checks })
}

fn support_set(p: &LaurentPolynomial<Scalar>, half: Option<Symbol>) -> BTreeSet<Exponent> {
    p.effective_support(half).into_iter().collect()
}

/// Support equals the Bruhat lower set and shrinks along divisibility of
/// the degree.
pub fn order(sweep_cfg: &Sweep) -> Result<Report> {
    let mut checks = Vec::new();
    for ctx in sweep_cfg.contexts()? {
        let basis = weights(ctx.r(), sweep_cfg.low, sweep_cfg.high);
        let half = ctx.half_symbol();
        checks.push(sweep(format!("triangularity {}", ctx_label(&ctx)), "weights", &basis, |mu| {
            let e = compute_e(mu, &ctx, Normalization::Monic)?;
            let support = support_set(&e, half);
            let lower = bruhat_lower_set(mu, &ctx)?;
            if support == lower {
                Ok(())
            } else {
                mismatch(format!(
                    "E_{}: support {:?} but Bruhat lower set {:?}",
                    mu_label(mu),
                    support,
                    lower
                ))
            }
        }));
    }
    for &r in &sweep_cfg.ranks {
        let basis = weights(r, sweep_cfg.low, sweep_cfg.high);
        for (m, n) in [(1, 2), (1, 3), (2, 4)] {
            let small = MetaplecticContext::new(r, m)?;
            let big = MetaplecticContext::new(r, n)?;
            checks.push(sweep(format!("support shrinkage r={r} m={m} n={n}"), "weights", &basis, |mu| {
                let a = support_set(&compute_e(mu, &big, Normalization::Monic)?, big.half_symbol());
                let b = support_set(&compute_e(mu, &small, Normalization::Monic)?, small.half_symbol());
                if a.is_subset(&b) {
                    Ok(())
                } else {
                    mismatch(format!(
                        "mu={}: {:?} not contained in {:?}",
                        mu_label(mu),
                        a.difference(&b).collect::<Vec<_>>(),
                        b
                    ))
                }
            }));
        }
    }
    Ok(Report { checks })
}

/// `E_{n nu}^{(n)} = E_nu^{(1)}(x^n; q^n)` for small `nu`, `r = 3`.
pub fn embedding() -> Result<Report> {
    let nus: Vec<Exponent> = vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]];
    let mut checks = Vec::new();
    for n in [2, 3] {
        let ctx = MetaplecticContext::new(3, n)?;
        let one = MetaplecticContext::new(3, 1)?;
        checks.push(sweep(format!("Macdonald embedding r=3 n={n}"), "weights", &nus, |nu| {
            let scaled: Vec<i64> = nu.iter().map(|v| v * n).collect();
            let lhs = compute_e(&scaled, &ctx, Normalization::Monic)?;
            let rhs = compute_e(nu, &one, Normalization::Monic)?.substitute_power(n);
            if lhs.equals(&rhs, ctx.half_symbol()) {
                Ok(())
            } else {
                let d = lhs.sub(&rhs)?;
                mismatch(format!("nu={}: difference {}", mu_label(nu), show(&d, ctx.half_symbol())))
            }
        }));
    }
    Ok(Report { checks })
}

/// Whether `c` is a Laurent polynomial in the Gauss sums with nonnegative
/// coefficients once `k` is specialized.
fn nonnegative_in_gauss(c: &Scalar, k: &Scalar, half: Option<Symbol>) -> Result<bool> {
    let s = c.substitute(&BTreeMap::from([(Symbol::K, k.clone())]))?.normalize(half)?;
    // normalization moves negative exponents into a monomial denominator
    let den_ok = s.den().as_term().is_some_and(|(_, d)| d.is_positive());
    let num = s.num();
    Ok(den_ok
        && !num.involves(Symbol::Q)
        && num.terms().iter().all(|(_, a)| !a.is_negative()))
}

/// Limit formulas against coefficientwise limits, leading terms, positivity.
pub fn limits(sweep_cfg: &Sweep) -> Result<Report> {
    use LimitDirection::{Infinity, Zero};
    let half_k = Scalar::rational(num_rational::BigRational::new(1.into(), 2.into()));
    let two_k = Scalar::integer(2);
    let mut checks = Vec::new();
    for ctx in sweep_cfg.contexts()? {
        let basis = weights(ctx.r(), sweep_cfg.low, sweep_cfg.high);
        let dominant: Vec<Exponent> = basis.iter().filter(|m| is_dominant(m)).cloned().collect();
        let half = ctx.half_symbol();
        let label = ctx_label(&ctx);
        let positivity = |p: &LaurentPolynomial<Scalar>, dir: LimitDirection, what: &str| -> Outcome {
            let k = if dir == Zero { &half_k } else { &two_k };
            for (e, c) in p.terms() {
                if !nonnegative_in_gauss(c, k, half)? {
                    return mismatch(format!("{what}: coefficient of x^{} is {} at k = {}", mu_label(e), c, k));
                }
            }
            Ok(())
        };
        checks.push(sweep(format!("E limits {label}"), "weights", &basis, |mu| {
            let full = compute_e(mu, &ctx, Normalization::Monic)?;
            for dir in [Zero, Infinity] {
                let lim = compute_e_limit(mu, &ctx, dir, Normalization::Monic)?;
                let want = limit_coefficients(&full, dir, half)?;
                if !lim.equals(&want, half) {
                    let d = lim.sub(&want)?;
                    return mismatch(format!("E_{} at q -> {dir:?}: walks minus limit = {}", mu_label(mu), show(&d, half)));
                }
                positivity(&lim, dir, &format!("E_{} at q -> {dir:?}", mu_label(mu)))?;
            }
            Ok(())
        }));
        checks.push(sweep(format!("P limits {label}"), "dominant weights", &dominant, |mu| {
            let full = compute_p(mu, &ctx)?;
            for dir in [Zero, Infinity] {
                let lim = compute_p_limit(mu, &ctx, dir)?;
                let want = limit_coefficients(&full, dir, half)?;
                if !lim.equals(&want, half) {
                    let d = lim.sub(&want)?;
                    return mismatch(format!("P_{} at q -> {dir:?}: walks minus limit = {}", mu_label(mu), show(&d, half)));
                }
                positivity(&lim, dir, &format!("P_{} at q -> {dir:?}", mu_label(mu)))?;
            }
            Ok(())
        }));
        let leading = |dir: LimitDirection| {
            move |mu: &Exponent| -> Outcome {
                let lim = compute_e_limit(mu, &ctx, dir, Normalization::Monic)?;
                if lim.equals(&LaurentPolynomial::x(mu.clone()), half) {
                    Ok(())
                } else {
                    mismatch(format!("E_{} at q -> {dir:?} is {}", mu_label(mu), show(&lim, half)))
                }
            }
        };
        checks.push(sweep(format!("dominant E at q -> 0 is x^mu {label}"), "weights", &dominant, leading(Zero)));
        let anti: Vec<Exponent> = basis.iter().filter(|m| is_antidominant(m)).cloned().collect();
        checks.push(sweep(format!("antidominant E at q -> inf is x^mu {label}"), "weights", &anti, leading(Infinity)));
    }
    Ok(Report { checks })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Golden,
    Relations,
    Oracle,
    Eigen,
    Order,
    Limits,
    All,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        Some(match s {
            "golden" => Suite::Golden,
            "relations" => Suite::Relations,
            "oracle" => Suite::Oracle,
            "eigen" => Suite::Eigen,
            "order" => Suite::Order,
            "limits" => Suite::Limits,
            "all" => Suite::All,
            _ => return None,
        })
    }
}

/// Runs a suite. `sweep_cfg` overrides the default ranks and degrees.
pub fn run(suite: Suite, sweep_cfg: Option<&Sweep>) -> Result<Report> {
    let std_sweep = sweep_cfg.cloned().unwrap_or_else(Sweep::standard);
    let rel_sweep = sweep_cfg
        .map(|s| Sweep { low: -2, high: 2, ..s.clone() })
        .unwrap_or_else(Sweep::relations);
    Ok(match suite {
        Suite::Golden => golden()?,
        Suite::Relations => relations(&rel_sweep)?,
        Suite::Oracle => oracle(&std_sweep)?,
        Suite::Eigen => eigen(&std_sweep)?,
        Suite::Order => {
            let mut report = order(&std_sweep)?;
            report.extend(embedding()?);
            report
        }
        Suite::Limits => limits(&std_sweep)?,
        Suite::All => {
            let mut report = golden()?;
            for s in [Suite::Relations, Suite::Oracle, Suite::Eigen, Suite::Order, Suite::Limits] {
                report.extend(run(s, sweep_cfg)?);
            }
            report
        }
    })
}
