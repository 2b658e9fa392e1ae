//! Root data of `GL_r`, affine Weyl group elements, the metaplectic
//! rescaling and the scalar functions `sigma` and `gamma`.
//!
//! Conventions, fixed once here:
//! * permutations are 0-based one-line arrays, `perm[i] = w(i)`;
//! * `w` acts on vectors by moving entry `i` to slot `w(i)`;
//! * products apply the right factor first, `(uv)(i) = u(v(i))`;
//! * simple indices are 1-based, `alpha_i = e_i - e_{i+1}`, and index 0
//!   is the affine simple root `-theta + delta`.

use crate::error::{Error, Result};
use crate::field::{ParamMonomial, Symbol, MAX_GAUSS};
use crate::laurent::Exponent;

/// One-line permutation, 0-based.
pub type Perm = Vec<usize>;

pub fn perm_identity(r: usize) -> Perm {
    (0..r).collect()
}

/// The simple transposition `s_i`, `1 <= i <= r - 1`.
pub fn perm_simple(i: usize, r: usize) -> Perm {
    assert!((1..r).contains(&i), "simple index {i} out of range for rank {r}");
    let mut p = perm_identity(r);
    p.swap(i - 1, i);
    p
}

/// The transposition `s_theta` exchanging the first and last slot.
pub fn perm_theta(r: usize) -> Perm {
    let mut p = perm_identity(r);
    p.swap(0, r - 1);
    p
}

pub fn perm_compose(u: &[usize], v: &[usize]) -> Perm {
    v.iter().map(|&j| u[j]).collect()
}

pub fn perm_inverse(u: &[usize]) -> Perm {
    let mut inv = vec![0; u.len()];
    for (i, &j) in u.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// `(w v)_{w(i)} = v_i`.
pub fn perm_apply(w: &[usize], v: &[i64]) -> Vec<i64> {
    let mut out = vec![0; v.len()];
    for (i, &j) in w.iter().enumerate() {
        out[j] = v[i];
    }
    out
}

/// Number of inversions, i.e. the Coxeter length in `S_r`.
pub fn perm_length(w: &[usize]) -> usize {
    let mut count = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                count += 1;
            }
        }
    }
    count
}

/// All permutations of `0..r` in lexicographic order.
pub fn all_perms(r: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    let mut cur = perm_identity(r);
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..r.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..r).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `e_i - e_j` (0-based slots).
pub fn root_vector(r: usize, i: usize, j: usize) -> Vec<i64> {
    let mut v = vec![0; r];
    v[i] += 1;
    v[j] -= 1;
    v
}

/// The positive roots `e_i - e_j`, `i < j`, in lexicographic order.
pub fn positive_roots(r: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            out.push(root_vector(r, i, j));
        }
    }
    out
}

pub fn theta(r: usize) -> Vec<i64> {
    root_vector(r, 0, r - 1)
}

/// Finite simple root `alpha_i`, `1 <= i <= r - 1`.
pub fn simple_root_vector(i: usize, r: usize) -> Vec<i64> {
    root_vector(r, i - 1, i)
}

pub fn is_dominant(mu: &[i64]) -> bool {
    mu.windows(2).all(|w| w[0] >= w[1])
}

/// `mu_1 <= ... <= mu_r`.
pub fn is_antidominant(mu: &[i64]) -> bool {
    mu.windows(2).all(|w| w[0] <= w[1])
}

/// `alpha + level * delta`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    pub finite: Vec<i64>,
    pub level: i64,
}

impl AffineRoot {
    pub fn new(finite: Vec<i64>, level: i64) -> Self {
        AffineRoot { finite, level }
    }

    /// Simple affine root of the untwisted system: `alpha_i` for
    /// `i >= 1`, `-theta + delta` for `i = 0`.
    pub fn simple(i: usize, r: usize) -> Self {
        if i == 0 {
            AffineRoot::new(theta(r).iter().map(|v| -v).collect(), 1)
        } else {
            AffineRoot::new(simple_root_vector(i, r), 0)
        }
    }

    pub fn rank(&self) -> usize {
        self.finite.len()
    }

    /// `<rho, v> = (alpha, v) + level`.
    pub fn pair(&self, v: &[i64]) -> i64 {
        dot(&self.finite, v) + self.level
    }

    pub fn neg(&self) -> Self {
        AffineRoot::new(self.finite.iter().map(|v| -v).collect(), -self.level)
    }

    /// Finite part is a positive multiple of a positive root.
    pub fn finite_is_positive(&self) -> bool {
        self.finite.iter().find(|&&v| v != 0).is_some_and(|&v| v > 0)
    }

    /// Member of the positive affine roots: positive level, or level zero
    /// and positive finite part.
    pub fn is_positive(&self) -> bool {
        self.level > 0 || (self.level == 0 && self.finite_is_positive())
    }

    /// Representative of `{rho, -rho}` in the positive affine roots.
    pub fn positive_representative(&self) -> Self {
        if self.is_positive() {
            self.clone()
        } else {
            self.neg()
        }
    }

    /// Representative of `{rho, -rho}` whose finite part is positive
    /// (the periodic orientation of hyperplanes).
    pub fn periodic_representative(&self) -> Self {
        if self.finite_is_positive() {
            self.clone()
        } else {
            self.neg()
        }
    }

    /// Metaplectic image: finite part times `n`, level times `n^2`.
    pub fn psi(&self, n: i64) -> Self {
        AffineRoot::new(self.finite.iter().map(|v| v * n).collect(), self.level * n * n)
    }
}

/// Reflection of a weight in the hyperplane of an affine root.
pub fn reflect(rho: &AffineRoot, v: &[i64]) -> Result<Exponent> {
    let norm = dot(&rho.finite, &rho.finite);
    if norm == 0 {
        return Err(Error::ZeroFinitePart);
    }
    let p = 2 * rho.pair(v);
    rho.finite
        .iter()
        .zip(v)
        .map(|(a, x)| {
            let s = p * a;
            if s % norm != 0 {
                Err(Error::MalformedElement(format!(
                    "reflection of {v:?} in {rho:?} is not integral"
                )))
            } else {
                Ok(x - s / norm)
            }
        })
        .collect()
}

/// `tau(translation) * perm`, an element of the extended affine Weyl group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineWeylElement {
    pub translation: Vec<i64>,
    pub perm: Perm,
}

impl AffineWeylElement {
    pub fn identity(r: usize) -> Self {
        AffineWeylElement { translation: vec![0; r], perm: perm_identity(r) }
    }

    pub fn finite(perm: Perm) -> Self {
        AffineWeylElement { translation: vec![0; perm.len()], perm }
    }

    pub fn translation(t: Vec<i64>) -> Self {
        let r = t.len();
        AffineWeylElement { translation: t, perm: perm_identity(r) }
    }

    /// Simple reflection `s_i^{(n)}`; `n = 1` gives the Coxeter generators.
    /// `s_0^{(n)} = tau(n theta) s_theta`.
    pub fn simple(i: usize, r: usize, n: i64) -> Self {
        if i == 0 {
            AffineWeylElement {
                translation: theta(r).iter().map(|v| v * n).collect(),
                perm: perm_theta(r),
            }
        } else {
            Self::finite(perm_simple(i, r))
        }
    }

    /// `omega^{(n)} = tau(n e_1) s_1 s_2 ... s_{r-1}`.
    pub fn omega(r: usize, n: i64) -> Self {
        let mut t = vec![0; r];
        t[0] = n;
        let mut c = perm_identity(r);
        for i in (1..r).rev() {
            c = perm_compose(&perm_simple(i, r), &c);
        }
        AffineWeylElement { translation: t, perm: c }
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn is_identity(&self) -> bool {
        self.translation.iter().all(|&v| v == 0) && self.perm == perm_identity(self.rank())
    }

    /// `tau(a) u * tau(b) v = tau(a + u b) uv`.
    pub fn compose(&self, o: &Self) -> Self {
        let ub = perm_apply(&self.perm, &o.translation);
        AffineWeylElement {
            translation: self.translation.iter().zip(&ub).map(|(a, b)| a + b).collect(),
            perm: perm_compose(&self.perm, &o.perm),
        }
    }

    pub fn inverse(&self) -> Self {
        let inv = perm_inverse(&self.perm);
        let t = perm_apply(&inv, &self.translation);
        AffineWeylElement { translation: t.iter().map(|v| -v).collect(), perm: inv }
    }

    /// Affine action on weights: `v -> perm(v) + translation`.
    pub fn act(&self, v: &[i64]) -> Exponent {
        perm_apply(&self.perm, v)
            .iter()
            .zip(&self.translation)
            .map(|(a, b)| a + b)
            .collect()
    }

    /// Linear action on affine roots:
    /// `tau(t) u * (v + s delta) = uv + (s - (uv, t)) delta`.
    pub fn act_root(&self, rho: &AffineRoot) -> AffineRoot {
        let uv = perm_apply(&self.perm, &rho.finite);
        let level = rho.level - dot(&uv, &self.translation);
        AffineRoot::new(uv, level)
    }

    /// Metaplectic image: translation scaled by `n`.
    pub fn psi(&self, n: i64) -> Self {
        AffineWeylElement {
            translation: self.translation.iter().map(|v| v * n).collect(),
            perm: self.perm.clone(),
        }
    }
}

/// Rank and metaplectic degree, plus the `G_{n/2}` reduction switch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MetaplecticContext {
    r: usize,
    n: i64,
    reduce_half: bool,
}

impl MetaplecticContext {
    pub fn new(r: usize, n: i64) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidInput(format!("rank must be at least 2, got {r}")));
        }
        if n < 1 {
            return Err(Error::InvalidInput(format!(
                "metaplectic degree must be positive, got {n}"
            )));
        }
        if (n / 2) as usize > MAX_GAUSS {
            return Err(Error::InvalidInput(format!(
                "metaplectic degree {n} needs more than {MAX_GAUSS} Gauss sums"
            )));
        }
        Ok(MetaplecticContext { r, n, reduce_half: true })
    }

    /// Whether `G_{n/2}^2 = 1` is applied when comparing and printing.
    pub fn with_reduce_half(mut self, on: bool) -> Self {
        self.reduce_half = on;
        self
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn reduce_half(&self) -> bool {
        self.reduce_half
    }

    /// The involutive symbol `G_{n/2}` when `n` is even and reduction is on.
    pub fn half_symbol(&self) -> Option<Symbol> {
        (self.reduce_half && self.n % 2 == 0).then(|| Symbol::gauss((self.n / 2) as usize))
    }

    pub fn check_rank(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.r {
            return Err(Error::RankMismatch { expected: self.r, got: v.len() });
        }
        Ok(())
    }

    /// `r_n(a)`, the residue in `[0, n)`.
    pub fn residue(&self, a: i64) -> i64 {
        a.rem_euclid(self.n)
    }

    /// `t_n(a) = a - r_n(a)`.
    pub fn floor_multiple(&self, a: i64) -> i64 {
        a - self.residue(a)
    }

    /// Periodic Gauss sum `G_a`: `G_0 = k`, `G_{a+n} = G_a`, `G_a G_{-a} = 1`,
    /// expressed in `G_1, ..., G_{n/2}`.
    pub fn gauss(&self, a: i64) -> ParamMonomial {
        let j = self.residue(a);
        if j == 0 {
            ParamMonomial::var(Symbol::K, 1)
        } else if 2 * j <= self.n {
            ParamMonomial::var(Symbol::gauss(j as usize), 1)
        } else {
            ParamMonomial::var(Symbol::gauss((self.n - j) as usize), -1)
        }
    }

    /// `sigma(a)`: `k^{-1}` on positive multiples of `n`, `G_a` otherwise.
    pub fn sigma(&self, a: i64) -> ParamMonomial {
        if a > 0 && a % self.n == 0 {
            ParamMonomial::var(Symbol::K, -1)
        } else {
            self.gauss(a)
        }
    }

    /// `gamma(rho; lambda) = q^{-<rho,lambda>/n} prod sigma((lambda,a))^{(mu,a)/n}`
    /// for `rho = mu + level delta` with `mu` in `nZ^r`.
    pub fn gamma(&self, rho: &AffineRoot, lambda: &[i64]) -> Result<ParamMonomial> {
        let n = self.n;
        let exact = |v: i64, what: &str| -> Result<i64> {
            if v % n != 0 {
                Err(Error::MalformedElement(format!(
                    "{what} = {v} is not divisible by {n} for {rho:?}"
                )))
            } else {
                Ok(v / n)
            }
        };
        let qexp = -exact(rho.pair(lambda), "pairing")?;
        let mut m = ParamMonomial::var(Symbol::Q, qexp);
        for a in positive_roots(self.r) {
            let e = exact(dot(&rho.finite, &a), "root pairing")?;
            if e != 0 {
                m = m.mul(&self.sigma(dot(lambda, &a)).pow(e));
            }
        }
        Ok(m)
    }

    /// Metaplectic simple root `alpha_i^{(n)}`.
    pub fn simple_root(&self, i: usize) -> AffineRoot {
        AffineRoot::simple(i, self.r).psi(self.n)
    }

    pub fn simple_reflection(&self, i: usize) -> AffineWeylElement {
        AffineWeylElement::simple(i, self.r, self.n)
    }

    /// Fundamental domain `A^{(n)}`: dominant with `mu_1 - mu_r <= n`.
    pub fn in_fundamental_domain(&self, mu: &[i64]) -> bool {
        is_dominant(mu) && mu[0] - mu[self.r - 1] <= self.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_scalar;

    fn ctx(r: usize, n: i64) -> MetaplecticContext {
        MetaplecticContext::new(r, n).unwrap()
    }

    fn mono(e: &str) -> ParamMonomial {
        let s = parse_scalar(e).unwrap();
        *s.as_poly().unwrap().as_term().unwrap().0
    }

    #[test]
    fn pairings() {
        assert_eq!(AffineRoot::simple(1, 3).pair(&[1, 0, 0]), 1);
        assert_eq!(AffineRoot::simple(0, 3).pair(&[1, 0, 0]), 0);
        assert_eq!(ctx(3, 2).simple_root(0).pair(&[2, 0, 0]), 0);
    }

    #[test]
    fn reflections() {
        let a0 = AffineRoot::simple(0, 3);
        assert_eq!(reflect(&a0, &[1, 0, 0]).unwrap(), vec![1, 0, 0]);
        assert_eq!(reflect(&a0, &[2, 0, 0]).unwrap(), vec![1, 0, 1]);
        assert_eq!(reflect(&ctx(3, 2).simple_root(0), &[3, 0, 0]).unwrap(), vec![2, 0, 1]);
        assert_eq!(
            reflect(&AffineRoot::new(vec![0, 0, 0], 1), &[1, 0, 0]),
            Err(Error::ZeroFinitePart)
        );
        // Reflection agrees with the group element s_0^{(n)}.
        for n in 1..=3 {
            let c = ctx(3, n);
            let v = [3, -1, 2];
            assert_eq!(reflect(&c.simple_root(0), &v).unwrap(), c.simple_reflection(0).act(&v));
        }
    }

    #[test]
    fn weyl_actions() {
        let om = AffineWeylElement::omega(3, 1);
        assert_eq!(om.act(&[0, 0, 0]), vec![1, 0, 0]);
        assert_eq!(om.act(&[0, 0, 5]), vec![6, 0, 0]);
        let s0 = AffineWeylElement::simple(0, 3, 2);
        let lam = [3, 1, -1];
        let img = s0.act_root(&AffineRoot::new(lam.to_vec(), 0));
        let th = theta(3);
        assert_eq!(img.finite, perm_apply(&perm_theta(3), &lam));
        assert_eq!(img.level, 2 * dot(&lam, &th));
        let id = AffineWeylElement::identity(3);
        assert_eq!(id.act(&lam), lam.to_vec());
    }

    #[test]
    fn psi_examples() {
        assert_eq!(AffineRoot::simple(1, 3).psi(2).finite, vec![2, -2, 0]);
        assert_eq!(AffineRoot::simple(0, 3).psi(2), AffineRoot::new(vec![-2, 0, 2], 4));
        let w = AffineWeylElement::translation(vec![1, 0, 0])
            .compose(&AffineWeylElement::finite(perm_simple(1, 3)));
        let img = w.psi(3);
        assert_eq!(img.translation, vec![3, 0, 0]);
        assert_eq!(img.perm, perm_simple(1, 3));
    }

    #[test]
    fn sigma_values() {
        assert_eq!(ctx(3, 3).sigma(0), mono("k"));
        assert_eq!(ctx(3, 3).sigma(3), mono("k^-1"));
        assert_eq!(ctx(3, 5).sigma(-2), mono("G2^-1"));
        assert_eq!(ctx(3, 5).sigma(3), mono("G2^-1"));
        assert_eq!(ctx(3, 4).sigma(2), mono("G2"));
        assert_eq!(ctx(3, 4).sigma(-2), mono("G2"));
        assert_eq!(ctx(3, 1).gauss(2), mono("k"));
    }

    #[test]
    fn gamma_values() {
        let c = ctx(3, 1);
        let e1 = AffineRoot::new(vec![1, 0, 0], 0);
        assert_eq!(c.gamma(&e1, &[0, 0, 0]).unwrap(), mono("k^2"));
        let neg_a1 = AffineRoot::simple(1, 3).neg();
        assert_eq!(c.gamma(&neg_a1, &[1, 0, 0]).unwrap(), mono("q*k^4"));
        let c3 = ctx(3, 3);
        let r = c3.simple_root(1).neg();
        assert_eq!(c3.gamma(&r, &[1, 0, 0]).unwrap(), mono("q*k/G1^3"));
        assert!(matches!(
            ctx(3, 2).gamma(&AffineRoot::simple(1, 3), &[0, 0, 0]),
            Err(Error::MalformedElement(_))
        ));
    }

    #[test]
    fn permutation_helpers() {
        assert_eq!(all_perms(3).len(), 6);
        assert_eq!(perm_length(&[2, 1, 0]), 3);
        let u = vec![1, 2, 0];
        assert_eq!(perm_compose(&u, &perm_inverse(&u)), perm_identity(3));
    }
}
