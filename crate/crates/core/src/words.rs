//! Reduction to the fundamental domain, reduced words, the roots `beta_j`,
//! canonical words for finite permutations and the Bruhat order.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::laurent::Exponent;
use crate::rootsys::{perm_identity, AffineRoot, MetaplecticContext, Perm};

/// `mu = s_{word[0]} ... s_{word[l-1]} lambda` with `lambda` in the
/// fundamental domain, together with the roots `beta_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedDecomposition {
    pub mu: Exponent,
    pub lambda: Exponent,
    pub word: Vec<usize>,
    pub betas: Vec<AffineRoot>,
}

impl ReducedDecomposition {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

/// Greedy descent into `A^{(n)}`: repeatedly apply the first violated wall
/// reflection (`s_1, ..., s_{r-1}` before `s_0`). The indices in the order
/// applied form a reduced word for the shortest `w` with `w lambda = mu`.
pub fn reduce_to_fundamental(mu: &[i64], ctx: &MetaplecticContext) -> Result<ReducedDecomposition> {
    ctx.check_rank(mu)?;
    let r = ctx.r();
    let n = ctx.n();
    let mut cur = mu.to_vec();
    let mut word = Vec::new();
    loop {
        if let Some(i) = (1..r).find(|&i| cur[i - 1] < cur[i]) {
            cur.swap(i - 1, i);
            word.push(i);
        } else if cur[0] - cur[r - 1] > n {
            let (first, last) = (cur[0], cur[r - 1]);
            cur[0] = last + n;
            cur[r - 1] = first - n;
            word.push(0);
        } else {
            break;
        }
    }
    let betas = betas_for_word(&word, ctx);
    let dec = ReducedDecomposition { mu: mu.to_vec(), lambda: cur, word, betas };
    check_decomposition(&dec)?;
    Ok(dec)
}

/// `beta_j = s_{i_l} ... s_{i_{j+1}} alpha_{i_j}^{(n)}`.
pub fn betas_for_word(word: &[usize], ctx: &MetaplecticContext) -> Vec<AffineRoot> {
    let mut out = vec![AffineRoot::new(vec![0; ctx.r()], 0); word.len()];
    for j in (0..word.len()).rev() {
        let mut b = ctx.simple_root(word[j]);
        for &i in &word[j + 1..] {
            b = ctx.simple_reflection(i).act_root(&b);
        }
        out[j] = b;
    }
    out
}

fn check_decomposition(dec: &ReducedDecomposition) -> Result<()> {
    for (j, b) in dec.betas.iter().enumerate() {
        if !b.is_positive() {
            return Err(Error::Internal(format!("beta_{} = {b:?} is not positive", j + 1)));
        }
        if b.pair(&dec.lambda) == 0 {
            return Err(Error::Internal(format!(
                "beta_{} = {b:?} vanishes on lambda = {:?}",
                j + 1,
                dec.lambda
            )));
        }
    }
    Ok(())
}

/// Applies `s_{word[0]} ... s_{word[l-1]}` (rightmost first) to `v`.
pub fn apply_word(word: &[usize], v: &[i64], ctx: &MetaplecticContext) -> Exponent {
    word.iter()
        .rev()
        .fold(v.to_vec(), |acc, &i| ctx.simple_reflection(i).act(&acc))
}

/// Deterministic reduced word (1-based indices) for a finite permutation,
/// built by moving the largest misplaced value to the right one slot at a
/// time. `u = s_{w[0]} ... s_{w[t-1]}`.
pub fn canonical_perm_word(u: &[usize]) -> Vec<usize> {
    let mut w: Perm = u.to_vec();
    let mut steps = Vec::new();
    while let Some(value) = (0..w.len()).filter(|&p| w[p] != p).map(|p| w[p]).max() {
        // Larger values are in place, so `value` sits left of its home slot.
        let mut pos = w.iter().position(|&x| x == value).expect("value present");
        while pos < value {
            // right multiplication by s_{pos+1} swaps slots pos, pos+1
            w.swap(pos, pos + 1);
            steps.push(pos + 1);
            pos += 1;
        }
    }
    steps.reverse();
    steps
}

/// Permutation of a word of finite simple reflections.
pub fn perm_of_word(word: &[usize], r: usize) -> Perm {
    let mut p = perm_identity(r);
    for &i in word {
        // right multiplication by s_i swaps one-line slots i-1, i
        p.swap(i - 1, i);
    }
    p
}

/// `{nu : nu <=_n mu}`: all subword images of `lambda`.
pub fn bruhat_lower_set(mu: &[i64], ctx: &MetaplecticContext) -> Result<BTreeSet<Exponent>> {
    let dec = reduce_to_fundamental(mu, ctx)?;
    let l = dec.word.len();
    let mut out = BTreeSet::new();
    for mask in 0u64..(1u64 << l) {
        let sub: Vec<usize> = (0..l)
            .filter(|j| mask >> j & 1 == 1)
            .map(|j| dec.word[j])
            .collect();
        out.insert(apply_word(&sub, &dec.lambda, ctx));
    }
    Ok(out)
}

/// `s_rho mu <_n mu` for a positive metaplectic root `rho`, i.e. `<rho, mu> < 0`.
pub fn order_compare_step(mu: &[i64], rho: &AffineRoot) -> bool {
    rho.pair(mu) < 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{all_perms, perm_length};
    use std::collections::{HashMap, VecDeque};

    fn ctx(r: usize, n: i64) -> MetaplecticContext {
        MetaplecticContext::new(r, n).unwrap()
    }

    #[test]
    fn decomposition_examples() {
        let c = ctx(3, 1);
        let d = reduce_to_fundamental(&[1, 0, 0], &c).unwrap();
        assert!(d.word.is_empty() && d.lambda == vec![1, 0, 0]);
        for n in 1..=4 {
            let c = ctx(3, n);
            let d = reduce_to_fundamental(&[0, 1, 0], &c).unwrap();
            assert_eq!(d.lambda, vec![1, 0, 0]);
            assert_eq!(d.word, vec![1]);
            assert_eq!(d.betas, vec![c.simple_root(1)]);
        }
        let d = reduce_to_fundamental(&[2, 0, 0], &c).unwrap();
        assert_eq!(d.lambda, vec![1, 1, 0]);
        assert_eq!(d.word, vec![0, 2]);
        assert_eq!(d.betas[1], AffineRoot::simple(2, 3));
        assert_eq!(d.betas[0], AffineRoot::new(vec![-1, 1, 0], 1));
        assert_eq!(apply_word(&d.word, &d.lambda, &c), vec![2, 0, 0]);
    }

    #[test]
    fn canonical_words() {
        assert!(canonical_perm_word(&[0, 1, 2]).is_empty());
        assert_eq!(canonical_perm_word(&[1, 0, 2]), vec![1]);
        assert_eq!(canonical_perm_word(&[2, 1, 0]), vec![1, 2, 1]);
        for r in 2..=4 {
            for u in all_perms(r) {
                let w = canonical_perm_word(&u);
                assert_eq!(w.len(), perm_length(&u));
                assert_eq!(perm_of_word(&w, r), u);
            }
        }
    }

    #[test]
    fn bruhat_examples() {
        let c = ctx(3, 1);
        let set = |mu: &[i64]| bruhat_lower_set(mu, &c).unwrap().into_iter().collect::<Vec<_>>();
        assert_eq!(set(&[1, 0, 0]), vec![vec![1, 0, 0]]);
        assert_eq!(set(&[0, 1, 0]), vec![vec![0, 1, 0], vec![1, 0, 0]]);
        assert_eq!(set(&[2, 0, 0]), vec![vec![1, 0, 1], vec![1, 1, 0], vec![2, 0, 0]]);
    }

    #[test]
    fn order_step() {
        let c = ctx(3, 2);
        let rho = c.simple_root(1);
        assert!(order_compare_step(&[0, 1, 0], &rho));
        assert!(!order_compare_step(&[1, 0, 0], &rho));
        assert!(!order_compare_step(&[1, 1, 0], &rho));
    }

    // Breadth-first search over the group generated by s_0^{(n)}, ..., s_{r-1}^{(n)}
    // acting on weights: shortest distance from the fundamental domain.
    fn bfs_distance(mu: &[i64], c: &MetaplecticContext) -> usize {
        let mut seen: HashMap<Exponent, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        seen.insert(mu.to_vec(), 0);
        queue.push_back(mu.to_vec());
        while let Some(v) = queue.pop_front() {
            let d = seen[&v];
            if c.in_fundamental_domain(&v) {
                return d;
            }
            for i in 0..c.r() {
                let w = c.simple_reflection(i).act(&v);
                if !seen.contains_key(&w) {
                    seen.insert(w.clone(), d + 1);
                    queue.push_back(w);
                }
            }
        }
        unreachable!("every orbit meets the fundamental domain")
    }

    #[test]
    fn greedy_words_are_shortest() {
        for r in 2..=3usize {
            for n in 1..=2 {
                let c = ctx(r, n);
                let range = -2..=2i64;
                let mut weights = vec![vec![]];
                for _ in 0..r {
                    weights = weights
                        .into_iter()
                        .flat_map(|w: Vec<i64>| {
                            range.clone().map(move |x| {
                                let mut w = w.clone();
                                w.push(x);
                                w
                            })
                        })
                        .collect();
                }
                for mu in weights {
                    let d = reduce_to_fundamental(&mu, &c).unwrap();
                    assert_eq!(d.word.len(), bfs_distance(&mu, &c), "mu={mu:?} n={n}");
                    assert_eq!(apply_word(&d.word, &d.lambda, &c), mu);
                    assert!(c.in_fundamental_domain(&d.lambda));
                }
            }
        }
    }
}
