//! Alcove walks of a fixed type, with fold signs.
//!
//! Alcoves are identified with elements of the Coxeter group generated by
//! `s_0, ..., s_{r-1}` (metaplectic degree 1). Walk geometry does not depend
//! on `n`: the rescaling preserves the sign of every pairing.

use crate::laurent::Exponent;
use crate::rootsys::{dot, perm_apply, AffineRoot, AffineWeylElement, Perm};

/// Which side of the separating hyperplane the current alcove lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Positive,
    Negative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepChoice {
    Cross,
    Fold,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WalkFilter {
    All,
    PositiveFoldsOnly,
    NegativeFoldsOnly,
    Unfolded,
}

/// Wall data for the step from `z` to `z s_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepClass {
    /// The wall's root, normalized to the positive affine roots.
    pub separating_root: AffineRoot,
    /// Side of `z`, measured with the periodic orientation.
    pub side: Side,
}

/// Classifies the wall crossed by the `i`-th step out of alcove `z`.
pub fn classify_step(z: &AffineWeylElement, i: usize) -> StepClass {
    let r = z.rank();
    let root = z.act_root(&AffineRoot::simple(i, r));
    let oriented = root.periodic_representative();
    // (r+1) * z(v) for the interior point v = (r, r-1, ..., 1) / (r+1).
    let base: Vec<i64> = (0..r).map(|j| (r - j) as i64).collect();
    let sample: Vec<i64> = perm_apply(&z.perm, &base)
        .iter()
        .zip(&z.translation)
        .map(|(a, t)| a + (r as i64 + 1) * t)
        .collect();
    let value = dot(&oriented.finite, &sample) + (r as i64 + 1) * oriented.level;
    debug_assert!(value != 0, "sample point lies on a wall");
    StepClass {
        separating_root: root.positive_representative(),
        side: if value > 0 { Side::Positive } else { Side::Negative },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlcoveWalk {
    pub start: AffineWeylElement,
    pub word: Vec<usize>,
    pub choices: Vec<StepChoice>,
    pub end: AffineWeylElement,
    /// Translation part of `end`.
    pub wt: Exponent,
    /// Finite part of `end`.
    pub phi: Perm,
    /// 0-based step positions of positive folds.
    pub pos_folds: Vec<usize>,
    pub neg_folds: Vec<usize>,
}

impl AlcoveWalk {
    /// Walk number `index`: bit `j` set means step `j` folds.
    pub fn from_index(start: &AffineWeylElement, word: &[usize], index: u64) -> Self {
        let r = start.rank();
        let mut z = start.clone();
        let mut choices = Vec::with_capacity(word.len());
        let mut pos_folds = Vec::new();
        let mut neg_folds = Vec::new();
        for (j, &i) in word.iter().enumerate() {
            if index >> j & 1 == 1 {
                match classify_step(&z, i).side {
                    Side::Positive => pos_folds.push(j),
                    Side::Negative => neg_folds.push(j),
                }
                choices.push(StepChoice::Fold);
            } else {
                z = z.compose(&AffineWeylElement::simple(i, r, 1));
                choices.push(StepChoice::Cross);
            }
        }
        AlcoveWalk {
            start: start.clone(),
            word: word.to_vec(),
            choices,
            wt: z.translation.clone(),
            phi: z.perm.clone(),
            end: z,
            pos_folds,
            neg_folds,
        }
    }

    pub fn fold_count(&self) -> usize {
        self.pos_folds.len() + self.neg_folds.len()
    }

    pub fn is_unfolded(&self) -> bool {
        self.fold_count() == 0
    }

    pub fn passes(&self, filter: WalkFilter) -> bool {
        match filter {
            WalkFilter::All => true,
            WalkFilter::PositiveFoldsOnly => self.neg_folds.is_empty(),
            WalkFilter::NegativeFoldsOnly => self.pos_folds.is_empty(),
            WalkFilter::Unfolded => self.is_unfolded(),
        }
    }

    /// Compact rendering of the choices, `c` for cross, `+`/`-` for folds.
    pub fn choice_string(&self) -> String {
        (0..self.word.len())
            .map(|j| {
                if self.pos_folds.contains(&j) {
                    '+'
                } else if self.neg_folds.contains(&j) {
                    '-'
                } else {
                    'c'
                }
            })
            .collect()
    }
}

/// Number of walks of a given type.
pub fn walk_count(word: &[usize]) -> u64 {
    assert!(word.len() < 63, "word too long to enumerate");
    1u64 << word.len()
}

/// All `2^l` walks, in binary-counter order.
pub fn enumerate_walks(start: &AffineWeylElement, word: &[usize]) -> Vec<AlcoveWalk> {
    (0..walk_count(word))
        .map(|m| AlcoveWalk::from_index(start, word, m))
        .collect()
}

pub fn walk_filter(walks: &[AlcoveWalk], filter: WalkFilter) -> Vec<AlcoveWalk> {
    walks.iter().filter(|w| w.passes(filter)).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{perm_identity, perm_simple};

    #[test]
    fn classify_examples() {
        let id = AffineWeylElement::identity(3);
        let c = classify_step(&id, 1);
        assert_eq!(c.separating_root, AffineRoot::simple(1, 3));
        assert_eq!(c.side, Side::Positive);
        let c = classify_step(&id, 0);
        assert_eq!(c.separating_root, AffineRoot::simple(0, 3));
        assert_eq!(c.side, Side::Negative);
        let s1 = AffineWeylElement::finite(perm_simple(1, 3));
        let c = classify_step(&s1, 1);
        assert_eq!(c.separating_root, AffineRoot::simple(1, 3));
        assert_eq!(c.side, Side::Negative);
    }

    #[test]
    fn enumeration() {
        let id = AffineWeylElement::identity(3);
        let trivial = enumerate_walks(&id, &[]);
        assert_eq!(trivial.len(), 1);
        assert_eq!(trivial[0].end, id);
        assert_eq!(trivial[0].phi, perm_identity(3));
        let walks = enumerate_walks(&id, &[1]);
        assert_eq!(walks.len(), 2);
        assert_eq!(walks[0].phi, perm_simple(1, 3));
        assert_eq!(walks[1].pos_folds, vec![0]);
        assert_eq!(walks[1].end, id);
        assert_eq!(walk_filter(&walks, WalkFilter::PositiveFoldsOnly).len(), 2);
        assert_eq!(walk_filter(&walks, WalkFilter::NegativeFoldsOnly).len(), 1);
        assert_eq!(walk_filter(&walks, WalkFilter::Unfolded).len(), 1);
        assert_eq!(enumerate_walks(&id, &[0, 2, 1]).len(), 8);
    }

    #[test]
    fn end_is_product_of_crossed_steps() {
        let start = AffineWeylElement::finite(vec![1, 2, 0]);
        let word = [0, 2, 1, 0];
        for w in enumerate_walks(&start, &word) {
            let mut z = start.clone();
            for (j, &i) in word.iter().enumerate() {
                if w.choices[j] == StepChoice::Cross {
                    z = z.compose(&AffineWeylElement::simple(i, 3, 1));
                }
            }
            assert_eq!(w.end, z);
            let rebuilt = AffineWeylElement::translation(w.wt.clone())
                .compose(&AffineWeylElement::finite(w.phi.clone()));
            assert_eq!(rebuilt, w.end);
        }
    }
}
