//! Coefficient field `Q(k, q, G_1, ..., G_m)`.
//!
//! Elements are stored as fractions of sparse Laurent polynomials in the
//! parameters. Arithmetic never normalizes on its own: equality is decided by
//! cross multiplication and the gcd is only taken when a canonical form is
//! requested (display, serialization, golden comparisons).

mod parse;
mod poly;
mod scalar;

pub use parse::parse_scalar;
pub use poly::{poly_gcd, ParamMonomial, ParamPoly};
pub use scalar::{LimitDirection, Scalar};

use std::fmt;

/// Number of parameter slots: `k`, `q` and up to six Gauss sums.
pub const MAX_SYMBOLS: usize = 8;

/// Largest Gauss-sum index that can be represented.
pub const MAX_GAUSS: usize = MAX_SYMBOLS - 2;

/// A parameter symbol. Slot 0 is `k`, slot 1 is `q`, slot `1 + j` is `G_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(u8);

impl Symbol {
    pub const K: Symbol = Symbol(0);
    pub const Q: Symbol = Symbol(1);

    /// The Gauss sum `G_j`, `1 <= j <= MAX_GAUSS`.
    pub fn gauss(j: usize) -> Symbol {
        assert!(
            (1..=MAX_GAUSS).contains(&j),
            "Gauss sum index {j} outside 1..={MAX_GAUSS}"
        );
        Symbol((1 + j) as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Symbol {
        assert!(i < MAX_SYMBOLS);
        Symbol(i as u8)
    }

    /// For `G_j` returns `Some(j)`.
    pub fn gauss_index(self) -> Option<usize> {
        (self.0 >= 2).then(|| self.0 as usize - 1)
    }

    pub fn name(self) -> String {
        match self.0 {
            0 => "k".to_string(),
            1 => "q".to_string(),
            i => format!("G{}", i - 1),
        }
    }

    pub fn parse(s: &str) -> Option<Symbol> {
        match s {
            "k" => Some(Symbol::K),
            "q" => Some(Symbol::Q),
            _ => {
                let j: usize = s.strip_prefix('G')?.parse().ok()?;
                (1..=MAX_GAUSS).contains(&j).then(|| Symbol::gauss(j))
            }
        }
    }

    pub fn all() -> impl Iterator<Item = Symbol> {
        (0..MAX_SYMBOLS).map(Symbol::from_index)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}
