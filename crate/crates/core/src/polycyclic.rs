//! The polycyclic monoid `P_λ`: pairs of words with a zero adjoined.

use std::fmt;

use crate::words::{suffix_comparable, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PElem {
    Zero,
    Pair(Word, Word),
}

impl PElem {
    pub fn pair(left: impl Into<Word>, right: impl Into<Word>) -> Self {
        PElem::Pair(left.into(), right.into())
    }

    /// The unit `(ε, ε)`.
    pub fn one() -> Self {
        PElem::Pair(Word::empty(), Word::empty())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, PElem::Zero)
    }
}

impl fmt::Display for PElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PElem::Zero => f.write_str("0"),
            PElem::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// `(a,b)·(c,d)` is `(c₁a, d)` when `c = c₁b`, `(a, b₁d)` when `b = b₁c`, and zero otherwise.
pub fn p_mul(x: &PElem, y: &PElem) -> PElem {
    let (PElem::Pair(a, b), PElem::Pair(c, d)) = (x, y) else {
        return PElem::Zero;
    };
    if let Some(c1) = b.strip_suffix_of(c) {
        // b = c: the second case applies too and yields the same (a, d).
        debug_assert!(!c1.is_empty() || c.strip_suffix_of(b) == Some(Word::empty()));
        return PElem::Pair(c1.concat(a), d.clone());
    }
    if let Some(b1) = c.strip_suffix_of(b) {
        return PElem::Pair(a.clone(), b1.concat(d));
    }
    PElem::Zero
}

pub fn p_inv(x: &PElem) -> PElem {
    match x {
        PElem::Zero => PElem::Zero,
        PElem::Pair(a, b) => PElem::Pair(b.clone(), a.clone()),
    }
}

pub fn p_is_idempotent(x: &PElem) -> bool {
    match x {
        PElem::Zero => true,
        PElem::Pair(a, b) => a == b,
    }
}

/// Whether `x·y` is nonzero, without building the product.
pub fn p_nonzero_product(x: &PElem, y: &PElem) -> bool {
    match (x, y) {
        (PElem::Pair(_, b), PElem::Pair(c, _)) => suffix_comparable(b, c),
        _ => false,
    }
}
