//! Neighborhood bases at zero for the topologies on `M_λ`.
//!
//! Nonzero points are isolated in all of them, so a topology is described by a
//! family of basic neighborhoods of `0` and a membership predicate. Continuity at
//! `0` reduces to ideal properties of those neighborhoods, which
//! [`certify_ideal_property`] checks over finite element sets.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::mcalister::{d_index, m_mul, MElem, Quad};
use crate::words::{subword_closure, Letter, Word};

/// `U_A = M_λ ∖ ⋃_{a ∈ A} D_a` in the compact topology.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CompactBasis {
    excluded: BTreeSet<Word>,
}

impl CompactBasis {
    pub fn new(excluded: impl IntoIterator<Item = Word>) -> Result<Self> {
        let excluded: BTreeSet<Word> = excluded.into_iter().collect();
        if excluded.contains(&Word::empty()) {
            return Err(Error::EmptyIndex);
        }
        Ok(CompactBasis { excluded })
    }

    pub fn excluded(&self) -> &BTreeSet<Word> {
        &self.excluded
    }

    /// Number of nonzero elements outside `U_A`: `Σ (|a|+1)²`.
    pub fn complement_size(&self) -> usize {
        self.excluded.iter().map(|a| (a.len() + 1).pow(2)).sum()
    }

    pub fn contains(&self, x: &MElem) -> bool {
        in_compact_nbhd(self, x)
    }
}

pub fn in_compact_nbhd(basis: &CompactBasis, x: &MElem) -> bool {
    match x.quad() {
        None => true,
        Some(q) => !basis.excluded.contains(&q.index_word()),
    }
}

/// The smaller neighborhood `U_B ⊆ U_A` with `B` the subword closure of `A`;
/// `U_B` is a two-sided ideal of `M_λ`.
pub fn shrink_compact(basis: &CompactBasis) -> CompactBasis {
    CompactBasis {
        excluded: subword_closure(&basis.excluded),
    }
}

/// A two-sided ideal of the free monoid, described by generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealSpec {
    /// Words containing one of the given words as a subword.
    Explicit(BTreeSet<Word>),
    /// `J_S = ⋃_{n ∈ S} F₂·a bⁿ a·F₂` with `a` = letter 0 and `b` = letter 1.
    PatternUnion(BTreeSet<u32>),
}

impl IdealSpec {
    pub fn explicit(generators: impl IntoIterator<Item = Word>) -> Result<Self> {
        let generators: BTreeSet<Word> = generators.into_iter().collect();
        if generators.contains(&Word::empty()) {
            return Err(Error::EmptyIndex);
        }
        Ok(IdealSpec::Explicit(generators))
    }

    pub fn pattern_union(exponents: impl IntoIterator<Item = u32>) -> Self {
        IdealSpec::PatternUnion(exponents.into_iter().collect())
    }

    pub fn contains(&self, w: &Word) -> bool {
        in_ideal(self, w)
    }
}

const MARKER_A: Letter = 0;
const MARKER_B: Letter = 1;

/// `a bⁿ a`.
pub fn marker_word(n: u32) -> Word {
    let mut letters = vec![MARKER_A];
    letters.extend(std::iter::repeat_n(MARKER_B, n as usize));
    letters.push(MARKER_A);
    Word::new(letters)
}

/// Exponents `n` such that `a bⁿ a` occurs in `w`.
fn marker_exponents(w: &Word) -> BTreeSet<u32> {
    let mut out = BTreeSet::new();
    let letters = w.letters();
    for (i, &l) in letters.iter().enumerate() {
        if l != MARKER_A {
            continue;
        }
        let run = letters[i + 1..]
            .iter()
            .take_while(|&&x| x == MARKER_B)
            .count();
        if letters.get(i + 1 + run) == Some(&MARKER_A) {
            out.insert(run as u32);
        }
    }
    out
}

pub fn in_ideal(spec: &IdealSpec, w: &Word) -> bool {
    if w.is_empty() {
        return false;
    }
    match spec {
        IdealSpec::Explicit(gens) => gens.iter().any(|g| g.is_subword_of(w)),
        IdealSpec::PatternUnion(ns) => !marker_exponents(w).is_disjoint(ns),
    }
}

/// `U = ⋃_{a ∈ I∖B} D_a ∪ {0}` in the ideal topology `τ_I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealBasis {
    ideal: IdealSpec,
    removed: BTreeSet<Word>,
}

impl IdealBasis {
    pub fn new(ideal: IdealSpec, removed: impl IntoIterator<Item = Word>) -> Result<Self> {
        let removed: BTreeSet<Word> = removed.into_iter().collect();
        if let Some(w) = removed.iter().find(|w| !ideal.contains(w)) {
            return Err(Error::NotInIdeal(w.clone()));
        }
        Ok(IdealBasis { ideal, removed })
    }

    pub fn ideal(&self) -> &IdealSpec {
        &self.ideal
    }

    pub fn removed(&self) -> &BTreeSet<Word> {
        &self.removed
    }

    pub fn contains(&self, x: &MElem) -> bool {
        in_ideal_nbhd(self, x)
    }
}

pub fn in_ideal_nbhd(basis: &IdealBasis, x: &MElem) -> bool {
    match x.quad() {
        None => true,
        Some(q) => {
            let p = q.index_word();
            basis.ideal.contains(&p) && !basis.removed.contains(&p)
        }
    }
}

/// Replaces the removed set by its subword closure within the ideal, so the
/// neighborhood becomes a two-sided ideal of `M_λ`.
pub fn shrink_ideal(basis: &IdealBasis) -> IdealBasis {
    let removed = subword_closure(&basis.removed)
        .into_iter()
        .filter(|w| basis.ideal.contains(w))
        .collect();
    IdealBasis {
        ideal: basis.ideal.clone(),
        removed,
    }
}

/// A word in `J_A ∖ J_B`: the marker `a bⁿ a` for the least `n ∈ A ∖ B`, or `None`
/// when `A ⊆ B`.
pub fn distinct_topology_witness(a: &BTreeSet<u32>, b: &BTreeSet<u32>) -> Option<Word> {
    a.difference(b).next().map(|&n| marker_word(n))
}

/// `((a_k,a_k),(a_k,a_k))`, the members of the neighborhoods `U_n = {u_k : k > n} ∪ {0}`
/// over a countable alphabet.
pub fn diagonal_element(k: Letter) -> MElem {
    let w = Word::letter(k);
    MElem::NonZero(Quad::new_unchecked(w.clone(), w.clone(), w.clone(), w))
}

pub fn in_diagonal_nbhd(n: Letter, x: &MElem) -> bool {
    match x.quad() {
        None => true,
        Some(q) => {
            let [a, b, c, d] = q.components();
            a.len() == 1 && a.last().is_some_and(|k| k > n) && a == b && a == c && a == d
        }
    }
}

/// The letters `k` with `x·u_k ≠ 0` or `u_k·x ≠ 0`.
///
/// `x·u_k ≠ 0` exactly when each of `b`, `d` is empty or ends in `k`; `u_k·x ≠ 0`
/// exactly when each of `a`, `c` is empty or ends in `k`. Since `b`, `d` are not
/// both empty (and likewise `a`, `c`), each side admits at most one `k`.
fn non_annihilated_letters(q: &Quad) -> Vec<Letter> {
    let pick = |u: &Word, v: &Word| match (u.last(), v.last()) {
        (Some(k), None) | (None, Some(k)) => Some(k),
        (Some(k), Some(l)) if k == l => Some(k),
        _ => None,
    };
    [pick(q.b(), q.d()), pick(q.a(), q.c())]
        .into_iter()
        .flatten()
        .collect()
}

/// Least `n` with `x·U_n = U_n·x = {0}`.
pub fn annihilator_index(x: &MElem) -> Result<Letter> {
    let q = x.nonzero()?;
    Ok(non_annihilated_letters(q).into_iter().max().unwrap_or(0))
}

/// An `n` that works by the coarser rule "last letter of `b` (or `d`) and of `a`
/// (or `c`)"; always at least [`annihilator_index`].
pub fn annihilator_bound(x: &MElem) -> Result<Letter> {
    let q = x.nonzero()?;
    let last = |u: &Word, v: &Word| u.last().or(v.last()).expect("ac^t ≠ ε");
    Ok(last(q.b(), q.d()).max(last(q.a(), q.c())))
}

/// A product escaping the candidate neighborhood.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealViolation {
    pub left: MElem,
    pub right: MElem,
    pub product: MElem,
}

/// Checks `x·y ∈ U` and `y·x ∈ U` for every `x` in `multipliers` and every `y` in
/// `members` that lies in `U`. Returns the first violation in iteration order.
pub fn certify_ideal_property(
    contains: impl Fn(&MElem) -> bool,
    multipliers: &[MElem],
    members: &[MElem],
) -> Result<(), Box<IdealViolation>> {
    for y in members.iter().filter(|y| contains(y)) {
        for x in multipliers {
            for (left, right) in [(x, y), (y, x)] {
                let product = m_mul(left, right);
                if !contains(&product) {
                    return Err(Box::new(IdealViolation {
                        left: left.clone(),
                        right: right.clone(),
                        product,
                    }));
                }
            }
        }
    }
    Ok(())
}

/// All nonzero elements whose D-index has length between 1 and `max_index_len`.
pub fn elements_by_index_len(letters: &[Letter], max_index_len: usize) -> Vec<MElem> {
    crate::words::words_over(letters, max_index_len)
        .into_iter()
        .skip(1)
        .flat_map(|p| {
            crate::mcalister::d_class(&crate::mcalister::DIndex::new(p).expect("nonempty"))
        })
        .collect()
}

/// The D-index word of a nonzero element.
pub fn index_of(x: &MElem) -> Option<Word> {
    d_index(x).ok().map(|p| p.into_word())
}
