//! Words over an alphabet of letter indices: the free monoid `F_λ`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A letter is identified by its index in the alphabet.
pub type Letter = u32;

/// The ambient alphabet: `size` letters `0..size`, or one letter per natural number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alphabet {
    Finite(u32),
    Countable,
}

impl Alphabet {
    pub fn finite(size: u32) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyAlphabet);
        }
        Ok(Alphabet::Finite(size))
    }

    pub fn size(&self) -> Option<u32> {
        match self {
            Alphabet::Finite(n) => Some(*n),
            Alphabet::Countable => None,
        }
    }

    pub fn contains(&self, letter: Letter) -> bool {
        match self {
            Alphabet::Finite(n) => letter < *n,
            Alphabet::Countable => true,
        }
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match (self, w.letters().iter().find(|&&l| !self.contains(l))) {
            (Alphabet::Finite(size), Some(&letter)) => Err(Error::LetterOutOfRange {
                letter,
                size: *size,
            }),
            _ => Ok(()),
        }
    }

    /// Letters `0..size` of a finite alphabet.
    pub fn letters(&self) -> Result<Vec<Letter>> {
        match self {
            Alphabet::Finite(n) => Ok((0..*n).collect()),
            Alphabet::Countable => Err(Error::CountableAlphabet),
        }
    }
}

/// A finite word. Ordered by length first, then lexicographically.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

impl Word {
    /// The empty word ε.
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// `a^t`: the letters in reverse order.
    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// True iff `other = c·self` for some word `c`.
    pub fn is_suffix_of(&self, other: &Word) -> bool {
        other.0.ends_with(&self.0)
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    /// True iff `other = x·self·y` for some words `x`, `y`.
    pub fn is_subword_of(&self, other: &Word) -> bool {
        if self.is_empty() {
            return true;
        }
        other.0.windows(self.len()).any(|w| w == self.0.as_slice())
    }

    /// The `c` with `other = c·self`, if `self` is a suffix of `other`.
    pub fn strip_suffix_of(&self, other: &Word) -> Option<Word> {
        other
            .0
            .strip_suffix(self.0.as_slice())
            .map(|c| Word(c.to_vec()))
    }

    /// The `c` with `other = self·c`, if `self` is a prefix of `other`.
    pub fn strip_prefix_of(&self, other: &Word) -> Option<Word> {
        other
            .0
            .strip_prefix(self.0.as_slice())
            .map(|c| Word(c.to_vec()))
    }

    /// Splits off the last letter.
    pub fn split_last(&self) -> Option<(Word, Letter)> {
        self.0
            .split_last()
            .map(|(&l, rest)| (Word(rest.to_vec()), l))
    }

    /// Appends one letter.
    pub fn push(&self, l: Letter) -> Word {
        let mut letters = self.0.clone();
        letters.push(l);
        Word(letters)
    }

    pub fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> Word {
        Word(self.0.iter().map(|&l| f(l)).collect())
    }

    /// All `|self| + 1` ways to write `self = x·y`, ordered by `|x|`.
    pub fn splits(&self) -> impl Iterator<Item = (Word, Word)> + '_ {
        (0..=self.len()).map(move |i| (Word(self.0[..i].to_vec()), Word(self.0[i..].to_vec())))
    }

    /// All suffixes, shortest first (ε included).
    pub fn suffixes(&self) -> impl Iterator<Item = Word> + '_ {
        (0..=self.len())
            .rev()
            .map(move |i| Word(self.0[i..].to_vec()))
    }

    /// All nonempty contiguous factors, deduplicated.
    pub fn subwords(&self) -> BTreeSet<Word> {
        let n = self.len();
        let mut out = BTreeSet::new();
        for i in 0..n {
            for j in i + 1..=n {
                out.insert(Word(self.0[i..j].to_vec()));
            }
        }
        out
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl<const N: usize> From<[Letter; N]> for Word {
    fn from(v: [Letter; N]) -> Self {
        Word(v.to_vec())
    }
}

/// Renders as `e` for ε, otherwise letters joined by `.`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("e");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

pub fn concat(a: &Word, b: &Word) -> Word {
    a.concat(b)
}

pub fn reverse(a: &Word) -> Word {
    a.reverse()
}

/// True iff `b = c·a` for some `c`.
pub fn is_suffix(a: &Word, b: &Word) -> bool {
    a.is_suffix_of(b)
}

/// True iff one word is a suffix of the other. The negation is suffix-incomparability.
pub fn suffix_comparable(a: &Word, b: &Word) -> bool {
    a.is_suffix_of(b) || b.is_suffix_of(a)
}

/// The `c` with `b = c·a`.
pub fn strip_suffix(a: &Word, b: &Word) -> Option<Word> {
    a.strip_suffix_of(b)
}

pub fn is_subword(x: &Word, y: &Word) -> bool {
    x.is_subword_of(y)
}

/// Every nonempty subword of some member of `set`.
pub fn subword_closure<'a>(set: impl IntoIterator<Item = &'a Word>) -> BTreeSet<Word> {
    set.into_iter().flat_map(Word::subwords).collect()
}

/// All words of length at most `max_len`, in length-then-lexicographic order.
pub fn enumerate_words(alphabet: Alphabet, max_len: usize) -> Result<Vec<Word>> {
    let letters = alphabet.letters()?;
    Ok(words_over(&letters, max_len))
}

/// All words over `letters` of length at most `max_len`, shortest first.
/// `letters` must be sorted for the output to be in [`Word`] order.
pub fn words_over(letters: &[Letter], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let next: Vec<Word> = layer
            .iter()
            .flat_map(|w| letters.iter().map(move |&l| w.push(l)))
            .collect();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
