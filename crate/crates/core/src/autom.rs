//! Automorphisms of `M_λ` for finite `λ`.
//!
//! Every automorphism is `φ_f` (relabel letters by `f`) or `ψ_f` (relabel and swap
//! the two polycyclic coordinates), so `Aut(M_λ) ≅ Sym(λ) × Z₂`. [`AutTag`] holds
//! those coordinates. [`automorphism_census`] recovers the group by brute force
//! from generator images.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mcalister::{canon, m_inv, m_product, MElem, Quad, Shape};
use crate::words::{Letter, Word};

/// A permutation of the letters `0..λ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LetterBijection {
    forward: Vec<Letter>,
    inverse: Vec<Letter>,
}

impl LetterBijection {
    /// `forward[i]` is the image of letter `i`.
    pub fn new(forward: Vec<Letter>) -> Result<Self> {
        let n = forward.len();
        let mut inverse = vec![Letter::MAX; n];
        for (i, &img) in forward.iter().enumerate() {
            let slot = inverse
                .get_mut(img as usize)
                .ok_or_else(|| Error::InvalidPermutation(forward.clone()))?;
            if *slot != Letter::MAX {
                return Err(Error::InvalidPermutation(forward));
            }
            *slot = i as Letter;
        }
        if n == 0 {
            return Err(Error::EmptyAlphabet);
        }
        Ok(LetterBijection { forward, inverse })
    }

    pub fn identity(size: u32) -> Self {
        let forward: Vec<Letter> = (0..size).collect();
        LetterBijection {
            inverse: forward.clone(),
            forward,
        }
    }

    pub fn size(&self) -> usize {
        self.forward.len()
    }

    pub fn images(&self) -> &[Letter] {
        &self.forward
    }

    pub fn apply(&self, l: Letter) -> Result<Letter> {
        self.forward
            .get(l as usize)
            .copied()
            .ok_or(Error::LetterOutOfRange {
                letter: l,
                size: self.size() as u32,
            })
    }

    pub fn inverse(&self) -> Self {
        LetterBijection {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.size() != other.size() {
            return Err(Error::SizeMismatch(self.size(), other.size()));
        }
        let forward = other
            .forward
            .iter()
            .map(|&l| self.forward[l as usize])
            .collect();
        LetterBijection::new(forward)
    }

    /// All `λ!` permutations in lexicographic order of their images.
    pub fn all(size: u32) -> impl Iterator<Item = Self> {
        (0..size)
            .permutations(size as usize)
            .map(|p| LetterBijection::new(p).expect("permutation"))
    }
}

impl fmt::Display for LetterBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.forward.iter().join(","))
    }
}

/// `+1` for `φ_f`, `−1` for `ψ_f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_int(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// The automorphism with `Sym(λ) × Z₂` coordinates `(f, sign)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AutTag {
    pub f: LetterBijection,
    pub sign: Sign,
}

impl AutTag {
    pub fn phi(f: LetterBijection) -> Self {
        AutTag {
            f,
            sign: Sign::Plus,
        }
    }

    pub fn psi(f: LetterBijection) -> Self {
        AutTag {
            f,
            sign: Sign::Minus,
        }
    }

    pub fn identity(size: u32) -> Self {
        AutTag::phi(LetterBijection::identity(size))
    }

    pub fn inverse(&self) -> Self {
        AutTag {
            f: self.f.inverse(),
            sign: self.sign,
        }
    }

    /// All `2·λ!` tags.
    pub fn all(size: u32) -> Vec<AutTag> {
        let perms: Vec<LetterBijection> = LetterBijection::all(size).collect();
        let mut out: Vec<AutTag> = perms.iter().cloned().map(AutTag::phi).collect();
        out.extend(perms.into_iter().map(AutTag::psi));
        out
    }
}

impl fmt::Display for AutTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.sign {
            Sign::Plus => "phi",
            Sign::Minus => "psi",
        };
        write!(f, "{kind}[{}]", self.f)
    }
}

#[derive(Serialize)]
struct TagJson<'a> {
    perm: &'a [Letter],
    sign: i8,
}

impl Serialize for AutTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TagJson {
            perm: self.f.images(),
            sign: self.sign.as_int(),
        }
        .serialize(s)
    }
}

/// The free-monoid automorphism `h` induced by `f`, applied letterwise.
pub fn apply_h(f: &LetterBijection, w: &Word) -> Result<Word> {
    let letters = w
        .letters()
        .iter()
        .map(|&l| f.apply(l))
        .collect::<Result<Vec<_>>>()?;
    Ok(Word::new(letters))
}

pub fn apply_aut(t: &AutTag, x: &MElem) -> Result<MElem> {
    let Some(q) = x.quad() else {
        return Ok(MElem::Zero);
    };
    let [a, b, c, d] = q.components().map(|w| apply_h(&t.f, w));
    let (a, b, c, d) = (a?, b?, c?, d?);
    let q = match t.sign {
        Sign::Plus => Quad::new_unchecked(a, b, c, d),
        Sign::Minus => Quad::new_unchecked(c, d, a, b),
    };
    Ok(MElem::NonZero(q))
}

/// `(f, σ)·(g, τ) = (f∘g, στ)`, matching `apply_aut(s∘t) = apply_aut(s) ∘ apply_aut(t)`.
pub fn compose_tags(s: &AutTag, t: &AutTag) -> Result<AutTag> {
    Ok(AutTag {
        f: s.f.compose(&t.f)?,
        sign: s.sign.times(t.sign),
    })
}

/// `((ε,α),(α,ε))`
pub fn g1(l: Letter) -> MElem {
    MElem::NonZero(Quad::new_unchecked(
        Word::empty(),
        Word::letter(l),
        Word::letter(l),
        Word::empty(),
    ))
}

/// `((α,ε),(ε,α))`
pub fn g2(l: Letter) -> MElem {
    MElem::NonZero(Quad::new_unchecked(
        Word::letter(l),
        Word::empty(),
        Word::empty(),
        Word::letter(l),
    ))
}

/// The generator sets `G₁ = {((ε,α),(α,ε))}` and `G₂ = G₁⁻¹`, indexed by letter.
pub fn generators(size: u32) -> (Vec<MElem>, Vec<MElem>) {
    ((0..size).map(g1).collect(), (0..size).map(g2).collect())
}

/// `((ε,U),(U^t,ε)) = g1(u₁)⋯g1(uₙ)`.
fn expand_g1(u: &Word, out: &mut Vec<MElem>) {
    out.extend(u.letters().iter().map(|&l| g1(l)));
}

/// `((U,ε),(ε,U^t)) = g2(uₙ)⋯g2(u₁)`.
fn expand_g2(u: &Word, out: &mut Vec<MElem>) {
    out.extend(u.letters().iter().rev().map(|&l| g2(l)));
}

/// Removes `g g⁻¹ g` → `g` until no such window remains.
fn reduce(mut seq: Vec<MElem>) -> Vec<MElem> {
    let mut i = 0;
    while i + 2 < seq.len() {
        if seq[i] == seq[i + 2] && seq[i + 1] == m_inv(&seq[i]) {
            seq.drain(i + 1..i + 3);
            i = i.saturating_sub(2);
        } else {
            i += 1;
        }
    }
    seq
}

/// Writes a nonzero `x` as a product of elements of `G₁ ∪ G₂`.
///
/// With `x = ((u,uv),(wv^t,w))` the product is `P·Q·R` for
/// `P = ((ε,vw^t),(wv^t,ε))`, `Q = ((uvw^t,ε),(ε,wv^tu^t))`, `R = ((ε,uv),(v^tu^t,ε))`,
/// and symmetrically for the other shape. Each piece is expanded letter by letter;
/// a piece whose word is ε would be the identity of `P_λ × P_λ` and is omitted.
pub fn factor_over_generators(x: &MElem) -> Result<Vec<MElem>> {
    let cf = canon(x)?;
    let uv = cf.u.concat(&cf.v);
    let vwt = cf.v.concat(&cf.w.reverse());
    let uvwt = cf.u.concat(&vwt);
    let mut seq = Vec::new();
    match cf.shape {
        Shape::Form1 => {
            expand_g1(&vwt, &mut seq);
            expand_g2(&uvwt, &mut seq);
            expand_g1(&uv, &mut seq);
        }
        Shape::Form2 => {
            expand_g2(&uv, &mut seq);
            expand_g1(&uvwt, &mut seq);
            expand_g2(&vwt, &mut seq);
        }
    }
    let seq = reduce(seq);
    assert_eq!(
        m_product(&seq).as_ref(),
        Some(x),
        "factorization does not multiply back"
    );
    Ok(seq)
}

/// Largest alphabet the census accepts; the candidate count is `(2λ)!`.
pub const CENSUS_MAX_LAMBDA: u32 = 4;
pub const DEFAULT_PROBE_DEPTH: usize = 3;

/// Finds every bijection of `G₁ ∪ G₂` that respects inverses and extends to a
/// well-defined injective map on all products of at most `probe_len` generators
/// (zero products included), and reports the survivors as tags.
pub fn automorphism_census(size: u32, probe_len: usize) -> Result<Vec<AutTag>> {
    if size == 0 {
        return Err(Error::EmptyAlphabet);
    }
    if size > CENSUS_MAX_LAMBDA {
        return Err(Error::LambdaTooLarge(size));
    }
    if probe_len < 2 {
        return Err(Error::InvalidArgument(format!(
            "probe depth must be at least 2, got {probe_len}"
        )));
    }
    let n = size as usize;
    let (first, second) = generators(size);
    let gens: Vec<MElem> = first.into_iter().chain(second).collect();
    let inverse_of = |i: usize| if i < n { i + n } else { i - n };

    let words: Vec<Vec<usize>> = (1..=probe_len)
        .flat_map(|k| (0..k).map(|_| 0..2 * n).multi_cartesian_product())
        .collect();
    let products: Vec<MElem> = words
        .iter()
        .map(|w| m_product(w.iter().map(|&i| &gens[i])).expect("nonempty"))
        .collect();

    let mut tags = Vec::new();
    for image in (0..2 * n).permutations(2 * n) {
        if (0..2 * n).any(|i| image[inverse_of(i)] != inverse_of(image[i])) {
            continue;
        }
        let mut forward: HashMap<&MElem, MElem> = HashMap::new();
        let mut backward: HashMap<MElem, &MElem> = HashMap::new();
        let consistent = words.iter().zip(&products).all(|(w, p)| {
            let q = m_product(w.iter().map(|&i| &gens[image[i]])).expect("nonempty");
            let fwd_ok = forward.entry(p).or_insert_with(|| q.clone()) == &q;
            let bwd_ok = *backward.entry(q).or_insert(p) == p;
            fwd_ok && bwd_ok
        });
        if !consistent {
            continue;
        }
        tags.push(classify(&image, n)?);
    }
    tags.sort();
    Ok(tags)
}

fn classify(image: &[usize], n: usize) -> Result<AutTag> {
    let on_first = &image[..n];
    let perm = |shift: usize| {
        LetterBijection::new(on_first.iter().map(|&j| (j - shift) as Letter).collect())
    };
    if on_first.iter().all(|&j| j < n) {
        Ok(AutTag::phi(perm(0)?))
    } else if on_first.iter().all(|&j| j >= n) {
        Ok(AutTag::psi(perm(n)?))
    } else {
        Err(Error::UnclassifiedCandidate)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mcalister::{m_make, m_mul, nonzero_elements_within};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn perm(v: &[Letter]) -> LetterBijection {
        LetterBijection::new(v.to_vec()).unwrap()
    }

    #[test]
    fn bijections() {
        assert!(LetterBijection::new(vec![0, 0]).is_err());
        assert!(LetterBijection::new(vec![0, 2]).is_err());
        assert!(LetterBijection::new(vec![]).is_err());
        let f = perm(&[1, 2, 0]);
        assert_eq!(
            f.compose(&f.inverse()).unwrap(),
            LetterBijection::identity(3)
        );
        assert_eq!(LetterBijection::all(3).count(), 6);
        assert!(f.compose(&perm(&[1, 0])).is_err());
    }

    #[test]
    fn h_examples() {
        let id = LetterBijection::identity(2);
        let w = Word::from([0, 1, 1]);
        assert_eq!(apply_h(&id, &w).unwrap(), w);
        let swap = perm(&[1, 0]);
        assert_eq!(
            apply_h(&swap, &Word::from([0, 1, 0])).unwrap(),
            Word::from([1, 0, 1])
        );
        let f = perm(&[2, 0, 1]);
        for w in crate::words::words_over(&[0, 1, 2], 3) {
            assert_eq!(
                apply_h(&f, &w.reverse()).unwrap(),
                apply_h(&f, &w).unwrap().reverse()
            );
        }
        assert!(apply_h(&swap, &Word::from([2])).is_err());
    }

    #[test]
    fn aut_examples() {
        let x = m_make(vec![], vec![0], vec![0], vec![]).unwrap();
        assert_eq!(apply_aut(&AutTag::identity(1), &x).unwrap(), x);
        assert_eq!(
            apply_aut(&AutTag::psi(LetterBijection::identity(1)), &x).unwrap(),
            m_make(vec![0], vec![], vec![], vec![0]).unwrap()
        );
        assert_eq!(
            apply_aut(&AutTag::identity(1), &MElem::Zero).unwrap(),
            MElem::Zero
        );
    }

    #[test]
    fn tags_act_as_homomorphisms() {
        let universe = nonzero_elements_within(&[0, 1, 2], 1);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for t in AutTag::all(3) {
            for _ in 0..200 {
                let x = universe.choose(&mut rng).unwrap();
                let y = universe.choose(&mut rng).unwrap();
                assert_eq!(
                    apply_aut(&t, &m_mul(x, y)).unwrap(),
                    m_mul(&apply_aut(&t, x).unwrap(), &apply_aut(&t, y).unwrap())
                );
            }
            // bijective on a relabeling-closed truncation
            let mut image: Vec<MElem> =
                universe.iter().map(|x| apply_aut(&t, x).unwrap()).collect();
            image.sort();
            assert_eq!(image, universe);
        }
    }

    #[test]
    fn composition_laws() {
        let f = perm(&[1, 2, 0]);
        let g = perm(&[0, 2, 1]);
        let fg = f.compose(&g).unwrap();
        assert_eq!(
            compose_tags(&AutTag::psi(f.clone()), &AutTag::psi(g.clone())).unwrap(),
            AutTag::phi(fg.clone())
        );
        assert_eq!(
            compose_tags(&AutTag::phi(f.clone()), &AutTag::psi(g.clone())).unwrap(),
            AutTag::psi(fg.clone())
        );
        assert_eq!(
            compose_tags(&AutTag::psi(f.clone()), &AutTag::phi(g.clone())).unwrap(),
            AutTag::psi(fg)
        );
        let t = AutTag::psi(g);
        assert_eq!(compose_tags(&AutTag::identity(3), &t).unwrap(), t);
        assert!(compose_tags(&AutTag::identity(2), &t).is_err());
    }

    #[test]
    fn tag_group_is_a_group_action() {
        let all = AutTag::all(3);
        assert_eq!(all.len(), 12);
        let universe = nonzero_elements_within(&[0, 1, 2], 1);
        for s in &all {
            let id = compose_tags(s, &s.inverse()).unwrap();
            assert_eq!(id, AutTag::identity(3));
            for t in &all {
                let st = compose_tags(s, t).unwrap();
                assert!(all.contains(&st));
                for x in universe.iter().step_by(5) {
                    assert_eq!(
                        apply_aut(&st, x).unwrap(),
                        apply_aut(s, &apply_aut(t, x).unwrap()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn generator_sets() {
        let (first, second) = generators(1);
        assert_eq!(
            first,
            vec![m_make(vec![], vec![0], vec![0], vec![]).unwrap()]
        );
        assert_eq!(
            second,
            vec![m_make(vec![0], vec![], vec![], vec![0]).unwrap()]
        );
        let (first, second) = generators(3);
        assert_eq!(first.len(), 3);
        assert_eq!(second.len(), 3);
        assert!(first.iter().all(|g| !second.contains(g)));
        assert_eq!(first.iter().map(m_inv).collect::<Vec<_>>(), second);
    }

    #[test]
    fn tags_permute_generators() {
        let (first, second) = generators(3);
        let image = |t: &AutTag, set: &[MElem]| {
            let mut v: Vec<MElem> = set.iter().map(|g| apply_aut(t, g).unwrap()).collect();
            v.sort();
            v
        };
        for t in AutTag::all(3) {
            let (to1, to2) = match t.sign {
                Sign::Plus => (&first, &second),
                Sign::Minus => (&second, &first),
            };
            assert_eq!(&image(&t, &first), to1);
            assert_eq!(&image(&t, &second), to2);
        }
    }

    #[test]
    fn factorization_examples() {
        let g = g1(0);
        assert_eq!(factor_over_generators(&g).unwrap(), vec![g.clone()]);
        assert_eq!(factor_over_generators(&g2(1)).unwrap(), vec![g2(1)]);
        let x = m_make(vec![0], vec![0, 1], vec![0, 1], vec![0]).unwrap();
        let seq = factor_over_generators(&x).unwrap();
        assert_eq!(m_product(&seq), Some(x));
        assert_eq!(factor_over_generators(&MElem::Zero), Err(Error::ZeroInput));
    }

    #[test]
    fn factorization_replays_exhaustively() {
        let (first, second) = generators(2);
        for x in nonzero_elements_within(&[0, 1], 2) {
            let seq = factor_over_generators(&x).unwrap();
            assert!(seq.iter().all(|g| first.contains(g) || second.contains(g)));
            assert_eq!(m_product(&seq), Some(x));
        }
    }

    #[test]
    fn census_small() {
        assert_eq!(automorphism_census(1, 3).unwrap().len(), 2);
        let two = automorphism_census(2, 3).unwrap();
        let mut expected = AutTag::all(2);
        expected.sort();
        assert_eq!(two, expected);
        assert_eq!(automorphism_census(3, 3).unwrap().len(), 12);
        assert!(matches!(
            automorphism_census(5, 3),
            Err(Error::LambdaTooLarge(5))
        ));
        assert!(automorphism_census(2, 1).is_err());
    }
}
