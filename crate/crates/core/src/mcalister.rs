//! The McAlister semigroup `M_λ`.
//!
//! Nonzero elements are quadruples `((a,b),(c,d))` with `ac^t = bd^t ≠ ε`. They
//! multiply componentwise in `P_λ × P_λ`; a zero in either coordinate collapses
//! the product to the single zero of `M_λ`.

use std::collections::BTreeSet;
use std::fmt;

use serde::ser::{Serialize, SerializeTuple, Serializer};

use crate::error::{Error, Result};
use crate::polycyclic::{p_mul, PElem};
use crate::words::{is_suffix, words_over, Letter, Word};

/// The four component words of a nonzero element. Only constructible through
/// [`m_make`] or operations that preserve membership.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quad {
    a: Word,
    b: Word,
    c: Word,
    d: Word,
}

impl Quad {
    pub(crate) fn new_unchecked(a: Word, b: Word, c: Word, d: Word) -> Self {
        let q = Quad { a, b, c, d };
        debug_assert!(q.is_member(), "membership violated by {q}");
        q
    }

    pub fn a(&self) -> &Word {
        &self.a
    }

    pub fn b(&self) -> &Word {
        &self.b
    }

    pub fn c(&self) -> &Word {
        &self.c
    }

    pub fn d(&self) -> &Word {
        &self.d
    }

    pub fn components(&self) -> [&Word; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn into_components(self) -> (Word, Word, Word, Word) {
        (self.a, self.b, self.c, self.d)
    }

    /// `ac^t`, which equals `bd^t`.
    pub fn index_word(&self) -> Word {
        self.a.concat(&self.c.reverse())
    }

    pub fn max_component_len(&self) -> usize {
        self.components().iter().map(|w| w.len()).max().unwrap_or(0)
    }

    fn is_member(&self) -> bool {
        let left = self.a.concat(&self.c.reverse());
        !left.is_empty() && left == self.b.concat(&self.d.reverse())
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(({},{}),({},{}))", self.a, self.b, self.c, self.d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MElem {
    Zero,
    NonZero(Quad),
}

impl MElem {
    pub fn is_zero(&self) -> bool {
        matches!(self, MElem::Zero)
    }

    pub fn quad(&self) -> Option<&Quad> {
        match self {
            MElem::Zero => None,
            MElem::NonZero(q) => Some(q),
        }
    }

    pub fn nonzero(&self) -> Result<&Quad> {
        self.quad().ok_or(Error::ZeroInput)
    }

    /// The two polycyclic coordinates `(a,b)` and `(c,d)`.
    pub fn coordinates(&self) -> (PElem, PElem) {
        match self {
            MElem::Zero => (PElem::Zero, PElem::Zero),
            MElem::NonZero(q) => (
                PElem::Pair(q.a.clone(), q.b.clone()),
                PElem::Pair(q.c.clone(), q.d.clone()),
            ),
        }
    }

    /// Letters occurring in any component.
    pub fn letters(&self) -> BTreeSet<Letter> {
        self.quad()
            .map(|q| {
                q.components()
                    .iter()
                    .flat_map(|w| w.letters().iter().copied())
                    .collect()
            })
            .unwrap_or_default()
    }

    pub fn max_component_len(&self) -> usize {
        self.quad().map_or(0, Quad::max_component_len)
    }
}

impl fmt::Display for MElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MElem::Zero => f.write_str("0"),
            MElem::NonZero(q) => q.fmt(f),
        }
    }
}

/// Zero serializes as `null`, a nonzero element as `[a, b, c, d]`.
impl Serialize for MElem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            MElem::Zero => serializer.serialize_unit(),
            MElem::NonZero(q) => {
                let mut t = serializer.serialize_tuple(4)?;
                for w in q.components() {
                    t.serialize_element(w)?;
                }
                t.end()
            }
        }
    }
}

/// Builds `((a,b),(c,d))`, checking `ac^t = bd^t ≠ ε`.
pub fn m_make(
    a: impl Into<Word>,
    b: impl Into<Word>,
    c: impl Into<Word>,
    d: impl Into<Word>,
) -> Result<MElem> {
    let (a, b, c, d) = (a.into(), b.into(), c.into(), d.into());
    let left = a.concat(&c.reverse());
    let right = b.concat(&d.reverse());
    if left.is_empty() || left != right {
        return Err(Error::MembershipViolation { left, right });
    }
    Ok(MElem::NonZero(Quad { a, b, c, d }))
}

/// Product in the Rees quotient of `P_λ × P_λ`.
pub fn m_mul(x: &MElem, y: &MElem) -> MElem {
    let (MElem::NonZero(p), MElem::NonZero(q)) = (x, y) else {
        return MElem::Zero;
    };
    let first = p_mul(
        &PElem::Pair(p.a.clone(), p.b.clone()),
        &PElem::Pair(q.a.clone(), q.b.clone()),
    );
    let PElem::Pair(a, b) = first else {
        return MElem::Zero;
    };
    let second = p_mul(
        &PElem::Pair(p.c.clone(), p.d.clone()),
        &PElem::Pair(q.c.clone(), q.d.clone()),
    );
    let PElem::Pair(c, d) = second else {
        return MElem::Zero;
    };
    let z = Quad { a, b, c, d };
    assert!(z.is_member(), "product {x} · {y} = {z} left M_λ");
    MElem::NonZero(z)
}

/// Product of a sequence; the empty product is not an element of `M_λ`, so it yields `None`.
pub fn m_product<'a>(factors: impl IntoIterator<Item = &'a MElem>) -> Option<MElem> {
    let mut it = factors.into_iter();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, g| m_mul(&acc, g)))
}

/// `((a,b),(c,d))⁻¹ = ((b,a),(d,c))`.
pub fn m_inv(x: &MElem) -> MElem {
    match x {
        MElem::Zero => MElem::Zero,
        MElem::NonZero(q) => MElem::NonZero(Quad {
            a: q.b.clone(),
            b: q.a.clone(),
            c: q.d.clone(),
            d: q.c.clone(),
        }),
    }
}

pub fn is_idempotent(x: &MElem) -> bool {
    match x {
        MElem::Zero => true,
        MElem::NonZero(q) => q.a == q.b && q.c == q.d,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    /// `((u, uv), (wv^t, w))`
    Form1,
    /// `((uv, u), (w, wv^t))`
    Form2,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub shape: Shape,
    pub u: Word,
    pub v: Word,
    pub w: Word,
}

impl CanonicalForm {
    pub fn reconstruct(&self) -> Result<MElem> {
        let (u, v, w) = (&self.u, &self.v, &self.w);
        let uv = u.concat(v);
        let wvt = w.concat(&v.reverse());
        match self.shape {
            Shape::Form1 => m_make(u.clone(), uv, wvt, w.clone()),
            Shape::Form2 => m_make(uv, u.clone(), w.clone(), wvt),
        }
    }
}

/// Writes `x` as `((u,uv),(wv^t,w))` or `((uv,u),(w,wv^t))`. Equal-length first
/// components give `Form2` with `v = ε`.
pub fn canon(x: &MElem) -> Result<CanonicalForm> {
    let q = x.nonzero()?;
    let form = if q.a.len() < q.b.len() {
        let v =
            q.a.strip_prefix_of(&q.b)
                .expect("a is a prefix of b when |a| < |b|");
        CanonicalForm {
            shape: Shape::Form1,
            u: q.a.clone(),
            v,
            w: q.d.clone(),
        }
    } else {
        let v =
            q.b.strip_prefix_of(&q.a)
                .expect("b is a prefix of a when |a| >= |b|");
        CanonicalForm {
            shape: Shape::Form2,
            u: q.b.clone(),
            v,
            w: q.c.clone(),
        }
    };
    debug_assert_eq!(form.reconstruct().as_ref(), Ok(x));
    Ok(form)
}

/// The nonempty word `p` labelling the D-class `D_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DIndex(Word);

impl DIndex {
    pub fn new(word: impl Into<Word>) -> Result<Self> {
        let word = word.into();
        if word.is_empty() {
            return Err(Error::EmptyIndex);
        }
        Ok(DIndex(word))
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }
}

impl fmt::Display for DIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn d_index(x: &MElem) -> Result<DIndex> {
    Ok(DIndex(x.nonzero()?.index_word()))
}

/// All `(|p|+1)²` elements of `D_p`, in element order.
pub fn d_class(p: &DIndex) -> Vec<MElem> {
    let splits: Vec<(Word, Word)> = p.0.splits().map(|(a, rest)| (a, rest.reverse())).collect();
    let mut out = Vec::with_capacity(splits.len() * splits.len());
    for (a, c) in &splits {
        for (b, d) in &splits {
            out.push(MElem::NonZero(Quad::new_unchecked(
                a.clone(),
                b.clone(),
                c.clone(),
                d.clone(),
            )));
        }
    }
    out.sort();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GreenRel {
    L,
    R,
    H,
    D,
    J,
}

impl GreenRel {
    pub const ALL: [GreenRel; 5] = [
        GreenRel::L,
        GreenRel::R,
        GreenRel::H,
        GreenRel::D,
        GreenRel::J,
    ];
}

impl fmt::Display for GreenRel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GreenRel::L => "L",
            GreenRel::R => "R",
            GreenRel::H => "H",
            GreenRel::D => "D",
            GreenRel::J => "J",
        };
        f.write_str(s)
    }
}

/// Green's relations between nonzero elements, by their word characterizations.
pub fn green(x: &MElem, y: &MElem, rel: GreenRel) -> Result<bool> {
    let (p, q) = (x.nonzero()?, y.nonzero()?);
    Ok(match rel {
        GreenRel::L => p.b == q.b && p.d == q.d,
        GreenRel::R => p.a == q.a && p.c == q.c,
        GreenRel::H => p == q,
        GreenRel::D | GreenRel::J => p.index_word() == q.index_word(),
    })
}

/// Like [`green`], but total: zero is related only to itself.
pub fn related(x: &MElem, y: &MElem, rel: GreenRel) -> bool {
    match (x, y) {
        (MElem::Zero, MElem::Zero) => true,
        (MElem::Zero, _) | (_, MElem::Zero) => false,
        _ => green(x, y, rel).expect("both nonzero"),
    }
}

/// The natural order `e ≤ f` on idempotents, i.e. `ef = e`.
pub fn leq_idempotent(e: &MElem, f: &MElem) -> Result<bool> {
    if !is_idempotent(e) || !is_idempotent(f) {
        return Err(Error::NotIdempotent);
    }
    let by_product = m_mul(e, f) == *e;
    let by_words = match (e, f) {
        (MElem::Zero, _) => true,
        (_, MElem::Zero) => false,
        (MElem::NonZero(p), MElem::NonZero(q)) => is_suffix(&q.a, &p.a) && is_suffix(&q.c, &p.c),
    };
    assert_eq!(
        by_product, by_words,
        "order characterizations disagree on {e} ≤ {f}"
    );
    Ok(by_product)
}

/// Maximal idempotents are `((ε,ε),(α,α))` and `((α,α),(ε,ε))` for a single letter `α`.
pub fn is_maximal_idempotent(e: &MElem) -> Result<bool> {
    if !is_idempotent(e) {
        return Err(Error::NotIdempotent);
    }
    Ok(match e {
        MElem::Zero => false,
        MElem::NonZero(q) => {
            (q.a.is_empty() && q.c.len() == 1) || (q.a.len() == 1 && q.c.is_empty())
        }
    })
}

/// Neighbors of `x` in the egg-box picture of its D-class: move the last letter of
/// component 1 onto component 3, 2 onto 4, 3 onto 1, or 4 onto 2. Moves from an
/// empty component are skipped.
pub fn eggbox_neighbors(x: &MElem) -> Result<Vec<MElem>> {
    let q = x.nonzero()?;
    let mut out = Vec::with_capacity(4);
    if let Some((a, l)) = q.a.split_last() {
        out.push(Quad::new_unchecked(
            a,
            q.b.clone(),
            q.c.push(l),
            q.d.clone(),
        ));
    }
    if let Some((b, l)) = q.b.split_last() {
        out.push(Quad::new_unchecked(
            q.a.clone(),
            b,
            q.c.clone(),
            q.d.push(l),
        ));
    }
    if let Some((c, l)) = q.c.split_last() {
        out.push(Quad::new_unchecked(
            q.a.push(l),
            q.b.clone(),
            c,
            q.d.clone(),
        ));
    }
    if let Some((d, l)) = q.d.split_last() {
        out.push(Quad::new_unchecked(
            q.a.clone(),
            q.b.push(l),
            q.c.clone(),
            d,
        ));
    }
    Ok(out.into_iter().map(MElem::NonZero).collect())
}

/// Elements `((a,b),(c,d))` whose components are suffixes of `x`, `y`, `u`, `v`.
pub fn suffix_box(x: &Word, y: &Word, u: &Word, v: &Word) -> Vec<MElem> {
    let mut out = Vec::new();
    for a in x.suffixes() {
        for b in y.suffixes() {
            for c in u.suffixes() {
                for d in v.suffixes() {
                    if let Ok(e) = m_make(a.clone(), b.clone(), c.clone(), d.clone()) {
                        out.push(e);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Whether `candidate` keeps all four probe products around `center` nonzero:
/// `candidate·((z y, z y),(z v, z v))` and `((z x, z x),(z u, z u))·candidate`
/// for both single letters `z ∈ {z1, z2}`.
pub fn survives_isolation_probes(candidate: &MElem, center: &Quad, z1: Letter, z2: Letter) -> bool {
    [z1, z2].into_iter().all(|z| {
        let z = Word::letter(z);
        let (zx, zy, zu, zv) = (
            z.concat(&center.a),
            z.concat(&center.b),
            z.concat(&center.c),
            z.concat(&center.d),
        );
        let right = MElem::NonZero(Quad::new_unchecked(zy.clone(), zy, zv.clone(), zv));
        let left = MElem::NonZero(Quad::new_unchecked(zx.clone(), zx, zu.clone(), zu));
        !m_mul(candidate, &right).is_zero() && !m_mul(&left, candidate).is_zero()
    })
}

/// Every nonzero element over `letters` with all four components of length at
/// most `max_len`, in element order. Enumerated through D-class indices, so the
/// cost is proportional to the output.
pub fn nonzero_elements_within(letters: &[Letter], max_len: usize) -> Vec<MElem> {
    let mut sorted = letters.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut out = Vec::new();
    for p in words_over(&sorted, 2 * max_len).into_iter().skip(1) {
        let splits: Vec<(Word, Word)> = p
            .splits()
            .filter(|(a, rest)| a.len() <= max_len && rest.len() <= max_len)
            .map(|(a, rest)| (a, rest.reverse()))
            .collect();
        for (a, c) in &splits {
            for (b, d) in &splits {
                out.push(MElem::NonZero(Quad::new_unchecked(
                    a.clone(),
                    b.clone(),
                    c.clone(),
                    d.clone(),
                )));
            }
        }
    }
    out.sort();
    out
}

/// The search bound used by [`division_set`]: the longest component of `a` plus
/// the longest component of `b`.
pub fn division_bound(a: &MElem, b: &MElem) -> usize {
    a.max_component_len() + b.max_component_len()
}

/// All `x` with `a·x = b` or `x·a = b`.
pub fn division_set(a: &MElem, b: &MElem) -> Result<Vec<MElem>> {
    division_set_within(a, b, division_bound(a, b))
}

/// [`division_set`] with an explicit component-length bound on the search.
pub fn division_set_within(a: &MElem, b: &MElem, bound: usize) -> Result<Vec<MElem>> {
    a.nonzero()?;
    b.nonzero()?;
    let letters: Vec<Letter> = a.letters().union(&b.letters()).copied().collect();
    Ok(nonzero_elements_within(&letters, bound)
        .into_iter()
        .filter(|x| m_mul(a, x) == *b || m_mul(x, a) == *b)
        .collect())
}

/// Words with `s1·p·r1 = s2·q·r2 = d_index(xy)`, where `p`, `q` index the factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductWitness {
    pub s1: Word,
    pub r1: Word,
    pub s2: Word,
    pub r2: Word,
}

impl ProductWitness {
    pub fn left_side(&self, p: &Word) -> Word {
        self.s1.concat(p).concat(&self.r1)
    }

    pub fn right_side(&self, q: &Word) -> Word {
        self.s2.concat(q).concat(&self.r2)
    }
}

/// For `x = ((a,b),(c,d))` and `y = ((x',y'),(u,v))` with nonzero product, splits on
/// which of `b`/`x'` and `d`/`u` is the longer suffix and reads off the witness.
/// Returns `None` when the product is zero.
pub fn product_dindex_law(x: &MElem, y: &MElem) -> Result<Option<ProductWitness>> {
    let (p, q) = (x.nonzero()?, y.nonzero()?);
    if m_mul(x, y).is_zero() {
        return Ok(None);
    }
    let first = (p.b.strip_suffix_of(&q.a), q.a.strip_suffix_of(&p.b));
    let second = (p.d.strip_suffix_of(&q.c), q.c.strip_suffix_of(&p.d));
    let e = Word::empty;
    let witness = match (first, second) {
        // x' = w·b, u = z·d
        ((Some(w), _), (Some(z), _)) => ProductWitness {
            s1: w,
            r1: z.reverse(),
            s2: e(),
            r2: e(),
        },
        // x' = w·b, d = z·u
        ((Some(w), _), (None, Some(z))) => ProductWitness {
            s1: w,
            r1: e(),
            s2: e(),
            r2: z.reverse(),
        },
        // b = w·x', d = z·u
        ((None, Some(w)), (None, Some(z))) => ProductWitness {
            s1: e(),
            r1: e(),
            s2: w,
            r2: z.reverse(),
        },
        // b = w·x', u = z·d
        ((None, Some(w)), (Some(z), _)) => ProductWitness {
            s1: e(),
            r1: z.reverse(),
            s2: w,
            r2: e(),
        },
        _ => unreachable!("nonzero product needs comparable suffixes in both coordinates"),
    };
    Ok(Some(witness))
}
