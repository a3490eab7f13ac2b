//! Brute-force cross-checks on truncations of `M_λ`.
//!
//! A [`Truncation`] holds zero and every element whose four components have
//! length at most `n`, found by filtering all word quadruples through the
//! membership identity. Green's relations are recomputed here from their
//! definitions (inverse-idempotent equalities, `L∘R`, principal ideals) and
//! compared with the word characterizations in [`crate::mcalister`].

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::autom::{apply_aut, factor_over_generators, AutTag, CENSUS_MAX_LAMBDA};
use crate::error::{Error, Result};
use crate::mcalister::{
    d_class, d_index, eggbox_neighbors, is_idempotent, leq_idempotent, m_inv, m_make, m_mul,
    m_product, nonzero_elements_within, product_dindex_law, related, DIndex, GreenRel, MElem,
};
use crate::topology::{
    certify_ideal_property, elements_by_index_len, shrink_compact, shrink_ideal, CompactBasis,
    IdealBasis, IdealSpec,
};
use crate::words::{enumerate_words, Alphabet, Letter, Word};

/// Largest number of word quadruples [`build_truncation`] will filter.
pub const CANDIDATE_GUARD: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Truncation {
    size: u32,
    max_len: usize,
    elements: Vec<MElem>,
}

impl Truncation {
    pub fn alphabet_size(&self) -> u32 {
        self.size
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Zero first, then nonzero elements in element order.
    pub fn elements(&self) -> &[MElem] {
        &self.elements
    }

    pub fn nonzero(&self) -> &[MElem] {
        &self.elements[1..]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, x: &MElem) -> Option<usize> {
        self.elements.binary_search(x).ok()
    }

    pub fn letters(&self) -> Vec<Letter> {
        (0..self.size).collect()
    }
}

pub fn build_truncation(size: u32, max_len: usize) -> Result<Truncation> {
    let alphabet = Alphabet::finite(size)?;
    let words_count: u128 = (0..=max_len as u32).map(|k| (size as u128).pow(k)).sum();
    let candidates = words_count.pow(4);
    if candidates > CANDIDATE_GUARD {
        return Err(Error::SizeGuard {
            candidates,
            limit: CANDIDATE_GUARD,
        });
    }
    let words = enumerate_words(alphabet, max_len)?;
    let mut elements = vec![MElem::Zero];
    for a in &words {
        for b in &words {
            for c in &words {
                for d in &words {
                    if let Ok(x) = m_make(a.clone(), b.clone(), c.clone(), d.clone()) {
                        elements.push(x);
                    }
                }
            }
        }
    }
    elements.sort();
    Ok(Truncation {
        size,
        max_len,
        elements,
    })
}

/// A relation on a truncation, as pairs of element positions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Relation {
    pub pairs: BTreeSet<(usize, usize)>,
}

impl Relation {
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.pairs.contains(&(i, j))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn element_pairs<'a>(
        &'a self,
        t: &'a Truncation,
    ) -> impl Iterator<Item = (&'a MElem, &'a MElem)> {
        self.pairs
            .iter()
            .map(|&(i, j)| (&t.elements[i], &t.elements[j]))
    }

    fn from_predicate(t: &Truncation, pred: impl Fn(usize, usize) -> bool) -> Self {
        let n = t.len();
        let pairs = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| pred(i, j))
            .collect();
        Relation { pairs }
    }
}

/// The word-characterization relation from [`related`], restricted to `t`.
pub fn fast_relation(t: &Truncation, rel: GreenRel) -> Relation {
    Relation::from_predicate(t, |i, j| related(&t.elements[i], &t.elements[j], rel))
}

fn left_key(x: &MElem) -> MElem {
    m_mul(&m_inv(x), x)
}

fn right_key(x: &MElem) -> MElem {
    m_mul(x, &m_inv(x))
}

/// Multiplier bound used for `J` by default: twice the truncation length.
pub fn default_j_bound(t: &Truncation) -> usize {
    2 * t.max_len
}

/// Green's relations from their definitions:
/// `L`: `x⁻¹x = y⁻¹y`; `R`: `xx⁻¹ = yy⁻¹`; `H = L ∩ R`; `D = L∘R`, with intermediates
/// drawn from `t` and from the full D-class of every index present in `t`;
/// `J`: equal principal ideals, see [`oracle_j`].
pub fn oracle_green(t: &Truncation, rel: GreenRel) -> Relation {
    match rel {
        GreenRel::L => {
            let keys: Vec<MElem> = t.elements.iter().map(left_key).collect();
            Relation::from_predicate(t, |i, j| keys[i] == keys[j])
        }
        GreenRel::R => {
            let keys: Vec<MElem> = t.elements.iter().map(right_key).collect();
            Relation::from_predicate(t, |i, j| keys[i] == keys[j])
        }
        GreenRel::H => {
            let l = oracle_green(t, GreenRel::L);
            let r = oracle_green(t, GreenRel::R);
            Relation {
                pairs: l.pairs.intersection(&r.pairs).copied().collect(),
            }
        }
        GreenRel::D => oracle_composition(t, true),
        GreenRel::J => oracle_j(t, default_j_bound(t)),
    }
}

fn intermediates(t: &Truncation) -> BTreeSet<MElem> {
    let mut out: BTreeSet<MElem> = t.elements.iter().cloned().collect();
    let indices: BTreeSet<Word> = t
        .nonzero()
        .iter()
        .map(|x| d_index(x).expect("nonzero").into_word())
        .collect();
    for p in indices {
        out.extend(d_class(&DIndex::new(p).expect("nonempty")));
    }
    out
}

/// `L∘R` when `l_first`, otherwise `R∘L`.
pub fn oracle_composition(t: &Truncation, l_first: bool) -> Relation {
    // x (L∘R) y iff some z has x⁻¹x = z⁻¹z and zz⁻¹ = yy⁻¹.
    let through: HashSet<(MElem, MElem)> = intermediates(t)
        .iter()
        .map(|z| {
            if l_first {
                (left_key(z), right_key(z))
            } else {
                (right_key(z), left_key(z))
            }
        })
        .collect();
    let (first, second): (Vec<MElem>, Vec<MElem>) = if l_first {
        (
            t.elements.iter().map(left_key).collect(),
            t.elements.iter().map(right_key).collect(),
        )
    } else {
        (
            t.elements.iter().map(right_key).collect(),
            t.elements.iter().map(left_key).collect(),
        )
    };
    Relation::from_predicate(t, |i, j| {
        through.contains(&(first[i].clone(), second[j].clone()))
    })
}

/// `x J y` iff each lies in the other's principal two-sided ideal `S¹xS¹`.
///
/// Left multipliers `s` range over zero and every element with components of
/// length at most `bound`. For the right factor, `y ∈ zS¹` holds exactly when
/// `zz⁻¹y = y` (take `t = z⁻¹y`), so only the idempotents `zz⁻¹` of the left
/// products are kept.
pub fn oracle_j(t: &Truncation, bound: usize) -> Relation {
    let multipliers = nonzero_elements_within(&t.letters(), bound);
    let reach: Vec<Vec<bool>> = t
        .elements
        .iter()
        .map(|x| {
            if x.is_zero() {
                return t.elements.iter().map(MElem::is_zero).collect();
            }
            let right_units: HashSet<MElem> = std::iter::once(x.clone())
                .chain(multipliers.iter().map(|s| m_mul(s, x)))
                .filter(|z| !z.is_zero())
                .map(|z| right_key(&z))
                .collect();
            t.elements
                .iter()
                .map(|y| y.is_zero() || right_units.iter().any(|e| m_mul(e, y) == *y))
                .collect()
        })
        .collect();
    Relation::from_predicate(t, |i, j| reach[i][j] && reach[j][i])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub pass: bool,
    pub counterexample: Option<String>,
}

impl SuiteResult {
    fn from(outcome: std::result::Result<(), String>) -> Self {
        match outcome {
            Ok(()) => SuiteResult {
                pass: true,
                counterexample: None,
            },
            Err(c) => SuiteResult {
                pass: false,
                counterexample: Some(c),
            },
        }
    }
}

/// Per-suite outcomes, in the fixed order the suites run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub suites: Vec<(&'static str, SuiteResult)>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.suites.iter().all(|(_, r)| r.pass)
    }

    pub fn get(&self, name: &str) -> Option<&SuiteResult> {
        self.suites.iter().find(|(n, _)| *n == name).map(|(_, r)| r)
    }
}

impl Serialize for Report {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<&str, &SuiteResult> = self.suites.iter().map(|(n, r)| (*n, r)).collect();
        map.serialize(s)
    }
}

type Mul<'a> = &'a dyn Fn(&MElem, &MElem) -> MElem;

/// Exhaustive associativity below this many triples; sampled above.
const EXHAUSTIVE_TRIPLES: usize = 2_000_000;
const SAMPLED_TRIPLES: usize = 10_000;
const AUT_PAIRS: usize = 200;

pub fn check_all(t: &Truncation, seed: u64) -> Report {
    check_all_with(t, seed, &m_mul)
}

/// Runs every suite; the associativity suite uses `mul` in place of [`m_mul`].
pub fn check_all_with(t: &Truncation, seed: u64, mul: Mul<'_>) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let suites = vec![
        (
            "associativity",
            SuiteResult::from(associativity(t, mul, &mut rng)),
        ),
        ("inverse_axioms", SuiteResult::from(inverse_axioms(t))),
        ("green_agreement", SuiteResult::from(green_agreement(t))),
        ("d_equals_j", SuiteResult::from(d_equals_j(t))),
        ("d_class_counts", SuiteResult::from(d_class_counts(t))),
        ("idempotent_order", SuiteResult::from(idempotent_order(t))),
        ("product_law", SuiteResult::from(product_law(t))),
        ("eggbox_symmetry", SuiteResult::from(eggbox_symmetry(t))),
        ("factorization", SuiteResult::from(factorization(t))),
        (
            "automorphisms",
            SuiteResult::from(automorphisms(t, &mut rng)),
        ),
        (
            "topology_ideals",
            SuiteResult::from(topology_ideals(t, &mut rng)),
        ),
    ];
    Report { suites }
}

type Outcome = std::result::Result<(), String>;

fn check_triple(x: &MElem, y: &MElem, z: &MElem, mul: Mul<'_>) -> Outcome {
    let left = mul(&mul(x, y), z);
    let right = mul(x, &mul(y, z));
    if left == right {
        Ok(())
    } else {
        Err(format!("x={x} y={y} z={z}: (xy)z={left} x(yz)={right}"))
    }
}

fn associativity(t: &Truncation, mul: Mul<'_>, rng: &mut ChaCha8Rng) -> Outcome {
    let e = t.elements();
    if e.len().pow(3) <= EXHAUSTIVE_TRIPLES {
        for x in e {
            for y in e {
                let xy = mul(x, y);
                for z in e {
                    let left = mul(&xy, z);
                    let right = mul(x, &mul(y, z));
                    if left != right {
                        return Err(format!("x={x} y={y} z={z}: (xy)z={left} x(yz)={right}"));
                    }
                }
            }
        }
        return Ok(());
    }
    for _ in 0..SAMPLED_TRIPLES {
        let x = e.choose(rng).expect("nonempty");
        let y = e.choose(rng).expect("nonempty");
        let z = e.choose(rng).expect("nonempty");
        check_triple(x, y, z, mul)?;
    }
    Ok(())
}

fn inverse_axioms(t: &Truncation) -> Outcome {
    for x in t.elements() {
        let xi = m_inv(x);
        if m_mul(&m_mul(x, &xi), x) != *x {
            return Err(format!("x x⁻¹ x ≠ x for x={x}"));
        }
        if m_mul(&m_mul(&xi, x), &xi) != xi {
            return Err(format!("x⁻¹ x x⁻¹ ≠ x⁻¹ for x={x}"));
        }
    }
    let idempotents: Vec<&MElem> = t.elements().iter().filter(|x| is_idempotent(x)).collect();
    for e in &idempotents {
        for f in &idempotents {
            if m_mul(e, f) != m_mul(f, e) {
                return Err(format!("idempotents {e} and {f} do not commute"));
            }
        }
    }
    Ok(())
}

fn first_difference(t: &Truncation, a: &Relation, b: &Relation) -> Option<String> {
    a.pairs
        .symmetric_difference(&b.pairs)
        .next()
        .map(|&(i, j)| format!("({}, {})", t.elements[i], t.elements[j]))
}

fn green_agreement(t: &Truncation) -> Outcome {
    for rel in [GreenRel::L, GreenRel::R, GreenRel::H, GreenRel::D] {
        let fast = fast_relation(t, rel);
        let oracle = oracle_green(t, rel);
        if let Some(pair) = first_difference(t, &fast, &oracle) {
            return Err(format!("{rel}: word test and definition differ on {pair}"));
        }
    }
    let h = oracle_green(t, GreenRel::H);
    if let Some(&(i, j)) = h.pairs.iter().find(|(i, j)| i != j) {
        return Err(format!(
            "H-class not a singleton: {} H {}",
            t.elements[i], t.elements[j]
        ));
    }
    let lr = oracle_composition(t, true);
    let rl = oracle_composition(t, false);
    if let Some(pair) = first_difference(t, &lr, &rl) {
        return Err(format!("L∘R ≠ R∘L on {pair}"));
    }
    Ok(())
}

/// Outcome of comparing the bounded `J` search against `D`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct JComparison {
    /// `D`-related pairs the bounded search did not connect.
    pub bound_insufficient: Vec<(MElem, MElem)>,
    /// `J`-related pairs that are not `D`-related.
    pub violations: Vec<(MElem, MElem)>,
}

pub fn compare_j_with_d(t: &Truncation, bound: usize) -> JComparison {
    let j = oracle_j(t, bound);
    let d = oracle_green(t, GreenRel::D);
    let pick = |pairs: std::collections::btree_set::Difference<'_, (usize, usize)>| {
        pairs
            .map(|&(i, k)| (t.elements[i].clone(), t.elements[k].clone()))
            .collect()
    };
    JComparison {
        bound_insufficient: pick(d.pairs.difference(&j.pairs)),
        violations: pick(j.pairs.difference(&d.pairs)),
    }
}

fn d_equals_j(t: &Truncation) -> Outcome {
    let cmp = compare_j_with_d(t, default_j_bound(t));
    if let Some((x, y)) = cmp.violations.first() {
        return Err(format!("violation: {x} J {y} but not D"));
    }
    if let Some((x, y)) = cmp.bound_insufficient.first() {
        return Err(format!(
            "bound-insufficient: {x} D {y} but no J witness within length {}",
            default_j_bound(t)
        ));
    }
    Ok(())
}

fn d_class_counts(t: &Truncation) -> Outcome {
    let mut by_index: HashMap<Word, Vec<&MElem>> = HashMap::new();
    for x in t.nonzero() {
        by_index
            .entry(d_index(x).expect("nonzero").into_word())
            .or_default()
            .push(x);
    }
    let mut indices: Vec<&Word> = by_index.keys().collect();
    indices.sort();
    for p in indices {
        let class = d_class(&DIndex::new(p.clone()).expect("nonempty"));
        let n = p.len() + 1;
        if class.len() != n * n {
            return Err(format!("|D_{p}| = {} ≠ {}", class.len(), n * n));
        }
        if p.len() <= t.max_len {
            let present: Vec<MElem> = by_index[p].iter().map(|x| (*x).clone()).collect();
            if present != class {
                return Err(format!("D_{p} within the truncation differs from d_class"));
            }
        }
    }
    Ok(())
}

fn idempotent_order(t: &Truncation) -> Outcome {
    let idempotents: Vec<&MElem> = t.nonzero().iter().filter(|x| is_idempotent(x)).collect();
    for e in &idempotents {
        for f in &idempotents {
            if e != f
                && d_index(e) == d_index(f)
                && leq_idempotent(e, f).map_err(|err| err.to_string())?
            {
                return Err(format!("{e} < {f} inside one D-class"));
            }
        }
    }
    Ok(())
}

fn product_law(t: &Truncation) -> Outcome {
    for x in t.nonzero() {
        for y in t.nonzero() {
            let z = m_mul(x, y);
            let witness = product_dindex_law(x, y).map_err(|e| e.to_string())?;
            match (witness, z.quad()) {
                (None, None) => {}
                (Some(w), Some(q)) => {
                    let r = q.index_word();
                    let p = d_index(x).expect("nonzero").into_word();
                    let q = d_index(y).expect("nonzero").into_word();
                    if w.left_side(&p) != r || w.right_side(&q) != r {
                        return Err(format!("witness fails for x={x} y={y}"));
                    }
                }
                _ => {
                    return Err(format!(
                        "witness presence disagrees with x·y for x={x} y={y}"
                    ))
                }
            }
        }
    }
    Ok(())
}

fn eggbox_symmetry(t: &Truncation) -> Outcome {
    for x in t.nonzero() {
        let p = d_index(x).expect("nonzero");
        for y in eggbox_neighbors(x).expect("nonzero") {
            if d_index(&y).expect("nonzero") != p {
                return Err(format!("neighbor {y} of {x} leaves D_{p}"));
            }
            if !eggbox_neighbors(&y).expect("nonzero").contains(x) {
                return Err(format!("{y} is a neighbor of {x} but not conversely"));
            }
        }
    }
    Ok(())
}

fn factorization(t: &Truncation) -> Outcome {
    for x in t.nonzero() {
        let seq = factor_over_generators(x).map_err(|e| e.to_string())?;
        if m_product(&seq).as_ref() != Some(x) {
            return Err(format!("factorization of {x} multiplies to something else"));
        }
    }
    Ok(())
}

fn automorphisms(t: &Truncation, rng: &mut ChaCha8Rng) -> Outcome {
    if t.size > CENSUS_MAX_LAMBDA {
        return Ok(());
    }
    let e = t.elements();
    for tag in AutTag::all(t.size) {
        let apply = |x: &MElem| apply_aut(&tag, x).map_err(|err| err.to_string());
        let mut image = e.iter().map(apply).collect::<Outcome2<Vec<MElem>>>()?;
        image.sort();
        if image != e {
            return Err(format!("{tag} does not permute the truncation"));
        }
        for _ in 0..AUT_PAIRS {
            let x = e.choose(rng).expect("nonempty");
            let y = e.choose(rng).expect("nonempty");
            if apply(&m_mul(x, y))? != m_mul(&apply(x)?, &apply(y)?) {
                return Err(format!("{tag} is not multiplicative on x={x} y={y}"));
            }
        }
    }
    Ok(())
}

type Outcome2<T> = std::result::Result<T, String>;

fn topology_ideals(t: &Truncation, rng: &mut ChaCha8Rng) -> Outcome {
    let letters = t.letters();
    let multipliers = t.elements();
    let members = elements_by_index_len(&letters, 2 * t.max_len);
    let indices: Vec<Word> = t
        .nonzero()
        .iter()
        .map(|x| d_index(x).expect("nonzero").into_word())
        .collect();

    let excluded: Vec<Word> = indices.choose_multiple(rng, 3).cloned().collect();
    let compact = shrink_compact(&CompactBasis::new(excluded).map_err(|e| e.to_string())?);
    certify_ideal_property(|x| compact.contains(x), multipliers, &members)
        .map_err(|v| format!("compact: {} · {} = {} escapes", v.left, v.right, v.product))?;

    let mut ideals = vec![IdealSpec::explicit([Word::letter(0)]).map_err(|e| e.to_string())?];
    if t.size >= 2 {
        ideals.push(IdealSpec::pattern_union([1]));
    }
    for ideal in ideals {
        let removed: Vec<Word> = indices
            .iter()
            .filter(|w| ideal.contains(w))
            .cloned()
            .collect::<Vec<_>>()
            .choose_multiple(rng, 3)
            .cloned()
            .collect();
        let basis = IdealBasis::new(ideal, removed).map_err(|e| e.to_string())?;
        let shrunk = shrink_ideal(&basis);
        certify_ideal_property(|x| shrunk.contains(x), multipliers, &members)
            .map_err(|v| format!("ideal: {} · {} = {} escapes", v.left, v.right, v.product))?;
    }
    Ok(())
}
