//! Acceptance criteria. Runs without the libtest harness so every criterion
//! prints its own line; exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::seq::{IteratorRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mcalister::autom::{apply_aut, automorphism_census, factor_over_generators};
use mcalister::mcalister::{
    d_class, d_index, m_inv, m_mul, m_product, nonzero_elements_within, product_dindex_law, DIndex,
    GreenRel, MElem,
};
use mcalister::oracle::{
    build_truncation, compare_j_with_d, default_j_bound, fast_relation, oracle_green,
};
use mcalister::text::{parse_elem, render_elem};
use mcalister::topology::{
    annihilator_index, certify_ideal_property, diagonal_element, distinct_topology_witness,
    elements_by_index_len, in_ideal, shrink_compact, shrink_ideal, CompactBasis, IdealBasis,
    IdealSpec,
};
use mcalister::words::{enumerate_words, words_over};
use mcalister::{Alphabet, Word};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))
}

fn random_word(rng: &mut ChaCha8Rng, letters: u32, len: std::ops::RangeInclusive<usize>) -> Word {
    let n = rng.gen_range(len);
    Word::new((0..n).map(|_| rng.gen_range(0..letters)).collect())
}

/// A uniformly split element with the given D-index.
fn element_with_index(rng: &mut ChaCha8Rng, p: &Word) -> MElem {
    let class = d_class(&DIndex::new(p.clone()).expect("nonempty"));
    class.choose(rng).expect("nonempty class").clone()
}

fn dclass_law() -> Outcome {
    let start = Instant::now();
    let mut classes = 0;
    for size in 1..=3 {
        for p in enumerate_words(Alphabet::finite(size).unwrap(), 5)
            .unwrap()
            .into_iter()
            .skip(1)
        {
            let class = d_class(&DIndex::new(p.clone()).unwrap());
            let want = (p.len() + 1).pow(2);
            ensure(class.len() == want, || {
                format!("|D_{p}| = {} ≠ {want}", class.len())
            })?;
            let distinct: BTreeSet<&MElem> = class.iter().collect();
            ensure(distinct.len() == want, || format!("D_{p} has repeats"))?;
            for x in &class {
                let q = d_index(x).unwrap().into_word();
                ensure(q == p, || format!("{x} in D_{p} has index {q}"))?;
            }
            classes += 1;
        }
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("{classes} classes in {:.2?}", start.elapsed()))
}

fn green_agreement() -> Outcome {
    let start = Instant::now();
    let t = build_truncation(2, 2).map_err(|e| e.to_string())?;
    for rel in [GreenRel::L, GreenRel::R, GreenRel::H, GreenRel::D] {
        let fast = fast_relation(&t, rel);
        let oracle = oracle_green(&t, rel);
        ensure(fast == oracle, || format!("{rel} differs"))?;
    }
    let h = oracle_green(&t, GreenRel::H);
    ensure(
        h.len() == t.len() && h.pairs.iter().all(|(i, j)| i == j),
        || "H is not the identity".into(),
    )?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("|T(2,2)| = {}, {:.2?}", t.len(), start.elapsed()))
}

fn d_equals_j() -> Outcome {
    let t = build_truncation(2, 2).map_err(|e| e.to_string())?;
    let cmp = compare_j_with_d(&t, default_j_bound(&t));
    ensure(cmp.violations.is_empty(), || {
        format!("{} J-pairs outside D", cmp.violations.len())
    })?;
    ensure(cmp.bound_insufficient.is_empty(), || {
        format!("{} bound-insufficient pairs", cmp.bound_insufficient.len())
    })?;
    Ok(format!("multiplier bound {}", default_j_bound(&t)))
}

fn census() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let pool = build_truncation(2, 2).map_err(|e| e.to_string())?;
    let mut counts = Vec::new();
    for (size, want) in [(1u32, 2usize), (2, 4)] {
        let tags = automorphism_census(size, 3).map_err(|e| e.to_string())?;
        ensure(tags.len() == want, || {
            format!("λ={size}: {} tags, want {want}", tags.len())
        })?;
        let elems: Vec<MElem> = pool
            .elements()
            .iter()
            .filter(|x| x.letters().iter().all(|&l| l < size))
            .cloned()
            .collect();
        for tag in &tags {
            for _ in 0..1000 {
                let x = elems.choose(&mut rng).unwrap();
                let y = elems.choose(&mut rng).unwrap();
                let lhs = apply_aut(tag, &m_mul(x, y)).unwrap();
                let rhs = m_mul(&apply_aut(tag, x).unwrap(), &apply_aut(tag, y).unwrap());
                ensure(lhs == rhs, || format!("{tag} fails on {x}, {y}"))?;
            }
        }
        counts.push(tags.len());
    }
    within(start, Duration::from_secs(30))?;
    Ok(format!("counts {counts:?}, {:.2?}", start.elapsed()))
}

fn factorization() -> Outcome {
    let t = build_truncation(2, 2).map_err(|e| e.to_string())?;
    for x in t.nonzero() {
        let seq = factor_over_generators(x).map_err(|e| e.to_string())?;
        ensure(m_product(&seq).as_ref() == Some(x), || {
            format!("replay of {x} fails")
        })?;
    }
    Ok(format!("{} elements", t.nonzero().len()))
}

fn axioms() -> Outcome {
    let small = build_truncation(2, 1).map_err(|e| e.to_string())?;
    let e = small.elements();
    for x in e {
        for y in e {
            for z in e {
                ensure(m_mul(&m_mul(x, y), z) == m_mul(x, &m_mul(y, z)), || {
                    format!("not associative on {x}, {y}, {z}")
                })?;
            }
        }
    }
    let big = build_truncation(2, 3).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let triples = 10_000;
    for _ in 0..triples {
        let [x, y, z] = [(); 3].map(|_| big.elements().choose(&mut rng).unwrap());
        ensure(m_mul(&m_mul(x, y), z) == m_mul(x, &m_mul(y, z)), || {
            format!("not associative on {x}, {y}, {z}")
        })?;
    }
    for x in e.iter().chain(big.elements()) {
        ensure(m_mul(&m_mul(x, &m_inv(x)), x) == *x, || {
            format!("xx⁻¹x ≠ x for {x}")
        })?;
    }
    Ok(format!(
        "{} exhaustive triples, {triples} sampled from {} elements",
        e.len().pow(3),
        big.len()
    ))
}

fn ideal_universe() -> (Vec<MElem>, Vec<MElem>) {
    let mut multipliers = vec![MElem::Zero];
    multipliers.extend(nonzero_elements_within(&[0, 1], 2));
    let mut members = vec![MElem::Zero];
    members.extend(elements_by_index_len(&[0, 1], 6));
    (multipliers, members)
}

fn compact_shrinking() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (multipliers, members) = ideal_universe();
    for _ in 0..20 {
        let k = rng.gen_range(1..=4);
        let a: Vec<Word> = (0..k).map(|_| random_word(&mut rng, 2, 1..=3)).collect();
        let b = shrink_compact(&CompactBasis::new(a.clone()).unwrap());
        certify_ideal_property(|x| b.contains(x), &multipliers, &members)
            .map_err(|v| format!("A={a:?}: {} · {} = {}", v.left, v.right, v.product))?;
    }
    Ok(format!(
        "20 sets, {} multipliers × {} members",
        multipliers.len(),
        members.len()
    ))
}

fn ideal_shrinking() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (multipliers, members) = ideal_universe();
    let specs = [
        IdealSpec::explicit([Word::letter(0)]).unwrap(),
        IdealSpec::pattern_union([1, 2]),
    ];
    let words = words_over(&[0, 1], 6);
    for spec in specs {
        let in_spec: Vec<&Word> = words.iter().filter(|w| in_ideal(&spec, w)).collect();
        for _ in 0..5 {
            let removed: Vec<Word> = in_spec
                .iter()
                .choose_multiple(&mut rng, 3)
                .into_iter()
                .map(|w| (*w).clone())
                .collect();
            let basis = IdealBasis::new(spec.clone(), removed).map_err(|e| e.to_string())?;
            let shrunk = shrink_ideal(&basis);
            certify_ideal_property(|x| shrunk.contains(x), &multipliers, &members)
                .map_err(|v| format!("{spec:?}: {} · {} = {}", v.left, v.right, v.product))?;
        }
    }
    Ok("explicit {0} and pattern {1,2}".into())
}

fn continuum_witnesses() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut pairs = 0;
    while pairs < 50 {
        let mut pick = || -> BTreeSet<u32> { (1..=20).filter(|_| rng.gen_bool(0.3)).collect() };
        let (a, b) = (pick(), pick());
        if a == b || a.is_subset(&b) {
            continue;
        }
        let w = distinct_topology_witness(&a, &b).ok_or("no witness")?;
        let (ja, jb) = (
            IdealSpec::pattern_union(a.clone()),
            IdealSpec::pattern_union(b.clone()),
        );
        ensure(in_ideal(&ja, &w) && !in_ideal(&jb, &w), || {
            format!("{w} does not separate {a:?} from {b:?}")
        })?;
        pairs += 1;
    }
    Ok("50 pairs".into())
}

fn product_law() -> Outcome {
    let t = build_truncation(2, 2).map_err(|e| e.to_string())?;
    let mut nonzero = 0;
    for x in t.nonzero() {
        for y in t.nonzero() {
            let z = m_mul(x, y);
            let w = product_dindex_law(x, y).map_err(|e| e.to_string())?;
            match (w, z.quad()) {
                (None, None) => {}
                (Some(w), Some(q)) => {
                    let r = q.index_word();
                    let p = d_index(x).unwrap().into_word();
                    let q = d_index(y).unwrap().into_word();
                    ensure(w.left_side(&p) == r && w.right_side(&q) == r, || {
                        format!("bad witness for {x}, {y}")
                    })?;
                    nonzero += 1;
                }
                _ => return Err(format!("witness and product disagree on {x}, {y}")),
            }
        }
    }
    Ok(format!("{nonzero} nonzero products"))
}

fn annihilates(x: &MElem, u: &MElem) -> bool {
    m_mul(x, u).is_zero() && m_mul(u, x).is_zero()
}

fn annihilator_indices() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let p = random_word(&mut rng, 21, 1..=5);
        let x = element_with_index(&mut rng, &p);
        let n = annihilator_index(&x).map_err(|e| e.to_string())?;
        for k in n + 1..=n + 30 {
            ensure(annihilates(&x, &diagonal_element(k)), || {
                format!("{x} fails to annihilate u_{k} though n = {n}")
            })?;
        }
        if n > 0 {
            ensure(!annihilates(&x, &diagonal_element(n)), || {
                format!("{x} annihilates U_{} so n = {n} is not minimal", n - 1)
            })?;
        }
    }
    Ok("100 elements".into())
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_mcalister"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!("{args:?} exited with {}", out.status)
    })?;
    Ok(out.stdout)
}

fn cli_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let alphabet = Alphabet::finite(3).unwrap();
    for i in 0..1000 {
        let x = if i == 0 {
            MElem::Zero
        } else {
            let p = random_word(&mut rng, 3, 1..=6);
            element_with_index(&mut rng, &p)
        };
        let text = render_elem(&x);
        let back = parse_elem(&text, alphabet).map_err(|e| format!("{text}: {e}"))?;
        ensure(back == x && render_elem(&back) == text, || {
            format!("{text} does not round-trip")
        })?;
    }
    for args in [
        &[
            "--json", "--seed", "3", "oracle", "check", "--lambda", "2", "--maxlen", "2",
        ][..],
        &["--json", "dclass", "0.1.0", "--lambda", "2"][..],
        &["--json", "aut", "census", "--lambda", "2", "--depth", "3"][..],
    ] {
        let first = run_cli(args)?;
        let second = run_cli(args)?;
        ensure(first == second, || {
            format!("{args:?} output differs between runs")
        })?;
    }
    Ok("1000 elements, 3 commands".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("1 D-class sizes", dclass_law),
        ("2 Green agreement", green_agreement),
        ("3 D equals J", d_equals_j),
        ("4 automorphism census", census),
        ("5 generator factorization", factorization),
        ("6 semigroup and inverse axioms", axioms),
        ("7 compact shrinking", compact_shrinking),
        ("8 ideal shrinking", ideal_shrinking),
        ("9 continuum witnesses", continuum_witnesses),
        ("10 product index law", product_law),
        ("11 annihilator indices", annihilator_indices),
        ("12 CLI round-trip and determinism", cli_round_trip),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                println!("FAIL criterion {name}: {why}");
                failed += 1;
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
