use std::collections::BTreeSet;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mcalister::autom::{
    apply_aut, automorphism_census, factor_over_generators, AutTag, LetterBijection,
};
use mcalister::mcalister::{
    canon, d_class, d_index, division_set, eggbox_neighbors, green, m_inv, m_mul, DIndex, GreenRel,
    MElem,
};
use mcalister::oracle::{build_truncation, check_all};
use mcalister::text::{parse_elem, parse_int_list, parse_word, parse_word_list};
use mcalister::topology::{
    annihilator_index, distinct_topology_witness, shrink_compact, CompactBasis,
};
use mcalister::{Alphabet, Error, Word};

/// Exact computations in McAlister semigroups.
///
/// Letters are nonnegative integers. Words are written `e` (empty) or `0.1.1`;
/// elements are `0` or `((a,b),(c,d))`.
#[derive(Debug, Parser)]
#[command(name = "mcalister", version)]
struct Cli {
    /// Alphabet size. Without it letters are unchecked.
    #[arg(long, global = true)]
    lambda: Option<u32>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized oracle suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Product of two elements.
    Mul { x: String, y: String },
    /// Inverse of an element.
    Inv { x: String },
    /// Canonical form `((u,uv),(wv^t,w))` or `((uv,u),(w,wv^t))`.
    Canon { x: String },
    /// Whether two nonzero elements are related.
    Green {
        #[arg(ignore_case = true)]
        rel: Rel,
        x: String,
        y: String,
    },
    /// The D-class index `ac^t`.
    Dindex { x: String },
    /// Every element of the D-class with the given index word.
    Dclass { p: String },
    /// Egg-box neighbors.
    Neighbors { x: String },
    /// Solutions of `ax = b` or `xa = b`.
    Divide { a: String, b: String },
    /// Factorization over the generators.
    Factor { x: String },
    #[command(subcommand)]
    Aut(AutCommand),
    #[command(subcommand)]
    Topo(TopoCommand),
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Subcommand)]
enum AutCommand {
    /// Applies `phi_f` or `psi_f`; PERM lists the images of 0,1,...
    Apply {
        kind: AutKind,
        perm: String,
        x: String,
    },
    /// Counts automorphisms by searching generator bijections.
    Census {
        #[arg(long, default_value_t = mcalister::autom::DEFAULT_PROBE_DEPTH)]
        depth: usize,
    },
}

#[derive(Debug, Subcommand)]
enum TopoCommand {
    /// Closes a finite set of excluded D-indices under subwords.
    ShrinkCompact { words: String },
    /// A marker word separating the pattern ideals of two exponent sets.
    Witness {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Least n with x·U_n = U_n·x = {0} over the countable alphabet.
    Annihilator { x: String },
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Lists a truncation.
    Build {
        #[arg(long)]
        maxlen: usize,
    },
    /// Runs every cross-check suite on a truncation.
    Check {
        #[arg(long)]
        maxlen: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
#[value(rename_all = "UPPER")]
enum Rel {
    L,
    R,
    H,
    D,
    J,
}

impl From<Rel> for GreenRel {
    fn from(r: Rel) -> Self {
        match r {
            Rel::L => GreenRel::L,
            Rel::R => GreenRel::R,
            Rel::H => GreenRel::H,
            Rel::D => GreenRel::D,
            Rel::J => GreenRel::J,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AutKind {
    Phi,
    Psi,
}

enum Failure {
    Domain(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

/// A result in both output formats.
struct Output {
    text: String,
    json: Value,
    success: bool,
}

impl Output {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Output {
            text: text.into(),
            json,
            success: true,
        }
    }
}

fn elem_list(xs: &[MElem]) -> Output {
    let text = xs
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("\n");
    Output::ok(text, json!(xs))
}

fn alphabet(cli: &Cli) -> Result<Alphabet, Failure> {
    match cli.lambda {
        Some(k) => Ok(Alphabet::finite(k)?),
        None => Ok(Alphabet::Countable),
    }
}

fn require_lambda(cli: &Cli, what: &str) -> Result<u32, Failure> {
    cli.lambda
        .ok_or_else(|| Failure::Usage(format!("{what} requires --lambda")))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let alpha = alphabet(cli)?;
    let elem = |s: &str| parse_elem(s, alpha);
    let out = match &cli.command {
        Command::Mul { x, y } => {
            let z = m_mul(&elem(x)?, &elem(y)?);
            Output::ok(z.to_string(), json!(z))
        }
        Command::Inv { x } => {
            let z = m_inv(&elem(x)?);
            Output::ok(z.to_string(), json!(z))
        }
        Command::Canon { x } => {
            let c = canon(&elem(x)?)?;
            let shape = format!("{:?}", c.shape);
            Output::ok(
                format!("{shape} u={} v={} w={}", c.u, c.v, c.w),
                json!({ "shape": shape, "u": c.u, "v": c.v, "w": c.w }),
            )
        }
        Command::Green { rel, x, y } => {
            let b = green(&elem(x)?, &elem(y)?, (*rel).into())?;
            Output::ok(b.to_string(), json!(b))
        }
        Command::Dindex { x } => {
            let p = d_index(&elem(x)?)?.into_word();
            Output::ok(p.to_string(), json!(p))
        }
        Command::Dclass { p } => elem_list(&d_class(&DIndex::new(parse_word(p, alpha)?)?)),
        Command::Neighbors { x } => elem_list(&eggbox_neighbors(&elem(x)?)?),
        Command::Divide { a, b } => elem_list(&division_set(&elem(a)?, &elem(b)?)?),
        Command::Factor { x } => elem_list(&factor_over_generators(&elem(x)?)?),
        Command::Aut(AutCommand::Apply { kind, perm, x }) => {
            let f = LetterBijection::new(parse_int_list(perm)?)?;
            if let Some(k) = cli.lambda {
                if k as usize != f.size() {
                    return Err(Error::SizeMismatch(k as usize, f.size()).into());
                }
            }
            let size = u32::try_from(f.size()).expect("small permutation");
            let x = parse_elem(x, Alphabet::finite(size)?)?;
            let tag = match kind {
                AutKind::Phi => AutTag::phi(f),
                AutKind::Psi => AutTag::psi(f),
            };
            let z = apply_aut(&tag, &x)?;
            Output::ok(z.to_string(), json!(z))
        }
        Command::Aut(AutCommand::Census { depth }) => {
            let k = require_lambda(cli, "aut census")?;
            let tags = automorphism_census(k, *depth)?;
            Output::ok(
                tags.len().to_string(),
                json!({ "count": tags.len(), "tags": tags }),
            )
        }
        Command::Topo(TopoCommand::ShrinkCompact { words }) => {
            let basis = shrink_compact(&CompactBasis::new(parse_word_list(words, alpha)?)?);
            let excluded: Vec<&Word> = basis.excluded().iter().collect();
            let text = excluded
                .iter()
                .map(|w| w.to_string())
                .collect::<Vec<_>>()
                .join(",");
            Output::ok(text, json!(excluded))
        }
        Command::Topo(TopoCommand::Witness { a, b }) => {
            let set = |s: &str| -> Result<BTreeSet<u32>, Failure> {
                Ok(parse_int_list(s)?.into_iter().collect())
            };
            let w = distinct_topology_witness(&set(a)?, &set(b)?);
            let text = w.as_ref().map_or("none".to_string(), Word::to_string);
            Output::ok(text, json!(w))
        }
        Command::Topo(TopoCommand::Annihilator { x }) => {
            let n = annihilator_index(&parse_elem(x, Alphabet::Countable)?)?;
            Output::ok(n.to_string(), json!(n))
        }
        Command::Oracle(OracleCommand::Build { maxlen }) => {
            let t = build_truncation(require_lambda(cli, "oracle build")?, *maxlen)?;
            Output::ok(t.len().to_string(), json!(t.elements()))
        }
        Command::Oracle(OracleCommand::Check { maxlen }) => {
            let t = build_truncation(require_lambda(cli, "oracle check")?, *maxlen)?;
            let report = check_all(&t, cli.seed);
            let text = report
                .suites
                .iter()
                .map(|(name, r)| match &r.counterexample {
                    None => format!("{name}: pass"),
                    Some(c) => format!("{name}: FAIL {c}"),
                })
                .collect::<Vec<_>>()
                .join("\n");
            Output {
                text,
                json: json!(report),
                success: report.all_pass(),
            }
        }
    };
    Ok(out)
}

fn report_error(json: bool, kind: &str, detail: &str) {
    if json {
        eprintln!("{}", json!({ "error": { "kind": kind, "detail": detail } }));
    } else {
        eprintln!("error: {detail}");
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            if std::env::args().any(|a| a == "--json") {
                let msg = e.to_string();
                let msg = msg.trim().trim_start_matches("error: ");
                report_error(true, "UsageError", msg);
            } else {
                let _ = e.print();
            }
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", out.json);
            } else if !out.text.is_empty() {
                println!("{}", out.text);
            }
            if out.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Domain(e)) => {
            report_error(cli.json, e.kind(), &e.to_string());
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            report_error(cli.json, "UsageError", &msg);
            ExitCode::from(2)
        }
    }
}
