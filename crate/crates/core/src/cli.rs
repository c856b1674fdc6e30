//! Command-line front end: preseed spec files, mutation sequence parsing and
//! subcommand dispatch.
//!
//! Spec files are TOML:
//!
//! ```toml
//! generators = ["e"]
//!
//! [[direction]]
//! binomial = "e"
//! automorphism = "shift e 1"
//! ```
//!
//! Automorphisms are `shift <gen> <rational>` or `scale <gen>,<gen> <unit>`,
//! joined by `;` for composites applied left to right.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::bridge::{correspondence_check, step_back};
use crate::catword::{
    cat_mutate, cat_mutate_seq, parse_word, verify_weyl_closed_form, Alternation, CatError,
    Convention, SkewLaurentObject,
};
use crate::ground::{parse_coeff, AutKind, Gens, GroundError};
use crate::oracle::{check_gwa_relations, check_weyl_line, eval_triple, OracleError};
use crate::preseed::{
    cluster_set, exchange_graph, reduce_sequence, ClusterTriple, MutationSeq, Preseed,
    PreseedError, Side,
};
use crate::zigzag::{end_initial, zigzag};

/// Environment variable holding the seed of randomized suites.
pub const SEED_ENV: &str = "WEYLCLUSTER_SEED";
pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// Seed from [`SEED_ENV`], or [`DEFAULT_SEED`] when unset or unparsable.
pub fn property_seed() -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {msg}")]
    Spec { path: String, msg: String },
    #[error("parse error in {what} at column {col}: {msg}")]
    Parse { what: String, col: usize, msg: String },
    #[error("at column {col}: {source}")]
    Step { col: usize, source: PreseedError },
    #[error(transparent)]
    Preseed(#[from] PreseedError),
    #[error(transparent)]
    Cat(#[from] CatError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("unknown suite '{0}' (expected gwa, weylline, closedform, correspondence, involution)")]
    UnknownSuite(String),
    #[error("format {0} is not available for {1}")]
    Format(String, String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConventionName {
    Literal,
    WeylEval,
}

impl From<ConventionName> for Convention {
    fn from(c: ConventionName) -> Self {
        match c {
            ConventionName::Literal => Convention::Literal,
            ConventionName::WeylEval => Convention::WeylEval,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlternationName {
    /// `ε` first on both sides.
    Uniform,
    /// `ε` first on the right, `ξ` first on the left.
    Split,
}

impl From<AlternationName> for Alternation {
    fn from(a: AlternationName) -> Self {
        match a {
            AlternationName::Uniform => Alternation::UNIFORM,
            AlternationName::Split => Alternation::SPLIT,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dot,
    JsonLines,
    Table,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DirectionSpec {
    pub binomial: String,
    pub automorphism: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PreseedSpecFile {
    pub rank: Option<usize>,
    pub generators: Vec<String>,
    pub direction: Vec<DirectionSpec>,
    pub convention: Option<ConventionName>,
}

fn ground_msg(e: GroundError) -> (usize, String) {
    match e {
        GroundError::Parse { pos, msg } => (pos + 1, msg),
        other => (1, other.to_string()),
    }
}

fn parse_rational(s: &str) -> Option<(i64, i64)> {
    let r: BigRational = match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            BigRational::new(n.trim().parse().ok()?, d)
        }
        None => BigRational::from_integer(s.trim().parse().ok()?),
    };
    Some((r.numer().to_i64()?, r.denom().to_i64()?))
}

/// Parses `shift e 1`, `scale u,v q` and `;`-joined composites.
pub fn parse_automorphism(s: &str, gens: &Gens) -> Result<AutKind, String> {
    let gen = |name: &str| {
        gens.index(name)
            .ok_or_else(|| format!("unknown generator '{name}'"))
    };
    let mut parts = Vec::new();
    for part in s.split(';') {
        let toks: Vec<&str> = part.split_whitespace().collect();
        let kind = match toks.as_slice() {
            ["shift", g, by] => AutKind::Shift {
                gen: gen(g)?,
                offset: parse_rational(by).ok_or_else(|| format!("bad shift amount '{by}'"))?,
            },
            ["scale", targets, unit] => AutKind::Scale {
                targets: targets
                    .split(',')
                    .map(|t| gen(t.trim()))
                    .collect::<Result<_, _>>()?,
                unit: gen(unit)?,
            },
            _ => return Err(format!("cannot read automorphism '{}'", part.trim())),
        };
        parts.push(kind);
    }
    Ok(if parts.len() == 1 {
        parts.pop().expect("one part")
    } else {
        AutKind::Composite(parts)
    })
}

/// A parsed spec file.
pub struct LoadedSpec {
    pub preseed: Preseed,
    pub convention: Option<ConventionName>,
}

pub fn parse_spec(text: &str, path: &str) -> Result<LoadedSpec, CliError> {
    let err = |msg: String| CliError::Spec {
        path: path.to_string(),
        msg,
    };
    let file: PreseedSpecFile = toml::from_str(text).map_err(|e| err(e.to_string().trim_end().to_string()))?;
    if let Some(r) = file.rank {
        if r != file.direction.len() {
            return Err(err(format!(
                "rank {r} but {} direction tables",
                file.direction.len()
            )));
        }
    }
    let gens = Gens::from_names(&file.generators);
    let mut binomials = Vec::new();
    let mut auts = Vec::new();
    for (i, d) in file.direction.iter().enumerate() {
        let f = parse_coeff(&d.binomial, &gens).map_err(|e| {
            let (col, msg) = ground_msg(e);
            err(format!("direction {}: binomial column {col}: {msg}", i + 1))
        })?;
        if !f.den().is_one() {
            return Err(err(format!("direction {}: binomial must be a polynomial", i + 1)));
        }
        binomials.push(f.num().clone());
        auts.push(
            parse_automorphism(&d.automorphism, &gens)
                .map_err(|m| err(format!("direction {}: {m}", i + 1)))?,
        );
    }
    let preseed = Preseed::new(gens, binomials, auts).map_err(|e| err(e.to_string()))?;
    Ok(LoadedSpec {
        preseed,
        convention: file.convention,
    })
}

pub fn load_spec(path: &Path) -> Result<LoadedSpec, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Spec {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    parse_spec(&text, &path.display().to_string())
}

/// Parses `1R 2L 1R` (commas also separate); `[]` is the empty sequence.
pub fn parse_seq(s: &str, rank: usize) -> Result<MutationSeq, CliError> {
    let mut steps = Vec::new();
    let mut col = 1;
    for raw in s.split_inclusive([' ', ',']) {
        let tok = raw.trim_end_matches([' ', ',']);
        if !tok.is_empty() && tok != "[]" {
            let bad = |msg: &str| CliError::Parse {
                what: "mutation sequence".into(),
                col,
                msg: msg.into(),
            };
            let (num, side) = tok.split_at(tok.len() - 1);
            let side = match side {
                "R" | "r" => Side::R,
                "L" | "l" => Side::L,
                _ => return Err(bad("expected step like 1R or 2L")),
            };
            let k: usize = num.parse().map_err(|_| bad("expected direction number"))?;
            if k == 0 || k > rank {
                return Err(CliError::Step {
                    col,
                    source: PreseedError::IndexOutOfRange(k, rank),
                });
            }
            steps.push((k, side));
        }
        col += raw.len();
    }
    Ok(MutationSeq::new(steps))
}

#[derive(Parser, Debug)]
#[command(name = "weylcluster", version, about = "Mutation calculus for Weyl preseeds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Apply a mutation sequence such as "1R 1R" to the initial preseed.
    Mutate {
        #[arg(long)]
        spec: PathBuf,
        /// Steps like `1R 2L`; may be split over several arguments.
        seq: Vec<String>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Exchange graph to the given depth.
    Graph {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
    /// Cluster variables within the given depth with their evaluations.
    Orbit {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Zigzag presentation of a word such as "xi^-1 * eta".
    Zigzag {
        word: String,
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        dir: usize,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        parity: i64,
        #[arg(long, default_value_t = 4)]
        window: i64,
        #[arg(long, value_enum, default_value = "split")]
        alternation: AlternationName,
        /// Start the right side with the other letter (variant-1 orbit).
        #[arg(long)]
        variant1: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Cluster variable one mutation behind a word at net count `--count`.
    Stepback {
        word: String,
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 1)]
        dir: usize,
        #[arg(long, allow_hyphen_values = true)]
        count: i64,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Table matching mutated initial objects with cluster variables.
    Correspondence {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Ring relations and the Weyl-line commutator signs in one report.
    OracleCheck {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 5)]
        bound: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Run a check suite: gwa, weylline, closedform, correspondence, involution.
    Verify {
        suite: String,
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 5)]
        bound: usize,
        #[arg(long, value_enum)]
        convention: Option<ConventionName>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

/// Stable, machine-readable result of a subcommand.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub subcommand: String,
    pub inputs: BTreeMap<String, String>,
    pub status: String,
    pub results: Value,
    /// Excluded from the text forms so output is reproducible.
    pub elapsed_ms: u128,
}

pub struct Output {
    pub text: String,
    pub exit_code: i32,
}

/// A subcommand result in every output form it supports.
pub struct Rendered {
    pub report: RunReport,
    pub table: String,
    pub dot: Option<String>,
    pub json_lines: Option<String>,
}

fn inputs(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn report(sub: &str, inp: BTreeMap<String, String>, status: &str, results: Value) -> RunReport {
    RunReport {
        subcommand: sub.into(),
        inputs: inp,
        status: status.into(),
        results,
        elapsed_ms: 0,
    }
}

pub fn run(cli: Cli) -> Result<Output, CliError> {
    let start = Instant::now();
    let (format, r) = match cli.command {
        Command::Mutate { spec, seq, format } => (format, cmd_mutate(&spec, &seq.join(" "))?),
        Command::Graph { spec, depth, format } => (format, cmd_graph(&spec, depth)?),
        Command::Orbit { spec, depth, format } => (format, cmd_orbit(&spec, depth)?),
        Command::Zigzag {
            word,
            spec,
            dir,
            parity,
            window,
            alternation,
            variant1,
            format,
        } => {
            let mut alt: Alternation = alternation.into();
            if variant1 {
                alt = alt.variant();
            }
            (format, cmd_zigzag(spec.as_deref(), &word, dir, parity, window, alt)?)
        }
        Command::Stepback {
            word,
            spec,
            dir,
            count,
            format,
        } => (format, cmd_stepback(&spec, &word, dir, count)?),
        Command::Correspondence { spec, depth, format } => {
            (format, cmd_correspondence(&spec, depth)?)
        }
        Command::OracleCheck { spec, bound, format } => (format, cmd_oracle_check(&spec, bound)?),
        Command::Verify {
            suite,
            spec,
            bound,
            convention,
            format,
        } => (format, cmd_verify(&spec, &suite, bound, convention)?),
    };
    let mut rep = r.report;
    rep.elapsed_ms = start.elapsed().as_millis();
    let exit_code = if rep.status == "fail" { 1 } else { 0 };
    let text = match format {
        Format::Table => r.table,
        Format::Dot => r
            .dot
            .ok_or_else(|| CliError::Format("dot".into(), rep.subcommand.clone()))?,
        Format::JsonLines => match r.json_lines {
            Some(s) => s,
            None => serde_json::to_string(&rep).expect("report serializes") + "\n",
        },
    };
    Ok(Output { text, exit_code })
}

fn spec_str(p: &Path) -> String {
    p.display().to_string()
}

pub fn cmd_mutate(spec: &Path, seq: &str) -> Result<Rendered, CliError> {
    let p = load_spec(spec)?.preseed;
    let s = parse_seq(seq, p.rank())?;
    let q = p.apply_seq(&s)?;
    let red = reduce_sequence(&s);
    let flags = q.orientations();
    let cluster: Vec<String> = q.cluster().iter().map(|t| t.render(p.rank() > 1)).collect();
    let table = format!(
        "cluster: {}\norientations: {}\nreduced: {}\n",
        cluster.join(", "),
        flags.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" "),
        red.render()
    );
    Ok(Rendered {
        report: report(
            "mutate",
            inputs(&[("spec", spec_str(spec)), ("seq", s.render())]),
            "ok",
            json!({ "cluster": cluster, "orientations": flags, "reduced": red.render() }),
        ),
        table,
        dot: None,
        json_lines: None,
    })
}

pub fn cmd_graph(spec: &Path, depth: usize) -> Result<Rendered, CliError> {
    let p = load_spec(spec)?.preseed;
    let g = exchange_graph(&p, depth);
    let mut table = String::new();
    for (i, n) in g.nodes.iter().enumerate() {
        table.push_str(&format!("{i}\tdepth {}\t{}\n", g.node_depth[i], n.render_cluster()));
    }
    for e in &g.edges {
        table.push_str(&format!("{} -> {}\tdir {}\n", e.from, e.to, e.dir));
    }
    Ok(Rendered {
        report: report(
            "graph",
            inputs(&[("spec", spec_str(spec)), ("depth", depth.to_string())]),
            "ok",
            json!({ "nodes": g.nodes.len(), "edges": g.edges.len() }),
        ),
        table,
        dot: Some(g.to_dot()),
        json_lines: Some(g.to_json_lines()),
    })
}

pub fn cmd_orbit(spec: &Path, depth: usize) -> Result<Rendered, CliError> {
    let p = load_spec(spec)?.preseed;
    let mut rows = Vec::new();
    let mut table = String::new();
    for t in cluster_set(&p, depth) {
        let v = eval_triple(&t, &p)?.render(p.gens());
        table.push_str(&format!("{}\t{}\t{}\n", t.position(), t.render(p.rank() > 1), v));
        rows.push(json!({ "dir": t.dir, "position": t.position(), "variable": t.render(p.rank() > 1), "value": v }));
    }
    Ok(Rendered {
        report: report(
            "orbit",
            inputs(&[("spec", spec_str(spec)), ("depth", depth.to_string())]),
            "ok",
            Value::Array(rows),
        ),
        table,
        dot: None,
        json_lines: None,
    })
}

fn word_error(e: CatError) -> CliError {
    match e {
        CatError::Parse { pos, msg } => CliError::Parse {
            what: "word".into(),
            col: pos + 1,
            msg,
        },
        other => other.into(),
    }
}

pub fn cmd_zigzag(
    spec: Option<&Path>,
    word: &str,
    dir: usize,
    parity: i64,
    window: i64,
    alt: Alternation,
) -> Result<Rendered, CliError> {
    let rank = match spec {
        Some(s) => load_spec(s)?.preseed.rank(),
        None => dir,
    };
    let w = parse_word(word, dir, rank).map_err(word_error)?;
    let z = zigzag(&w, parity, window.max(1), alt);
    let right = end_initial(&w, parity, Side::R, alt).map(|(w, t)| format!("{w}@{t}"));
    let left = end_initial(&w, parity, Side::L, alt).map(|(w, t)| format!("{w}@{t}"));
    let mut table = String::new();
    for n in &z.nodes {
        table.push_str(&format!(
            "{:>3}\t{:>3}\t{}{}\n",
            n.position,
            n.parity,
            n.word,
            if n.initial { "\tinitial" } else { "" }
        ));
    }
    let none = || "none".to_string();
    table.push_str(&format!(
        "length {} height {}\nleft end {}\nright end {}\n",
        z.length,
        z.height,
        left.clone().unwrap_or_else(none),
        right.clone().unwrap_or_else(none)
    ));
    let nodes: Vec<Value> = z
        .nodes
        .iter()
        .map(|n| json!({ "position": n.position, "parity": n.parity, "word": n.word.render(), "initial": n.initial }))
        .collect();
    Ok(Rendered {
        report: report(
            "zigzag",
            inputs(&[
                ("word", w.render()),
                ("dir", dir.to_string()),
                ("parity", parity.to_string()),
                ("window", window.to_string()),
            ]),
            "ok",
            json!({ "nodes": nodes, "length": z.length, "height": z.height, "left_end": left, "right_end": right }),
        ),
        table,
        dot: Some(z.to_dot()),
        json_lines: None,
    })
}

pub fn cmd_stepback(spec: &Path, word: &str, dir: usize, count: i64) -> Result<Rendered, CliError> {
    let p = load_spec(spec)?.preseed;
    let w = parse_word(word, dir, p.rank()).map_err(word_error)?;
    let expected_e = if count.rem_euclid(2) == 0 { 1 } else { -1 };
    let r = step_back(dir, count);
    let v = r.eval(&p)?.render(p.gens());
    let consistent = w.e == expected_e;
    let table = format!(
        "variable {}\nvalue {}\norientation {}\n",
        r.render(),
        v,
        if consistent { "consistent" } else { "mismatch" }
    );
    Ok(Rendered {
        report: report(
            "stepback",
            inputs(&[
                ("word", w.render()),
                ("dir", dir.to_string()),
                ("count", count.to_string()),
            ]),
            if consistent { "ok" } else { "fail" },
            json!({ "variable": r.render(), "value": v, "orientation_consistent": consistent }),
        ),
        table,
        dot: None,
        json_lines: None,
    })
}

pub fn cmd_correspondence(spec: &Path, depth: usize) -> Result<Rendered, CliError> {
    let p = load_spec(spec)?.preseed;
    let rep = correspondence_check(&p, depth)?;
    let mut table = String::new();
    for r in &rep.rows {
        table.push_str(&format!("{}\t{:>3}\t{}\t{}\n", r.dir, r.m, r.variable, r.value));
    }
    table.push_str(&format!(
        "targets {} injective {} surjective {}\n",
        rep.targets, rep.injective, rep.surjective
    ));
    let status = if rep.pass() { "pass" } else { "fail" };
    Ok(Rendered {
        report: report(
            "correspondence",
            inputs(&[("spec", spec_str(spec)), ("depth", depth.to_string())]),
            status,
            serde_json::to_value(&rep).expect("report serializes"),
        ),
        table,
        dot: None,
        json_lines: None,
    })
}

/// Randomized involution and commutation checks; returns failure descriptions.
pub fn involution_suite(p: &Preseed, cases: usize, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = p.rank();
    let mut failures = Vec::new();
    for case in 0..cases {
        let k = rng.gen_range(1..=n);
        let t = ClusterTriple::at_position(k, rng.gen_range(-20..=20));
        if t.mutate_right().mutate_left() != t || t.mutate_left().mutate_right() != t {
            failures.push(format!("case {case}: triple {} not restored", t.render(true)));
        }
        let len = rng.gen_range(0..6);
        let steps: Vec<(usize, Side)> = (0..len)
            .map(|_| (rng.gen_range(1..=n), if rng.gen() { Side::R } else { Side::L }))
            .collect();
        let seq = MutationSeq::new(steps);
        let q = p.apply_seq(&seq).expect("directions in range");
        let o = cat_mutate_seq(&SkewLaurentObject::initial(n, Alternation::UNIFORM), &seq)
            .expect("directions in range");
        for side in [Side::R, Side::L] {
            let back = q.mutate(k, side).and_then(|x| x.mutate(k, side.other()));
            if back.as_ref().map(|b| b.key()) != Ok(q.key()) {
                failures.push(format!("case {case}: preseed not restored at {k}{side}"));
            }
            let cb = cat_mutate(&o, k, side).and_then(|x| cat_mutate(&x, k, side.other()));
            if cb.as_ref() != Ok(&o) {
                failures.push(format!("case {case}: object not restored at {k}{side}"));
            }
        }
        if n > 1 {
            let j = rng.gen_range(1..=n);
            let (si, sj) = (
                if rng.gen() { Side::R } else { Side::L },
                if rng.gen() { Side::R } else { Side::L },
            );
            let a = q.mutate(k, si).and_then(|x| x.mutate(j, sj)).map(|x| x.key());
            let b = q.mutate(j, sj).and_then(|x| x.mutate(k, si)).map(|x| x.key());
            let ca = cat_mutate(&o, k, si).and_then(|x| cat_mutate(&x, j, sj));
            let cb = cat_mutate(&o, j, sj).and_then(|x| cat_mutate(&x, k, si));
            if k != j && (a != b || ca != cb) {
                failures.push(format!("case {case}: {k}{si} and {j}{sj} do not commute"));
            }
        }
    }
    failures
}

/// Outcome of one check suite.
pub struct SuiteResult {
    pub status: &'static str,
    pub results: Value,
    pub table: String,
    /// Extra inputs worth echoing (convention, seed).
    pub echo: Vec<(&'static str, String)>,
}

/// Runs `suite` on `p` at `bound`.
pub fn run_suite(
    p: &Preseed,
    suite: &str,
    bound: usize,
    conv: ConventionName,
) -> Result<SuiteResult, CliError> {
    let mut echo = Vec::new();
    let (status, results, table) = match suite {
        "gwa" => {
            let r = check_gwa_relations(p)?;
            let mut table = String::new();
            for c in &r.checks {
                table.push_str(&format!(
                    "{}\t{}\n",
                    if c.pass { "ok  " } else { "FAIL" },
                    c.name
                ));
            }
            let st = if r.pass() { "pass" } else { "fail" };
            (st, serde_json::to_value(&r).expect("serializes"), table)
        }
        "weylline" => {
            let r = check_weyl_line(p, bound as i64)?;
            let mut table = String::new();
            for e in &r.entries {
                table.push_str(&format!(
                    "{:>3}\t{}\n",
                    e.m,
                    e.commutator.clone().unwrap_or_else(|| "non-constant".into())
                ));
            }
            table.push_str(&format!("signs {}\n", r.pattern()));
            let st = if r.pass { "pass" } else { "fail" };
            (st, serde_json::to_value(&r).expect("serializes"), table)
        }
        "closedform" => {
            echo.push(("convention", format!("{conv:?}")));
            let r = verify_weyl_closed_form(p, bound as i64, conv.into());
            let mut table = String::new();
            for row in &r.rows {
                table.push_str(&format!(
                    "{:>3}\t{}\t{}\t{}\n",
                    row.parity,
                    if row.agree { "agree" } else { "differ" },
                    row.word,
                    row.closed_form
                ));
            }
            table.push_str(&format!("mismatches {}\n", r.mismatches()));
            (r.status(), serde_json::to_value(&r).expect("serializes"), table)
        }
        "correspondence" => {
            let r = correspondence_check(p, bound)?;
            let table = format!(
                "rows {} targets {} injective {} surjective {}\n",
                r.rows.len(),
                r.targets,
                r.injective,
                r.surjective
            );
            let st = if r.pass() { "pass" } else { "fail" };
            (st, serde_json::to_value(&r).expect("serializes"), table)
        }
        "involution" => {
            let seed = property_seed();
            echo.push(("seed", seed.to_string()));
            let f = involution_suite(p, bound * 200, seed);
            let table = format!("cases {} failures {}\n{}", bound * 200, f.len(), f.join("\n"));
            let st = if f.is_empty() { "pass" } else { "fail" };
            (st, json!({ "failures": f }), table)
        }
        other => return Err(CliError::UnknownSuite(other.to_string())),
    };
    Ok(SuiteResult {
        status,
        results,
        table: format!("{table}status {status}\n"),
        echo,
    })
}

pub fn cmd_oracle_check(spec: &Path, bound: usize) -> Result<Rendered, CliError> {
    let p = load_spec(spec)?.preseed;
    let gwa = run_suite(&p, "gwa", bound, ConventionName::Literal)?;
    let line = run_suite(&p, "weylline", bound, ConventionName::Literal)?;
    let status = if gwa.status == "pass" && line.status == "pass" {
        "pass"
    } else {
        "fail"
    };
    Ok(Rendered {
        report: report(
            "oracle-check",
            inputs(&[("spec", spec_str(spec)), ("bound", bound.to_string())]),
            status,
            json!({ "gwa": gwa.results, "weylline": line.results }),
        ),
        table: format!("{}{}status {status}\n", gwa.table, line.table),
        dot: None,
        json_lines: None,
    })
}

pub fn cmd_verify(
    spec: &Path,
    suite: &str,
    bound: usize,
    convention: Option<ConventionName>,
) -> Result<Rendered, CliError> {
    let loaded = load_spec(spec)?;
    let conv = convention
        .or(loaded.convention)
        .unwrap_or(ConventionName::Literal);
    let r = run_suite(&loaded.preseed, suite, bound, conv)?;
    let mut inp = vec![
        ("spec", spec_str(spec)),
        ("suite", suite.to_string()),
        ("bound", bound.to_string()),
    ];
    inp.extend(r.echo);
    Ok(Rendered {
        report: report("verify", inputs(&inp), r.status, r.results),
        table: r.table,
        dot: None,
        json_lines: None,
    })
}
