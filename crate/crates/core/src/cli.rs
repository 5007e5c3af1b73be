//! The `fgroup` command line: argument parsing, dispatch and JSON reports.
//!
//! Every report is a JSON object carrying `version`; object keys are sorted,
//! so identical invocations produce byte-identical output.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::bounds::{BoundContext, BoundsError, ConstName, Magnitude};
use crate::conjugacy::{
    self, equivalence_probe, uniform_conjugator, word_criterion, ConjugacyError, TuplePair,
};
use crate::geometry::{self, BallGraph, GeometryError, Presentation};
use crate::suites;
use crate::whitehead::{self, BlockSystem, MixedMode, MixedOutcome, WhiteheadError};
use crate::word::{parse_tuple, Word, WordError};

pub const VERSION: &str = concat!("uniconj ", env!("CARGO_PKG_VERSION"));

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Decided = 0,
    Negative = 1,
    Guard = 2,
    Input = 3,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Guard(String),
}

impl CliError {
    fn status(&self) -> Status {
        match self {
            CliError::Input(_) => Status::Input,
            CliError::Guard(_) => Status::Guard,
        }
    }
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

impl From<WordError> for CliError {
    fn from(e: WordError) -> Self {
        input(e)
    }
}

impl From<ConjugacyError> for CliError {
    fn from(e: ConjugacyError) -> Self {
        input(e)
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        input(e)
    }
}

impl From<WhiteheadError> for CliError {
    fn from(e: WhiteheadError) -> Self {
        match e {
            WhiteheadError::RankGuard(_)
            | WhiteheadError::NodeCap(_)
            | WhiteheadError::Infeasible { .. } => CliError::Guard(e.to_string()),
            other => input(other),
        }
    }
}

impl From<GeometryError> for CliError {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::MemoryGuard { .. } => CliError::Guard(e.to_string()),
            other => input(other),
        }
    }
}

type Report = Result<(Status, Value), CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "fgroup",
    version,
    about = "Uniform conjugacy, Whitehead problems and geometry checks in free groups"
)]
pub struct Cli {
    /// Print a two-column table instead of JSON.
    #[arg(long, global = true)]
    pub table: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Uniform conjugacy of tuples.
    Uniconj {
        #[command(subcommand)]
        op: UniconjOp,
    },
    /// Whitehead orbit problems.
    Whitehead {
        #[command(subcommand)]
        op: WhiteheadOp,
    },
    /// Evaluate constants with their formula trees.
    Bounds {
        #[command(subcommand)]
        op: BoundsOp,
    },
    /// Norms, axes, lemma checkers and Cayley balls.
    Geom {
        #[command(subcommand)]
        op: GeomOp,
    },
    /// Seeded randomized self-check suites.
    Verify(VerifyArgs),
    /// Process a JSON-lines file of tuple pairs or block systems.
    Corpus(CorpusArgs),
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long, default_value_t = 2)]
    pub rank: usize,
    /// Comma-separated words, e.g. `a,b`.
    #[arg(long)]
    pub left: String,
    #[arg(long)]
    pub right: String,
}

#[derive(Debug, Subcommand)]
pub enum UniconjOp {
    /// Find a uniform conjugator or report that none exists.
    Decide(PairArgs),
    /// Run the word criterion up to length L.
    Criterion {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long = "L", default_value_t = 3)]
        l: usize,
    },
    /// Compare the criterion with the exact solver.
    Probe {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long = "L", default_value_t = 4)]
        l: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Empirical,
    Paper,
}

#[derive(Debug, Args)]
pub struct BlockArgs {
    /// JSON file `{"rank": 2, "left": [["a","b"]], "right": [["ab","b"]]}`.
    #[arg(long = "blocks-json", conflicts_with_all = ["left", "right"])]
    pub blocks_json: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    pub rank: usize,
    /// Blocks separated by `;`, words by `,`.
    #[arg(long)]
    pub left: Option<String>,
    #[arg(long)]
    pub right: Option<String>,
    #[arg(long, value_enum, default_value_t = ModeArg::Empirical)]
    pub mode: ModeArg,
    #[arg(long = "C", default_value_t = 3)]
    pub c: usize,
}

#[derive(Debug, Subcommand)]
pub enum WhiteheadOp {
    /// Some automorphism sends each left word to a conjugate of the right one.
    Classical(BlockArgs),
    /// One conjugator for the whole tuple (a single block).
    Exact(BlockArgs),
    /// One conjugator per block.
    Mixed(BlockArgs),
    /// Greedy minimization of a tuple.
    Minimize {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long)]
        tuple: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum BoundsOp {
    /// Evaluate one constant.
    Show(ShowArgs),
    /// List constant names accepted by `show`.
    List,
}

#[derive(Debug, Args)]
pub struct ShowArgs {
    #[arg(long)]
    pub name: String,
    /// Length arguments, in order; repeatable.
    #[arg(long = "len")]
    pub lens: Vec<u64>,
    /// Hyperbolicity constant as an integer or fraction.
    #[arg(long, default_value = "0")]
    pub delta: String,
    #[arg(long = "sharp-s", default_value_t = 2)]
    pub sharp_s: u64,
    /// Tuple size for `C_main`.
    #[arg(long, default_value_t = 1)]
    pub n: u64,
    /// Use the general closed forms even at delta 0.
    #[arg(long)]
    pub assembled: bool,
    /// `name=value`; repeatable.
    #[arg(long = "override")]
    pub overrides: Vec<String>,
}

#[derive(Debug, Args)]
pub struct SpaceArgs {
    /// Presentation file: rank on the first line, one relator per line.
    #[arg(long, conflicts_with = "surface")]
    pub presentation: Option<PathBuf>,
    /// Closed orientable surface group of this genus.
    #[arg(long)]
    pub surface: Option<usize>,
    /// Rank of the free group used when no presentation is given.
    #[arg(long, default_value_t = 2)]
    pub rank: usize,
}

impl SpaceArgs {
    fn load(&self) -> Result<Presentation, CliError> {
        if let Some(path) = &self.presentation {
            let text =
                fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
            return Presentation::parse(&text).map_err(input);
        }
        if let Some(g) = self.surface {
            if g == 0 {
                return Err(input("genus must be at least 1"));
            }
            return Ok(Presentation::surface(g));
        }
        if self.rank == 0 {
            return Err(input("rank must be at least 1"));
        }
        Ok(Presentation::free(self.rank))
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Lemma {
    CProduct,
    Triple,
    Chain,
    Rectangle,
    PowerDefect,
    PowerDecompose,
    ShiftDecompose,
    Twoeq,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub lemma: Lemma,
    #[command(flatten)]
    pub space: SpaceArgs,
    /// Ball radius for non-free presentations.
    #[arg(long, default_value_t = 6)]
    pub radius: usize,
    #[arg(long)]
    pub u: Option<String>,
    #[arg(long)]
    pub v: Option<String>,
    #[arg(long)]
    pub w: Option<String>,
    #[arg(long)]
    pub z: Option<String>,
    #[arg(long)]
    pub b: Option<String>,
    #[arg(long)]
    pub g: Option<String>,
    #[arg(long)]
    pub h: Option<String>,
    /// Comma-separated points for `chain` and `rectangle`.
    #[arg(long)]
    pub points: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[arg(long, default_value_t = 0.0)]
    pub delta: f64,
    #[arg(long, default_value_t = 1)]
    pub s: u64,
    #[arg(long, default_value_t = 1)]
    pub t: u64,
    #[arg(long, default_value_t = 1)]
    pub k: u64,
    #[arg(long = "max-k", default_value_t = 20)]
    pub max_k: u64,
}

#[derive(Debug, Subcommand)]
pub enum GeomOp {
    /// Build a Cayley ball and report its layers.
    Ball {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, default_value_t = 3)]
        radius: usize,
    },
    /// Thin-triangle estimate inside a ball.
    DeltaEst {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, default_value_t = 3)]
        radius: usize,
    },
    /// Stable norm and cyclic core of a free-group element.
    Norm {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long)]
        g: String,
    },
    /// Distance between the axes of two elements, with the upper bound.
    AxisDist {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        /// Defaults to `|g| + |h|`.
        #[arg(long)]
        radius: Option<usize>,
    },
    /// Evaluate one inequality checker or decomposition.
    Check(CheckArgs),
    /// Dehn normal form of a word.
    Dehn {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long)]
        word: String,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// One of geometry, conjugacy, whitehead, bounds, all.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 1000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Criterion length reported alongside each tuple pair.
    #[arg(long = "L", default_value_t = 3)]
    pub l: usize,
    #[arg(long = "C", default_value_t = 3)]
    pub c: usize,
}

/// Parse `std::env::args`, run, print, and return the exit status.
pub fn run_from_env() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                Status::Input as i32
            } else {
                0
            };
            let _ = e.print();
            return code;
        }
    };
    let (status, text) = execute(&cli);
    println!("{text}");
    status as i32
}

/// Run a parsed command; returns the status and the rendered output.
pub fn execute(cli: &Cli) -> (Status, String) {
    let (status, mut value) = match dispatch(&cli.command) {
        Ok(r) => r,
        Err(e) => (e.status(), json!({ "error": e.to_string() })),
    };
    if let Value::Object(map) = &mut value {
        map.insert("version".into(), json!(VERSION));
    }
    // corpora render as JSON lines: one result per input line, then the summary
    if let (Command::Corpus(_), Some(Value::Array(lines))) = (
        &cli.command,
        value.as_object_mut().and_then(|m| m.remove("lines")),
    ) {
        let mut out: Vec<String> = lines
            .iter()
            .map(|l| if cli.table { table(l) } else { l.to_string() })
            .collect();
        out.push(if cli.table {
            table(&value)
        } else {
            value.to_string()
        });
        return (status, out.join("\n"));
    }
    let text = if cli.table {
        table(&value)
    } else {
        value.to_string()
    };
    (status, text)
}

/// Convenience for tests and embedding: parse `args` (without the program name) and run.
pub fn run_args<I, S>(args: I) -> (Status, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv =
        std::iter::once(std::ffi::OsString::from("fgroup")).chain(args.into_iter().map(Into::into));
    match Cli::try_parse_from(argv) {
        Ok(cli) => execute(&cli),
        Err(e) => (Status::Input, e.to_string()),
    }
}

fn table(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            map.iter()
                .map(|(k, v)| {
                    let cell = match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    format!("{k:width$}  {cell}")
                })
                .collect::<Vec<_>>()
                .join("\n")
        }
        other => other.to_string(),
    }
}

fn dispatch(cmd: &Command) -> Report {
    match cmd {
        Command::Uniconj { op } => uniconj(op),
        Command::Whitehead { op } => whitehead_cmd(op),
        Command::Bounds { op } => bounds_cmd(op),
        Command::Geom { op } => geom(op),
        Command::Verify(a) => verify(a),
        Command::Corpus(a) => corpus(a),
    }
}

fn pair(a: &PairArgs) -> Result<TuplePair, CliError> {
    Ok(TuplePair::parse(a.rank, &a.left, &a.right)?)
}

fn decide_pair(tp: &TuplePair) -> (Status, Value) {
    match uniform_conjugator(tp) {
        Some(g) => (
            Status::Decided,
            json!({ "answer": "yes", "conjugator": g, "verified": tp.verifies(&g) }),
        ),
        None => (
            Status::Negative,
            json!({ "answer": "no", "componentwise_conjugate": tp.is_componentwise_conjugate() }),
        ),
    }
}

fn criterion_report(tp: &TuplePair, l: usize) -> Report {
    Ok(match word_criterion(tp, l)? {
        conjugacy::Criterion::Pass { words_checked } => (
            Status::Decided,
            json!({ "answer": "pass", "L_used": l, "words_checked": words_checked }),
        ),
        conjugacy::Criterion::Fail {
            witness,
            length,
            left_value,
            right_value,
        } => (
            Status::Negative,
            json!({
                "answer": "fail",
                "L_used": l,
                "witness_word": witness,
                "witness_length": length,
                "left_value": left_value,
                "right_value": right_value,
            }),
        ),
    })
}

fn uniconj(op: &UniconjOp) -> Report {
    match op {
        UniconjOp::Decide(a) => Ok(decide_pair(&pair(a)?)),
        UniconjOp::Criterion { pair: a, l } => criterion_report(&pair(a)?, *l),
        UniconjOp::Probe { pair: a, l } => {
            let report = equivalence_probe(&pair(a)?, *l)?;
            Ok((
                Status::Decided,
                serde_json::to_value(report).expect("serializable"),
            ))
        }
    }
}

#[derive(Debug, Deserialize)]
struct BlockFile {
    rank: usize,
    left: Vec<Vec<Word>>,
    right: Vec<Vec<Word>>,
}

fn parse_blocks(text: &str, rank: usize) -> Result<Vec<Vec<Word>>, CliError> {
    text.split(';')
        .map(|b| parse_tuple(b, rank).map_err(CliError::from))
        .collect()
}

fn block_systems(a: &BlockArgs) -> Result<(BlockSystem, BlockSystem), CliError> {
    let (rank, left, right) = match (&a.blocks_json, &a.left, &a.right) {
        (Some(path), _, _) => {
            let text =
                fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
            let f: BlockFile = serde_json::from_str(&text).map_err(input)?;
            (f.rank, f.left, f.right)
        }
        (None, Some(l), Some(r)) => (a.rank, parse_blocks(l, a.rank)?, parse_blocks(r, a.rank)?),
        _ => return Err(input("give --blocks-json or both --left and --right")),
    };
    Ok((
        BlockSystem::new(rank, left)?,
        BlockSystem::new(rank, right)?,
    ))
}

fn mode(a: &BlockArgs) -> MixedMode {
    match a.mode {
        ModeArg::Empirical => MixedMode::Empirical(a.c),
        ModeArg::Paper => MixedMode::Paper,
    }
}

fn mixed_report(u: &BlockSystem, v: &BlockSystem, mode: &MixedMode) -> Report {
    let outcome = whitehead::mixed_decide(u, v, mode)?;
    let status = match outcome {
        MixedOutcome::Yes { .. } => Status::Decided,
        MixedOutcome::No { .. } => Status::Negative,
        MixedOutcome::Inconclusive { .. } => Status::Guard,
    };
    let mut value = serde_json::to_value(&outcome).expect("serializable");
    if let (MixedOutcome::Yes { .. }, Value::Object(m)) = (&outcome, &mut value) {
        m.insert("verified".into(), json!(true));
    }
    Ok((status, value))
}

fn whitehead_cmd(op: &WhiteheadOp) -> Report {
    match op {
        WhiteheadOp::Classical(a) => {
            let (u, v) = block_systems(a)?;
            let (s, t) = (u.blocks.concat(), v.blocks.concat());
            match whitehead::orbit_decide_classical(&s, &t, u.rank)? {
                Some(seq) => {
                    let phi = whitehead::compose(&seq, u.rank);
                    Ok((
                        Status::Decided,
                        json!({
                            "answer": "yes",
                            "aut_sequence": seq,
                            "images": phi.images(),
                            "verified": whitehead::maps_up_to_conjugacy(&phi, &s, &t),
                        }),
                    ))
                }
                None => Ok((Status::Negative, json!({ "answer": "no" }))),
            }
        }
        WhiteheadOp::Exact(a) => {
            let (u, v) = block_systems(a)?;
            let (u, v) = (
                BlockSystem::new(u.rank, vec![u.blocks.concat()])?,
                BlockSystem::new(v.rank, vec![v.blocks.concat()])?,
            );
            mixed_report(&u, &v, &mode(a))
        }
        WhiteheadOp::Mixed(a) => {
            let (u, v) = block_systems(a)?;
            mixed_report(&u, &v, &mode(a))
        }
        WhiteheadOp::Minimize { rank, tuple } => {
            let t = parse_tuple(tuple, *rank)?;
            let (min, seq) = whitehead::minimize(&t, *rank)?;
            let total: usize = min.iter().map(Word::len).sum();
            Ok((
                Status::Decided,
                json!({ "minimal": min, "total_length": total, "aut_sequence": seq }),
            ))
        }
    }
}

fn parse_rational(text: &str) -> Result<BigRational, CliError> {
    let bad = || input(format!("not a rational number: {text:?}"));
    match text.split_once('/') {
        Some((n, d)) => {
            let (n, d) = (
                BigInt::from_str(n.trim()).map_err(|_| bad())?,
                BigInt::from_str(d.trim()).map_err(|_| bad())?,
            );
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(text.trim()).map_err(|_| bad())?,
        )),
    }
}

fn context(a: &ShowArgs) -> Result<BoundContext, CliError> {
    let mut ctx = BoundContext::new(parse_rational(&a.delta)?, a.sharp_s)?;
    if a.assembled {
        ctx = ctx.assembled();
    }
    for o in &a.overrides {
        let (name, value) = o
            .split_once('=')
            .ok_or_else(|| input(format!("override {o:?} is not name=value")))?;
        ctx = ctx.with_override(
            ConstName::from_str(name.trim())?,
            Magnitude::exact(parse_rational(value)?),
        );
    }
    Ok(ctx)
}

const SHOW_NAMES: [&str; 17] = [
    "ball", "lambda", "epsilon", "conj", "mu", "r", "f1", "f2", "hbar", "c_easy1", "c_circ", "f",
    "M", "C_cyclic", "L_two", "C_main", "C_inner",
];

fn bounds_cmd(op: &BoundsOp) -> Report {
    match op {
        BoundsOp::List => Ok((
            Status::Decided,
            json!({
                "constants": SHOW_NAMES,
                "overridable": ConstName::ALL.iter().map(|c| c.as_str()).collect::<Vec<_>>(),
            }),
        )),
        BoundsOp::Show(a) => {
            if a.lens.contains(&0) {
                return Err(BoundsError::ZeroLength.into());
            }
            let ctx = context(a)?;
            let bound = ctx.by_name(&a.name, &a.lens, a.n)?;
            Ok((
                Status::Decided,
                json!({
                    "name": bound.name,
                    "value": bound.value,
                    "saturated": bound.saturated,
                    "path": ctx.path(),
                    "tree": bound,
                }),
            ))
        }
    }
}

fn word(text: &Option<String>, what: &str, rank: usize) -> Result<Word, CliError> {
    let t = text
        .as_deref()
        .ok_or_else(|| input(format!("--{what} is required")))?;
    Ok(Word::parse(t, rank)?)
}

fn ratio(r: Rational64) -> String {
    r.to_string()
}

fn verdict(ok: bool) -> (Status, Value) {
    (
        if ok {
            Status::Decided
        } else {
            Status::Negative
        },
        json!({ "holds": ok }),
    )
}

fn geom(op: &GeomOp) -> Report {
    match op {
        GeomOp::Ball { space, radius } => {
            let p = space.load()?;
            let ball = BallGraph::build(&p, *radius)?;
            Ok((
                Status::Decided,
                json!({
                    "presentation": p.to_string(),
                    "piece_ratio": ratio(p.piece_ratio()),
                    "radius": radius,
                    "vertices": ball.len(),
                    "layer_sizes": ball.layer_sizes(),
                }),
            ))
        }
        GeomOp::DeltaEst { space, radius } => {
            let p = space.load()?;
            let est = BallGraph::build(&p, *radius)?.delta_estimate();
            Ok((
                Status::Decided,
                json!({
                    "presentation": p.to_string(),
                    "radius": radius,
                    "delta": ratio(est.delta),
                    "triangles": est.triangles,
                    "sampled": est.sampled,
                    "exceeded": est.exceeded,
                }),
            ))
        }
        GeomOp::Norm { rank, g } => {
            let g = Word::parse(g, *rank)?;
            let cw = g.cyclic_reduce();
            Ok((
                Status::Decided,
                json!({ "norm": geometry::norm(&g), "core": cw.core, "witness": cw.witness }),
            ))
        }
        GeomOp::AxisDist { rank, g, h, radius } => {
            let (g, h) = (Word::parse(g, *rank)?, Word::parse(h, *rank)?);
            let r = radius.unwrap_or(g.len() + h.len());
            let d = geometry::axes_distance(&g, &h, r)?;
            let bound = geometry::axes_bound(&g, &h);
            Ok((
                if d <= bound {
                    Status::Decided
                } else {
                    Status::Negative
                },
                json!({ "distance": ratio(d), "bound": ratio(bound), "holds": d <= bound, "radius": r }),
            ))
        }
        GeomOp::Check(a) => check(a),
        GeomOp::Dehn { space, word: w } => {
            let p = space.load()?;
            let w = Word::parse(w, p.rank())?;
            let nf = p.dehn_normal_form(&w).map_err(input)?;
            Ok((
                Status::Decided,
                json!({ "normal_form": nf, "trivial": nf.is_identity() }),
            ))
        }
    }
}

fn check(a: &CheckArgs) -> Report {
    let p = a.space.load()?;
    let rank = p.rank();
    let need = |t: &Option<String>, what: &str| word(t, what, rank);
    let points = || -> Result<Vec<Word>, CliError> {
        let t = a
            .points
            .as_deref()
            .ok_or_else(|| input("--points is required"))?;
        Ok(parse_tuple(t, rank)?)
    };
    let free = p.is_free();
    let ball = || BallGraph::build(&p, a.radius);
    match a.lemma {
        Lemma::CProduct => Ok(verdict(geometry::c_product_check(
            &need(&a.u, "u")?,
            &need(&a.v, "v")?,
            a.c,
        ))),
        Lemma::Triple => {
            let (u, v, w) = (need(&a.u, "u")?, need(&a.v, "v")?, need(&a.w, "w")?);
            let ok = if free {
                geometry::triple_length_bound_check(&u, &v, &w, a.c, a.delta)?
            } else {
                geometry::triple_length_bound_check_in(&ball()?, &u, &v, &w, a.c, a.delta)?
            };
            Ok(verdict(ok))
        }
        Lemma::Chain => {
            let pts = points()?;
            let ok = if free {
                geometry::chain_bound_check(&pts, a.delta)?
            } else {
                geometry::chain_bound_check_in(&ball()?, &pts, a.delta)?
            };
            Ok(verdict(ok))
        }
        Lemma::Rectangle => {
            let pts = points()?;
            if pts.len() != 4 {
                return Err(input("rectangle needs exactly four points"));
            }
            let ok = if free {
                geometry::rectangle_check(&pts[0], &pts[1], &pts[2], &pts[3], a.delta)
            } else {
                geometry::rectangle_check_in(&ball()?, &pts[0], &pts[1], &pts[2], &pts[3], a.delta)?
            };
            Ok(verdict(ok))
        }
        Lemma::PowerDefect => {
            let g = need(&a.g, "g")?;
            let mu = crate::bounds::free_mu_for_word(&g);
            let ok = geometry::power_defect_check(&g, a.s, a.t, mu)?;
            let (status, mut v) = verdict(ok);
            v["mu"] = json!(mu);
            Ok((status, v))
        }
        Lemma::PowerDecompose => {
            let (z, b) = (need(&a.z, "z")?, need(&a.b, "b")?);
            let x = geometry::conjugate_power_decompose(&z, &b)?;
            let c = easy1_c(&b)?;
            let ok = geometry::verify_power_decomposition(&z, &b, &x, c, 64);
            let (status, mut v) = verdict(ok);
            v["x"] = json!(x);
            v["c"] = json!(c);
            Ok((status, v))
        }
        Lemma::ShiftDecompose => {
            let (z, w, b) = (need(&a.z, "z")?, need(&a.w, "w")?, need(&a.b, "b")?);
            let (x, l) = geometry::conjugate_shift_decompose(&z, &w, &b, a.k)?;
            let c = circ_c(&b, &w)?;
            let ok = geometry::verify_shift_decomposition(&z, &w, &b, a.k, &x, l, c);
            let (status, mut v) = verdict(ok);
            v["x"] = json!(x);
            v["l"] = json!(l);
            v["c"] = json!(c);
            Ok((status, v))
        }
        Lemma::Twoeq => {
            let (b, w, h) = (need(&a.b, "b")?, need(&a.w, "w")?, need(&a.h, "h")?);
            match conjugacy::verify_twoeq(&b, &w, &h, a.max_k)? {
                Some(wit) => Ok((Status::Decided, json!({ "holds": true, "witness": wit }))),
                None => Ok((Status::Negative, json!({ "holds": false }))),
            }
        }
    }
}

/// Cancellation constant for the power decomposition at `delta = 0`.
pub fn easy1_c(b: &Word) -> Result<f64, CliError> {
    let ctx = BoundContext::free(2);
    let len = Magnitude::int(b.len().max(1) as u64);
    let bound = ctx.cancellation_c(
        crate::bounds::CancellationMode::Easy1,
        &len,
        &Magnitude::zero(),
    )?;
    bound
        .value
        .to_u64()
        .map(|v| v as f64)
        .ok_or_else(|| input("cancellation constant is not a small integer"))
}

/// Cancellation constant for the shift decomposition at `delta = 0`.
pub fn circ_c(b: &Word, w: &Word) -> Result<f64, CliError> {
    let ctx = BoundContext::free(2);
    let (lb, lw) = (
        Magnitude::int(b.len().max(1) as u64),
        Magnitude::int(w.len().max(1) as u64),
    );
    let bound = ctx.cancellation_c(crate::bounds::CancellationMode::Circ, &lb, &lw)?;
    bound
        .value
        .to_u64()
        .map(|v| v as f64)
        .ok_or_else(|| input("cancellation constant is not a small integer"))
}

fn verify(a: &VerifyArgs) -> Report {
    let reports = suites::run_suite(&a.suite, a.samples, a.seed).ok_or_else(|| {
        input(format!(
            "unknown suite {:?}; expected one of {:?} or all",
            a.suite,
            suites::SUITES
        ))
    })?;
    let all = reports.iter().all(|r| r.passed());
    Ok((
        if all {
            Status::Decided
        } else {
            Status::Negative
        },
        json!({ "suite": a.suite, "seed": a.seed, "samples": a.samples, "all_passed": all, "reports": reports }),
    ))
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum CorpusLine {
    Blocks {
        rank: usize,
        left: Vec<Vec<Word>>,
        right: Vec<Vec<Word>>,
    },
    Pair {
        rank: usize,
        left: Vec<Word>,
        right: Vec<Word>,
    },
}

fn corpus_line(line: &str, a: &CorpusArgs) -> Report {
    let parsed: CorpusLine = serde_json::from_str(line).map_err(input)?;
    match parsed {
        CorpusLine::Pair { rank, left, right } => {
            let tp = TuplePair::new(rank, left, right)?;
            let (status, mut v) = decide_pair(&tp);
            let (_, crit) = criterion_report(&tp, a.l)?;
            v["kind"] = json!("tuple-pair");
            v["criterion"] = crit;
            Ok((status, v))
        }
        CorpusLine::Blocks { rank, left, right } => {
            let (u, v) = (
                BlockSystem::new(rank, left)?,
                BlockSystem::new(rank, right)?,
            );
            let (status, mut out) = mixed_report(&u, &v, &MixedMode::Empirical(a.c))?;
            out["kind"] = json!("block-system");
            Ok((status, out))
        }
    }
}

fn corpus(a: &CorpusArgs) -> Report {
    let text =
        fs::read_to_string(&a.input).map_err(|e| input(format!("{}: {e}", a.input.display())))?;
    let mut lines = Vec::new();
    let mut counts: BTreeMap<&str, u64> = BTreeMap::new();
    let mut worst = Status::Decided;
    for (i, line) in text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
    {
        let (status, mut v) = match corpus_line(line, a) {
            Ok(r) => r,
            Err(e) => (e.status(), json!({ "error": e.to_string() })),
        };
        v["line"] = json!(i + 1);
        *counts
            .entry(match status {
                Status::Decided => "decided",
                Status::Negative => "negative",
                Status::Guard => "guard",
                Status::Input => "input_error",
            })
            .or_default() += 1;
        // a negative answer is still a successful run over the corpus
        if status >= Status::Guard {
            worst = worst.max(status);
        }
        lines.push(v);
    }
    Ok((
        worst,
        json!({ "results": lines.len(), "counts": counts, "lines": lines }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (Status, Value) {
        let (s, text) = run_args(args.iter().copied());
        (
            s,
            serde_json::from_str(&text).unwrap_or(Value::String(text)),
        )
    }

    #[test]
    fn decide_example() {
        let (s, v) = run(&[
            "uniconj", "decide", "--rank", "2", "--left", "a,b", "--right", "Bab,b",
        ]);
        assert_eq!(s, Status::Decided);
        assert_eq!(v["answer"], "yes");
        assert_eq!(v["conjugator"], "b");
        assert_eq!(v["version"], VERSION);
    }

    #[test]
    fn criterion_fails_with_witness() {
        let (s, v) = run(&[
            "uniconj",
            "criterion",
            "--left",
            "a,b",
            "--right",
            "a,BAbab",
            "--L",
            "2",
        ]);
        assert_eq!(s, Status::Negative);
        assert_eq!(v["witness_word"], "x1 x2");
    }

    #[test]
    fn bounds_show_hbar() {
        let (s, v) = run(&[
            "bounds", "show", "--name", "hbar", "--len", "1", "--delta", "0",
        ]);
        assert_eq!(s, Status::Decided);
        assert!(v["tree"]["formula"].is_string());
        assert!(v["value"].is_string() || v["value"].is_number());
    }

    #[test]
    fn input_errors_exit_three() {
        assert_eq!(
            run(&["uniconj", "decide", "--left", "a,c", "--right", "a,b"]).0,
            Status::Input
        );
        assert_eq!(run(&["bounds", "show", "--name", "nope"]).0, Status::Input);
        assert_eq!(run(&["frobnicate"]).0, Status::Input);
    }

    #[test]
    fn output_is_deterministic() {
        let args = [
            "verify",
            "--suite",
            "geometry",
            "--samples",
            "50",
            "--seed",
            "7",
        ];
        let a = run_args(args);
        let b = run_args(args);
        assert_eq!(a, b);
        assert_eq!(a.0, Status::Decided);
    }

    #[test]
    fn whitehead_commands() {
        let (s, v) = run(&[
            "whitehead",
            "classical",
            "--left",
            "abAB",
            "--right",
            "aabb",
        ]);
        assert_eq!((s, v["answer"].clone()), (Status::Negative, json!("no")));
        let (s, v) = run(&[
            "whitehead",
            "mixed",
            "--left",
            "a,b;ab",
            "--right",
            "b,a;ba",
            "--C",
            "2",
        ]);
        assert_eq!(s, Status::Decided, "{v}");
        assert_eq!(v["verified"], true);
    }

    #[test]
    fn geom_commands() {
        let (_, v) = run(&["geom", "ball", "--surface", "2", "--radius", "2"]);
        assert_eq!(v["layer_sizes"], json!([1, 8, 56]));
        let (_, v) = run(&["geom", "dehn", "--surface", "2", "--word", "abABcdCD"]);
        assert_eq!(v["trivial"], true);
        let (s, v) = run(&["geom", "axis-dist", "--g", "a", "--h", "b"]);
        assert_eq!((s, v["holds"].clone()), (Status::Decided, json!(true)));
        let (s, _) = run(&[
            "geom",
            "check",
            "power-defect",
            "--g",
            "ab",
            "--s",
            "3",
            "--t",
            "4",
        ]);
        assert_eq!(s, Status::Decided);
    }

    #[test]
    fn table_output() {
        let (_, text) = run_args(["--table", "geom", "norm", "--g", "Bab"]);
        assert!(text
            .lines()
            .any(|l| l.starts_with("norm") && l.trim_end().ends_with('1')));
    }
}
