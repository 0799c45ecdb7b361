//! Job configuration: command-line flags, JSON job files, and the parsers
//! for weights, elements, index sets and paths.

use std::path::Path;

use clap::{Parser, ValueEnum};
use serde::Deserialize;
use silc_core::silspath::parse_rational;
use silc_core::{AffineWeylElement, CartanDatum, Error, ParabolicSet, Rational, Result, Series, SiLSPath};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Semi-infinite Bruhat order x ⪯ y, cross-checked against the translation oracle.
    Order,
    /// Parabolic projection Π^J(x).
    Pij,
    /// Minimum lift of y above x.
    MinLift,
    /// Semi-infinite LS paths of shape λ above x on a q-window.
    Enumerate,
    /// Graded character of V_x^-(λ) on a q-window.
    Gch,
    /// Translation identity for graded characters.
    GchShift,
    /// Standard monomial crystal isomorphism on a window.
    SmtCheck,
    /// Demazure-submodule decomposition identity.
    DemCheck,
    /// Pieri–Chevalley coefficients.
    Pieri,
    /// Pieri–Chevalley character identity.
    PieriCheck,
    /// nil-DAHA relations in the polynomial representation.
    NildahaCheck,
    /// Semi-infinite Bruhat graph on a translation window, as DOT.
    Graph,
    /// Validate a path given in a job file and report its crystal data.
    Path,
    /// Run the verification suite.
    Selftest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    Standard,
    Swapped,
}

/// Command-line interface. Every option may also come from a JSON job file
/// (`--job`); flags given on the command line take precedence.
#[derive(Debug, Parser)]
#[command(name = "silc", version, about = "Semi-infinite LS paths, Bruhat order and graded characters")]
pub struct Cli {
    /// Subcommand; may instead be given as "cmd" in the job file.
    #[arg(value_enum)]
    pub cmd: Option<Command>,
    /// JSON job file.
    #[arg(long)]
    pub job: Option<std::path::PathBuf>,
    /// Cartan series (A, B, C, D, E, F, G).
    #[arg(long = "type")]
    pub series: Option<String>,
    #[arg(long)]
    pub rank: Option<usize>,
    /// Dominant weight, comma-separated ϖ-coordinates.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Second weight, comma-separated ϖ-coordinates.
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
    /// Affine Weyl element "word ; translation".
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Affine Weyl element "word ; translation".
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<String>,
    /// Coweight, comma-separated α∨-coordinates.
    #[arg(long, allow_hyphen_values = true)]
    pub xi: Option<String>,
    /// Lowest q-degree of the window.
    #[arg(long, allow_hyphen_values = true)]
    pub qmin: Option<i64>,
    /// Parabolic index set, comma-separated (may be empty).
    #[arg(long)]
    pub j: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Maximum nodes visited by graph searches.
    #[arg(long)]
    pub max_nodes: Option<usize>,
    /// Maximum paths produced by an enumeration.
    #[arg(long)]
    pub max_paths: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of random samples (nildaha-check).
    #[arg(long)]
    pub samples: Option<usize>,
    /// Translation window radius (graph) or ‖ξ‖∞ bound (smt-check).
    #[arg(long)]
    pub bound: Option<i64>,
    /// Tensor rule for smt-check.
    #[arg(long, value_enum)]
    pub rule: Option<Rule>,
    /// Use the corrupted convention (nildaha-check negative control).
    #[arg(long)]
    pub corrupt: bool,
    /// JSON file holding a path (shape, directions, breaks) for the path command.
    #[arg(long = "path")]
    pub path_file: Option<std::path::PathBuf>,
}

/// Integer vectors may be given as JSON arrays or as comma-separated text.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum IntList {
    List(Vec<i64>),
    Text(String),
}

/// Elements may be given as `{"word": [...], "trans": [...]}` or as text.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ElementSpec {
    Object { word: Vec<usize>, trans: Vec<i64> },
    Text(String),
}

/// A path as serialized by the tool; extra fields such as `weight` are ignored.
#[derive(Debug, Clone, Deserialize)]
pub struct PathSpec {
    pub shape: IntList,
    pub directions: Vec<ElementSpec>,
    pub breaks: Vec<String>,
}

/// The contents of a job file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobFile {
    pub schema: Option<String>,
    #[serde(alias = "type")]
    pub series: Option<String>,
    pub rank: Option<usize>,
    pub cmd: Option<Command>,
    pub lambda: Option<IntList>,
    pub mu: Option<IntList>,
    pub x: Option<ElementSpec>,
    pub y: Option<ElementSpec>,
    pub xi: Option<IntList>,
    pub qmin: Option<i64>,
    pub j: Option<IntList>,
    pub format: Option<Format>,
    pub max_nodes: Option<usize>,
    pub max_paths: Option<usize>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub bound: Option<i64>,
    pub rule: Option<Rule>,
    pub corrupt: Option<bool>,
    pub path: Option<PathSpec>,
}

/// The merged configuration.
#[derive(Debug, Clone)]
pub struct JobConfig {
    pub cmd: Command,
    pub series: Series,
    pub rank: usize,
    pub lambda: Option<IntList>,
    pub mu: Option<IntList>,
    pub x: Option<ElementSpec>,
    pub y: Option<ElementSpec>,
    pub xi: Option<IntList>,
    pub qmin: Option<i64>,
    pub j: Option<IntList>,
    pub format: Format,
    pub max_nodes: Option<usize>,
    pub max_paths: Option<usize>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub bound: Option<i64>,
    pub rule: Rule,
    pub corrupt: bool,
    pub path: Option<PathSpec>,
}

pub fn load_job(path: &Path) -> Result<JobFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read job file {}: {e}", path.display())))?;
    let job: JobFile = serde_json::from_str(&text).map_err(|e| Error::Input(format!("job file {}: {e}", path.display())))?;
    if let Some(s) = &job.schema {
        if s != "silc/1" {
            return Err(Error::Input(format!("unsupported job schema {s:?}")));
        }
    }
    Ok(job)
}

pub fn load_path(path: &Path) -> Result<PathSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read path file {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("path file {}: {e}", path.display())))
}

impl JobConfig {
    /// Merges flags over the job file.
    pub fn from_cli(cli: Cli) -> Result<JobConfig> {
        let file = match &cli.job {
            Some(p) => load_job(p)?,
            None => JobFile::default(),
        };
        let text = |s: Option<String>| s.map(IntList::Text);
        let elem = |s: Option<String>| s.map(ElementSpec::Text);
        let cmd = cli.cmd.or(file.cmd).ok_or_else(|| Error::Input("no subcommand given".into()))?;
        let series = cli.series.or(file.series).ok_or_else(|| Error::Input("missing --type".into()))?;
        let rank = cli.rank.or(file.rank).ok_or_else(|| Error::Input("missing --rank".into()))?;
        Ok(JobConfig {
            cmd,
            series: Series::parse(&series)?,
            rank,
            lambda: text(cli.lambda).or(file.lambda),
            mu: text(cli.mu).or(file.mu),
            x: elem(cli.x).or(file.x),
            y: elem(cli.y).or(file.y),
            xi: text(cli.xi).or(file.xi),
            qmin: cli.qmin.or(file.qmin),
            j: text(cli.j).or(file.j),
            format: cli.format.or(file.format).unwrap_or(Format::Text),
            max_nodes: cli.max_nodes.or(file.max_nodes),
            max_paths: cli.max_paths.or(file.max_paths),
            seed: cli.seed.or(file.seed),
            samples: cli.samples.or(file.samples),
            bound: cli.bound.or(file.bound),
            rule: cli.rule.or(file.rule).unwrap_or(Rule::Standard),
            corrupt: cli.corrupt || file.corrupt.unwrap_or(false),
            path: match &cli.path_file {
                Some(p) => Some(load_path(p)?),
                None => file.path,
            },
        })
    }
}

/// Prefixes an error message with the position it refers to.
fn at(what: &str, e: Error) -> Error {
    match e {
        Error::Input(m) => Error::Input(format!("{what}: {m}")),
        Error::Precondition(m) => Error::Precondition(format!("{what}: {m}")),
        other => other,
    }
}

/// Parses integers separated by commas and/or whitespace.
pub fn parse_ints(s: &str, what: &str) -> Result<Vec<i64>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .enumerate()
        .map(|(k, t)| t.parse::<i64>().map_err(|_| Error::Input(format!("{what}: entry {} ({t:?}) is not an integer", k + 1))))
        .collect()
}

pub fn int_list(v: &IntList, what: &str) -> Result<Vec<i64>> {
    match v {
        IntList::List(l) => Ok(l.clone()),
        IntList::Text(s) => parse_ints(s, what),
    }
}

/// A weight or coweight of length `rank`.
pub fn vector(d: &CartanDatum, v: &IntList, what: &str) -> Result<Vec<i64>> {
    let out = int_list(v, what)?;
    if out.len() != d.rank() {
        return Err(Error::Input(format!("{what}: expected {} coordinates, got {}", d.rank(), out.len())));
    }
    Ok(out)
}

/// A finite index set; `0` is rejected.
pub fn index_set(d: &CartanDatum, v: &IntList) -> Result<ParabolicSet> {
    let raw = int_list(v, "J")?;
    let mut out = Vec::new();
    for i in raw {
        if i < 1 || i as usize > d.rank() {
            return Err(Error::Input(format!("J: index {i} outside 1..={} (s_0 is not a finite simple reflection)", d.rank())));
        }
        out.push(i as usize);
    }
    Ok(ParabolicSet::from_indices(&out))
}

/// `"word ; translation"`: a word over `0..=rank` followed by the
/// translation coordinates. An empty translation means zero.
pub fn parse_element(d: &CartanDatum, s: &str, what: &str) -> Result<AffineWeylElement> {
    let (word, trans) = s
        .split_once(';')
        .ok_or_else(|| Error::Input(format!("{what}: expected \"word ; translation\", got {s:?}")))?;
    let word: Vec<usize> = parse_ints(word, what)?
        .into_iter()
        .map(|i| usize::try_from(i).map_err(|_| Error::Input(format!("{what}: negative simple index {i}"))))
        .collect::<Result<_>>()?;
    let mut trans = parse_ints(trans, what)?;
    if trans.is_empty() {
        trans = vec![0; d.rank()];
    }
    if trans.len() != d.rank() {
        return Err(Error::Input(format!("{what}: translation needs {} coordinates, got {}", d.rank(), trans.len())));
    }
    d.aff_from_word(&word, &trans).map_err(|e| at(what, e))
}

pub fn element(d: &CartanDatum, v: &ElementSpec, what: &str) -> Result<AffineWeylElement> {
    match v {
        ElementSpec::Text(s) => parse_element(d, s, what),
        ElementSpec::Object { word, trans } => {
            if trans.len() != d.rank() {
                return Err(Error::Input(format!("{what}: translation needs {} coordinates", d.rank())));
            }
            d.aff_from_word(word, trans).map_err(|e| at(what, e))
        }
    }
}

/// A path from a job file. Errors name the offending position.
pub fn path(d: &CartanDatum, p: &PathSpec) -> Result<SiLSPath> {
    let shape = vector(d, &p.shape, "path.shape")?;
    let directions = p
        .directions
        .iter()
        .enumerate()
        .map(|(k, e)| element(d, e, &format!("path.directions[{k}]")))
        .collect::<Result<Vec<_>>>()?;
    let breaks = p
        .breaks
        .iter()
        .enumerate()
        .map(|(k, b)| parse_rational(b).map_err(|e| at(&format!("path.breaks[{k}]"), e)))
        .collect::<Result<Vec<Rational>>>()?;
    d.make_path(&shape, directions, breaks)
}
