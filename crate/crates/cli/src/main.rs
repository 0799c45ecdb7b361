//! `silc`: command-line front end for the semi-infinite LS path toolkit.

mod job;
mod render;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Value};
use silc_core::selftest::run_selftest;
use silc_core::{AffineWeylElement, Budget, CartanDatum, Error, ParabolicSet, Result, TensorRule};

use job::{Cli, Command, Format, JobConfig, Rule};

/// A command's result: the JSON value, its plain-text rendering, and whether
/// the verified statement (if any) holds.
struct Outcome {
    value: Value,
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(value: Value, text: String) -> Self {
        Outcome { value, text, ok: true }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let flag_format = cli.format;
    if let Err(e) = configure_threads() {
        return report_error(&e, flag_format.unwrap_or(Format::Text));
    }
    let cfg = match JobConfig::from_cli(cli) {
        Ok(c) => c,
        Err(e) => return report_error(&e, flag_format.unwrap_or(Format::Text)),
    };
    match run(&cfg) {
        Ok(out) => {
            match cfg.format {
                Format::Json => {
                    let mut v = out.value;
                    if let Value::Object(m) = &mut v {
                        m.insert("schema".into(), json!("silc/1"));
                        m.insert("command".into(), json!(command_name(cfg.cmd)));
                    }
                    emit(&format!("{}\n", serde_json::to_string_pretty(&v).expect("JSON values serialize")));
                }
                Format::Text | Format::Dot => emit(&out.text),
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => report_error(&e, cfg.format),
    }
}

/// Writes to stdout, ignoring a closed pipe (e.g. output piped into `head`).
fn emit(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|()| out.flush());
}

/// Sizes the global rayon pool from `SILC_THREADS`.
fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("SILC_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Input(format!("SILC_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))
}

fn report_error(e: &Error, format: Format) -> ExitCode {
    let (kind, code, message) = match e {
        Error::Input(m) => ("input", 2, m),
        Error::Precondition(m) => ("precondition", 2, m),
        Error::Budget(m) => ("budget", 3, m),
        Error::Internal(m) => ("internal", 1, m),
    };
    match format {
        Format::Json => {
            let v = json!({ "schema": "silc/1", "error": { "kind": kind, "message": message } });
            emit(&format!("{}\n", serde_json::to_string_pretty(&v).expect("JSON values serialize")));
        }
        _ => eprintln!("error: {e}"),
    }
    ExitCode::from(code)
}

fn command_name(c: Command) -> &'static str {
    match c {
        Command::Order => "order",
        Command::Pij => "pij",
        Command::MinLift => "min-lift",
        Command::Enumerate => "enumerate",
        Command::Gch => "gch",
        Command::GchShift => "gch-shift",
        Command::SmtCheck => "smt-check",
        Command::DemCheck => "dem-check",
        Command::Pieri => "pieri",
        Command::PieriCheck => "pieri-check",
        Command::NildahaCheck => "nildaha-check",
        Command::Graph => "graph",
        Command::Path => "path",
        Command::Selftest => "selftest",
    }
}

/// Accessors that turn missing or malformed fields into input errors.
struct Ctx<'a> {
    cfg: &'a JobConfig,
    d: CartanDatum,
}

impl Ctx<'_> {
    fn weight(&self, v: &Option<job::IntList>, what: &str) -> Result<Vec<i64>> {
        let v = v.as_ref().ok_or_else(|| Error::Input(format!("missing --{what}")))?;
        job::vector(&self.d, v, what)
    }

    fn lambda(&self) -> Result<Vec<i64>> {
        self.weight(&self.cfg.lambda, "lambda")
    }

    fn mu(&self) -> Result<Vec<i64>> {
        self.weight(&self.cfg.mu, "mu")
    }

    fn xi(&self) -> Result<Vec<i64>> {
        self.weight(&self.cfg.xi, "xi")
    }

    fn element(&self, v: &Option<job::ElementSpec>, what: &str) -> Result<AffineWeylElement> {
        let v = v.as_ref().ok_or_else(|| Error::Input(format!("missing --{what}")))?;
        job::element(&self.d, v, what)
    }

    /// `x`, defaulting to the identity.
    fn x_or_e(&self) -> Result<AffineWeylElement> {
        match &self.cfg.x {
            Some(v) => job::element(&self.d, v, "x"),
            None => Ok(self.d.aff_identity()),
        }
    }

    fn j(&self) -> Result<ParabolicSet> {
        match &self.cfg.j {
            Some(v) => job::index_set(&self.d, v),
            None => Ok(ParabolicSet::empty()),
        }
    }

    fn qmin(&self) -> i64 {
        self.cfg.qmin.unwrap_or(-1)
    }

    fn budget(&self) -> Budget {
        let def = Budget::default();
        Budget {
            max_nodes: self.cfg.max_nodes.unwrap_or(def.max_nodes),
            max_paths: self.cfg.max_paths.unwrap_or(def.max_paths),
        }
    }

    fn el(&self, x: &AffineWeylElement) -> Value {
        render::element(&self.d, x)
    }

    fn el_text(&self, x: &AffineWeylElement) -> String {
        render::element_text(&self.d, x)
    }
}

fn run(cfg: &JobConfig) -> Result<Outcome> {
    if cfg.format == Format::Dot && cfg.cmd != Command::Graph {
        return Err(Error::Input("--format dot is only available for graph".into()));
    }
    let c = Ctx { cfg, d: CartanDatum::new(cfg.series, cfg.rank)? };
    match cfg.cmd {
        Command::Order => order(&c),
        Command::Pij => pij(&c),
        Command::MinLift => min_lift(&c),
        Command::Enumerate => enumerate(&c),
        Command::Gch => gch(&c),
        Command::GchShift => gch_shift(&c),
        Command::SmtCheck => smt_check(&c),
        Command::DemCheck => dem_check(&c),
        Command::Pieri => pieri(&c),
        Command::PieriCheck => pieri_check(&c),
        Command::NildahaCheck => nildaha_check(&c),
        Command::Graph => graph(&c),
        Command::Path => path(&c),
        Command::Selftest => selftest(&c),
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn order(c: &Ctx) -> Result<Outcome> {
    let x = c.element(&c.cfg.x, "x")?;
    let y = c.element(&c.cfg.y, "y")?;
    let j = c.j()?;
    let result = c.d.si_leq_budget(&x, &y, j, &c.budget())?;
    let oracle = c.d.si_leq_translation(&x, &y)?;
    let agree = result == oracle;
    let value = json!({
        "x": c.el(&x), "y": c.el(&y), "j": j.indices(),
        "result": result, "oracle": oracle, "agree": agree,
    });
    let mut text = format!("{result}\n");
    if !agree {
        text.push_str(&format!("oracle disagrees: {oracle}\n"));
    }
    Ok(Outcome { value, text, ok: agree })
}

fn pij(c: &Ctx) -> Result<Outcome> {
    let x = c.element(&c.cfg.x, "x")?;
    let j = c.j()?;
    let p = c.d.pij(&x, j);
    let text = format!("{}\n", c.el_text(&p));
    Ok(Outcome::ok(json!({ "x": c.el(&x), "j": j.indices(), "result": c.el(&p) }), text))
}

fn min_lift(c: &Ctx) -> Result<Outcome> {
    let x = c.element(&c.cfg.x, "x")?;
    let y = c.element(&c.cfg.y, "y")?;
    let j = c.j()?;
    let z = c.d.min_lift(&x, &y, j)?;
    let text = format!("{}\n", c.el_text(&z));
    Ok(Outcome::ok(json!({ "x": c.el(&x), "y": c.el(&y), "j": j.indices(), "result": c.el(&z) }), text))
}

fn enumerate(c: &Ctx) -> Result<Outcome> {
    let lambda = c.lambda()?;
    let x = c.x_or_e()?;
    let q_min = c.qmin();
    let paths = c.d.enumerate_sils_budget(&lambda, &x, q_min, &c.budget())?;
    let mut text = String::new();
    for p in &paths {
        let _ = writeln!(text, "{}", render::path_text(&c.d, p));
    }
    let _ = writeln!(text, "{} paths", paths.len());
    let value = json!({
        "lambda": lambda, "x": c.el(&x), "qmin": q_min, "count": paths.len(),
        "paths": paths.iter().map(|p| render::path(&c.d, p)).collect::<Vec<_>>(),
    });
    Ok(Outcome::ok(value, text))
}

fn gch(c: &Ctx) -> Result<Outcome> {
    let lambda = c.lambda()?;
    let x = c.x_or_e()?;
    let q_min = c.qmin();
    let g = c.d.gch_demazure_budget(&lambda, &x, q_min, &c.budget())?;
    let text = format!("{}\n", render::records_text(&g));
    let value = json!({ "lambda": lambda, "x": c.el(&x), "qmin": q_min, "character": render::records(&g) });
    Ok(Outcome::ok(value, text))
}

fn mismatch_value(m: &Option<silc_core::gchar::Mismatch>) -> Value {
    m.as_ref().map_or(Value::Null, |m| Value::String(m.to_string()))
}

fn mismatch_text(ok: bool, m: &Option<silc_core::gchar::Mismatch>) -> String {
    match m {
        Some(m) => format!("{}: {m}\n", verdict(ok)),
        None => format!("{}\n", verdict(ok)),
    }
}

fn gch_shift(c: &Ctx) -> Result<Outcome> {
    let lambda = c.lambda()?;
    let x = c.x_or_e()?;
    let xi = c.xi()?;
    let q_min = c.qmin();
    let cmp = c.d.verify_gch_translation(&lambda, &x, &xi, q_min)?;
    let ok = cmp.passed();
    let value = json!({
        "lambda": lambda, "x": c.el(&x), "xi": xi, "qmin": q_min,
        "passed": ok, "mismatch": mismatch_value(&cmp.mismatch),
    });
    Ok(Outcome { value, text: mismatch_text(ok, &cmp.mismatch), ok })
}

fn smt_check(c: &Ctx) -> Result<Outcome> {
    let lambda = c.lambda()?;
    let mu = c.mu()?;
    let q_min = c.qmin();
    let bound = c.cfg.bound.unwrap_or(1);
    let rule = match c.cfg.rule {
        Rule::Standard => TensorRule::Standard,
        Rule::Swapped => TensorRule::Swapped,
    };
    let r = c.d.verify_smt_iso(&lambda, &mu, q_min, bound, rule)?;
    let ok = r.passed();
    let failure = r.failure();
    let value = json!({
        "lambda": lambda, "mu": mu, "qmin": q_min, "xi_bound": bound,
        "rule": match c.cfg.rule { Rule::Standard => "standard", Rule::Swapped => "swapped" },
        "passed": ok, "pairs": r.pairs, "theta_counts": [r.theta_counts.0, r.theta_counts.1],
        "tx_checked": r.tx_checked, "failure": failure,
    });
    let mut text = format!("{} ({} pairs, {} criterion cases)\n", verdict(ok), r.pairs, r.tx_checked);
    if let Some(f) = failure {
        let _ = writeln!(text, "{f}");
    }
    Ok(Outcome { value, text, ok })
}

fn dem_check(c: &Ctx) -> Result<Outcome> {
    let lambda = c.lambda()?;
    let mu = c.mu()?;
    let x = c.x_or_e()?;
    let q_min = c.qmin();
    let r = c.d.verify_dem_decomposition(&lambda, &mu, &x, q_min)?;
    let ok = r.passed();
    let value = json!({
        "lambda": lambda, "mu": mu, "x": c.el(&x), "qmin": q_min,
        "passed": ok, "etas": r.etas, "mismatch": mismatch_value(&r.character.mismatch),
    });
    Ok(Outcome { value, text: mismatch_text(ok, &r.character.mismatch), ok })
}

fn pieri(c: &Ctx) -> Result<Outcome> {
    let lambda = c.lambda()?;
    let x = c.x_or_e()?;
    let q_min = c.qmin();
    let combo = c.d.pieri_coeffs(&lambda, &x, q_min)?;
    let mut text = String::new();
    let mut terms = Vec::new();
    for (y, g) in &combo.terms {
        let _ = writeln!(text, "[{}]: {}", c.el_text(y), render::records_text(g));
        terms.push(json!({ "class": c.el(y), "coeff": render::records(g) }));
    }
    let value = json!({
        "lambda": lambda, "x": c.el(&x), "qmin": combo.q_min,
        "base_twist": combo.base_twist.to_vec(), "terms": terms,
    });
    Ok(Outcome::ok(value, text))
}

fn pieri_check(c: &Ctx) -> Result<Outcome> {
    let lambda = c.lambda()?;
    let mu = c.mu()?;
    let x = c.x_or_e()?;
    let q_min = c.qmin();
    let r = c.d.verify_pieri(&lambda, &x, &mu, q_min)?;
    let ok = r.passed();
    let value = json!({
        "lambda": lambda, "mu": mu, "x": c.el(&x), "qmin": q_min,
        "passed": ok, "keys": r.keys, "mismatch": mismatch_value(&r.character.mismatch),
    });
    Ok(Outcome { value, text: mismatch_text(ok, &r.character.mismatch), ok })
}

fn nildaha_check(c: &Ctx) -> Result<Outcome> {
    let samples = c.cfg.samples.unwrap_or(200);
    let seed = c.cfg.seed.unwrap_or(0);
    let r = c.d.verify_nildaha(samples, seed, c.cfg.corrupt);
    let ok = r.passed();
    let checked: BTreeMap<&str, usize> = r.checked.iter().map(|(k, v)| (k.as_str(), *v)).collect();
    let shown: Vec<String> = r.failures.iter().take(10).map(|f| f.to_string()).collect();
    let value = json!({
        "samples": samples, "seed": seed, "corrupt": c.cfg.corrupt,
        "passed": ok, "checked": checked, "failure_count": r.failures.len(), "failures": shown,
    });
    let mut text = format!("{} ({samples} samples", verdict(ok));
    for (k, v) in &checked {
        let _ = write!(text, ", {k} {v}");
    }
    text.push_str(")\n");
    for f in &shown {
        let _ = writeln!(text, "{f}");
    }
    Ok(Outcome { value, text, ok })
}

fn graph(c: &Ctx) -> Result<Outcome> {
    let j = c.j()?;
    let bound = c.cfg.bound.unwrap_or(1);
    if bound < 0 {
        return Err(Error::Input("--bound must be non-negative".into()));
    }
    let window: BTreeSet<AffineWeylElement> = c.d.element_window(-bound, bound)?.iter().map(|x| c.d.pij(x, j)).collect();
    let mut nodes: BTreeSet<AffineWeylElement> = window.clone();
    let mut edges = Vec::new();
    for x in &window {
        for (beta, y) in c.d.si_covers(x, j) {
            nodes.insert(y.clone());
            edges.push((x.clone(), beta, y));
        }
    }
    let id: BTreeMap<&AffineWeylElement, usize> = nodes.iter().enumerate().map(|(k, x)| (x, k)).collect();
    let value = json!({
        "j": j.indices(), "bound": bound,
        "nodes": nodes.iter().map(|x| json!({ "id": id[x], "element": c.el(x), "sell": c.d.sell(x), "in_window": window.contains(x) })).collect::<Vec<_>>(),
        "edges": edges.iter().map(|(x, b, y)| json!({ "from": id[x], "to": id[y], "root": b.root.to_vec(), "n": b.n })).collect::<Vec<_>>(),
    });
    let mut dot = String::from("digraph silc {\n  rankdir=BT;\n");
    for x in &nodes {
        let style = if window.contains(x) { "" } else { ", style=dashed" };
        let _ = writeln!(dot, "  n{} [label=\"{}\"{style}];", id[x], c.el_text(x));
    }
    for (x, b, y) in &edges {
        let _ = writeln!(dot, "  n{} -> n{} [label=\"{}\"];", id[x], id[y], render::affine_root(b));
    }
    dot.push_str("}\n");
    Ok(Outcome::ok(value, dot))
}

fn path(c: &Ctx) -> Result<Outcome> {
    let spec = c
        .cfg
        .path
        .as_ref()
        .ok_or_else(|| Error::Input("missing path (give --path FILE or \"path\" in the job file)".into()))?;
    let p = job::path(&c.d, spec)?;
    let valid = c.d.validate_path_budget(&p, &c.budget())?;
    let mut value = json!({ "valid": valid, "path": render::path(&c.d, &p) });
    let mut text = format!("{}\n", render::path_text(&c.d, &p));
    if valid {
        let n = c.d.rank();
        let eps: Vec<i64> = (0..=n).map(|i| c.d.eps(i, &p)).collect();
        let phi: Vec<i64> = (0..=n).map(|i| c.d.phi(i, &p)).collect();
        let _ = writeln!(text, "valid; eps = {eps:?}, phi = {phi:?}");
        value["eps"] = json!(eps);
        value["phi"] = json!(phi);
    } else {
        text.push_str("not a semi-infinite LS path\n");
    }
    Ok(Outcome { value, text, ok: valid })
}

fn selftest(c: &Ctx) -> Result<Outcome> {
    let report = run_selftest(&c.d, c.qmin())?;
    let ok = report.passed();
    let mut text = String::new();
    for ch in &report.checks {
        let _ = write!(text, "{} {} ({} cases)", verdict(ch.passed), ch.name, ch.cases);
        if let Some(d) = &ch.detail {
            let _ = write!(text, ": {d}");
        }
        text.push('\n');
    }
    let _ = writeln!(text, "{}", verdict(ok));
    let value = serde_json::to_value(&report).map_err(|e| Error::Internal(e.to_string()))?;
    Ok(Outcome { value, text, ok })
}
