//! Serialization of results: JSON values with deterministic ordering, and
//! the text forms used by the plain output format.

use serde_json::{json, Value};
use silc_core::gchar::CharRecord;
use silc_core::silspath::AffineWeight;
use silc_core::{AffineRoot, AffineWeylElement, CartanDatum, GradedCharacter, Rational, SiLSPath};

/// `{"word": [...], "trans": [...]}` with a reduced word of the finite part.
pub fn element(d: &CartanDatum, x: &AffineWeylElement) -> Value {
    let (_, word) = d.length_and_word(&x.w);
    json!({ "word": word, "trans": x.xi.to_vec() })
}

/// `"word ; translation"`, the same syntax the parser accepts.
pub fn element_text(d: &CartanDatum, x: &AffineWeylElement) -> String {
    let (_, word) = d.length_and_word(&x.w);
    let w: Vec<String> = word.iter().map(|i| i.to_string()).collect();
    let t: Vec<String> = x.xi.iter().map(|c| c.to_string()).collect();
    format!("{} ; {}", w.join(" "), t.join(" ")).trim_start().to_string()
}

pub fn rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn records(g: &GradedCharacter) -> Value {
    Value::Array(g.records().iter().map(record).collect())
}

fn record(r: &CharRecord) -> Value {
    json!({ "weight": r.weight, "q": r.q, "coeff": r.coeff })
}

pub fn records_text(g: &GradedCharacter) -> String {
    let recs = g.records();
    if recs.is_empty() {
        return "0".to_string();
    }
    recs.iter()
        .map(|r| format!("{} e{:?} q^{}", r.coeff, r.weight, r.q))
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn affine_weight(w: &AffineWeight) -> Value {
    json!({ "finite": w.finite.to_vec(), "q": w.delta })
}

pub fn path(d: &CartanDatum, p: &SiLSPath) -> Value {
    json!({
        "shape": p.shape.to_vec(),
        "directions": p.directions.iter().map(|x| element(d, x)).collect::<Vec<_>>(),
        "breaks": p.breaks.iter().map(rational).collect::<Vec<_>>(),
        "weight": affine_weight(&d.path_wt(p)),
    })
}

pub fn path_text(d: &CartanDatum, p: &SiLSPath) -> String {
    let dirs: Vec<String> = p.directions.iter().map(|x| format!("[{}]", element_text(d, x))).collect();
    let breaks: Vec<String> = p.breaks.iter().map(rational).collect();
    let w = d.path_wt(p);
    format!("({} | {})  wt = {:?} q^{}", dirs.join(", "), breaks.join(", "), w.finite.as_slice(), w.delta)
}

pub fn affine_root(b: &AffineRoot) -> String {
    format!("{:?}{:+}δ", b.root.as_slice(), b.n)
}
