//! Shared fixtures for the criterion benchmarks.

use silc_core::{AffineWeylElement, CartanDatum, Series};

/// A root datum of the given type.
pub fn datum(series: Series, rank: usize) -> CartanDatum {
    CartanDatum::new(series, rank).expect("valid Cartan type")
}

/// `w t_xi` from a word and a translation.
pub fn element(d: &CartanDatum, word: &[usize], xi: &[i64]) -> AffineWeylElement {
    d.aff_from_word(word, xi).expect("valid element")
}
