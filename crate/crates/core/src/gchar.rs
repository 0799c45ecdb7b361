//! Group-algebra elements of `Z[P]`, truncated graded characters in
//! `Z[P]((q^{-1}))`, graded characters of level-zero Demazure submodules via
//! path enumeration, and finite Demazure operators.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::afweyl::{AffineWeylElement, Budget};
use crate::error::{input, Error, Result};
use crate::rootdata::{pair, CartanDatum, FiniteWeylElement, Weight};

/// A finitely supported `Z`-combination of formal exponentials `e^nu`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupAlgebraElement {
    terms: BTreeMap<Weight, i64>,
}

impl fmt::Debug for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}e{:?}", w.as_slice())?;
        }
        Ok(())
    }
}

impl GroupAlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `e^nu`.
    pub fn monomial(nu: &[i64]) -> Self {
        Self::from_terms([(nu.iter().copied().collect(), 1)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Weight, i64)>) -> Self {
        let mut out = Self::zero();
        for (w, c) in terms {
            out.add_term(w, c);
        }
        out
    }

    pub fn add_term(&mut self, w: Weight, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[i64]) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    /// Terms in increasing weight order.
    pub fn terms(&self) -> impl Iterator<Item = (&Weight, i64)> {
        self.terms.iter().map(|(w, c)| (w, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value at `e^nu -> 1` (the dimension of a character).
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), c * k)))
    }

    /// Multiplication by `e^nu`.
    pub fn shift(&self, nu: &[i64]) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.iter().zip(nu).map(|(a, b)| a + b).collect(), *c)))
    }

    /// The involution `e^nu -> e^{-nu}`.
    pub fn dual(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.iter().map(|a| -a).collect(), *c)))
    }
}

impl Add for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn add(self, rhs: &GroupAlgebraElement) -> GroupAlgebraElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), *c);
        }
        out
    }
}

impl Sub for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn sub(self, rhs: &GroupAlgebraElement) -> GroupAlgebraElement {
        self + &(-rhs)
    }
}

impl Neg for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn neg(self) -> GroupAlgebraElement {
        self.scale(-1)
    }
}

impl Mul for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn mul(self, rhs: &GroupAlgebraElement) -> GroupAlgebraElement {
        let mut out = GroupAlgebraElement::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.iter().zip(b).map(|(p, q)| p + q).collect(), x * y);
            }
        }
        out
    }
}

/// Solves `(1 - m) g = f` for `g`, where multiplication by the monomial `m`
/// is `times_m` and `phi` is an additive grading with `phi(m) > 0`.
/// Returns `None` when the division is not exact.
///
/// The lowest-graded part of the remainder determines the next terms of
/// `g`; if the remainder ever climbs above the top degree of `f`, no
/// polynomial quotient exists.
pub fn divide_one_minus<K: Ord + Clone>(
    f: &BTreeMap<K, i64>,
    times_m: impl Fn(&K) -> K,
    phi: impl Fn(&K) -> i64,
) -> Option<BTreeMap<K, i64>> {
    let top = f.keys().map(&phi).max()?;
    let mut rem: BTreeMap<K, i64> = f.clone();
    let mut g: BTreeMap<K, i64> = BTreeMap::new();
    while let Some(low) = rem.keys().map(&phi).min() {
        if low >= top {
            // Whatever remains can only be cancelled by terms of degree
            // >= top, whose images reach beyond top: inexact.
            return None;
        }
        let batch: Vec<(K, i64)> = rem.iter().filter(|(k, _)| phi(k) == low).map(|(k, c)| (k.clone(), *c)).collect();
        for (k, c) in batch {
            rem.remove(&k);
            *g.entry(k.clone()).or_insert(0) += c;
            let km = times_m(&k);
            let e = rem.entry(km.clone()).or_insert(0);
            *e += c;
            if *e == 0 {
                rem.remove(&km);
            }
        }
    }
    g.retain(|_, c| *c != 0);
    Some(g)
}

/// A truncated graded character: `sum_k terms[k] q^k`, known exactly for
/// `k >= q_min` and unknown below.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedCharacter {
    pub q_min: i64,
    terms: BTreeMap<i64, GroupAlgebraElement>,
}

impl fmt::Debug for GradedCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[q >= {}]", self.q_min)?;
        for (k, g) in self.terms.iter().rev() {
            write!(f, " q^{k}({g:?})")?;
        }
        Ok(())
    }
}

/// One serialized cell of a character.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CharRecord {
    pub weight: Vec<i64>,
    pub q: i64,
    pub coeff: i64,
}

/// The first cell where two characters differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub weight: Vec<i64>,
    pub q: i64,
    pub left: i64,
    pub right: i64,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coefficient of e^{:?} q^{}: {} vs {}", self.weight, self.q, self.left, self.right)
    }
}

impl GradedCharacter {
    pub fn zero(q_min: i64) -> Self {
        GradedCharacter { q_min, terms: BTreeMap::new() }
    }

    /// `e^nu q^k` (dropped when `k < q_min`).
    pub fn monomial(nu: &[i64], k: i64, q_min: i64) -> Self {
        let mut out = Self::zero(q_min);
        out.add_term(nu, k, 1);
        out
    }

    pub fn from_layer(g: GroupAlgebraElement, k: i64, q_min: i64) -> Self {
        let mut out = Self::zero(q_min);
        for (w, c) in g.terms() {
            out.add_term(w, k, c);
        }
        out
    }

    pub fn add_term(&mut self, nu: &[i64], k: i64, c: i64) {
        if k < self.q_min || c == 0 {
            return;
        }
        let layer = self.terms.entry(k).or_default();
        layer.add_term(nu.iter().copied().collect(), c);
        if layer.is_zero() {
            self.terms.remove(&k);
        }
    }

    /// The coefficient of `q^k` (zero when `k < q_min`).
    pub fn layer(&self, k: i64) -> GroupAlgebraElement {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn coeff(&self, nu: &[i64], k: i64) -> i64 {
        self.terms.get(&k).map_or(0, |g| g.coeff(nu))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest `q`-exponent present.
    pub fn top_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Re-truncates at a higher cutoff.
    pub fn truncate(&self, q_min: i64) -> Self {
        let q_min = q_min.max(self.q_min);
        GradedCharacter {
            q_min,
            terms: self.terms.range(q_min..).map(|(k, g)| (*k, g.clone())).collect(),
        }
    }

    /// Multiplication by `q^k`; the cutoff moves along.
    pub fn shift_q(&self, k: i64) -> Self {
        GradedCharacter {
            q_min: self.q_min + k,
            terms: self.terms.iter().map(|(d, g)| (d + k, g.clone())).collect(),
        }
    }

    /// Multiplication by a Laurent polynomial `sum c e^nu q^k` known exactly.
    pub fn mul_exact(&self, nu: &[i64], k: i64, c: i64) -> Self {
        let mut out = Self::zero(self.q_min + k);
        for (d, g) in &self.terms {
            for (w, a) in g.terms() {
                let v: Weight = w.iter().zip(nu).map(|(x, y)| x + y).collect();
                out.add_term(&v, d + k, a * c);
            }
        }
        out
    }

    /// All cells, sorted by weight then `q`.
    pub fn records(&self) -> Vec<CharRecord> {
        let mut out: Vec<CharRecord> = self
            .terms
            .iter()
            .flat_map(|(k, g)| g.terms().map(move |(w, c)| CharRecord { weight: w.to_vec(), q: *k, coeff: c }))
            .collect();
        out.sort();
        out
    }

    /// Compares two characters on the overlap of their windows; returns the
    /// first differing cell in record order.
    pub fn compare(&self, other: &Self) -> Option<Mismatch> {
        let cut = self.q_min.max(other.q_min);
        let a = self.truncate(cut);
        let b = other.truncate(cut);
        let mut cells: BTreeMap<(Vec<i64>, i64), (i64, i64)> = BTreeMap::new();
        for r in a.records() {
            cells.entry((r.weight, r.q)).or_default().0 = r.coeff;
        }
        for r in b.records() {
            cells.entry((r.weight, r.q)).or_default().1 = r.coeff;
        }
        cells
            .into_iter()
            .find(|(_, (x, y))| x != y)
            .map(|((weight, q), (left, right))| Mismatch { weight, q, left, right })
    }

    /// Equality on the overlap of the two windows.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.compare(other).is_none()
    }
}

impl Add for &GradedCharacter {
    type Output = GradedCharacter;
    fn add(self, rhs: &GradedCharacter) -> GradedCharacter {
        let q_min = self.q_min.max(rhs.q_min);
        let mut out = self.truncate(q_min);
        for (k, g) in rhs.terms.range(q_min..) {
            for (w, c) in g.terms() {
                out.add_term(w, *k, c);
            }
        }
        out
    }
}

impl Neg for &GradedCharacter {
    type Output = GradedCharacter;
    fn neg(self) -> GradedCharacter {
        GradedCharacter {
            q_min: self.q_min,
            terms: self.terms.iter().map(|(k, g)| (*k, -g)).collect(),
        }
    }
}

impl Sub for &GradedCharacter {
    type Output = GradedCharacter;
    fn sub(self, rhs: &GradedCharacter) -> GradedCharacter {
        self + &(-rhs)
    }
}

impl Mul for &GradedCharacter {
    type Output = GradedCharacter;
    /// The product is exact from `max(q_a, q_b, q_a + top_b, q_b + top_a)` on:
    /// the larger cutoff, further raised when an operand has positive degrees.
    fn mul(self, rhs: &GradedCharacter) -> GradedCharacter {
        let mut q_min = self.q_min.max(rhs.q_min);
        if let Some(t) = rhs.top_degree() {
            q_min = q_min.max(self.q_min + t);
        }
        if let Some(t) = self.top_degree() {
            q_min = q_min.max(rhs.q_min + t);
        }
        let mut out = GradedCharacter::zero(q_min);
        for (a, f) in &self.terms {
            for (b, g) in &rhs.terms {
                if a + b < q_min {
                    continue;
                }
                for (w, c) in (f * g).terms() {
                    out.add_term(w, a + b, c);
                }
            }
        }
        out
    }
}

/// Outcome of comparing two computed characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharComparison {
    pub left: GradedCharacter,
    pub right: GradedCharacter,
    pub mismatch: Option<Mismatch>,
}

impl CharComparison {
    pub fn new(left: GradedCharacter, right: GradedCharacter) -> Self {
        let mismatch = left.compare(&right);
        CharComparison { left, right, mismatch }
    }

    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

impl CartanDatum {
    /// `gch V_x^-(lambda)` truncated at `q_min`: the sum of `e^{fwt} q^{qwt}`
    /// over `SiLS_{⪰x}(lambda)`.
    pub fn gch_demazure(&self, lambda: &[i64], x: &AffineWeylElement, q_min: i64) -> Result<GradedCharacter> {
        self.gch_demazure_budget(lambda, x, q_min, &Budget::default())
    }

    pub fn gch_demazure_budget(&self, lambda: &[i64], x: &AffineWeylElement, q_min: i64, budget: &Budget) -> Result<GradedCharacter> {
        let mut out = GradedCharacter::zero(q_min);
        for p in self.enumerate_sils_budget(lambda, x, q_min, budget)? {
            let w = self.path_wt(&p);
            out.add_term(&w.finite, w.delta, 1);
        }
        Ok(out)
    }

    /// `s_i` acting on `Z[P]`.
    pub fn reflect_group_algebra(&self, i: usize, f: &GroupAlgebraElement) -> GroupAlgebraElement {
        let alpha = self.simple_root_weight(i);
        GroupAlgebraElement::from_terms(f.terms().map(|(w, c)| {
            let n = w[i - 1];
            (w.iter().zip(&alpha).map(|(a, b)| a - n * b).collect(), c)
        }))
    }

    /// The Demazure operator `D_i f = (f - e^{-alpha_i} s_i f) / (1 - e^{-alpha_i})`,
    /// computed by exact division.
    pub fn demazure_op(&self, i: usize, f: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        self.check_simple(i)?;
        let neg_alpha: Weight = self.simple_root_weight(i).iter().map(|c| -c).collect();
        let num = f - &self.reflect_group_algebra(i, f).shift(&neg_alpha);
        if num.is_zero() {
            return Ok(num);
        }
        let q = divide_one_minus(
            &num.terms,
            |w| w.iter().zip(&neg_alpha).map(|(a, b)| a + b).collect(),
            |w| -w[i - 1],
        )
        .ok_or_else(|| Error::Internal(format!("Demazure division by 1 - e^(-alpha_{i}) is not exact")))?;
        Ok(GroupAlgebraElement { terms: q })
    }

    /// `D_i` on a single monomial by the explicit string formula.
    pub fn demazure_monomial(&self, i: usize, mu: &[i64]) -> GroupAlgebraElement {
        let alpha = self.simple_root_weight(i);
        let n = mu[i - 1];
        let at = |k: i64| -> Weight { mu.iter().zip(&alpha).map(|(a, b)| a - k * b).collect() };
        if n >= 0 {
            GroupAlgebraElement::from_terms((0..=n).map(|k| (at(k), 1)))
        } else {
            GroupAlgebraElement::from_terms((1..=(-n - 1)).map(|k| (at(-k), -1)))
        }
    }

    /// `D_{i_1} ... D_{i_k} f` (the rightmost operator applied first).
    pub fn demazure_word_indices(&self, word: &[usize], f: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        let mut g = f.clone();
        for &i in word.iter().rev() {
            g = self.demazure_op(i, &g)?;
        }
        Ok(g)
    }

    /// `D_w f` along the stored reduced word of `w`.
    pub fn demazure_word(&self, w: &FiniteWeylElement, f: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        let word: Vec<usize> = w.word().iter().map(|&i| i as usize).collect();
        self.demazure_word_indices(&word, f)
    }

    /// `D_{w w0}(e^lambda)`, the character of the dual finite Demazure module.
    pub fn finite_demazure_char(&self, w: &FiniteWeylElement, lambda: &[i64]) -> Result<GroupAlgebraElement> {
        self.check_len(lambda)?;
        if !self.is_dominant(lambda) {
            return input("finite Demazure characters need a dominant weight");
        }
        self.demazure_word(&self.mul(w, self.w0()), &GroupAlgebraElement::monomial(lambda))
    }

    /// Character of `L(lambda)` via `D_{w0}`.
    pub fn weyl_character(&self, lambda: &[i64]) -> Result<GroupAlgebraElement> {
        self.finite_demazure_char(&self.identity(), lambda)
    }

    /// Compares `gch V_{x t_xi}^-(lambda)` with `q^{-<lambda, xi>} gch V_x^-(lambda)`
    /// on the window `q >= q_min - <lambda, xi>`.
    pub fn verify_gch_translation(&self, lambda: &[i64], x: &AffineWeylElement, xi: &[i64], q_min: i64) -> Result<CharComparison> {
        self.check_len(xi)?;
        let shift = -pair(lambda, xi);
        let left = self.gch_demazure(lambda, &self.right_translate(x, xi), q_min + shift)?;
        let right = self.gch_demazure(lambda, x, q_min)?.shift_q(shift);
        Ok(CharComparison::new(left, right))
    }
}
