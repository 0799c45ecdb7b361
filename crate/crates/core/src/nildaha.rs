//! The polynomial representation of the nil-DAHA on `Z[q, q^{-1}][P]` and
//! the translation-class formulas for its action on the semi-infinite flag
//! K-group.
//!
//! # Conventions
//!
//! Level-zero weights `nu + k delta` are written as Laurent monomials
//! `e^nu q^{k * DELTA_EXPONENT}`, so `s_0` acts by
//! `s_0(e^nu q^k) = e^{s_theta nu} q^{k + DELTA_EXPONENT <nu, theta^vee>}` and
//! `e(alpha_0) = q^{DELTA_EXPONENT} e^{-theta}`. The generators act by
//!
//! * `e(nu)`: multiplication by `e^nu`;
//! * `T_i = D_i - 1` with `D_i f = (f - e^{-alpha_i} s_i f) / (1 - e^{-alpha_i})`
//!   for every `i` in `I_af`.
//!
//! [`CartanDatum::verify_nildaha`] certifies that this choice satisfies all
//! defining relations; both signs of `DELTA_EXPONENT` do, as long as `s_0`
//! and `e(alpha_0)` use the same one.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{precondition, Error, Result};
use crate::gchar::{divide_one_minus, GroupAlgebraElement};
use crate::rootdata::{pair, CartanDatum, Coweight, Weight};

/// The exponent `k` in `e^delta -> q^k`.
pub const DELTA_EXPONENT: i64 = 1;

/// A finitely supported Laurent polynomial `sum c e^nu q^k` (no cutoff).
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentCharacter {
    terms: BTreeMap<(Weight, i64), i64>,
}

impl fmt::Debug for LaurentCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, ((w, k), c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}e{:?}q^{k}", w.as_slice())?;
        }
        Ok(())
    }
}

/// One cell of a [`LaurentCharacter`], for serialization.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LaurentRecord {
    pub weight: Vec<i64>,
    pub q: i64,
    pub coeff: i64,
}

impl LaurentCharacter {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `e^nu q^k`.
    pub fn monomial(nu: &[i64], k: i64) -> Self {
        let mut out = Self::zero();
        out.add_term(nu, k, 1);
        out
    }

    /// The constant `1`.
    pub fn one(rank: usize) -> Self {
        Self::monomial(&vec![0; rank], 0)
    }

    /// Embeds `Z[P]` as the `q`-degree-0 part.
    pub fn from_group_algebra(g: &GroupAlgebraElement) -> Self {
        let mut out = Self::zero();
        for (w, c) in g.terms() {
            out.add_term(w, 0, c);
        }
        out
    }

    pub fn add_term(&mut self, nu: &[i64], k: i64, c: i64) {
        if c == 0 {
            return;
        }
        let key = (nu.iter().copied().collect::<Weight>(), k);
        let e = self.terms.entry(key.clone()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, nu: &[i64], k: i64) -> i64 {
        self.terms.get(&(nu.iter().copied().collect(), k)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, i64, i64)> {
        self.terms.iter().map(|((w, k), c)| (w, *k, *c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The `q`-degree-`k` part.
    pub fn layer(&self, k: i64) -> GroupAlgebraElement {
        GroupAlgebraElement::from_terms(self.terms().filter(|t| t.1 == k).map(|(w, _, c)| (w.clone(), c)))
    }

    /// Multiplication by `e^nu q^k`.
    pub fn shift(&self, nu: &[i64], k: i64) -> Self {
        let mut out = Self::zero();
        for (w, d, c) in self.terms() {
            let v: Weight = w.iter().zip(nu).map(|(a, b)| a + b).collect();
            out.add_term(&v, d + k, c);
        }
        out
    }

    /// The involution `e^nu q^k -> e^{-nu} q^{-k}`.
    pub fn dual(&self) -> Self {
        let mut out = Self::zero();
        for (w, k, c) in self.terms() {
            let v: Weight = w.iter().map(|a| -a).collect();
            out.add_term(&v, -k, c);
        }
        out
    }

    /// Sorted cells.
    pub fn records(&self) -> Vec<LaurentRecord> {
        self.terms().map(|(w, q, coeff)| LaurentRecord { weight: w.to_vec(), q, coeff }).collect()
    }
}

impl Add for &LaurentCharacter {
    type Output = LaurentCharacter;
    fn add(self, rhs: &LaurentCharacter) -> LaurentCharacter {
        let mut out = self.clone();
        for (w, k, c) in rhs.terms() {
            out.add_term(w, k, c);
        }
        out
    }
}

impl Neg for &LaurentCharacter {
    type Output = LaurentCharacter;
    fn neg(self) -> LaurentCharacter {
        LaurentCharacter { terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect() }
    }
}

impl Sub for &LaurentCharacter {
    type Output = LaurentCharacter;
    fn sub(self, rhs: &LaurentCharacter) -> LaurentCharacter {
        self + &(-rhs)
    }
}

impl Mul for &LaurentCharacter {
    type Output = LaurentCharacter;
    fn mul(self, rhs: &LaurentCharacter) -> LaurentCharacter {
        let mut out = LaurentCharacter::zero();
        for (w, k, c) in rhs.terms() {
            for (v, d, a) in self.terms() {
                let s: Weight = w.iter().zip(v).map(|(x, y)| x + y).collect();
                out.add_term(&s, k + d, a * c);
            }
        }
        out
    }
}

/// The polynomial representation for one root datum and one choice of the
/// `delta` convention.
///
/// `s0_delta` is the exponent used by `s_0` and `delta` the one used by
/// `e(alpha_0)`; they agree in every honest convention. Setting them apart
/// gives a deliberately inconsistent representation for negative controls.
#[derive(Debug, Clone, Copy)]
pub struct NilDahaRep<'a> {
    pub datum: &'a CartanDatum,
    pub delta: i64,
    pub s0_delta: i64,
}

impl<'a> NilDahaRep<'a> {
    /// The documented convention.
    pub fn new(datum: &'a CartanDatum) -> Self {
        Self::with_convention(datum, DELTA_EXPONENT)
    }

    pub fn with_convention(datum: &'a CartanDatum, delta: i64) -> Self {
        NilDahaRep { datum, delta, s0_delta: delta }
    }

    /// `s_0` with the opposite `q`-sign from `e(alpha_0)`.
    pub fn corrupted(datum: &'a CartanDatum) -> Self {
        NilDahaRep { datum, delta: DELTA_EXPONENT, s0_delta: -DELTA_EXPONENT }
    }

    fn rank(&self) -> usize {
        self.datum.rank()
    }

    fn theta_weight(&self) -> Weight {
        self.datum.root_to_weight(self.datum.theta())
    }

    /// `<nu, alpha_i^vee>` for `i` in `I_af`.
    fn coroot_pair(&self, i: usize, nu: &[i64]) -> i64 {
        if i == 0 {
            -pair(nu, self.datum.theta_check())
        } else {
            nu[i - 1]
        }
    }

    /// `alpha_i` as a Laurent monomial exponent `(weight, q-degree)`.
    pub fn alpha(&self, i: usize) -> (Weight, i64) {
        if i == 0 {
            (self.theta_weight().iter().map(|c| -c).collect(), self.delta)
        } else {
            (self.datum.simple_root_weight(i), 0)
        }
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i > self.rank() {
            return Err(Error::Input(format!("affine simple index {i} out of range 0..={}", self.rank())));
        }
        Ok(())
    }

    /// `s_i` on a single exponent.
    fn reflect_exponent(&self, i: usize, nu: &[i64], k: i64) -> (Weight, i64) {
        if i == 0 {
            let c = pair(nu, self.datum.theta_check());
            let th = self.theta_weight();
            (nu.iter().zip(&th).map(|(a, b)| a - c * b).collect(), k + self.s0_delta * c)
        } else {
            let n = nu[i - 1];
            let a = self.datum.simple_root_weight(i);
            (nu.iter().zip(&a).map(|(x, y)| x - n * y).collect(), k)
        }
    }

    /// `s_i` for `i` in `I_af`.
    pub fn reflect(&self, i: usize, f: &LaurentCharacter) -> LaurentCharacter {
        let mut out = LaurentCharacter::zero();
        for (w, k, c) in f.terms() {
            let (v, d) = self.reflect_exponent(i, w, k);
            out.add_term(&v, d, c);
        }
        out
    }

    /// `s_0`.
    pub fn s0_act(&self, f: &LaurentCharacter) -> LaurentCharacter {
        self.reflect(0, f)
    }

    /// `g` with `(1 - e(alpha_i)^sign) g = f`, if it exists. The grading
    /// `sign <nu, alpha_i^vee>` is positive on `e(alpha_i)^sign`.
    fn divide(&self, i: usize, sign: i64, f: &LaurentCharacter) -> Option<LaurentCharacter> {
        if f.is_zero() {
            return Some(LaurentCharacter::zero());
        }
        let (a, ka) = self.alpha(i);
        let m: Weight = a.iter().map(|c| sign * c).collect();
        let km = sign * ka;
        let q = divide_one_minus(
            &f.terms,
            |(w, k)| (w.iter().zip(&m).map(|(x, y)| x + y).collect(), k + km),
            |(w, _)| sign * self.coroot_pair(i, w),
        )?;
        Some(LaurentCharacter { terms: q })
    }

    /// `D_i f = (f - e^{-alpha_i} s_i f) / (1 - e^{-alpha_i})`.
    pub fn demazure(&self, i: usize, f: &LaurentCharacter) -> Result<LaurentCharacter> {
        self.check_index(i)?;
        let (a, ka) = self.alpha(i);
        let neg: Weight = a.iter().map(|c| -c).collect();
        let num = f - &self.reflect(i, f).shift(&neg, -ka);
        self.divide(i, -1, &num)
            .ok_or_else(|| Error::Internal(format!("division by 1 - e(-alpha_{i}) is not exact")))
    }

    /// `T_i = D_i - 1`.
    pub fn t_op(&self, i: usize, f: &LaurentCharacter) -> Result<LaurentCharacter> {
        Ok(&self.demazure(i, f)? - f)
    }

    /// `e(nu)`: multiplication by `e^nu`.
    pub fn e_op_mult(&self, nu: &[i64], f: &LaurentCharacter) -> LaurentCharacter {
        f.shift(nu, 0)
    }

    /// `(e(s_i nu) - e(nu)) / (1 - e(alpha_i))`.
    pub fn cross_factor(&self, i: usize, nu: &[i64]) -> Result<LaurentCharacter> {
        self.check_index(i)?;
        let (s, k) = self.reflect_exponent(i, nu, 0);
        let num = &LaurentCharacter::monomial(&s, k) - &LaurentCharacter::monomial(nu, 0);
        self.divide(i, 1, &num)
            .ok_or_else(|| Error::Internal(format!("division by 1 - e(alpha_{i}) is not exact")))
    }

    /// Order of `s_i s_j` in the affine Weyl group, `None` when infinite.
    pub fn braid_order(&self, i: usize, j: usize) -> Option<usize> {
        let a = |i: usize, j: usize| -> i64 {
            // <alpha_j, alpha_i^vee>
            let (w, _) = self.alpha(j);
            self.coroot_pair(i, &w)
        };
        match a(i, j) * a(j, i) {
            0 => Some(2),
            1 => Some(3),
            2 => Some(4),
            3 => Some(6),
            _ => None,
        }
    }
}

/// One violated relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationFailure {
    /// `"quadratic"`, `"braid"`, `"lattice"` or `"cross"`.
    pub relation: String,
    pub i: usize,
    pub j: Option<usize>,
    pub nu: Option<Vec<i64>>,
    pub input: String,
    pub detail: String,
}

impl fmt::Display for RelationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} relation fails at i = {}", self.relation, self.i)?;
        if let Some(j) = self.j {
            write!(f, ", j = {j}")?;
        }
        if let Some(nu) = &self.nu {
            write!(f, ", nu = {nu:?}")?;
        }
        write!(f, " on {}: {}", self.input, self.detail)
    }
}

/// Result of [`CartanDatum::verify_nildaha`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilDahaReport {
    pub samples: usize,
    /// Number of checks per relation family.
    pub checked: BTreeMap<String, usize>,
    /// Failures in sample order.
    pub failures: Vec<RelationFailure>,
}

impl NilDahaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Whether some failure concerns relation `relation` at index `i`.
    pub fn fails_at(&self, relation: &str, i: usize) -> bool {
        self.failures.iter().any(|f| f.relation == relation && f.i == i)
    }
}

fn random_laurent(rng: &mut ChaCha8Rng, n: usize) -> LaurentCharacter {
    let mut f = LaurentCharacter::zero();
    let terms = rng.gen_range(1..=3);
    for _ in 0..terms {
        let nu: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        f.add_term(&nu, rng.gen_range(-2..=2), rng.gen_range(1..=2) * if rng.gen_bool(0.5) { 1 } else { -1 });
    }
    if f.is_zero() {
        f = LaurentCharacter::one(n);
    }
    f
}

fn random_weight(rng: &mut ChaCha8Rng, n: usize) -> Weight {
    (0..n).map(|_| rng.gen_range(-3..=3)).collect()
}

impl NilDahaRep<'_> {
    fn apply_word(&self, word: &[usize], f: &LaurentCharacter) -> Result<LaurentCharacter> {
        let mut g = f.clone();
        for &i in word.iter().rev() {
            g = self.t_op(i, &g)?;
        }
        Ok(g)
    }

    /// All relation checks on one sample.
    fn check_sample(&self, sample: u64, seed: u64) -> (Vec<&'static str>, Vec<RelationFailure>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(sample);
        let n = self.rank();
        let f = random_laurent(&mut rng, n);
        let nu1 = random_weight(&mut rng, n);
        let nu2 = random_weight(&mut rng, n);
        let mut checked = Vec::new();
        let mut failures = Vec::new();
        let input = format!("{f:?}");
        let fail = |relation: &str, i: usize, j: Option<usize>, nu: Option<&Weight>, detail: String| RelationFailure {
            relation: relation.to_string(),
            i,
            j,
            nu: nu.map(|v| v.to_vec()),
            input: input.clone(),
            detail,
        };
        for i in 0..=n {
            // T_i (T_i + 1) = 0.
            checked.push("quadratic");
            match self.t_op(i, &f).and_then(|t| Ok((self.t_op(i, &t)?, t))) {
                Ok((tt, t)) if (&tt + &t).is_zero() => {}
                Ok((tt, t)) => failures.push(fail("quadratic", i, None, None, format!("T^2 f + T f = {:?}", &tt + &t))),
                Err(e) => failures.push(fail("quadratic", i, None, None, e.to_string())),
            }
            // T_i e(nu) - e(s_i nu) T_i = (e(s_i nu) - e(nu)) / (1 - e(alpha_i)).
            checked.push("cross");
            let result = (|| -> Result<Option<String>> {
                let (s, k) = self.reflect_exponent(i, &nu1, 0);
                let left = &self.t_op(i, &self.e_op_mult(&nu1, &f))? - &self.t_op(i, &f)?.shift(&s, k);
                let right = &self.cross_factor(i, &nu1)? * &f;
                Ok((left != right).then(|| format!("left {left:?} != right {right:?}")))
            })();
            match result {
                Ok(None) => {}
                Ok(Some(d)) => failures.push(fail("cross", i, None, Some(&nu1), d)),
                Err(e) => failures.push(fail("cross", i, None, Some(&nu1), e.to_string())),
            }
            for j in i + 1..=n {
                let Some(m) = self.braid_order(i, j) else { continue };
                checked.push("braid");
                let word = |a: usize, b: usize| -> Vec<usize> { (0..m).map(|t| if t % 2 == 0 { a } else { b }).collect() };
                match (self.apply_word(&word(i, j), &f), self.apply_word(&word(j, i), &f)) {
                    (Ok(a), Ok(b)) if a == b => {}
                    (Ok(a), Ok(b)) => failures.push(fail("braid", i, Some(j), None, format!("{a:?} != {b:?}"))),
                    (Err(e), _) | (_, Err(e)) => failures.push(fail("braid", i, Some(j), None, e.to_string())),
                }
            }
        }
        // e(nu1) e(nu2) = e(nu1 + nu2) and e(0) = 1.
        checked.push("lattice");
        let sum: Weight = nu1.iter().zip(&nu2).map(|(a, b)| a + b).collect();
        if self.e_op_mult(&nu1, &self.e_op_mult(&nu2, &f)) != self.e_op_mult(&sum, &f)
            || self.e_op_mult(&vec![0; n], &f) != f
        {
            failures.push(fail("lattice", 0, None, Some(&nu1), "group law fails".into()));
        }
        (checked, failures)
    }

    /// Checks all defining relations on `samples` seeded random inputs.
    /// Samples are independent streams of one seed, so the report does not
    /// depend on how the work is scheduled.
    pub fn verify(&self, samples: usize, seed: u64) -> NilDahaReport {
        let results: Vec<_> = (0..samples as u64).into_par_iter().map(|s| self.check_sample(s, seed)).collect();
        let mut checked: BTreeMap<String, usize> = BTreeMap::new();
        let mut failures = Vec::new();
        for (c, f) in results {
            for name in c {
                *checked.entry(name.to_string()).or_default() += 1;
            }
            failures.extend(f);
        }
        NilDahaReport { samples, checked, failures }
    }
}

impl CartanDatum {
    /// Verifies the nil-DAHA relations in the documented convention, or in
    /// the corrupted one when `corrupt` is set.
    pub fn verify_nildaha(&self, samples: usize, seed: u64, corrupt: bool) -> NilDahaReport {
        let rep = if corrupt { NilDahaRep::corrupted(self) } else { NilDahaRep::new(self) };
        rep.verify(samples, seed)
    }
}

// ---- translation classes --------------------------------------------------

/// Which Schubert class a [`TranslationKClass`] refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClassTag {
    /// `Q(t_xi)`.
    Translation,
    /// `Q(s_0 t_xi)`.
    S0Translation,
}

/// The class `[C_lambda ⊗ O_{Q(tag)}(mu)]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TranslationKClass {
    pub tag: ClassTag,
    pub xi: Coweight,
    /// Line-bundle twist `mu`.
    pub bundle_twist: Weight,
    /// Character twist `lambda`.
    pub character_twist: Weight,
}

impl CartanDatum {
    /// `te(nu)` for a finite weight `nu`, as a Laurent monomial.
    fn te(&self, nu: &[i64]) -> LaurentCharacter {
        LaurentCharacter::monomial(nu, 0)
    }

    /// The operator `T~_i` on a translation class, evaluated literally:
    ///
    /// * `i != 0`: `(te(-lambda) - te(-s_i lambda + alpha_i)) / (1 - te(alpha_i)) [O_{Q(t_xi)}(mu)]`;
    /// * `i = 0`: `(te(-lambda) - te(-s_0 lambda)) / (1 - te(alpha_0)) [O_{Q(t_xi)}(mu)]
    ///   + te(-s_0 lambda) [O_{Q(s_0 t_xi)}(mu)]`.
    ///
    /// The output classes carry no character twist; zero terms are dropped.
    pub fn bfu_translation_action(&self, i: usize, c: &TranslationKClass) -> Result<Vec<(TranslationKClass, LaurentCharacter)>> {
        let rep = NilDahaRep::new(self);
        rep.check_index(i)?;
        self.check_len(&c.xi)?;
        self.check_len(&c.bundle_twist)?;
        self.check_len(&c.character_twist)?;
        if c.tag != ClassTag::Translation {
            return Err(Error::Input("the action is only given on translation classes [O_{Q(t_xi)}(mu)]".into()));
        }
        if c.xi.iter().any(|&v| v < 0) {
            return precondition("xi must lie in Q^{vee,+}");
        }
        let neg_lambda: Weight = c.character_twist.iter().map(|v| -v).collect();
        let target = |tag: ClassTag| TranslationKClass {
            tag,
            xi: c.xi.clone(),
            bundle_twist: c.bundle_twist.clone(),
            character_twist: smallvec::smallvec![0; self.rank()],
        };
        let head = self.te(&neg_lambda);
        let mut out = Vec::new();
        if i == 0 {
            let tail = rep.s0_act(&head);
            let coeff = rep
                .divide(0, 1, &(&head - &tail))
                .ok_or_else(|| Error::Internal("division by 1 - te(alpha_0) is not exact".into()))?;
            out.push((target(ClassTag::Translation), coeff));
            out.push((target(ClassTag::S0Translation), tail));
        } else {
            let (s, _) = rep.reflect_exponent(i, &neg_lambda, 0);
            let a = self.simple_root_weight(i);
            let v: Weight = s.iter().zip(&a).map(|(x, y)| x + y).collect();
            let coeff = rep
                .divide(i, 1, &(&head - &self.te(&v)))
                .ok_or_else(|| Error::Internal(format!("division by 1 - te(alpha_{i}) is not exact")))?;
            out.push((target(ClassTag::Translation), coeff));
        }
        out.retain(|(_, g)| !g.is_zero());
        Ok(out)
    }
}
