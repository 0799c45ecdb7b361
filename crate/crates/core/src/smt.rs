//! Standard monomial theory for tensor products of semi-infinite LS paths:
//! the tensor-product crystal, standardness, defining chains, the initial
//! direction `Deo(eta, x)`, Demazure membership, the component bijection
//! `Theta`, and windowed verification of the isomorphism
//! `SM(lambda + mu) = SiLS(lambda + mu)` and of the Demazure decomposition.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::afweyl::AffineWeylElement;
use crate::error::{input, precondition, Error, Result};
use crate::gchar::{CharComparison, GradedCharacter};
use crate::rootdata::{pair, CartanDatum, Coweight, ParabolicSet, Weight};
use crate::silspath::{AffineWeight, ParTuple, SiLSPath};

/// `pi ⊗ eta` with `pi` of shape `lambda` and `eta` of shape `mu`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorPair {
    pub left: SiLSPath,
    pub right: SiLSPath,
}

impl fmt::Debug for TensorPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} ⊗ {:?}", self.left, self.right)
    }
}

/// Lifts `x'_1 ⪰ ... ⪰ x'_s ⪰ y'_1 ⪰ ... ⪰ y'_p` of the directions of a pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefiningChain {
    pub left: Vec<AffineWeylElement>,
    pub right: Vec<AffineWeylElement>,
}

impl DefiningChain {
    pub fn initial(&self) -> &AffineWeylElement {
        &self.left[0]
    }

    pub fn final_element(&self) -> &AffineWeylElement {
        self.right.last().expect("nonempty chain")
    }
}

/// Which tensor-product convention to use. `Swapped` acts as if the factors
/// were exchanged; it is a deliberately wrong rule used as a negative control.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorRule {
    Standard,
    Swapped,
}

/// Result of [`CartanDatum::verify_smt_iso`].
#[derive(Debug, Clone)]
pub struct SmtReport {
    /// Number of pairs in the window of `SM_{⪰e}(lambda + mu)`.
    pub pairs: usize,
    /// First pair whose image under a root operator is not standard.
    pub closure_failure: Option<String>,
    /// Character of the window against `gch V_e^-(lambda + mu)`.
    pub character: CharComparison,
    /// `|Par(lambda + mu)|` and the number of admissible triples in the window.
    pub theta_counts: (usize, usize),
    pub theta_failure: Option<String>,
    /// Number of `(rho, chi, xi)` checked against the standardness criterion.
    pub tx_checked: usize,
    pub tx_failure: Option<String>,
}

impl SmtReport {
    pub fn passed(&self) -> bool {
        self.closure_failure.is_none()
            && self.character.passed()
            && self.theta_failure.is_none()
            && self.theta_counts.0 == self.theta_counts.1
            && self.tx_failure.is_none()
    }

    /// The first failed check, if any.
    pub fn failure(&self) -> Option<String> {
        if let Some(f) = &self.closure_failure {
            return Some(format!("closure: {f}"));
        }
        if let Some(m) = &self.character.mismatch {
            return Some(format!("character: {m}"));
        }
        if let Some(f) = &self.theta_failure {
            return Some(format!("Theta: {f}"));
        }
        if self.theta_counts.0 != self.theta_counts.1 {
            return Some(format!("Theta counts {} vs {}", self.theta_counts.0, self.theta_counts.1));
        }
        self.tx_failure.as_ref().map(|f| format!("standardness criterion: {f}"))
    }
}

/// Result of [`CartanDatum::verify_dem_decomposition`].
#[derive(Debug, Clone)]
pub struct DemReport {
    /// Number of paths `eta` summed over.
    pub etas: usize,
    pub character: CharComparison,
}

impl DemReport {
    pub fn passed(&self) -> bool {
        self.character.passed()
    }
}

fn add_weights(a: &AffineWeight, b: &AffineWeight) -> AffineWeight {
    AffineWeight {
        finite: a.finite.iter().zip(&b.finite).map(|(x, y)| x + y).collect(),
        delta: a.delta + b.delta,
    }
}

impl CartanDatum {
    // ---- tensor product crystal ------------------------------------------

    pub fn tensor_wt(&self, p: &TensorPair) -> AffineWeight {
        add_weights(&self.path_wt(&p.left), &self.path_wt(&p.right))
    }

    pub fn tensor_eps(&self, i: usize, p: &TensorPair) -> i64 {
        let c = self.affine_weight_pair(&self.path_wt(&p.left), i);
        self.eps(i, &p.left).max(self.eps(i, &p.right) - c)
    }

    pub fn tensor_phi(&self, i: usize, p: &TensorPair) -> i64 {
        let c = self.affine_weight_pair(&self.path_wt(&p.right), i);
        self.phi(i, &p.right).max(self.phi(i, &p.left) + c)
    }

    /// `e_i(pi ⊗ eta) = e_i pi ⊗ eta` if `phi_i(pi) >= eps_i(eta)`, else
    /// `pi ⊗ e_i eta`.
    pub fn tensor_e(&self, i: usize, p: &TensorPair) -> Option<TensorPair> {
        self.tensor_e_rule(i, p, TensorRule::Standard)
    }

    /// `f_i(pi ⊗ eta) = f_i pi ⊗ eta` if `phi_i(pi) > eps_i(eta)`, else
    /// `pi ⊗ f_i eta`.
    pub fn tensor_f(&self, i: usize, p: &TensorPair) -> Option<TensorPair> {
        self.tensor_f_rule(i, p, TensorRule::Standard)
    }

    pub fn tensor_e_rule(&self, i: usize, p: &TensorPair, rule: TensorRule) -> Option<TensorPair> {
        let left_first = match rule {
            TensorRule::Standard => self.phi(i, &p.left) >= self.eps(i, &p.right),
            TensorRule::Swapped => self.phi(i, &p.right) < self.eps(i, &p.left),
        };
        if left_first {
            self.e_op(i, &p.left).map(|l| TensorPair { left: l, right: p.right.clone() })
        } else {
            self.e_op(i, &p.right).map(|r| TensorPair { left: p.left.clone(), right: r })
        }
    }

    pub fn tensor_f_rule(&self, i: usize, p: &TensorPair, rule: TensorRule) -> Option<TensorPair> {
        let left_first = match rule {
            TensorRule::Standard => self.phi(i, &p.left) > self.eps(i, &p.right),
            TensorRule::Swapped => self.phi(i, &p.right) <= self.eps(i, &p.left),
        };
        if left_first {
            self.f_op(i, &p.left).map(|l| TensorPair { left: l, right: p.right.clone() })
        } else {
            self.f_op(i, &p.right).map(|r| TensorPair { left: p.left.clone(), right: r })
        }
    }

    // ---- initial directions and standardness ------------------------------

    /// `Deo(eta, x)`: starting from `min Lift_{⪰x}(kappa(eta))`, lift each
    /// direction of `eta` from right to left as the minimum lift above the
    /// previous one, and return the lift of `iota(eta)`.
    pub fn deo(&self, eta: &SiLSPath, x: &AffineWeylElement) -> Result<AffineWeylElement> {
        Ok(self.deo_chain(eta, x)?.remove(0))
    }

    /// All lifts `ỹ_1 ⪰ ... ⪰ ỹ_p` built by [`Self::deo`].
    pub fn deo_chain(&self, eta: &SiLSPath, x: &AffineWeylElement) -> Result<Vec<AffineWeylElement>> {
        self.check_len(&x.xi)?;
        let k = self.stabilizer(&eta.shape);
        let kappa = eta.final_direction();
        let xk = self.pij(x, k);
        if xk != *kappa && !self.si_leq_translation(&xk, kappa)? {
            return input("Deo(eta, x) needs kappa(eta) ⪰ Π^K(x)");
        }
        let mut out = Vec::with_capacity(eta.directions.len());
        let mut cur = x.clone();
        for y in eta.directions.iter().rev() {
            cur = self.min_lift_unchecked(&cur, y, k)?;
            out.push(cur.clone());
        }
        out.reverse();
        Ok(out)
    }

    /// `gamma_K = sum_{k in K} alpha_k^vee`.
    fn gamma(&self, k: ParabolicSet) -> Coweight {
        (1..=self.rank()).map(|i| k.contains(i) as i64).collect()
    }

    /// Standardness test at the witness `x_N = kappa(eta) t_{-N gamma_K}`:
    /// `kappa(pi) ⪰ Π^J(Deo(eta, x_N))`.
    fn standard_at(&self, p: &TensorPair, n: i64) -> Result<(bool, AffineWeylElement)> {
        let j = self.stabilizer(&p.left.shape);
        let k = self.stabilizer(&p.right.shape);
        let shift: Coweight = self.gamma(k).iter().map(|c| -n * c).collect();
        let x = self.right_translate(p.right.final_direction(), &shift);
        let deo = self.deo(&p.right, &x)?;
        let target = self.pij(&deo, j);
        let ok = target == *p.left.final_direction() || self.si_leq_translation(&target, p.left.final_direction())?;
        Ok((ok, x))
    }

    /// Smallest `N` at which the witness is trusted: beyond the spread of the
    /// translation parts involved.
    fn witness_depth(&self, p: &TensorPair) -> i64 {
        let spread = p
            .left
            .directions
            .iter()
            .chain(&p.right.directions)
            .flat_map(|x| x.xi.iter().map(|c| c.abs()))
            .max()
            .unwrap_or(0);
        let theta_max = self.theta_check().iter().copied().max().unwrap_or(1);
        2 * spread + self.positive_roots().len() as i64 * theta_max + 1
    }

    /// Stable answer of [`Self::standard_at`] together with the witness used.
    fn standard_witness(&self, p: &TensorPair) -> Result<(bool, AffineWeylElement)> {
        let k = self.stabilizer(&p.right.shape);
        if k.is_empty() {
            return self.standard_at(p, 0);
        }
        let start = self.witness_depth(p);
        let mut n = start;
        while n <= start + 32 {
            let a = self.standard_at(p, n)?;
            if a.0 == self.standard_at(p, n + 1)?.0 && a.0 == self.standard_at(p, n + 2)?.0 {
                return Ok(a);
            }
            n += 1;
        }
        Err(Error::Budget("standardness witness did not stabilise".into()))
    }

    /// Condition (SP): some `x ⪰ y` in `W_af` with `Π^J(x) = kappa(pi)` and
    /// `Π^K(y) = iota(eta)`. Decided through
    /// `kappa(pi) ⪰ Π^J(Deo(eta, x))` for a deep lift `x` of `kappa(eta)`;
    /// since `Deo(eta, x t_zeta) = Deo(eta, x) t_zeta` for `zeta in Q^vee_K`,
    /// deepening the witness only helps.
    pub fn is_standard(&self, p: &TensorPair) -> Result<bool> {
        Ok(self.standard_witness(p)?.0)
    }

    /// A defining chain for a standard pair (`None` otherwise): the lifts
    /// `ỹ_q` of the right directions from [`Self::deo_chain`] at the witness,
    /// and `x'_u = x_u z` with `z = Π^J(ỹ_1)^{-1} ỹ_1`.
    pub fn find_defining_chain(&self, p: &TensorPair) -> Result<Option<DefiningChain>> {
        let (ok, x) = self.standard_witness(p)?;
        if !ok {
            return Ok(None);
        }
        let j = self.stabilizer(&p.left.shape);
        let right = self.deo_chain(&p.right, &x)?;
        let z = self.aff_mul(&self.aff_inv(&self.pij(&right[0], j)), &right[0]);
        let left: Vec<AffineWeylElement> = p.left.directions.iter().map(|d| self.aff_mul(d, &z)).collect();
        let chain = DefiningChain { left, right };
        if !self.is_defining_chain(p, &chain)? {
            return Err(Error::Internal(format!("constructed chain for {p:?} is not a defining chain")));
        }
        Ok(Some(chain))
    }

    /// Checks condition (DC) for a candidate chain.
    pub fn is_defining_chain(&self, p: &TensorPair, c: &DefiningChain) -> Result<bool> {
        let j = self.stabilizer(&p.left.shape);
        let k = self.stabilizer(&p.right.shape);
        if c.left.len() != p.left.directions.len() || c.right.len() != p.right.directions.len() {
            return Ok(false);
        }
        if c.left.iter().zip(&p.left.directions).any(|(a, b)| self.pij(a, j) != *b)
            || c.right.iter().zip(&p.right.directions).any(|(a, b)| self.pij(a, k) != *b)
        {
            return Ok(false);
        }
        let all: Vec<&AffineWeylElement> = c.left.iter().chain(&c.right).collect();
        for w in all.windows(2) {
            if w[0] != w[1] && !self.si_leq_translation(w[1], w[0])? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Condition (D3): `kappa(eta) ⪰ Π^K(x)` and `kappa(pi) ⪰ Π^J(Deo(eta, x))`.
    pub fn demazure_membership(&self, p: &TensorPair, x: &AffineWeylElement) -> Result<bool> {
        let j = self.stabilizer(&p.left.shape);
        let k = self.stabilizer(&p.right.shape);
        let xk = self.pij(x, k);
        if xk != *p.right.final_direction() && !self.si_leq_translation(&xk, p.right.final_direction())? {
            return Ok(false);
        }
        let target = self.pij(&self.deo(&p.right, x)?, j);
        Ok(target == *p.left.final_direction() || self.si_leq_translation(&target, p.left.final_direction())?)
    }

    /// `SM_{⪰x}(lambda + mu)` restricted to total `qwt >= q_min`, via (D3).
    pub fn sm_demazure(&self, lambda: &[i64], mu: &[i64], x: &AffineWeylElement, q_min: i64) -> Result<Vec<TensorPair>> {
        let eta_window = q_min + pair(lambda, &x.xi).min(0);
        let mut cache: HashMap<(AffineWeylElement, i64), Vec<SiLSPath>> = HashMap::new();
        let mut out = Vec::new();
        for eta in self.enumerate_sils(mu, x, eta_window)? {
            let q_eta = self.path_wt(&eta).delta;
            let deo = self.deo(&eta, x)?;
            let window = q_min - q_eta;
            let j = self.stabilizer(lambda);
            let key = (self.pij(&deo, j), window);
            if !cache.contains_key(&key) {
                let v = self.enumerate_sils(lambda, &key.0, window)?;
                cache.insert(key.clone(), v);
            }
            for pi in &cache[&key] {
                out.push(TensorPair { left: pi.clone(), right: eta.clone() });
            }
        }
        out.sort();
        Ok(out)
    }

    // ---- the component bijection -----------------------------------------

    /// `Theta(rho, chi, xi)`: merges the partitions of `lambda` and `mu` with
    /// the translation `xi = sum c_i alpha_i^vee` supported off `J ∪ K`.
    pub fn theta_map(&self, rho: &ParTuple, chi: &ParTuple, xi: &[i64], lambda: &[i64], mu: &[i64]) -> Result<ParTuple> {
        self.check_len(xi)?;
        self.check_par(rho, lambda)?;
        self.check_par(chi, mu)?;
        let mut parts = Vec::new();
        for i in 1..=self.rank() {
            let (m, n) = (lambda[i - 1], mu[i - 1]);
            let c = xi[i - 1];
            if (m == 0 || n == 0) && c != 0 {
                return input(format!("xi must be supported off J ∪ K (index {i})"));
            }
            let part = match (m == 0, n == 0) {
                (true, true) => Vec::new(),
                (true, false) => chi.parts[i - 1].clone(),
                (false, true) => rho.parts[i - 1].clone(),
                (false, false) => {
                    if c < chi.entry(i, 1) {
                        return input(format!("need c_{i} >= chi^({i})_1"));
                    }
                    let mut v: Vec<i64> = (1..m as usize).map(|k| rho.entry(i, k) + c).collect();
                    v.push(c);
                    v.extend((1..n as usize).map(|k| chi.entry(i, k)));
                    while v.last() == Some(&0) {
                        v.pop();
                    }
                    v
                }
            };
            parts.push(part);
        }
        Ok(ParTuple { parts })
    }

    /// inverse of [`Self::theta_map`].
    pub fn theta_inverse(&self, varrho: &ParTuple, lambda: &[i64], mu: &[i64]) -> Result<(ParTuple, ParTuple, Coweight)> {
        let sum: Weight = lambda.iter().zip(mu).map(|(a, b)| a + b).collect();
        self.check_par(varrho, &sum)?;
        let (mut rho, mut chi) = (Vec::new(), Vec::new());
        let mut xi: Coweight = smallvec::smallvec![0; self.rank()];
        for i in 1..=self.rank() {
            let (m, n) = (lambda[i - 1], mu[i - 1]);
            let p = &varrho.parts[i - 1];
            match (m == 0, n == 0) {
                (true, true) => {
                    rho.push(Vec::new());
                    chi.push(Vec::new());
                }
                (true, false) => {
                    rho.push(Vec::new());
                    chi.push(p.clone());
                }
                (false, true) => {
                    rho.push(p.clone());
                    chi.push(Vec::new());
                }
                (false, false) => {
                    let c = varrho.entry(i, m as usize);
                    xi[i - 1] = c;
                    let mut r: Vec<i64> = (1..m as usize).map(|k| varrho.entry(i, k) - c).collect();
                    let mut h: Vec<i64> = (1..n as usize).map(|k| varrho.entry(i, m as usize + k)).collect();
                    r.retain(|&v| v > 0);
                    h.retain(|&v| v > 0);
                    rho.push(r);
                    chi.push(h);
                }
            }
        }
        Ok((ParTuple { parts: rho }, ParTuple { parts: chi }, xi))
    }

    /// `(t_xi · pi_rho) ⊗ pi_chi`.
    pub fn extremal_pair(&self, rho: &ParTuple, chi: &ParTuple, xi: &[i64], lambda: &[i64], mu: &[i64]) -> Result<TensorPair> {
        let left = self.extremal_weyl_action(&self.translation(xi), &self.par_to_path(rho, lambda)?);
        Ok(TensorPair { left, right: self.par_to_path(chi, mu)? })
    }

    // ---- verification ------------------------------------------------------

    /// Windowed check of `SM(lambda + mu) ≅ SiLS(lambda + mu)`:
    /// closure of the standard pairs under root operators, the graded
    /// character of `SM_{⪰e}` against `gch V_e^-(lambda + mu)`, bijectivity of
    /// `Theta` with the weight bookkeeping, and the standardness criterion for
    /// extremal pairs with translation coordinates up to `xi_bound`.
    pub fn verify_smt_iso(&self, lambda: &[i64], mu: &[i64], q_min: i64, xi_bound: i64, rule: TensorRule) -> Result<SmtReport> {
        self.check_len(lambda)?;
        self.check_len(mu)?;
        if !self.is_dominant(lambda) || !self.is_dominant(mu) {
            return input("shapes must be dominant");
        }
        let n = self.rank();
        let e = self.aff_identity();
        let sum: Weight = lambda.iter().zip(mu).map(|(a, b)| a + b).collect();
        let pairs = self.sm_demazure(lambda, mu, &e, q_min)?;
        // (a) closure
        let mut closure_failure = None;
        'outer: for p in &pairs {
            for i in 0..=n {
                for (name, img) in [("e", self.tensor_e_rule(i, p, rule)), ("f", self.tensor_f_rule(i, p, rule))] {
                    if let Some(img) = img {
                        if !self.is_standard(&img)? {
                            closure_failure = Some(format!("{name}_{i}({p:?}) = {img:?} is not standard"));
                            break 'outer;
                        }
                    }
                }
            }
        }
        // (b) characters
        let mut left = GradedCharacter::zero(q_min);
        for p in &pairs {
            let w = self.tensor_wt(p);
            left.add_term(&w.finite, w.delta, 1);
        }
        let right = self.gch_demazure(&sum, &e, q_min)?;
        let character = CharComparison::new(left, right);
        // (c) Theta within the window
        let j = self.stabilizer(lambda);
        let k = self.stabilizer(mu);
        let target: BTreeSet<ParTuple> = self.par_elements(&sum, -q_min).into_iter().collect();
        let free: Vec<usize> = (1..=n).filter(|&i| !j.contains(i) && !k.contains(i)).collect();
        let mut images: BTreeMap<ParTuple, (ParTuple, ParTuple, Coweight)> = BTreeMap::new();
        let mut theta_failure = None;
        let rhos = self.par_elements(lambda, -q_min);
        let chis = self.par_elements(mu, -q_min);
        for rho in &rhos {
            for chi in &chis {
                for xi in coweight_box(n, &free, 0, -q_min) {
                    if free.iter().any(|&i| xi[i - 1] < chi.entry(i, 1)) {
                        continue;
                    }
                    let t = self.theta_map(rho, chi, &xi, lambda, mu)?;
                    let size = t.size();
                    let expect = rho.size() + chi.size() + pair(lambda, &xi);
                    if size != expect && theta_failure.is_none() {
                        theta_failure = Some(format!("|Theta({rho:?}, {chi:?}, {xi:?})| = {size}, expected {expect}"));
                    }
                    if size > -q_min {
                        continue;
                    }
                    if self.theta_inverse(&t, lambda, mu)? != (rho.clone(), chi.clone(), xi.clone()) && theta_failure.is_none() {
                        theta_failure = Some(format!("Theta is not inverted at {t:?}"));
                    }
                    if let Some(prev) = images.insert(t.clone(), (rho.clone(), chi.clone(), xi.clone())) {
                        if theta_failure.is_none() {
                            theta_failure = Some(format!("Theta({prev:?}) = Theta({rho:?}, {chi:?}, {xi:?})"));
                        }
                    }
                    let pair_w = self.tensor_wt(&self.extremal_pair(rho, chi, &xi, lambda, mu)?);
                    if (pair_w.finite.as_slice() != sum.as_slice() || pair_w.delta != -size) && theta_failure.is_none() {
                        theta_failure = Some(format!("weight of the extremal pair for {t:?} is {pair_w:?}"));
                    }
                }
            }
        }
        if theta_failure.is_none() && images.keys().cloned().collect::<BTreeSet<_>>() != target {
            theta_failure = Some("Theta image differs from Par(lambda + mu) in the window".into());
        }
        // (d) standardness of extremal pairs versus c_i >= chi_1.
        let mut tx_failure = None;
        let mut tx_checked = 0;
        for rho in rhos.iter().filter(|r| r.size() <= 2) {
            for chi in chis.iter().filter(|c| c.size() <= 2) {
                for xi in coweight_box(n, &free, -xi_bound, xi_bound) {
                    let p = self.extremal_pair(rho, chi, &xi, lambda, mu)?;
                    let predicted = free.iter().all(|&i| xi[i - 1] >= chi.entry(i, 1));
                    tx_checked += 1;
                    if self.is_standard(&p)? != predicted && tx_failure.is_none() {
                        tx_failure = Some(format!("rho={rho:?} chi={chi:?} xi={xi:?}: standard = {}", !predicted));
                    }
                }
            }
        }
        Ok(SmtReport {
            pairs: pairs.len(),
            closure_failure,
            character,
            theta_counts: (target.len(), images.len()),
            theta_failure,
            tx_checked,
            tx_failure,
        })
    }

    /// `gch V_x^-(lambda + mu)` against
    /// `sum_{eta in SiLS_{⪰x}(mu)} e^{fwt(eta)} q^{qwt(eta)} gch V_{Deo(eta, x)}^-(lambda)`
    /// on the window `q >= q_min`.
    pub fn verify_dem_decomposition(&self, lambda: &[i64], mu: &[i64], x: &AffineWeylElement, q_min: i64) -> Result<DemReport> {
        self.check_len(lambda)?;
        self.check_len(mu)?;
        if !self.is_dominant(lambda) || !self.is_dominant(mu) {
            return input("shapes must be dominant");
        }
        let sum: Weight = lambda.iter().zip(mu).map(|(a, b)| a + b).collect();
        let left = self.gch_demazure(&sum, x, q_min)?;
        let j = self.stabilizer(lambda);
        // Paths pi above x have qwt(pi) <= -<lambda, xi_x>, so eta needs a
        // deeper window when that bound is positive.
        let eta_window = q_min + pair(lambda, &x.xi).min(0);
        let etas = self.enumerate_sils(mu, x, eta_window)?;
        let mut cache: HashMap<(AffineWeylElement, i64), GradedCharacter> = HashMap::new();
        let mut right = GradedCharacter::zero(q_min);
        for eta in &etas {
            let w = self.path_wt(eta);
            let deo = self.pij(&self.deo(eta, x)?, j);
            let window = q_min - w.delta;
            let key = (deo, window);
            if !cache.contains_key(&key) {
                let g = self.gch_demazure(lambda, &key.0, window)?;
                cache.insert(key.clone(), g);
            }
            let term = cache[&key].mul_exact(&w.finite, w.delta, 1);
            right = &right + &term;
        }
        Ok(DemReport { etas: etas.len(), character: CharComparison::new(left, right) })
    }

    /// Checks the precondition shared by the Demazure-type operations.
    pub fn check_deo_precondition(&self, eta: &SiLSPath, x: &AffineWeylElement) -> Result<()> {
        let k = self.stabilizer(&eta.shape);
        if !self.si_leq_translation(&self.pij(x, k), eta.final_direction())? {
            return precondition("kappa(eta) ⪰ Π^K(x) fails");
        }
        Ok(())
    }
}

/// Coweights supported on `free` with coordinates in `[lo, hi]`.
fn coweight_box(n: usize, free: &[usize], lo: i64, hi: i64) -> Vec<Coweight> {
    let mut out = vec![smallvec::smallvec![0; n]];
    for &i in free {
        let mut next = Vec::new();
        for v in &out {
            for c in lo..=hi {
                let mut w: Coweight = v.clone();
                w[i - 1] = c;
                next.push(w);
            }
        }
        out = next;
    }
    out
}
