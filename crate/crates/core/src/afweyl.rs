//! The affine Weyl group `W_af = W ⋉ Q^vee`, its ordinary and semi-infinite
//! Bruhat orders, the parabolic projection `Π^J` and Deodhar lifts.
//!
//! An element `w t_xi` is stored as the pair `(w, xi)`; products follow
//! `(w, xi)(v, zeta) = (wv, v^{-1} xi + zeta)`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::smallvec;

use crate::error::{input, precondition, Error, Result};
use crate::rootdata::{
    add, pair, scale, sub, CartanDatum, Coweight, FiniteWeylElement, ParabolicSet, Root, Weight,
};

/// Resource limits for searches. Both default to one million.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Maximum number of nodes visited by a graph search.
    pub max_nodes: usize,
    /// Maximum number of paths produced by an enumeration.
    pub max_paths: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: 1_000_000,
            max_paths: 1_000_000,
        }
    }
}

/// `w t_xi`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineWeylElement {
    pub w: FiniteWeylElement,
    pub xi: Coweight,
}

impl fmt::Debug for AffineWeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.xi.iter().all(|&c| c == 0) {
            write!(f, "{:?}", self.w)
        } else if self.w.is_identity() {
            write!(f, "t{:?}", self.xi.as_slice())
        } else {
            write!(f, "{:?}t{:?}", self.w, self.xi.as_slice())
        }
    }
}

impl AffineWeylElement {
    pub fn is_identity(&self) -> bool {
        self.w.is_identity() && self.xi.iter().all(|&c| c == 0)
    }

    pub fn is_translation(&self) -> bool {
        self.w.is_identity()
    }
}

/// Real affine root `alpha + n delta`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineRoot {
    pub root: Root,
    pub n: i64,
}

impl AffineRoot {
    pub fn is_positive(&self) -> bool {
        self.n > 0 || (self.n == 0 && self.root.iter().any(|&c| c > 0))
    }
}

impl CartanDatum {
    pub fn aff_identity(&self) -> AffineWeylElement {
        AffineWeylElement {
            w: self.identity(),
            xi: smallvec![0; self.rank()],
        }
    }

    pub fn translation(&self, xi: &[i64]) -> AffineWeylElement {
        AffineWeylElement {
            w: self.identity(),
            xi: xi.iter().copied().collect(),
        }
    }

    pub fn aff_from_finite(&self, w: &FiniteWeylElement) -> AffineWeylElement {
        AffineWeylElement {
            w: w.clone(),
            xi: smallvec![0; self.rank()],
        }
    }

    /// `w t_xi` as a value, checking lengths.
    pub fn aff_element(&self, w: &FiniteWeylElement, xi: &[i64]) -> Result<AffineWeylElement> {
        self.check_len(xi)?;
        Ok(AffineWeylElement {
            w: w.clone(),
            xi: xi.iter().copied().collect(),
        })
    }

    /// Simple affine reflection `s_i`, `i` in `0..=rank`; `s_0 = s_theta t_{-theta^vee}`.
    pub fn aff_s(&self, i: usize) -> AffineWeylElement {
        if i == 0 {
            AffineWeylElement {
                w: self.reflection(self.theta_index()).clone(),
                xi: scale(-1, self.theta_check()),
            }
        } else {
            self.aff_from_finite(self.s(i))
        }
    }

    /// `s_{i_1} ... s_{i_k} t_xi` for a word over `0..=rank`.
    pub fn aff_from_word(&self, word: &[usize], xi: &[i64]) -> Result<AffineWeylElement> {
        self.check_len(xi)?;
        let mut x = self.translation(xi);
        for &i in word.iter().rev() {
            if i > self.rank() {
                return input(format!("affine simple index {i} outside 0..={}", self.rank()));
            }
            x = self.aff_s_left(i, &x);
        }
        Ok(x)
    }

    pub fn aff_mul(&self, x: &AffineWeylElement, y: &AffineWeylElement) -> AffineWeylElement {
        let vinv = self.inverse(&y.w);
        AffineWeylElement {
            w: self.mul(&x.w, &y.w),
            xi: add(&self.act_coweight(&vinv, &x.xi), &y.xi),
        }
    }

    pub fn aff_inv(&self, x: &AffineWeylElement) -> AffineWeylElement {
        AffineWeylElement {
            w: self.inverse(&x.w),
            xi: scale(-1, &self.act_coweight(&x.w, &x.xi)),
        }
    }

    /// `x t_xi`.
    pub fn right_translate(&self, x: &AffineWeylElement, xi: &[i64]) -> AffineWeylElement {
        AffineWeylElement {
            w: x.w.clone(),
            xi: add(&x.xi, xi),
        }
    }

    /// `s_i x` for `i` in `0..=rank`.
    pub fn aff_s_left(&self, i: usize, x: &AffineWeylElement) -> AffineWeylElement {
        if i == 0 {
            // s_theta t_{-theta^vee} w t_xi = s_theta w t_{xi - w^{-1} theta^vee}
            let winv = self.inverse(&x.w);
            AffineWeylElement {
                w: self.mul(self.reflection(self.theta_index()), &x.w),
                xi: sub(&x.xi, &self.act_coweight(&winv, self.theta_check())),
            }
        } else {
            AffineWeylElement {
                w: self.mul(self.s(i), &x.w),
                xi: x.xi.clone(),
            }
        }
    }

    /// Simple affine root `alpha_i`; `alpha_0 = -theta + delta`.
    pub fn simple_affine_root(&self, i: usize) -> AffineRoot {
        if i == 0 {
            AffineRoot {
                root: scale(-1, self.theta()),
                n: 1,
            }
        } else {
            let mut r: Root = smallvec![0; self.rank()];
            r[i - 1] = 1;
            AffineRoot { root: r, n: 0 }
        }
    }

    /// `x (alpha + n delta) = w alpha + (n - <alpha, xi>) delta`.
    pub fn act_affine_root(&self, x: &AffineWeylElement, beta: &AffineRoot) -> AffineRoot {
        AffineRoot {
            root: self.act_root(&x.w, &beta.root),
            n: beta.n - self.root_pair(&beta.root, &x.xi),
        }
    }

    /// `s_{alpha + n delta} = s_alpha t_{n alpha^vee}`.
    pub fn affine_reflection(&self, beta: &AffineRoot) -> Result<AffineWeylElement> {
        let (k, sign) = self
            .root_index(&beta.root)
            .ok_or_else(|| Error::Input(format!("{:?} is not a root", beta.root.as_slice())))?;
        Ok(AffineWeylElement {
            w: self.reflection(k).clone(),
            xi: scale(sign * beta.n, self.positive_coroot(k)),
        })
    }

    /// Semi-infinite length `ell(w) + 2 <rho, xi>`.
    pub fn sell(&self, x: &AffineWeylElement) -> i64 {
        x.w.length() as i64 + 2 * x.xi.iter().sum::<i64>()
    }

    /// Ordinary length `sum_{alpha > 0} |<alpha, xi> + chi(w alpha < 0)|`.
    pub fn aff_length(&self, x: &AffineWeylElement) -> u64 {
        (0..self.positive_roots().len())
            .map(|k| {
                let chi = (self.sign_of_image(&x.w, k) < 0) as i64;
                (self.positive_root_pair(k, &x.xi) + chi).unsigned_abs()
            })
            .sum()
    }

    /// `ell(s_i x) < ell(x)`, i.e. `x^{-1} alpha_i < 0`.
    pub fn is_left_descent(&self, x: &AffineWeylElement, i: usize) -> bool {
        let wxi = self.act_coweight(&x.w, &x.xi);
        let winv = self.inverse(&x.w);
        if i == 0 {
            // x^{-1}(-theta + delta) = -w^{-1} theta + (1 - <theta, w xi>) delta
            let n = 1 - pair(self.positive_root_weight(self.theta_index()), &wxi);
            let s = self.sign_of_image(&winv, self.theta_index());
            n < 0 || (n == 0 && s > 0)
        } else {
            let n = pair(&self.simple_root_weight(i), &wxi);
            let s = if self.is_right_ascent(&winv, i) { 1 } else { -1 };
            n < 0 || (n == 0 && s < 0)
        }
    }

    /// A reduced word over `0..=rank` (leftmost factor first).
    pub fn aff_reduced_word(&self, x: &AffineWeylElement) -> Vec<usize> {
        let mut x = x.clone();
        let mut word = Vec::new();
        while !x.is_identity() {
            let i = (0..=self.rank())
                .find(|&i| self.is_left_descent(&x, i))
                .expect("non-identity element has a left descent");
            word.push(i);
            x = self.aff_s_left(i, &x);
        }
        word
    }

    /// Ordinary Bruhat order `x <= y` on `W_af`, by descent recursion:
    /// if `s` is a left descent of `y` then `x <= y` iff
    /// `sx <= sy` (when `s` is a descent of `x`) or `x <= sy` (otherwise).
    pub fn bruhat_leq(&self, x: &AffineWeylElement, y: &AffineWeylElement) -> bool {
        let mut x = x.clone();
        let mut y = y.clone();
        let mut lx = self.aff_length(&x);
        let mut ly = self.aff_length(&y);
        loop {
            if lx > ly {
                return false;
            }
            if ly == 0 {
                return lx == 0;
            }
            if lx == ly {
                return x == y;
            }
            let i = (0..=self.rank())
                .find(|&i| self.is_left_descent(&y, i))
                .expect("non-identity element has a left descent");
            y = self.aff_s_left(i, &y);
            ly -= 1;
            if self.is_left_descent(&x, i) {
                x = self.aff_s_left(i, &x);
                lx -= 1;
            }
        }
    }

    // ---- level-zero pairings ---------------------------------------------

    /// `<x mu, alpha_i^vee>` for a level-zero weight `mu`, `i` in `0..=rank`.
    pub fn level_zero_pair(&self, x: &AffineWeylElement, mu: &[i64], i: usize) -> i64 {
        self.weight_pair_simple(&self.act_weight(&x.w, mu), i)
    }

    /// `<mu, alpha_i^vee>` for a finite weight, with `alpha_0^vee = -theta^vee`.
    pub fn weight_pair_simple(&self, mu: &[i64], i: usize) -> i64 {
        if i == 0 {
            -pair(mu, self.theta_check())
        } else {
            mu[i - 1]
        }
    }

    /// `x (mu + k delta) = w mu + (k - <mu, xi>) delta`.
    pub fn act_level_zero(&self, x: &AffineWeylElement, mu: &[i64], k: i64) -> (Weight, i64) {
        (self.act_weight(&x.w, mu), k - pair(mu, &x.xi))
    }

    // ---- parabolic quotient ----------------------------------------------

    /// Membership in `(W^J)_af`: for every positive root `alpha` of `Delta_J`,
    /// `<alpha, xi> = -chi(w alpha < 0)`.
    pub fn in_parabolic_quotient(&self, x: &AffineWeylElement, j: ParabolicSet) -> bool {
        if j.is_empty() {
            return true;
        }
        self.parabolic_positive_roots(j).into_iter().all(|k| {
            let chi = (self.sign_of_image(&x.w, k) < 0) as i64;
            self.positive_root_pair(k, &x.xi) == -chi
        })
    }

    /// Projection `Π^J : W_af -> (W^J)_af`, computed by right multiplication
    /// with reflections in the simple roots of `(Delta_J)_af` that `x` sends
    /// to negative roots.
    pub fn pij(&self, x: &AffineWeylElement, j: ParabolicSet) -> AffineWeylElement {
        if j.is_empty() {
            return x.clone();
        }
        let tops = self.component_highest_roots(j);
        let mut x = x.clone();
        'outer: loop {
            for i in j.indices() {
                // x alpha_i = w alpha_i - <alpha_i, xi> delta
                let n = -x.xi.iter().zip(self.simple_root_weight(i)).map(|(a, b)| a * b).sum::<i64>();
                if n < 0 || (n == 0 && !self.is_right_ascent(&x.w, i)) {
                    x = AffineWeylElement {
                        w: self.mul(&x.w, self.s(i)),
                        xi: self.act_coweight(self.s(i), &x.xi),
                    };
                    continue 'outer;
                }
            }
            for &k in &tops {
                // x(-theta_c + delta) = -w theta_c + (1 + <theta_c, xi>) delta
                let n = 1 + self.positive_root_pair(k, &x.xi);
                if n < 0 || (n == 0 && self.sign_of_image(&x.w, k) > 0) {
                    let s = self.reflection(k);
                    x = AffineWeylElement {
                        w: self.mul(&x.w, s),
                        xi: sub(&self.act_coweight(s, &x.xi), self.positive_coroot(k)),
                    };
                    continue 'outer;
                }
            }
            return x;
        }
    }

    /// Whether `x'` lies in `Lift(x) = (Π^J)^{-1}(x)`.
    pub fn lift_contains(&self, x_prime: &AffineWeylElement, x: &AffineWeylElement, j: ParabolicSet) -> bool {
        self.pij(x_prime, j) == *x
    }

    /// Writes `y in (W^J)_af` as `v Π^J(t_zeta)` with `v in W^J`; returns `(v, zeta)`.
    pub fn parabolic_decomposition(&self, y: &AffineWeylElement, j: ParabolicSet) -> (FiniteWeylElement, Coweight) {
        (self.min_coset_rep(&y.w, j), y.xi.clone())
    }

    /// `[xi]^J`: the coordinates of `xi` outside `J` (those in `J` zeroed).
    pub fn project_out(&self, xi: &[i64], j: ParabolicSet) -> Coweight {
        xi.iter().enumerate().map(|(i, &c)| if j.contains(i + 1) { 0 } else { c }).collect()
    }

    /// `[xi]_J`: the coordinates of `xi` in `J`.
    pub fn project_in(&self, xi: &[i64], j: ParabolicSet) -> Coweight {
        xi.iter().enumerate().map(|(i, &c)| if j.contains(i + 1) { c } else { 0 }).collect()
    }

    // ---- semi-infinite Bruhat graph -------------------------------------

    /// Edges `x -> s_beta x` of the semi-infinite Bruhat graph on `(W^J)_af`.
    ///
    /// For each positive root `alpha` the affine roots `±alpha + n delta`
    /// share the finite reflection `s_alpha`, and
    /// `sell(s_beta x) - sell(x) = ell(s_alpha w) - ell(w) + 2 m ht(w^{-1} alpha^vee)`
    /// with `m = ±n`; so at most one `beta` per `alpha` raises `sell` by one,
    /// and it is found exactly without scanning `n`.
    pub fn si_covers(&self, x: &AffineWeylElement, j: ParabolicSet) -> Vec<(AffineRoot, AffineWeylElement)> {
        let winv = self.inverse(&x.w);
        let lw = x.w.length() as i64;
        let mut out = Vec::new();
        for k in 0..self.positive_roots().len() {
            let sw = self.mul(self.reflection(k), &x.w);
            let d = sw.length() as i64 - lw;
            let pre = self.act_coweight(&winv, self.positive_coroot(k));
            let h: i64 = pre.iter().sum();
            let num = 1 - d;
            if num % (2 * h) != 0 {
                continue;
            }
            let m = num / (2 * h);
            let (root, n) = if m >= 0 {
                (self.positive_roots()[k].clone(), m)
            } else {
                (scale(-1, &self.positive_roots()[k]), -m)
            };
            let y = AffineWeylElement {
                w: sw,
                xi: add(&x.xi, &scale(m, &pre)),
            };
            if self.in_parabolic_quotient(&y, j) {
                out.push((AffineRoot { root, n }, y));
            }
        }
        out.sort_by(|a, b| a.1.cmp(&b.1));
        out
    }

    /// Semi-infinite Bruhat order on `(W^J)_af`, by breadth-first search along
    /// upward edges, pruned by `sell` and by the monotonicity of `[xi]^J`
    /// along chains.
    pub fn si_leq(&self, x: &AffineWeylElement, y: &AffineWeylElement, j: ParabolicSet) -> Result<bool> {
        self.si_leq_budget(x, y, j, &Budget::default())
    }

    pub fn si_leq_budget(
        &self,
        x: &AffineWeylElement,
        y: &AffineWeylElement,
        j: ParabolicSet,
        budget: &Budget,
    ) -> Result<bool> {
        if !self.in_parabolic_quotient(x, j) || !self.in_parabolic_quotient(y, j) {
            return precondition("si_leq arguments must lie in (W^J)_af");
        }
        if x == y {
            return Ok(true);
        }
        let target = self.sell(y);
        if self.sell(x) >= target {
            return Ok(false);
        }
        let top = self.project_out(&y.xi, j);
        let fits = |z: &AffineWeylElement| z.xi.iter().zip(&top).enumerate().all(|(i, (a, b))| j.contains(i + 1) || a <= b);
        if !fits(x) {
            return Ok(false);
        }
        let mut level: HashSet<AffineWeylElement> = HashSet::from([x.clone()]);
        let mut visited = 1usize;
        let mut s = self.sell(x);
        while s < target {
            let mut next = HashSet::new();
            for z in &level {
                for (_, u) in self.si_covers(z, j) {
                    if fits(&u) && next.insert(u) {
                        visited += 1;
                    }
                }
            }
            if visited > budget.max_nodes {
                return Err(Error::Budget(format!("si_leq visited more than {} nodes", budget.max_nodes)));
            }
            s += 1;
            if s == target {
                return Ok(next.contains(y));
            }
            if next.is_empty() {
                return Ok(false);
            }
            level = next;
        }
        Ok(false)
    }

    /// Independent decision procedure for `x ⪯ y` on `W_af` (equivalently on
    /// `(W^J)_af`, where the order is the restriction): for `m` large,
    /// `x ⪯ y` iff `y t_{-2m rho^vee} <= x t_{-2m rho^vee}` in the ordinary
    /// Bruhat order. `m` starts where both translations are deep in the
    /// antidominant chamber and the answer is confirmed at `m + 1`.
    pub fn si_leq_translation(&self, x: &AffineWeylElement, y: &AffineWeylElement) -> Result<bool> {
        let n_pos = self.positive_roots().len() as i64;
        let span = (self.sell(y) - self.sell(x)).abs();
        let reach = (1..=self.rank())
            .map(|i| {
                let a = self.simple_root_weight(i);
                pair(&a, &x.xi).max(pair(&a, &y.xi))
            })
            .max()
            .unwrap_or(0);
        let mut m = 1.max((span + 1) / 2).max((reach + n_pos + 2) / 2 + 1);
        let decide = |m: i64| {
            let shift = scale(-m, self.two_rho_check());
            self.bruhat_leq(&self.right_translate(y, &shift), &self.right_translate(x, &shift))
        };
        while m <= 64 {
            let a = decide(m);
            if a == decide(m + 1) {
                return Ok(a);
            }
            m += 1;
        }
        Err(Error::Budget("translation oracle did not stabilise by m = 64".into()))
    }

    /// `pij` applied to a finite Weyl element.
    pub fn pij_finite(&self, w: &FiniteWeylElement, j: ParabolicSet) -> AffineWeylElement {
        self.pij(&self.aff_from_finite(w), j)
    }

    /// `W_af^{>=0} = W × Q^{vee,+}`.
    pub fn is_w_af_ge0(&self, x: &AffineWeylElement) -> bool {
        x.xi.iter().all(|&c| c >= 0)
    }

    // ---- Deodhar lifts ---------------------------------------------------

    /// Shortest sequence `i_1, ..., i_N` over `0..=rank` with
    /// `<s_{i_{k-1}} ... s_{i_1} x Lambda, alpha_{i_k}^vee> > 0` at each step
    /// and `s_{i_N} ... s_{i_1} x` a translation (`Lambda` regular dominant).
    /// Depends only on the finite part of `x`.
    pub fn ascent_to_translation(&self, w: &FiniteWeylElement) -> Result<Vec<usize>> {
        let rho = self.rho().clone();
        let mut prev: HashMap<FiniteWeylElement, (FiniteWeylElement, usize)> = HashMap::new();
        let mut queue = VecDeque::from([w.clone()]);
        let mut seen = HashSet::from([w.clone()]);
        let theta_refl = self.reflection(self.theta_index());
        while let Some(u) = queue.pop_front() {
            if u.is_identity() {
                let mut path = Vec::new();
                let mut cur = u;
                while let Some((p, i)) = prev.get(&cur) {
                    path.push(*i);
                    cur = p.clone();
                }
                path.reverse();
                return Ok(path);
            }
            let ur = self.act_weight(&u, &rho);
            for i in 0..=self.rank() {
                if self.weight_pair_simple(&ur, i) > 0 {
                    let v = if i == 0 { self.mul(theta_refl, &u) } else { self.mul(self.s(i), &u) };
                    if seen.insert(v.clone()) {
                        prev.insert(v.clone(), (u.clone(), i));
                        queue.push_back(v);
                    }
                }
            }
        }
        Err(Error::Internal("no ascending path to a translation".into()))
    }

    /// `min Lift_{⪰x}(y)`: the ⪯-minimum of `{y' in W_af : Π^J(y') = y, y' ⪰ x}`.
    ///
    /// Requires `y in (W^J)_af` and `y ⪰ Π^J(x)`.
    pub fn min_lift(&self, x: &AffineWeylElement, y: &AffineWeylElement, j: ParabolicSet) -> Result<AffineWeylElement> {
        self.check_len(&x.xi)?;
        self.check_len(&y.xi)?;
        j.validate(self.rank())?;
        if !self.in_parabolic_quotient(y, j) {
            return precondition("min_lift: y is not in (W^J)_af");
        }
        if !self.si_leq(&self.pij(x, j), y, j)? {
            return precondition("min_lift: y is not ⪰ Π^J(x)");
        }
        self.min_lift_unchecked(x, y, j)
    }

    /// [`Self::min_lift`] without the precondition checks.
    pub fn min_lift_unchecked(
        &self,
        x: &AffineWeylElement,
        y: &AffineWeylElement,
        j: ParabolicSet,
    ) -> Result<AffineWeylElement> {
        if j.is_empty() {
            return Ok(y.clone());
        }
        if j == ParabolicSet::full(self.rank()) {
            return Ok(x.clone());
        }
        let lambda = self.weight_with_stabilizer(j);
        let path = self.ascent_to_translation(&x.w)?;
        Ok(self.min_lift_rec(x, y, j, &lambda, &path))
    }

    /// Recursion for [`Self::min_lift`]. While `x` is not a translation, the
    /// first ascent `i` towards a translation decides the case by the sign of
    /// `<y lambda, alpha_i^vee>`:
    /// positive: `s_i minlift(s_i x, s_i y)`;
    /// zero: `y'' = minlift(s_i x, y)`, then `y''` or `s_i y''` whichever is
    /// ascending in direction `i`;
    /// negative: `minlift(s_i x, y)`.
    /// Once `x = t_xi`, peel `y = v Π^J(t_zeta)` down to `v = e` with
    /// `minlift(x, y) = s_i minlift(x, s_i y)` and finish with
    /// `t_{zeta - [zeta - xi]_J}`.
    fn min_lift_rec(
        &self,
        x: &AffineWeylElement,
        y: &AffineWeylElement,
        j: ParabolicSet,
        lambda: &[i64],
        path: &[usize],
    ) -> AffineWeylElement {
        if let Some((&i, rest)) = path.split_first() {
            let sx = self.aff_s_left(i, x);
            match self.level_zero_pair(y, lambda, i).signum() {
                1 => {
                    let r = self.min_lift_rec(&sx, &self.aff_s_left(i, y), j, lambda, rest);
                    self.aff_s_left(i, &r)
                }
                0 => {
                    let r = self.min_lift_rec(&sx, y, j, lambda, rest);
                    if self.level_zero_pair(&r, self.rho(), i) > 0 {
                        r
                    } else {
                        self.aff_s_left(i, &r)
                    }
                }
                _ => self.min_lift_rec(&sx, y, j, lambda, rest),
            }
        } else {
            let ul = self.act_weight(&y.w, lambda);
            if let Some(i) = (1..=self.rank()).find(|&i| ul[i - 1] < 0) {
                let r = self.min_lift_rec(x, &self.aff_s_left(i, y), j, lambda, path);
                self.aff_s_left(i, &r)
            } else {
                let gamma = self.project_in(&sub(&y.xi, &x.xi), j);
                self.translation(&sub(&y.xi, &gamma))
            }
        }
    }
}
