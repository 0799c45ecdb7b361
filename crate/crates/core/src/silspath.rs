//! Semi-infinite Lakshmibai–Seshadri paths of a dominant shape `lambda`:
//! validation, root operators, weights, the affine Weyl group action, the
//! translation operators `T_xi`, extremal elements indexed by `Par(lambda)`,
//! the projection to quantum LS paths and bounded enumeration.
//!
//! A path is `(x_1, ..., x_s; a_0, ..., a_s)` with directions in `(W^J)_af`
//! (`J` the stabilizer of `lambda`) and exact rational breaks
//! `0 = a_0 < ... < a_s = 1`. Its direction on `[a_{u-1}, a_u]` is the level-zero
//! weight `x_u lambda = w_u lambda - <lambda, xi_u> delta`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use smallvec::smallvec;

use crate::afweyl::{AffineWeylElement, Budget};
use crate::error::{input, Error, Result};
use crate::rootdata::{pair, CartanDatum, Coweight, FiniteWeylElement, Weight};

/// Exact rational numbers used for breakpoints and the height function.
pub type Rational = Ratio<i64>;

/// A semi-infinite LS path.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SiLSPath {
    pub shape: Weight,
    pub directions: Vec<AffineWeylElement>,
    pub breaks: Vec<Rational>,
}

impl fmt::Debug for SiLSPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.directions.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x:?}")?;
        }
        write!(f, ";")?;
        for (k, a) in self.breaks.iter().enumerate() {
            write!(f, "{}{a}", if k > 0 { ", " } else { " " })?;
        }
        write!(f, ")")
    }
}

impl SiLSPath {
    /// Initial direction `iota(pi) = x_1`.
    pub fn initial(&self) -> &AffineWeylElement {
        &self.directions[0]
    }

    /// Final direction `kappa(pi) = x_s`.
    pub fn final_direction(&self) -> &AffineWeylElement {
        self.directions.last().expect("a path has at least one direction")
    }
}

/// A level-zero affine weight `finite + delta * delta`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineWeight {
    pub finite: Weight,
    pub delta: i64,
}

impl AffineWeight {
    /// `fwt`: the finite part.
    pub fn fwt(&self) -> &Weight {
        &self.finite
    }

    /// `qwt`: the coefficient of `delta`.
    pub fn qwt(&self) -> i64 {
        self.delta
    }
}

/// An `I`-tuple of partitions; `parts[i - 1]` is the partition for index `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParTuple {
    pub parts: Vec<Vec<i64>>,
}

impl ParTuple {
    pub fn empty(rank: usize) -> Self {
        ParTuple { parts: vec![Vec::new(); rank] }
    }

    /// `|rho|`, the sum of all entries.
    pub fn size(&self) -> i64 {
        self.parts.iter().flatten().sum()
    }

    /// `rho^{(i)}_k` (1-based `i` and `k`), zero beyond the length.
    pub fn entry(&self, i: usize, k: usize) -> i64 {
        if k == 0 {
            return 0;
        }
        self.parts[i - 1].get(k - 1).copied().unwrap_or(0)
    }
}

/// A quantum LS path: the image of a semi-infinite LS path under `cl`.
/// Directions are minimal coset representatives in `W^J`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QLSPath {
    pub shape: Weight,
    pub directions: Vec<FiniteWeylElement>,
    pub breaks: Vec<Rational>,
}

/// Breakpoints and values of the height function `H_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightFunction {
    /// `(t, H(t))` at every break of the path; `H` is linear in between.
    pub points: Vec<(Rational, Rational)>,
    /// Global minimum (a nonpositive integer).
    pub min: i64,
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(n)
}

/// Piecewise-linear surgery shared by semi-infinite and quantum LS paths.
/// `slopes[u]` is `<x_u lambda, alpha_i^vee>`. Returns the new directions and
/// breaks after reflecting the interval picked out by `e_i` (when `raise`) or
/// `f_i`, merging adjacent equal directions, or `None` for the zero element.
fn surgery<D: Clone + PartialEq>(
    dirs: &[D],
    breaks: &[Rational],
    slopes: &[i64],
    raise: bool,
    reflect: impl Fn(&D) -> D,
) -> Option<(Vec<D>, Vec<Rational>)> {
    let s = dirs.len();
    let mut h = vec![Rational::zero(); s + 1];
    for u in 0..s {
        h[u + 1] = h[u] + (breaks[u + 1] - breaks[u]) * slopes[u];
    }
    let m = *h.iter().min().expect("nonempty");
    debug_assert!(m.is_integer(), "local minima of H are integers");
    let (t0, t1) = if raise {
        if m >= Rational::zero() {
            return None;
        }
        let q = (0..=s).find(|&u| h[u] == m).expect("minimum attained at a break");
        let target = m + Rational::one();
        let mut t0 = None;
        for u in (1..=q).rev() {
            let (lo, hi) = (h[u - 1], h[u]);
            if hi == target {
                t0 = Some(breaks[u]);
                break;
            }
            if (lo - target) * (hi - target) < Rational::zero() || lo == target {
                let c = rat(slopes[u - 1]);
                t0 = Some(breaks[u - 1] + (target - lo) / c);
                break;
            }
        }
        (t0.expect("H(0) = 0 >= m + 1"), breaks[q])
    } else {
        if h[s] - m < Rational::one() {
            return None;
        }
        let p = (0..=s).rev().find(|&u| h[u] == m).expect("minimum attained at a break");
        let target = m + Rational::one();
        let mut t1 = None;
        for u in p + 1..=s {
            let (lo, hi) = (h[u - 1], h[u]);
            if hi >= target {
                let c = rat(slopes[u - 1]);
                t1 = Some(breaks[u - 1] + (target - lo) / c);
                break;
            }
        }
        (breaks[p], t1.expect("H(1) >= m + 1"))
    };
    // Cut at t0 and t1, reflect the pieces inside, merge equal neighbours.
    let mut pieces: Vec<(D, Rational, Rational)> = Vec::new();
    for u in 0..s {
        let (a, b) = (breaks[u], breaks[u + 1]);
        let mut cuts = vec![a];
        for t in [t0, t1] {
            if a < t && t < b {
                cuts.push(t);
            }
        }
        cuts.push(b);
        for w in cuts.windows(2) {
            let inside = w[0] >= t0 && w[1] <= t1;
            let d = if inside { reflect(&dirs[u]) } else { dirs[u].clone() };
            pieces.push((d, w[0], w[1]));
        }
    }
    let mut out_d: Vec<D> = Vec::new();
    let mut out_b: Vec<Rational> = vec![Rational::zero()];
    for (d, _, b) in pieces {
        if out_d.last() == Some(&d) {
            *out_b.last_mut().unwrap() = b;
        } else {
            out_d.push(d);
            out_b.push(b);
        }
    }
    Some((out_d, out_b))
}

fn height(breaks: &[Rational], slopes: &[i64]) -> HeightFunction {
    let mut points = vec![(Rational::zero(), Rational::zero())];
    let mut v = Rational::zero();
    for (u, &c) in slopes.iter().enumerate() {
        v += (breaks[u + 1] - breaks[u]) * c;
        points.push((breaks[u + 1], v));
    }
    let min = points.iter().map(|p| p.1).min().unwrap();
    debug_assert!(min.is_integer());
    HeightFunction { points, min: min.to_integer() }
}

/// Breaks with denominators at most `m`, strictly between 0 and 1, ascending.
pub fn admissible_breaks(m: i64) -> Vec<Rational> {
    let set: BTreeSet<Rational> = (2..=m).flat_map(|k| (1..k).map(move |j| Rational::new(j, k))).collect();
    set.into_iter().collect()
}

impl CartanDatum {
    /// The straight-line path `pi_lambda = (e; 0, 1)`.
    pub fn straight_path(&self, lambda: &[i64]) -> SiLSPath {
        SiLSPath {
            shape: lambda.iter().copied().collect(),
            directions: vec![self.aff_identity()],
            breaks: vec![Rational::zero(), Rational::one()],
        }
    }

    /// Builds a path, checking only its shape (rank, dominance, breaks).
    pub fn make_path(&self, lambda: &[i64], directions: Vec<AffineWeylElement>, breaks: Vec<Rational>) -> Result<SiLSPath> {
        let p = SiLSPath {
            shape: lambda.iter().copied().collect(),
            directions,
            breaks,
        };
        self.check_path_shape(&p)?;
        Ok(p)
    }

    fn check_path_shape(&self, p: &SiLSPath) -> Result<()> {
        self.check_len(&p.shape)?;
        if !self.is_dominant(&p.shape) {
            return input("path shape must be dominant");
        }
        if p.directions.is_empty() {
            return input("a path needs at least one direction");
        }
        if p.breaks.len() != p.directions.len() + 1 {
            return input("a path with s directions needs s + 1 breaks");
        }
        if p.breaks[0] != Rational::zero() || *p.breaks.last().unwrap() != Rational::one() {
            return input("breaks must start at 0 and end at 1");
        }
        if p.breaks.windows(2).any(|w| w[0] >= w[1]) {
            return input("breaks must be strictly increasing");
        }
        for x in &p.directions {
            self.check_len(&x.xi)?;
        }
        Ok(())
    }

    /// The `a`-chain condition: a directed path from `lo` to `hi` in the
    /// semi-infinite Bruhat graph on `(W^J)_af` using only edges `x -> s_beta x`
    /// with `a <x lambda, beta^vee>` integral.
    pub fn a_chain_exists(
        &self,
        lambda: &[i64],
        lo: &AffineWeylElement,
        hi: &AffineWeylElement,
        a: Rational,
        budget: &Budget,
    ) -> Result<bool> {
        let j = self.stabilizer(lambda);
        let target = self.sell(hi);
        if lo == hi || self.sell(lo) >= target {
            return Ok(false);
        }
        let top = self.project_out(&hi.xi, j);
        let fits = |z: &AffineWeylElement| z.xi.iter().zip(&top).enumerate().all(|(i, (x, t))| j.contains(i + 1) || x <= t);
        if !fits(lo) {
            return Ok(false);
        }
        let den = *a.denom();
        let mut level: HashSet<AffineWeylElement> = HashSet::from([lo.clone()]);
        let mut visited = 1usize;
        let mut s = self.sell(lo);
        while s < target {
            let mut next = HashSet::new();
            for z in &level {
                let zl = self.act_weight(&z.w, lambda);
                for (beta, u) in self.si_covers(z, j) {
                    let c = pair(&zl, &self.coroot_of(&beta.root).expect("root"));
                    if c % den == 0 && fits(&u) && next.insert(u) {
                        visited += 1;
                    }
                }
            }
            if visited > budget.max_nodes {
                return Err(Error::Budget(format!("a-chain search visited more than {} nodes", budget.max_nodes)));
            }
            s += 1;
            if s == target {
                return Ok(next.contains(hi));
            }
            if next.is_empty() {
                return Ok(false);
            }
            level = next;
        }
        Ok(false)
    }

    /// Whether `pi` is a semi-infinite LS path. Malformed breaks are an input
    /// error; violated path conditions give `Ok(false)`.
    pub fn validate_path(&self, pi: &SiLSPath) -> Result<bool> {
        self.validate_path_budget(pi, &Budget::default())
    }

    pub fn validate_path_budget(&self, pi: &SiLSPath, budget: &Budget) -> Result<bool> {
        self.check_path_shape(pi)?;
        let j = self.stabilizer(&pi.shape);
        if !pi.directions.iter().all(|x| self.in_parabolic_quotient(x, j)) {
            return Ok(false);
        }
        for u in 0..pi.directions.len() - 1 {
            if !self.a_chain_exists(&pi.shape, &pi.directions[u + 1], &pi.directions[u], pi.breaks[u + 1], budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn path_slopes(&self, pi: &SiLSPath, i: usize) -> Vec<i64> {
        pi.directions
            .iter()
            .map(|x| self.level_zero_pair(x, &pi.shape, i))
            .collect()
    }

    /// The height function `H_i(t) = <pi(t), alpha_i^vee>` for `i` in `0..=rank`.
    pub fn h_function(&self, i: usize, pi: &SiLSPath) -> HeightFunction {
        height(&pi.breaks, &self.path_slopes(pi, i))
    }

    /// `m_i = min H_i`.
    pub fn m_value(&self, i: usize, pi: &SiLSPath) -> i64 {
        self.h_function(i, pi).min
    }

    fn root_operator(&self, i: usize, pi: &SiLSPath, raise: bool) -> Option<SiLSPath> {
        let j = self.stabilizer(&pi.shape);
        let slopes = self.path_slopes(pi, i);
        let (dirs, breaks) = surgery(&pi.directions, &pi.breaks, &slopes, raise, |x| self.pij(&self.aff_s_left(i, x), j))?;
        Some(SiLSPath {
            shape: pi.shape.clone(),
            directions: dirs,
            breaks,
        })
    }

    /// Root operator `e_i`; `None` is the zero element.
    pub fn e_op(&self, i: usize, pi: &SiLSPath) -> Option<SiLSPath> {
        self.root_operator(i, pi, true)
    }

    /// Root operator `f_i`; `None` is the zero element.
    pub fn f_op(&self, i: usize, pi: &SiLSPath) -> Option<SiLSPath> {
        self.root_operator(i, pi, false)
    }

    /// `eps_i(pi) = -m_i`.
    pub fn eps(&self, i: usize, pi: &SiLSPath) -> i64 {
        -self.m_value(i, pi)
    }

    /// `phi_i(pi) = H_i(1) - m_i`.
    pub fn phi(&self, i: usize, pi: &SiLSPath) -> i64 {
        let h = self.h_function(i, pi);
        let end = h.points.last().unwrap().1;
        debug_assert!(end.is_integer());
        end.to_integer() - h.min
    }

    /// `wt(pi) = sum_u (a_u - a_{u-1}) x_u lambda`.
    pub fn path_wt(&self, pi: &SiLSPath) -> AffineWeight {
        let n = self.rank();
        let mut fin = vec![Rational::zero(); n];
        let mut del = Rational::zero();
        for (u, x) in pi.directions.iter().enumerate() {
            let len = pi.breaks[u + 1] - pi.breaks[u];
            let wl = self.act_weight(&x.w, &pi.shape);
            for k in 0..n {
                fin[k] += len * wl[k];
            }
            del -= len * pair(&pi.shape, &x.xi);
        }
        assert!(fin.iter().all(|c| c.is_integer()) && del.is_integer(), "path weight must be integral");
        AffineWeight {
            finite: fin.iter().map(|c| c.to_integer()).collect(),
            delta: del.to_integer(),
        }
    }

    /// `<mu + k delta, alpha_i^vee>` for `i` in `0..=rank`.
    pub fn affine_weight_pair(&self, mu: &AffineWeight, i: usize) -> i64 {
        self.weight_pair_simple(&mu.finite, i)
    }

    /// The simple root `alpha_i` as an affine weight (`alpha_0 = -theta + delta`).
    pub fn alpha_affine_weight(&self, i: usize) -> AffineWeight {
        if i == 0 {
            AffineWeight {
                finite: self.root_to_weight(self.theta()).iter().map(|c| -c).collect(),
                delta: 1,
            }
        } else {
            AffineWeight {
                finite: self.simple_root_weight(i),
                delta: 0,
            }
        }
    }

    /// `s_i . pi`: `f_i^n pi` if `n = <wt(pi), alpha_i^vee> >= 0`, else `e_i^{-n} pi`.
    pub fn simple_reflect_path(&self, i: usize, pi: &SiLSPath) -> Result<SiLSPath> {
        let n = self.affine_weight_pair(&self.path_wt(pi), i);
        let mut p = pi.clone();
        for _ in 0..n.abs() {
            p = if n > 0 { self.f_op(i, &p) } else { self.e_op(i, &p) }
                .ok_or_else(|| Error::Internal("root string shorter than the weight pairing".into()))?;
        }
        Ok(p)
    }

    /// `x . pi` through a reduced word of `x`.
    pub fn weyl_act_path(&self, x: &AffineWeylElement, pi: &SiLSPath) -> Result<SiLSPath> {
        let mut p = pi.clone();
        for &i in self.aff_reduced_word(x).iter().rev() {
            p = self.simple_reflect_path(i, &p)?;
        }
        Ok(p)
    }

    /// `T_xi pi = (Π^J(x_1 t_xi), ..., Π^J(x_s t_xi); a)`.
    pub fn t_shift(&self, xi: &[i64], pi: &SiLSPath) -> SiLSPath {
        let j = self.stabilizer(&pi.shape);
        SiLSPath {
            shape: pi.shape.clone(),
            directions: pi.directions.iter().map(|x| self.pij(&self.right_translate(x, xi), j)).collect(),
            breaks: pi.breaks.clone(),
        }
    }

    /// Elements of `Par(lambda)` of size at most `size_bound`: for each `i` a
    /// partition of length less than `<lambda, alpha_i^vee>`.
    pub fn par_elements(&self, lambda: &[i64], size_bound: i64) -> Vec<ParTuple> {
        fn partitions(max_len: usize, max_part: i64, budget: i64, prefix: &mut Vec<i64>, out: &mut Vec<(Vec<i64>, i64)>) {
            out.push((prefix.clone(), prefix.iter().sum()));
            if prefix.len() == max_len {
                return;
            }
            let used: i64 = prefix.iter().sum();
            for p in 1..=max_part.min(budget - used) {
                prefix.push(p);
                partitions(max_len, p, budget, prefix, out);
                prefix.pop();
            }
        }
        let n = self.rank();
        let mut per_index: Vec<Vec<(Vec<i64>, i64)>> = Vec::new();
        for i in 0..n {
            let max_len = (lambda[i] - 1).max(0) as usize;
            let mut out = Vec::new();
            partitions(max_len, size_bound.max(0), size_bound.max(0), &mut Vec::new(), &mut out);
            per_index.push(out);
        }
        let mut result = Vec::new();
        let mut cur: Vec<Vec<i64>> = Vec::new();
        fn combine(per: &[Vec<(Vec<i64>, i64)>], bound: i64, cur: &mut Vec<Vec<i64>>, used: i64, out: &mut Vec<ParTuple>) {
            if cur.len() == per.len() {
                out.push(ParTuple { parts: cur.clone() });
                return;
            }
            for (p, s) in &per[cur.len()] {
                if used + s <= bound {
                    cur.push(p.clone());
                    combine(per, bound, cur, used + s, out);
                    cur.pop();
                }
            }
        }
        combine(&per_index, size_bound, &mut cur, 0, &mut result);
        result.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.cmp(b)));
        result
    }

    /// Checks that `rho` lies in `Par(lambda)`.
    pub fn check_par(&self, rho: &ParTuple, lambda: &[i64]) -> Result<()> {
        if rho.parts.len() != self.rank() {
            return input(format!("partition tuple must have {} entries", self.rank()));
        }
        for (i, p) in rho.parts.iter().enumerate() {
            if p.len() as i64 >= lambda[i].max(1) {
                return input(format!("partition for index {} must have length < {}", i + 1, lambda[i]));
            }
            if p.iter().any(|&c| c <= 0) || p.windows(2).any(|w| w[0] < w[1]) {
                return input(format!("partition for index {} must be positive and weakly decreasing", i + 1));
            }
        }
        Ok(())
    }

    /// `Turn(lambda) = {k / m_i : i not in J, 0 <= k <= m_i}`, ascending.
    pub fn turning_points(&self, lambda: &[i64]) -> Vec<Rational> {
        let mut set: BTreeSet<Rational> = BTreeSet::from([Rational::zero(), Rational::one()]);
        for &m in lambda.iter().filter(|&&m| m > 0) {
            for k in 0..=m {
                set.insert(Rational::new(k, m));
            }
        }
        set.into_iter().collect()
    }

    /// The extremal element `pi_rho` of the connected component indexed by
    /// `rho`: on `((k-1)/m_i, k/m_i]` the coefficient of `alpha_i^vee` in the
    /// translation of the direction is `rho^{(i)}_k`.
    pub fn par_to_path(&self, rho: &ParTuple, lambda: &[i64]) -> Result<SiLSPath> {
        self.check_len(lambda)?;
        if !self.is_dominant(lambda) {
            return input("shape must be dominant");
        }
        self.check_par(rho, lambda)?;
        let j = self.stabilizer(lambda);
        let turn = self.turning_points(lambda);
        let mut dirs: Vec<AffineWeylElement> = Vec::new();
        let mut breaks = vec![Rational::zero()];
        for t in turn.iter().skip(1) {
            let xi: Coweight = (1..=self.rank())
                .map(|i| {
                    let m = lambda[i - 1];
                    if m == 0 {
                        0
                    } else {
                        rho.entry(i, (*t * m).ceil().to_integer() as usize)
                    }
                })
                .collect();
            let x = self.pij(&self.translation(&xi), j);
            if dirs.last() == Some(&x) {
                *breaks.last_mut().unwrap() = *t;
            } else {
                dirs.push(x);
                breaks.push(*t);
            }
        }
        Ok(SiLSPath {
            shape: lambda.iter().copied().collect(),
            directions: dirs,
            breaks,
        })
    }

    /// If `pi` has the extremal form `(Π^J(t_xi_1), ..., Π^J(t_xi_{s-1}), e; a)`
    /// with breaks in `Turn(lambda)`, reads off its partition tuple.
    pub fn extremal_par(&self, pi: &SiLSPath) -> Option<ParTuple> {
        let lambda = &pi.shape;
        let j = self.stabilizer(lambda);
        let turn = self.turning_points(lambda);
        if !pi.breaks.iter().all(|a| turn.contains(a)) || !pi.final_direction().is_identity() {
            return None;
        }
        for x in &pi.directions {
            let t = self.translation(&self.project_out(&x.xi, j));
            if self.pij(&t, j) != *x {
                return None;
            }
        }
        let mut parts = Vec::new();
        for i in 1..=self.rank() {
            let m = lambda[i - 1];
            let mut p = Vec::new();
            for k in 1..m {
                let lo = Rational::new(k - 1, m);
                let hi = Rational::new(k, m);
                let u = (1..pi.breaks.len()).find(|&u| pi.breaks[u] >= hi)?;
                if pi.breaks[u - 1] > lo {
                    return None;
                }
                let c = pi.directions[u - 1].xi[i - 1];
                if c > 0 {
                    p.push(c);
                }
            }
            parts.push(p);
        }
        Some(ParTuple { parts })
    }

    /// Closed form of `x . pi_rho` for a path of the extremal form.
    pub fn extremal_weyl_action(&self, x: &AffineWeylElement, pi: &SiLSPath) -> SiLSPath {
        let j = self.stabilizer(&pi.shape);
        SiLSPath {
            shape: pi.shape.clone(),
            directions: pi
                .directions
                .iter()
                .map(|d| {
                    let xi = self.project_out(&d.xi, j);
                    self.pij(&self.right_translate(x, &xi), j)
                })
                .collect(),
            breaks: pi.breaks.clone(),
        }
    }

    /// Extremal representatives `pi_rho` for all `rho` with `|rho| <= -q_min`
    /// (the weight of `pi_rho` is `lambda - |rho| delta`).
    pub fn crystal_component_reps(&self, lambda: &[i64], q_min: i64) -> Result<Vec<(ParTuple, SiLSPath)>> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for rho in self.par_elements(lambda, -q_min) {
            let p = self.par_to_path(&rho, lambda)?;
            if !seen.insert(p.clone()) {
                return Err(Error::Internal(format!("two partition tuples give the path {p:?}")));
            }
            out.push((rho, p));
        }
        Ok(out)
    }

    // ---- quantum LS paths ------------------------------------------------

    /// `cl(pi)`: drop the translation parts, keeping minimal coset
    /// representatives; adjacent equal directions are merged.
    pub fn cl_project(&self, pi: &SiLSPath) -> QLSPath {
        let j = self.stabilizer(&pi.shape);
        let mut dirs: Vec<FiniteWeylElement> = Vec::new();
        let mut breaks = vec![Rational::zero()];
        for (u, x) in pi.directions.iter().enumerate() {
            let w = self.min_coset_rep(&x.w, j);
            if dirs.last() == Some(&w) {
                *breaks.last_mut().unwrap() = pi.breaks[u + 1];
            } else {
                dirs.push(w);
                breaks.push(pi.breaks[u + 1]);
            }
        }
        QLSPath {
            shape: pi.shape.clone(),
            directions: dirs,
            breaks,
        }
    }

    fn qls_slopes(&self, p: &QLSPath, i: usize) -> Vec<i64> {
        p.directions
            .iter()
            .map(|w| self.weight_pair_simple(&self.act_weight(w, &p.shape), i))
            .collect()
    }

    fn qls_operator(&self, i: usize, p: &QLSPath, raise: bool) -> Option<QLSPath> {
        let j = self.stabilizer(&p.shape);
        let slopes = self.qls_slopes(p, i);
        let refl = |w: &FiniteWeylElement| {
            let s = if i == 0 { self.reflection(self.theta_index()) } else { self.s(i) };
            self.min_coset_rep(&self.mul(s, w), j)
        };
        let (dirs, breaks) = surgery(&p.directions, &p.breaks, &slopes, raise, refl)?;
        Some(QLSPath {
            shape: p.shape.clone(),
            directions: dirs,
            breaks,
        })
    }

    pub fn qls_e(&self, i: usize, p: &QLSPath) -> Option<QLSPath> {
        self.qls_operator(i, p, true)
    }

    pub fn qls_f(&self, i: usize, p: &QLSPath) -> Option<QLSPath> {
        self.qls_operator(i, p, false)
    }

    pub fn qls_eps(&self, i: usize, p: &QLSPath) -> i64 {
        -height(&p.breaks, &self.qls_slopes(p, i)).min
    }

    pub fn qls_phi(&self, i: usize, p: &QLSPath) -> i64 {
        let h = height(&p.breaks, &self.qls_slopes(p, i));
        h.points.last().unwrap().1.to_integer() - h.min
    }

    /// Finite weight of a quantum LS path.
    pub fn qls_wt(&self, p: &QLSPath) -> Weight {
        let n = self.rank();
        let mut fin = vec![Rational::zero(); n];
        for (u, w) in p.directions.iter().enumerate() {
            let len = p.breaks[u + 1] - p.breaks[u];
            let wl = self.act_weight(w, &p.shape);
            for k in 0..n {
                fin[k] += len * wl[k];
            }
        }
        fin.iter().map(|c| c.to_integer()).collect()
    }

    // ---- enumeration -----------------------------------------------------

    /// `SiLS_{⪰x}(lambda)` truncated to `qwt >= q_min`, sorted.
    pub fn enumerate_sils(&self, lambda: &[i64], x: &AffineWeylElement, q_min: i64) -> Result<Vec<SiLSPath>> {
        self.enumerate_sils_budget(lambda, x, q_min, &Budget::default())
    }

    /// [`Self::enumerate_sils`] with explicit budgets.
    ///
    /// Every direction `x_u` of such a path satisfies `x_u ⪰ Π^J(x)`, hence
    /// `[xi_u]^J >= [xi_x]^J`; as these pairings decrease along the path and
    /// `a_u >= 1/M` (`M` the largest `|<w lambda, alpha^vee>|`), the bound
    /// `a_u (<lambda, xi_u> - <lambda, xi_x>) <= -q_min - <lambda, xi_x>`
    /// confines the directions to a finite box. Paths are then grown from the
    /// final direction leftwards through `SiB_a`-reachability inside the box.
    pub fn enumerate_sils_budget(
        &self,
        lambda: &[i64],
        x: &AffineWeylElement,
        q_min: i64,
        budget: &Budget,
    ) -> Result<Vec<SiLSPath>> {
        self.check_len(lambda)?;
        self.check_len(&x.xi)?;
        if !self.is_dominant(lambda) {
            return input("shape must be dominant");
        }
        let j = self.stabilizer(lambda);
        let x0 = self.pij(x, j);
        let c0 = pair(lambda, &x0.xi);
        let slack = -q_min - c0;
        if slack < 0 {
            return Ok(Vec::new());
        }
        if lambda.iter().all(|&c| c == 0) {
            return Ok(vec![self.straight_path(lambda)]);
        }
        let big_m = self.max_root_pairing(lambda);
        let cands = self.candidate_box(lambda, &x0, slack * big_m, budget)?;
        let index: HashMap<AffineWeylElement, usize> = cands.iter().cloned().enumerate().map(|(k, c)| (c, k)).collect();
        let qv: Vec<i64> = cands.iter().map(|c| pair(lambda, &c.xi)).collect();
        // Edges of the semi-infinite Bruhat graph inside the box, with the
        // pairing <y lambda, beta^vee> of the source.
        let edges: Vec<Vec<(usize, i64)>> = cands
            .iter()
            .map(|y| {
                let yl = self.act_weight(&y.w, lambda);
                self.si_covers(y, j)
                    .into_iter()
                    .filter_map(|(beta, z)| {
                        index
                            .get(&z)
                            .map(|&k| (k, pair(&yl, &self.coroot_of(&beta.root).expect("root")).abs()))
                    })
                    .collect()
            })
            .collect();
        let mut up_cache: HashMap<(usize, i64), Vec<usize>> = HashMap::new();
        let mut up = |y: usize, den: i64| -> Vec<usize> {
            up_cache
                .entry((y, den))
                .or_insert_with(|| {
                    let mut seen = HashSet::from([y]);
                    let mut queue = VecDeque::from([y]);
                    let mut out = Vec::new();
                    while let Some(v) = queue.pop_front() {
                        for &(z, c) in &edges[v] {
                            if c % den == 0 && seen.insert(z) {
                                out.push(z);
                                queue.push_back(z);
                            }
                        }
                    }
                    out.sort_unstable();
                    out
                })
                .clone()
        };
        let breaks = admissible_breaks(big_m);
        let bound = rat(-q_min);
        let mut out: Vec<SiLSPath> = Vec::new();
        // Stack entries: directions (rightmost first), left end of the
        // leftmost segment, accumulated sum of len * <lambda, xi>.
        let mut stack: Vec<(Vec<usize>, Vec<Rational>, Rational)> = Vec::new();
        for k in 0..cands.len() {
            if rat(qv[k]) > bound {
                continue;
            }
            for a in std::iter::once(Rational::zero()).chain(breaks.iter().copied()) {
                stack.push((vec![k], vec![Rational::one(), a], (Rational::one() - a) * qv[k]));
            }
        }
        while let Some((dirs, bks, acc)) = stack.pop() {
            let a = *bks.last().unwrap();
            if a.is_zero() {
                out.push(SiLSPath {
                    shape: lambda.iter().copied().collect(),
                    directions: dirs.iter().rev().map(|&k| cands[k].clone()).collect(),
                    breaks: bks.iter().rev().copied().collect(),
                });
                if out.len() > budget.max_paths {
                    return Err(Error::Budget(format!("more than {} paths", budget.max_paths)));
                }
                continue;
            }
            let y = *dirs.last().unwrap();
            for z in up(y, *a.denom()) {
                if acc + a * qv[z] > bound {
                    continue;
                }
                for a2 in std::iter::once(Rational::zero()).chain(breaks.iter().copied().filter(|b| *b < a)) {
                    let mut d2 = dirs.clone();
                    d2.push(z);
                    let mut b2 = bks.clone();
                    b2.push(a2);
                    stack.push((d2, b2, acc + (a - a2) * qv[z]));
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// `max |<w lambda, alpha^vee>|` over `w in W` and roots `alpha`.
    pub fn max_root_pairing(&self, lambda: &[i64]) -> i64 {
        self.positive_coroots().iter().map(|c| pair(lambda, c).abs()).max().unwrap_or(0)
    }

    /// Elements `y in (W^J)_af` with `y ⪰ x0`, `[xi_y]^J >= [xi_x0]^J` and
    /// `<lambda, xi_y - xi_x0> <= reach`.
    fn candidate_box(
        &self,
        lambda: &[i64],
        x0: &AffineWeylElement,
        reach: i64,
        budget: &Budget,
    ) -> Result<Vec<AffineWeylElement>> {
        let j = self.stabilizer(lambda);
        let free: Vec<usize> = (1..=self.rank()).filter(|&i| !j.contains(i)).collect();
        let base = self.project_out(&x0.xi, j);
        let mut shifts: Vec<Coweight> = Vec::new();
        let mut cur: Coweight = smallvec![0; self.rank()];
        fn rec(free: &[usize], lambda: &[i64], left: i64, cur: &mut Coweight, out: &mut Vec<Coweight>) {
            match free.split_first() {
                None => out.push(cur.clone()),
                Some((&i, rest)) => {
                    let step = lambda[i - 1];
                    let mut c = 0;
                    while c * step <= left {
                        cur[i - 1] = c;
                        rec(rest, lambda, left - c * step, cur, out);
                        c += 1;
                    }
                    cur[i - 1] = 0;
                }
            }
        }
        rec(&free, lambda, reach, &mut cur, &mut shifts);
        let reps: Vec<FiniteWeylElement> = self
            .enumerate_weyl_group()?
            .into_iter()
            .filter(|w| self.is_min_coset_rep(w, j))
            .collect();
        if shifts.len().saturating_mul(reps.len()) > budget.max_nodes {
            return Err(Error::Budget(format!("candidate box exceeds {} elements", budget.max_nodes)));
        }
        let mut out = Vec::new();
        for s in &shifts {
            let xi: Coweight = base.iter().zip(s).map(|(a, b)| a + b).collect();
            for w in &reps {
                let y = self.pij(&AffineWeylElement { w: w.clone(), xi: xi.clone() }, j);
                if self.si_leq_budget(x0, &y, j, budget)? {
                    out.push(y);
                }
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

/// Serialises a rational as `"p/q"` (or `"p"` for integers).
pub fn rational_to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: i64 = p.parse().map_err(|_| Error::Input(format!("malformed rational {s:?}")))?;
    let q: i64 = q.parse().map_err(|_| Error::Input(format!("malformed rational {s:?}")))?;
    if q == 0 {
        return input(format!("zero denominator in {s:?}"));
    }
    Ok(Rational::new(p, q))
}

/// Least common multiple of `1..=m`.
pub fn lcm_upto(m: i64) -> i64 {
    (1..=m.max(1)).fold(1i64, |acc, k| acc.lcm(&k))
}
