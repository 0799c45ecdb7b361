//! Brute-force reference implementations.
//!
//! Everything here is deliberately naive: it enumerates generous boxes and
//! filters by definitions, sharing as little logic as possible with the fast
//! algorithms it cross-checks. Used by the test suites and by `selftest`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::afweyl::AffineWeylElement;
use crate::error::Result;
use crate::rootdata::{pair, CartanDatum, Coweight, FiniteWeylElement, ParabolicSet, Weight};
use crate::silspath::{admissible_breaks, Rational, SiLSPath};

/// All semi-infinite LS paths of shape `lambda` with `kappa(pi) ⪰ Π^J(x)` and
/// `qwt >= q_min`, found by scanning every direction sequence in a coordinate
/// box much larger than the one the fast enumerator uses, and every choice of
/// breaks with denominators bounded by the largest root pairing.
pub fn brute_force_sils(d: &CartanDatum, lambda: &[i64], x: &AffineWeylElement, q_min: i64) -> Result<Vec<SiLSPath>> {
    let j = d.stabilizer(lambda);
    let x0 = d.pij(x, j);
    if lambda.iter().all(|&c| c == 0) {
        return Ok(if q_min <= 0 && d.si_leq_translation(&x0, &x0)? {
            vec![d.straight_path(lambda)]
        } else {
            Vec::new()
        });
    }
    let m = d.max_root_pairing(lambda);
    let c0 = pair(lambda, &x0.xi);
    let span = 2 * m * (-q_min - c0 + 1).max(1);
    let free: Vec<usize> = (1..=d.rank()).filter(|&i| !j.contains(i)).collect();
    let reps: Vec<FiniteWeylElement> = d
        .enumerate_weyl_group()?
        .into_iter()
        .filter(|w| d.is_min_coset_rep(w, j))
        .collect();
    let mut dirs: BTreeSet<AffineWeylElement> = BTreeSet::new();
    let mut xi: Coweight = d.project_out(&x0.xi, j);
    let base = xi.clone();
    fn boxes(free: &[usize], base: &Coweight, span: i64, xi: &mut Coweight, out: &mut Vec<Coweight>) {
        match free.split_first() {
            None => out.push(xi.clone()),
            Some((&i, rest)) => {
                for c in base[i - 1] - 1..=base[i - 1] + span {
                    xi[i - 1] = c;
                    boxes(rest, base, span, xi, out);
                }
                xi[i - 1] = base[i - 1];
            }
        }
    }
    let mut shifts = Vec::new();
    boxes(&free, &base, span, &mut xi, &mut shifts);
    for s in &shifts {
        for w in &reps {
            dirs.insert(d.pij(&AffineWeylElement { w: w.clone(), xi: s.clone() }, j));
        }
    }
    let dirs: Vec<AffineWeylElement> = dirs.into_iter().collect();
    let qv: Vec<i64> = dirs.iter().map(|y| pair(lambda, &y.xi)).collect();
    let inner = admissible_breaks(m);
    let max_len = inner.len() + 1;
    let mut out = Vec::new();
    // Every subset of inner breaks, then every direction sequence.
    for mask in 0u64..(1u64 << inner.len()) {
        let mut breaks = vec![Rational::zero()];
        breaks.extend(inner.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, b)| *b));
        breaks.push(Rational::one());
        let s = breaks.len() - 1;
        if s > max_len {
            continue;
        }
        let mut idx = vec![0usize; s];
        'seq: loop {
            let mut total = Rational::zero();
            for u in 0..s {
                total += (breaks[u + 1] - breaks[u]) * qv[idx[u]];
            }
            let q = -total;
            if q.is_integer() && q >= Rational::from_integer(q_min) {
                let pi = SiLSPath {
                    shape: lambda.iter().copied().collect(),
                    directions: idx.iter().map(|&k| dirs[k].clone()).collect(),
                    breaks: breaks.clone(),
                };
                if idx.windows(2).all(|w| w[0] != w[1])
                    && d.si_leq_translation(&x0, pi.final_direction())?
                    && d.validate_path(&pi)?
                {
                    out.push(pi);
                }
            }
            for u in (0..s).rev() {
                idx[u] += 1;
                if idx[u] < dirs.len() {
                    continue 'seq;
                }
                idx[u] = 0;
            }
            break;
        }
    }
    out.sort();
    Ok(out)
}

/// Every element below `w` in the Bruhat order, by the subword property.
pub fn bruhat_interval_below(d: &CartanDatum, w: &FiniteWeylElement) -> BTreeSet<FiniteWeylElement> {
    let word: Vec<usize> = w.word().iter().map(|&i| i as usize).collect();
    let mut out = BTreeSet::new();
    for mask in 0u64..(1u64 << word.len()) {
        let sub: Vec<usize> = word.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &i)| i).collect();
        out.insert(d.from_word(&sub).expect("valid indices"));
    }
    out
}

/// Bruhat order on `W` via subwords.
pub fn finite_bruhat_leq(d: &CartanDatum, u: &FiniteWeylElement, w: &FiniteWeylElement) -> bool {
    bruhat_interval_below(d, w).contains(u)
}

/// `min { w in y W_K : w >= x }` in the Bruhat order, by scanning the coset.
pub fn finite_deodhar_lift(
    d: &CartanDatum,
    x: &FiniteWeylElement,
    y: &FiniteWeylElement,
    k: ParabolicSet,
) -> Option<FiniteWeylElement> {
    let coset: Vec<FiniteWeylElement> = d.parabolic_subgroup(k).iter().map(|v| d.mul(y, v)).collect();
    let above: Vec<&FiniteWeylElement> = coset.iter().filter(|w| finite_bruhat_leq(d, x, w)).collect();
    let min = above
        .iter()
        .find(|w| above.iter().all(|v| finite_bruhat_leq(d, w, v)))
        .map(|w| (*w).clone());
    min
}

/// Classical LS paths of shape `lambda`: Bruhat-decreasing sequences in `W^J`
/// joined by `a`-chains of Bruhat covers with `a <v lambda, beta^vee>`
/// integral.
pub fn finite_ls_paths(d: &CartanDatum, lambda: &[i64]) -> Result<Vec<(Vec<FiniteWeylElement>, Vec<Rational>)>> {
    let j = d.stabilizer(lambda);
    let reps: Vec<FiniteWeylElement> = d
        .enumerate_weyl_group()?
        .into_iter()
        .filter(|w| d.is_min_coset_rep(w, j))
        .collect();
    // Bruhat covers within W^J with their root pairings.
    let below: Vec<BTreeSet<FiniteWeylElement>> = reps.iter().map(|w| bruhat_interval_below(d, w)).collect();
    let mut covers: Vec<Vec<(usize, i64)>> = vec![Vec::new(); reps.len()];
    for (a, v) in reps.iter().enumerate() {
        for k in 0..d.positive_roots().len() {
            let u = d.mul(d.reflection(k), v);
            if let Some(b) = reps.iter().position(|r| *r == u) {
                if u.length() == v.length() + 1 && below[b].contains(v) {
                    let c = pair(&d.act_weight(v, lambda), d.positive_coroot(k));
                    covers[a].push((b, c.abs()));
                }
            }
        }
    }
    let chain = |lo: usize, hi: usize, den: i64| -> bool {
        let mut seen = vec![false; reps.len()];
        let mut stack = vec![lo];
        while let Some(v) = stack.pop() {
            if v == hi {
                return true;
            }
            for &(u, c) in &covers[v] {
                if c % den == 0 && !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        false
    };
    let m = d.max_root_pairing(lambda).max(1);
    let inner = admissible_breaks(m);
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << inner.len()) {
        let mut breaks = vec![Rational::zero()];
        breaks.extend(inner.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, b)| *b));
        breaks.push(Rational::one());
        let s = breaks.len() - 1;
        let mut idx = vec![0usize; s];
        'seq: loop {
            let ok = (0..s.saturating_sub(1)).all(|u| idx[u] != idx[u + 1] && chain(idx[u + 1], idx[u], *breaks[u + 1].denom()));
            if ok {
                out.push((idx.iter().map(|&k| reps[k].clone()).collect(), breaks.clone()));
            }
            for u in (0..s).rev() {
                idx[u] += 1;
                if idx[u] < reps.len() {
                    continue 'seq;
                }
                idx[u] = 0;
            }
            break;
        }
    }
    Ok(out)
}

/// Weight of a classical LS path.
pub fn finite_ls_weight(d: &CartanDatum, lambda: &[i64], dirs: &[FiniteWeylElement], breaks: &[Rational]) -> Weight {
    let mut acc = vec![Rational::zero(); d.rank()];
    for (u, w) in dirs.iter().enumerate() {
        let wl = d.act_weight(w, lambda);
        for k in 0..d.rank() {
            acc[k] += (breaks[u + 1] - breaks[u]) * wl[k];
        }
    }
    acc.iter().map(|c| c.to_integer()).collect()
}

/// Classical Pieri–Chevalley data for `[O(-w0 lambda)] [O_{X(x)}]` on the
/// finite flag manifold: for each classical LS path `eta` of shape
/// `-w0 lambda` whose final direction lies above the coset `x W_K`, the weight `wt(eta)` goes to
/// the bucket of its iterated finite Deodhar lift.
pub fn finite_pieri_chevalley(
    d: &CartanDatum,
    lambda: &[i64],
    x: &FiniteWeylElement,
) -> Result<BTreeMap<FiniteWeylElement, BTreeMap<Weight, i64>>> {
    let mu = d.dual_weight(lambda);
    let k = d.stabilizer(&mu);
    let mut out: BTreeMap<FiniteWeylElement, BTreeMap<Weight, i64>> = BTreeMap::new();
    // The shortest element of x W_K, found by scanning the coset.
    let floor = d
        .parabolic_subgroup(k)
        .iter()
        .map(|v| d.mul(x, v))
        .min_by_key(|w| w.length())
        .expect("cosets are nonempty");
    for (dirs, breaks) in finite_ls_paths(d, &mu)? {
        if !finite_bruhat_leq(d, &floor, dirs.last().unwrap()) {
            continue;
        }
        let mut cur = x.clone();
        for y in dirs.iter().rev() {
            cur = finite_deodhar_lift(d, &cur, y, k).expect("lift exists above a smaller coset");
        }
        *out.entry(cur).or_default().entry(finite_ls_weight(d, &mu, &dirs, &breaks)).or_default() += 1;
    }
    Ok(out)
}
