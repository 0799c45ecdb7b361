//! Exhaustive reference computations shared by the integration tests.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use silc_core::{AffineWeylElement, CartanDatum, Series};

pub fn datum(s: Series, n: usize) -> CartanDatum {
    CartanDatum::new(s, n).unwrap()
}

/// Breadth-first distances from the identity in the Cayley graph of W_af on
/// s_0..s_n, up to `radius`.
pub fn cayley_ball(d: &CartanDatum, radius: usize) -> HashMap<AffineWeylElement, usize> {
    let gens: Vec<AffineWeylElement> = (0..=d.rank()).map(|i| d.aff_s(i)).collect();
    let mut dist = HashMap::from([(d.aff_identity(), 0usize)]);
    let mut queue = VecDeque::from([d.aff_identity()]);
    while let Some(x) = queue.pop_front() {
        let k = dist[&x];
        if k == radius {
            continue;
        }
        for g in &gens {
            let y = d.aff_mul(&x, g);
            if !dist.contains_key(&y) {
                dist.insert(y.clone(), k + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Bruhat order by the subword property: u <= v iff u is a product of a
/// subword of a reduced word of v.
pub fn bruhat_subword(d: &CartanDatum, u: &AffineWeylElement, v: &AffineWeylElement, word_v: &[usize]) -> bool {
    let _ = v;
    let mut products: HashSet<AffineWeylElement> = HashSet::from([d.aff_identity()]);
    for &i in word_v {
        let s = d.aff_s(i);
        let next: Vec<AffineWeylElement> = products.iter().map(|p| d.aff_mul(p, &s)).collect();
        products.extend(next);
    }
    products.contains(u)
}

/// All elements w t_xi with translation coordinates in [lo, hi].
pub fn window(d: &CartanDatum, lo: i64, hi: i64) -> Vec<AffineWeylElement> {
    let group = d.enumerate_weyl_group().unwrap();
    let mut out = Vec::new();
    for xi in box_points(d.rank(), lo, hi) {
        for w in &group {
            out.push(d.aff_element(w, &xi).unwrap());
        }
    }
    out
}

pub fn box_points(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for c in lo..=hi {
                let mut q = p.clone();
                q.push(c);
                next.push(q);
            }
        }
        out = next;
    }
    out
}
