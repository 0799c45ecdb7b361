mod common;

use std::collections::BTreeMap;

use common::{box_points, datum, window};
use silc_core::oracle::{brute_force_sils, finite_pieri_chevalley};
use silc_core::{AffineWeylElement, CartanDatum, GradedCharacter, Series, SiLSPath};

/// `Deo(eta, x)` by brute force: at every step take the element below all
/// other lifts above the previous one, among lifts with `|gamma| <= r`.
fn deo_brute(d: &CartanDatum, eta: &SiLSPath, x: &AffineWeylElement, r: i64) -> AffineWeylElement {
    let k = d.stabilizer(&eta.shape);
    let sub = d.parabolic_subgroup(k);
    let mut cur = x.clone();
    for y in eta.directions.iter().rev() {
        let mut cands = Vec::new();
        for v in &sub {
            for g in box_points(d.rank(), -r, r) {
                if g.iter().enumerate().any(|(i, &c)| c != 0 && !k.contains(i + 1)) {
                    continue;
                }
                let l = d.aff_mul(y, &d.aff_element(v, &g).unwrap());
                if d.si_leq_translation(&cur, &l).unwrap() {
                    cands.push(l);
                }
            }
        }
        let min = cands
            .iter()
            .find(|a| cands.iter().all(|b| d.si_leq_translation(a, b).unwrap()))
            .expect("a minimum exists among the lifts")
            .clone();
        cur = min;
    }
    cur
}

fn nonneg_window(d: &CartanDatum, max_sell: i64) -> Vec<AffineWeylElement> {
    window(d, 0, 1).into_iter().filter(|x| d.sell(x) <= max_sell).collect()
}

#[test]
fn w_af_ge0_membership() {
    let a1 = datum(Series::A, 1);
    assert!(a1.is_w_af_ge0(&a1.aff_identity()));
    assert!(!a1.is_w_af_ge0(&a1.translation(&[-1])));
    let a2 = datum(Series::A, 2);
    assert!(a2.is_w_af_ge0(&a2.aff_from_word(&[1], &[1, 1]).unwrap()));
    assert!(!a2.is_w_af_ge0(&a2.aff_from_word(&[1], &[1, -1]).unwrap()));
    assert!(a1.pieri_coeffs(&[1], &a1.translation(&[-1]), 0).is_err());
    assert!(a1.pieri_coeffs(&[-1], &a1.aff_identity(), 0).is_err());
}

#[test]
fn pieri_examples_a1() {
    let d = datum(Series::A, 1);
    let e = d.aff_identity();
    let s = d.aff_s(1);
    let c = d.pieri_coeffs(&[1], &e, 0).unwrap();
    let mut want = BTreeMap::new();
    want.insert(e.clone(), GradedCharacter::monomial(&[1], 0, 0));
    want.insert(s.clone(), GradedCharacter::monomial(&[-1], 0, 0));
    assert_eq!(c.terms, want);
    let c = d.pieri_coeffs(&[1], &e, -1).unwrap();
    let t = d.translation(&[1]);
    let st = d.aff_from_word(&[1], &[1]).unwrap();
    assert_eq!(c.terms[&t].coeff(&[1], -1), 1);
    assert_eq!(c.terms[&st].coeff(&[-1], -1), 1);
    assert_eq!(c.terms[&e].coeff(&[1], 0), 1);
    assert_eq!(c.terms[&s].coeff(&[-1], 0), 1);
    for g in c.terms.values() {
        assert!(g.top_degree().unwrap() <= 0);
    }
}

#[test]
fn buckets_sum_to_demazure_character() {
    for (s, n, lambdas) in [
        (Series::A, 1, vec![vec![1], vec![2]]),
        (Series::A, 2, vec![vec![1, 0], vec![1, 1]]),
        (Series::C, 2, vec![vec![1, 0], vec![0, 1]]),
    ] {
        let d = datum(s, n);
        for l in lambdas {
            for x in nonneg_window(&d, 3) {
                let c = d.pieri_coeffs(&l, &x, -1).unwrap();
                let g = d.gch_demazure(&d.dual_weight(&l), &x, -1).unwrap();
                assert!(c.total().agrees_with(&g), "{s}{n} {l:?} {x:?}");
            }
        }
    }
}

#[test]
fn pieri_keys_match_brute_force_grouping() {
    for (s, n, l, q) in [(Series::A, 1, vec![1], -1), (Series::A, 1, vec![2], -1), (Series::A, 2, vec![1, 0], -1), (Series::A, 2, vec![1, 1], 0)] {
        let d = datum(s, n);
        for x in nonneg_window(&d, 2) {
            let shape = d.dual_weight(&l);
            let mut want: BTreeMap<AffineWeylElement, GradedCharacter> = BTreeMap::new();
            for eta in brute_force_sils(&d, &shape, &x, q).unwrap() {
                let y = deo_brute(&d, &eta, &x, 3);
                let w = d.path_wt(&eta);
                want.entry(y).or_insert_with(|| GradedCharacter::zero(q)).add_term(&w.finite, w.delta, 1);
            }
            let got = d.pieri_coeffs(&l, &x, q).unwrap();
            assert_eq!(got.terms, want, "{s}{n} {l:?} {x:?}");
        }
    }
}

#[test]
fn verify_pieri_examples() {
    let d = datum(Series::A, 1);
    let r = d.verify_pieri(&[1], &d.aff_identity(), &[1], -2).unwrap();
    assert!(r.passed(), "{:?}", r.character.mismatch);
    let r = d.verify_pieri(&[1], &d.aff_s(1), &[2], -2).unwrap();
    assert!(r.passed(), "{:?}", r.character.mismatch);
    let a2 = datum(Series::A, 2);
    for x in nonneg_window(&a2, 2) {
        let r = a2.verify_pieri(&[1, 0], &x, &[1, 1], -1).unwrap();
        assert!(r.passed(), "{x:?}: {:?}", r.character.mismatch);
    }
}

#[test]
fn dropping_a_bucket_is_detected() {
    let d = datum(Series::A, 1);
    let x = d.aff_identity();
    let mut c = d.pieri_coeffs(&[1], &x, -2).unwrap();
    assert!(d.verify_pieri_combo(&c, &x, &[1]).unwrap().passed());
    let key = c.terms.keys().next().unwrap().clone();
    c.terms.remove(&key);
    assert!(!d.verify_pieri_combo(&c, &x, &[1]).unwrap().passed());
}

#[test]
fn classical_degeneration() {
    for (s, n, lambdas) in [
        (Series::A, 2, vec![vec![1, 0], vec![1, 1]]),
        (Series::A, 1, vec![vec![1], vec![2]]),
        (Series::C, 2, vec![vec![1, 0], vec![0, 1]]),
    ] {
        let d = datum(s, n);
        for l in lambdas {
            for w in d.enumerate_weyl_group().unwrap() {
                let x = d.aff_from_finite(&w);
                let layer = d.pieri_coeffs(&l, &x, 0).unwrap().layer(0);
                let mut got = BTreeMap::new();
                for (y, g) in layer {
                    assert!(y.xi.iter().all(|&c| c == 0), "degree-0 key {y:?} is not finite");
                    got.insert(y.w.clone(), g.terms().map(|(v, c)| (v.clone(), c)).collect::<BTreeMap<_, _>>());
                }
                assert_eq!(got, finite_pieri_chevalley(&d, &l, &w).unwrap(), "{s}{n} {l:?} {w:?}");
            }
        }
    }
}

#[test]
fn translation_covariance() {
    for (s, n, l) in [(Series::A, 1, vec![1]), (Series::A, 1, vec![2]), (Series::A, 2, vec![1, 0]), (Series::A, 2, vec![0, 1])] {
        let d = datum(s, n);
        for x in nonneg_window(&d, 2) {
            for xi in box_points(n, 0, 1) {
                let base = d.pieri_coeffs(&l, &x, -1).unwrap();
                let predicted = d.pieri_translate(&base, &xi);
                let shifted = d.pieri_coeffs(&l, &d.right_translate(&x, &xi), predicted.q_min).unwrap();
                assert_eq!(shifted.q_min, predicted.q_min);
                assert_eq!(shifted.terms.len(), predicted.terms.len(), "{s}{n} {l:?} {x:?} {xi:?}");
                for (y, g) in &predicted.terms {
                    assert!(shifted.terms[y].agrees_with(g), "{s}{n} {l:?} {x:?} {xi:?} key {y:?}");
                }
            }
        }
    }
}
