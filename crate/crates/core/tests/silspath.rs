mod common;

use std::collections::{BTreeSet, HashSet, VecDeque};

use common::datum;
use silc_core::oracle::brute_force_sils;
use silc_core::silspath::{AffineWeight, ParTuple, Rational, SiLSPath};
use silc_core::{AffineWeylElement, CartanDatum, Series};

fn r(p: i64, q: i64) -> Rational {
    Rational::new(p, q)
}

fn path(d: &CartanDatum, lambda: &[i64], dirs: Vec<AffineWeylElement>, breaks: &[(i64, i64)]) -> SiLSPath {
    d.make_path(lambda, dirs, breaks.iter().map(|&(p, q)| r(p, q)).collect()).unwrap()
}

fn aff(d: &CartanDatum, word: &[usize], xi: &[i64]) -> AffineWeylElement {
    d.aff_from_word(word, xi).unwrap()
}

fn aw(finite: &[i64], delta: i64) -> AffineWeight {
    AffineWeight { finite: finite.iter().copied().collect(), delta }
}

#[test]
fn validation_examples() {
    let a1 = datum(Series::A, 1);
    assert!(a1.validate_path(&a1.straight_path(&[1])).unwrap());
    let p = path(&a1, &[2], vec![aff(&a1, &[], &[1]), a1.aff_identity()], &[(0, 1), (1, 2), (1, 1)]);
    assert!(a1.validate_path(&p).unwrap());
    let p = path(&a1, &[1], vec![aff(&a1, &[1], &[0]), a1.aff_identity()], &[(0, 1), (1, 2), (1, 1)]);
    assert!(!a1.validate_path(&p).unwrap());
    // Malformed breaks.
    assert!(a1.make_path(&[1], vec![a1.aff_identity()], vec![r(0, 1), r(1, 2)]).is_err());
    assert!(a1.make_path(&[2], vec![a1.aff_identity(), a1.aff_identity()], vec![r(0, 1), r(1, 2), r(1, 2)]).is_err());
    assert!(a1.make_path(&[-1], vec![a1.aff_identity()], vec![r(0, 1), r(1, 1)]).is_err());
    // Increasing instead of decreasing directions.
    let p = path(&a1, &[2], vec![a1.aff_identity(), aff(&a1, &[], &[1])], &[(0, 1), (1, 2), (1, 1)]);
    assert!(!a1.validate_path(&p).unwrap());
}

#[test]
fn height_function_examples() {
    let a1 = datum(Series::A, 1);
    let p = a1.straight_path(&[1]);
    let h = a1.h_function(1, &p);
    assert_eq!(h.points, vec![(r(0, 1), r(0, 1)), (r(1, 1), r(1, 1))]);
    assert_eq!(h.min, 0);
    let h0 = a1.h_function(0, &p);
    assert_eq!(h0.points[1].1, r(-1, 1));
    assert_eq!(h0.min, -1);
}

#[test]
fn root_operator_examples() {
    let a1 = datum(Series::A, 1);
    let p = a1.straight_path(&[1]);
    let f = a1.f_op(1, &p).unwrap();
    assert_eq!(f.directions, vec![aff(&a1, &[1], &[0])]);
    assert_eq!(f.breaks, vec![r(0, 1), r(1, 1)]);
    assert!(a1.e_op(1, &p).is_none());
    let e0 = a1.e_op(0, &p).unwrap();
    assert_eq!(a1.path_wt(&e0), aw(&[-1], 1));
    assert!(a1.validate_path(&e0).unwrap());
    assert_eq!((a1.eps(1, &p), a1.phi(1, &p), a1.eps(0, &p)), (0, 1, 1));
    assert_eq!(a1.path_wt(&p), aw(&[1], 0));
    let t = path(&a1, &[1], vec![aff(&a1, &[], &[1])], &[(0, 1), (1, 1)]);
    assert_eq!(a1.path_wt(&t), aw(&[1], -1));
    assert_eq!(a1.path_wt(&f), aw(&[-1], 0));
}

#[test]
fn weyl_action_and_translation_examples() {
    let a1 = datum(Series::A, 1);
    let p = a1.straight_path(&[1]);
    assert_eq!(a1.weyl_act_path(&a1.aff_identity(), &p).unwrap(), p);
    assert_eq!(a1.weyl_act_path(&a1.aff_s(1), &p).unwrap(), a1.f_op(1, &p).unwrap());
    let t = a1.translation(&[1]);
    assert_eq!(a1.weyl_act_path(&t, &p).unwrap(), a1.extremal_weyl_action(&t, &p));
    let sh = a1.t_shift(&[1], &p);
    assert_eq!(sh.directions, vec![t.clone()]);
    assert_eq!(a1.path_wt(&sh), aw(&[1], -1));
    assert_eq!(a1.t_shift(&[0], &p), p);
    assert_eq!(a1.t_shift(&[-1], &sh), p);
}

#[test]
fn partitions_and_extremal_paths() {
    let a1 = datum(Series::A, 1);
    assert_eq!(a1.par_elements(&[1], 5), vec![ParTuple::empty(1)]);
    let p2 = a1.par_elements(&[2], 2);
    assert_eq!(p2.iter().map(|p| p.parts[0].clone()).collect::<Vec<_>>(), vec![vec![], vec![1], vec![2]]);
    let a2 = datum(Series::A, 2);
    let p = a2.par_elements(&[1, 1], 1);
    assert_eq!(p, vec![ParTuple::empty(2)]);
    assert_eq!(a2.par_elements(&[2, 1], 2).len(), 3);

    assert_eq!(a1.par_to_path(&ParTuple::empty(1), &[2]).unwrap(), a1.straight_path(&[2]));
    let one = ParTuple { parts: vec![vec![1]] };
    let e1 = a1.par_to_path(&one, &[2]).unwrap();
    assert_eq!(e1, path(&a1, &[2], vec![aff(&a1, &[], &[1]), a1.aff_identity()], &[(0, 1), (1, 2), (1, 1)]));
    assert!(a1.validate_path(&e1).unwrap());
    let two = ParTuple { parts: vec![vec![2]] };
    let e2 = a1.par_to_path(&two, &[2]).unwrap();
    assert_eq!(e2.directions[0], aff(&a1, &[], &[2]));
    assert!(a1.par_to_path(&one, &[1]).is_err());
    assert!(a1.par_to_path(&ParTuple { parts: vec![vec![1, 2]] }, &[3]).is_err());
}

#[test]
fn extremal_elements_round_trip_and_weight() {
    for (s, n, lambdas) in [
        (Series::A, 1, vec![vec![1], vec![2], vec![3]]),
        (Series::A, 2, vec![vec![1, 1], vec![2, 0], vec![2, 1], vec![3, 0]]),
        (Series::C, 2, vec![vec![2, 1], vec![0, 2]]),
        (Series::G, 2, vec![vec![2, 0]]),
    ] {
        let d = datum(s, n);
        for lambda in lambdas {
            let reps = d.crystal_component_reps(&lambda, -3).unwrap();
            for (rho, p) in &reps {
                assert!(d.validate_path(p).unwrap(), "{p:?}");
                assert_eq!(d.extremal_par(p).as_ref(), Some(rho), "{s}{n} {lambda:?} {p:?}");
                let w = d.path_wt(p);
                assert_eq!(w.finite.as_slice(), lambda.as_slice());
                assert_eq!(w.delta, -rho.size());
                // Extremal: every e_i and f_i string has length <wt, alpha_i^vee>.
                for i in 0..=n {
                    let c = d.affine_weight_pair(&w, i);
                    if c >= 0 {
                        assert_eq!(d.eps(i, p), 0);
                    } else {
                        assert_eq!(d.phi(i, p), 0);
                    }
                }
            }
        }
    }
}

#[test]
fn weyl_action_matches_closed_form_on_extremal_paths() {
    for (s, n, lambda) in [(Series::A, 1, vec![2]), (Series::A, 2, vec![1, 1]), (Series::A, 2, vec![2, 0]), (Series::C, 2, vec![1, 1])] {
        let d = datum(s, n);
        let xs = common::window(&d, -1, 1);
        for (_, p) in d.crystal_component_reps(&lambda, -2).unwrap() {
            for x in xs.iter().take(60) {
                let a = d.weyl_act_path(x, &p).unwrap();
                assert_eq!(a, d.extremal_weyl_action(x, &p), "x = {x:?}, p = {p:?}");
                assert!(d.validate_path(&a).unwrap());
            }
        }
    }
}

#[test]
fn enumeration_examples() {
    let a1 = datum(Series::A, 1);
    let e = a1.aff_identity();
    let s1 = a1.aff_s(1);
    let got = a1.enumerate_sils(&[1], &e, 0).unwrap();
    assert_eq!(got.iter().map(|p| p.directions.clone()).collect::<BTreeSet<_>>(), BTreeSet::from([vec![e.clone()], vec![s1.clone()]]));
    let got = a1.enumerate_sils(&[1], &e, -1).unwrap();
    let weights: BTreeSet<AffineWeight> = got.iter().map(|p| a1.path_wt(p)).collect();
    assert_eq!(weights, BTreeSet::from([aw(&[1], 0), aw(&[-1], 0), aw(&[1], -1), aw(&[-1], -1)]));
    let got = a1.enumerate_sils(&[1], &s1, 0).unwrap();
    assert_eq!(got.len(), 1);
    assert_eq!(got[0].directions, vec![s1]);
}

#[test]
fn enumeration_matches_brute_force() {
    let cases: Vec<(Series, usize, Vec<i64>, i64)> = vec![
        (Series::A, 1, vec![1], -3),
        (Series::A, 1, vec![2], -2),
        (Series::A, 1, vec![3], -1),
        (Series::A, 2, vec![1, 0], -2),
        (Series::A, 2, vec![0, 1], -1),
        (Series::A, 2, vec![1, 1], -1),
        (Series::C, 2, vec![1, 0], -1),
        (Series::C, 2, vec![0, 1], -1),
    ];
    for (s, n, lambda, q) in cases {
        let d = datum(s, n);
        let xs: Vec<AffineWeylElement> = common::window(&d, -1, 1).into_iter().filter(|x| x.xi.iter().all(|&c| c.abs() <= 1)).collect();
        let mut tested = 0;
        for x in xs.iter().step_by(5).take(12) {
            let fast = d.enumerate_sils(&lambda, x, q).unwrap();
            let slow = brute_force_sils(&d, &lambda, x, q).unwrap();
            assert_eq!(fast, slow, "{s}{n} lambda={lambda:?} x={x:?} q={q}");
            tested += fast.len();
        }
        assert!(tested > 0);
    }
}

/// Crystal axioms, closure, and the translation suite on a window.
fn crystal_suite(d: &CartanDatum, lambda: &[i64], q: i64) {
    let n = d.rank();
    let all = d.enumerate_sils(lambda, &d.aff_identity(), q - 2).unwrap();
    let inside = d.enumerate_sils(lambda, &d.aff_identity(), q).unwrap();
    let pool: HashSet<SiLSPath> = all.iter().cloned().collect();
    for p in &inside {
        let w = d.path_wt(p);
        for i in 0..=n {
            let a = d.alpha_affine_weight(i);
            assert_eq!(d.phi(i, p) - d.eps(i, p), d.affine_weight_pair(&w, i));
            let mut k = 0;
            let mut cur = p.clone();
            while let Some(nx) = d.f_op(i, &cur) {
                assert!(d.validate_path(&nx).unwrap(), "f_{i} {cur:?} -> {nx:?}");
                assert_eq!(d.e_op(i, &nx).as_ref(), Some(&cur));
                let (w0, w1) = (d.path_wt(&cur), d.path_wt(&nx));
                assert_eq!(w1.delta, w0.delta - a.delta);
                assert_eq!(w1.finite.iter().zip(&a.finite).map(|(x, y)| x + y).collect::<Vec<_>>(), w0.finite.to_vec());
                cur = nx;
                k += 1;
            }
            assert_eq!(k, d.phi(i, p));
            let mut k = 0;
            let mut cur = p.clone();
            while let Some(nx) = d.e_op(i, &cur) {
                assert!(d.validate_path(&nx).unwrap());
                assert_eq!(d.f_op(i, &nx).as_ref(), Some(&cur));
                cur = nx;
                k += 1;
            }
            assert_eq!(k, d.eps(i, p));
            // Root operators stay inside SiLS_{⪰e} except f_0-type moves that may
            // leave; whatever stays in the window must be in the enumeration.
            for nx in [d.e_op(i, p), d.f_op(i, p)].into_iter().flatten() {
                if d.path_wt(&nx).delta >= q - 2 && d.si_leq_translation(&d.aff_identity(), nx.final_direction()).unwrap() {
                    assert!(pool.contains(&nx), "{nx:?} missing from enumeration");
                }
            }
        }
        // T_xi commutes with root operators and shifts the weight.
        for xi in common::box_points(n, -2, 2) {
            let t = d.t_shift(&xi, p);
            assert_eq!(d.t_shift(&xi.iter().map(|c| -c).collect::<Vec<_>>(), &t), *p);
            let (w, wt) = (d.path_wt(p), d.path_wt(&t));
            assert_eq!(wt.finite, w.finite);
            assert_eq!(wt.delta, w.delta - silc_core::rootdata::pair(lambda, &xi));
            assert_eq!(d.cl_project(&t), d.cl_project(p));
            for i in 0..=n {
                assert_eq!(d.eps(i, &t), d.eps(i, p));
                assert_eq!(d.phi(i, &t), d.phi(i, p));
                assert_eq!(d.f_op(i, &t), d.f_op(i, p).map(|x| d.t_shift(&xi, &x)));
                assert_eq!(d.e_op(i, &t), d.e_op(i, p).map(|x| d.t_shift(&xi, &x)));
            }
        }
        // cl commutes with root operators.
        let c = d.cl_project(p);
        for i in 0..=n {
            assert_eq!(d.qls_f(i, &c), d.f_op(i, p).map(|x| d.cl_project(&x)));
            assert_eq!(d.qls_e(i, &c), d.e_op(i, p).map(|x| d.cl_project(&x)));
            assert_eq!(d.qls_eps(i, &c), d.eps(i, p));
            assert_eq!(d.qls_phi(i, &c), d.phi(i, p));
        }
        assert_eq!(d.qls_wt(&c), w_fin(d, p));
    }
}

fn w_fin(d: &CartanDatum, p: &SiLSPath) -> silc_core::Weight {
    d.path_wt(p).finite
}

#[test]
fn crystal_axioms_a1() {
    let d = datum(Series::A, 1);
    crystal_suite(&d, &[1], -2);
    crystal_suite(&d, &[2], -2);
}

#[test]
fn crystal_axioms_a2() {
    let d = datum(Series::A, 2);
    crystal_suite(&d, &[1, 0], -2);
    crystal_suite(&d, &[1, 1], -1);
}

#[test]
fn crystal_axioms_c2_g2() {
    crystal_suite(&datum(Series::C, 2), &[1, 1], -1);
    crystal_suite(&datum(Series::G, 2), &[1, 0], -1);
}

/// The projected crystal is connected.
#[test]
fn quantum_ls_paths_connected() {
    for (s, n, lambda) in [(Series::A, 1, vec![1]), (Series::A, 1, vec![2]), (Series::A, 2, vec![1, 0]), (Series::A, 2, vec![1, 1]), (Series::A, 2, vec![2, 1])] {
        let d = datum(s, n);
        let paths = d.enumerate_sils(&lambda, &d.aff_identity(), -1).unwrap();
        let targets: BTreeSet<_> = paths.iter().map(|p| d.cl_project(p)).collect();
        let start = d.cl_project(&d.straight_path(&lambda));
        let mut seen = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            for i in 0..=n {
                for nx in [d.qls_e(i, &p), d.qls_f(i, &p)].into_iter().flatten() {
                    if seen.insert(nx.clone()) {
                        queue.push_back(nx);
                    }
                }
            }
        }
        assert!(targets.is_subset(&seen), "{s}{n} {lambda:?}");
    }
}

#[test]
fn components_are_distinct() {
    let d = datum(Series::A, 1);
    let reps = d.crystal_component_reps(&[2], -2).unwrap();
    assert_eq!(reps.len(), 3);
    // Bounded BFS from each representative never meets another one.
    for (k, (_, p)) in reps.iter().enumerate() {
        let mut seen = HashSet::from([p.clone()]);
        let mut queue = VecDeque::from([p.clone()]);
        while let Some(c) = queue.pop_front() {
            if seen.len() > 400 {
                break;
            }
            for i in 0..=1 {
                for nx in [d.e_op(i, &c), d.f_op(i, &c)].into_iter().flatten() {
                    if d.path_wt(&nx).delta >= -6 && seen.insert(nx.clone()) {
                        queue.push_back(nx);
                    }
                }
            }
        }
        for (l, (_, q)) in reps.iter().enumerate() {
            if l != k {
                assert!(!seen.contains(q));
            }
        }
    }
}

#[test]
fn enumeration_window_is_monotone_and_budgeted() {
    let d = datum(Series::A, 2);
    let small = d.enumerate_sils(&[1, 1], &d.aff_identity(), -1).unwrap();
    let big = d.enumerate_sils(&[1, 1], &d.aff_identity(), -2).unwrap();
    let set: HashSet<_> = big.iter().collect();
    assert!(small.iter().all(|p| set.contains(p)));
    assert!(big.iter().filter(|p| !small.contains(p)).all(|p| d.path_wt(p).delta < -1));
    let tight = silc_core::Budget { max_nodes: 1_000_000, max_paths: 5 };
    assert!(matches!(d.enumerate_sils_budget(&[1, 1], &d.aff_identity(), -2, &tight), Err(silc_core::Error::Budget(_))));
    // Classical layer: q-degree 0 at x = e has dim L(lambda) elements.
    let layer0 = small.iter().filter(|p| d.path_wt(p).delta == 0).count();
    assert_eq!(layer0 as u128, d.weyl_dimension(&[1, 1]));
}
