mod common;

use common::datum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use silc_core::nildaha::DELTA_EXPONENT;
use silc_core::{ClassTag, GroupAlgebraElement, LaurentCharacter, NilDahaRep, Series, TranslationKClass};

fn mono(nu: &[i64], k: i64) -> LaurentCharacter {
    LaurentCharacter::monomial(nu, k)
}

/// `D_i` on a monomial by the string formula, with `e^{alpha_0} = q^{DELTA} e^{-theta}`.
fn string_demazure(rep: &NilDahaRep, i: usize, nu: &[i64], k: i64) -> LaurentCharacter {
    let (a, ka) = rep.alpha(i);
    let n = if i == 0 {
        -silc_core::rootdata::pair(nu, rep.datum.theta_check())
    } else {
        nu[i - 1]
    };
    let at = |t: i64| -> LaurentCharacter {
        let w: Vec<i64> = nu.iter().zip(&a).map(|(x, y)| x - t * y).collect();
        mono(&w, k - t * ka)
    };
    let mut out = LaurentCharacter::zero();
    if n >= 0 {
        for t in 0..=n {
            out = &out + &at(t);
        }
    } else {
        for t in 1..=(-n - 1) {
            out = &out - &at(-t);
        }
    }
    out
}

#[test]
fn s0_examples() {
    let a1 = datum(Series::A, 1);
    let rep = NilDahaRep::new(&a1);
    assert_eq!(rep.s0_act(&mono(&[0], 0)), mono(&[0], 0));
    assert_eq!(rep.s0_act(&mono(&[1], 0)), mono(&[-1], DELTA_EXPONENT));
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (s, n) in [(Series::A, 1), (Series::A, 2), (Series::C, 2), (Series::G, 2)] {
        let d = datum(s, n);
        let rep = NilDahaRep::new(&d);
        for _ in 0..20 {
            let nu: Vec<i64> = (0..n).map(|_| rng.gen_range(-4..=4)).collect();
            let f = mono(&nu, rng.gen_range(-3..=3));
            assert_eq!(rep.s0_act(&rep.s0_act(&f)), f);
        }
        // Weights orthogonal to theta and q are fixed.
        let q = mono(&vec![0; n], 1);
        assert_eq!(rep.s0_act(&q), q);
    }
    let a2 = datum(Series::A, 2);
    let rep = NilDahaRep::new(&a2);
    let perp = mono(&[1, -1], 0);
    assert_eq!(rep.s0_act(&perp), perp);
}

#[test]
fn t_op_examples() {
    let a1 = datum(Series::A, 1);
    let rep = NilDahaRep::new(&a1);
    assert!(rep.t_op(1, &mono(&[0], 0)).unwrap().is_zero());
    assert_eq!(rep.t_op(1, &mono(&[1], 0)).unwrap(), mono(&[-1], 0));
    assert!(rep.t_op(0, &mono(&[0], 0)).unwrap().is_zero());
    assert!(rep.t_op(2, &mono(&[0], 0)).is_err());
    // e(0) is the identity and e(w) e(-w) = 1.
    let f = &mono(&[2], -1) + &mono(&[-1], 3);
    assert_eq!(rep.e_op_mult(&[0], &f), f);
    assert_eq!(rep.e_op_mult(&[1], &rep.e_op_mult(&[-1], &f)), f);
    // T_1 e(w)(1) - e(-w) T_1(1) = e^{-w} = (e(-w) - e(w)) / (1 - e(alpha_1)) (1).
    let one = LaurentCharacter::one(1);
    let left = &rep.t_op(1, &rep.e_op_mult(&[1], &one)).unwrap() - &rep.e_op_mult(&[-1], &rep.t_op(1, &one).unwrap());
    assert_eq!(left, mono(&[-1], 0));
    assert_eq!(rep.cross_factor(1, &[1]).unwrap(), mono(&[-1], 0));
}

#[test]
fn demazure_matches_string_formula_and_finite_operator() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (s, n) in [(Series::A, 1), (Series::A, 2), (Series::B, 2), (Series::C, 2), (Series::G, 2)] {
        let d = datum(s, n);
        for conv in [1, -1] {
            let rep = NilDahaRep::with_convention(&d, conv);
            for _ in 0..20 {
                let nu: Vec<i64> = (0..n).map(|_| rng.gen_range(-4..=4)).collect();
                let k = rng.gen_range(-2..=2);
                for i in 0..=n {
                    let t = rep.t_op(i, &mono(&nu, k)).unwrap();
                    assert_eq!(&t + &mono(&nu, k), string_demazure(&rep, i, &nu, k), "{s}{n} i={i} {nu:?}");
                    // T_i^2 = -T_i.
                    assert_eq!(rep.t_op(i, &t).unwrap(), -&t);
                }
                // On q-degree 0 the finite operators agree with D_i - 1.
                let g = GroupAlgebraElement::monomial(&nu);
                for i in 1..=n {
                    let want = &LaurentCharacter::from_group_algebra(&d.demazure_op(i, &g).unwrap()) - &mono(&nu, 0);
                    assert_eq!(rep.t_op(i, &mono(&nu, 0)).unwrap(), want);
                }
            }
        }
    }
}

#[test]
fn braid_orders() {
    let a1 = datum(Series::A, 1);
    assert_eq!(NilDahaRep::new(&a1).braid_order(0, 1), None);
    let a2 = datum(Series::A, 2);
    let r = NilDahaRep::new(&a2);
    assert_eq!((r.braid_order(0, 1), r.braid_order(0, 2), r.braid_order(1, 2)), (Some(3), Some(3), Some(3)));
    let c2 = datum(Series::C, 2);
    let r = NilDahaRep::new(&c2);
    assert_eq!((r.braid_order(0, 1), r.braid_order(0, 2), r.braid_order(1, 2)), (Some(4), Some(2), Some(4)));
    let g2 = datum(Series::G, 2);
    let r = NilDahaRep::new(&g2);
    assert_eq!(r.braid_order(1, 2), Some(6));
}

#[test]
fn relations_hold_in_both_consistent_conventions() {
    for (s, n) in [(Series::A, 1), (Series::A, 2), (Series::C, 2), (Series::B, 2), (Series::G, 2), (Series::A, 3)] {
        let d = datum(s, n);
        let r = d.verify_nildaha(100, 17, false);
        assert!(r.passed(), "{s}{n}: {}", r.failures[0]);
        assert_eq!(r.checked["quadratic"], 100 * (n + 1));
        assert_eq!(r.checked["cross"], 100 * (n + 1));
        assert!(s == Series::A && n == 1 || r.checked["braid"] > 0);
        let r = NilDahaRep::with_convention(&d, -DELTA_EXPONENT).verify(50, 3);
        assert!(r.passed(), "{s}{n} opposite convention: {}", r.failures[0]);
    }
}

#[test]
fn corrupted_convention_fails_at_affine_cross_relation() {
    for (s, n) in [(Series::A, 1), (Series::A, 2), (Series::C, 2)] {
        let d = datum(s, n);
        let r = d.verify_nildaha(50, 5, true);
        assert!(!r.passed());
        assert!(r.fails_at("cross", 0), "{s}{n}");
        // The finite part is untouched by the corruption.
        assert!(r.failures.iter().all(|f| f.i == 0 || f.j == Some(0) || f.relation == "braid"));
    }
}

#[test]
fn report_is_deterministic() {
    let d = datum(Series::A, 2);
    assert_eq!(d.verify_nildaha(40, 9, true), d.verify_nildaha(40, 9, true));
}

fn class(d: &silc_core::CartanDatum, xi: &[i64], lambda: &[i64]) -> TranslationKClass {
    TranslationKClass {
        tag: ClassTag::Translation,
        xi: xi.iter().copied().collect(),
        bundle_twist: vec![0; d.rank()].into_iter().collect(),
        character_twist: lambda.iter().copied().collect(),
    }
}

#[test]
fn bfu_examples() {
    let a1 = datum(Series::A, 1);
    // Untwisted classes are fixed by T~_i for i != 0.
    let c = class(&a1, &[1], &[0]);
    let out = a1.bfu_translation_action(1, &c).unwrap();
    assert_eq!(out, vec![(c.clone(), LaurentCharacter::one(1))]);
    // i = 0, lambda = w, xi = alpha^vee: te(-s_0 w) = q^{-1} e^{w} and
    // (e^{-w} - q^{-1} e^{w}) / (1 - q e^{-2w}) = -q^{-1} e^{w}.
    let out = a1.bfu_translation_action(0, &class(&a1, &[1], &[1])).unwrap();
    assert_eq!(out.len(), 2);
    let mut plain = class(&a1, &[1], &[0]);
    assert_eq!(out[0], (plain.clone(), -&mono(&[1], -DELTA_EXPONENT)));
    plain.tag = ClassTag::S0Translation;
    assert_eq!(out[1], (plain, mono(&[1], -DELTA_EXPONENT)));
    // Non-translation tags and negative xi are rejected.
    let mut bad = class(&a1, &[1], &[1]);
    bad.tag = ClassTag::S0Translation;
    assert!(a1.bfu_translation_action(0, &bad).is_err());
    assert!(a1.bfu_translation_action(1, &class(&a1, &[-1], &[0])).is_err());
}

/// Forgetting the tags, `T~_i` acts on the coefficient `te(-lambda)` as the
/// dual `f -> D_i(f^*)^*` of the polynomial-representation operator.
#[test]
fn bfu_collapses_to_dual_demazure() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (s, n) in [(Series::A, 1), (Series::A, 2), (Series::C, 2), (Series::G, 2)] {
        let d = datum(s, n);
        let rep = NilDahaRep::new(&d);
        for _ in 0..20 {
            let lambda: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
            let xi: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
            let c = class(&d, &xi, &lambda);
            for i in 0..=n {
                let out = d.bfu_translation_action(i, &c).unwrap();
                let total = out.iter().fold(LaurentCharacter::zero(), |acc, (_, g)| &acc + g);
                let want = rep.demazure(i, &mono(&lambda, 0)).unwrap().dual();
                assert_eq!(total, want, "{s}{n} i={i} {lambda:?}");
            }
            // Twisting by te(w_j) moves lambda to lambda - w_j before the action.
            for j in 1..=n {
                let mut twisted = lambda.clone();
                twisted[j - 1] -= 1;
                let out = d.bfu_translation_action(1, &class(&d, &xi, &twisted)).unwrap();
                let total = out.iter().fold(LaurentCharacter::zero(), |acc, (_, g)| &acc + g);
                assert_eq!(total, rep.demazure(1, &mono(&twisted, 0)).unwrap().dual());
            }
        }
    }
}
