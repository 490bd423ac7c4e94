use std::f64::consts::TAU;

use chabauty::{
    classify, classify_limit_r, lcm_rule, verify_convergence, CStarSubgroup, ExtendedReal, MLimit,
    MParam, Param, RSubgroup, Rational, SequenceSchedule, SequenceSpec, Subgroup, ThetaLimit,
    ThetaSchedule,
};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fin(v: f64) -> ExtendedReal {
    ExtendedReal::finite(v)
}

fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p, q).unwrap()
}

fn cstar(s: SequenceSpec) -> CStarSubgroup {
    match classify(&s).unwrap().0 {
        Subgroup::CStar(g) => g,
        other => panic!("{other}"),
    }
}

#[test]
fn every_table_row_has_its_limit() {
    use CStarSubgroup as G;
    let b = |m, re, theta, t| SequenceSpec::B {
        m_limit: m,
        re_limit: re,
        theta,
        t_limit: t,
    };
    let rows: Vec<(SequenceSpec, CStarSubgroup)> = vec![
        (
            SequenceSpec::A {
                m_limit: MLimit::Infinity,
            },
            G::CInfinity,
        ),
        (
            SequenceSpec::A {
                m_limit: MLimit::Finite(5),
            },
            G::A { m: 5 },
        ),
        (
            b(MLimit::Infinity, fin(1.5), ThetaLimit::Real(0.2), None),
            G::C { x: 1.5 },
        ),
        (
            b(
                MLimit::Finite(3),
                ExtendedReal::PosInfinity,
                ThetaLimit::Real(0.2),
                None,
            ),
            G::A { m: 3 },
        ),
        (
            b(MLimit::Finite(3), fin(0.5), ThetaLimit::Real(0.2), None),
            G::b(3, Complex64::new(0.5, TAU * 0.2)).unwrap(),
        ),
        (SequenceSpec::C { x_limit: fin(0.0) }, G::Full),
        (
            SequenceSpec::C {
                x_limit: ExtendedReal::PosInfinity,
            },
            G::CInfinity,
        ),
        (SequenceSpec::C { x_limit: fin(0.25) }, G::C { x: 0.25 }),
        (
            SequenceSpec::D {
                m_limit: MLimit::Infinity,
                t_limit: fin(1.0),
            },
            G::Full,
        ),
        (
            SequenceSpec::D {
                m_limit: MLimit::Finite(2),
                t_limit: ExtendedReal::NegInfinity,
            },
            G::Full,
        ),
        (
            SequenceSpec::D {
                m_limit: MLimit::Finite(2),
                t_limit: fin(0.5),
            },
            G::D { m: 2, t: 0.5 },
        ),
        // Degenerating lattices: rational and irrational angles.
        (
            b(
                MLimit::Finite(1),
                fin(0.0),
                ThetaLimit::Rational(rat(1, 2)),
                Some(fin(0.0)),
            ),
            G::D { m: 2, t: 0.0 },
        ),
        (
            b(
                MLimit::Finite(2),
                fin(0.0),
                ThetaLimit::Rational(rat(1, 3)),
                Some(fin(1.0)),
            ),
            G::D { m: 6, t: 1.0 },
        ),
        (
            b(
                MLimit::Finite(3),
                fin(0.0),
                ThetaLimit::Rational(rat(1, 2)),
                Some(fin(-2.0)),
            ),
            G::D { m: 6, t: -2.0 },
        ),
        (
            b(
                MLimit::Finite(3),
                fin(0.0),
                ThetaLimit::Rational(rat(1, 2)),
                Some(ExtendedReal::PosInfinity),
            ),
            G::Full,
        ),
        (
            b(MLimit::Finite(1), fin(0.0), ThetaLimit::Irrational, None),
            G::Full,
        ),
    ];
    for (spec, expected) in rows {
        assert!(cstar(spec).approx_eq(&expected), "{spec:?}");
    }
}

proptest! {
    #[test]
    fn r_parameterization_is_monotone_and_injective(a in 1e-6f64..1e6, b in 1e-6f64..1e6) {
        let g = |r: f64| classify_limit_r(fin(r)).unwrap().0;
        prop_assume!(a != b);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (Subgroup::Real(RSubgroup::Cyclic { r: rl }), Subgroup::Real(RSubgroup::Cyclic { r: rh })) = (g(lo), g(hi))
        else { panic!("finite positive parameters give cyclic groups") };
        prop_assert!(rl < rh);
        prop_assert_eq!((rl, rh), (lo, hi));
    }

    #[test]
    fn interior_limits_commute_with_canonicalization(
        m in 1u32..6, x in 0.2f64..3.0, theta in -3.0f64..3.0, a in -1.0f64..1.0
    ) {
        let s = SequenceSchedule::B {
            m: MParam::Constant { m },
            x: Param::Approach { limit: x, a, k: 1.0 },
            theta: ThetaSchedule::Real { value: theta },
        };
        let limit = classify(&s.limit_spec().unwrap()).unwrap().0;
        let canonical = CStarSubgroup::b(m, Complex64::new(x, TAU * theta)).unwrap();
        prop_assert!(limit.approx_eq(&Subgroup::CStar(canonical)));
        let far = s.term(1_000_000_000).unwrap();
        let (Subgroup::CStar(CStarSubgroup::B { z: zf, .. }), CStarSubgroup::B { z: zc, .. }) = (far, canonical)
        else { panic!() };
        let h = TAU / f64::from(m);
        let d = (zf.im - zc.im).rem_euclid(h);
        prop_assert!((zf.re - zc.re).abs() < 1e-8 && d.min(h - d) < 1e-8);
    }
}

#[test]
fn boundary_parameters_map_to_the_ends() {
    assert_eq!(
        classify_limit_r(fin(0.0)).unwrap().0,
        Subgroup::Real(RSubgroup::Line)
    );
    assert_eq!(
        classify_limit_r(ExtendedReal::PosInfinity).unwrap().0,
        Subgroup::Real(RSubgroup::Trivial)
    );
}

#[test]
fn lcm_rule_agrees_with_independent_lcm() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for m in 1u64..=100 {
        for q in 1u64..=100 {
            for _ in 0..10 {
                let p = loop {
                    let p: i64 = rng.gen_range(-1000..=1000);
                    if num_integer::gcd(p.unsigned_abs(), q) == 1 {
                        break p;
                    }
                };
                assert_eq!(
                    lcm_rule(m, p, q).unwrap(),
                    num_integer::lcm(m, q),
                    "m={m} p={p} q={q}"
                );
            }
        }
    }
}

fn approach(rng: &mut ChaCha8Rng, limit: f64) -> Param {
    Param::Approach {
        limit,
        a: rng.gen_range(0.5..2.0),
        k: 1.0,
    }
}

fn random_schedule(i: usize, rng: &mut ChaCha8Rng) -> (SequenceSchedule, u64) {
    let m = MParam::Constant {
        m: rng.gen_range(1..4),
    };
    let theta = Rational::new(rng.gen_range(0..4), 4).map_or(rat(1, 3), |r| r);
    let interior = rng.gen_range(0.5..2.0);
    let slope = rng.gen_range(-2.0..2.0);
    match i % 10 {
        0 => (
            SequenceSchedule::R {
                r: approach(rng, 0.0),
            },
            200,
        ),
        1 => (
            SequenceSchedule::A {
                m: MParam::Linear {
                    a: rng.gen_range(1..3),
                },
            },
            200,
        ),
        2 => (
            SequenceSchedule::C {
                x: approach(rng, 0.0),
            },
            200,
        ),
        3 => (
            SequenceSchedule::C {
                x: approach(rng, interior),
            },
            200,
        ),
        4 => (
            SequenceSchedule::D {
                m: MParam::Linear { a: 1 },
                t: Param::Constant {
                    value: rng.gen_range(-2.0..2.0),
                },
            },
            200,
        ),
        5 => (
            SequenceSchedule::D {
                m,
                t: approach(rng, slope),
            },
            200,
        ),
        6 => (
            SequenceSchedule::B {
                m,
                x: approach(rng, 0.0),
                theta: ThetaSchedule::Slope {
                    theta,
                    slope: rng.gen_range(-2.0..2.0),
                },
            },
            400,
        ),
        7 => (
            SequenceSchedule::B {
                m,
                x: approach(rng, 0.0),
                theta: ThetaSchedule::Irrational {
                    value: (5f64.sqrt() - 1.0) / 2.0,
                },
            },
            4000,
        ),
        8 => (
            SequenceSchedule::B {
                m,
                x: approach(rng, interior),
                theta: ThetaSchedule::Real {
                    value: rng.gen_range(0.0..1.0),
                },
            },
            200,
        ),
        _ => (
            SequenceSchedule::B {
                m: MParam::Linear { a: 1 },
                x: approach(rng, interior),
                theta: ThetaSchedule::Real {
                    value: rng.gen_range(0.0..1.0),
                },
            },
            200,
        ),
    }
}

#[test]
fn classifier_and_engine_agree_on_random_schedules() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..50 {
        let (s, n) = random_schedule(i, &mut rng);
        let table = verify_convergence(&s, &[n], 4.0, 0.05).unwrap();
        let row = table.rows[0];
        assert!(
            row.d_hausdorff < 3.0 * row.floor,
            "{s:?} -> {}: d = {} floor = {}",
            table.limit,
            row.d_hausdorff,
            row.floor
        );
    }
}
