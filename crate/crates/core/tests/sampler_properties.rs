use chabauty::hausdorff::directed_hausdorff;
use chabauty::sample::certify_covering;
use chabauty::{sample_subgroup, CStarSubgroup, CompactPoint, RSubgroup, Subgroup};
use num_complex::Complex64;
use proptest::prelude::*;

fn any_subgroup() -> impl Strategy<Value = Subgroup> {
    prop_oneof![
        Just(Subgroup::Real(RSubgroup::Trivial)),
        Just(Subgroup::Real(RSubgroup::Line)),
        (0.2f64..3.0).prop_map(|r| Subgroup::Real(RSubgroup::Cyclic { r })),
        (1u32..5).prop_map(|m| Subgroup::CStar(CStarSubgroup::a(m))),
        (1u32..4, 0.3f64..2.0, -3.0f64..3.0).prop_map(|(m, re, im)| Subgroup::CStar(
            CStarSubgroup::b(m, Complex64::new(re, im)).unwrap()
        )),
        (0.3f64..2.0).prop_map(|x| Subgroup::CStar(CStarSubgroup::c(x).unwrap())),
        (1u32..4, -2.0f64..2.0).prop_map(|(m, t)| Subgroup::CStar(CStarSubgroup::d(m, t).unwrap())),
        Just(Subgroup::CStar(CStarSubgroup::CInfinity)),
        Just(Subgroup::CStar(CStarSubgroup::Full)),
    ]
}

fn on_true_set(g: &Subgroup, p: &CompactPoint) -> bool {
    match (g, p) {
        (_, CompactPoint::Infinity) => true,
        (Subgroup::Real(g), CompactPoint::Line(x)) => g.contains(*x, 1e-9),
        (Subgroup::CStar(g), CompactPoint::Cylinder { x, theta }) => {
            g.contains(Complex64::new(*x, *theta), 1e-9)
        }
        _ => false,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn samples_are_sound_and_contain_infinity(g in any_subgroup(), radius in 1.0f64..4.0, step in 0.1f64..0.5) {
        let s = sample_subgroup(&g, radius, step).unwrap();
        prop_assert!(s.points().contains(&CompactPoint::Infinity));
        for p in s.points() {
            prop_assert!(on_true_set(&g, p), "{:?} not in {}", p, g);
        }
    }

    #[test]
    fn covering_radius_is_monotone(
        g in any_subgroup(), radius in 1.0f64..4.0, step in 0.1f64..0.5, grow in 1.0f64..2.0, shrink in 0.5f64..1.0
    ) {
        let base = sample_subgroup(&g, radius, step).unwrap().covering_radius;
        prop_assert!(sample_subgroup(&g, radius * grow, step).unwrap().covering_radius <= base);
        prop_assert!(sample_subgroup(&g, radius, step * shrink).unwrap().covering_radius <= base);
    }

    #[test]
    fn covering_certificates_hold(g in any_subgroup(), radius in 1.0f64..4.0, step in 0.1f64..0.5, seed in any::<u64>()) {
        let s = sample_subgroup(&g, radius, step).unwrap();
        let seen = certify_covering(&s, 400, seed).unwrap();
        prop_assert!(seen <= s.covering_radius + 1e-12, "{} > {}", seen, s.covering_radius);
    }
}

#[test]
fn thin_lattices_fill_their_limit_lines() {
    // B^2 with z = 1/n + 2πi(1/3): every point of D^6_0 is close to the lattice.
    let limit = sample_subgroup(
        &Subgroup::CStar(CStarSubgroup::D { m: 6, t: 0.0 }),
        6.0,
        0.01,
    )
    .unwrap();
    let mut previous = f64::INFINITY;
    for n in [10.0, 40.0, 160.0] {
        let z = Complex64::new(1.0 / n, std::f64::consts::TAU / 3.0);
        let b =
            sample_subgroup(&Subgroup::CStar(CStarSubgroup::b(2, z).unwrap()), 6.0, 0.01).unwrap();
        let fill = directed_hausdorff(&limit, &b).unwrap().value;
        assert!(fill < previous, "n = {n}: {fill} >= {previous}");
        assert!(fill <= 3.0 / n, "n = {n}: {fill}");
        previous = fill;
    }
}
