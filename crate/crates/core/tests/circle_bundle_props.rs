use d3kit::circle_bundle::{
    d3_honda, d3_semifillable, d3_semifillable_closed, honda_reduced, honda_spinc, kappa,
    model_manifold, obstruction_report, pre_slide_manifold, sweep, CircleBundle, SpinCClass,
    Verdict,
};
use d3kit::exact_arith::Rat;
use d3kit::invariants::{c1_squared, d3, invariant_report};
use d3kit::kirby::{reduce_to_blocks, MarkedForm};
use d3kit::surgery::{ChainConvention, Variant};
use proptest::prelude::*;

const SMALL: [(i64, i64); 6] = [(1, 2), (1, 3), (1, 4), (2, 4), (2, 5), (2, 6)];

fn closed(g: i64, n: i64) -> (i64, i64, Rat, Rat) {
    (
        n - 4 * g + 4,
        1 - n + 2 * g,
        Rat::new(-2 * g * (n - 2 * g), n).unwrap(),
        Rat::new(n * n - 3 * n + 4 * g * g, 4 * n).unwrap(),
    )
}

fn pipeline(
    g: i64,
    n: i64,
    v: Variant,
    conv: ChainConvention,
) -> (i64, i64, Option<Rat>, Option<Rat>) {
    let m = pre_slide_manifold(g, n, v, conv).unwrap();
    let r = invariant_report(&m).unwrap();
    (r.chi, r.sigma, r.c1_squared, r.d3)
}

#[test]
fn chain_convention_matches_closed_forms() {
    for (g, n) in SMALL {
        let (chi, sigma, c2, d) = closed(g, n);
        for v in Variant::BOTH {
            assert_eq!(
                pipeline(g, n, v, ChainConvention::Chain),
                (chi, sigma, Some(c2.clone()), Some(d.clone())),
                "(g, n, i) = ({g}, {n}, {})",
                v.index()
            );
        }
    }
}

#[test]
fn parallel_convention_is_rejected() {
    // with two or more chain knots the conventions differ and only one matches
    for (g, n) in [(1, 4), (2, 6)] {
        let (chi, sigma, c2, d) = closed(g, n);
        let got = pipeline(g, n, Variant::Zero, ChainConvention::Parallel);
        assert_ne!(got, (chi, sigma, Some(c2), Some(d)), "({g}, {n})");
    }
}

#[test]
fn anchor_one_three() {
    let m = pre_slide_manifold(1, 3, Variant::Zero, ChainConvention::Chain).unwrap();
    assert_eq!(
        m.int_form(),
        vec![
            vec![0, 1, 1, 1],
            vec![1, 0, -1, -1],
            vec![1, -1, 0, -1],
            vec![1, -1, -1, -3]
        ]
    );
    assert_eq!(m.c1, vec![0, 0, 0, 1]);
    assert_eq!(
        c1_squared(&m.q, &m.c1_rat()).unwrap(),
        Rat::new(-2, 3).unwrap()
    );
    assert_eq!(d3(&m).unwrap(), Rat::new(1, 3).unwrap());
}

#[test]
fn reduced_diagram_shape() {
    for (g, n) in SMALL {
        for v in Variant::BOTH {
            let rd = honda_reduced(g, n, v, ChainConvention::Chain).unwrap();
            assert_eq!(rd.q_count, 2);
            assert_eq!(rd.diagram.len() as i64, 3 + n - 2 * g);
            assert_eq!(rd.diagram.one_handles() as i64, 2 * g);
        }
    }
}

#[test]
fn pre_slide_forms_reduce_to_the_model() {
    for (g, n) in SMALL {
        for v in Variant::BOTH {
            let pre = pre_slide_manifold(g, n, v, ChainConvention::Chain).unwrap();
            let red = reduce_to_blocks(&MarkedForm::from_four_manifold(&pre)).unwrap();
            let model = model_manifold(g, n, v).unwrap();
            assert_eq!(
                red.form.q(),
                &model.int_form()[..],
                "({g}, {n}, {})",
                v.index()
            );
            assert_eq!(red.form.c1(), &model.c1[..]);
            let replayed = MarkedForm::from_four_manifold(&pre)
                .replay(&red.script)
                .unwrap();
            assert_eq!(replayed, red.form);
        }
    }
}

#[test]
fn determinant_is_n_up_to_sign() {
    for g in 1..=4 {
        for n in (2 * g)..=(2 * g + 8) {
            for v in Variant::BOTH {
                let pre = pre_slide_manifold(g, n, v, ChainConvention::Chain).unwrap();
                assert_eq!(pre.q.determinant().abs(), Rat::int(n), "({g}, {n})");
                let model = model_manifold(g, n, v).unwrap();
                assert_eq!(model.q.determinant().abs(), Rat::int(n));
            }
        }
    }
}

#[test]
fn spinc_and_kappa_over_sweep() {
    for g in 1..=8 {
        for n in (2 * g)..=40 {
            for v in Variant::BOTH {
                let i = v.index() as i64;
                let s = honda_spinc(g, n, v).unwrap();
                assert_eq!(2 - 2 * g + n + 2 * s.e, v.sign() * (n - 2 * g));
                assert_eq!(s.residue(), (2 * i * g - 1).rem_euclid(n));
                let k = kappa(g, n, v).unwrap();
                assert_eq!(k, if i == 0 { n - g } else { g });
                assert_eq!(
                    d3_semifillable(g, n, k).unwrap(),
                    d3_semifillable_closed(g, n).unwrap()
                );
                assert_eq!(
                    d3_honda(g, n).unwrap() - d3_semifillable(g, n, k).unwrap(),
                    Rat::int(2 * g + 1)
                );
            }
        }
    }
}

#[test]
fn sweep_is_ordered_and_total() {
    let rows = sweep(3, 12).unwrap();
    let keys: Vec<_> = rows.iter().map(|r| (r.g, r.n, r.i)).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert!(rows.iter().all(|r| r.verdict == Verdict::NotSemiFillable));
    for g in -2..4 {
        for n in -3..10 {
            for v in Variant::BOTH {
                let r = obstruction_report(g, n, v);
                let expected = if g <= 0 {
                    Verdict::Unsupported
                } else if n < 2 * g {
                    Verdict::Inconclusive
                } else {
                    Verdict::NotSemiFillable
                };
                assert_eq!(r.verdict, expected, "({g}, {n})");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn spinc_is_periodic(g in 0i64..20, n in 1i64..200, e in -10_000i64..10_000, k in -5i64..5) {
        let b = CircleBundle::new(g, n).unwrap();
        let s = SpinCClass::new(b, e).unwrap();
        let t = SpinCClass::new(b, e + n).unwrap();
        let u = SpinCClass::new(b, e + k * n).unwrap();
        prop_assert_eq!(s, t);
        prop_assert_eq!(s, u);
        prop_assert!((0..n).contains(&s.residue()));
        if n > 1 {
            prop_assert_ne!(s, SpinCClass::new(b, e + 1).unwrap());
        }
    }
}
