use proptest::prelude::*;
use starcov::analysis::{self as an, Architecture, NetworkParams, Ue};
use starcov::special::{bell_complete, bell_incomplete, hyp2f1_neg, xi, xi_hypergeometric, XiArgs};
use starcov::units;

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
}

fn small_network(beta_t: f64) -> NetworkParams {
    NetworkParams {
        n_elements: 4,
        lambda_b: 4.0 * an::LAMBDA_B_REF,
        lambda_r: 20.0 * an::LAMBDA_R_REF,
        n0_sq: units::noise_watts(5e6),
        beta_t,
        ..NetworkParams::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Euler: ₂F₁(a, b; c; z) = (1 - z)^{c-a-b} ₂F₁(c-a, c-b; c; z)
    #[test]
    fn hyp2f1_euler_transform(a in 0.1f64..3.0, b in -1.5f64..1.5, c in 0.6f64..4.0, z in -50.0f64..0.0) {
        let lhs = hyp2f1_neg(a, b, c, z).unwrap();
        let rhs = (1.0 - z).powf(c - a - b) * hyp2f1_neg(c - a, c - b, c, z).unwrap();
        prop_assert!(close(lhs, rhs, 1e-9), "{lhs} vs {rhs}");
    }

    #[test]
    fn xi_routes_agree(b in 2.2f64..6.0, c in 0.01f64..30.0, x in 0.01f64..10.0, m in 0u32..=4) {
        let beta = xi(XiArgs::new(1.0, b, c, x, m)).unwrap();
        let hyp = xi_hypergeometric(XiArgs::new(1.0, b, c, x, m)).unwrap();
        prop_assert!(close(beta, hyp, 1e-8), "m={m}: {beta} vs {hyp}");
    }

    #[test]
    fn xi_signs_and_growth(b in 2.2f64..6.0, c in 0.01f64..30.0, x in 0.01f64..10.0, dx in 0.0f64..5.0) {
        let x0 = xi(XiArgs::new(1.0, b, c, x, 0)).unwrap();
        prop_assert!(x0 >= 1.0);
        prop_assert!(xi(XiArgs::new(1.0, b, c, x + dx, 0)).unwrap() >= x0);
        for m in 1..=5u32 {
            let v = xi(XiArgs::new(1.0, b, c, x, m)).unwrap();
            let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
            prop_assert!(v * sign > 0.0, "m={m}: {v}");
        }
    }

    #[test]
    fn partial_bell_sum_to_complete(xs in prop::collection::vec(-2.0f64..2.0, 1..10)) {
        let m = xs.len();
        let sum: f64 = (1..=m).map(|l| bell_incomplete(m, l, &xs).unwrap()).sum();
        let complete = bell_complete(&xs);
        prop_assert!((sum - complete).abs() <= 1e-10 * (1.0 + complete.abs()), "{sum} vs {complete}");
    }

    #[test]
    fn bell_of_a_single_argument_is_a_power(t in -3.0f64..3.0, m in 1usize..12) {
        let mut xs = vec![0.0; m];
        xs[0] = t;
        prop_assert!(close(bell_complete(&xs), t.powi(m as i32), 1e-12));
    }

    #[test]
    fn db_round_trip(db in -200.0f64..100.0) {
        prop_assert!((units::linear_to_db(units::db_to_linear(db)) - db).abs() < 1e-10);
        prop_assert!((units::watts_to_dbm(units::dbm_to_watts(db)) - db).abs() < 1e-10);
    }

    #[test]
    fn laplace_transforms_are_decreasing_in_s(s in 0.0f64..1e9, ds in 0.0f64..1e9, r in 1.0f64..300.0, d in 1.0f64..300.0) {
        let p = small_network(0.5);
        for f in [
            |s, r, d, p: &NetworkParams| an::laplace_typical(s, r, d, p),
            |s, r, _d, p: &NetworkParams| an::laplace_connected(s, r, p),
            |s, r, d, p: &NetworkParams| an::laplace_conventional(s, r, d, p),
        ] {
            let lo = f(s * 1e-12, r, d, &p).unwrap();
            let hi = f((s + ds) * 1e-12, r, d, &p).unwrap();
            prop_assert!(lo > 0.0 && lo <= 1.0 && hi <= lo + 1e-15, "{lo} {hi}");
        }
    }
}

proptest! {
    // each case is a few coverage integrals
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn coverage_is_split_symmetric(beta in 0.02f64..0.98) {
        for ue in [Ue::Typical, Ue::Connected] {
            let a = an::coverage(&small_network(beta), Architecture::Star, ue).unwrap().value;
            let b = an::coverage(&small_network(1.0 - beta), Architecture::Star, ue).unwrap().value;
            let half = an::coverage(&small_network(0.5), Architecture::Star, ue).unwrap().value;
            prop_assert!((0.0..=1.0).contains(&a));
            prop_assert!((a - b).abs() < 1e-8, "{ue:?}: {a} vs {b}");
            prop_assert!(a <= half + 1e-8, "{ue:?}: {a} above {half}");
        }
    }

    #[test]
    fn coverage_falls_with_the_threshold(db in -10.0f64..10.0, step in 0.1f64..6.0) {
        let at = |tau_db: f64| {
            let p = NetworkParams { tau_t: units::db_to_linear(tau_db), ..small_network(0.5) };
            an::coverage(&p, Architecture::Star, Ue::Typical).unwrap().value
        };
        let (lo, hi) = (at(db), at(db + step));
        prop_assert!(hi <= lo + 1e-9, "{lo} then {hi}");
    }
}
