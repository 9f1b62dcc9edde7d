use proptest::prelude::*;

use gallager_lab::exponents::{
    channel_exponent, gallager_e0, rho_n_channel, rho_n_source, source_exponent, source_j0,
    verify_theorem1, verify_theorem2, Rate, Rho,
};
use gallager_lab::models::{parse_model, AnyModel, ChannelModel, InputChannel, JointPmf, JointSourceModel, Pmf};
use gallager_lab::spectrum::{epsilon_at, exact_spectrum, proof_set_diagnostic, Tail};

fn rho(r: f64) -> Rho {
    Rho::new(r).unwrap()
}

/// A strictly positive 2x3 joint law.
fn joint_pmf() -> impl Strategy<Value = JointPmf> {
    prop::collection::vec(0.05f64..1.0, 6).prop_map(|w| {
        let total: f64 = w.iter().sum();
        JointPmf::new(w.chunks(3).map(|r| r.iter().map(|v| v / total).collect()).collect())
    })
}

fn channel_pair() -> impl Strategy<Value = InputChannel> {
    prop_oneof![
        (0.01f64..0.49).prop_map(|p| InputChannel::with_uniform_input(ChannelModel::bsc(p)).unwrap()),
        (0.01f64..0.49, 0.01f64..0.49, 0.1f64..0.9).prop_map(|(a, b, w)| {
            InputChannel::with_uniform_input(ChannelModel::mixture(vec![
                (w, ChannelModel::bsc(a)),
                (1.0 - w, ChannelModel::bsc(b)),
            ]))
            .unwrap()
        }),
    ]
}

fn joint_model() -> impl Strategy<Value = JointSourceModel> {
    prop_oneof![
        (0.01f64..0.49).prop_map(JointSourceModel::doubly_symmetric),
        joint_pmf().prop_map(JointSourceModel::iid),
        (joint_pmf(), joint_pmf()).prop_map(|(a, b)| JointSourceModel::memoryless(vec![a, b])),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn e0_is_nonnegative_increasing_and_concave(pair in channel_pair(), n in 1usize..5) {
        let e: Vec<f64> = (0..=10).map(|k| gallager_e0(&pair, n, rho(k as f64 / 10.0)).unwrap()).collect();
        prop_assert_eq!(e[0], 0.0);
        for w in e.windows(2) {
            prop_assert!(w[1] >= w[0] - 1e-13);
        }
        for w in e.windows(3) {
            prop_assert!(w[0] + w[2] - 2.0 * w[1] <= 1e-12);
        }
    }

    #[test]
    fn j0_sits_between_rho_h_and_rho_ln_alphabet(joint in joint_model(), n in 1usize..4, r in 0.0f64..=1.0) {
        let j = source_j0(&joint, n, rho(r)).unwrap();
        let h = exact_spectrum(&joint, n).unwrap().mean();
        let ln_x = joint.alphabets().0.ln_size();
        prop_assert!(j >= r * h - 1e-12, "J0 = {j} < rho H = {}", r * h);
        prop_assert!(j <= r * ln_x + 1e-12);
    }

    #[test]
    fn rho_n_is_a_unit_interval_value(t in 1e-3f64..3.0, eps in 0.0f64..=1.0, n in 1usize..200, ln_x in 0.1f64..3.0) {
        let c = rho_n_channel(Rate::new(t).unwrap(), eps, n).unwrap().value();
        let s = rho_n_source(Rate::new(t).unwrap(), eps, n, ln_x).unwrap().value();
        prop_assert!((0.0..=1.0).contains(&c));
        prop_assert!((0.0..=1.0).contains(&s));
    }

    #[test]
    fn channel_bound_holds(p in 0.01f64..0.49, n in 1usize..11, frac in 0.05f64..0.95) {
        let pair = InputChannel::with_uniform_input(ChannelModel::bsc(p)).unwrap();
        let capacity = exact_spectrum(&pair, 1).unwrap().mean();
        let report = verify_theorem1(&pair, n, Rate::new(frac * capacity).unwrap()).unwrap();
        prop_assert!(report.holds, "{:?}", report);
    }

    #[test]
    fn source_bound_holds(p in 0.01f64..0.49, n in 1usize..11, frac in 0.05f64..0.95) {
        let joint = JointSourceModel::doubly_symmetric(p);
        let h = exact_spectrum(&joint, 1).unwrap().mean();
        let t = h + frac * (std::f64::consts::LN_2 - h);
        let report = verify_theorem2(&joint, n, Rate::new(t).unwrap()).unwrap();
        prop_assert!(report.holds, "{:?}", report);
    }

    #[test]
    fn spectrum_mass_is_one_and_tails_are_monotone(pair in channel_pair(), n in 1usize..7) {
        let s = exact_spectrum(&pair, n).unwrap();
        prop_assert!((s.total_mass() - 1.0).abs() < 1e-12);
        let mut last = 0.0;
        for k in 0..40 {
            let t = -2.0 + 0.07 * k as f64;
            let e = epsilon_at(&s, t, Tail::BelowStrict).unwrap().epsilon;
            prop_assert!(e >= last - 1e-15);
            last = e;
        }
    }

    #[test]
    fn proof_sets_hold(joint in joint_model(), n in 1usize..4, dt in 0.0f64..0.5) {
        let h = exact_spectrum(&joint, n).unwrap().mean();
        let report = proof_set_diagnostic(&joint, n, h + dt).unwrap();
        prop_assert!(report.holds, "{:?}", report);
        prop_assert!(report.mass_b_complement <= report.bound_sqrt_epsilon + 1e-12);
    }

    #[test]
    fn model_files_round_trip(joint in joint_model(), p in 0.01f64..0.49) {
        for model in [AnyModel::Joint(joint.clone()), AnyModel::Channel(ChannelModel::bsc(p))] {
            let text = serde_json::to_string(&model.to_json()).unwrap();
            prop_assert_eq!(parse_model(&text).unwrap(), model);
        }
        let input = AnyModel::Source(gallager_lab::models::SourceModel::iid(Pmf::bernoulli(p)));
        prop_assert_eq!(parse_model(&input.to_json().to_string()).unwrap(), input);
    }

    #[test]
    fn exponents_are_monotone_in_rate(p in 0.01f64..0.3, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let pair = InputChannel::with_uniform_input(ChannelModel::bsc(p)).unwrap();
        let c = exact_spectrum(&pair, 1).unwrap().mean();
        let e = |r: f64| channel_exponent(&pair, 2, Rate::new(r * c).unwrap(), 33).unwrap().exponent;
        prop_assert!(e(hi) <= e(lo) + 1e-12);

        let joint = JointSourceModel::doubly_symmetric(p);
        let h = exact_spectrum(&joint, 1).unwrap().mean();
        let span = std::f64::consts::LN_2 - h;
        let j = |r: f64| source_exponent(&joint, 2, Rate::new(h + r * span).unwrap(), 33).unwrap().exponent;
        prop_assert!(j(hi) >= j(lo) - 1e-12);
    }
}
