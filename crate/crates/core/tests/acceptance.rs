//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any failed.

use std::f64::consts::LN_2;
use std::time::Instant;

use gallager_lab::codingsim::{simulate_channel_code, simulate_slepian_wolf, ChannelSimConfig, SlepianWolfConfig};
use gallager_lab::exponents::{
    gallager_e0, gallager_e0_enumerated, j0_derivative, solve_rho0, source_exponent, source_j0,
    source_j0_enumerated, verify_theorem1, verify_theorem2, Rate, Rho, DEFAULT_RHO_GRID,
};
use gallager_lab::models::{
    reference_rates, ChannelModel, InputChannel, JointPmf, JointSourceModel, Pmf, SourceModel, Stochastic,
};
use gallager_lab::parallel::with_workers;
use gallager_lab::spectrum::{
    epsilon_at, exact_spectrum, hoeffding_halfwidth, monte_carlo_spectrum, proof_set_diagnostic, Tail,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rate(r: f64) -> Rate {
    Rate::new(r).unwrap()
}

fn rho(r: f64) -> Rho {
    Rho::new(r).unwrap()
}

fn channels() -> Vec<(&'static str, InputChannel)> {
    let uniform = |c| InputChannel::with_uniform_input(c).unwrap();
    vec![
        ("identity", uniform(ChannelModel::identity(2))),
        ("bsc(0.11)", uniform(ChannelModel::bsc(0.11))),
        ("bsc(0.3)", uniform(ChannelModel::bsc(0.3))),
        (
            "mixture bsc(0.02)/bsc(0.3)",
            uniform(ChannelModel::mixture(vec![(0.5, ChannelModel::bsc(0.02)), (0.5, ChannelModel::bsc(0.3))])),
        ),
    ]
}

fn markov_pair() -> JointSourceModel {
    JointSourceModel::markov(
        2,
        2,
        Pmf::new(vec![0.4, 0.1, 0.1, 0.4]),
        vec![
            vec![0.7, 0.1, 0.1, 0.1],
            vec![0.2, 0.5, 0.1, 0.2],
            vec![0.2, 0.1, 0.5, 0.2],
            vec![0.1, 0.1, 0.1, 0.7],
        ],
    )
}

fn correlated_mixture() -> JointSourceModel {
    JointSourceModel::mixture(vec![
        (0.5, JointSourceModel::doubly_symmetric(0.05)),
        (0.5, JointSourceModel::doubly_symmetric(0.2)),
    ])
}

fn sources() -> Vec<(&'static str, JointSourceModel)> {
    vec![
        ("perfectly correlated", JointSourceModel::perfectly_correlated(2)),
        ("dsbs(0.11)", JointSourceModel::doubly_symmetric(0.11)),
        ("dsbs(0.25)", JointSourceModel::doubly_symmetric(0.25)),
        ("independent", JointSourceModel::independent(&Pmf::uniform(2), &Pmf::uniform(2))),
        ("mixture dsbs(0.05)/dsbs(0.2)", correlated_mixture()),
    ]
}

fn theorem1_matrix() -> Outcome {
    let mut checked = 0;
    let mut worst = f64::INFINITY;
    for (name, pair) in channels() {
        let info = reference_rates(pair.joint()).inf_mutual_info.unwrap();
        for n in [2, 4, 6, 8] {
            for k in 1..=10 {
                let t = info * k as f64 / 11.0;
                let r = verify_theorem1(&pair, n, rate(t)).map_err(|e| e.to_string())?;
                if !r.holds {
                    return Err(format!("{name} n={n} t={t}: slack {:e}", r.slack));
                }
                worst = worst.min(r.slack);
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} reports hold, min slack {worst:.3e}"))
}

fn theorem2_matrix() -> Outcome {
    let mut checked = 0;
    let mut worst = f64::INFINITY;
    for (name, joint) in sources() {
        let h = reference_rates(&joint).sup_cond_entropy.unwrap();
        for n in [2, 4, 6, 8] {
            for k in 1..=10 {
                // An independent pair has H = ln|X|, leaving no interior; it
                // is checked just above ln|X| instead.
                let t = if h < LN_2 - 1e-12 {
                    h + (LN_2 - h) * k as f64 / 11.0
                } else {
                    h + 0.01 * k as f64
                };
                let r = verify_theorem2(&joint, n, rate(t)).map_err(|e| e.to_string())?;
                if !r.holds {
                    return Err(format!("{name} n={n} t={t}: slack {:e}", r.slack));
                }
                worst = worst.min(r.slack);
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} reports hold, min slack {worst:.3e}"))
}

fn oracle_equivalence() -> Outcome {
    let alternating = ChannelModel::memoryless(vec![
        Stochastic::new(vec![vec![0.95, 0.05], vec![0.05, 0.95]]),
        Stochastic::new(vec![vec![0.75, 0.25], vec![0.25, 0.75]]),
    ]);
    let ternary = ChannelModel::dmc(vec![vec![0.8, 0.1, 0.1], vec![0.1, 0.7, 0.2], vec![0.0, 0.3, 0.7]]);
    let pairs = vec![
        InputChannel::with_uniform_input(ChannelModel::identity(2)).unwrap(),
        InputChannel::with_uniform_input(ChannelModel::bsc(0.11)).unwrap(),
        InputChannel::with_uniform_input(ChannelModel::bsc(0.3)).unwrap(),
        InputChannel::new(SourceModel::iid(Pmf::new(vec![0.6, 0.4])), alternating).unwrap(),
        InputChannel::new(SourceModel::iid(Pmf::new(vec![0.5, 0.3, 0.2])), ternary).unwrap(),
    ];
    let joints = vec![
        JointSourceModel::doubly_symmetric(0.11),
        JointSourceModel::doubly_symmetric(0.25),
        JointSourceModel::perfectly_correlated(2),
        JointSourceModel::independent(&Pmf::uniform(2), &Pmf::uniform(2)),
        JointSourceModel::memoryless(vec![
            JointPmf::new(vec![vec![0.45, 0.05], vec![0.1, 0.4]]),
            JointPmf::new(vec![vec![0.3, 0.2], vec![0.2, 0.3]]),
            JointPmf::new(vec![vec![0.25, 0.0], vec![0.0, 0.75]]),
        ]),
    ];
    let rhos = [0.0, 0.25, 0.5, 0.75, 1.0];
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for n in 1..=6 {
        for &r in &rhos {
            for pair in &pairs {
                let nx = pair.input().alphabet().size();
                let ny = pair.channel().alphabets().1.size();
                if (nx * ny).pow(n as u32) > 1 << 22 {
                    continue;
                }
                let fast = gallager_e0(pair, n, rho(r)).unwrap();
                let slow = gallager_e0_enumerated(pair, n, rho(r)).unwrap();
                worst = worst.max((fast - slow).abs());
                checked += 1;
            }
            for joint in &joints {
                let fast = source_j0(joint, n, rho(r)).unwrap();
                let slow = source_j0_enumerated(joint, n, rho(r)).unwrap();
                worst = worst.max((fast - slow).abs());
                checked += 1;
            }
        }
    }
    if worst <= 1e-10 {
        Ok(format!("{checked} comparisons, max difference {worst:.2e}"))
    } else {
        Err(format!("max difference {worst:e} exceeds 1e-10"))
    }
}

fn closed_forms() -> Outcome {
    let bsc = InputChannel::with_uniform_input(ChannelModel::bsc(0.11)).unwrap();
    let want = LN_2 - 2.0 * (0.11f64.sqrt() + 0.89f64.sqrt()).ln();
    let got = gallager_e0(&bsc, 4, Rho::ONE).unwrap();
    if (got - want).abs() > 1e-10 {
        return Err(format!("bsc E0(1) {got} vs {want}"));
    }
    let identity = InputChannel::with_uniform_input(ChannelModel::identity(2)).unwrap();
    let independent = JointSourceModel::independent(&Pmf::uniform(2), &Pmf::uniform(2));
    for r in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let e0 = gallager_e0(&identity, 5, rho(r)).unwrap();
        if (e0 - r * LN_2).abs() > 1e-12 {
            return Err(format!("identity E0({r}) = {e0}"));
        }
        let j0 = source_j0(&independent, 5, rho(r)).unwrap();
        if (j0 - r * LN_2).abs() > 1e-12 {
            return Err(format!("independent J0({r}) = {j0}"));
        }
    }
    Ok(format!("bsc E0(1) = {got:.12}, identity and independent exact"))
}

fn derivative_identity() -> Outcome {
    let models = [
        ("dsbs(0.11)", JointSourceModel::doubly_symmetric(0.11)),
        ("markov", markov_pair()),
        ("mixture", correlated_mixture()),
    ];
    let n = 6;
    let mut worst_rel: f64 = 0.0;
    for (name, joint) in &models {
        for r in [0.1, 0.5, 0.9] {
            let h = 1e-5;
            let fd = (source_j0(joint, n, rho(r + h)).unwrap() - source_j0(joint, n, rho(r - h)).unwrap()) / (2.0 * h);
            let d = j0_derivative(joint, n, rho(r)).unwrap();
            let rel = (d - fd).abs() / fd.abs();
            if rel > 1e-4 {
                return Err(format!("{name} rho={r}: {d} vs {fd}"));
            }
            worst_rel = worst_rel.max(rel);
        }
    }
    let mut worst_gap: f64 = 0.0;
    for (name, joint) in &models {
        let lo = j0_derivative(joint, n, Rho::ZERO).unwrap();
        let hi = j0_derivative(joint, n, Rho::ONE).unwrap();
        for k in 1..=5 {
            let r = lo + (hi - lo) * k as f64 / 6.0;
            let rho0 = solve_rho0(joint, n, rate(r)).map_err(|e| e.to_string())?;
            let via_rho0 = rho0.value() * r - source_j0(joint, n, rho0).unwrap();
            let direct = source_exponent(joint, n, rate(r), DEFAULT_RHO_GRID).unwrap().exponent;
            let gap = (via_rho0 - direct).abs();
            if gap > 1e-8 {
                return Err(format!("{name} R={r}: {via_rho0} vs {direct}"));
            }
            worst_gap = worst_gap.max(gap);
        }
    }
    Ok(format!("max relative slope error {worst_rel:.2e}, max exponent gap {worst_gap:.2e}"))
}

fn proof_sets() -> Outcome {
    let mut checked = 0;
    for n in [2, 4, 6, 8] {
        for (name, pair) in channels() {
            for k in 0..20 {
                let t = -0.5 + 1.5 * k as f64 / 19.0;
                let r = proof_set_diagnostic(&pair, n, t).map_err(|e| e.to_string())?;
                if !r.holds {
                    return Err(format!("{name} n={n} t={t}: {} > {}", r.mass_b_complement, r.bound_sqrt_epsilon));
                }
                checked += 1;
            }
        }
        for (name, joint) in sources().into_iter().chain([("markov", markov_pair())]) {
            for k in 0..20 {
                let t = 1.2 * k as f64 / 19.0;
                let r = proof_set_diagnostic(&joint, n, t).map_err(|e| e.to_string())?;
                if !r.holds {
                    return Err(format!("{name} n={n} t={t}: {} > {}", r.mass_b_complement, r.bound_sqrt_epsilon));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} set checks hold"))
}

fn remark_simulation() -> Outcome {
    let pair = InputChannel::with_uniform_input(ChannelModel::bsc(0.11)).unwrap();
    let mut cells = Vec::new();
    for r in [0.05, 0.1, 0.15] {
        let res = simulate_channel_code(&ChannelSimConfig {
            pair: &pair,
            n: 16,
            rate: rate(r),
            codebooks: 100,
            transmissions: 500,
            seed: 2024,
        })
        .map_err(|e| e.to_string())?;
        let cell = format!(
            "R={r}: {:.4} <= {:.4} + {:.4}",
            res.empirical_error, res.analytic_bound, res.ci_halfwidth
        );
        if !res.bound_satisfied_within_ci {
            return Err(cell);
        }
        cells.push(cell);
    }
    Ok(cells.join("; "))
}

fn corollary_mechanism() -> Outcome {
    let pair = InputChannel::with_uniform_input(ChannelModel::bsc(0.11)).unwrap();
    let values: Vec<f64> = [4, 8, 16]
        .iter()
        .map(|&n| n as f64 * verify_theorem1(&pair, n, rate(0.29)).unwrap().rho_n.value())
        .collect();
    let text = format!("n rho_n = {:.4}, {:.4}, {:.4}", values[0], values[1], values[2]);
    if values.windows(2).all(|w| w[0] < w[1]) {
        Ok(text)
    } else {
        Err(format!("{text} is not strictly increasing"))
    }
}

fn monte_carlo_consistency() -> Outcome {
    let pair = InputChannel::with_uniform_input(ChannelModel::bsc(0.11)).unwrap();
    let n = 12;
    let t = 0.25;
    let exact = epsilon_at(&exact_spectrum(&pair, n).unwrap(), t, Tail::BelowStrict).unwrap().epsilon;
    let samples = 10_000;
    let half = hoeffding_halfwidth(samples);
    let inside = (0..100u64)
        .filter(|&seed| {
            let s = monte_carlo_spectrum(&pair, n, samples, seed).unwrap();
            let e = epsilon_at(&s, t, Tail::BelowStrict).unwrap().epsilon;
            (e - exact).abs() <= half
        })
        .count();
    let text = format!("{inside}/100 seeds within +-{half:.4} of exact {exact:.6}");
    if inside >= 99 {
        Ok(text)
    } else {
        Err(text)
    }
}

fn determinism() -> Outcome {
    let pair = InputChannel::with_uniform_input(ChannelModel::bsc(0.11)).unwrap();
    let ds = JointSourceModel::doubly_symmetric(0.11);
    let markov = markov_pair();
    let run = |workers| {
        with_workers(Some(workers), || {
            let spectrum = monte_carlo_spectrum(&pair, 12, 5_000, 9).unwrap();
            let source_spectrum = monte_carlo_spectrum(&markov, 10, 5_000, 9).unwrap();
            let code = simulate_channel_code(&ChannelSimConfig {
                pair: &pair,
                n: 12,
                rate: rate(0.1),
                codebooks: 20,
                transmissions: 100,
                seed: 9,
            })
            .unwrap();
            let binning = simulate_slepian_wolf(&SlepianWolfConfig {
                joint: &ds,
                n: 10,
                rate: rate(0.55),
                bin_seed: 4,
                trials: 1_000,
                seed: 9,
            })
            .unwrap();
            let bits: Vec<u64> = spectrum
                .samples()
                .iter()
                .chain(source_spectrum.samples())
                .map(|v| v.to_bits())
                .collect();
            (bits, format!("{code:?}"), format!("{binning:?}"))
        })
        .unwrap()
    };
    let reference = run(1);
    for w in [4, 8] {
        if run(w) != reference {
            return Err(format!("{w} workers differ from 1 worker"));
        }
    }
    Ok("spectra and both simulations identical for 1, 4 and 8 workers".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("theorem 1 matrix", theorem1_matrix),
        ("theorem 2 matrix", theorem2_matrix),
        ("fast path vs enumeration", oracle_equivalence),
        ("closed forms", closed_forms),
        ("slope identity and rho0 round trip", derivative_identity),
        ("proof-set inequality", proof_sets),
        ("random coding simulation", remark_simulation),
        ("n rho_n growth", corollary_mechanism),
        ("monte carlo consistency", monte_carlo_consistency),
        ("worker-count determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:2} PASS {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:2} FAIL {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
