//! Brute-force oracles written directly from the definitions, sharing no code
//! with the library beyond the public entry points under test.

use std::f64::consts::LN_2;

use gallager_lab::exponents::{
    channel_exponent, gallager_e0, j0_derivative, source_exponent, source_j0, Rate, Rho,
};
use gallager_lab::models::{ChannelModel, InputChannel, JointSourceModel, Pmf};
use gallager_lab::spectrum::{epsilon_at, exact_spectrum, Tail};

fn rho(r: f64) -> Rho {
    Rho::new(r).unwrap()
}

fn sequences(size: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|s| {
                (0..size).map(move |a| {
                    let mut t = s.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
    }
    out
}

/// `P(x^n, y^n)` tables for the models below, in plain linear arithmetic.
struct Table {
    xs: Vec<Vec<usize>>,
    ys: Vec<Vec<usize>>,
    /// `p[x][y]`
    p: Vec<Vec<f64>>,
}

impl Table {
    fn py(&self, y: usize) -> f64 {
        self.p.iter().map(|row| row[y]).sum()
    }

    fn px(&self, x: usize) -> f64 {
        self.p[x].iter().sum()
    }

    fn e0(&self, r: f64, n: usize) -> f64 {
        let s = 1.0 / (1.0 + r);
        let total: f64 = (0..self.ys.len())
            .map(|y| {
                let inner: f64 = (0..self.xs.len())
                    .filter(|&x| self.px(x) > 0.0)
                    .map(|x| {
                        let w = self.p[x][y] / self.px(x);
                        self.px(x) * w.powf(s)
                    })
                    .sum();
                inner.powf(1.0 + r)
            })
            .sum();
        -total.ln() / n as f64
    }

    fn j0(&self, r: f64, n: usize) -> f64 {
        let s = 1.0 / (1.0 + r);
        let total: f64 = (0..self.ys.len())
            .map(|y| (0..self.xs.len()).map(|x| self.p[x][y].powf(s)).sum::<f64>().powf(1.0 + r))
            .sum();
        total.ln() / n as f64
    }

    /// `Pr{(1/n) ln P(y|x)/P(y) < t}`
    fn info_tail(&self, t: f64, n: usize) -> f64 {
        let mut mass = 0.0;
        for x in 0..self.xs.len() {
            for y in 0..self.ys.len() {
                let p = self.p[x][y];
                if p > 0.0 && ((p / self.px(x)) / self.py(y)).ln() / (n as f64) < t {
                    mass += p;
                }
            }
        }
        mass
    }

    /// `Pr{(1/n) ln 1/P(x|y) > t}`
    fn entropy_tail(&self, t: f64, n: usize) -> f64 {
        let mut mass = 0.0;
        for x in 0..self.xs.len() {
            for y in 0..self.ys.len() {
                let p = self.p[x][y];
                if p > 0.0 && -(p / self.py(y)).ln() / (n as f64) > t {
                    mass += p;
                }
            }
        }
        mass
    }

    fn mean_info(&self, n: usize) -> f64 {
        let mut m = 0.0;
        for x in 0..self.xs.len() {
            for y in 0..self.ys.len() {
                let p = self.p[x][y];
                if p > 0.0 {
                    m += p * ((p / self.px(x)) / self.py(y)).ln();
                }
            }
        }
        m / n as f64
    }
}

fn bsc_table(p: f64, n: usize) -> Table {
    let xs = sequences(2, n);
    let ys = sequences(2, n);
    let p = xs
        .iter()
        .map(|x| {
            ys.iter()
                .map(|y| {
                    let flips = x.iter().zip(y).filter(|(a, b)| a != b).count() as i32;
                    0.5f64.powi(n as i32) * p.powi(flips) * (1.0 - p).powi(n as i32 - flips)
                })
                .collect()
        })
        .collect();
    Table { xs, ys, p }
}

/// Uniform input through a channel that is BSC(a) or BSC(b) for the whole block.
fn mixed_bsc_table(a: f64, b: f64, n: usize) -> Table {
    let ta = bsc_table(a, n);
    let tb = bsc_table(b, n);
    let p = ta
        .p
        .iter()
        .zip(&tb.p)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(u, v)| 0.5 * u + 0.5 * v).collect())
        .collect();
    Table { xs: ta.xs, ys: ta.ys, p }
}

/// Pair chain over states `s = 2x + y`.
fn markov_table(initial: [f64; 4], t: [[f64; 4]; 4], n: usize) -> Table {
    let xs = sequences(2, n);
    let ys = sequences(2, n);
    let p = xs
        .iter()
        .map(|x| {
            ys.iter()
                .map(|y| {
                    let states: Vec<usize> = x.iter().zip(y).map(|(a, b)| 2 * a + b).collect();
                    let mut q = initial[states[0]];
                    for w in states.windows(2) {
                        q *= t[w[0]][w[1]];
                    }
                    q
                })
                .collect()
        })
        .collect();
    Table { xs, ys, p }
}

const MARKOV_INIT: [f64; 4] = [0.4, 0.1, 0.1, 0.4];
const MARKOV_T: [[f64; 4]; 4] = [
    [0.7, 0.1, 0.1, 0.1],
    [0.2, 0.5, 0.1, 0.2],
    [0.2, 0.1, 0.5, 0.2],
    [0.1, 0.1, 0.1, 0.7],
];

fn markov_model() -> JointSourceModel {
    JointSourceModel::markov(2, 2, Pmf::new(MARKOV_INIT.to_vec()), MARKOV_T.iter().map(|r| r.to_vec()).collect())
}

fn dsbs_table(p: f64, n: usize) -> Table {
    // X uniform and Y = X through BSC(p): the same law as the channel table.
    bsc_table(p, n)
}

#[test]
fn e0_matches_the_definition() {
    for n in 1..=5 {
        let pair = InputChannel::with_uniform_input(ChannelModel::bsc(0.11)).unwrap();
        let mixed = InputChannel::with_uniform_input(ChannelModel::mixture(vec![
            (0.5, ChannelModel::bsc(0.02)),
            (0.5, ChannelModel::bsc(0.3)),
        ]))
        .unwrap();
        let (tb, tm) = (bsc_table(0.11, n), mixed_bsc_table(0.02, 0.3, n));
        for r in [0.0, 0.3, 0.7, 1.0] {
            assert!((gallager_e0(&pair, n, rho(r)).unwrap() - tb.e0(r, n)).abs() < 1e-12);
            assert!((gallager_e0(&mixed, n, rho(r)).unwrap() - tm.e0(r, n)).abs() < 1e-12);
        }
    }
}

#[test]
fn j0_matches_the_definition() {
    let markov = markov_model();
    for n in 1..=5 {
        let ds = JointSourceModel::doubly_symmetric(0.11);
        let (td, tm) = (dsbs_table(0.11, n), markov_table(MARKOV_INIT, MARKOV_T, n));
        for r in [0.0, 0.3, 0.7, 1.0] {
            assert!((source_j0(&ds, n, rho(r)).unwrap() - td.j0(r, n)).abs() < 1e-12);
            assert!((source_j0(&markov, n, rho(r)).unwrap() - tm.j0(r, n)).abs() < 1e-12);
        }
    }
}

#[test]
fn tails_match_the_definition() {
    let n = 5;
    let pair = InputChannel::with_uniform_input(ChannelModel::mixture(vec![
        (0.5, ChannelModel::bsc(0.02)),
        (0.5, ChannelModel::bsc(0.3)),
    ]))
    .unwrap();
    let table = mixed_bsc_table(0.02, 0.3, n);
    let spectrum = exact_spectrum(&pair, n).unwrap();
    for k in 0..25 {
        let t = -1.0 + 0.07 * k as f64 + 0.0013;
        let got = epsilon_at(&spectrum, t, Tail::BelowStrict).unwrap().epsilon;
        assert!((got - table.info_tail(t, n)).abs() < 1e-12, "t = {t}");
    }

    let markov = markov_model();
    let table = markov_table(MARKOV_INIT, MARKOV_T, n);
    let spectrum = exact_spectrum(&markov, n).unwrap();
    for k in 0..25 {
        let t = 0.05 * k as f64 + 0.0017;
        let got = epsilon_at(&spectrum, t, Tail::AboveStrict).unwrap().epsilon;
        assert!((got - table.entropy_tail(t, n)).abs() < 1e-12, "t = {t}");
    }
}

#[test]
fn convolution_matches_enumeration_on_a_bsc() {
    for n in [3, 6] {
        let pair = InputChannel::with_uniform_input(ChannelModel::bsc(0.3)).unwrap();
        let spectrum = exact_spectrum(&pair, n).unwrap();
        assert_eq!(spectrum.atoms().len(), n + 1);
        let table = bsc_table(0.3, n);
        for a in spectrum.atoms() {
            let below = table.info_tail(a.value + 1e-9, n) - table.info_tail(a.value - 1e-9, n);
            assert!((below - a.mass).abs() < 1e-12);
        }
        assert!((spectrum.mean() - table.mean_info(n)).abs() < 1e-12);
    }
}

#[test]
fn mean_density_is_mutual_information_per_symbol() {
    let pair = InputChannel::with_uniform_input(ChannelModel::bsc(0.11)).unwrap();
    let hb = -(0.11f64 * 0.11f64.ln() + 0.89 * 0.89f64.ln());
    for n in [1, 4, 9] {
        let mean = exact_spectrum(&pair, n).unwrap().mean();
        assert!((mean - (LN_2 - hb)).abs() < 1e-12);
    }
}

#[test]
fn optimized_exponents_match_a_dense_grid() {
    let pair = InputChannel::with_uniform_input(ChannelModel::bsc(0.11)).unwrap();
    let ds = JointSourceModel::doubly_symmetric(0.11);
    let n = 4;
    let grid: Vec<f64> = (0..=10_000).map(|k| k as f64 / 10_000.0).collect();
    let e0: Vec<f64> = grid.iter().map(|&r| bsc_table(0.11, 1).e0(r, 1)).collect();
    let j0: Vec<f64> = grid.iter().map(|&r| dsbs_table(0.11, 1).j0(r, 1)).collect();
    for r in [0.02, 0.1, 0.2, 0.3, 0.34] {
        let best = grid.iter().zip(&e0).map(|(&g, &e)| e - g * r).fold(f64::NEG_INFINITY, f64::max);
        let got = channel_exponent(&pair, n, Rate::new(r).unwrap(), 33).unwrap().exponent;
        assert!(got >= best - 1e-12 && got <= best + 1e-8, "E({r}) = {got} vs grid {best}");
    }
    for r in [0.36, 0.4, 0.5, 0.6, 0.69] {
        let best = grid.iter().zip(&j0).map(|(&g, &j)| g * r - j).fold(f64::NEG_INFINITY, f64::max);
        let got = source_exponent(&ds, n, Rate::new(r).unwrap(), 33).unwrap().exponent;
        assert!(got >= best - 1e-12 && got <= best + 1e-8, "J({r}) = {got} vs grid {best}");
    }
}

#[test]
fn e0_is_concave_and_j0_convex() {
    let table_c = mixed_bsc_table(0.02, 0.3, 4);
    let table_s = markov_table(MARKOV_INIT, MARKOV_T, 4);
    let pair = InputChannel::with_uniform_input(ChannelModel::mixture(vec![
        (0.5, ChannelModel::bsc(0.02)),
        (0.5, ChannelModel::bsc(0.3)),
    ]))
    .unwrap();
    let markov = markov_model();
    let h = 0.05;
    for k in 1..20 {
        let r = k as f64 * h;
        let e = |x: f64| gallager_e0(&pair, 4, rho(x)).unwrap();
        let j = |x: f64| source_j0(&markov, 4, rho(x)).unwrap();
        assert!(e(r - h) + e(r + h) - 2.0 * e(r) <= 1e-13);
        assert!(j(r - h) + j(r + h) - 2.0 * j(r) >= -1e-13);
        assert!((e(r) - table_c.e0(r, 4)).abs() < 1e-12);
        assert!((j(r) - table_s.j0(r, 4)).abs() < 1e-12);
    }
}

#[test]
fn slope_matches_tilted_entropy_from_the_definition() {
    let n = 4;
    let table = markov_table(MARKOV_INIT, MARKOV_T, n);
    let markov = markov_model();
    for r in [0.2, 0.6, 1.0] {
        let s = 1.0 / (1.0 + r);
        let g: Vec<f64> = (0..table.ys.len())
            .map(|y| (0..table.xs.len()).map(|x| table.p[x][y].powf(s)).sum())
            .collect();
        let z: f64 = g.iter().map(|v| v.powf(1.0 + r)).sum();
        let mut h = 0.0;
        for (y, gy) in g.iter().enumerate() {
            let py = gy.powf(1.0 + r) / z;
            for x in 0..table.xs.len() {
                let c = table.p[x][y].powf(s) / gy;
                if c > 0.0 {
                    h -= py * c * c.ln();
                }
            }
        }
        let got = j0_derivative(&markov, n, rho(r)).unwrap();
        assert!((got - h / n as f64).abs() < 1e-12, "rho {r}: {got} vs {}", h / n as f64);
    }
}
