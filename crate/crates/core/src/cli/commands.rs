use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use super::output::{finish_json, Table, Units};
use super::{Command, Common, CurveArgs, EXIT_BOUND_VIOLATED, EXIT_OK};
use crate::codingsim::{simulate_channel_code, simulate_slepian_wolf, ChannelSimConfig, SlepianWolfConfig};
use crate::error::{Error, Result};
use crate::exponents::{
    channel_exponent, gallager_e0, optimize_iid_input, solve_rho0, source_exponent, source_j0,
    tilted_joint, verify_theorem1, verify_theorem2, BoundReport, Rate, Rho,
};
use crate::models::{parse_model, reference_rates, AnyModel, InputChannel, JointSourceModel};
use crate::spectrum::{epsilon_at, exact_spectrum, monte_carlo_spectrum, SpectrumCdf, SpectrumTarget};

pub(super) struct Done {
    pub text: String,
    pub exit: i32,
}

impl Done {
    fn ok(text: String) -> Self {
        Self { text, exit: EXIT_OK }
    }
}

struct LoadedFile {
    path: String,
    sha256: String,
    model: AnyModel,
}

fn load(path: &Path) -> Result<LoadedFile> {
    let bytes = std::fs::read(path)?;
    let sha256 = Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect();
    let text = String::from_utf8(bytes).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    let model = parse_model(&text)?;
    Ok(LoadedFile {
        path: path.display().to_string(),
        sha256,
        model,
    })
}

enum Resolved {
    Pair(InputChannel),
    Joint(JointSourceModel),
}

fn resolve(files: &[LoadedFile]) -> Result<Resolved> {
    let models: Vec<&AnyModel> = files.iter().map(|f| &f.model).collect();
    match models.as_slice() {
        [AnyModel::Channel(c)] => Ok(Resolved::Pair(InputChannel::with_uniform_input(c.clone())?)),
        [AnyModel::Source(s), AnyModel::Channel(c)] | [AnyModel::Channel(c), AnyModel::Source(s)] => {
            Ok(Resolved::Pair(InputChannel::new(s.clone(), c.clone())?))
        }
        [AnyModel::Joint(j)] => Ok(Resolved::Joint(j.clone())),
        _ => Err(Error::Input(
            "expected --model CHANNEL, --model SOURCE --model CHANNEL, or --model JOINT".into(),
        )),
    }
}

fn want_pair(files: &[LoadedFile]) -> Result<InputChannel> {
    match resolve(files)? {
        Resolved::Pair(p) => Ok(p),
        Resolved::Joint(_) => Err(Error::Input("this command needs a channel model".into())),
    }
}

/// A joint file, or the joint law induced by an input and a channel.
fn want_joint(files: &[LoadedFile]) -> Result<JointSourceModel> {
    Ok(match resolve(files)? {
        Resolved::Pair(p) => p.joint().clone(),
        Resolved::Joint(j) => j,
    })
}

/// Config echo shared by CSV headers and JSON reports.
struct Echo<'a> {
    name: &'static str,
    argv: &'a [String],
    files: Vec<LoadedFile>,
    common: &'a Common,
}

impl Echo<'_> {
    fn comments(&self) -> Vec<String> {
        let mut out = vec![format!("gallager {}", shell_join(self.argv))];
        for f in &self.files {
            out.push(format!("model {} type={} sha256={}", f.path, f.model.kind(), f.sha256));
        }
        out.push(format!("n = {}", self.common.n));
        out.push(format!("units = {}", self.common.units.name()));
        out
    }

    fn json(&self, body: Value, nats_keys: &[&str]) -> String {
        let models: Vec<Value> = self
            .files
            .iter()
            .map(|f| json!({"path": f.path, "type": f.model.kind(), "sha256": f.sha256}))
            .collect();
        let mut v = json!({
            "command": self.name,
            "argv": self.argv,
            "models": models,
            "n": self.common.n,
            "units": self.common.units.name(),
        });
        let mut body = body;
        finish_json(&mut body, self.common.units, nats_keys);
        if let (Value::Object(dst), Value::Object(src)) = (&mut v, body) {
            dst.extend(src);
        }
        let mut text = serde_json::to_string_pretty(&v).expect("serializable");
        text.push('\n');
        text
    }
}

fn shell_join(args: &[String]) -> String {
    args.iter()
        .map(|a| {
            if !a.is_empty() && a.chars().all(|c| c.is_ascii_alphanumeric() || "-_./=,:+".contains(c)) {
                a.clone()
            } else {
                format!("'{}'", a.replace('\'', r"'\''"))
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn grid(values: &[f64], size: usize) -> Result<Vec<f64>> {
    if !values.is_empty() {
        return Ok(values.to_vec());
    }
    if size < 2 {
        return Err(Error::Input("grid needs at least 2 points".into()));
    }
    Ok((0..size).map(|k| k as f64 / (size - 1) as f64).collect())
}

fn rate(units: Units, value: f64) -> Result<Rate> {
    Rate::new(units.read(value))
}

pub(super) fn execute(command: &Command, argv: &[String]) -> Result<Done> {
    let common = command.common();
    let files = common.models.iter().map(|p| load(p)).collect::<Result<Vec<_>>>()?;
    let name = match command {
        Command::E0Curve(_) => "e0-curve",
        Command::J0Curve(_) => "j0-curve",
        Command::Exponent(_) => "exponent",
        Command::Spectrum(_) => "spectrum",
        Command::VerifyT1(_) => "verify-t1",
        Command::VerifyT2(_) => "verify-t2",
        Command::Tilted(_) => "tilted",
        Command::SimChannel(_) => "sim-channel",
        Command::SimSw(_) => "sim-sw",
    };
    let echo = Echo { name, argv, files, common };
    let units = common.units;
    let n = common.n;
    match command {
        Command::E0Curve(a) => {
            let pair = want_pair(&echo.files)?;
            curve(&echo, a, "e0", |rho| gallager_e0(&pair, n, rho))
        }
        Command::J0Curve(a) => {
            let joint = want_joint(&echo.files)?;
            curve(&echo, a, "j0", |rho| source_j0(&joint, n, rho))
        }
        Command::Exponent(a) => {
            let rates = a.rate.iter().map(|&r| rate(units, r)).collect::<Result<Vec<_>>>()?;
            let mut table;
            match resolve(&echo.files)? {
                Resolved::Pair(pair) if a.optimize_input => {
                    let k = pair.channel().alphabets().0.size();
                    let mut cols = vec!["rate".to_string(), "exponent".into(), "rho".into()];
                    cols.extend((0..k).map(|x| format!("p{x}")));
                    table = Table::new(echo.comments(), &[]);
                    table.columns = cols;
                    table.comments.push("exponent = max over iid inputs of E(R)".into());
                    for r in rates {
                        let s = optimize_iid_input(pair.channel(), n, r, a.grid)?;
                        let mut row = vec![units.show(r.nats()), units.show(s.point.exponent), s.point.rho.value()];
                        row.extend(s.input.probs());
                        table.rows.push(row);
                    }
                }
                Resolved::Pair(pair) => {
                    table = Table::new(echo.comments(), &["rate", "exponent", "rho"]);
                    table.comments.push("exponent = E(R) = max_rho E0(rho) - rho R".into());
                    for r in rates {
                        let p = channel_exponent(&pair, n, r, a.grid)?;
                        table.rows.push(vec![units.show(r.nats()), units.show(p.exponent), p.rho.value()]);
                    }
                }
                Resolved::Joint(joint) => {
                    if a.optimize_input {
                        return Err(Error::Input("--optimize-input needs a channel model".into()));
                    }
                    table = Table::new(echo.comments(), &["rate", "exponent", "rho"]);
                    table.comments.push("exponent = J(R) = max_rho rho R - J0(rho)".into());
                    for r in rates {
                        let p = source_exponent(&joint, n, r, a.grid)?;
                        table.rows.push(vec![units.show(r.nats()), units.show(p.exponent), p.rho.value()]);
                    }
                }
            }
            Ok(Done::ok(table.to_csv()))
        }
        Command::Spectrum(a) => {
            let resolved = resolve(&echo.files)?;
            let target: SpectrumTarget<'_> = match &resolved {
                Resolved::Pair(p) => p.into(),
                Resolved::Joint(j) => j.into(),
            };
            let spectrum = match a.samples {
                Some(s) => monte_carlo_spectrum(target, n, s, a.seed)?,
                None => exact_spectrum(target, n)?,
            };
            Ok(Done::ok(spectrum_csv(&echo, &spectrum, &a.threshold)?))
        }
        Command::VerifyT1(a) => {
            let pair = want_pair(&echo.files)?;
            let thresholds = verify_thresholds(&a.threshold, a.grid, units, || {
                let r = reference_rates(pair.joint());
                r.inf_mutual_info
                    .filter(|&i| i > 0.0)
                    .map(|i| (0.0, i))
                    .ok_or_else(|| Error::Input("no reference rate for this model; pass --threshold".into()))
            })?;
            let reports = thresholds
                .into_iter()
                .map(|t| verify_theorem1(&pair, n, t))
                .collect::<Result<Vec<_>>>()?;
            Ok(bound_output(&echo, reports))
        }
        Command::VerifyT2(a) => {
            let joint = want_joint(&echo.files)?;
            let thresholds = verify_thresholds(&a.threshold, a.grid, units, || {
                let ln_x = joint.alphabets().0.ln_size();
                reference_rates(&joint)
                    .sup_cond_entropy
                    .filter(|&h| h < ln_x)
                    .map(|h| (h, ln_x))
                    .ok_or_else(|| Error::Input("no reference rate for this model; pass --threshold".into()))
            })?;
            let reports = thresholds
                .into_iter()
                .map(|t| verify_theorem2(&joint, n, t))
                .collect::<Result<Vec<_>>>()?;
            Ok(bound_output(&echo, reports))
        }
        Command::Tilted(a) => {
            let joint = want_joint(&echo.files)?;
            let mut table = Table::new(echo.comments(), &["rho", "j0", "dj0_drho", "tilted_mass"]);
            table
                .comments
                .push("dj0_drho = H(tilted X | tilted Y) / n, the slope of J0".into());
            if let Some(r) = a.rate {
                let r = rate(units, r)?;
                match solve_rho0(&joint, n, r) {
                    Ok(rho0) => table.comments.push(format!(
                        "rho0 = {} solves dj0_drho = {}",
                        super::sig12(rho0.value()),
                        super::sig12(units.show(r.nats()))
                    )),
                    Err(Error::Domain { lo, hi, .. }) => table.comments.push(format!(
                        "rho0: none, rate {} is outside ({}, {})",
                        super::sig12(units.show(r.nats())),
                        super::sig12(units.show(lo)),
                        super::sig12(units.show(hi))
                    )),
                    Err(e) => return Err(e),
                }
            }
            for rho in grid(&a.rho, a.grid)? {
                let rho = Rho::new(rho)?;
                let t = tilted_joint(&joint, n, rho)?;
                table.rows.push(vec![
                    rho.value(),
                    units.show(source_j0(&joint, n, rho)?),
                    units.show(t.conditional_entropy() / n as f64),
                    t.total_mass(),
                ]);
            }
            Ok(Done::ok(table.to_csv()))
        }
        Command::SimChannel(a) => {
            let pair = want_pair(&echo.files)?;
            let cfg = ChannelSimConfig {
                pair: &pair,
                n,
                rate: rate(units, a.rate)?,
                codebooks: a.codebooks,
                transmissions: a.transmissions,
                seed: a.seed,
            };
            let result = simulate_channel_code(&cfg)?;
            let body = json!({
                "config": {
                    "rate": cfg.rate.nats(),
                    "codebooks": a.codebooks,
                    "transmissions": a.transmissions,
                    "seed": a.seed,
                },
                "result": to_value(&result),
            });
            Ok(Done::ok(echo.json(body, &["rate", "exponent"])))
        }
        Command::SimSw(a) => {
            let joint = want_joint(&echo.files)?;
            let cfg = SlepianWolfConfig {
                joint: &joint,
                n,
                rate: rate(units, a.rate)?,
                bin_seed: a.bin_seed,
                trials: a.trials,
                seed: a.seed,
            };
            let result = simulate_slepian_wolf(&cfg)?;
            let body = json!({
                "config": {
                    "rate": cfg.rate.nats(),
                    "trials": a.trials,
                    "bin_seed": a.bin_seed,
                    "seed": a.seed,
                },
                "result": to_value(&result),
            });
            Ok(Done::ok(echo.json(body, &["rate", "exponent"])))
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn curve(echo: &Echo<'_>, a: &CurveArgs, column: &'static str, f: impl Fn(Rho) -> Result<f64>) -> Result<Done> {
    let units = echo.common.units;
    let mut table = Table::new(echo.comments(), &["rho", column]);
    let rhos = grid(&a.rho, a.grid)?;
    crate::exponents::check_increasing(&rhos, "rho")?;
    for r in rhos {
        let rho = Rho::new(r)?;
        table.rows.push(vec![rho.value(), units.show(f(rho)?)]);
    }
    Ok(Done::ok(table.to_csv()))
}

fn verify_thresholds(
    given: &[f64],
    size: usize,
    units: Units,
    interval: impl FnOnce() -> Result<(f64, f64)>,
) -> Result<Vec<Rate>> {
    if !given.is_empty() {
        return given.iter().map(|&t| rate(units, t)).collect();
    }
    if size == 0 {
        return Err(Error::Input("grid needs at least 1 point".into()));
    }
    let (lo, hi) = interval()?;
    (1..=size)
        .map(|k| Rate::new(lo + (hi - lo) * k as f64 / (size + 1) as f64))
        .collect()
}

fn bound_output(echo: &Echo<'_>, reports: Vec<BoundReport>) -> Done {
    let holds = reports.iter().all(|r| r.holds);
    let body = json!({"holds": holds, "reports": to_value(&reports)});
    Done {
        text: echo.json(body, &["threshold", "lhs", "rhs", "slack"]),
        exit: if holds { EXIT_OK } else { EXIT_BOUND_VIOLATED },
    }
}

fn spectrum_csv(echo: &Echo<'_>, s: &SpectrumCdf, thresholds: &[f64]) -> Result<String> {
    let units = echo.common.units;
    let mut comments = echo.comments();
    comments.push(format!("density = {}", s.kind().name()));
    match s.seed() {
        Some(seed) => comments.push(format!(
            "mode = monte-carlo, samples = {}, seed = {seed}",
            s.sample_count().unwrap_or(0)
        )),
        None => comments.push("mode = exact".into()),
    }
    comments.push(format!("mean = {}", super::sig12(units.show(s.mean()))));
    for &t in thresholds {
        let probe = epsilon_at(s, units.read(t), s.kind().tail())?;
        let ci = probe.ci_halfwidth.map_or(String::new(), |h| format!(" +- {}", super::sig12(h)));
        comments.push(format!("epsilon({}) = {}{ci}", super::sig12(t), super::sig12(probe.epsilon)));
    }
    let mut table = Table::new(comments, &["value", "mass", "cdf"]);
    let mut cdf = 0.0;
    if s.seed().is_some() {
        let mut sorted = s.samples().to_vec();
        sorted.sort_by(f64::total_cmp);
        let total = sorted.len() as f64;
        let mut i = 0;
        while i < sorted.len() {
            let j = sorted[i..].iter().position(|&v| v != sorted[i]).map_or(sorted.len(), |k| i + k);
            let mass = (j - i) as f64 / total;
            cdf = j as f64 / total;
            table.rows.push(vec![units.show(sorted[i]), mass, cdf]);
            i = j;
        }
    } else {
        for a in s.atoms() {
            cdf += a.mass;
            table.rows.push(vec![units.show(a.value), a.mass, cdf]);
        }
    }
    Ok(table.to_csv())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(slack: f64) -> BoundReport {
        BoundReport {
            n: 4,
            threshold: 0.2,
            epsilon_n: 0.1,
            rho_n: Rho::ONE,
            lhs: 0.1 + slack,
            rhs: 0.1,
            slack,
            holds: slack >= -crate::exponents::HOLDS_TOLERANCE,
        }
    }

    #[test]
    fn a_violated_report_sets_exit_three() {
        let common = Common { models: vec![], n: 4, workers: None, units: Units::Nats, out: None };
        let argv = vec!["verify-t1".to_string()];
        let echo = Echo { name: "verify-t1", argv: &argv, files: vec![], common: &common };
        assert_eq!(bound_output(&echo, vec![report(0.3), report(0.0)]).exit, EXIT_OK);
        let done = bound_output(&echo, vec![report(0.3), report(-1e-6)]);
        assert_eq!(done.exit, EXIT_BOUND_VIOLATED);
        assert!(done.text.contains("\"holds\": false"));
    }
}
