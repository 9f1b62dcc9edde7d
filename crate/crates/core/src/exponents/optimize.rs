use serde::Serialize;

use super::{check_increasing, gallager_e0, source_j0, ExponentCurve, Rate, Rho};
use crate::error::{Error, Result};
use crate::models::{ChannelModel, Family, InputChannel, JointSourceModel, Pmf, SourceModel};

/// Uniform grid size used before golden-section refinement.
pub const DEFAULT_RHO_GRID: usize = 33;

/// Golden-section refinement stops once the bracket is this narrow.
pub const GOLDEN_WIDTH: f64 = 1e-10;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Maximizes a unimodal `f` on `[0, 1]`.
///
/// A uniform grid of `grid_size` points locates the best cell, which golden
/// section then narrows to [`GOLDEN_WIDTH`]. The refined point replaces the
/// grid point only if it is strictly better, so ties go to the smaller argument.
pub fn maximize_unimodal<E>(
    mut f: impl FnMut(f64) -> std::result::Result<f64, E>,
    grid_size: usize,
) -> std::result::Result<(f64, f64), E> {
    let g = grid_size.max(2);
    let grid: Vec<f64> = (0..g).map(|k| k as f64 / (g - 1) as f64).collect();
    let mut best = 0;
    let mut values = Vec::with_capacity(g);
    for (k, &x) in grid.iter().enumerate() {
        let v = f(x)?;
        if k == 0 || v > values[best] {
            best = k;
        }
        values.push(v);
    }

    let mut lo = grid[best.saturating_sub(1)];
    let mut hi = grid[(best + 1).min(g - 1)];
    let mut a = hi - INV_PHI * (hi - lo);
    let mut b = lo + INV_PHI * (hi - lo);
    let mut fa = f(a)?;
    let mut fb = f(b)?;
    while hi - lo > GOLDEN_WIDTH {
        if fa >= fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - INV_PHI * (hi - lo);
            fa = f(a)?;
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + INV_PHI * (hi - lo);
            fb = f(b)?;
        }
    }
    let (x, fx) = if fa >= fb { (a, fa) } else { (b, fb) };
    if fx > values[best] {
        Ok((x, fx))
    } else {
        Ok((grid[best], values[best]))
    }
}

/// An optimized exponent and the `ρ` attaining it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExponentPoint {
    pub exponent: f64,
    pub rho: Rho,
}

/// `E^{(n)}(R) = max_ρ {E0(ρ) - ρR}` for the given input.
pub fn channel_exponent(pair: &InputChannel, n: usize, rate: Rate, rho_grid_size: usize) -> Result<ExponentPoint> {
    let r = rate.nats();
    let (rho, exponent) = maximize_unimodal(
        |rho| Ok::<_, Error>(gallager_e0(pair, n, Rho::new(rho)?)? - rho * r),
        rho_grid_size,
    )?;
    Ok(ExponentPoint {
        exponent,
        rho: Rho::new(rho)?,
    })
}

/// `J^{(n)}(R) = max_ρ {ρR - J0(ρ)}`.
pub fn source_exponent(joint: &JointSourceModel, n: usize, rate: Rate, rho_grid_size: usize) -> Result<ExponentPoint> {
    let r = rate.nats();
    let (rho, exponent) = maximize_unimodal(
        |rho| Ok::<_, Error>(rho * r - source_j0(joint, n, Rho::new(rho)?)?),
        rho_grid_size,
    )?;
    Ok(ExponentPoint {
        exponent,
        rho: Rho::new(rho)?,
    })
}

/// Best i.i.d. input found by coordinate ascent.
#[derive(Clone, Debug, PartialEq)]
pub struct InputSearch {
    pub input: Pmf,
    pub point: ExponentPoint,
}

/// Maximizes `E^{(n)}(R)` over i.i.d. inputs for a memoryless channel.
///
/// Each coordinate trades mass with the last symbol; the split is chosen by
/// [`maximize_unimodal`] on a `grid_size`-point grid. Sweeps stop when a full
/// pass improves the exponent by less than `1e-12`.
pub fn optimize_iid_input(
    channel: &ChannelModel,
    n: usize,
    rate: Rate,
    grid_size: usize,
) -> Result<InputSearch> {
    if channel.family() != Family::Memoryless {
        return Err(Error::Input("input optimization needs a memoryless channel".into()));
    }
    let k = channel.alphabets().0.size();
    let eval = |q: &[f64]| -> Result<ExponentPoint> {
        let pair = InputChannel::new(SourceModel::iid(Pmf::new(q.to_vec())), channel.clone())?;
        channel_exponent(&pair, n, rate, grid_size)
    };
    let mut q = vec![1.0 / k as f64; k];
    let mut current = eval(&q)?;
    for _ in 0..50 {
        let start = current.exponent;
        for i in 0..k.saturating_sub(1) {
            let pool = q[i] + q[k - 1];
            if pool <= 0.0 {
                continue;
            }
            let (u, _) = maximize_unimodal(
                |u| {
                    let mut trial = q.clone();
                    trial[i] = u * pool;
                    trial[k - 1] = pool - u * pool;
                    eval(&trial).map(|p| p.exponent)
                },
                grid_size,
            )?;
            let mut trial = q.clone();
            trial[i] = u * pool;
            trial[k - 1] = pool - u * pool;
            let p = eval(&trial)?;
            if p.exponent > current.exponent {
                q = trial;
                current = p;
            }
        }
        if current.exponent - start < 1e-12 {
            break;
        }
    }
    Ok(InputSearch {
        input: Pmf::new(q),
        point: current,
    })
}

pub fn e0_curve(pair: &InputChannel, n: usize, rhos: &[f64]) -> Result<ExponentCurve> {
    check_increasing(rhos, "rho")?;
    let points = rhos
        .iter()
        .map(|&r| Ok((r, gallager_e0(pair, n, Rho::new(r)?)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExponentCurve {
        model_id: String::new(),
        n,
        points,
    })
}

pub fn j0_curve(joint: &JointSourceModel, n: usize, rhos: &[f64]) -> Result<ExponentCurve> {
    check_increasing(rhos, "rho")?;
    let points = rhos
        .iter()
        .map(|&r| Ok((r, source_j0(joint, n, Rho::new(r)?)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExponentCurve {
        model_id: String::new(),
        n,
        points,
    })
}

pub fn channel_exponent_curve(
    pair: &InputChannel,
    n: usize,
    rates: &[f64],
    rho_grid_size: usize,
) -> Result<ExponentCurve> {
    check_increasing(rates, "rate")?;
    let points = rates
        .iter()
        .map(|&r| Ok((r, channel_exponent(pair, n, Rate::new(r)?, rho_grid_size)?.exponent)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExponentCurve {
        model_id: String::new(),
        n,
        points,
    })
}

pub fn source_exponent_curve(
    joint: &JointSourceModel,
    n: usize,
    rates: &[f64],
    rho_grid_size: usize,
) -> Result<ExponentCurve> {
    check_increasing(rates, "rate")?;
    let points = rates
        .iter()
        .map(|&r| Ok((r, source_exponent(joint, n, Rate::new(r)?, rho_grid_size)?.exponent)))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExponentCurve {
        model_id: String::new(),
        n,
        points,
    })
}
