//! Channel factors, the time series they drive, and sudden-death roots.

use serde::{Deserialize, Serialize};

use crate::assist::{convex_roof_upper, OptimizerConfig};
use crate::channels::{apply_channel, ChannelFamily, KrausChannel};
use crate::error::{Error, Result};
use crate::measures::{eoa_pure_tripartite, pure_part_concurrence, wootters_concurrence};
use crate::states::{maximally_entangled, State};

/// Concurrence of the channel applied to one half of a maximally entangled
/// pair. `exact = false` marks a convex-roof upper bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelFactor {
    pub value: f64,
    pub exact: bool,
}

/// Which half of the pair the channel acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

const PURE_TOL: f64 = 1e-10;

/// Factor of a channel on dimension `d`, acting on the second half.
pub fn channel_factor(channel: &KrausChannel<f64>, d: usize, cfg: &OptimizerConfig) -> Result<ChannelFactor> {
    channel_factor_on(channel, d, Side::B, cfg)
}

pub fn channel_factor_on(
    channel: &KrausChannel<f64>,
    d: usize,
    side: Side,
    cfg: &OptimizerConfig,
) -> Result<ChannelFactor> {
    if channel.in_dim() != d {
        return Err(Error::DimensionMismatch(format!(
            "channel acts on dimension {}, factor requested for d = {d}",
            channel.in_dim()
        )));
    }
    let sys = match side {
        Side::A => 0,
        Side::B => 1,
    };
    let out = apply_channel(&maximally_entangled::<f64>(d)?, channel, sys)?;
    let rho = out.to_density_matrix();
    let dims = out.dims().clone();
    if dims[0] == 2 && dims[1] == 2 {
        return Ok(ChannelFactor {
            value: wootters_concurrence(&rho)?,
            exact: true,
        });
    }
    if let Some(value) = pure_part_concurrence(&rho, &dims, PURE_TOL)? {
        return Ok(ChannelFactor { value, exact: true });
    }
    Ok(ChannelFactor {
        value: convex_roof_upper(&rho, &dims, cfg)?,
        exact: false,
    })
}

/// Exact factor of a qubit channel.
pub fn qubit_factor(channel: &KrausChannel<f64>) -> Result<f64> {
    if channel.in_dim() != 2 || channel.out_dim() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "qubit channel expected, got {} -> {}",
            channel.in_dim(),
            channel.out_dim()
        )));
    }
    Ok(channel_factor(channel, 2, &OptimizerConfig::default())?.value)
}

fn family_factor(family: &ChannelFamily, gamma_t: f64) -> Result<f64> {
    let ch = family.at::<f64>(gamma_t)?;
    Ok(channel_factor(&ch, family.dim(), &OptimizerConfig::default())?.value)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesPoint {
    pub gamma_t: f64,
    pub factor: f64,
    pub eoa_product: f64,
}

/// Initial entanglement of assistance times the factor at each grid point.
pub fn evolve_series(psi: &State<f64>, family: &ChannelFamily, grid: &[f64]) -> Result<Vec<SeriesPoint>> {
    let eoa = eoa_pure_tripartite(psi)?;
    grid.iter()
        .map(|&gamma_t| {
            let factor = family_factor(family, gamma_t)?;
            Ok(SeriesPoint {
                gamma_t,
                factor,
                eoa_product: eoa * factor,
            })
        })
        .collect()
}

/// `n` evenly spaced points from `start` to `stop` inclusive.
pub fn linear_grid(start: f64, stop: f64, n: usize) -> Result<Vec<f64>> {
    if !(start < stop) || n < 2 || !start.is_finite() || !stop.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "grid needs start < stop and at least 2 points, got {start}:{stop}:{n}"
        )));
    }
    let h = (stop - start) / (n - 1) as f64;
    Ok((0..n).map(|k| if k == n - 1 { stop } else { start + h * k as f64 }).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuddenDeathResult {
    pub t_star: Option<f64>,
    pub bracket: (f64, f64),
    /// Factor value at `t_star` (0 when no root was found).
    pub residual: f64,
}

const SCAN_POINTS: usize = 256;

/// Smallest `Γt` in `bracket` where the family's factor reaches zero, to
/// within `tol`; a coarse scan locates the first sign change and bisection
/// refines it.
pub fn sudden_death_time(family: &ChannelFamily, bracket: (f64, f64), tol: f64) -> Result<SuddenDeathResult> {
    let (lo, hi) = bracket;
    if !(lo >= 0.0 && lo < hi && hi.is_finite()) || !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "invalid bracket ({lo}, {hi}) or tolerance {tol}"
        )));
    }
    if family_factor(family, lo)? <= 0.0 {
        return Err(Error::InvalidParameter(format!("factor already vanishes at Γt = {lo}")));
    }
    let grid = linear_grid(lo, hi, SCAN_POINTS)?;
    let mut alive = lo;
    let mut dead = None;
    for &t in &grid[1..] {
        if family_factor(family, t)? <= 0.0 {
            dead = Some(t);
            break;
        }
        alive = t;
    }
    let Some(mut dead) = dead else {
        return Ok(SuddenDeathResult {
            t_star: None,
            bracket,
            residual: 0.0,
        });
    };
    while dead - alive > tol {
        let mid = 0.5 * (alive + dead);
        if family_factor(family, mid)? <= 0.0 {
            dead = mid;
        } else {
            alive = mid;
        }
    }
    Ok(SuddenDeathResult {
        t_star: Some(dead),
        bracket,
        residual: family_factor(family, dead)?,
    })
}

/// Default search window and tolerance.
pub const DEFAULT_BRACKET: (f64, f64) = (0.0, 3.0);
pub const DEFAULT_DEATH_TOL: f64 = 1e-8;
