//! Random-restart stochastic ascent over complex isometries.
//!
//! Each restart runs a (1+1) evolution strategy: perturb the current
//! isometry with complex Gaussian noise, pull it back onto the Stiefel
//! manifold by Gram-Schmidt, and keep the candidate only if the objective
//! improves. The step size grows on success and shrinks on failure, so it
//! decays as the iterate settles. Restarts run in parallel, each with its own
//! RNG stream, and the merge is a deterministic max.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::random::{gaussian_matrix, haar_isometry_from, rng_from_seed};
use crate::linalg::{derive_seed, orthonormalize_columns, ComplexMatrix};
use crate::scalar::Real;

const GROW: f64 = 1.3;
const SHRINK: f64 = 0.93;
const MAX_STEP: f64 = 1.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub max_iters: usize,
    /// A restart stops once its step size falls below this.
    pub step_tol: f64,
    /// Minimum objective increase for a candidate to be accepted.
    pub objective_tol: f64,
    pub initial_step: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            restarts: 20,
            max_iters: 500,
            step_tol: 1e-7,
            objective_tol: 1e-15,
            initial_step: 0.3,
            seed: 0,
        }
    }
}

impl OptimizerConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 || self.max_iters == 0 {
            return Err(Error::InvalidParameter("restarts and max_iters must be positive".into()));
        }
        for (name, v) in [
            ("step_tol", self.step_tol),
            ("objective_tol", self.objective_tol),
            ("initial_step", self.initial_step),
        ] {
            if !(v > 0.0) {
                return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

/// Best point found and the restart that produced it.
#[derive(Clone, Debug)]
pub struct Optimum<T: Real> {
    pub value: T,
    pub argmax: ComplexMatrix<T>,
    pub restart: usize,
}

fn run_restart<T, F>(
    rows: usize,
    cols: usize,
    cfg: &OptimizerConfig,
    start: ComplexMatrix<T>,
    seed: u64,
    objective: &F,
) -> (T, ComplexMatrix<T>)
where
    T: Real,
    F: Fn(&ComplexMatrix<T>) -> T,
{
    let mut rng = rng_from_seed(seed);
    let mut best = start;
    let mut best_val = objective(&best);
    let mut step = cfg.initial_step.min(MAX_STEP);
    let tol = T::lit(cfg.objective_tol);
    for _ in 0..cfg.max_iters {
        if step < cfg.step_tol {
            break;
        }
        let noise = gaussian_matrix::<T>(rows, cols, &mut rng).scale_real(T::lit(step));
        let Some(candidate) = orthonormalize_columns(&(&best + &noise)) else {
            step *= SHRINK;
            continue;
        };
        let val = objective(&candidate);
        if val > best_val + tol {
            best = candidate;
            best_val = val;
            step = (step * GROW).min(MAX_STEP);
        } else {
            step *= SHRINK;
        }
    }
    (best_val, best)
}

/// Maximizes `objective` over `rows x cols` isometries. Restart `k` starts
/// from a Haar point drawn from `derive_seed(cfg.seed, k)`; when `warm` is
/// given, restart 0 starts there instead, so the result never falls below
/// `objective(warm)`.
pub fn maximize_isometry<T, F>(
    rows: usize,
    cols: usize,
    cfg: &OptimizerConfig,
    warm: Option<&ComplexMatrix<T>>,
    objective: F,
) -> Result<Optimum<T>>
where
    T: Real,
    F: Fn(&ComplexMatrix<T>) -> T + Sync,
{
    cfg.validate()?;
    if let Some(w) = warm {
        if w.rows() != rows || w.cols() != cols {
            return Err(Error::DimensionMismatch(format!(
                "warm start is {}x{}, expected {rows}x{cols}",
                w.rows(),
                w.cols()
            )));
        }
        w.ensure_isometry()?;
    }
    let results: Vec<Result<(T, ComplexMatrix<T>)>> = (0..cfg.restarts)
        .into_par_iter()
        .map(|k| {
            let seed = derive_seed(cfg.seed, k as u64);
            let mut rng = rng_from_seed(seed);
            let start = match (k, warm) {
                (0, Some(w)) => w.clone(),
                _ => haar_isometry_from(rows, cols, &mut rng)?,
            };
            Ok(run_restart(rows, cols, cfg, start, derive_seed(seed, 1), &objective))
        })
        .collect();
    let mut best: Option<Optimum<T>> = None;
    for (k, r) in results.into_iter().enumerate() {
        let (value, argmax) = r?;
        // Strict comparison keeps the lowest index among ties.
        if best.as_ref().map_or(true, |b| value > b.value) {
            best = Some(Optimum { value, argmax, restart: k });
        }
    }
    Ok(best.expect("at least one restart"))
}
