//! Seeded instance generators and the batch driver. Instance `k` of a batch
//! with master seed `s` depends only on `derive_seed(s, k)`, so any single
//! instance can be replayed in isolation.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::record::{LawConfig, VerificationRecord};
use super::tau::verify_tau_evolution;
use super::verify::{
    verify_corollary1, verify_corollary2, verify_remark_d2, verify_remark_lowerbound, verify_theorem1,
    verify_theorem2,
};
use crate::channels::KrausChannel;
use crate::error::{Error, Result};
use crate::linalg::{derive_seed, rng_from_seed, Dims};
use crate::states::{mixture, random_pure, w_state, State};

/// Law families a batch can run; `Tau` emits an equality and a positivity
/// record per instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BatchLaw {
    Theorem1,
    Corollary1,
    Corollary2,
    Theorem2,
    RemarkD2,
    RemarkLowerbound,
    Tau,
}

impl BatchLaw {
    pub const ALL: [BatchLaw; 7] = [
        BatchLaw::Theorem1,
        BatchLaw::Corollary1,
        BatchLaw::Corollary2,
        BatchLaw::Theorem2,
        BatchLaw::RemarkD2,
        BatchLaw::RemarkLowerbound,
        BatchLaw::Tau,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BatchLaw::Theorem1 => "theorem1",
            BatchLaw::Corollary1 => "corollary1",
            BatchLaw::Corollary2 => "corollary2",
            BatchLaw::Theorem2 => "theorem2",
            BatchLaw::RemarkD2 => "remark-d2",
            BatchLaw::RemarkLowerbound => "remark-lowerbound",
            BatchLaw::Tau => "tau",
        }
    }
}

impl fmt::Display for BatchLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BatchLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BatchLaw::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown law '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BatchSpec {
    pub law: BatchLaw,
    pub n: usize,
    pub seed: u64,
    /// First-party dimension for `theorem2` and `remark-d2`.
    pub d: Option<usize>,
    /// Dimension of the assisting party; by default 2, with every third
    /// `theorem1` instance using 3.
    pub n3: Option<usize>,
    pub config: LawConfig,
}

impl BatchSpec {
    pub fn new(law: BatchLaw, n: usize, seed: u64) -> Self {
        Self {
            law,
            n,
            seed,
            d: None,
            n3: None,
            config: LawConfig::default(),
        }
    }
}

fn dims(d: &[usize]) -> Dims {
    Dims::new(d.to_vec()).expect("positive dims")
}

/// Mixture of two random pure states with a random weight in `[0.1, 0.9]`.
pub fn random_mixed(d: &[usize], seed: u64) -> State<f64> {
    let w: f64 = rng_from_seed(derive_seed(seed, 0)).random_range(0.1..0.9);
    let a = random_pure(&dims(d), derive_seed(seed, 1));
    let b = random_pure(&dims(d), derive_seed(seed, 2));
    mixture(&[(w, a), (1.0 - w, b)]).expect("valid mixture")
}

fn random_channel(d: usize, kraus: usize, seed: u64) -> KrausChannel<f64> {
    KrausChannel::random(d, kraus, seed).expect("valid dimensions")
}

fn kraus_count(k: usize) -> usize {
    1 + k % 4
}

/// Runs one instance; `Tau` returns two records, every other law one.
pub fn run_instance(spec: &BatchSpec, k: usize) -> Result<Vec<VerificationRecord>> {
    let s = derive_seed(spec.seed, k as u64);
    let mut cfg = spec.config.clone();
    cfg.optimizer.seed = derive_seed(s, 9);
    let state_seed = derive_seed(s, 0);
    let ch_seed = derive_seed(s, 1);
    let ch2_seed = derive_seed(s, 2);
    let n3 = spec.n3.unwrap_or(2);
    let mut records = match spec.law {
        BatchLaw::Theorem1 => {
            let n3 = spec.n3.unwrap_or(if k % 3 == 2 { 3 } else { 2 });
            let psi = random_pure(&dims(&[2, 2, n3]), state_seed);
            vec![verify_theorem1(&psi, &random_channel(2, kraus_count(k), ch_seed), &cfg)?]
        }
        BatchLaw::Corollary1 => {
            let rho = random_mixed(&[2, 2, n3], state_seed);
            vec![verify_corollary1(&rho, &random_channel(2, kraus_count(k), ch_seed), &cfg)?]
        }
        BatchLaw::Corollary2 => {
            let rho = random_mixed(&[2, 2, n3], state_seed);
            let a = random_channel(2, kraus_count(k), ch_seed);
            let b = random_channel(2, kraus_count(k + 1), ch2_seed);
            vec![verify_corollary2(&rho, &a, &b, &cfg)?]
        }
        BatchLaw::Theorem2 => {
            let d = spec.d.unwrap_or(2);
            if d == 2 {
                // Same instance as the one-sided corollary with this seed.
                let rho = random_mixed(&[2, 2, n3], state_seed);
                vec![verify_theorem2(&rho, &random_channel(2, kraus_count(k), ch_seed), &cfg)?]
            } else {
                let psi = random_pure(&dims(&[d, d, n3]), state_seed);
                let kraus = if k % 4 == 0 { 1 } else { 2 };
                vec![verify_theorem2(&psi, &random_channel(d, kraus, ch_seed), &cfg)?]
            }
        }
        BatchLaw::RemarkD2 => {
            let d = spec.d.unwrap_or(3);
            let psi = random_pure(&dims(&[d, 2, n3]), state_seed);
            let ch = if k % 2 == 0 {
                let t: f64 = rng_from_seed(ch_seed).random_range(0.0..2.0);
                KrausChannel::phase_damping(t)?
            } else {
                random_channel(2, kraus_count(k), ch_seed)
            };
            vec![verify_remark_d2(&psi, &ch, &cfg)?]
        }
        BatchLaw::RemarkLowerbound => {
            let (rho, ch) = if k == 0 {
                (w_state(), KrausChannel::phase_damping(f64::INFINITY)?)
            } else if k % 2 == 1 {
                (random_pure(&dims(&[2, 2, n3]), state_seed), random_channel(n3, kraus_count(k), ch_seed))
            } else {
                (random_mixed(&[2, 2, n3], state_seed), random_channel(n3, kraus_count(k), ch_seed))
            };
            vec![verify_remark_lowerbound(&rho, &ch, &cfg)?]
        }
        BatchLaw::Tau => {
            let psi = random_pure(&dims(&[2, 2, 2]), state_seed);
            let (eq, pos) = verify_tau_evolution(&psi, &random_channel(2, kraus_count(k), ch_seed), &cfg)?;
            vec![eq, pos]
        }
    };
    for r in &mut records {
        r.instance = k;
        r.seed = Some(s);
    }
    Ok(records)
}

/// All instances, in index order regardless of completion order.
pub fn run_batch(spec: &BatchSpec) -> Result<Vec<VerificationRecord>> {
    spec.config.validate()?;
    if spec.n == 0 {
        return Err(Error::InvalidParameter("batch needs at least one instance".into()));
    }
    let per_instance: Vec<Result<Vec<VerificationRecord>>> =
        (0..spec.n).into_par_iter().map(|k| run_instance(spec, k)).collect();
    let mut out = Vec::new();
    for r in per_instance {
        out.extend(r?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub records: usize,
    pub passed: usize,
    pub certified_failures: usize,
    pub advisory_failures: usize,
    pub max_gap: f64,
}

impl BatchSummary {
    pub fn of(records: &[VerificationRecord]) -> Self {
        Self {
            records: records.len(),
            passed: records.iter().filter(|r| r.pass).count(),
            certified_failures: records.iter().filter(|r| !r.pass && r.certified).count(),
            advisory_failures: records.iter().filter(|r| !r.pass && !r.certified).count(),
            max_gap: records.iter().map(|r| r.gap).fold(f64::NEG_INFINITY, f64::max),
        }
    }

    pub fn ok(&self) -> bool {
        self.certified_failures == 0
    }
}

impl fmt::Display for BatchSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "records={} passed={} certified_failures={} advisory_failures={} max_gap={:.6e}",
            self.records, self.passed, self.certified_failures, self.advisory_failures, self.max_gap
        )
    }
}
