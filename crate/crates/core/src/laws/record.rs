use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::assist::OptimizerConfig;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    Theorem1,
    Corollary1,
    Corollary2,
    Theorem2,
    RemarkD2,
    RemarkLowerbound,
    TauEvolution,
    TauPositivity,
}

impl Law {
    pub const ALL: [Law; 8] = [
        Law::Theorem1,
        Law::Corollary1,
        Law::Corollary2,
        Law::Theorem2,
        Law::RemarkD2,
        Law::RemarkLowerbound,
        Law::TauEvolution,
        Law::TauPositivity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::Theorem1 => "theorem1",
            Law::Corollary1 => "corollary1",
            Law::Corollary2 => "corollary2",
            Law::Theorem2 => "theorem2",
            Law::RemarkD2 => "remark-d2",
            Law::RemarkLowerbound => "remark-lowerbound",
            Law::TauEvolution => "tau-evolution",
            Law::TauPositivity => "tau-positivity",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Law {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Law::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown law '{s}'")))
    }
}

/// What a reported number is known to be relative to the true quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    Lower,
    Upper,
    Exact,
    /// No proven relation to the true value.
    Estimate,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bound {
    pub value: f64,
    pub direction: Direction,
}

impl Bound {
    pub fn lower(value: f64) -> Self {
        Self { value, direction: Direction::Lower }
    }

    pub fn upper(value: f64) -> Self {
        Self { value, direction: Direction::Upper }
    }

    pub fn exact(value: f64) -> Self {
        Self { value, direction: Direction::Exact }
    }

    pub fn estimate(value: f64) -> Self {
        Self { value, direction: Direction::Estimate }
    }

    /// Safe on the smaller side of an inequality: never above the truth.
    pub fn safe_below(&self) -> bool {
        matches!(self.direction, Direction::Lower | Direction::Exact)
    }

    /// Safe on the larger side: never below the truth.
    pub fn safe_above(&self) -> bool {
        matches!(self.direction, Direction::Upper | Direction::Exact)
    }
}

/// Slack for optimizer-dependent comparisons and for pure algebra.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LawConfig {
    pub optimizer: OptimizerConfig,
    pub opt_tol: f64,
    pub alg_tol: f64,
    /// POVM arity; `None` means twice the measured dimension.
    pub arity: Option<usize>,
}

impl Default for LawConfig {
    fn default() -> Self {
        Self {
            optimizer: OptimizerConfig::default(),
            opt_tol: 1e-3,
            alg_tol: 1e-9,
            arity: None,
        }
    }
}

impl LawConfig {
    pub fn validate(&self) -> Result<()> {
        self.optimizer.validate()?;
        if !(self.opt_tol > 0.0 && self.alg_tol > 0.0) {
            return Err(Error::InvalidParameter("tolerances must be positive".into()));
        }
        Ok(())
    }
}

/// One evaluated instance of a law. `lhs` and `rhs` are the two sides of
/// the claimed relation `lhs ≤ rhs` (or `=`); `lhs_upper` is present for
/// equalities verified as a sandwich.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub law: Law,
    pub instance: usize,
    pub lhs: Bound,
    pub lhs_upper: Option<Bound>,
    pub rhs: Bound,
    pub gap: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub certified: bool,
    pub dims: Vec<usize>,
    pub channels: Vec<String>,
    pub seed: Option<u64>,
    pub optimizer_seed: u64,
    pub note: Option<String>,
}

impl VerificationRecord {
    pub(crate) fn new(law: Law, lhs: Bound, rhs: Bound, cfg: &LawConfig) -> Self {
        Self {
            law,
            instance: 0,
            lhs,
            lhs_upper: None,
            rhs,
            gap: 0.0,
            tolerance: cfg.alg_tol,
            pass: false,
            certified: false,
            dims: Vec::new(),
            channels: Vec::new(),
            seed: None,
            optimizer_seed: cfg.optimizer.seed,
            note: None,
        }
    }

    /// `lhs ≤ rhs` within `tol`; certified when both sides carry safe
    /// directions, so a failure is a genuine counterexample.
    pub(crate) fn inequality(mut self, tol: f64) -> Self {
        self.gap = self.lhs.value - self.rhs.value;
        self.tolerance = tol;
        self.pass = self.gap <= tol;
        self.certified = self.lhs.safe_below() && self.rhs.safe_above();
        self
    }

    /// `lhs = rhs` verified as `lhs_lower ≥ rhs - opt_tol` and
    /// `rhs ≤ lhs_upper + alg_tol`; the gap is `rhs - lhs_lower`.
    pub(crate) fn sandwich(mut self, lhs_upper: Bound, cfg: &LawConfig) -> Self {
        self.gap = self.rhs.value - self.lhs.value;
        self.tolerance = cfg.opt_tol;
        self.pass = self.gap <= cfg.opt_tol && self.rhs.value <= lhs_upper.value + cfg.alg_tol;
        self.certified = self.lhs.safe_below() && lhs_upper.safe_above();
        self.lhs_upper = Some(lhs_upper);
        self
    }

    pub(crate) fn described(mut self, dims: &[usize], channels: &[&str]) -> Self {
        self.dims = dims.to_vec();
        self.channels = channels.iter().map(|c| c.to_string()).collect();
        self
    }

    pub(crate) fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}
