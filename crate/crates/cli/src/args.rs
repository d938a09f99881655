//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use eoa_core::channels::ChannelFamily;
use eoa_core::laws::{linear_grid, BatchLaw, DEFAULT_DEATH_TOL};

#[derive(Parser, Debug)]
#[command(name = "eoa", version, about = "Entanglement of assistance under noisy channels")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Initial EOA of a generalized GHZ state times the channel factor over a time grid.
    Series(SeriesArgs),
    /// Run a seeded batch of law checks and write the records as JSON.
    Verify(VerifyArgs),
    /// First time at which the channel factor vanishes.
    SuddenDeath(DeathArgs),
    /// Invariant suites at reduced instance counts.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChannelKind {
    PhaseDamping,
    Gad,
    Identity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct ChannelArgs {
    #[arg(long, value_enum, default_value = "phase-damping")]
    pub channel: ChannelKind,
    /// Bath parameter of the generalized amplitude damping channel.
    #[arg(long, default_value_t = 0.5, value_parser = unit_interval)]
    pub p: f64,
}

impl ChannelArgs {
    pub fn family(&self) -> ChannelFamily {
        match self.channel {
            ChannelKind::PhaseDamping => ChannelFamily::PhaseDamping,
            ChannelKind::Gad => ChannelFamily::GeneralizedAmplitudeDamping { p: self.p },
            ChannelKind::Identity => ChannelFamily::Identity { d: 2 },
        }
    }
}

/// `start:stop:steps`, validated on parse.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        linear_grid(self.start, self.stop, self.steps).expect("validated on parse")
    }
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, n] = parts.as_slice() else {
        return Err("expected start:stop:steps".into());
    };
    let grid = Grid {
        start: a.parse().map_err(|e| format!("start: {e}"))?,
        stop: b.parse().map_err(|e| format!("stop: {e}"))?,
        steps: n.parse().map_err(|e| format!("steps: {e}"))?,
    };
    if grid.start < 0.0 {
        return Err("grid must start at gamma_t >= 0".into());
    }
    linear_grid(grid.start, grid.stop, grid.steps).map_err(|e| e.to_string())?;
    Ok(grid)
}

fn parse_bracket(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo: f64 = a.parse().map_err(|e| format!("lo: {e}"))?;
    let hi: f64 = b.parse().map_err(|e| format!("hi: {e}"))?;
    if !(lo >= 0.0 && lo < hi && hi.is_finite()) {
        return Err(format!("need 0 <= lo < hi, got {lo}:{hi}"));
    }
    Ok((lo, hi))
}

fn unit_interval(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("{v} is outside [0, 1]"))
    }
}

fn positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{v} must be positive"))
    }
}

fn law(s: &str) -> Result<BatchLaw, String> {
    s.parse().map_err(|e: eoa_core::Error| e.to_string())
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    /// Amplitude of |000> in the initial state.
    #[arg(long, default_value_t = 0.5, value_parser = unit_interval)]
    pub alpha: f64,
    #[arg(long, default_value = "0:3:301", value_parser = parse_grid)]
    pub grid: Grid,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// theorem1 | corollary1 | corollary2 | theorem2 | remark-d2 | remark-lowerbound | tau
    #[arg(value_parser = law)]
    pub law: BatchLaw,
    #[arg(long, default_value_t = 20)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// First-party dimension for theorem2 and remark-d2.
    #[arg(long)]
    pub d: Option<usize>,
    /// Dimension of the assisting party.
    #[arg(long)]
    pub n3: Option<usize>,
    #[arg(long, default_value_t = 20)]
    pub restarts: usize,
    #[arg(long, default_value_t = 500)]
    pub iters: usize,
    #[arg(long, default_value_t = 1e-3, value_parser = positive)]
    pub opt_tol: f64,
    #[arg(long, default_value_t = 1e-9, value_parser = positive)]
    pub alg_tol: f64,
    /// POVM arity for the assisted measurement.
    #[arg(long)]
    pub arity: Option<usize>,
    /// Only json is supported for records.
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DeathArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,
    /// Search window lo:hi in units of gamma_t.
    #[arg(long, default_value = "0:3", value_parser = parse_bracket)]
    pub bracket: (f64, f64),
    #[arg(long, default_value_t = DEFAULT_DEATH_TOL, value_parser = positive)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Inject a channel whose Kraus completeness is off by this residual.
    #[arg(long, value_parser = positive)]
    pub corrupt_kraus: Option<f64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(parse_grid("0:3:301").unwrap().points().len(), 301);
        assert!(parse_grid("0:3:1").is_err());
        assert!(parse_grid("3:0:5").is_err());
        assert!(parse_grid("-1:0:5").is_err());
        assert!(parse_grid("0:3").is_err());
        assert!(parse_grid("a:3:4").is_err());
    }

    #[test]
    fn brackets() {
        assert_eq!(parse_bracket("0.5:2").unwrap(), (0.5, 2.0));
        assert!(parse_bracket("2:1").is_err());
        assert!(parse_bracket("0:inf").is_err());
    }

    #[test]
    fn cli_shape() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
