//! `eoa verify`: a seeded batch of law checks.

use serde::Serialize;

use eoa_core::assist::OptimizerConfig;
use eoa_core::laws::{run_batch, BatchSpec, BatchSummary, LawConfig, VerificationRecord};

use crate::args::{Format, VerifyArgs};
use crate::output::emit;
use crate::{failed, usage, CliError};

/// The JSON document: tool version, the resolved configuration, and every
/// record in instance order.
#[derive(Serialize)]
struct Report<'a> {
    tool: &'static str,
    version: &'static str,
    config: &'a BatchSpec,
    summary: &'a BatchSummary,
    records: &'a [VerificationRecord],
}

pub fn spec(a: &VerifyArgs) -> Result<BatchSpec, CliError> {
    if a.format != Format::Json {
        return Err(CliError::Usage("verify writes json records only".into()));
    }
    if a.n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let mut spec = BatchSpec::new(a.law, a.n, a.seed);
    spec.d = a.d;
    spec.n3 = a.n3;
    spec.config = LawConfig {
        optimizer: OptimizerConfig {
            restarts: a.restarts,
            max_iters: a.iters,
            ..OptimizerConfig::default()
        },
        opt_tol: a.opt_tol,
        alg_tol: a.alg_tol,
        arity: a.arity,
    };
    spec.config.validate().map_err(usage)?;
    if matches!(spec.d, Some(d) if d < 2) || matches!(spec.n3, Some(n) if n < 2) {
        return Err(CliError::Usage("--d and --n3 must be at least 2".into()));
    }
    Ok(spec)
}

pub fn run(a: &VerifyArgs) -> Result<(), CliError> {
    let spec = spec(a)?;
    let records = run_batch(&spec).map_err(|e| match e {
        eoa_core::Error::InvalidParameter(_) | eoa_core::Error::DimensionMismatch(_) => usage(e),
        _ => failed(e),
    })?;
    let summary = BatchSummary::of(&records);
    let report = Report {
        tool: "eoa",
        version: env!("CARGO_PKG_VERSION"),
        config: &spec,
        summary: &summary,
        records: &records,
    };
    let mut bytes = serde_json::to_vec_pretty(&report).map_err(|e| CliError::Failed(e.to_string()))?;
    bytes.push(b'\n');
    emit(a.out.as_deref(), &bytes)?;
    println!("{} {summary}", spec.law);
    if summary.ok() {
        Ok(())
    } else {
        let first = records.iter().find(|r| !r.pass && r.certified).expect("a certified failure");
        Err(CliError::Failed(format!(
            "certified violation of {} at instance {} (seed {})",
            first.law,
            first.instance,
            first.seed.unwrap_or(spec.seed)
        )))
    }
}
