//! `eoa sudden-death`: the first zero of the channel factor.

use serde::Serialize;

use eoa_core::laws::sudden_death_time;

use crate::args::{ChannelKind, DeathArgs};
use crate::output::sig12;
use crate::{usage, CliError};

#[derive(Serialize)]
struct Report {
    channel: ChannelKind,
    p: Option<f64>,
    t_star: Option<f64>,
    bracket: (f64, f64),
    residual: f64,
    tol: f64,
}

/// Prints `t_star` (or `none`) on the first line and a JSON object on the
/// second.
pub fn run(a: &DeathArgs) -> Result<(), CliError> {
    let r = sudden_death_time(&a.channel.family(), a.bracket, a.tol).map_err(usage)?;
    let report = Report {
        channel: a.channel.channel,
        p: (a.channel.channel == ChannelKind::Gad).then_some(a.channel.p),
        t_star: r.t_star,
        bracket: r.bracket,
        residual: r.residual,
        tol: a.tol,
    };
    match r.t_star {
        Some(t) => println!("{}", sig12(t)),
        None => println!("none"),
    }
    println!("{}", serde_json::to_string(&report).map_err(|e| CliError::Failed(e.to_string()))?);
    Ok(())
}
