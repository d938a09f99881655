//! `eoa series`: the decay curve of a generalized GHZ state.

use serde::Serialize;

use eoa_core::laws::evolve_series;
use eoa_core::states::generalized_ghz;
use eoa_core::C64;

use crate::args::{Format, SeriesArgs};
use crate::output::{emit, sig12};
use crate::{failed, usage, CliError};

pub const HEADER: [&str; 5] = ["gamma_t", "factor", "eoa_product", "channel", "alpha"];

#[derive(Debug, Serialize)]
struct Row<'a> {
    gamma_t: f64,
    factor: f64,
    eoa_product: f64,
    channel: &'a str,
    alpha: f64,
}

pub fn run(a: &SeriesArgs) -> Result<(), CliError> {
    let psi = generalized_ghz::<f64>(C64::new(a.alpha, 0.0)).map_err(usage)?;
    let family = a.channel.family();
    let points = evolve_series(&psi, &family, &a.grid.points()).map_err(failed)?;
    let channel = family.name();
    let rows: Vec<Row> = points
        .iter()
        .map(|p| Row {
            gamma_t: p.gamma_t,
            factor: p.factor,
            eoa_product: p.eoa_product,
            channel,
            alpha: a.alpha,
        })
        .collect();
    let bytes = match a.format {
        Format::Csv => to_csv(&rows)?,
        Format::Json => {
            let mut v = serde_json::to_vec_pretty(&rows).map_err(|e| CliError::Failed(e.to_string()))?;
            v.push(b'\n');
            v
        }
    };
    emit(a.out.as_deref(), &bytes)
}

fn to_csv(rows: &[Row]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Failed(e.to_string());
    w.write_record(HEADER).map_err(io)?;
    for r in rows {
        w.write_record([
            sig12(r.gamma_t),
            sig12(r.factor),
            sig12(r.eoa_product),
            r.channel.to_string(),
            sig12(r.alpha),
        ])
        .map_err(io)?;
    }
    w.into_inner().map_err(|e| CliError::Failed(e.to_string()))
}
