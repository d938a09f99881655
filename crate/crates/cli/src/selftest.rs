//! `eoa selftest`: every invariant family at reduced instance counts.
//! Stdout carries a deterministic summary; timings go to stderr.

use std::time::Instant;

use eoa_core::channels::{apply_channel, ChannelFamily, KrausChannel};
use eoa_core::laws::{
    evolve_series, run_batch, sudden_death_time, tau, BatchLaw, BatchSpec, DEFAULT_BRACKET, DEFAULT_DEATH_TOL,
};
use eoa_core::linalg::random::gaussian_matrix;
use eoa_core::linalg::{derive_seed, eigvalsh, haar_isometry, kron, partial_trace, rng_from_seed};
use eoa_core::measures::{coa, i_concurrence_generators, i_concurrence_purity, wootters_concurrence};
use eoa_core::states::{generalized_ghz, ghz, random_pure, w_state, State};
use eoa_core::{Dims, Matrix, C64};

use crate::args::SelftestArgs;
use crate::CliError;

const KRAUS_TOL: f64 = 1e-10;
const ALG_TOL: f64 = 1e-9;

/// Number of checks run, or a message naming the failing check and seed.
type Outcome = Result<usize, String>;

struct Ctx {
    seed: u64,
    corrupt_kraus: Option<f64>,
}

impl Ctx {
    fn instance(&self, suite: u64, k: u64) -> u64 {
        derive_seed(derive_seed(self.seed, suite), k)
    }
}

fn dims(d: &[usize]) -> Dims {
    Dims::new(d.to_vec()).expect("positive dims")
}

fn random_density(n: usize, rank: usize, seed: u64) -> Matrix {
    let g = gaussian_matrix::<f64>(n, rank, &mut rng_from_seed(seed));
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    m.scale_real(1.0 / tr)
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn kraus(ctx: &Ctx) -> Outcome {
    let mut n = 0;
    for step in 0..=30 {
        let t = 0.2 * step as f64;
        for p in [0.0, 0.25, 0.5, 1.0] {
            let r = KrausChannel::<f64>::generalized_amplitude_damping(t, p)
                .map_err(|e| e.to_string())?
                .completeness_residual();
            check(r <= KRAUS_TOL, || format!("kraus completeness: gad({t}, {p}) residual {r:e}"))?;
        }
        let r = KrausChannel::<f64>::phase_damping(t).map_err(|e| e.to_string())?.completeness_residual();
        check(r <= KRAUS_TOL, || format!("kraus completeness: phase-damping({t}) residual {r:e}"))?;
        n += 5;
    }
    for k in 0..50u64 {
        let s = ctx.instance(0, k);
        let mut ch = KrausChannel::<f64>::random(2 + k as usize % 2, 1 + k as usize % 4, s).map_err(|e| e.to_string())?;
        if k == 0 {
            if let Some(r) = ctx.corrupt_kraus {
                let scale = (1.0 + r).sqrt();
                let ops = ch.kraus().iter().map(|m| m.scale_real(scale)).collect();
                ch = KrausChannel::unchecked(ops, "corrupted").map_err(|e| e.to_string())?;
            }
        }
        let r = ch.completeness_residual();
        check(r <= KRAUS_TOL, || {
            format!("kraus completeness: channel '{}' residual {r:e} > {KRAUS_TOL:e} (instance {k}, seed {s})", ch.label())
        })?;
        n += 1;
    }
    Ok(n)
}

fn states_and_channels(ctx: &Ctx) -> Outcome {
    let d = dims(&[2, 2, 2]);
    for k in 0..50u64 {
        let s = ctx.instance(1, k);
        let rho = State::density(random_density(8, 1 + k as usize % 8, s), d.clone()).map_err(|e| e.to_string())?;
        let tr = partial_trace(&rho.to_density_matrix(), &d, &[k as usize % 3]).map_err(|e| e.to_string())?.trace().re;
        check((tr - 1.0).abs() <= 1e-12, || format!("partial trace: trace {tr} (instance {k}, seed {s})"))?;
        let ch = KrausChannel::random(2, 1 + k as usize % 4, derive_seed(s, 1)).map_err(|e| e.to_string())?;
        let out = apply_channel(&rho, &ch, k as usize % 3).map_err(|e| e.to_string())?.to_density_matrix();
        let tr = out.trace().re;
        let min = eigvalsh(&out).map_err(|e| e.to_string())?[0];
        check((tr - 1.0).abs() <= 1e-12 && min >= -1e-10, || {
            format!("channel output: trace {tr}, min eigenvalue {min:e} (instance {k}, seed {s})")
        })?;
    }
    Ok(100)
}

fn measures(ctx: &Ctx) -> Outcome {
    let mut n = 0;
    for k in 0..200u64 {
        let s = ctx.instance(2, k);
        let rho = random_density(4, 1 + k as usize % 4, s);
        let c = wootters_concurrence(&rho).map_err(|e| e.to_string())?;
        let a = coa(&rho).map_err(|e| e.to_string())?;
        check(c >= 0.0 && a >= c && a <= 1.0 + ALG_TOL, || {
            format!("coa >= concurrence: coa {a}, concurrence {c} (instance {k}, seed {s})")
        })?;
        if k < 50 {
            let u = kron(
                &haar_isometry(2, 2, derive_seed(s, 1)).map_err(|e| e.to_string())?,
                &haar_isometry(2, 2, derive_seed(s, 2)).map_err(|e| e.to_string())?,
            );
            let rotated = &(&u * &rho) * &u.adjoint();
            let dc = (wootters_concurrence(&rotated).map_err(|e| e.to_string())? - c).abs();
            let da = (coa(&rotated).map_err(|e| e.to_string())? - a).abs();
            check(dc <= 1e-10 && da <= 1e-10, || {
                format!("local-unitary invariance: shifts {dc:e}, {da:e} (instance {k}, seed {s})")
            })?;
            n += 1;
        }
        n += 1;
    }
    for k in 0..30u64 {
        let s = ctx.instance(3, k);
        let d = 2 + k as usize % 3;
        let dd = dims(&[d, d]);
        let psi = random_pure::<f64>(&dd, s);
        let amps = psi.amplitudes().expect("pure");
        let g = i_concurrence_generators(amps, &dd).map_err(|e| e.to_string())?;
        let p = i_concurrence_purity(amps, &dd).map_err(|e| e.to_string())?;
        check((g - p).abs() <= 1e-10, || {
            format!("i-concurrence forms: {g} vs {p} (d {d}, instance {k}, seed {s})")
        })?;
        n += 1;
    }
    Ok(n)
}

fn closed_forms(_: &Ctx) -> Outcome {
    let psi = generalized_ghz::<f64>(C64::new(0.5, 0.0)).map_err(|e| e.to_string())?;
    let grid: Vec<f64> = (0..=30).map(|k| 0.1 * k as f64).collect();
    let amp = 3f64.sqrt() / 4.0;
    let pd = evolve_series(&psi, &ChannelFamily::PhaseDamping, &grid).map_err(|e| e.to_string())?;
    let gad = evolve_series(&psi, &ChannelFamily::GeneralizedAmplitudeDamping { p: 0.5 }, &grid)
        .map_err(|e| e.to_string())?;
    for (a, b) in pd.iter().zip(&gad) {
        let x = a.gamma_t;
        let want_pd = 2.0 * amp * (-x).exp();
        let want_gad = (amp * ((-2.0 * x).exp() + 2.0 * (-x).exp() - 1.0)).max(0.0);
        check((a.eoa_product - want_pd).abs() <= 1e-9, || format!("phase-damping series at {x}: {}", a.eoa_product))?;
        check((b.eoa_product - want_gad).abs() <= 1e-9, || format!("gad series at {x}: {}", b.eoa_product))?;
    }
    let gad_death = sudden_death_time(
        &ChannelFamily::GeneralizedAmplitudeDamping { p: 0.5 },
        DEFAULT_BRACKET,
        DEFAULT_DEATH_TOL,
    )
    .map_err(|e| e.to_string())?;
    let root = (1.0 + 2f64.sqrt()).ln();
    check(gad_death.t_star.is_some_and(|t| (t - root).abs() <= 1e-6), || {
        format!("sudden death: gad root {:?}, expected {root}", gad_death.t_star)
    })?;
    let pd_death =
        sudden_death_time(&ChannelFamily::PhaseDamping, DEFAULT_BRACKET, DEFAULT_DEATH_TOL).map_err(|e| e.to_string())?;
    check(pd_death.t_star.is_none(), || format!("sudden death: phase damping died at {:?}", pd_death.t_star))?;
    let tg = tau(&ghz()).map_err(|e| e.to_string())?;
    let tw = tau(&w_state()).map_err(|e| e.to_string())?;
    check((tg - 1.0).abs() <= ALG_TOL && tw.abs() <= ALG_TOL, || format!("tau: ghz {tg}, w {tw}"))?;
    Ok(2 * grid.len() + 3)
}

fn batch(ctx: &Ctx, law: BatchLaw, n: usize, d: Option<usize>) -> Outcome {
    let mut spec = BatchSpec::new(law, n, ctx.seed);
    spec.d = d;
    let records = run_batch(&spec).map_err(|e| e.to_string())?;
    match records.iter().find(|r| !r.pass && r.certified) {
        None => Ok(records.len()),
        Some(r) => Err(format!(
            "{law}: certified violation at instance {} gap {:e} (seed {})",
            r.instance,
            r.gap,
            r.seed.unwrap_or(ctx.seed)
        )),
    }
}

type Suite = (&'static str, Box<dyn Fn(&Ctx) -> Outcome>);

fn suites() -> Vec<Suite> {
    vec![
        ("kraus-completeness", Box::new(kraus)),
        ("states-channels", Box::new(states_and_channels)),
        ("measures", Box::new(measures)),
        ("closed-forms", Box::new(closed_forms)),
        ("theorem1", Box::new(|c| batch(c, BatchLaw::Theorem1, 6, None))),
        ("corollary1", Box::new(|c| batch(c, BatchLaw::Corollary1, 6, None))),
        ("corollary2", Box::new(|c| batch(c, BatchLaw::Corollary2, 6, None))),
        ("theorem2", Box::new(|c| batch(c, BatchLaw::Theorem2, 6, None))),
        ("theorem2-d3", Box::new(|c| batch(c, BatchLaw::Theorem2, 2, Some(3)))),
        ("remark-d2", Box::new(|c| batch(c, BatchLaw::RemarkD2, 4, None))),
        ("remark-lowerbound", Box::new(|c| batch(c, BatchLaw::RemarkLowerbound, 6, None))),
        ("tau", Box::new(|c| batch(c, BatchLaw::Tau, 40, None))),
    ]
}

pub fn run(a: &SelftestArgs) -> Result<(), CliError> {
    let ctx = Ctx {
        seed: a.seed,
        corrupt_kraus: a.corrupt_kraus,
    };
    let all = suites();
    let mut failures = Vec::new();
    let start = Instant::now();
    for (name, suite) in &all {
        let t = Instant::now();
        let outcome = suite(&ctx);
        eprintln!("{name}: {:.3}s", t.elapsed().as_secs_f64());
        match outcome {
            Ok(n) => println!("{name} ok checks={n}"),
            Err(msg) => {
                println!("{name} FAILED {msg}");
                failures.push(*name);
            }
        }
    }
    eprintln!("total: {:.3}s", start.elapsed().as_secs_f64());
    println!("selftest seed={} suites={} failed={}", a.seed, all.len(), failures.len());
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("failing suites: {} (seed {})", failures.join(", "), a.seed)))
    }
}
