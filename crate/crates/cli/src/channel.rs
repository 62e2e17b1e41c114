use qclone_cloning::{marginal_report, optimal_asymmetric_channel, optimal_symmetric_channel, p_opt, Direction};
use qclone_operators::{cptp_check, CMat};
use serde::Serialize;

use crate::output::{document, CliError, Coo};
use crate::RunConfig;

#[derive(Serialize)]
struct Cptp {
    psd: bool,
    min_eig: f64,
    trace_residual: f64,
}

#[derive(Serialize)]
struct Marginals {
    p: Vec<f64>,
    f: Vec<f64>,
    max_residual: f64,
}

#[derive(Serialize)]
struct ChannelOut {
    n: usize,
    d: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    predicted_p: Option<Vec<f64>>,
    cptp: Cptp,
    marginals: Marginals,
    choi: Coo,
}

const TRIALS: usize = 8;

fn report(
    choi: CMat,
    n: usize,
    d: usize,
    a: Option<Vec<f64>>,
    predicted_p: Option<Vec<f64>>,
    cfg: &RunConfig,
) -> Result<String, CliError> {
    let rep = cptp_check(&choi, d)?;
    if rep.min_eig < -cfg.tol_psd || rep.trace_residual > cfg.tol_spectral {
        return Err(CliError::verification(format!(
            "channel is not CPTP: min eig {}, trace residual {}",
            rep.min_eig, rep.trace_residual
        )));
    }
    let fp = marginal_report(&choi, n, d, TRIALS, cfg.seed)?;
    let out = ChannelOut {
        n,
        d,
        a,
        predicted_p,
        cptp: Cptp { psd: rep.min_eig >= -cfg.tol_psd, min_eig: rep.min_eig, trace_residual: rep.trace_residual },
        marginals: Marginals { p: fp.p, f: fp.f, max_residual: fp.max_residual },
        choi: Coo::from_dense(&choi),
    };
    Ok(document("channel", &out))
}

pub fn symmetric(n: usize, d: usize, cfg: &RunConfig) -> Result<String, CliError> {
    let choi = optimal_symmetric_channel(n, d)?;
    report(choi, n, d, None, Some(vec![p_opt(n, d); n]), cfg)
}

pub fn asymmetric(d: usize, a: Vec<f64>, cfg: &RunConfig) -> Result<String, CliError> {
    if d < 2 {
        return Err(CliError::usage("need --d >= 2"));
    }
    let dir = Direction::new(a.clone())?;
    let ch = optimal_asymmetric_channel(&dir, d)?;
    let df = d as f64;
    let predicted: Vec<f64> = ch.fidelities.iter().map(|f| (df * f - 1.0) / (df - 1.0)).collect();
    report(ch.choi, dir.n(), d, Some(a), Some(predicted), cfg)
}
