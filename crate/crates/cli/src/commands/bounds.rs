use serde::Serialize;

use sdwitness_core::nc::{optimal_stats_nc, w_nc};
use sdwitness_core::quantum::{confidence, optimal_stats_q, w_q};
use sdwitness_core::witness::w_star;
use sdwitness_core::ScenarioParams;

use super::{to_json, unsupported, SCHEMA_VERSION};
use crate::args::{BoundsArgs, Format};
use crate::error::CliResult;
use crate::fmt::sig9;

#[derive(Debug, Serialize)]
pub struct BoundsReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub delta: f64,
    pub r_s: f64,
    pub p_inc: f64,
    pub c: f64,
    pub quantum_branch: &'static str,
    pub w_q: f64,
    pub q_p_suc: f64,
    pub q_p_err: f64,
    pub q_confidence: Option<f64>,
    pub nc_branch: &'static str,
    pub w_nc: f64,
    pub nc_p_suc: f64,
    pub nc_p_err: f64,
    pub nc_confidence: Option<f64>,
    pub w_star: f64,
    pub gap: f64,
    pub contextual: bool,
}

pub fn report(args: &BoundsArgs) -> CliResult<BoundsReport> {
    let params = ScenarioParams::new(args.delta, args.r_s, args.p_inc)?;
    let c = args.delta * args.delta;
    let q = optimal_stats_q(&params);
    let nc = optimal_stats_nc(c, args.r_s, args.p_inc);
    let wq = w_q(&params);
    let ws = w_star(args.delta, args.p_inc);
    let gap = wq - ws;
    Ok(BoundsReport {
        schema_version: SCHEMA_VERSION,
        command: "bounds",
        delta: sig9(args.delta),
        r_s: sig9(args.r_s),
        p_inc: sig9(args.p_inc),
        c: sig9(c),
        quantum_branch: if params.is_low_branch() {
            "low"
        } else {
            "high"
        },
        w_q: sig9(wq),
        q_p_suc: sig9(q.p_suc),
        q_p_err: sig9(q.p_err),
        q_confidence: confidence(&q).ok().map(sig9),
        nc_branch: if args.p_inc <= 0.5 * (1.0 + args.r_s * c) {
            "low"
        } else {
            "high"
        },
        w_nc: sig9(w_nc(c, args.r_s, args.p_inc)),
        nc_p_suc: sig9(nc.p_suc),
        nc_p_err: sig9(nc.p_err),
        nc_confidence: confidence(&nc).ok().map(sig9),
        w_star: sig9(ws),
        gap: sig9(gap),
        contextual: gap > sdwitness_core::witness::GAP_EPS,
    })
}

pub fn run(args: &BoundsArgs) -> CliResult<String> {
    match args.format {
        Format::Json => Ok(to_json(&report(args)?)),
        f => Err(unsupported("bounds", f)),
    }
}
