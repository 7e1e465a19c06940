use serde::Serialize;

use sdwitness_core::witness::is_contextual_with;
use sdwitness_core::OutcomeStats;

use super::{form, form_name, to_json, unsupported, SCHEMA_VERSION};
use crate::args::{Format, TestArgs};
use crate::error::{CliError, CliResult};
use crate::fmt::sig9;

/// Largest `|p_suc + p_err + p_inc − 1|` accepted as is.
pub const NORMALIZATION_TOL: f64 = 1e-9;

#[derive(Debug, Serialize)]
pub struct TestReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub p_suc: f64,
    pub p_err: f64,
    pub p_inc: f64,
    pub renormalized: bool,
    pub delta_lower_bound: f64,
    pub w_star_form: &'static str,
    pub w_observed: f64,
    pub w_star: f64,
    pub margin: f64,
    pub contextual: bool,
}

pub fn report(args: &TestArgs) -> CliResult<TestReport> {
    let sum = args.p_suc + args.p_err + args.p_inc;
    let off = (sum - 1.0).abs() > NORMALIZATION_TOL;
    if off && !args.renormalize {
        return Err(CliError::Usage(format!(
            "statistics sum to {sum}, not 1 (tolerance {NORMALIZATION_TOL}); pass --renormalize to rescale"
        )));
    }
    if sum <= 0.0 {
        return Err(CliError::Usage("statistics sum to zero".into()));
    }
    let scale = if off { 1.0 / sum } else { 1.0 };
    let stats = OutcomeStats::with_tolerance(
        args.p_suc * scale,
        args.p_err * scale,
        args.p_inc * scale,
        NORMALIZATION_TOL,
    )?;
    let v = is_contextual_with(form(args.form), &stats, args.delta_bound);
    Ok(TestReport {
        schema_version: SCHEMA_VERSION,
        command: "test",
        p_suc: sig9(stats.p_suc),
        p_err: sig9(stats.p_err),
        p_inc: sig9(stats.p_inc),
        renormalized: off,
        delta_lower_bound: sig9(args.delta_bound),
        w_star_form: form_name(args.form),
        w_observed: sig9(v.w_observed),
        w_star: sig9(v.w_star),
        margin: sig9(v.margin),
        contextual: v.contextual,
    })
}

pub fn run(args: &TestArgs) -> CliResult<String> {
    match args.format {
        Format::Json => Ok(to_json(&report(args)?)),
        f => Err(unsupported("test", f)),
    }
}
