//! Closed forms against the brute-force oracles.

use serde::Serialize;

use sdwitness_core::nc::{nc_lp_optimum, w_nc};
use sdwitness_core::oracle::{full_sphere_spot_check, optimize_w_numeric};
use sdwitness_core::quantum::w_q;
use sdwitness_core::{ScenarioParams, SweepConfig};

use super::{to_json, unsupported, SCHEMA_VERSION};
use crate::args::{Format, VerifyArgs, VerifyModel};
use crate::error::CliResult;
use crate::fmt::sig9;

/// Allowed |closed form − sweep| for the quantum model.
pub const QUANTUM_TOL: f64 = 1e-4;
/// Allowed |closed form − LP| for the noncontextual model.
pub const NC_TOL: f64 = 1e-9;

/// The expressions under test. Tests swap in corrupted versions to check
/// that discrepancies are caught.
#[derive(Clone, Copy)]
pub struct ClosedForms {
    pub quantum: fn(&ScenarioParams) -> f64,
    pub noncontextual: fn(f64, f64, f64) -> f64,
}

impl Default for ClosedForms {
    fn default() -> Self {
        Self {
            quantum: w_q,
            noncontextual: w_nc,
        }
    }
}

/// `{0, 1/n, …, k/n}` without accumulated roundoff.
pub fn steps(n: u32, k: u32) -> Vec<f64> {
    (0..=k).map(|i| f64::from(i) / f64::from(n)).collect()
}

#[derive(Debug, Clone)]
pub struct VerifyPlan {
    pub deltas: Vec<f64>,
    pub r_s: Vec<f64>,
    pub p_incs: Vec<f64>,
    pub cs: Vec<f64>,
    pub nc_r_s: Vec<f64>,
    pub nc_p_incs: Vec<f64>,
    pub quantum: bool,
    pub noncontextual: bool,
    pub sweep: SweepConfig,
    pub spot_checks: usize,
}

impl Default for VerifyPlan {
    fn default() -> Self {
        Self {
            deltas: steps(10, 9).split_off(1),
            r_s: vec![0.5, 0.7, 1.0],
            p_incs: steps(10, 9),
            cs: steps(20, 20),
            nc_r_s: steps(10, 10),
            nc_p_incs: steps(20, 20),
            quantum: true,
            noncontextual: true,
            sweep: SweepConfig::default(),
            spot_checks: 0,
        }
    }
}

impl VerifyPlan {
    pub fn from_args(args: &VerifyArgs) -> Self {
        let d = Self::default();
        Self {
            deltas: args.deltas.clone().unwrap_or(d.deltas),
            r_s: args.r_s.clone().unwrap_or(d.r_s),
            p_incs: args.p_incs.clone().unwrap_or(d.p_incs),
            cs: args.cs.clone().unwrap_or(d.cs),
            nc_r_s: args.nc_r_s.clone().unwrap_or(d.nc_r_s),
            nc_p_incs: args.nc_p_incs.clone().unwrap_or(d.nc_p_incs),
            quantum: args.model != VerifyModel::Noncontextual,
            noncontextual: args.model != VerifyModel::Quantum,
            sweep: SweepConfig {
                theta_steps: args.grid as usize,
                magnitude_steps: args.grid as usize,
                seed: args.seed,
                ..d.sweep
            },
            spot_checks: args.spot_checks,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Discrepancy {
    pub delta_or_c: f64,
    pub r_s: f64,
    pub p_inc: f64,
    pub closed_form: f64,
    pub oracle: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModelCheck {
    pub points: usize,
    pub tolerance: f64,
    pub max_gap: f64,
    pub worst: Option<Discrepancy>,
    pub ok: bool,
    pub discrepancies: Vec<Discrepancy>,
}

impl ModelCheck {
    fn new(tolerance: f64) -> Self {
        Self {
            points: 0,
            tolerance,
            max_gap: 0.0,
            worst: None,
            ok: true,
            discrepancies: Vec::new(),
        }
    }

    fn record(&mut self, delta_or_c: f64, r_s: f64, p_inc: f64, closed_form: f64, oracle: f64) {
        self.points += 1;
        let gap = (closed_form - oracle).abs();
        let d = Discrepancy {
            delta_or_c: sig9(delta_or_c),
            r_s: sig9(r_s),
            p_inc: sig9(p_inc),
            closed_form: sig9(closed_form),
            oracle: sig9(oracle),
            gap: sig9(gap),
        };
        // NaN gaps count as failures
        if gap.is_nan() || gap > self.tolerance {
            self.ok = false;
            self.discrepancies.push(d.clone());
        }
        if self.worst.is_none() || gap > self.max_gap || gap.is_nan() {
            self.max_gap = gap;
            self.worst = Some(d);
        }
    }

    fn finish(mut self) -> Self {
        self.max_gap = sig9(self.max_gap);
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub theta_steps: usize,
    pub magnitude_steps: usize,
    pub seed: u64,
    pub spot_checks: usize,
    pub quantum: Option<ModelCheck>,
    /// Largest amount by which a full-sphere spot check beat the closed form.
    pub spot_check_max_excess: Option<f64>,
    pub noncontextual: Option<ModelCheck>,
    pub ok: bool,
}

impl VerifyReport {
    /// One line per failing triple, for stderr.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (name, check) in [
            ("quantum", &self.quantum),
            ("noncontextual", &self.noncontextual),
        ] {
            let Some(check) = check else { continue };
            let key = if name == "quantum" { "delta" } else { "c" };
            for d in &check.discrepancies {
                out.push(format!(
                    "{name}: {key}={} r_s={} p_inc={}: closed form {} vs oracle {} (gap {})",
                    d.delta_or_c, d.r_s, d.p_inc, d.closed_form, d.oracle, d.gap
                ));
            }
        }
        out
    }
}

pub fn run_verify(plan: &VerifyPlan, forms: ClosedForms) -> CliResult<VerifyReport> {
    plan.sweep.validate()?;
    let mut quantum = None;
    let mut excess = None;
    if plan.quantum {
        let mut check = ModelCheck::new(QUANTUM_TOL);
        let mut max_excess = f64::NEG_INFINITY;
        for &delta in &plan.deltas {
            for &r_s in &plan.r_s {
                for &p_inc in &plan.p_incs {
                    let params = ScenarioParams::new(delta, r_s, p_inc)?;
                    let closed = (forms.quantum)(&params);
                    let oracle = optimize_w_numeric(&params, &plan.sweep)?.value;
                    check.record(delta, r_s, p_inc, closed, oracle);
                    if plan.spot_checks > 0 {
                        let spot =
                            full_sphere_spot_check(&params, plan.spot_checks, plan.sweep.seed);
                        max_excess = max_excess.max(spot - closed);
                    }
                }
            }
        }
        if plan.spot_checks > 0 && max_excess.is_finite() {
            excess = Some(sig9(max_excess));
            if max_excess > plan.sweep.tolerance {
                check.ok = false;
            }
        }
        quantum = Some(check.finish());
    }
    let mut noncontextual = None;
    if plan.noncontextual {
        let mut check = ModelCheck::new(NC_TOL);
        for &c in &plan.cs {
            for &r_s in &plan.nc_r_s {
                for &p_inc in &plan.nc_p_incs {
                    let closed = (forms.noncontextual)(c, r_s, p_inc);
                    let (lp, _) = nc_lp_optimum(c, r_s, p_inc)?;
                    check.record(c, r_s, p_inc, closed, lp);
                }
            }
        }
        noncontextual = Some(check.finish());
    }
    let ok = quantum.as_ref().is_none_or(|c| c.ok) && noncontextual.as_ref().is_none_or(|c| c.ok);
    Ok(VerifyReport {
        schema_version: SCHEMA_VERSION,
        command: "verify",
        theta_steps: plan.sweep.theta_steps,
        magnitude_steps: plan.sweep.magnitude_steps,
        seed: plan.sweep.seed,
        spot_checks: plan.spot_checks,
        quantum,
        spot_check_max_excess: excess,
        noncontextual,
        ok,
    })
}

/// Rendered report plus whether every check passed.
pub fn run(args: &VerifyArgs) -> CliResult<(String, VerifyReport)> {
    if args.format != Format::Json {
        return Err(unsupported("verify", args.format));
    }
    let report = run_verify(&VerifyPlan::from_args(args), ClosedForms::default())?;
    Ok((to_json(&report), report))
}
