//! Closed-form quantum bounds for two noisy qubit preparations.
//!
//! The states are `ρ_x = r_s|ψ_x⟩⟨ψ_x| + (1 − r_s) I/2` with `|⟨ψ0|ψ1⟩| = δ`,
//! placed symmetrically about the Z pole:
//! `ρ_{0,1} = (I ± r_s√(1−δ²) X + r_s δ Z) / 2`.

use crate::num::{abs, in_unit, sqrt, sqrt_clamped};
use crate::qubit::{bloch_operator, trace_product, Hermitian2, Povm3};
use crate::{Error, Result};

/// Tolerance on the normalization of a behaviour.
pub const NORMALIZATION_TOL: f64 = 1e-12;

/// Tolerance used by the [`optimal_povm`] postconditions.
pub const POVM_CHECK_TOL: f64 = 1e-10;

/// Overlap, noise and inconclusive rate indexing every bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioParams {
    pub delta: f64,
    pub r_s: f64,
    pub p_inc: f64,
}

impl ScenarioParams {
    pub fn new(delta: f64, r_s: f64, p_inc: f64) -> Result<Self> {
        check_unit("delta", delta)?;
        check_unit("r_s", r_s)?;
        check_unit("p_inc", p_inc)?;
        Ok(Self { delta, r_s, p_inc })
    }

    /// `p_inc` where the optimal measurement changes form (`r_s δ`).
    pub fn breakpoint(&self) -> f64 {
        self.r_s * self.delta
    }

    /// True on the small-`p_inc` branch (ties go here).
    pub fn is_low_branch(&self) -> bool {
        self.p_inc <= self.breakpoint()
    }
}

pub(crate) fn check_unit(name: &'static str, value: f64) -> Result<()> {
    if in_unit(value) {
        Ok(())
    } else {
        Err(Error::OutOfRange { name, value })
    }
}

/// Averaged success, error and inconclusive probabilities of a behaviour.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutcomeStats {
    pub p_suc: f64,
    pub p_err: f64,
    pub p_inc: f64,
}

impl OutcomeStats {
    /// Validated constructor: fields in `[0, 1]` and summing to one within `1e−12`.
    pub fn new(p_suc: f64, p_err: f64, p_inc: f64) -> Result<Self> {
        Self::with_tolerance(p_suc, p_err, p_inc, NORMALIZATION_TOL)
    }

    pub fn with_tolerance(p_suc: f64, p_err: f64, p_inc: f64, tol: f64) -> Result<Self> {
        check_unit("p_suc", p_suc)?;
        check_unit("p_err", p_err)?;
        check_unit("p_inc", p_inc)?;
        let sum = p_suc + p_err + p_inc;
        if abs(sum - 1.0) > tol {
            return Err(Error::NotNormalized { sum });
        }
        Ok(Self {
            p_suc,
            p_err,
            p_inc,
        })
    }

    /// Behaviour with the given success and inconclusive rates; the error rate
    /// follows from normalization, with roundoff below `1e−12` snapped to zero.
    pub(crate) fn from_success(p_suc: f64, p_inc: f64) -> Self {
        let mut p_err = 1.0 - p_suc - p_inc;
        if p_err < 0.0 && p_err > -NORMALIZATION_TOL {
            p_err = 0.0;
        }
        Self {
            p_suc,
            p_err,
            p_inc,
        }
    }

    /// Behaviour induced by a POVM on the two equiprobable preparations.
    pub fn from_povm(povm: &Povm3, rho0: &Hermitian2, rho1: &Hermitian2) -> Self {
        let p0 = povm.probabilities(rho0);
        let p1 = povm.probabilities(rho1);
        Self {
            p_suc: 0.5 * (p0[0] + p1[1]),
            p_err: 0.5 * (p0[1] + p1[0]),
            p_inc: 0.5 * (p0[2] + p1[2]),
        }
    }

    /// Relabelled behaviour (outcomes 0 ↔ 1).
    pub fn mirrored(&self) -> Self {
        Self {
            p_suc: self.p_err,
            p_err: self.p_suc,
            p_inc: self.p_inc,
        }
    }

    /// `(p_suc − p_err) / 2`.
    pub fn witness(&self) -> f64 {
        0.5 * (self.p_suc - self.p_err)
    }
}

/// The two noisy preparations.
pub fn make_states(params: &ScenarioParams) -> (Hermitian2, Hermitian2) {
    let ScenarioParams { delta, r_s, .. } = *params;
    let x = r_s * sqrt_clamped(1.0 - delta * delta);
    let z = r_s * delta;
    (
        bloch_operator(1.0, [x, 0.0, z]),
        bloch_operator(1.0, [-x, 0.0, z]),
    )
}

/// Maximal witness value `W^Q` at fixed inconclusive rate.
pub fn w_q(params: &ScenarioParams) -> f64 {
    let ScenarioParams { delta, r_s, p_inc } = *params;
    let s = sqrt_clamped(1.0 - delta * delta);
    let rd = r_s * delta;
    if params.is_low_branch() {
        0.5 * r_s * sqrt_clamped((1.0 - delta * delta) * (1.0 - 2.0 * p_inc / (1.0 + rd)))
    } else {
        // p_inc > r_s δ forces r_s δ < 1, so the denominator is positive.
        0.5 * r_s * s * (1.0 - p_inc) / sqrt(1.0 - rd * rd)
    }
}

/// Second-branch value in the unsimplified product form
/// `(r_s/2)·√(1−δ²)·√(1−r_s²δ²)·(1−p_inc)/(1−r_s²δ²)`.
pub fn w_q_high_branch_product_form(params: &ScenarioParams) -> f64 {
    let ScenarioParams { delta, r_s, p_inc } = *params;
    let k = 1.0 - r_s * r_s * delta * delta;
    0.5 * r_s * sqrt_clamped(1.0 - delta * delta) * sqrt_clamped(k) * (1.0 - p_inc) / k
}

/// Optimal behaviour: maximal `p_suc` (and minimal `p_err`) at the given `p_inc`.
pub fn optimal_stats_q(params: &ScenarioParams) -> OutcomeStats {
    let w = w_q(params);
    OutcomeStats::from_success(0.5 * (1.0 + 2.0 * w - params.p_inc), params.p_inc)
}

/// Minimum-error (`p_inc = 0`) optimum.
pub fn helstrom_stats(delta: f64, r_s: f64) -> OutcomeStats {
    optimal_stats_q(&ScenarioParams {
        delta,
        r_s,
        p_inc: 0.0,
    })
}

/// `p_suc / (p_suc + p_err)`.
pub fn confidence(stats: &OutcomeStats) -> Result<f64> {
    let conclusive = stats.p_suc + stats.p_err;
    if conclusive <= 0.0 {
        return Err(Error::UndefinedConfidence);
    }
    Ok(stats.p_suc / conclusive)
}

/// The optimal measurement for `params`, checked before it is returned.
///
/// Low branch (`p_inc ≤ r_s δ`): the inconclusive element is a multiple of
/// the Z=+1 projector and the conclusive elements are rank one,
/// `π_{0,1} = (k/2)[I ± u X − v Z]` with `k = 1 − p_inc/(1+r_sδ)`,
/// `v = p_inc/(1+r_sδ−p_inc)` and `u² + v² = 1`.
/// High branch: conclusive elements are rank-one projectors tilted by
/// `−r_sδ` in Z, scaled by `(1−p_inc)/(1−r_s²δ²)`; the inconclusive element
/// takes the rest of the identity.
pub fn optimal_povm(params: &ScenarioParams) -> Result<Povm3> {
    let ScenarioParams { delta, r_s, p_inc } = *params;
    if delta >= 1.0 && r_s >= 1.0 {
        return Err(Error::OutOfRange {
            name: "delta·r_s (identical pure states)",
            value: 1.0,
        });
    }
    let rd = r_s * delta;
    let s = sqrt_clamped(1.0 - delta * delta);
    let w = w_q(params);

    let povm = if params.is_low_branch() {
        let k = 1.0 - p_inc / (1.0 + rd);
        let v = p_inc / (1.0 + rd - p_inc);
        // X coefficient (1+r_sδ)·2W/(r_s√(1−δ²)(1+r_sδ−p_inc)); with W = 0 the
        // states coincide and any u works.
        let denom = r_s * s * (1.0 + rd - p_inc);
        let u = if denom > 0.0 {
            (1.0 + rd) * 2.0 * w / denom
        } else {
            0.0
        };
        let zero = Hermitian2::new(k, [k * u, 0.0, -k * v]);
        let one = Hermitian2::new(k, [-k * u, 0.0, -k * v]);
        let g = p_inc / (1.0 + rd);
        let inc = Hermitian2::new(2.0 * g, [0.0, 0.0, 2.0 * g]);
        Povm3::new(zero, one, inc)
    } else {
        let kk = 1.0 - rd * rd;
        let g = (1.0 - p_inc) / kk;
        let root = sqrt(kk);
        let zero = Hermitian2::new(g, [g * root, 0.0, -g * rd]);
        let one = Hermitian2::new(g, [-g * root, 0.0, -g * rd]);
        let inc = Hermitian2::new(
            2.0 * (p_inc - rd * rd) / kk,
            [0.0, 0.0, 2.0 * (1.0 - p_inc) * rd / kk],
        );
        Povm3::new(zero, one, inc)
    };

    povm.validate(POVM_CHECK_TOL)?;
    let (rho0, rho1) = make_states(params);
    let avg = (rho0 + rho1) * 0.5;
    let achieved_inc = trace_product(&avg, &povm.inconclusive);
    if abs(achieved_inc - p_inc) > POVM_CHECK_TOL {
        return Err(Error::InternalConsistency {
            check: "povm inconclusive rate",
            expected: p_inc,
            actual: achieved_inc,
        });
    }
    let achieved_w = 0.25 * trace_product(&(rho0 - rho1), &(povm.zero - povm.one));
    if abs(achieved_w - w) > POVM_CHECK_TOL {
        return Err(Error::InternalConsistency {
            check: "povm witness value",
            expected: w,
            actual: achieved_w,
        });
    }
    Ok(povm)
}
