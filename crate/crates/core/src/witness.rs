//! The witness `W = (p_suc − p_err)/2`, its noncontextual bound `W*` and the
//! minimal depolarising parameter at which the quantum optimum still beats it.

use alloc::vec::Vec;

use crate::nc::w_nc;
use crate::quantum::{w_q, OutcomeStats, ScenarioParams};

/// Bisection tolerance on `r_s`.
pub const BISECTION_TOL: f64 = 1e-10;
/// Bisection iteration cap.
pub const BISECTION_MAX_ITER: usize = 60;
/// Quantum–noncontextual gap below which the two are treated as equal.
pub const GAP_EPS: f64 = 1e-12;

/// Which expression to use for `W*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WStarForm {
    /// Noiseless noncontextual value on both branches.
    #[default]
    Piecewise,
    /// `((1−δ²)/2)(1 − p_inc/(1+δ²))` at every `p_inc`. Larger than the true
    /// noncontextual value for `p_inc > (1+δ²)/2`.
    LowBranchOnly,
}

/// `(p_suc − p_err) / 2`.
pub fn witness_value(stats: &OutcomeStats) -> f64 {
    stats.witness()
}

/// Noncontextual bound for preparations with overlap at least `delta`.
pub fn w_star(delta: f64, p_inc: f64) -> f64 {
    w_nc(delta * delta, 1.0, p_inc)
}

pub fn w_star_with(form: WStarForm, delta: f64, p_inc: f64) -> f64 {
    match form {
        WStarForm::Piecewise => w_star(delta, p_inc),
        WStarForm::LowBranchOnly => {
            let c = delta * delta;
            0.5 * (1.0 - c) * (1.0 - p_inc / (1.0 + c))
        }
    }
}

/// What the bound was evaluated at.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerdictAssumptions {
    pub delta_lower_bound: f64,
    pub p_inc: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessVerdict {
    pub w_observed: f64,
    pub w_star: f64,
    pub contextual: bool,
    pub margin: f64,
    pub assumptions: VerdictAssumptions,
}

/// Contextuality verdict for an observed behaviour.
///
/// `W*` is nonincreasing in the overlap, so evaluating it at a lower bound on
/// the true overlap can only make the test more conservative.
pub fn is_contextual(stats: &OutcomeStats, delta_lower_bound: f64) -> WitnessVerdict {
    is_contextual_with(WStarForm::Piecewise, stats, delta_lower_bound)
}

pub fn is_contextual_with(
    form: WStarForm,
    stats: &OutcomeStats,
    delta_lower_bound: f64,
) -> WitnessVerdict {
    let w_observed = witness_value(stats);
    let bound = w_star_with(form, delta_lower_bound, stats.p_inc);
    let margin = w_observed - bound;
    WitnessVerdict {
        w_observed,
        w_star: bound,
        contextual: margin > 0.0,
        margin,
        assumptions: VerdictAssumptions {
            delta_lower_bound,
            p_inc: stats.p_inc,
        },
    }
}

/// Smallest `r_s` for which the quantum optimum reaches `W*`, or `None` when
/// even noiseless preparations do not beat it.
pub fn noise_tolerance(delta: f64, p_inc: f64) -> Option<f64> {
    noise_tolerance_with(WStarForm::Piecewise, delta, p_inc)
}

pub fn noise_tolerance_with(form: WStarForm, delta: f64, p_inc: f64) -> Option<f64> {
    let target = w_star_with(form, delta, p_inc);
    let gap = |r_s: f64| w_q(&ScenarioParams { delta, r_s, p_inc }) - target;
    if gap(1.0).is_nan() || gap(1.0) <= GAP_EPS {
        return None;
    }
    // w_q is nondecreasing in r_s: gap(lo) < 0 ≤ gap(hi)
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    if gap(lo) >= 0.0 {
        return Some(0.0);
    }
    for _ in 0..BISECTION_MAX_ITER {
        if hi - lo <= BISECTION_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if gap(mid) >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

/// `r_min` as a function of `p_inc` for one overlap.
#[derive(Debug, Clone, PartialEq)]
pub struct ToleranceCurve {
    pub delta: f64,
    pub points: Vec<(f64, Option<f64>)>,
}

impl ToleranceCurve {
    /// Grid point with the smallest present `r_min` (first one on ties).
    pub fn minimum(&self) -> Option<(f64, f64)> {
        let mut best: Option<(f64, f64)> = None;
        for &(p, r) in &self.points {
            if let Some(r) = r {
                if best.is_none_or(|(_, b)| r < b) {
                    best = Some((p, r));
                }
            }
        }
        best
    }
}

/// Evaluates [`noise_tolerance`] on a strictly increasing `p_inc` grid.
/// Returns `None` if the grid is not strictly increasing or leaves `[0, 1]`.
pub fn tolerance_curve(delta: f64, p_inc_grid: &[f64]) -> Option<ToleranceCurve> {
    tolerance_curve_with(WStarForm::Piecewise, delta, p_inc_grid)
}

pub fn tolerance_curve_with(
    form: WStarForm,
    delta: f64,
    p_inc_grid: &[f64],
) -> Option<ToleranceCurve> {
    if !(0.0..=1.0).contains(&delta) {
        return None;
    }
    if p_inc_grid.iter().any(|p| !(0.0..=1.0).contains(p))
        || p_inc_grid.windows(2).any(|w| w[0] >= w[1])
    {
        return None;
    }
    let points = p_inc_grid
        .iter()
        .map(|&p| (p, noise_tolerance_with(form, delta, p)))
        .collect();
    Some(ToleranceCurve { delta, points })
}
