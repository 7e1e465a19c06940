//! Boundaries of the feasible `(p_suc, p_err)` regions and membership tests.
//!
//! A boundary is the upper branch (maximal `p_suc` at each `p_inc`, from
//! `p_inc = 0` to `1`) followed by its mirror image under `p_suc ↔ p_err`,
//! walked back to `p_inc = 0`. The last point connects to the first along
//! `p_suc + p_err = 1`.

use alloc::vec::Vec;

use crate::nc::{optimal_stats_nc, w_nc};
use crate::quantum::{optimal_stats_q, w_q, OutcomeStats, ScenarioParams};
use crate::witness::witness_value;
use crate::{Error, Result};

/// Slack allowed by [`in_region`].
pub const MEMBERSHIP_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    Quantum,
    Noncontextual,
    /// No constraint beyond normalisation: the triangle `p_suc + p_err ≤ 1`.
    Deterministic,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Quantum => "quantum",
            Model::Noncontextual => "noncontextual",
            Model::Deterministic => "deterministic",
        }
    }

    /// Largest `W` reachable at `p_inc`. `param` is `δ` for the quantum model and
    /// `c` for the noncontextual one; it is ignored for the deterministic model.
    pub fn bound(self, param: f64, r_s: f64, p_inc: f64) -> f64 {
        match self {
            Model::Quantum => w_q(&ScenarioParams {
                delta: param,
                r_s,
                p_inc,
            }),
            Model::Noncontextual => w_nc(param, r_s, p_inc),
            Model::Deterministic => 0.5 * (1.0 - p_inc),
        }
    }

    fn optimal_stats(self, param: f64, r_s: f64, p_inc: f64) -> OutcomeStats {
        match self {
            Model::Quantum => optimal_stats_q(&ScenarioParams {
                delta: param,
                r_s,
                p_inc,
            }),
            Model::Noncontextual => optimal_stats_nc(param, r_s, p_inc),
            Model::Deterministic => OutcomeStats::from_success(1.0 - p_inc, p_inc),
        }
    }

    fn breakpoint(self, param: f64, r_s: f64) -> Option<f64> {
        match self {
            Model::Quantum => Some(r_s * param),
            Model::Noncontextual => Some(0.5 * (1.0 + r_s * param)),
            Model::Deterministic => None,
        }
    }
}

/// Which piece of the boundary a point lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Low,
    High,
    MirrorLow,
    MirrorHigh,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::Low => "low",
            Branch::High => "high",
            Branch::MirrorLow => "mirror_low",
            Branch::MirrorHigh => "mirror_high",
        }
    }

    pub fn is_mirror(self) -> bool {
        matches!(self, Branch::MirrorLow | Branch::MirrorHigh)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub p_inc: f64,
    pub p_suc: f64,
    pub p_err: f64,
    pub branch: Branch,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionCurve {
    pub model: Model,
    pub delta_or_c: f64,
    pub r_s: f64,
    pub points: Vec<BoundaryPoint>,
}

impl RegionCurve {
    /// Point on the upper branch at exactly this `p_inc`, if sampled.
    pub fn upper_at(&self, p_inc: f64) -> Option<&BoundaryPoint> {
        self.points
            .iter()
            .find(|pt| !pt.branch.is_mirror() && pt.p_inc == p_inc)
    }

    pub fn upper(&self) -> impl Iterator<Item = &BoundaryPoint> {
        self.points.iter().filter(|pt| !pt.branch.is_mirror())
    }
}

/// `n_points` uniform samples of `[0, 1]` plus the model's branch point.
fn p_inc_grid(n_points: usize, breakpoint: Option<f64>) -> Vec<f64> {
    let last = (n_points - 1) as f64;
    let mut grid: Vec<f64> = (0..n_points).map(|i| i as f64 / last).collect();
    if let Some(b) = breakpoint.filter(|b| (0.0..=1.0).contains(b)) {
        grid.push(b);
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    grid
}

fn boundary(model: Model, param: f64, r_s: f64, n_points: usize) -> Result<RegionCurve> {
    if n_points < 3 {
        return Err(Error::InvalidConfig("a boundary needs at least 3 points"));
    }
    if model != Model::Deterministic {
        ScenarioParams::new(param, r_s, 0.0)?;
    }
    let breakpoint = model.breakpoint(param, r_s);
    let grid = p_inc_grid(n_points, breakpoint);
    let mut points = Vec::with_capacity(2 * grid.len());
    for &p_inc in &grid {
        let s = model.optimal_stats(param, r_s, p_inc);
        let low = breakpoint.is_none_or(|b| p_inc <= b);
        points.push(BoundaryPoint {
            p_inc,
            p_suc: s.p_suc,
            p_err: s.p_err,
            branch: if low { Branch::Low } else { Branch::High },
        });
    }
    let mirrored: Vec<BoundaryPoint> = points
        .iter()
        .rev()
        // mirror image of a point on the diagonal is itself
        .filter(|pt| pt.p_suc != pt.p_err)
        .map(|pt| BoundaryPoint {
            p_inc: pt.p_inc,
            p_suc: pt.p_err,
            p_err: pt.p_suc,
            branch: if pt.branch == Branch::Low {
                Branch::MirrorLow
            } else {
                Branch::MirrorHigh
            },
        })
        .collect();
    points.extend(mirrored);
    Ok(RegionCurve {
        model,
        delta_or_c: param,
        r_s,
        points,
    })
}

/// Boundary of the quantum region for overlap `delta`.
pub fn quantum_boundary(delta: f64, r_s: f64, n_points: usize) -> Result<RegionCurve> {
    boundary(Model::Quantum, delta, r_s, n_points)
}

/// Boundary of the noncontextual region for confusability `c`.
pub fn nc_boundary(c: f64, r_s: f64, n_points: usize) -> Result<RegionCurve> {
    boundary(Model::Noncontextual, c, r_s, n_points)
}

/// The triangle `p_suc + p_err ≤ 1`.
pub fn deterministic_boundary(n_points: usize) -> Result<RegionCurve> {
    boundary(Model::Deterministic, 0.0, 1.0, n_points)
}

/// Whether the behaviour lies in the model's region (mirror-symmetric).
pub fn in_region(stats: &OutcomeStats, model: Model, delta_or_c: f64, r_s: f64) -> bool {
    witness_value(stats).abs() <= model.bound(delta_or_c, r_s, stats.p_inc) + MEMBERSHIP_TOL
}
