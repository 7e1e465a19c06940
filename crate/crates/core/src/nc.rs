//! Preparation-noncontextual ontological model on four ontic regions.
//!
//! With `μ0`, `μ1` the noiseless epistemic states and `μ0⊥`, `μ1⊥` their
//! complements, the ontic space splits into
//!
//! | region | `μ0` | `μ1` | `μ0⊥` | `μ1⊥` |
//! |--------|------|------|-------|-------|
//! | A      | c    | c    | 0     | 0     |
//! | B      | 1−c  | 0    | 0     | 1−c   |
//! | C      | 0    | 1−c  | 1−c   | 0     |
//! | D      | 0    | 0    | c     | c     |
//!
//! which is the only assignment with disjoint supports for `μ_x`/`μ_x⊥`,
//! equal confusability `c` for both pairs and `(μ0+μ0⊥)/2 = (μ1+μ1⊥)/2`.
//! Depolarising noise mixes each state with that common average.

use alloc::vec::Vec;

use crate::num::abs;
use crate::quantum::{check_unit, confidence, OutcomeStats};
use crate::{Error, Result};

pub const REGIONS: usize = 4;
pub const A: usize = 0;
pub const B: usize = 1;
pub const C: usize = 2;
pub const D: usize = 3;

/// Agreement required between the closed form and the exact LP.
pub const LP_TOL: f64 = 1e-9;

const CONSTRUCTION_TOL: f64 = 1e-12;

/// Noisy epistemic states over regions `(A, B, C, D)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OnticModel {
    pub c: f64,
    pub r_s: f64,
    pub mu0: [f64; REGIONS],
    pub mu1: [f64; REGIONS],
}

impl OnticModel {
    pub fn noiseless(c: f64) -> ([f64; REGIONS], [f64; REGIONS]) {
        ([c, 1.0 - c, 0.0, 0.0], [c, 0.0, 1.0 - c, 0.0])
    }

    pub fn complements(c: f64) -> ([f64; REGIONS], [f64; REGIONS]) {
        ([0.0, 0.0, 1.0 - c, c], [0.0, 1.0 - c, 0.0, c])
    }

    /// The epistemic state of the maximally mixed preparation.
    pub fn maximally_mixed(c: f64) -> [f64; REGIONS] {
        [0.5 * c, 0.5 * (1.0 - c), 0.5 * (1.0 - c), 0.5 * c]
    }

    /// Average of the two noisy states.
    pub fn average(&self) -> [f64; REGIONS] {
        core::array::from_fn(|k| 0.5 * (self.mu0[k] + self.mu1[k]))
    }

    /// Mass of `mu` on the support of the noiseless state `x`.
    pub fn confusability(&self, x: usize) -> f64 {
        let (m0, m1) = Self::noiseless(self.c);
        let (support_of, mass_of) = if x == 0 { (m0, m1) } else { (m1, m0) };
        (0..REGIONS)
            .filter(|&k| support_of[k] > 0.0)
            .map(|k| mass_of[k])
            .sum()
    }

    /// Behaviour produced by a response function.
    pub fn stats(&self, xi: &ResponseFunction) -> OutcomeStats {
        let p = |mu: &[f64; REGIONS], b: usize| -> f64 {
            (0..REGIONS).map(|k| mu[k] * xi.xi[b][k]).sum()
        };
        OutcomeStats {
            p_suc: 0.5 * (p(&self.mu0, 0) + p(&self.mu1, 1)),
            p_err: 0.5 * (p(&self.mu0, 1) + p(&self.mu1, 0)),
            p_inc: 0.5 * (p(&self.mu0, 2) + p(&self.mu1, 2)),
        }
    }
}

/// Noisy epistemic states for confusability `c` and noise parameter `r_s`.
pub fn make_ontic_model(c: f64, r_s: f64) -> Result<OnticModel> {
    check_unit("c", c)?;
    check_unit("r_s", r_s)?;
    let (m0, m1) = OnticModel::noiseless(c);
    let mix = OnticModel::maximally_mixed(c);
    Ok(OnticModel {
        c,
        r_s,
        mu0: core::array::from_fn(|k| r_s * m0[k] + (1.0 - r_s) * mix[k]),
        mu1: core::array::from_fn(|k| r_s * m1[k] + (1.0 - r_s) * mix[k]),
    })
}

/// Response functions `ξ_b(region)`, rows `b = 0, 1, ø`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResponseFunction {
    pub xi: [[f64; REGIONS]; 3],
}

impl ResponseFunction {
    /// Completes `ξ_0`, `ξ_1` with `ξ_ø = 1 − ξ_0 − ξ_1`.
    pub fn from_conclusive(xi0: [f64; REGIONS], xi1: [f64; REGIONS]) -> Self {
        let inc = core::array::from_fn(|k| 1.0 - xi0[k] - xi1[k]);
        Self {
            xi: [xi0, xi1, inc],
        }
    }

    pub fn validate(&self, tol: f64) -> Result<()> {
        for k in 0..REGIONS {
            let mut sum = 0.0;
            for b in 0..3 {
                let v = self.xi[b][k];
                if v < -tol {
                    return Err(Error::InternalConsistency {
                        check: "response function nonnegative",
                        expected: 0.0,
                        actual: v,
                    });
                }
                sum += v;
            }
            if abs(sum - 1.0) > tol {
                return Err(Error::NotNormalized { sum });
            }
        }
        Ok(())
    }
}

fn low_branch(c: f64, r_s: f64, p_inc: f64) -> bool {
    p_inc <= 0.5 * (1.0 + r_s * c)
}

/// Closed-form noncontextual witness value `W^NC`.
pub fn w_nc(c: f64, r_s: f64, p_inc: f64) -> f64 {
    let rc = r_s * c;
    if low_branch(c, r_s, p_inc) {
        0.5 * r_s * (1.0 - c) * (1.0 - p_inc / (1.0 + rc))
    } else if 1.0 - rc <= 0.0 {
        0.0
    } else {
        0.5 * (1.0 - p_inc) * r_s * (1.0 - c) / (1.0 - rc)
    }
}

/// Behaviour attaining [`w_nc`].
pub fn optimal_stats_nc(c: f64, r_s: f64, p_inc: f64) -> OutcomeStats {
    let rc = r_s * c;
    let p_suc = if low_branch(c, r_s, p_inc) {
        0.5 * (1.0 + r_s) * (1.0 - p_inc / (1.0 + rc)) - 0.5 * rc
    } else {
        0.5 * (1.0 + 2.0 * w_nc(c, r_s, p_inc) - p_inc)
    };
    OutcomeStats::from_success(p_suc, p_inc)
}

/// Two-parameter family: `ξ_0 = (a−b, a, 0, b)`, `ξ_1 = (a−b, 0, a, b)`.
///
/// Each value sits on an intersection of the four supports (regions above),
/// not on their unions. This placement gives the
/// inconclusive rate `1 − a(1+r_s c) + 2b r_s c` and the success/error rates
/// of the closed form, and `a = b` collapses to [`response_from_q`].
pub fn response_from_ab(a: f64, b: f64) -> ResponseFunction {
    ResponseFunction::from_conclusive([a - b, a, 0.0, b], [a - b, 0.0, a, b])
}

/// `ξ_0 = q` on `supp μ1⊥ = B ∪ D`, `ξ_1 = q` on `supp μ0⊥ = C ∪ D`.
pub fn response_from_q(q: f64) -> ResponseFunction {
    ResponseFunction::from_conclusive([0.0, q, 0.0, q], [0.0, 0.0, q, q])
}

/// Response functions attaining the closed form, checked on return.
pub fn optimal_response_functions(c: f64, r_s: f64, p_inc: f64) -> Result<ResponseFunction> {
    let model = make_ontic_model(c, r_s)?;
    check_unit("p_inc", p_inc)?;
    let rc = r_s * c;
    let xi = if low_branch(c, r_s, p_inc) {
        response_from_ab(1.0 - p_inc / (1.0 + rc), 0.5)
    } else {
        response_from_q((1.0 - p_inc) / (1.0 - rc))
    };
    xi.validate(CONSTRUCTION_TOL)?;
    let got = model.stats(&xi);
    let want = optimal_stats_nc(c, r_s, p_inc);
    for (check, expected, actual) in [
        ("response inconclusive rate", p_inc, got.p_inc),
        ("response success rate", want.p_suc, got.p_suc),
        ("response error rate", want.p_err, got.p_err),
    ] {
        if abs(expected - actual) > CONSTRUCTION_TOL {
            return Err(Error::InternalConsistency {
                check,
                expected,
                actual,
            });
        }
    }
    Ok(xi)
}

/// Maximum of `W` over response functions on an arbitrary finite ontic
/// space, at fixed inconclusive rate.
///
/// The feasible set is a product of per-region 3-simplices cut by one
/// hyperplane, so every vertex lies on an edge of the product polytope
/// (or is one of its vertices). The solver walks all `3^n` vertex
/// assignments and the edges leaving them, and keeps the first best point.
/// Returns the optimum and the per-region columns `[ξ_0, ξ_1, ξ_ø]`.
pub fn solve_response_lp(mu0: &[f64], mu1: &[f64], p_inc: f64) -> Result<(f64, Vec<[f64; 3]>)> {
    let n = mu0.len();
    if mu1.len() != n || n == 0 || n > 12 {
        return Err(Error::InvalidConfig(
            "ontic regions must be 1..=12 and matched",
        ));
    }
    check_unit("p_inc", p_inc)?;
    let gain: Vec<f64> = (0..n).map(|k| 0.25 * (mu0[k] - mu1[k])).collect();
    let weight: Vec<f64> = (0..n).map(|k| 0.5 * (mu0[k] + mu1[k])).collect();
    let obj_of = |o: u8, k: usize| -> f64 {
        match o {
            0 => gain[k],
            1 => -gain[k],
            _ => 0.0,
        }
    };
    let h_of = |o: u8, k: usize| -> f64 {
        if o == 2 {
            weight[k]
        } else {
            0.0
        }
    };

    let total = 3usize.pow(n as u32);
    let mut digits = alloc::vec![0u8; n];
    // (region, alternative outcome, mixing weight) for an edge optimum
    type Edge = Option<(usize, u8, f64)>;
    let mut best: Option<(f64, Vec<u8>, Edge)> = None;
    let mut consider = |v: f64, base: &[u8], edge: Edge| {
        if best.as_ref().is_none_or(|(b, _, _)| v > *b + 1e-15) {
            best = Some((v, base.to_vec(), edge));
        }
    };

    for idx in 0..total {
        let mut rem = idx;
        for d in digits.iter_mut() {
            *d = (rem % 3) as u8;
            rem /= 3;
        }
        let obj: f64 = (0..n).map(|k| obj_of(digits[k], k)).sum();
        let h: f64 = (0..n).map(|k| h_of(digits[k], k)).sum();
        if abs(h - p_inc) <= 1e-13 {
            consider(obj, &digits, None);
        }
        for k in 0..n {
            for alt in (digits[k] + 1)..3 {
                let h2 = h - h_of(digits[k], k) + h_of(alt, k);
                let (lo, hi) = if h <= h2 { (h, h2) } else { (h2, h) };
                if hi - lo <= 0.0 || p_inc <= lo || p_inc >= hi {
                    continue;
                }
                let t = (p_inc - h) / (h2 - h);
                let obj2 = obj - obj_of(digits[k], k) + obj_of(alt, k);
                consider(obj + t * (obj2 - obj), &digits, Some((k, alt, t)));
            }
        }
    }

    let (value, base, edge) = best.ok_or(Error::InfeasibleSweep { p_inc })?;
    let mut cols: Vec<[f64; 3]> = base
        .iter()
        .map(|&o| {
            let mut col = [0.0; 3];
            col[o as usize] = 1.0;
            col
        })
        .collect();
    if let Some((k, alt, t)) = edge {
        let mut col = [0.0; 3];
        col[base[k] as usize] += 1.0 - t;
        col[alt as usize] += t;
        cols[k] = col;
    }
    Ok((value, cols))
}

/// Exact LP optimum on the four-region model, without any comparison.
pub fn nc_lp_optimum(c: f64, r_s: f64, p_inc: f64) -> Result<(f64, ResponseFunction)> {
    let model = make_ontic_model(c, r_s)?;
    let (value, cols) = solve_response_lp(&model.mu0, &model.mu1, p_inc)?;
    let xi = ResponseFunction {
        xi: core::array::from_fn(|b| core::array::from_fn(|k| cols[k][b])),
    };
    Ok((value, xi))
}

/// Exact LP optimum, required to agree with [`w_nc`] within [`LP_TOL`].
pub fn lp_oracle(c: f64, r_s: f64, p_inc: f64) -> Result<(f64, ResponseFunction)> {
    let (lp, xi) = nc_lp_optimum(c, r_s, p_inc)?;
    let closed_form = w_nc(c, r_s, p_inc);
    if abs(lp - closed_form) > LP_TOL {
        return Err(Error::LpDiscrepancy { closed_form, lp });
    }
    Ok((lp, xi))
}

/// Confidence of the noncontextual optimum.
pub fn max_confidence_nc(c: f64, r_s: f64, p_inc: f64) -> Result<f64> {
    if p_inc >= 1.0 {
        return Err(Error::UndefinedConfidence);
    }
    confidence(&optimal_stats_nc(c, r_s, p_inc))
}

/// Low-branch confidence `((1+r_s)(1 − p_inc/(1+r_s c)) − r_s c) / (2(1 − p_inc))`.
pub fn max_confidence_nc_low_branch(c: f64, r_s: f64, p_inc: f64) -> f64 {
    let rc = r_s * c;
    ((1.0 + r_s) * (1.0 - p_inc / (1.0 + rc)) - rc) / (2.0 * (1.0 - p_inc))
}
