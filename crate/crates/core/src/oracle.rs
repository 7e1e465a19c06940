//! Brute-force verifier for the quantum closed forms.
//!
//! The three-outcome problem is split into an outer sweep over the
//! inconclusive element and an exact inner step: once `π_ø` is fixed, the
//! best split of `I − π_ø` into `π_0 + π_1` is [`psd_split_max`]. The sweep
//! covers the X–Z plane of the Bloch ball, which contains both states; a
//! seeded full-ball spot check confirms nothing is lost by the restriction.

use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::num::{cos, sin, sqrt_clamped};
use crate::quantum::{make_states, OutcomeStats, ScenarioParams};
use crate::qubit::{psd_split_max, psd_split_value, sandwich, sqrt_psd, Hermitian2, Povm3};
use crate::{Error, Result};

const FEASIBILITY_SLACK: f64 = 1e-12;

/// Resolution and randomness for [`optimize_w_numeric`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    /// Grid points for the Bloch angle in `[0, 2π)`.
    pub theta_steps: usize,
    /// Grid points for the Bloch length in `[0, 1]`, endpoints included.
    pub magnitude_steps: usize,
    /// Seed for randomized full-ball spot checks.
    pub seed: u64,
    pub tolerance: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            theta_steps: 400,
            magnitude_steps: 400,
            seed: 0,
            tolerance: 1e-9,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.theta_steps < 2 {
            return Err(Error::InvalidConfig("theta_steps must be at least 2"));
        }
        if self.magnitude_steps < 2 {
            return Err(Error::InvalidConfig("magnitude_steps must be at least 2"));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Error::InvalidConfig("tolerance must be positive"));
        }
        Ok(())
    }
}

/// Best measurement found by the sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult {
    pub value: f64,
    pub povm: Povm3,
    pub stats: OutcomeStats,
    pub grid_points_feasible: usize,
}

/// Witness operator `(ρ0 − ρ1)/4`: `W = Tr[D(π_0 − π_1)]` for equal priors.
pub fn witness_operator(rho0: &Hermitian2, rho1: &Hermitian2) -> Hermitian2 {
    (*rho0 - *rho1) * 0.25
}

/// Inconclusive element along unit direction `u` with Bloch length `m`,
/// scaled so that its average click rate on the two states is `p_inc`.
/// `None` when it would exceed the identity.
fn inconclusive_element(params: &ScenarioParams, u: [f64; 3], m: f64) -> Option<Hermitian2> {
    let mean_z = params.r_s * params.delta;
    let alpha = params.p_inc / (1.0 + mean_z * m * u[2]);
    if !(alpha.is_finite()) || alpha < 0.0 || alpha * (1.0 + m) > 1.0 + FEASIBILITY_SLACK {
        return None;
    }
    Some(Hermitian2::new(
        2.0 * alpha,
        [
            2.0 * alpha * m * u[0],
            2.0 * alpha * m * u[1],
            2.0 * alpha * m * u[2],
        ],
    ))
}

fn clamp_to_identity(inc: Hermitian2) -> Hermitian2 {
    // Absorb slack admitted by FEASIBILITY_SLACK so that I − π_ø stays PSD.
    let rest = Hermitian2::identity() - inc;
    let lo = rest.min_eigenvalue();
    if lo < 0.0 {
        inc - Hermitian2::identity() * (-lo)
    } else {
        inc
    }
}

/// Grid maximum of the witness over measurements with the given `p_inc`.
pub fn optimize_w_numeric(params: &ScenarioParams, cfg: &SweepConfig) -> Result<OracleResult> {
    cfg.validate()?;
    let (rho0, rho1) = make_states(params);
    let d = witness_operator(&rho0, &rho1);

    let mut best: Option<(f64, Hermitian2)> = None;
    let mut feasible = 0usize;

    if params.p_inc == 0.0 {
        feasible = 1;
        best = Some((
            psd_split_value(&Hermitian2::identity(), &d),
            Hermitian2::zero(),
        ));
    } else {
        for i in 0..cfg.theta_steps {
            let theta = 2.0 * PI * (i as f64) / (cfg.theta_steps as f64);
            let u = [sin(theta), 0.0, cos(theta)];
            for j in 0..cfg.magnitude_steps {
                let m = (j as f64) / ((cfg.magnitude_steps - 1) as f64);
                let Some(inc) = inconclusive_element(params, u, m) else {
                    continue;
                };
                feasible += 1;
                let v = psd_split_value(&(Hermitian2::identity() - inc), &d);
                // strict comparison keeps the smallest grid index on ties
                if best.is_none_or(|(b, _)| v > b) {
                    best = Some((v, inc));
                }
            }
        }
    }

    let (_, inc) = best.ok_or(Error::InfeasibleSweep {
        p_inc: params.p_inc,
    })?;
    let inc = clamp_to_identity(inc);
    let split = psd_split_max(&(Hermitian2::identity() - inc), &d)?;
    let povm = Povm3::new(split.part0, split.part1, inc);
    let stats = OutcomeStats::from_povm(&povm, &rho0, &rho1);
    Ok(OracleResult {
        value: split.value,
        povm,
        stats,
        grid_points_feasible: feasible,
    })
}

fn random_unit<R: Rng>(rng: &mut R) -> [f64; 3] {
    let z: f64 = rng.gen_range(-1.0..=1.0);
    let phi: f64 = rng.gen_range(0.0..2.0 * PI);
    let rho = sqrt_clamped(1.0 - z * z);
    [rho * cos(phi), rho * sin(phi), z]
}

/// Best witness value over `samples` random inconclusive elements with
/// directions drawn from the whole Bloch sphere.
pub fn full_sphere_spot_check(params: &ScenarioParams, samples: usize, seed: u64) -> f64 {
    let (rho0, rho1) = make_states(params);
    let d = witness_operator(&rho0, &rho1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = f64::NEG_INFINITY;
    for _ in 0..samples {
        let u = random_unit(&mut rng);
        let m: f64 = rng.gen_range(0.0..=1.0);
        if let Some(inc) = inconclusive_element(params, u, m) {
            let v = psd_split_value(&(Hermitian2::identity() - inc), &d);
            best = best.max(v);
        }
    }
    best
}

/// A uniformly random valid three-outcome POVM.
///
/// `π_ø` is a random element below the identity, and the remainder
/// `I − π_ø` is split as `√(I−π_ø) E √(I−π_ø)` and its complement for a
/// random `0 ≤ E ≤ I`; every qubit POVM arises this way.
pub fn random_povm<R: Rng>(rng: &mut R) -> Povm3 {
    let inc = random_effect(rng);
    let rest = Hermitian2::identity() - inc;
    // rest is PSD by construction
    let root = sqrt_psd(&rest).unwrap_or(Hermitian2::zero());
    let e = random_effect(rng);
    let zero = sandwich(&root, &e);
    let one = rest - zero;
    Povm3::new(zero, one, inc)
}

// Random operator with eigenvalues in [0, 1].
fn random_effect<R: Rng>(rng: &mut R) -> Hermitian2 {
    let u = random_unit(rng);
    let lo: f64 = rng.gen_range(0.0..=1.0);
    let hi: f64 = rng.gen_range(0.0..=1.0);
    let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    // eigenvalue hi along u, lo along −u
    let half = 0.5 * (hi - lo);
    Hermitian2::new(
        lo + hi,
        [2.0 * half * u[0], 2.0 * half * u[1], 2.0 * half * u[2]],
    )
}

/// Behaviours of `count` random measurements on the states of `params`.
/// `params.p_inc` is ignored; the samples range over the whole feasible set.
pub fn sample_feasible_stats(
    params: &ScenarioParams,
    count: usize,
    seed: u64,
) -> Vec<OutcomeStats> {
    let (rho0, rho1) = make_states(params);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| OutcomeStats::from_povm(&random_povm(&mut rng), &rho0, &rho1))
        .collect()
}
