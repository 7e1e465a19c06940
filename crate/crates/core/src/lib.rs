//! Bounds on a preparation-contextuality witness built from two-state
//! discrimination with inconclusive outcomes.
//!
//! A behaviour is the triple `(p_suc, p_err, p_inc)` of averaged success,
//! error and inconclusive probabilities for two equiprobable preparations.
//! The witness is `W = (p_suc - p_err) / 2`. This crate computes
//!
//! - the quantum maximum of `W` at fixed `p_inc` for two noisy qubit states
//!   with overlap `δ` and depolarising parameter `r_s` ([`quantum`]), with an
//!   independent brute-force verifier ([`oracle`]);
//! - the preparation-noncontextual value on a four-region ontic model together
//!   with an exact linear-programming solver ([`nc`]);
//! - the noncontextual bound `W*`, contextuality verdicts and the minimal
//!   tolerable noise ([`witness`]);
//! - boundary polylines of the feasible regions ([`region`]).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
mod num;

pub mod nc;
pub mod oracle;
pub mod quantum;
pub mod qubit;
pub mod region;
pub mod witness;

pub use error::Error;
pub use nc::{OnticModel, ResponseFunction};
pub use oracle::{OracleResult, SweepConfig};
pub use quantum::{OutcomeStats, ScenarioParams};
pub use qubit::{Hermitian2, Povm3};
pub use region::{Model, RegionCurve};
pub use witness::{ToleranceCurve, WStarForm, WitnessVerdict};

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
