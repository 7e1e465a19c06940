use core::fmt;

/// Errors raised by the bound computations and their verifiers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A parameter lies outside its admissible range.
    OutOfRange { name: &'static str, value: f64 },
    /// An operator required to be positive semidefinite is not.
    NotPsd { min_eigenvalue: f64 },
    /// Confidence requested for a behaviour with no conclusive events.
    UndefinedConfidence,
    /// Outcome probabilities do not sum to one.
    NotNormalized { sum: f64 },
    /// A constructed object failed one of its postconditions.
    InternalConsistency {
        check: &'static str,
        expected: f64,
        actual: f64,
    },
    /// No grid point of the quantum sweep satisfied the constraints.
    InfeasibleSweep { p_inc: f64 },
    /// Closed-form noncontextual value and exact LP value disagree.
    LpDiscrepancy { closed_form: f64, lp: f64 },
    /// Invalid configuration (grid sizes, tolerances, counts).
    InvalidConfig(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OutOfRange { name, value } => {
                write!(f, "parameter {name} = {value} outside its admissible range")
            }
            Error::NotPsd { min_eigenvalue } => {
                write!(f, "operator is not PSD (min eigenvalue {min_eigenvalue:e})")
            }
            Error::UndefinedConfidence => {
                write!(f, "confidence undefined: p_suc + p_err = 0")
            }
            Error::NotNormalized { sum } => {
                write!(f, "probabilities sum to {sum}, expected 1")
            }
            Error::InternalConsistency {
                check,
                expected,
                actual,
            } => {
                write!(
                    f,
                    "consistency check `{check}` failed: expected {expected}, got {actual}"
                )
            }
            Error::InfeasibleSweep { p_inc } => {
                write!(f, "no feasible inconclusive element for p_inc = {p_inc}")
            }
            Error::LpDiscrepancy { closed_form, lp } => {
                write!(
                    f,
                    "closed form {closed_form} disagrees with LP optimum {lp}"
                )
            }
            Error::InvalidConfig(what) => write!(f, "invalid configuration: {what}"),
        }
    }
}

impl core::error::Error for Error {}
