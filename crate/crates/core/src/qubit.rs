//! 2×2 Hermitian operators in Pauli-coefficient form.
//!
//! An operator is stored as `(t, n)` with matrix `(t·I + n_x·X + n_y·Y + n_z·Z) / 2`,
//! so the trace is `t` and the eigenvalues are `(t ± |n|) / 2`. Every operator
//! appearing in the discrimination problem lives in this real span, which keeps
//! PSD tests to a single inequality and removes any need for complex arithmetic.

use core::ops::{Add, Mul, Neg, Sub};
use core::sync::atomic::{AtomicU64, Ordering};

use crate::num::{abs, sqrt, sqrt_clamped};
use crate::{Error, Result};

/// Default absolute tolerance on eigenvalues for PSD and completeness checks.
pub const DEFAULT_PSD_TOLERANCE: f64 = 1e-10;

static PSD_TOLERANCE_BITS: AtomicU64 = AtomicU64::new(0x3DDB_7CDF_D9D7_BDBB); // 1e-10

/// Current global PSD tolerance.
pub fn psd_tolerance() -> f64 {
    f64::from_bits(PSD_TOLERANCE_BITS.load(Ordering::Relaxed))
}

/// Override the global PSD tolerance. Non-positive or non-finite values are ignored.
pub fn set_psd_tolerance(tol: f64) {
    if tol.is_finite() && tol > 0.0 {
        PSD_TOLERANCE_BITS.store(tol.to_bits(), Ordering::Relaxed);
    }
}

/// A 2×2 complex Hermitian matrix `(t·I + n·σ) / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Hermitian2 {
    pub t: f64,
    pub n: [f64; 3],
}

impl Hermitian2 {
    pub const fn new(t: f64, n: [f64; 3]) -> Self {
        Self { t, n }
    }

    pub const fn zero() -> Self {
        Self {
            t: 0.0,
            n: [0.0; 3],
        }
    }

    pub const fn identity() -> Self {
        Self {
            t: 2.0,
            n: [0.0; 3],
        }
    }

    /// Pauli X with unit eigenvalues ±1.
    pub const fn pauli_x() -> Self {
        Self {
            t: 0.0,
            n: [2.0, 0.0, 0.0],
        }
    }

    pub const fn pauli_y() -> Self {
        Self {
            t: 0.0,
            n: [0.0, 2.0, 0.0],
        }
    }

    pub const fn pauli_z() -> Self {
        Self {
            t: 0.0,
            n: [0.0, 0.0, 2.0],
        }
    }

    pub fn trace(&self) -> f64 {
        self.t
    }

    /// Euclidean norm of the Pauli coefficient vector.
    pub fn bloch_norm(&self) -> f64 {
        norm3(self.n)
    }

    /// Eigenvalues in descending order.
    pub fn eigvals(&self) -> (f64, f64) {
        eigvals2(self)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigvals().1
    }

    pub fn is_psd(&self, tol: f64) -> bool {
        self.min_eigenvalue() >= -tol
    }

    /// Largest absolute coefficient difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut m = abs(self.t - other.t);
        for k in 0..3 {
            m = m.max(abs(self.n[k] - other.n[k]));
        }
        m
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    /// Entries `[[a, b], [conj(b), d]]` as `(a, d, re b, im b)`.
    pub fn matrix_entries(&self) -> (f64, f64, f64, f64) {
        let a = 0.5 * (self.t + self.n[2]);
        let d = 0.5 * (self.t - self.n[2]);
        (a, d, 0.5 * self.n[0], -0.5 * self.n[1])
    }

    // Coefficients in the `x0·I + x·σ` convention used by the product formulas.
    fn half(&self) -> (f64, [f64; 3]) {
        (
            0.5 * self.t,
            [0.5 * self.n[0], 0.5 * self.n[1], 0.5 * self.n[2]],
        )
    }

    fn from_half(x0: f64, x: [f64; 3]) -> Self {
        Self {
            t: 2.0 * x0,
            n: [2.0 * x[0], 2.0 * x[1], 2.0 * x[2]],
        }
    }
}

impl Add for Hermitian2 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self {
            t: self.t + rhs.t,
            n: [
                self.n[0] + rhs.n[0],
                self.n[1] + rhs.n[1],
                self.n[2] + rhs.n[2],
            ],
        }
    }
}

impl Sub for Hermitian2 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self {
            t: self.t - rhs.t,
            n: [
                self.n[0] - rhs.n[0],
                self.n[1] - rhs.n[1],
                self.n[2] - rhs.n[2],
            ],
        }
    }
}

impl Neg for Hermitian2 {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            t: -self.t,
            n: [-self.n[0], -self.n[1], -self.n[2]],
        }
    }
}

impl Mul<f64> for Hermitian2 {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self {
            t: self.t * s,
            n: [self.n[0] * s, self.n[1] * s, self.n[2] * s],
        }
    }
}

fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm3(a: [f64; 3]) -> f64 {
    sqrt(dot3(a, a))
}

/// `(t/2)(I + n·σ)`: a positive multiple of a Bloch-sphere operator.
pub fn bloch_operator(t: f64, n: [f64; 3]) -> Hermitian2 {
    Hermitian2::new(t, [t * n[0], t * n[1], t * n[2]])
}

/// `Tr[AB] = (t_A t_B + n_A·n_B) / 2`.
pub fn trace_product(a: &Hermitian2, b: &Hermitian2) -> f64 {
    0.5 * (a.t * b.t + dot3(a.n, b.n))
}

/// Eigenvalues `(t ± |n|) / 2`, descending.
pub fn eigvals2(a: &Hermitian2) -> (f64, f64) {
    let r = a.bloch_norm();
    (0.5 * (a.t + r), 0.5 * (a.t - r))
}

/// `S·D·S` for Hermitian `S`, `D` (the result is Hermitian).
pub fn sandwich(s: &Hermitian2, d: &Hermitian2) -> Hermitian2 {
    let (s0, sv) = s.half();
    let (d0, dv) = d.half();
    let sd = dot3(sv, dv);
    let ss = dot3(sv, sv);
    let x0 = s0 * s0 * d0 + 2.0 * s0 * sd + d0 * ss;
    let mut x = [0.0; 3];
    for k in 0..3 {
        x[k] = s0 * s0 * dv[k] + 2.0 * s0 * d0 * sv[k] + 2.0 * sd * sv[k] - ss * dv[k];
    }
    Hermitian2::from_half(x0, x)
}

/// Principal square root of a PSD operator.
///
/// Uses `√M = (M + √det M · I) / √(Tr M + 2√det M)`, valid for rank 1 and 2.
pub fn sqrt_psd(m: &Hermitian2) -> Result<Hermitian2> {
    let tol = psd_tolerance();
    let lo = m.min_eigenvalue();
    if lo < -tol {
        return Err(Error::NotPsd { min_eigenvalue: lo });
    }
    let (hi, lo) = m.eigvals();
    let det = hi.max(0.0) * lo.max(0.0);
    let sdet = sqrt_clamped(det);
    let denom = m.t + 2.0 * sdet;
    if denom <= 0.0 {
        return Ok(Hermitian2::zero());
    }
    let scale = 1.0 / sqrt(denom);
    Ok((*m + Hermitian2::identity() * sdet) * scale)
}

/// Outcome of [`psd_split_max`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Split {
    pub value: f64,
    pub part0: Hermitian2,
    pub part1: Hermitian2,
}

/// Maximum of `Tr[D(P0 − P1)]` over PSD `P0, P1` with `P0 + P1 = M`.
///
/// The optimum is `Tr|√M D √M|`, attained by projecting `√M D √M` onto its
/// nonnegative and negative eigenspaces and conjugating back by `√M`. On the
/// null space of `M` both parts vanish.
pub fn psd_split_max(m: &Hermitian2, d: &Hermitian2) -> Result<Split> {
    let s = sqrt_psd(m)?;
    let a = sandwich(&s, d);
    let (l_hi, l_lo) = eigvals2(&a);
    let r = a.bloch_norm();
    let (pos, neg) = if r <= 1e-300 {
        // A is a multiple of the identity.
        if a.t >= 0.0 {
            (Hermitian2::identity(), Hermitian2::zero())
        } else {
            (Hermitian2::zero(), Hermitian2::identity())
        }
    } else {
        let u = [a.n[0] / r, a.n[1] / r, a.n[2] / r];
        let p_hi = bloch_operator(1.0, u);
        let p_lo = bloch_operator(1.0, [-u[0], -u[1], -u[2]]);
        match (l_hi >= 0.0, l_lo >= 0.0) {
            (true, true) => (Hermitian2::identity(), Hermitian2::zero()),
            (true, false) => (p_hi, p_lo),
            _ => (Hermitian2::zero(), Hermitian2::identity()),
        }
    };
    Ok(Split {
        value: abs(l_hi) + abs(l_lo),
        part0: sandwich(&s, &pos),
        part1: sandwich(&s, &neg),
    })
}

/// Value of [`psd_split_max`] without constructing the parts.
///
/// The eigenvalues of `√M D √M` have trace `Tr[MD]` and product
/// `det M · det D`, which fixes the sum of their absolute values.
pub fn psd_split_value(m: &Hermitian2, d: &Hermitian2) -> f64 {
    let tr = trace_product(m, d);
    let det_m = 0.25 * (m.t * m.t - dot3(m.n, m.n));
    let det_d = 0.25 * (d.t * d.t - dot3(d.n, d.n));
    let det = det_m.max(0.0) * det_d;
    if det >= 0.0 {
        abs(tr)
    } else {
        sqrt(tr * tr - 4.0 * det)
    }
}

/// Three-outcome POVM: conclusive outcomes `0`, `1` and the inconclusive outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Povm3 {
    pub zero: Hermitian2,
    pub one: Hermitian2,
    pub inconclusive: Hermitian2,
}

impl Povm3 {
    pub fn new(zero: Hermitian2, one: Hermitian2, inconclusive: Hermitian2) -> Self {
        Self {
            zero,
            one,
            inconclusive,
        }
    }

    pub fn elements(&self) -> [Hermitian2; 3] {
        [self.zero, self.one, self.inconclusive]
    }

    pub fn sum(&self) -> Hermitian2 {
        self.zero + self.one + self.inconclusive
    }

    /// Every element PSD and elements summing to the identity, both within `tol`.
    pub fn validate(&self, tol: f64) -> Result<()> {
        for e in self.elements() {
            let lo = e.min_eigenvalue();
            if lo < -tol {
                return Err(Error::NotPsd { min_eigenvalue: lo });
            }
        }
        let dev = self.sum().max_abs_diff(&Hermitian2::identity());
        if dev > tol {
            return Err(Error::InternalConsistency {
                check: "povm completeness",
                expected: 0.0,
                actual: dev,
            });
        }
        Ok(())
    }

    /// Outcome probabilities `[p(0|ρ), p(1|ρ), p(ø|ρ)]`.
    pub fn probabilities(&self, rho: &Hermitian2) -> [f64; 3] {
        [
            trace_product(rho, &self.zero),
            trace_product(rho, &self.one),
            trace_product(rho, &self.inconclusive),
        ]
    }
}
