// Thin wrappers so the rest of the crate reads like std float code.

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

/// Square root that maps tiny negative roundoff to zero.
#[inline]
pub(crate) fn sqrt_clamped(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        libm::sqrt(x)
    }
}

#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

#[inline]
pub(crate) fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub(crate) fn in_unit(x: f64) -> bool {
    (0.0..=1.0).contains(&x)
}
