//! Scalar math helpers.
//!
//! The crate is `no_std`, so every transcendental call is routed through
//! [`libm`]. Keeping them behind one module gives the rest of the crate a
//! single, bit-deterministic code path regardless of what the host links.

pub(crate) use core::f64::consts::{PI, TAU};

#[inline]
pub(crate) fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}

#[inline]
pub(crate) fn atan2(y: f64, x: f64) -> f64 {
    libm::atan2(y, x)
}

#[inline]
pub(crate) fn hypot(x: f64, y: f64) -> f64 {
    libm::hypot(x, y)
}

#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

#[inline]
pub(crate) fn round(x: f64) -> f64 {
    libm::round(x)
}

#[inline]
pub(crate) fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}

/// Wraps an angle in radians onto the half-open interval `(-pi, pi]`.
pub(crate) fn wrap_angle(theta: f64) -> f64 {
    let k = ceil((theta - PI) / TAU);
    theta - TAU * k
}

/// Wraps an angle in degrees onto the half-open interval `(-180, 180]`.
pub(crate) fn wrap_degrees(deg: f64) -> f64 {
    let k = ceil((deg - 180.0) / 360.0);
    deg - 360.0 * k
}
