//! Scalar conventions: double-precision complex numbers throughout.

pub use num_complex::Complex64 as C64;

#[inline]
pub const fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub const fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// `(1 - |g|^2)^{1/2}`, the defect of a contraction of modulus `|g| < 1`.
#[inline]
pub fn defect(g: C64) -> f64 {
    libm::sqrt((1.0 - g.norm_sqr()).max(0.0))
}

/// `|a - b|` scaled by `max(1, |b|)`.
#[inline]
pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}
