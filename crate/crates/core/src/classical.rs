//! Toeplitz, Hankel and Gegenbauer specializations.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::ortho_one_var::{ortho_gram_schmidt, Poly};
use crate::scalar::{defect, re, C64, ZERO};
use crate::schur_params::{params_from_moments, GammaParams1D, MomentKernel1D};

/// Classical Szego coefficients `γ_1, γ_2, ...` (stored from index 0).
#[derive(Clone, Debug, PartialEq)]
pub struct SzegoCoeffs {
    gamma: Vec<C64>,
}

impl SzegoCoeffs {
    pub fn new(gamma: Vec<C64>) -> Result<Self> {
        for (i, g) in gamma.iter().enumerate() {
            if !(g.norm() < 1.0) {
                return Err(Error::NotContractive {
                    k: 0,
                    j: i + 1,
                    modulus: g.norm(),
                });
            }
        }
        Ok(SzegoCoeffs { gamma })
    }

    /// `γ_n` for `n >= 1`.
    pub fn get(&self, n: usize) -> C64 {
        self.gamma[n - 1]
    }

    pub fn len(&self) -> usize {
        self.gamma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty()
    }
}

/// Toeplitz parameters `γ_{k,n+k} = γ_n` with unit diagonal.
pub fn toeplitz_lift(c: &SzegoCoeffs, horizon: usize) -> Result<GammaParams1D> {
    if horizon == 0 || horizon > c.len() {
        return Err(Error::HorizonTooShort {
            needed: horizon.max(1),
            available: c.len(),
        });
    }
    GammaParams1D::unit_diag(horizon, |k, j| c.get(j - k))
}

/// Classical recursion on the unit circle; returns `(φ_n, φ♯_n)` for `n <= n_max`.
pub fn szego_recursion(c: &SzegoCoeffs, n_max: usize) -> Result<(Vec<Poly>, Vec<Poly>)> {
    if n_max > c.len() {
        return Err(Error::HorizonTooShort {
            needed: n_max,
            available: c.len(),
        });
    }
    let mut phi = vec![vec![re(1.0)]];
    let mut sharp = vec![vec![re(1.0)]];
    for n in 1..=n_max {
        let g = c.get(n);
        let inv_d = 1.0 / defect(g);
        let mut a = vec![ZERO; n + 1];
        let mut b = vec![ZERO; n + 1];
        for (i, &x) in phi[n - 1].iter().enumerate() {
            a[i + 1] += x * inv_d;
            b[i + 1] -= g.conj() * x * inv_d;
        }
        for (i, &x) in sharp[n - 1].iter().enumerate() {
            a[i] -= g * x * inv_d;
            b[i] += x * inv_d;
        }
        phi.push(a);
        sharp.push(b);
    }
    Ok((phi, sharp))
}

/// True when `s_{k,j}` depends only on `k + j` (relative tolerance 1e-12).
pub fn hankel_check(kernel: &MomentKernel1D) -> bool {
    hankel_violation(kernel).is_none()
}

fn hankel_violation(kernel: &MomentKernel1D) -> Option<(usize, usize)> {
    let n = kernel.horizon() + 1;
    let scale = kernel.matrix().max_abs().max(1e-300);
    for k in 0..n {
        for j in 0..n {
            // compare with the representative on the first row or last column
            let (a, b) = if k + j < n { (0, k + j) } else { (k + j - (n - 1), n - 1) };
            if (kernel.get(k, j) - kernel.get(a, b)).norm() > 1e-12 * scale {
                return Some((k, j));
            }
        }
    }
    None
}

/// Jacobi-type coefficients of a real-line family.
#[derive(Clone, Debug, PartialEq)]
pub struct ThreeTermCoeffs {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

fn times_x(p: &[C64]) -> Poly {
    let mut out = vec![ZERO; p.len() + 1];
    out[1..].copy_from_slice(p);
    out
}

/// `a_n = <x φ_n, φ_n>`, `b_n = <x φ_n, φ_{n+1}>` for `n < horizon`, from the
/// Gram-Schmidt family of a Hankel kernel.
pub fn three_term_from_moments(kernel: &MomentKernel1D) -> Result<ThreeTermCoeffs> {
    if let Some((k, j)) = hankel_violation(kernel) {
        return Err(Error::NotHankel { k, j });
    }
    let h = kernel.horizon();
    let fam = ortho_gram_schmidt(kernel)?;
    let mut a = Vec::with_capacity(h);
    let mut b = Vec::with_capacity(h);
    for n in 0..h {
        let xp = times_x(fam.phi(n, 0));
        a.push(crate::ortho_one_var::inner(kernel, 0, &xp, fam.phi(n, 0)).re);
        b.push(crate::ortho_one_var::inner(kernel, 0, &xp, fam.phi(n + 1, 0)).re);
    }
    Ok(ThreeTermCoeffs { a, b })
}

/// Polynomials from `x φ_n = b_n φ_{n+1} + a_n φ_n + b_{n-1} φ_{n-1}` with
/// `φ_{-1} = 0` and `φ_0 = s00^{-1/2}`.
pub fn three_term_reconstruct(coeffs: &ThreeTermCoeffs, s00: f64) -> Result<Vec<Poly>> {
    if !(s00 > 0.0) {
        return Err(Error::NonPositiveDiagonal {
            index: 0,
            value: s00,
        });
    }
    let mut out: Vec<Poly> = vec![vec![re(1.0 / libm::sqrt(s00))]];
    for n in 0..coeffs.b.len() {
        if !(coeffs.b[n] > 0.0) {
            return Err(Error::NotPositive {
                index: n,
                value: coeffs.b[n],
            });
        }
        let mut next = times_x(&out[n]);
        for (i, &x) in out[n].iter().enumerate() {
            next[i] -= x * coeffs.a[n];
        }
        if n > 0 {
            for (i, &x) in out[n - 1].iter().enumerate() {
                next[i] -= x * coeffs.b[n - 1];
            }
        }
        for x in next.iter_mut() {
            *x /= coeffs.b[n];
        }
        out.push(next);
    }
    Ok(out)
}

/// Rising factorial `(x)_n`.
pub fn pochhammer(x: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, i| acc * (x + i as f64))
}

/// Euler beta function.
pub fn beta(a: f64, b: f64) -> f64 {
    libm::exp(libm::lgamma(a) + libm::lgamma(b) - libm::lgamma(a + b))
}

fn factorial(n: usize) -> f64 {
    pochhammer(1.0, n)
}

/// Closed-form data of the orthonormal family for `x^{2l} w_λ(x)` at a
/// given polynomial degree.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GegenbauerValues {
    /// Normalized squared norm of the modified Gegenbauer polynomial.
    pub h: f64,
    /// Leading coefficient of the orthonormal polynomial.
    pub k_lead: f64,
    /// Orthonormal polynomial at zero.
    pub phi_at_zero: f64,
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda > -0.5) || !lambda.is_finite() {
        return Err(Error::Domain("lambda must exceed -1/2"));
    }
    Ok(())
}

/// `(x)_n / x = (x + 1)_{n-1}` for `n >= 1`.
fn pochhammer_tail(x: f64, n: usize) -> f64 {
    pochhammer(x + 1.0, n - 1)
}

/// Closed forms for degree `degree` at level `l`.
///
/// The common factor `λ + l` of the leading coefficient and of the square
/// root of `h` is cancelled by hand, so the leading coefficient stays
/// positive for `-1/2 < λ < 0` and `λ = 0` gives the Chebyshev limit.
pub fn gegenbauer_closed(lambda: f64, l: usize, degree: usize) -> Result<GegenbauerValues> {
    check_lambda(lambda)?;
    let lf = l as f64;
    let level = libm::sqrt(pochhammer(lambda + 1.0, l) / pochhammer(0.5, l));
    if degree == 0 {
        return Ok(GegenbauerValues {
            h: 1.0,
            k_lead: level,
            phi_at_zero: level,
        });
    }
    let n = degree / 2;
    let nf = n as f64;
    let ll = lambda + lf;
    if degree % 2 == 0 {
        // h = ll^2 * reduced
        let reduced = pochhammer(lambda + 0.5, n) * pochhammer_tail(ll, n)
            / (factorial(n) * pochhammer(lf + 0.5, n) * (ll + 2.0 * nf));
        let norm = level / libm::sqrt(reduced);
        let lead = pochhammer_tail(ll, 2 * n) / (pochhammer(lf + 0.5, n) * factorial(n));
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        Ok(GegenbauerValues {
            h: ll * ll * reduced,
            k_lead: lead * norm,
            phi_at_zero: sign * norm * pochhammer_tail(ll, n) / factorial(n),
        })
    } else {
        let reduced = pochhammer(lambda + 0.5, n) * pochhammer_tail(ll, n + 1)
            / (factorial(n) * pochhammer(lf + 0.5, n + 1) * (ll + 2.0 * nf + 1.0));
        let lead = pochhammer_tail(ll, 2 * n + 1) / (pochhammer(lf + 0.5, n + 1) * factorial(n));
        Ok(GegenbauerValues {
            h: ll * ll * reduced,
            k_lead: lead * level / libm::sqrt(reduced),
            phi_at_zero: 0.0,
        })
    }
}

/// `γ_{l,l+n}` from closed-form leading coefficients and values at zero.
pub fn gegenbauer_gamma(lambda: f64, l: usize, n: usize) -> Result<C64> {
    if n == 0 {
        return Err(Error::Domain("offset must be positive"));
    }
    let at = gegenbauer_closed(lambda, l, n)?;
    if n % 2 == 1 {
        return Ok(ZERO);
    }
    let mut ratio = 1.0 / at.k_lead;
    for i in 0..n {
        ratio *= gegenbauer_closed(lambda, l + 1, i)?.k_lead / gegenbauer_closed(lambda, l, i)?.k_lead;
    }
    Ok(re(-at.phi_at_zero * ratio))
}

/// Largest monomial degree accepted by the quadrature oracle.
pub const QUADRATURE_MAX_DEGREE: usize = 120;

// tanh-sinh step and truncation of the t-axis
const TS_STEP: f64 = 1.0 / 64.0;
const TS_RANGE: f64 = 6.5;

/// `∫ x^m w_λ(x) dx` for `m = 0..=max_degree`, with
/// `w_λ = B(1/2, λ+1/2)^{-1} (1-x^2)^{λ-1/2}`.
///
/// Uses tanh-sinh quadrature, `x = tanh(π/2 sinh t)`, so the endpoint
/// singularity for `λ < 1/2` is integrated to full precision.
pub fn weight_moments(lambda: f64, max_degree: usize) -> Result<Vec<f64>> {
    check_lambda(lambda)?;
    if max_degree > QUADRATURE_MAX_DEGREE {
        return Err(Error::DegreeOverflow {
            degree: max_degree,
            available: QUADRATURE_MAX_DEGREE,
        });
    }
    let half_pi = core::f64::consts::FRAC_PI_2;
    let expo = 2.0 * lambda + 1.0;
    let norm = beta(0.5, lambda + 0.5);
    let steps = libm::round(TS_RANGE / TS_STEP) as i64;
    let mut out = vec![0.0; max_degree + 1];
    for i in -steps..=steps {
        let t = i as f64 * TS_STEP;
        let u = half_pi * libm::sinh(t);
        // (1 - x^2)^{λ-1/2} dx/dt = (π/2) cosh t / cosh(u)^{2λ+1}
        let log_cosh = u.abs() + libm::log1p(libm::exp(-2.0 * u.abs())) - core::f64::consts::LN_2;
        let weight = TS_STEP * half_pi * libm::cosh(t) * libm::exp(-expo * log_cosh) / norm;
        if weight == 0.0 {
            continue;
        }
        let x = libm::tanh(u);
        let mut xm = 1.0;
        for o in out.iter_mut() {
            *o += weight * xm;
            xm *= x;
        }
    }
    Ok(out)
}

/// Shifted Hankel kernel `s^l_{k,j} = ∫ x^{k+j+2l} w_λ` for `k, j <= degree`.
pub fn weight_moments_quadrature(lambda: f64, l: usize, degree: usize) -> Result<MomentKernel1D> {
    let m = weight_moments(lambda, 2 * degree + 2 * l)?;
    MomentKernel1D::new(Mat::from_fn(degree + 1, degree + 1, |k, j| re(m[k + j + 2 * l])))
}

/// Leading coefficient and value at zero of the degree-`degree`
/// orthonormal polynomial, from quadrature moments and Gram-Schmidt.
pub fn gegenbauer_numeric(lambda: f64, l: usize, degree: usize) -> Result<(f64, f64)> {
    let k = weight_moments_quadrature(lambda, l, degree)?;
    let fam = ortho_gram_schmidt(&k)?;
    let p = fam.phi(degree, 0);
    Ok((p[degree].re, p[0].re))
}

/// `γ_{l,l+n}` from quadrature moments and the inverse Schur map.
pub fn gegenbauer_gamma_numeric(lambda: f64, l: usize, n: usize) -> Result<C64> {
    if n == 0 {
        return Err(Error::Domain("offset must be positive"));
    }
    let k = weight_moments_quadrature(lambda, l, n)?;
    Ok(params_from_moments(&k)?.gamma(0, n))
}
