//! Orthonormal polynomials in one variable for a kernel on `0..=horizon`.
//!
//! For each starting level `l` the polynomials `φ_n(X, l)` are orthonormal
//! for the shifted kernel `(a, b) -> s_{a+l, b+l}` under
//! `<P, Q> = Σ conj(q_a) p_b s_{a,b}`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::{re, C64, ZERO};
use crate::schur_params::{
    det_principal, moments_from_params, params_from_moments, spectral_factor, szego_class_margin,
    GammaParams1D, MomentKernel1D,
};

/// Dense coefficients in powers `X^0..X^n`.
pub type Poly = Vec<C64>;

/// `<P, Q>` for the kernel shifted by `l`.
pub fn inner(kernel: &MomentKernel1D, l: usize, p: &[C64], q: &[C64]) -> C64 {
    let mut acc = ZERO;
    for (a, qa) in q.iter().enumerate() {
        for (b, pb) in p.iter().enumerate() {
            acc += qa.conj() * pb * kernel.get(a + l, b + l);
        }
    }
    acc
}

/// Table of `φ_n(·, l)` and `φ♯_n(·, l)` for `n + l <= reach`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyFamily1D {
    n_max: usize,
    l_max: usize,
    // phi[l][n]
    phi: Vec<Vec<Poly>>,
    phisharp: Vec<Vec<Poly>>,
}

impl PolyFamily1D {
    /// Requested degree bound.
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Requested level bound.
    pub fn l_max(&self) -> usize {
        self.l_max
    }

    /// Every stored pair satisfies `n + l <= reach()`.
    pub fn reach(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn phi(&self, n: usize, l: usize) -> &[C64] {
        &self.phi[l][n]
    }

    pub fn phisharp(&self, n: usize, l: usize) -> &[C64] {
        &self.phisharp[l][n]
    }

    /// Leading coefficient `k^l_n` of `φ_n(·, l)`.
    pub fn leading(&self, n: usize, l: usize) -> f64 {
        self.phi[l][n][n].re
    }

    /// `(n, l, coefficients)` for every stored `φ_n(·, l)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &[C64])> + '_ {
        self.phi
            .iter()
            .enumerate()
            .flat_map(|(l, row)| row.iter().enumerate().map(move |(n, p)| (n, l, p.as_slice())))
    }

    /// Builds a one-level family (`l = 0`) from explicit polynomials.
    pub fn from_level_zero(phi: Vec<Poly>, phisharp: Vec<Poly>) -> Result<Self> {
        if phi.is_empty() || phi.len() != phisharp.len() {
            return Err(Error::DimensionMismatch {
                expected: phi.len(),
                found: phisharp.len(),
            });
        }
        let n = phi.len() - 1;
        Ok(PolyFamily1D {
            n_max: n,
            l_max: 0,
            phi: vec![phi],
            phisharp: vec![phisharp],
        })
    }
}

/// Orthonormal families via the two-term recurrence
/// `φ_n(X,l) = (X φ_{n-1}(X,l+1) - γ_{l,n+l} φ♯_{n-1}(X,l)) / d_{l,n+l}` and
/// `φ♯_n(X,l) = (-conj γ_{l,n+l} X φ_{n-1}(X,l+1) + φ♯_{n-1}(X,l)) / d_{l,n+l}`.
///
/// All pairs with `n + l <= n_max + l_max` are materialized.
pub fn ortho_recurrence(p: &GammaParams1D, n_max: usize, l_max: usize) -> Result<PolyFamily1D> {
    let reach = n_max + l_max;
    if reach > p.horizon() {
        return Err(Error::HorizonTooShort {
            needed: reach,
            available: p.horizon(),
        });
    }
    let mut phi: Vec<Vec<Poly>> = Vec::with_capacity(reach + 1);
    let mut phisharp: Vec<Vec<Poly>> = Vec::with_capacity(reach + 1);
    for l in 0..=reach {
        let c0 = re(1.0 / libm::sqrt(p.s(l)));
        phi.push(vec![vec![c0]]);
        phisharp.push(vec![vec![c0]]);
    }
    for n in 1..=reach {
        for l in 0..=(reach - n) {
            let g = p.gamma(l, n + l);
            let inv_d = 1.0 / p.defect(l, n + l);
            let shifted = &phi[l + 1][n - 1];
            let sharp = &phisharp[l][n - 1];
            let mut a = vec![ZERO; n + 1];
            let mut b = vec![ZERO; n + 1];
            for (i, &x) in shifted.iter().enumerate() {
                a[i + 1] += x * inv_d;
                b[i + 1] -= g.conj() * x * inv_d;
            }
            for (i, &x) in sharp.iter().enumerate() {
                a[i] -= g * x * inv_d;
                b[i] += x * inv_d;
            }
            phi[l].push(a);
            phisharp[l].push(b);
        }
    }
    Ok(PolyFamily1D {
        n_max,
        l_max,
        phi,
        phisharp,
    })
}

/// Gram-Schmidt on `1, X, X^2, ...` through the Cholesky factor of the kernel.
///
/// With `K = L L^*` the coefficients of `φ_n` are row `n` of `conj(L^{-1})`.
pub fn ortho_gram_schmidt(kernel: &MomentKernel1D) -> Result<PolyFamily1D> {
    let n = kernel.horizon();
    let l = kernel.matrix().cholesky(1e-14)?;
    let linv = l.lower_triangular_inverse()?;
    let phi: Vec<Poly> = (0..=n)
        .map(|i| (0..=i).map(|j| linv[(i, j)].conj()).collect())
        .collect();
    // φ♯ is not produced by this route; the l = 0 slice keeps `phi` only.
    let sharp = phi.clone();
    let mut fam = PolyFamily1D::from_level_zero(phi, sharp)?;
    fam.phisharp = vec![Vec::new()];
    Ok(fam)
}

/// Coefficients of the degree-`n` orthonormal polynomial from bordered
/// determinants: the coefficient of `X^b` is the signed cofactor of the
/// monomial row, divided by `(D_{0,n-1} D_{0,n})^{1/2}`.
pub fn ortho_determinant(kernel: &MomentKernel1D, n: usize) -> Result<Poly> {
    if n > kernel.horizon() {
        return Err(Error::HorizonTooShort {
            needed: n,
            available: kernel.horizon(),
        });
    }
    let dn = kernel.minor(0, n)?;
    let dprev = if n == 0 { 1.0 } else { kernel.minor(0, n - 1)? };
    if !(dn > 0.0 && dprev > 0.0) {
        return Err(Error::Singular { index: n });
    }
    let norm = libm::sqrt(dn * dprev);
    if n == 0 {
        return Ok(vec![re(1.0 / norm)]);
    }
    let mut out = Vec::with_capacity(n + 1);
    for b in 0..=n {
        // rows 0..n of the kernel, column b removed
        let minor = Mat::from_fn(n, n, |r, col| {
            let cc = if col < b { col } else { col + 1 };
            kernel.get(r, cc)
        });
        let sign = if (n + b) % 2 == 0 { 1.0 } else { -1.0 };
        out.push(minor.det()? * (sign / norm));
    }
    Ok(out)
}

/// Parameters recovered from leading coefficients:
/// `γ_{l,n+l} = -φ_n(0,l) ∏_{i<n} k^{l+1}_i / ∏_{i<=n} k^l_i`.
pub fn gamma_from_polys(fam: &PolyFamily1D) -> Result<GammaParams1D> {
    let reach = fam.reach();
    for l in 0..=reach {
        for n in 0..=(reach - l) {
            if !(fam.leading(n, l) > 0.0) {
                return Err(Error::ZeroLeadingCoefficient { n, l });
            }
        }
    }
    let diag: Vec<f64> = (0..=reach)
        .map(|l| {
            let k = fam.leading(0, l);
            1.0 / (k * k)
        })
        .collect();
    GammaParams1D::from_fn(diag, |l, j| {
        let n = j - l;
        let upper: f64 = (0..n).map(|i| fam.leading(i, l + 1)).product();
        let lower: f64 = (0..=n).map(|i| fam.leading(i, l)).product();
        -fam.phi(n, l)[0] * (upper / lower)
    })
}

/// Parameters recovered through determinant ratios:
/// `γ_{l,n+l} = -φ_n(0,l) (D_{l,l+n} / D_{l+1,l+n})^{1/2}`, with the minors
/// taken directly from the kernel.
pub fn gamma_from_polys_det(fam: &PolyFamily1D, kernel: &MomentKernel1D) -> Result<GammaParams1D> {
    let reach = fam.reach();
    if kernel.horizon() < reach {
        return Err(Error::HorizonTooShort {
            needed: reach,
            available: kernel.horizon(),
        });
    }
    let diag: Vec<f64> = (0..=reach).map(|l| kernel.get(l, l).re).collect();
    let mut ratios = vec![vec![0.0; reach + 1]; reach + 1];
    for l in 0..reach {
        for j in (l + 1)..=reach {
            ratios[l][j] = libm::sqrt(kernel.minor(l, j)? / kernel.minor(l + 1, j)?);
        }
    }
    GammaParams1D::from_fn(diag, |l, j| -fam.phi(j - l, l)[0] * ratios[l][j])
}

/// Lower triangular Toeplitz-type embedding of level `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddedArray {
    entries: Mat,
}

impl EmbeddedArray {
    pub fn matrix(&self) -> &Mat {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.rows()
    }

    pub fn get(&self, k: usize, j: usize) -> C64 {
        self.entries[(k, j)]
    }
}

/// `(Φ_n, Φ♯_n)` with `(Φ_n)_{k,j}` the coefficient of `X^{k-j}` in
/// `φ_n(·, j)`, truncated to `j <= reach - n`.
pub fn toeplitz_embed(fam: &PolyFamily1D, n: usize) -> Result<(EmbeddedArray, EmbeddedArray)> {
    let reach = fam.reach();
    if n > reach || fam.phisharp[0].is_empty() {
        return Err(Error::HorizonTooShort {
            needed: n,
            available: reach,
        });
    }
    let size = reach - n + 1;
    let build = |table: &Vec<Vec<Poly>>| {
        Mat::from_fn(size, size, |k, j| {
            if k < j {
                return ZERO;
            }
            table[j][n].get(k - j).copied().unwrap_or(ZERO)
        })
    };
    Ok((
        EmbeddedArray {
            entries: build(&fam.phi),
        },
        EmbeddedArray {
            entries: build(&fam.phisharp),
        },
    ))
}

/// Inverse of a lower triangular embedding by forward substitution.
pub fn invert_embedded(a: &EmbeddedArray) -> Result<EmbeddedArray> {
    Ok(EmbeddedArray {
        entries: a.entries.lower_triangular_inverse()?,
    })
}

/// One line of a convergence report.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub deviation_phi: f64,
    pub deviation_theta: f64,
}

/// Windowed deviations of `Φ_n` from `0` and of `(Φ♯_n)^{-1}` from the
/// spectral factor of the kernel, for `n = 0..=n_max`.
pub fn convergence_report(
    p: &GammaParams1D,
    n_max: usize,
    window: usize,
) -> Result<Vec<ConvergenceRow>> {
    let margin = szego_class_margin(p);
    if !(margin > 0.0) {
        return Err(Error::NotSzegoClass { margin });
    }
    let h = p.horizon();
    if window == 0 || n_max + window > h + 1 {
        return Err(Error::HorizonTooShort {
            needed: n_max + window - 1,
            available: h,
        });
    }
    let theta = spectral_factor(&moments_from_params(p))?;
    let fam = ortho_recurrence(p, h, 0)?;
    let mut out = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let (phi, sharp) = toeplitz_embed(&fam, n)?;
        let inv = invert_embedded(&sharp)?;
        let mut dp: f64 = 0.0;
        let mut dt: f64 = 0.0;
        for k in 0..window {
            for j in 0..window {
                dp = dp.max(phi.get(k, j).norm());
                dt = dt.max((inv.get(k, j) - theta.get(k, j)).norm());
            }
        }
        out.push(ConvergenceRow {
            n,
            deviation_phi: dp,
            deviation_theta: dt,
        });
    }
    Ok(out)
}

/// Both sides of `D_{r,q} / D_{r+1,q} = 1 / |φ♯_{q-r}(0, r)|^2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RatioSides {
    pub determinant: f64,
    pub polynomial: f64,
}

pub fn szego_ratio_sides(kernel: &MomentKernel1D, r: usize, q: usize) -> Result<RatioSides> {
    if r >= q {
        return Err(Error::IndexOrder);
    }
    if q > kernel.horizon() {
        return Err(Error::IndexOutOfRange {
            index: q,
            bound: kernel.horizon(),
        });
    }
    let determinant = kernel.minor(r, q)? / kernel.minor(r + 1, q)?;
    let section = kernel.truncate(q);
    let p = params_from_moments(&section)?;
    let fam = ortho_recurrence(&p, q - r, r)?;
    let v = fam.phisharp(q - r, r)[0].norm_sqr();
    Ok(RatioSides {
        determinant,
        polynomial: 1.0 / v,
    })
}

/// Determinant side of the ratio identity; fails if the sides disagree
/// beyond relative `1e-9`.
pub fn szego_ratio(kernel: &MomentKernel1D, r: usize, q: usize) -> Result<f64> {
    let s = szego_ratio_sides(kernel, r, q)?;
    let residual = (s.determinant - s.polynomial).abs() / s.determinant.abs().max(1e-300);
    if residual > 1e-9 {
        return Err(Error::Residual {
            what: "ratio identity",
            residual,
            tol: 1e-9,
        });
    }
    Ok(s.determinant)
}

/// Truncated `g_r = s_rr ∏_{r<j<=horizon} d_{r,j}^2`.
pub fn szego_first_limit(p: &GammaParams1D, r: usize) -> Result<f64> {
    if r > p.horizon() {
        return Err(Error::IndexOutOfRange {
            index: r,
            bound: p.horizon(),
        });
    }
    let prod: f64 = ((r + 1)..=p.horizon())
        .map(|j| {
            let d = p.defect(r, j);
            d * d
        })
        .product();
    Ok(p.s(r) * prod)
}

/// `(D_{0,n} / ∏_{l<=n} g_l, L)` with the truncated constant
/// `L = ∏_{0<=k<=n<j<=horizon} d_{k,j}^2`; the ratio equals `1 / L`.
pub fn szego_strong_limit(p: &GammaParams1D, n: usize) -> Result<(f64, f64)> {
    let margin = szego_class_margin(p);
    if !(margin > 0.0) {
        return Err(Error::NotSzegoClass { margin });
    }
    let d = det_principal(p, 0, n)?;
    let mut g = 1.0;
    for l in 0..=n {
        g *= szego_first_limit(p, l)?;
    }
    let mut big_l = 1.0;
    for k in 0..=n {
        for j in (n + 1)..=p.horizon() {
            let dd = p.defect(k, j);
            big_l *= dd * dd;
        }
    }
    Ok((d / g, big_l))
}
