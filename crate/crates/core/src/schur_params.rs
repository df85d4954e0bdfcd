//! Schur-type parametrization of positive definite kernels on `0..=horizon`.
//!
//! A strictly positive definite kernel `s_{k,j}` is encoded by its diagonal
//! and a triangular family `γ_{k,j}` (`k < j`) of complex numbers in the open
//! unit disk. The off-diagonal moments are the `(0,0)` entries of products of
//! embedded Julia operators; this module evaluates that product as a lattice
//! recursion, inverts it offset by offset, and exposes the determinant
//! identities that the parametrization makes explicit.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::{defect, re, C64, ONE, ZERO};

/// Parameters `(diag, γ)` of a kernel on `0..=horizon`.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaParams1D {
    horizon: usize,
    diag: Vec<f64>,
    // gamma[k][j - k - 1] = γ_{k,j}
    gamma: Vec<Vec<C64>>,
}

impl GammaParams1D {
    /// All `γ = 0` and unit diagonal: the identity kernel.
    pub fn identity(horizon: usize) -> Self {
        GammaParams1D {
            horizon,
            diag: vec![1.0; horizon + 1],
            gamma: (0..=horizon).map(|k| vec![ZERO; horizon - k]).collect(),
        }
    }

    /// Builds parameters from a diagonal and a generator `(k, j) -> γ_{k,j}`.
    pub fn from_fn(diag: Vec<f64>, mut gamma: impl FnMut(usize, usize) -> C64) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::Domain("empty diagonal"));
        }
        let horizon = diag.len() - 1;
        let mut p = GammaParams1D::identity(horizon);
        p.diag = diag;
        for k in 0..=horizon {
            for j in (k + 1)..=horizon {
                p.gamma[k][j - k - 1] = gamma(k, j);
            }
        }
        p.validate()?;
        Ok(p)
    }

    /// Unit diagonal with the given generator.
    pub fn unit_diag(horizon: usize, gamma: impl FnMut(usize, usize) -> C64) -> Result<Self> {
        GammaParams1D::from_fn(vec![1.0; horizon + 1], gamma)
    }

    pub fn validate(&self) -> Result<()> {
        for (i, &s) in self.diag.iter().enumerate() {
            if !(s > 0.0) || !s.is_finite() {
                return Err(Error::NonPositiveDiagonal { index: i, value: s });
            }
        }
        for (k, row) in self.gamma.iter().enumerate() {
            for (off, g) in row.iter().enumerate() {
                let m = g.norm();
                if !(m < 1.0) {
                    return Err(Error::NotContractive {
                        k,
                        j: k + off + 1,
                        modulus: m,
                    });
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn horizon(&self) -> usize {
        self.horizon
    }

    #[inline]
    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    #[inline]
    pub fn s(&self, k: usize) -> f64 {
        self.diag[k]
    }

    /// `γ_{k,j}` for `k < j <= horizon`.
    #[inline]
    pub fn gamma(&self, k: usize, j: usize) -> C64 {
        debug_assert!(k < j && j <= self.horizon);
        self.gamma[k][j - k - 1]
    }

    /// `d_{k,j} = (1 - |γ_{k,j}|^2)^{1/2}`.
    #[inline]
    pub fn defect(&self, k: usize, j: usize) -> f64 {
        defect(self.gamma(k, j))
    }

    pub fn set_gamma(&mut self, k: usize, j: usize, g: C64) -> Result<()> {
        if !(k < j && j <= self.horizon) {
            return Err(Error::IndexOutOfRange {
                index: j,
                bound: self.horizon,
            });
        }
        if !(g.norm() < 1.0) {
            return Err(Error::NotContractive {
                k,
                j,
                modulus: g.norm(),
            });
        }
        self.gamma[k][j - k - 1] = g;
        Ok(())
    }

    /// Restriction to `0..=horizon`.
    pub fn truncate(&self, horizon: usize) -> GammaParams1D {
        let h = horizon.min(self.horizon);
        GammaParams1D {
            horizon: h,
            diag: self.diag[..=h].to_vec(),
            gamma: (0..=h).map(|k| self.gamma[k][..h - k].to_vec()).collect(),
        }
    }

    /// Largest `|γ - γ'|` and diagonal difference against another family.
    pub fn max_abs_diff(&self, other: &GammaParams1D) -> f64 {
        assert_eq!(self.horizon, other.horizon);
        let mut m: f64 = 0.0;
        for k in 0..=self.horizon {
            m = m.max((self.diag[k] - other.diag[k]).abs());
            for j in (k + 1)..=self.horizon {
                m = m.max((self.gamma(k, j) - other.gamma(k, j)).norm());
            }
        }
        m
    }
}

/// Finite section `[s_{k,j}]_{0 <= k,j <= horizon}` of a hermitian kernel.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentKernel1D {
    entries: Mat,
}

impl MomentKernel1D {
    /// Wraps a square matrix after checking hermitian symmetry (relative 1e-10).
    pub fn new(entries: Mat) -> Result<Self> {
        if !entries.is_square() || entries.rows() == 0 {
            return Err(Error::DimensionMismatch {
                expected: entries.rows(),
                found: entries.cols(),
            });
        }
        let scale = entries.max_abs().max(1.0);
        let n = entries.rows();
        for k in 0..n {
            for j in k..n {
                if (entries[(k, j)] - entries[(j, k)].conj()).norm() > 1e-10 * scale {
                    return Err(Error::NotHermitian { k, j });
                }
            }
        }
        Ok(MomentKernel1D { entries })
    }

    pub fn from_fn(horizon: usize, f: impl FnMut(usize, usize) -> C64) -> Result<Self> {
        MomentKernel1D::new(Mat::from_fn(horizon + 1, horizon + 1, f))
    }

    #[inline]
    pub fn horizon(&self) -> usize {
        self.entries.rows() - 1
    }

    #[inline]
    pub fn get(&self, k: usize, j: usize) -> C64 {
        self.entries[(k, j)]
    }

    pub fn matrix(&self) -> &Mat {
        &self.entries
    }

    /// Determinant of the block `l..=m`.
    pub fn minor(&self, l: usize, m: usize) -> Result<f64> {
        if l > m || m > self.horizon() {
            return Err(Error::IndexOrder);
        }
        Ok(self.entries.block(l, l, m - l + 1, m - l + 1).det()?.re)
    }

    /// Shifted kernel `(a, b) -> s_{a+l, b+l}`.
    pub fn shifted(&self, l: usize) -> Result<MomentKernel1D> {
        if l > self.horizon() {
            return Err(Error::IndexOutOfRange {
                index: l,
                bound: self.horizon(),
            });
        }
        let n = self.horizon() - l + 1;
        Ok(MomentKernel1D {
            entries: self.entries.block(l, l, n, n),
        })
    }

    /// Leading `0..=horizon` section.
    pub fn truncate(&self, horizon: usize) -> MomentKernel1D {
        let n = horizon.min(self.horizon()) + 1;
        MomentKernel1D {
            entries: self.entries.leading(n, n),
        }
    }

    /// True when every leading principal minor is positive (Cholesky succeeds).
    pub fn is_strictly_positive(&self) -> bool {
        self.entries.cholesky(1e-14).is_ok()
    }
}

/// Lower triangular array `Θ` with columns `c_j(Θ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangularArray {
    entries: Mat,
}

impl TriangularArray {
    pub fn new(entries: Mat) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::DimensionMismatch {
                expected: entries.rows(),
                found: entries.cols(),
            });
        }
        if !entries.is_lower_triangular(0.0) {
            return Err(Error::Domain("array is not lower triangular"));
        }
        Ok(TriangularArray { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.rows()
    }

    pub fn get(&self, k: usize, j: usize) -> C64 {
        self.entries[(k, j)]
    }

    pub fn matrix(&self) -> &Mat {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        self.entries.column(j)
    }

    /// The kernel `K_Θ(k, j) = c_k(Θ)^* c_j(Θ)`, i.e. `Θ^* Θ`.
    pub fn kernel(&self) -> Mat {
        &self.entries.adjoint() * &self.entries
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.size()).map(|i| self.entries[(i, i)].re).collect()
    }
}

/// Julia operator `[[γ, d], [d, -conj γ]]`.
pub fn julia(g: C64) -> Result<Mat> {
    if !(g.norm() < 1.0) {
        return Err(Error::NotContractive {
            k: 0,
            j: 1,
            modulus: g.norm(),
        });
    }
    let d = re(defect(g));
    Mat::from_rows(2, 2, vec![g, d, d, -g.conj()])
}

#[inline]
fn apply_julia(v: &mut [C64], i: usize, g: C64, d: f64) {
    let (x, y) = (v[i], v[i + 1]);
    v[i] = g * x + y * d;
    v[i + 1] = x * d - g.conj() * y;
}

/// One lattice step: `v_{k,j} = G_1 ... G_n (v_{k+1,j}, 0)` with `n = j - k`
/// and `G_i` the Julia operator of `γ_{k,k+i}` acting on coordinates `i-1, i`.
/// `last` overrides `γ_{k,j}` (used by the inverse map).
fn lattice_step(p: &GammaParams1D, k: usize, j: usize, inner: &[C64], last: Option<C64>) -> Vec<C64> {
    let n = j - k;
    let mut v = Vec::with_capacity(n + 1);
    v.extend_from_slice(inner);
    v.push(ZERO);
    for i in (1..=n).rev() {
        let g = if i == n {
            last.unwrap_or_else(|| p.gamma(k, j))
        } else {
            p.gamma(k, k + i)
        };
        apply_julia(&mut v, i - 1, g, defect(g));
    }
    v
}

/// Moments `s_{k,j}` of the kernel parametrized by `p`.
pub fn moments_from_params(p: &GammaParams1D) -> MomentKernel1D {
    let h = p.horizon();
    let mut m = Mat::zeros(h + 1, h + 1);
    for j in 0..=h {
        m[(j, j)] = re(p.s(j));
        let mut v = vec![ONE];
        for k in (0..j).rev() {
            v = lattice_step(p, k, j, &v, None);
            let s = libm::sqrt(p.s(k) * p.s(j)) * v[0];
            m[(k, j)] = s;
            m[(j, k)] = s.conj();
        }
    }
    MomentKernel1D { entries: m }
}

/// The literal matrix product `U_{k,j}` of embedded Julia operators.
///
/// Built densely and recursively, `U_{k,j} = G_1 ... G_n (U_{k+1,j} ⊕ 1)`;
/// used to cross-check the lattice recursion.
pub fn julia_product(p: &GammaParams1D, k: usize, j: usize) -> Result<Mat> {
    if k > j || j > p.horizon() {
        return Err(Error::IndexOrder);
    }
    if k == j {
        return Ok(Mat::identity(1));
    }
    let n = j - k;
    let inner = julia_product(p, k + 1, j)?;
    let mut u = Mat::identity(n + 1);
    u.set_block(0, 0, &inner);
    for i in (1..=n).rev() {
        let mut g = Mat::identity(n + 1);
        g.set_block(i - 1, i - 1, &julia(p.gamma(k, k + i))?);
        u = &g * &u;
    }
    Ok(u)
}

/// Relative threshold under which a recovered parameter counts as unimodular.
pub const DEGENERACY_MARGIN: f64 = 1e-12;

/// Recovers `(diag, γ)` from a strictly positive definite kernel.
///
/// Works through offsets `j - k = 1, 2, ...`. The moment `s_{k,j}` is affine
/// in `γ_{k,j}` with slope `(s_kk s_jj)^{1/2} ∏_{k<m<j} d_{k,m} d_{m,j}`, so
/// each parameter is the residual after evaluating the lattice with
/// `γ_{k,j} = 0`, divided by that slope.
pub fn params_from_moments(kernel: &MomentKernel1D) -> Result<GammaParams1D> {
    let h = kernel.horizon();
    kernel.matrix().cholesky(1e-14)?;
    let diag: Vec<f64> = (0..=h).map(|k| kernel.get(k, k).re).collect();
    let mut p = GammaParams1D::identity(h);
    for (k, &s) in diag.iter().enumerate() {
        if !(s > 0.0) {
            return Err(Error::NonPositiveDiagonal { index: k, value: s });
        }
    }
    p.diag = diag;
    // prev[k] = v_{k, k+offset-1}
    let mut prev: Vec<Vec<C64>> = (0..=h).map(|_| vec![ONE]).collect();
    for offset in 1..=h {
        let mut next = Vec::with_capacity(h + 1 - offset);
        for k in 0..=(h - offset) {
            let j = k + offset;
            let target = kernel.get(k, j) / libm::sqrt(p.s(k) * p.s(j));
            let base = lattice_step(&p, k, j, &prev[k + 1], Some(ZERO));
            let slope: f64 = ((k + 1)..j)
                .map(|m| p.defect(k, m) * p.defect(m, j))
                .product();
            if slope < 1e-13 {
                return Err(Error::NearDegenerate {
                    k,
                    j,
                    denominator: slope,
                });
            }
            let g = (target - base[0]) / slope;
            if g.norm() >= 1.0 - DEGENERACY_MARGIN {
                return Err(Error::PositivityViolation {
                    k,
                    j,
                    modulus: g.norm(),
                });
            }
            p.gamma[k][offset - 1] = g;
            next.push(lattice_step(&p, k, j, &prev[k + 1], None));
        }
        prev = next;
    }
    Ok(p)
}

/// `D_{l,m} = det[s_{k,j}]_{l<=k,j<=m}` through the product formula
/// `∏ s_kk × ∏_{l<=j<q<=m} d_{j,q}^2`.
pub fn det_principal(p: &GammaParams1D, l: usize, m: usize) -> Result<f64> {
    if l > m {
        return Err(Error::IndexOrder);
    }
    if m > p.horizon() {
        return Err(Error::IndexOutOfRange {
            index: m,
            bound: p.horizon(),
        });
    }
    let mut d: f64 = (l..=m).map(|k| p.s(k)).product();
    for j in l..=m {
        for q in (j + 1)..=m {
            let dd = p.defect(j, q);
            d *= dd * dd;
        }
    }
    Ok(d)
}

/// The correction factor `∏_{l<=k<n<=n'<j<=m} d_{k,j}^2` in
/// `D_{l,m} D_{n,n'} = D_{l,n'} D_{n,m} × factor`.
pub fn fisher_hadamard(p: &GammaParams1D, l: usize, n: usize, n2: usize, m: usize) -> Result<f64> {
    if !(l <= n && n <= n2 && n2 <= m) {
        return Err(Error::IndexOrder);
    }
    if m > p.horizon() {
        return Err(Error::IndexOutOfRange {
            index: m,
            bound: p.horizon(),
        });
    }
    let mut f = 1.0;
    for k in l..n {
        for j in (n2 + 1)..=m {
            let dd = p.defect(k, j);
            f *= dd * dd;
        }
    }
    Ok(f)
}

/// A factor in a lattice monomial; indices are relative to the start row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    Gamma(usize, usize),
    GammaConj(usize, usize),
    Defect(usize, usize),
}

impl Factor {
    fn key(&self) -> (usize, usize, u8) {
        match *self {
            Factor::Gamma(k, j) => (k, j, 0),
            Factor::GammaConj(k, j) => (k, j, 1),
            Factor::Defect(k, j) => (k, j, 2),
        }
    }

    fn eval(&self, p: &GammaParams1D, shift: usize) -> C64 {
        match *self {
            Factor::Gamma(k, j) => p.gamma(k + shift, j + shift),
            Factor::GammaConj(k, j) => p.gamma(k + shift, j + shift).conj(),
            Factor::Defect(k, j) => re(p.defect(k + shift, j + shift)),
        }
    }
}

/// Signed product of lattice factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: i64,
    /// Sorted by `(k, j)`.
    pub factors: Vec<Factor>,
}

impl Monomial {
    /// Value of the monomial with indices shifted by `shift`.
    pub fn eval(&self, p: &GammaParams1D, shift: usize) -> C64 {
        self.factors
            .iter()
            .fold(re(self.coeff as f64), |acc, f| acc * f.eval(p, shift))
    }

    fn times(&self, f: Factor, sign: i64) -> Monomial {
        let mut factors = self.factors.clone();
        let pos = factors
            .iter()
            .position(|x| x.key() > f.key())
            .unwrap_or(factors.len());
        factors.insert(pos, f);
        Monomial {
            coeff: self.coeff * sign,
            factors,
        }
    }

    /// ASCII rendering such as `-d[0,1]*g[0,2]*conj(g[1,2])`.
    pub fn render(&self) -> String {
        let mut s = String::new();
        if self.coeff < 0 {
            s.push('-');
        }
        if self.coeff.abs() != 1 {
            let _ = write!(s, "{}*", self.coeff.abs());
        }
        for (i, f) in self.factors.iter().enumerate() {
            if i > 0 {
                s.push('*');
            }
            let _ = match *f {
                Factor::Gamma(k, j) => write!(s, "g[{k},{j}]"),
                Factor::GammaConj(k, j) => write!(s, "conj(g[{k},{j}])"),
                Factor::Defect(k, j) => write!(s, "d[{k},{j}]"),
            };
        }
        s
    }
}

type SymPoly = Vec<Monomial>;

fn sym_add(mut a: SymPoly, b: SymPoly) -> SymPoly {
    for m in b {
        if let Some(e) = a.iter_mut().find(|e| e.factors == m.factors) {
            e.coeff += m.coeff;
        } else {
            a.push(m);
        }
    }
    a.retain(|m| m.coeff != 0);
    a
}

fn sym_times(a: &SymPoly, f: Factor, sign: i64) -> SymPoly {
    a.iter().map(|m| m.times(f, sign)).collect()
}

/// Symbolic expansion of `s_{k,k+l} / (s_kk s_{k+l,k+l})^{1/2}` as a sum of
/// monomials in `γ`, `conj γ` and `d`, indices relative to `k`.
pub fn lattice_expand(l: usize) -> Vec<Monomial> {
    if l == 0 {
        return vec![Monomial {
            coeff: 1,
            factors: Vec::new(),
        }];
    }
    // v[k] for the current end index j = l, built from k = l down to 0.
    let mut v: Vec<SymPoly> = vec![vec![Monomial {
        coeff: 1,
        factors: Vec::new(),
    }]];
    for k in (0..l).rev() {
        let n = l - k;
        let mut w = v.clone();
        w.push(Vec::new());
        for i in (1..=n).rev() {
            let (x, y) = (w[i - 1].clone(), w[i].clone());
            let g = Factor::Gamma(k, k + i);
            let gc = Factor::GammaConj(k, k + i);
            let d = Factor::Defect(k, k + i);
            w[i - 1] = sym_add(sym_times(&x, g, 1), sym_times(&y, d, 1));
            w[i] = sym_add(sym_times(&x, d, 1), sym_times(&y, gc, -1));
        }
        v = w;
    }
    let mut out = v.swap_remove(0);
    out.sort_by(|a, b| {
        let ka: Vec<_> = a.factors.iter().map(Factor::key).collect();
        let kb: Vec<_> = b.factors.iter().map(Factor::key).collect();
        ka.cmp(&kb)
    });
    out
}

/// Catalan number `C_l = binom(2l, l) / (l + 1)`.
pub fn catalan_count(l: usize) -> u64 {
    let mut c: u64 = 1;
    for i in 0..l as u64 {
        // C_{i+1} = C_i * 2(2i+1) / (i+2)
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

/// Canonical spectral factor of a positive semidefinite kernel section.
///
/// Returns the lower triangular `Θ` with nonnegative diagonal such that
/// `K(k, j) = c_k(Θ)^* c_j(Θ)`, i.e. `K = Θ^* Θ`. Each diagonal entry
/// `Θ_{n,n}^2` is the Schur complement of `s_{n,n}` against the later
/// indices `n+1..=horizon`.
pub fn spectral_factor(kernel: &MomentKernel1D) -> Result<TriangularArray> {
    let n = kernel.horizon() + 1;
    let rev = |i: usize| n - 1 - i;
    let flipped = Mat::from_fn(n, n, |i, j| kernel.get(rev(i), rev(j)));
    let l = flipped.cholesky_semidefinite(1e-13)?;
    // flipped = L L^*  =>  K = P L P (P L P)^*, and Θ = (P L P)^* is lower.
    let theta = Mat::from_fn(n, n, |i, j| l[(rev(j), rev(i))].conj());
    Ok(TriangularArray { entries: theta })
}

/// Finite-horizon Szego margin `min_k s_kk^{1/2} ∏_{k<n<=horizon} d_{k,n}`.
pub fn szego_class_margin(p: &GammaParams1D) -> f64 {
    (0..=p.horizon())
        .map(|k| {
            let prod: f64 = ((k + 1)..=p.horizon()).map(|n| p.defect(k, n)).product();
            libm::sqrt(p.s(k)) * prod
        })
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    fn all_pairs(h: usize, g: f64) -> GammaParams1D {
        GammaParams1D::unit_diag(h, |_, _| re(g)).unwrap()
    }

    #[test]
    fn julia_examples() {
        let j0 = julia(ZERO).unwrap();
        assert_eq!(j0.as_slice(), &[ZERO, ONE, ONE, ZERO]);
        let j = julia(re(0.5)).unwrap();
        let r3 = libm::sqrt(3.0) / 2.0;
        assert!((j[(0, 0)] - re(0.5)).norm() < 1e-15);
        assert!((j[(0, 1)] - re(r3)).norm() < 1e-15);
        assert!((j[(1, 1)] - re(-0.5)).norm() < 1e-15);
        let ji = julia(c(0.0, 0.5)).unwrap();
        assert!((ji[(1, 1)] - c(0.0, 0.5)).norm() < 1e-15);
        assert!((ji[(0, 0)] - c(0.0, 0.5)).norm() < 1e-15);
        assert!(julia(re(1.0)).is_err());
        let u = julia(c(0.3, -0.4)).unwrap();
        assert!((&u.adjoint() * &u).max_abs_diff(&Mat::identity(2)) < 1e-15);
    }

    #[test]
    fn forward_examples() {
        let p = GammaParams1D::unit_diag(1, |_, _| re(0.5)).unwrap();
        assert!((moments_from_params(&p).get(0, 1) - re(0.5)).norm() < 1e-15);

        let p = GammaParams1D::unit_diag(2, |k, j| if (k, j) == (0, 2) { re(0.3) } else { ZERO })
            .unwrap();
        assert!((moments_from_params(&p).get(0, 2) - re(0.3)).norm() < 1e-15);

        let id = moments_from_params(&GammaParams1D::identity(5));
        assert!(id.matrix().max_abs_diff(&Mat::identity(6)) == 0.0);
    }

    #[test]
    fn forward_matches_cosine_law() {
        let (a, b, cc) = (c(0.2, 0.1), c(-0.3, 0.4), c(0.5, -0.2));
        let p = GammaParams1D::from_fn(vec![2.0, 3.0, 0.5], |k, j| match (k, j) {
            (0, 1) => a,
            (0, 2) => b,
            _ => cc,
        })
        .unwrap();
        let s = moments_from_params(&p);
        let expect = libm::sqrt(2.0 * 0.5) * (a * cc + defect(a) * b * defect(cc));
        assert!((s.get(0, 2) - expect).norm() < 1e-15);
    }

    #[test]
    fn inverse_examples() {
        let p = params_from_moments(&MomentKernel1D::new(Mat::identity(4)).unwrap()).unwrap();
        assert_eq!(p, GammaParams1D::identity(3));
        let k = MomentKernel1D::new(
            Mat::from_rows(2, 2, vec![ONE, re(0.5), re(0.5), ONE]).unwrap(),
        )
        .unwrap();
        let p = params_from_moments(&k).unwrap();
        assert!((p.gamma(0, 1) - re(0.5)).norm() < 1e-15);
    }

    #[test]
    fn inverse_rejects_indefinite() {
        let k = MomentKernel1D::new(
            Mat::from_rows(2, 2, vec![ONE, re(1.5), re(1.5), ONE]).unwrap(),
        )
        .unwrap();
        assert!(matches!(params_from_moments(&k), Err(Error::NotPositive { .. })));
    }

    #[test]
    fn det_examples() {
        let p = all_pairs(2, 0.5);
        assert!((det_principal(&p, 0, 2).unwrap() - 0.421875).abs() < 1e-15);
        let direct = moments_from_params(&p).minor(0, 2).unwrap();
        assert!((direct - 0.421875).abs() < 1e-14);
        assert_eq!(det_principal(&GammaParams1D::identity(4), 1, 3).unwrap(), 1.0);
        let p = GammaParams1D::from_fn(vec![2.0, 3.0], |_, _| re(0.1)).unwrap();
        assert_eq!(det_principal(&p, 1, 1).unwrap(), 3.0);
        assert!(det_principal(&p, 1, 0).is_err());
    }

    #[test]
    fn fisher_hadamard_trivial_cases() {
        let p = all_pairs(5, 0.4);
        assert_eq!(fisher_hadamard(&p, 2, 2, 2, 5).unwrap(), 1.0);
        assert_eq!(
            fisher_hadamard(&GammaParams1D::identity(5), 0, 2, 3, 5).unwrap(),
            1.0
        );
        assert_eq!(fisher_hadamard(&p, 0, 3, 2, 5), Err(Error::IndexOrder));
    }

    #[test]
    fn lattice_small_offsets() {
        let one = lattice_expand(1);
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].render(), "g[0,1]");
        let three: Vec<String> = lattice_expand(3).iter().map(Monomial::render).collect();
        assert_eq!(three.len(), 5);
        for t in [
            "g[0,1]*g[1,2]*g[2,3]",
            "g[0,1]*d[1,2]*g[1,3]*d[2,3]",
            "d[0,1]*g[0,2]*d[1,2]*g[2,3]",
            "-d[0,1]*g[0,2]*conj(g[1,2])*g[1,3]*d[2,3]",
            "d[0,1]*d[0,2]*g[0,3]*d[1,3]*d[2,3]",
        ] {
            assert!(three.iter().any(|x| x == t), "missing {t}: {three:?}");
        }
        assert_eq!(lattice_expand(4).len(), 14);
    }

    #[test]
    fn catalan_numbers() {
        let expect = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862];
        for (l, &e) in expect.iter().enumerate() {
            assert_eq!(catalan_count(l), e);
        }
    }

    #[test]
    fn spectral_factor_examples() {
        let id = MomentKernel1D::new(Mat::identity(3)).unwrap();
        assert_eq!(spectral_factor(&id).unwrap().matrix(), &Mat::identity(3));
        let k = MomentKernel1D::new(
            Mat::from_rows(2, 2, vec![ONE, re(0.5), re(0.5), ONE]).unwrap(),
        )
        .unwrap();
        let t = spectral_factor(&k).unwrap();
        // c_0 = (√0.75, 0.5), c_1 = (0, 1)
        assert!((t.get(0, 0) - re(libm::sqrt(0.75))).norm() < 1e-15);
        assert!((t.get(1, 0) - re(0.5)).norm() < 1e-15);
        assert!((t.get(1, 1) - ONE).norm() < 1e-15);
        assert!(t.kernel().max_abs_diff(k.matrix()) < 1e-15);
    }

    #[test]
    fn spectral_factor_semidefinite() {
        let k = MomentKernel1D::new(Mat::from_fn(3, 3, |_, _| ONE)).unwrap();
        let t = spectral_factor(&k).unwrap();
        assert!(t.kernel().max_abs_diff(k.matrix()) < 1e-12);
        let bad = MomentKernel1D::new(Mat::diag(&[ONE, re(-1.0)])).unwrap();
        assert!(spectral_factor(&bad).is_err());
    }

    #[test]
    fn szego_margin_examples() {
        assert_eq!(szego_class_margin(&GammaParams1D::identity(6)), 1.0);
        assert!((szego_class_margin(&all_pairs(4, 0.5)) - 0.5625).abs() < 1e-15);
        let p = GammaParams1D::unit_diag(3, |k, j| if (k, j) == (0, 1) { re(0.99) } else { ZERO })
            .unwrap();
        assert!((szego_class_margin(&p) - 0.141_067_359_796_658_8).abs() < 1e-12);
    }

    #[test]
    fn validation() {
        assert!(matches!(
            GammaParams1D::unit_diag(2, |_, _| re(1.0)),
            Err(Error::NotContractive { .. })
        ));
        assert!(matches!(
            GammaParams1D::from_fn(vec![1.0, 0.0], |_, _| ZERO),
            Err(Error::NonPositiveDiagonal { index: 1, .. })
        ));
    }
}
