//! Szego-type reproducing kernels at finite truncation: the diagonal kernel
//! on sequences in the unit disk, the operator kernel on row contractions,
//! and its transport to the Siegel upper half-space.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::{c, C64, ONE, ZERO};
use crate::words::{enumerate, Word};

/// Sequence `z_0..=z_horizon` with every `|z_n| < 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct PointB1 {
    z: Vec<C64>,
}

impl PointB1 {
    pub fn new(z: Vec<C64>) -> Result<Self> {
        if z.is_empty() {
            return Err(Error::Domain("empty sequence"));
        }
        for z_n in z.iter() {
            if !(z_n.norm() < 1.0) {
                return Err(Error::NotInBall {
                    margin: 1.0 - z_n.norm(),
                });
            }
        }
        Ok(PointB1 { z })
    }

    pub fn horizon(&self) -> usize {
        self.z.len() - 1
    }

    pub fn get(&self, n: usize) -> C64 {
        self.z[n]
    }
}

/// Finite lower triangular element, column `n` supported on rows `>= n`.
#[derive(Clone, Debug, PartialEq)]
pub struct H2Element {
    entries: Mat,
}

impl H2Element {
    pub fn new(entries: Mat) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::DimensionMismatch {
                expected: entries.rows(),
                found: entries.cols(),
            });
        }
        if !entries.is_lower_triangular(0.0) {
            return Err(Error::Domain("element is not lower triangular"));
        }
        Ok(H2Element { entries })
    }

    pub fn matrix(&self) -> &Mat {
        &self.entries
    }

    pub fn horizon(&self) -> usize {
        self.entries.rows() - 1
    }
}

/// `<Θ, Ψ>` in the diagonal module: entry `n` is `c_n(Ψ)^* c_n(Θ)`.
pub fn module_inner(theta: &H2Element, psi: &H2Element) -> Result<Vec<C64>> {
    if theta.horizon() != psi.horizon() {
        return Err(Error::DimensionMismatch {
            expected: theta.horizon(),
            found: psi.horizon(),
        });
    }
    let n = theta.horizon() + 1;
    Ok((0..n)
        .map(|col| {
            (col..n)
                .map(|r| psi.entries[(r, col)].conj() * theta.entries[(r, col)])
                .sum()
        })
        .collect())
}

/// `S_z` with entry `(k, j) = conj(z_j) … conj(z_{k-1})` for `k >= j`.
pub fn s_z_array(z: &PointB1) -> H2Element {
    let n = z.horizon() + 1;
    let mut m = Mat::zeros(n, n);
    for j in 0..n {
        let mut acc = ONE;
        m[(j, j)] = acc;
        for k in (j + 1)..n {
            acc *= z.get(k - 1).conj();
            m[(k, j)] = acc;
        }
    }
    H2Element { entries: m }
}

/// `S(z, w) = <S_w, S_z>`, entry `n` equal to `c_n(S_z)^* c_n(S_w)`.
pub fn szego_eval(z: &PointB1, w: &PointB1) -> Result<Vec<C64>> {
    if z.horizon() != w.horizon() {
        return Err(Error::DimensionMismatch {
            expected: z.horizon(),
            found: w.horizon(),
        });
    }
    module_inner(&s_z_array(w), &s_z_array(z))
}

/// `Θ(z)_n = Θ_{n,n} + Σ_{k>n} Θ_{k,n} z_n … z_{k-1}`.
pub fn h2_eval(theta: &H2Element, z: &PointB1) -> Result<Vec<C64>> {
    if theta.horizon() != z.horizon() {
        return Err(Error::DimensionMismatch {
            expected: theta.horizon(),
            found: z.horizon(),
        });
    }
    let n = z.horizon() + 1;
    Ok((0..n)
        .map(|col| {
            let mut acc = ZERO;
            let mut prod = ONE;
            for k in col..n {
                if k > col {
                    prod *= z.get(k - 1);
                }
                acc += theta.entries[(k, col)] * prod;
            }
            acc
        })
        .collect())
}

/// Tuple `(Z_1, …, Z_N)` of square matrices on a common space.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorPoint {
    z: Vec<Mat>,
}

impl OperatorPoint {
    /// Any tuple of equal-size square matrices.
    pub fn new(z: Vec<Mat>) -> Result<Self> {
        let d = match z.first() {
            Some(m) => m.rows(),
            None => return Err(Error::EmptyAlphabet),
        };
        for m in z.iter() {
            if !m.is_square() || m.rows() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: m.rows(),
                });
            }
        }
        Ok(OperatorPoint { z })
    }

    /// A tuple with `Σ Z_k Z_k^* < I` (margin above 1e-12).
    pub fn in_ball(z: Vec<Mat>) -> Result<Self> {
        let p = OperatorPoint::new(z)?;
        let margin = p.ball_margin()?;
        if !(margin > 1e-12) {
            return Err(Error::NotInBall { margin });
        }
        Ok(p)
    }

    pub fn alphabet(&self) -> usize {
        self.z.len()
    }

    pub fn dim(&self) -> usize {
        self.z[0].rows()
    }

    pub fn get(&self, k: usize) -> &Mat {
        &self.z[k]
    }

    pub fn components(&self) -> &[Mat] {
        &self.z
    }

    /// Minimum eigenvalue of `I - Σ Z_k Z_k^*`.
    pub fn ball_margin(&self) -> Result<f64> {
        let mut m = Mat::identity(self.dim());
        for zk in self.z.iter() {
            m = &m - &(zk * &zk.adjoint());
        }
        m.min_hermitian_eigenvalue()
    }

    /// Minimum eigenvalue of `(W_N - W_N^*)/(2i) - Σ_{k<N} W_k W_k^*`.
    pub fn half_space_margin(&self) -> Result<f64> {
        let n = self.z.len();
        let last = &self.z[n - 1];
        let mut m = (last - &last.adjoint()).scale(c(0.0, -0.5));
        for wk in self.z[..n - 1].iter() {
            m = &m - &(wk * &wk.adjoint());
        }
        m.min_hermitian_eigenvalue()
    }

    /// `Z_σ = Z_{σ_1} ⋯ Z_{σ_m}`.
    pub fn word(&self, sigma: &Word) -> Mat {
        sigma
            .letters()
            .iter()
            .fold(Mat::identity(self.dim()), |acc, &l| &acc * &self.z[l - 1])
    }
}

/// Stacked column `S_Z = [(Z_σ)^*]_{|σ| <= max_len}` in graded order.
pub fn fock_szego(z: &OperatorPoint, max_len: usize) -> Result<Mat> {
    let words = enumerate(z.alphabet(), max_len)?;
    let d = z.dim();
    let mut s = Mat::zeros(words.len() * d, d);
    for (i, w) in words.iter().enumerate() {
        s.set_block(i * d, 0, &z.word(w).adjoint());
    }
    Ok(s)
}

/// `S(Z, W) = S_Z^* S_W`.
pub fn fock_kernel(z: &OperatorPoint, w: &OperatorPoint, max_len: usize) -> Result<Mat> {
    if z.alphabet() != w.alphabet() || z.dim() != w.dim() {
        return Err(Error::DimensionMismatch {
            expected: z.dim(),
            found: w.dim(),
        });
    }
    Ok(&fock_szego(z, max_len)?.adjoint() * &fock_szego(w, max_len)?)
}

/// `Θ(Z) = Σ_σ Z_σ Θ_σ` for `Θ` given as stacked blocks in graded order.
pub fn fock_eval(theta: &Mat, z: &OperatorPoint, max_len: usize) -> Result<Mat> {
    let words = enumerate(z.alphabet(), max_len)?;
    let d = z.dim();
    if theta.rows() != words.len() * d {
        return Err(Error::DimensionMismatch {
            expected: words.len() * d,
            found: theta.rows(),
        });
    }
    let mut out = Mat::zeros(d, theta.cols());
    for (i, w) in words.iter().enumerate() {
        let block = theta.block(i * d, 0, d, theta.cols());
        out = &out + &(&z.word(w) * &block);
    }
    Ok(out)
}

/// `C(Z) = ((I+Z_N)^{-1} Z_1, …, (I+Z_N)^{-1} Z_{N-1}, i (I+Z_N)^{-1}(I-Z_N))`.
pub fn cayley(z: &OperatorPoint) -> Result<OperatorPoint> {
    let n = z.alphabet();
    let d = z.dim();
    let id = Mat::identity(d);
    let last = z.get(n - 1);
    let m = (&id + last).inverse()?;
    let mut out: Vec<Mat> = z.z[..n - 1].iter().map(|zk| &m * zk).collect();
    out.push((&m * &(&id - last)).scale(c(0.0, 1.0)));
    OperatorPoint::new(out)
}

/// Inverse transform: `Z_N = (W_N + iI)^{-1}(iI - W_N)` and
/// `Z_k = 2i (W_N + iI)^{-1} W_k`.
pub fn cayley_inverse(w: &OperatorPoint) -> Result<OperatorPoint> {
    let margin = w.half_space_margin()?;
    if !(margin > 1e-12) {
        return Err(Error::NotInHalfSpace { margin });
    }
    let n = w.alphabet();
    let d = w.dim();
    let iid = Mat::identity(d).scale(c(0.0, 1.0));
    let last = w.get(n - 1);
    let m = (last + &iid).inverse()?;
    let two_i = c(0.0, 2.0);
    let mut out: Vec<Mat> = w.z[..n - 1].iter().map(|wk| (&m * wk).scale(two_i)).collect();
    out.push(&m * &(&iid - last));
    OperatorPoint::new(out)
}

/// `F_W = 2 · blockdiag(-iI + W_N^*) · S_{C^{-1}(W)}`.
pub fn siegel_section(w: &OperatorPoint, max_len: usize) -> Result<Mat> {
    let z = cayley_inverse(w)?;
    let s = fock_szego(&z, max_len)?;
    let d = w.dim();
    let corner = (&w.get(w.alphabet() - 1).adjoint() - &Mat::identity(d).scale(c(0.0, 1.0)))
        .scale(c(2.0, 0.0));
    let blocks = s.rows() / d;
    let mut f = Mat::zeros(s.rows(), d);
    for b in 0..blocks {
        f.set_block(b * d, 0, &(&corner * &s.block(b * d, 0, d, d)));
    }
    Ok(f)
}

/// `S(W, W') = F_W^* F_{W'}`.
pub fn siegel_kernel(w: &OperatorPoint, w2: &OperatorPoint, max_len: usize) -> Result<Mat> {
    Ok(&siegel_section(w, max_len)?.adjoint() * &siegel_section(w2, max_len)?)
}

/// Block matrix `[kernel(p_i, p_j)]` over a sample.
pub fn block_gram<P>(points: &[P], mut kernel: impl FnMut(&P, &P) -> Result<Mat>) -> Result<Mat> {
    let blocks: Vec<Vec<Mat>> = points
        .iter()
        .map(|a| points.iter().map(|b| kernel(a, b)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let d = blocks.first().map(|r| r[0].rows()).unwrap_or(0);
    let n = points.len();
    let mut g = Mat::zeros(n * d, n * d);
    for (i, row) in blocks.iter().enumerate() {
        for (j, b) in row.iter().enumerate() {
            g.set_block(i * d, j * d, b);
        }
    }
    Ok(g)
}

/// Per-index matrices `[S(z^i, z^j)_n]_{i,j}` for a sample of sequences.
pub fn szego_sample_blocks(points: &[PointB1]) -> Result<Vec<Mat>> {
    let m = points.len();
    let h = points.first().map(|p| p.horizon()).unwrap_or(0);
    let mut out = vec![Mat::zeros(m, m); h + 1];
    for (i, a) in points.iter().enumerate() {
        for (j, b) in points.iter().enumerate() {
            for (n, v) in szego_eval(a, b)?.into_iter().enumerate() {
                out[n][(i, j)] = v;
            }
        }
    }
    Ok(out)
}
