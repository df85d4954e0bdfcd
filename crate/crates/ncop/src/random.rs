//! Seeded samplers for commands run without an input file.

use ncop_core::fock::GammaParamsCT;
use ncop_core::hermitian_jacobi::JacobiFamily;
use ncop_core::linalg::Mat;
use ncop_core::schur_params::GammaParams1D;
use ncop_core::szego_kernels::{OperatorPoint, PointB1};
use ncop_core::words::level_size;
use ncop_core::{Result, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Rand = ChaCha8Rng;

pub fn rng(seed: u64) -> Rand {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform on the closed disc of radius `r`.
pub fn disc(rng: &mut Rand, r: f64) -> C64 {
    let rad = r * rng.gen::<f64>().sqrt();
    C64::from_polar(rad, rng.gen_range(0.0..core::f64::consts::TAU))
}

/// Uniform on the square `[-s, s]^2`.
pub fn square(rng: &mut Rand, s: f64) -> C64 {
    C64::new(rng.gen_range(-s..=s), rng.gen_range(-s..=s))
}

pub fn params(rng: &mut Rand, horizon: usize, max_mod: f64) -> Result<GammaParams1D> {
    let diag: Vec<f64> = (0..=horizon).map(|_| rng.gen_range(0.5..2.0)).collect();
    let n = horizon + 1;
    let g: Vec<C64> = (0..n * n).map(|_| disc(rng, max_mod)).collect();
    GammaParams1D::from_fn(diag, |k, j| g[k * n + j])
}

/// Off-diagonal parameters decaying like `0.5^{j-k-1}`.
pub fn szego_params(rng: &mut Rand, horizon: usize, max_mod: f64) -> Result<GammaParams1D> {
    let diag: Vec<f64> = (0..=horizon).map(|_| rng.gen_range(0.5..2.0)).collect();
    let n = horizon + 1;
    let g: Vec<C64> = (0..n * n).map(|_| disc(rng, max_mod)).collect();
    GammaParams1D::from_fn(diag, |k, j| g[k * n + j] * 0.5f64.powi((j - k - 1) as i32))
}

pub fn ct_params(
    rng: &mut Rand,
    alphabet: usize,
    max_len: usize,
    max_mod: f64,
) -> Result<GammaParamsCT> {
    GammaParamsCT::from_fn(alphabet, max_len, 1.0, |_| disc(rng, max_mod))
}

pub fn sequence(rng: &mut Rand, horizon: usize, r: f64) -> Result<PointB1> {
    PointB1::new((0..=horizon).map(|_| disc(rng, r)).collect())
}

/// Matrix tuple scaled so that the top eigenvalue of `Σ Z_k Z_k^*` is `t`.
pub fn ball_point(rng: &mut Rand, alphabet: usize, dim: usize, t: f64) -> Result<OperatorPoint> {
    let raw: Vec<Mat> = (0..alphabet)
        .map(|_| Mat::from_fn(dim, dim, |_, _| square(rng, 1.0)))
        .collect();
    let mut row = Mat::zeros(dim, dim);
    for z in raw.iter() {
        row = &row + &(z * &z.adjoint());
    }
    let top = row.hermitian_eigenvalues()?.into_iter().fold(0.0, f64::max);
    let s = C64::new((t / top).sqrt(), 0.0);
    OperatorPoint::in_ball(raw.iter().map(|z| z.scale(s)).collect())
}

/// Hermitian `A` blocks, upper triangular stacked `B` with diagonal in `[0.5, 1.5]`.
pub fn jacobi(rng: &mut Rand, alphabet: usize, depth: usize) -> Result<JacobiFamily> {
    let mut a = Vec::with_capacity(depth);
    let mut b = Vec::with_capacity(depth);
    for n in 0..depth {
        let w = level_size(alphabet, n);
        let rows = w * alphabet;
        let level_a = (0..alphabet)
            .map(|_| {
                let m = Mat::from_fn(w, w, |_, _| square(rng, 0.3));
                (&m + &m.adjoint()).scale(C64::new(0.5, 0.0))
            })
            .collect();
        let stacked = Mat::from_fn(rows, rows, |r, c| match r.cmp(&c) {
            core::cmp::Ordering::Less => square(rng, 0.3),
            core::cmp::Ordering::Equal => C64::new(rng.gen_range(0.5..1.5), 0.0),
            core::cmp::Ordering::Greater => C64::new(0.0, 0.0),
        });
        a.push(level_a);
        b.push(
            (0..alphabet)
                .map(|k| stacked.block(0, k * w, rows, w))
                .collect(),
        );
    }
    JacobiFamily::new(alphabet, a, b)
}
