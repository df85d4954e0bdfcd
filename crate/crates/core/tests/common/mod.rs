#![allow(dead_code)]

use ncop_core::fock::GammaParamsCT;
use ncop_core::hermitian_jacobi::JacobiFamily;
use ncop_core::linalg::Mat;
use ncop_core::schur_params::GammaParams1D;
use ncop_core::szego_kernels::OperatorPoint;
use ncop_core::words::level_size;
use ncop_core::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point of the closed disc of radius `r`.
pub fn disc(rng: &mut impl Rng, r: f64) -> C64 {
    let rad = r * rng.gen::<f64>().sqrt();
    C64::from_polar(rad, rng.gen_range(0.0..core::f64::consts::TAU))
}

pub fn gauss_c(rng: &mut impl Rng, scale: f64) -> C64 {
    C64::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

pub fn params(rng: &mut impl Rng, horizon: usize, max_mod: f64) -> GammaParams1D {
    let diag: Vec<f64> = (0..=horizon).map(|_| rng.gen_range(0.5..2.0)).collect();
    let gammas: Vec<C64> = (0..(horizon + 1) * (horizon + 1)).map(|_| disc(rng, max_mod)).collect();
    GammaParams1D::from_fn(diag, |k, j| gammas[k * (horizon + 1) + j]).unwrap()
}

pub fn unit_params(rng: &mut impl Rng, horizon: usize, max_mod: f64) -> GammaParams1D {
    let gammas: Vec<C64> = (0..(horizon + 1) * (horizon + 1)).map(|_| disc(rng, max_mod)).collect();
    GammaParams1D::unit_diag(horizon, |k, j| gammas[k * (horizon + 1) + j]).unwrap()
}

/// Parameters decaying geometrically away from the diagonal, so that the
/// defect products stay bounded below.
pub fn szego_params(rng: &mut impl Rng, horizon: usize) -> GammaParams1D {
    let diag: Vec<f64> = (0..=horizon).map(|_| rng.gen_range(0.5..2.0)).collect();
    let gammas: Vec<C64> = (0..(horizon + 1) * (horizon + 1)).map(|_| disc(rng, 0.6)).collect();
    GammaParams1D::from_fn(diag, |k, j| {
        gammas[k * (horizon + 1) + j] * 0.5f64.powi((j - k) as i32 - 1)
    })
    .unwrap()
}

pub fn ct_params(rng: &mut impl Rng, alphabet: usize, max_len: usize, max_mod: f64) -> GammaParamsCT {
    GammaParamsCT::from_fn(alphabet, max_len, 1.0, |_| disc(rng, max_mod)).unwrap()
}

/// Random matrix tuple with `max eig Σ Z_k Z_k^* = t`.
pub fn ball_point(rng: &mut impl Rng, alphabet: usize, dim: usize, t: f64) -> OperatorPoint {
    let raw: Vec<Mat> = (0..alphabet)
        .map(|_| Mat::from_fn(dim, dim, |_, _| gauss_c(rng, 1.0)))
        .collect();
    let mut row = Mat::zeros(dim, dim);
    for z in raw.iter() {
        row = &row + &(z * &z.adjoint());
    }
    let top = row.hermitian_eigenvalues().unwrap().into_iter().fold(0.0, f64::max);
    let s = C64::new((t / top).sqrt(), 0.0);
    OperatorPoint::in_ball(raw.iter().map(|z| z.scale(s)).collect()).unwrap()
}

/// Random Jacobi family: hermitian `A`, upper triangular stacked `B` with
/// diagonal in `[0.5, 1.5]`.
pub fn jacobi(rng: &mut impl Rng, alphabet: usize, depth: usize) -> JacobiFamily {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for n in 0..depth {
        let w = level_size(alphabet, n);
        let rows = w * alphabet;
        let mut level_a = Vec::new();
        for _ in 0..alphabet {
            let m = Mat::from_fn(w, w, |_, _| gauss_c(rng, 0.3));
            level_a.push((&m + &m.adjoint()).scale(C64::new(0.5, 0.0)));
        }
        let stacked = Mat::from_fn(rows, rows, |r, c| match r.cmp(&c) {
            core::cmp::Ordering::Less => gauss_c(rng, 0.3),
            core::cmp::Ordering::Equal => C64::new(rng.gen_range(0.5..1.5), 0.0),
            core::cmp::Ordering::Greater => C64::new(0.0, 0.0),
        });
        a.push(level_a);
        b.push((0..alphabet).map(|k| stacked.block(0, k * w, rows, w)).collect());
    }
    JacobiFamily::new(alphabet, a, b).unwrap()
}

/// Hermitian matrix as an `nalgebra` matrix for eigenvalue and determinant oracles.
pub fn to_na(m: &Mat) -> nalgebra::DMatrix<nalgebra::Complex<f64>> {
    nalgebra::DMatrix::from_fn(m.rows(), m.cols(), |r, c| {
        let v = m[(r, c)];
        nalgebra::Complex::new(v.re, v.im)
    })
}

pub fn na_min_eig(m: &Mat) -> f64 {
    let h = to_na(&(m + &m.adjoint()).scale(C64::new(0.5, 0.0)));
    h.symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min)
}

pub fn na_det(m: &Mat) -> C64 {
    let d = to_na(m).determinant();
    C64::new(d.re, d.im)
}
