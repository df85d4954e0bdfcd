mod common;

use common::*;
use ncop_core::linalg::Mat;
use ncop_core::scalar::{c, re};
use ncop_core::schur_params::*;
use proptest::prelude::*;

fn principal(k: &MomentKernel1D, l: usize, m: usize) -> Mat {
    Mat::from_fn(m - l + 1, m - l + 1, |i, j| k.get(l + i, l + j))
}

#[test]
fn roundtrip_random_horizons() {
    let mut r = rng(11);
    for h in [1, 2, 5, 9, 12] {
        for _ in 0..10 {
            let p = params(&mut r, h, 0.9);
            let q = params_from_moments(&moments_from_params(&p)).unwrap();
            assert!(p.max_abs_diff(&q) < 1e-9);
        }
    }
}

#[test]
fn forward_map_is_positive_definite() {
    let mut r = rng(12);
    for _ in 0..20 {
        let p = params(&mut r, 8, 0.95);
        let k = moments_from_params(&p);
        assert!(na_min_eig(k.matrix()) > 0.0);
        assert!(k.is_strictly_positive());
    }
}

#[test]
fn determinants_match_direct_evaluation() {
    let mut r = rng(13);
    for _ in 0..10 {
        let p = params(&mut r, 7, 0.8);
        let k = moments_from_params(&p);
        for l in 0..=7 {
            for m in l..=7 {
                let direct = na_det(&principal(&k, l, m));
                let formula = det_principal(&p, l, m).unwrap();
                assert!(direct.im.abs() < 1e-9 * formula);
                assert!((direct.re - formula).abs() < 1e-9 * formula);
            }
        }
    }
}

#[test]
fn symbolic_expansion_lengths() {
    let expected = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430];
    for (l, &e) in expected.iter().enumerate() {
        assert_eq!(catalan_count(l), e);
        assert_eq!(lattice_expand(l).len() as u64, e);
    }
}

#[test]
fn symbolic_expansion_of_third_entry() {
    let got: Vec<String> = lattice_expand(3).iter().map(Monomial::render).collect();
    let expected = [
        "g[0,1]*g[1,2]*g[2,3]",
        "g[0,1]*d[1,2]*g[1,3]*d[2,3]",
        "-d[0,1]*g[0,2]*conj(g[1,2])*g[1,3]*d[2,3]",
        "d[0,1]*g[0,2]*d[1,2]*g[2,3]",
        "d[0,1]*d[0,2]*g[0,3]*d[1,3]*d[2,3]",
    ];
    assert_eq!(got, expected);
}

#[test]
fn symbolic_expansion_evaluates_to_forward_map() {
    let mut r = rng(14);
    let p = params(&mut r, 9, 0.9);
    let k = moments_from_params(&p);
    for l in 1..=6 {
        for start in 0..=(9 - l) {
            let v: ncop_core::C64 = lattice_expand(l).iter().map(|m| m.eval(&p, start)).sum();
            let norm = (p.s(start) * p.s(start + l)).sqrt();
            assert!((v * norm - k.get(start, start + l)).norm() < 1e-12);
        }
    }
}

#[test]
fn spectral_factor_reproduces_kernel() {
    let mut r = rng(15);
    let p = params(&mut r, 6, 0.7);
    let k = moments_from_params(&p);
    let theta = spectral_factor(&k).unwrap();
    assert!(theta.matrix().is_lower_triangular(0.0));
    assert!(theta.kernel().max_abs_diff(k.matrix()) < 1e-12);
    for v in theta.diagonal() {
        assert!(v > 0.0);
    }
    // the last diagonal entry carries no later indices
    assert!((theta.diagonal()[6] - p.s(6).sqrt()).abs() < 1e-12);
}

#[test]
fn near_unit_parameter_is_rejected() {
    let p = GammaParams1D::unit_diag(2, |k, j| if (k, j) == (0, 1) { c(0.999_999, 0.0) } else { re(0.0) }).unwrap();
    let k = moments_from_params(&p);
    let q = params_from_moments(&k).unwrap();
    assert!((q.gamma(0, 1) - p.gamma(0, 1)).norm() < 1e-9);
    let bad = MomentKernel1D::from_fn(1, |a, b| if a == b { re(1.0) } else { re(1.0) }).unwrap();
    assert!(params_from_moments(&bad).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn roundtrip_property(seed in any::<u64>(), h in 1usize..8, m in 0.0f64..0.95) {
        let mut r = rng(seed);
        let p = params(&mut r, h, m);
        let q = params_from_moments(&moments_from_params(&p)).unwrap();
        prop_assert!(p.max_abs_diff(&q) < 1e-8);
    }

    #[test]
    fn fisher_hadamard_identity(seed in any::<u64>(), idx in proptest::collection::vec(0usize..=7, 4)) {
        let mut r = rng(seed);
        let p = params(&mut r, 7, 0.9);
        let mut i = idx.clone();
        i.sort();
        let (l, n, n2, m) = (i[0], i[1], i[2], i[3]);
        let lhs = det_principal(&p, l, m).unwrap() * det_principal(&p, n, n2).unwrap();
        let rhs = det_principal(&p, l, n2).unwrap() * det_principal(&p, n, m).unwrap();
        let f = fisher_hadamard(&p, l, n, n2, m).unwrap();
        prop_assert!(f <= 1.0);
        prop_assert!((lhs - rhs * f).abs() <= 1e-10 * lhs.abs().max(1e-300));
    }

    #[test]
    fn truncation_commutes_with_forward_map(seed in any::<u64>(), h in 2usize..9) {
        let mut r = rng(seed);
        let p = params(&mut r, h, 0.9);
        let k = moments_from_params(&p).truncate(h - 1);
        let k2 = moments_from_params(&p.truncate(h - 1));
        prop_assert!(k.matrix().max_abs_diff(k2.matrix()) < 1e-13);
    }
}
