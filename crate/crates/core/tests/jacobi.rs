mod common;

use common::*;
use ncop_core::classical::three_term_from_moments;
use ncop_core::hermitian_jacobi::*;
use ncop_core::linalg::Mat;
use ncop_core::ncpoly::NCPoly;
use ncop_core::scalar::{re, ONE, ZERO};
use ncop_core::schur_params::MomentKernel1D;
use ncop_core::words::{enumerate, Word};
use proptest::prelude::*;

fn word(s: &str, n: usize) -> Word {
    Word::parse(s, n).unwrap()
}

/// `(∅, ∅)` entry of the product of truncated Jacobi matrices at a chosen level.
fn moment_at_level(j: &JacobiFamily, sigma: &Word, level: usize) -> ncop_core::C64 {
    let n = j.alphabet();
    let size = ncop_core::words::count_up_to(n, level);
    let mut acc = Mat::identity(size);
    for &l in sigma.letters() {
        acc = &acc * &jacobi_matrix(j, l, level).unwrap();
    }
    acc[(0, 0)]
}

#[test]
fn inner_product_basics() {
    let j = free_family(2, 2, 0.0).unwrap();
    let m = moments_of(&j).unwrap();
    let one = NCPoly::constant(2, ONE);
    assert_eq!(m.inner(&one, &one).unwrap(), ONE);
    for k in 1..=2 {
        for l in 1..=2 {
            let xk = NCPoly::monomial(Word::letter(2, k).unwrap(), ONE);
            let xl = NCPoly::monomial(Word::letter(2, l).unwrap(), ONE);
            let expect = m.get(&Word::new(2, vec![l, k]).unwrap()).unwrap();
            assert_eq!(m.inner(&xk, &xl).unwrap(), expect);
            assert_eq!(expect, if k == l { ONE } else { ZERO });
        }
    }
}

#[test]
fn random_polys_have_positive_norm() {
    let mut r = rng(61);
    let j = free_family(2, 3, 0.0).unwrap();
    let m = moments_of(&j).unwrap();
    for _ in 0..20 {
        let mut p = NCPoly::zero(2);
        for w in enumerate(2, 3).unwrap() {
            p.add_term(w, gauss_c(&mut r, 1.0)).unwrap();
        }
        assert!(m.inner(&p, &p).unwrap().re > 0.0);
    }
}

#[test]
fn semicircle_pipeline_matches_three_term() {
    let j = free_family(1, 4, 0.0).unwrap();
    let m = moments_of(&j).unwrap();
    let k = MomentKernel1D::from_fn(4, |a, b| m.get(&Word::new(1, vec![1; a + b]).unwrap()).unwrap()).unwrap();
    let t = three_term_from_moments(&k).unwrap();
    let phis = gram_schmidt_nc(&m).unwrap();
    let rec = extract_jacobi(&phis, &m).unwrap();
    for n in 0..4 {
        assert!((rec.a(n, 1)[(0, 0)] - re(t.a[n])).norm() < 1e-9);
        assert!((rec.b(n, 1)[(0, 0)] - re(t.b[n])).norm() < 1e-9);
        assert!(rec.a(n, 1)[(0, 0)].norm() < 1e-12);
        assert!((rec.b(n, 1)[(0, 0)] - ONE).norm() < 1e-12);
    }
    // φ_2 = X^2 - 1
    let fav = favard_reconstruct(&j).unwrap();
    assert!((fav[2].coeff(&word("11", 1)) - ONE).norm() < 1e-15);
    assert!((fav[2].coeff(&Word::empty(1)) + ONE).norm() < 1e-15);
}

#[test]
fn free_shift_roundtrip() {
    let j = free_family(2, 3, 0.0).unwrap();
    let rep = favard_roundtrip(&j).unwrap();
    assert!(rep.jacobi_error < 1e-10);
    assert!(rep.poly_error < 1e-10);
    for k in 1..=2 {
        for l in 1..=2 {
            let v = gns_moments(&j, &Word::new(2, vec![k, l]).unwrap()).unwrap();
            assert_eq!(v, if k == l { ONE } else { ZERO });
        }
    }
    let fav = favard_reconstruct(&j).unwrap();
    assert_eq!(fav[1], NCPoly::monomial(word("1", 2), ONE));
    assert_eq!(fav[2], NCPoly::monomial(word("2", 2), ONE));
}

#[test]
fn random_roundtrips() {
    let mut r = rng(62);
    for _ in 0..10 {
        let j = jacobi(&mut r, 2, 3);
        let rep = favard_roundtrip(&j).unwrap();
        assert!(rep.jacobi_error < 1e-8, "{}", rep.jacobi_error);
        assert!(rep.poly_error < 1e-8, "{}", rep.poly_error);
    }
}

#[test]
fn extracted_blocks_and_residuals() {
    let mut r = rng(63);
    let j = jacobi(&mut r, 2, 3);
    let m = moments_of(&j).unwrap();
    let phis = gram_schmidt_nc(&m).unwrap();
    let g = {
        let n = phis.len();
        Mat::from_fn(n, n, |a, b| m.inner(&phis[b], &phis[a]).unwrap())
    };
    assert!(g.max_abs_diff(&Mat::identity(g.rows())) < 1e-8);
    let rec = extract_jacobi(&phis, &m).unwrap();
    for n in 0..3 {
        for k in 1..=2 {
            assert!(rec.a(n, k).hermitian_defect() < 1e-12);
        }
        assert!(rec.stacked_b(n).is_upper_triangular(1e-9));
    }
    assert!(recurrence_residual(&rec, &phis, &m).unwrap() < 1e-9);
}

#[test]
fn moments_are_involution_symmetric() {
    let mut r = rng(64);
    let j = jacobi(&mut r, 2, 3);
    for w in enumerate(2, 6).unwrap() {
        let a = gns_moments(&j, &w).unwrap();
        let b = gns_moments(&j, &w.involution()).unwrap();
        assert!((a - b.conj()).norm() < 1e-12);
    }
    let m = moments_of(&j).unwrap();
    // s_{ασ,τ} = s_{σ, I(α) τ}
    let words = enumerate(2, 2).unwrap();
    for a in words.iter() {
        for s in words.iter() {
            for t in words.iter() {
                let lhs = m.kernel(&a.concat(s).unwrap(), t);
                let rhs = m.kernel(s, &a.involution().concat(t).unwrap());
                if let (Ok(x), Ok(y)) = (lhs, rhs) {
                    assert!((x - y).norm() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn gns_truncation_is_exact() {
    let mut r = rng(65);
    let j = jacobi(&mut r, 2, 3);
    for w in enumerate(2, 5).unwrap() {
        let a = gns_moments(&j, &w).unwrap();
        let b = moment_at_level(&j, &w, w.len() + 2);
        assert!((a - b).norm() < 1e-12);
    }
    assert_eq!(gns_moments(&j, &Word::empty(2)).unwrap(), ONE);
}

#[test]
fn catalan_moments() {
    let j = free_family(1, 4, 0.0).unwrap();
    let expect = [1.0, 0.0, 1.0, 0.0, 2.0, 0.0, 5.0];
    for (n, &e) in expect.iter().enumerate() {
        let v = gns_moments(&j, &Word::new(1, vec![1; n]).unwrap()).unwrap();
        assert!((v - re(e)).norm() < 1e-12);
    }
}

#[test]
fn singular_b_is_rejected() {
    let mut r = rng(66);
    let j = jacobi(&mut r, 1, 2);
    let a = vec![vec![j.a(0, 1).clone()], vec![j.a(1, 1).clone()]];
    let b = vec![vec![Mat::zeros(1, 1)], vec![j.b(1, 1).clone()]];
    assert!(JacobiFamily::new(1, a, b).is_err());
}

#[test]
fn depth_zero_family() {
    let j = JacobiFamily::new(2, Vec::new(), Vec::new()).unwrap();
    let fav = favard_reconstruct(&j).unwrap();
    assert_eq!(fav, vec![NCPoly::constant(2, ONE)]);
}

#[test]
fn distinct_families_have_distinct_moments() {
    let mut r = rng(67);
    let a = moments_of(&jacobi(&mut r, 2, 2)).unwrap();
    let b = moments_of(&jacobi(&mut r, 2, 2)).unwrap();
    let diff = enumerate(2, 4)
        .unwrap()
        .iter()
        .map(|w| (a.get(w).unwrap() - b.get(w).unwrap()).norm())
        .fold(0.0, f64::max);
    assert!(diff > 1e-6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn roundtrip_property(seed in any::<u64>(), n in 1usize..3, depth in 1usize..4) {
        let mut r = rng(seed);
        let j = jacobi(&mut r, n, depth);
        let rep = favard_roundtrip(&j).unwrap();
        prop_assert!(rep.jacobi_error < 1e-8);
    }
}
