//! Several hermitian noncommuting variables: moments, orthonormal word
//! families, block three-term recurrences and their Favard converse.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::ncpoly::NCPoly;
use crate::scalar::{re, C64, ONE, ZERO};
use crate::words::{count_up_to, enumerate, level_size, Word};

/// Moments `s_σ = φ(X_σ)` for `|σ| <= 2 max_len`, indexed by graded position.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMoments {
    alphabet: usize,
    max_len: usize,
    s: Vec<C64>,
}

impl HermitianMoments {
    /// Validates `s_∅ = 1` and `s_{I(σ)} = conj(s_σ)` (tolerance 1e-12).
    pub fn new(alphabet: usize, max_len: usize, s: Vec<C64>) -> Result<Self> {
        let need = count_up_to(alphabet, 2 * max_len);
        if s.len() != need {
            return Err(Error::DimensionMismatch {
                expected: need,
                found: s.len(),
            });
        }
        if (s[0] - ONE).norm() > 1e-12 {
            return Err(Error::DiagonalNotUnit { index: 0 });
        }
        let m = HermitianMoments {
            alphabet,
            max_len,
            s,
        };
        for w in enumerate(alphabet, 2 * max_len)? {
            let p = w.position();
            let q = w.involution().position();
            if (m.s[p] - m.s[q].conj()).norm() > 1e-12 * m.s[p].norm().max(1.0) {
                return Err(Error::NotHermitian { k: p, j: q });
            }
        }
        Ok(m)
    }

    pub fn from_fn(alphabet: usize, max_len: usize, mut f: impl FnMut(&Word) -> C64) -> Result<Self> {
        let s = enumerate(alphabet, 2 * max_len)?.iter().map(&mut f).collect();
        HermitianMoments::new(alphabet, max_len, s)
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn get(&self, w: &Word) -> Result<C64> {
        if w.len() > 2 * self.max_len {
            return Err(Error::DegreeOverflow {
                degree: w.len(),
                available: 2 * self.max_len,
            });
        }
        Ok(self.s[w.position()])
    }

    /// `s_{I(α)β}`, the kernel form of the moments.
    pub fn kernel(&self, a: &Word, b: &Word) -> Result<C64> {
        self.get(&a.involution().concat(b)?)
    }

    /// `<P, Q> = Σ conj(Q_α) P_β s_{I(α)β}`.
    pub fn inner(&self, p: &NCPoly, q: &NCPoly) -> Result<C64> {
        let dp = p.degree().unwrap_or(0);
        let dq = q.degree().unwrap_or(0);
        if dp + dq > 2 * self.max_len {
            return Err(Error::DegreeOverflow {
                degree: dp + dq,
                available: 2 * self.max_len,
            });
        }
        let mut err = None;
        let v = p.inner_with(q, |a, b| {
            self.kernel(a, b).unwrap_or_else(|e| {
                err = Some(e);
                ZERO
            })
        });
        match err {
            Some(e) => Err(e),
            None => Ok(v),
        }
    }

    /// Gram matrix `[s_{I(α)β}]` on words of length at most `max_len`.
    pub fn gram(&self) -> Result<Mat> {
        let words = enumerate(self.alphabet, self.max_len)?;
        let n = words.len();
        let mut g = Mat::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                g[(a, b)] = self.kernel(&words[a], &words[b])?;
            }
        }
        Ok(g)
    }
}

/// Orthonormal `φ_α` for `|α| <= max_len`, in graded order.
pub fn gram_schmidt_nc(m: &HermitianMoments) -> Result<Vec<NCPoly>> {
    let words = enumerate(m.alphabet, m.max_len)?;
    let l = m.gram()?.cholesky(1e-13)?;
    let linv = l.lower_triangular_inverse()?;
    Ok((0..words.len())
        .map(|a| {
            let mut p = NCPoly::zero(m.alphabet);
            for (b, w) in words.iter().enumerate().take(a + 1) {
                p.add_term(w.clone(), linv[(a, b)].conj())
                    .expect("words share the alphabet");
            }
            p
        })
        .collect())
}

/// Blocks `A_{n,k}` (`N^n × N^n`) and `B_{n,k}` (`N^{n+1} × N^n`) for `n < depth`.
#[derive(Clone, Debug, PartialEq)]
pub struct JacobiFamily {
    alphabet: usize,
    // a[n][k-1], b[n][k-1]
    a: Vec<Vec<Mat>>,
    b: Vec<Vec<Mat>>,
}

/// Smallest admissible `|diag B_n|`.
pub const INVERTIBILITY_MARGIN: f64 = 1e-10;

impl JacobiFamily {
    /// Checks sizes, selfadjoint `A_{n,k}` and an upper triangular stacked
    /// `B_n` with nonzero diagonal.
    pub fn new(alphabet: usize, a: Vec<Vec<Mat>>, b: Vec<Vec<Mat>>) -> Result<Self> {
        if alphabet == 0 {
            return Err(Error::EmptyAlphabet);
        }
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch {
                expected: a.len(),
                found: b.len(),
            });
        }
        let j = JacobiFamily { alphabet, a, b };
        for n in 0..j.depth() {
            let rows = level_size(alphabet, n);
            if j.a[n].len() != alphabet || j.b[n].len() != alphabet {
                return Err(Error::DimensionMismatch {
                    expected: alphabet,
                    found: j.a[n].len().min(j.b[n].len()),
                });
            }
            for k in 0..alphabet {
                let (ak, bk) = (&j.a[n][k], &j.b[n][k]);
                if ak.rows() != rows || ak.cols() != rows {
                    return Err(Error::DimensionMismatch {
                        expected: rows,
                        found: ak.rows(),
                    });
                }
                if bk.rows() != rows * alphabet || bk.cols() != rows {
                    return Err(Error::DimensionMismatch {
                        expected: rows * alphabet,
                        found: bk.rows(),
                    });
                }
                let scale = ak.max_abs().max(1.0);
                if ak.hermitian_defect() > 1e-10 * scale {
                    return Err(Error::NotHermitian { k: n, j: k + 1 });
                }
            }
            let stacked = j.stacked_b(n);
            if !stacked.is_upper_triangular(1e-10 * stacked.max_abs().max(1.0)) {
                return Err(Error::Domain("stacked B block is not upper triangular"));
            }
            for i in 0..stacked.rows() {
                if stacked[(i, i)].norm() <= INVERTIBILITY_MARGIN {
                    return Err(Error::NotInvertible { level: n, index: i });
                }
            }
        }
        Ok(j)
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn depth(&self) -> usize {
        self.a.len()
    }

    /// `A_{n,k}`, `k` in `1..=N`.
    pub fn a(&self, n: usize, k: usize) -> &Mat {
        &self.a[n][k - 1]
    }

    /// `B_{n,k}`, `k` in `1..=N`.
    pub fn b(&self, n: usize, k: usize) -> &Mat {
        &self.b[n][k - 1]
    }

    /// `B_n = [B_{n,1} … B_{n,N}]`.
    pub fn stacked_b(&self, n: usize) -> Mat {
        let rows = level_size(self.alphabet, n + 1);
        let w = level_size(self.alphabet, n);
        let mut m = Mat::zeros(rows, rows);
        for k in 0..self.alphabet {
            m.set_block(0, k * w, &self.b[n][k]);
        }
        m
    }

    /// Largest blockwise difference against another family of equal shape.
    pub fn max_abs_diff(&self, other: &JacobiFamily) -> f64 {
        let mut m: f64 = 0.0;
        for n in 0..self.depth().min(other.depth()) {
            for k in 0..self.alphabet {
                m = m.max(self.a[n][k].max_abs_diff(&other.a[n][k]));
                m = m.max(self.b[n][k].max_abs_diff(&other.b[n][k]));
            }
        }
        m
    }
}

fn level_slice(phis: &[NCPoly], alphabet: usize, n: usize) -> &[NCPoly] {
    let start = count_up_to(alphabet, n) - level_size(alphabet, n);
    &phis[start..start + level_size(alphabet, n)]
}

/// `A_{n,k} = [<X_k φ_β, φ_α>]_{|α|=|β|=n}` and
/// `B_{n,k} = [<X_k φ_β, φ_α>]_{|α|=n+1, |β|=n}` for `n < max_len`, with the
/// recurrence residual checked below `1e-9`.
pub fn extract_jacobi(phis: &[NCPoly], m: &HermitianMoments) -> Result<JacobiFamily> {
    let n_al = m.alphabet;
    let depth = m.max_len;
    if phis.len() != count_up_to(n_al, depth) {
        return Err(Error::DimensionMismatch {
            expected: count_up_to(n_al, depth),
            found: phis.len(),
        });
    }
    let mut a = Vec::with_capacity(depth);
    let mut b = Vec::with_capacity(depth);
    for n in 0..depth {
        let cur = level_slice(phis, n_al, n);
        let next = level_slice(phis, n_al, n + 1);
        let mut an = Vec::with_capacity(n_al);
        let mut bn = Vec::with_capacity(n_al);
        for k in 1..=n_al {
            let moved: Vec<NCPoly> = cur.iter().map(|p| p.left_mul(k)).collect::<Result<_>>()?;
            let mut ak = Mat::zeros(cur.len(), cur.len());
            let mut bk = Mat::zeros(next.len(), cur.len());
            for (beta, xp) in moved.iter().enumerate() {
                for (alpha, q) in cur.iter().enumerate() {
                    ak[(alpha, beta)] = m.inner(xp, q)?;
                }
                for (alpha, q) in next.iter().enumerate() {
                    bk[(alpha, beta)] = m.inner(xp, q)?;
                }
            }
            an.push(ak);
            bn.push(bk);
        }
        a.push(an);
        b.push(bn);
    }
    let j = JacobiFamily {
        alphabet: n_al,
        a,
        b,
    };
    let r = recurrence_residual(&j, phis, m)?;
    if r > 1e-9 {
        return Err(Error::Residual {
            what: "block three-term recurrence",
            residual: r,
            tol: 1e-9,
        });
    }
    JacobiFamily::new(j.alphabet, j.a, j.b)
}

/// Largest `<·,·>`-norm of `X_k φ_β - P_{n+1} B_{n,k} - P_n A_{n,k} - P_{n-1} B_{n-1,k}^*`.
pub fn recurrence_residual(j: &JacobiFamily, phis: &[NCPoly], m: &HermitianMoments) -> Result<f64> {
    let n_al = j.alphabet;
    let mut worst: f64 = 0.0;
    for n in 0..j.depth() {
        let cur = level_slice(phis, n_al, n);
        let next = level_slice(phis, n_al, n + 1);
        for k in 1..=n_al {
            for (beta, p) in cur.iter().enumerate() {
                let mut r = p.left_mul(k)?;
                for (alpha, q) in next.iter().enumerate() {
                    r.axpy(-j.b(n, k)[(alpha, beta)], q)?;
                }
                for (alpha, q) in cur.iter().enumerate() {
                    r.axpy(-j.a(n, k)[(alpha, beta)], q)?;
                }
                if n > 0 {
                    let prev = level_slice(phis, n_al, n - 1);
                    for (g, q) in prev.iter().enumerate() {
                        r.axpy(-j.b(n - 1, k)[(beta, g)].conj(), q)?;
                    }
                }
                worst = worst.max(libm::sqrt(m.inner(&r, &r)?.re.max(0.0)));
            }
        }
    }
    Ok(worst)
}

/// Polynomials from `P_{n+1} = ([X_1 P_n … X_N P_n] - P_n A_n - P_{n-1} B_{n-1}^*) B_n^{-1}`
/// with `P_0 = 1`, `A_n = [A_{n,1} … A_{n,N}]`, followed by a phase
/// normalization making each leading coefficient positive.
pub fn favard_reconstruct(j: &JacobiFamily) -> Result<Vec<NCPoly>> {
    let n_al = j.alphabet;
    let mut out = vec![NCPoly::constant(n_al, ONE)];
    for n in 0..j.depth() {
        let w = level_size(n_al, n);
        let start = count_up_to(n_al, n) - w;
        let cur: Vec<NCPoly> = out[start..start + w].to_vec();
        let prev: Vec<NCPoly> = if n > 0 {
            let pw = level_size(n_al, n - 1);
            let ps = count_up_to(n_al, n - 1) - pw;
            out[ps..ps + pw].to_vec()
        } else {
            Vec::new()
        };
        let mut y = Vec::with_capacity(w * n_al);
        for k in 1..=n_al {
            for (beta, p) in cur.iter().enumerate() {
                let mut r = p.left_mul(k)?;
                for (alpha, q) in cur.iter().enumerate() {
                    r.axpy(-j.a(n, k)[(alpha, beta)], q)?;
                }
                for (g, q) in prev.iter().enumerate() {
                    r.axpy(-j.b(n - 1, k)[(beta, g)].conj(), q)?;
                }
                y.push(r);
            }
        }
        let binv = j.stacked_b(n).inverse()?;
        let words = enumerate(n_al, n + 1)?;
        let first = count_up_to(n_al, n + 1) - level_size(n_al, n + 1);
        for (alpha, word) in words[first..].iter().enumerate() {
            let mut p = NCPoly::zero(n_al);
            for (c, yc) in y.iter().enumerate() {
                p.axpy(binv[(c, alpha)], yc)?;
            }
            let lead = p.coeff(word);
            if lead.norm() <= INVERTIBILITY_MARGIN {
                return Err(Error::NotInvertible { level: n, index: alpha });
            }
            out.push(p.scale(lead.conj() / lead.norm()));
        }
    }
    Ok(out)
}

/// Block tridiagonal matrix of `X_k` on levels `0..=max_level`; levels at or
/// beyond the depth carry zero blocks.
pub fn jacobi_matrix(j: &JacobiFamily, k: usize, max_level: usize) -> Result<Mat> {
    if k == 0 || k > j.alphabet {
        return Err(Error::LetterOutOfRange {
            letter: k,
            alphabet: j.alphabet,
        });
    }
    let n_al = j.alphabet;
    let size = count_up_to(n_al, max_level);
    let mut m = Mat::zeros(size, size);
    for n in 0..=max_level.min(j.depth().saturating_sub(1)) {
        let off = count_up_to(n_al, n) - level_size(n_al, n);
        m.set_block(off, off, j.a(n, k));
        if n < max_level {
            let off1 = count_up_to(n_al, n + 1) - level_size(n_al, n + 1);
            m.set_block(off1, off, j.b(n, k));
            m.set_block(off, off1, &j.b(n, k).adjoint());
        }
    }
    Ok(m)
}

/// `φ(X_σ)` as the `(∅, ∅)` entry of `J_{σ_1} ⋯ J_{σ_m}`, truncated at level
/// `|σ|`; exact for `|σ| <= 2 depth`.
pub fn gns_moments(j: &JacobiFamily, sigma: &Word) -> Result<C64> {
    if sigma.alphabet() != j.alphabet {
        return Err(Error::AlphabetMismatch {
            left: j.alphabet,
            right: sigma.alphabet(),
        });
    }
    let level = sigma.len();
    let mats: Vec<Mat> = (1..=j.alphabet)
        .map(|k| jacobi_matrix(j, k, level))
        .collect::<Result<_>>()?;
    let mut v = vec![ZERO; mats[0].rows()];
    v[0] = ONE;
    for &l in sigma.letters().iter().rev() {
        v = mats[l - 1].mul_vec(&v);
    }
    Ok(v[0])
}

/// All moments `φ(X_σ)` for `|σ| <= 2 depth`.
pub fn moments_of(j: &JacobiFamily) -> Result<HermitianMoments> {
    let depth = j.depth();
    let n_al = j.alphabet;
    let mats: Vec<Mat> = (1..=n_al)
        .map(|k| jacobi_matrix(j, k, depth))
        .collect::<Result<_>>()?;
    let words = enumerate(n_al, 2 * depth)?;
    let mut e = vec![ZERO; mats[0].rows()];
    e[0] = ONE;
    // vecs[pos(σ)] = J_σ e_∅, built from the shorter suffix
    let mut vecs: Vec<Vec<C64>> = Vec::with_capacity(words.len());
    let mut s = Vec::with_capacity(words.len());
    for w in words.iter() {
        let v = if w.is_empty() {
            e.clone()
        } else {
            let rest = w.slice(1, w.len()).position();
            mats[w.letters()[0] - 1].mul_vec(&vecs[rest])
        };
        s.push(v[0]);
        vecs.push(v);
    }
    HermitianMoments::new(n_al, depth, s)
}

/// Outcome of the moment, orthonormalization and extraction pipeline.
#[derive(Clone, Debug, PartialEq)]
pub struct RoundtripReport {
    pub recovered: JacobiFamily,
    /// Largest block difference between input and recovered families.
    pub jacobi_error: f64,
    /// Largest coefficient difference between Gram-Schmidt and Favard polynomials.
    pub poly_error: f64,
}

pub fn favard_roundtrip(j: &JacobiFamily) -> Result<RoundtripReport> {
    let m = moments_of(j)?;
    let phis = gram_schmidt_nc(&m)?;
    let recovered = extract_jacobi(&phis, &m)?;
    let rebuilt = favard_reconstruct(j)?;
    let poly_error = phis
        .iter()
        .zip(rebuilt.iter())
        .map(|(a, b)| a.max_abs_diff(b))
        .fold(0.0, f64::max);
    Ok(RoundtripReport {
        jacobi_error: recovered.max_abs_diff(j),
        recovered,
        poly_error,
    })
}

/// Constant-coefficient family with `A_{n,k} = a`, `B_{n,k}` the identity
/// blocks of the stacked identity (free semicircular shifts when `a = 0`).
pub fn free_family(alphabet: usize, depth: usize, a: f64) -> Result<JacobiFamily> {
    let mut av = Vec::with_capacity(depth);
    let mut bv = Vec::with_capacity(depth);
    for n in 0..depth {
        let w = level_size(alphabet, n);
        let ident = Mat::identity(w * alphabet);
        av.push((0..alphabet).map(|_| Mat::identity(w).scale(re(a))).collect());
        bv.push((0..alphabet).map(|k| ident.block(0, k * w, w * alphabet, w)).collect());
    }
    JacobiFamily::new(alphabet, av, bv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur_params::catalan_count;

    #[test]
    fn semicircle_moments() {
        let j = free_family(1, 4, 0.0).unwrap();
        let expect = [1.0, 0.0, 1.0, 0.0, 2.0, 0.0, 5.0];
        for (n, &e) in expect.iter().enumerate() {
            let v = gns_moments(&j, &Word::new(1, vec![1; n]).unwrap()).unwrap();
            assert!((v - re(e)).norm() < 1e-12, "{n}");
        }
        let m = moments_of(&j).unwrap();
        for n in 0..=4 {
            let w = Word::new(1, vec![1; 2 * n]).unwrap();
            assert_eq!(m.get(&w).unwrap(), re(catalan_count(n) as f64));
        }
    }

    #[test]
    fn free_shift_moments() {
        let j = free_family(2, 2, 0.0).unwrap();
        for k in 1..=2 {
            for l in 1..=2 {
                let v = gns_moments(&j, &Word::new(2, vec![k, l]).unwrap()).unwrap();
                assert_eq!(v, if k == l { ONE } else { ZERO });
            }
        }
        assert_eq!(gns_moments(&j, &Word::empty(2)).unwrap(), ONE);
    }

    #[test]
    fn inner_product_basics() {
        let m = moments_of(&free_family(2, 2, 0.0).unwrap()).unwrap();
        let one = NCPoly::constant(2, ONE);
        assert_eq!(m.inner(&one, &one).unwrap(), ONE);
        let x1 = NCPoly::monomial(Word::parse("1", 2).unwrap(), ONE);
        let x2 = NCPoly::monomial(Word::parse("2", 2).unwrap(), ONE);
        assert_eq!(m.inner(&x1, &x2).unwrap(), ZERO);
        assert_eq!(m.inner(&x1, &x1).unwrap(), ONE);
        let big = NCPoly::monomial(Word::parse("1111", 2).unwrap(), ONE);
        assert!(matches!(m.inner(&big, &x1), Err(Error::DegreeOverflow { .. })));
    }

    #[test]
    fn favard_scalar_case() {
        let j = free_family(1, 2, 0.0).unwrap();
        let phis = favard_reconstruct(&j).unwrap();
        let x2 = &phis[2];
        assert_eq!(x2.coeff(&Word::new(1, vec![1, 1]).unwrap()), ONE);
        assert_eq!(x2.coeff(&Word::empty(1)), re(-1.0));
        assert_eq!(phis[1], NCPoly::monomial(Word::new(1, vec![1]).unwrap(), ONE));
        let empty = JacobiFamily::new(2, Vec::new(), Vec::new()).unwrap();
        assert_eq!(favard_reconstruct(&empty).unwrap(), vec![NCPoly::constant(2, ONE)]);
    }

    #[test]
    fn semicircle_extraction() {
        let j = free_family(1, 3, 0.0).unwrap();
        let m = moments_of(&j).unwrap();
        let phis = gram_schmidt_nc(&m).unwrap();
        let back = extract_jacobi(&phis, &m).unwrap();
        for n in 0..3 {
            assert!(back.a(n, 1)[(0, 0)].norm() < 1e-12);
            assert!((back.b(n, 1)[(0, 0)] - ONE).norm() < 1e-12);
        }
    }

    #[test]
    fn free_shift_roundtrip() {
        let j = free_family(2, 3, 0.0).unwrap();
        let r = favard_roundtrip(&j).unwrap();
        assert!(r.jacobi_error < 1e-10, "{}", r.jacobi_error);
        assert!(r.poly_error < 1e-10);
        let phis = favard_reconstruct(&j).unwrap();
        for k in 1..=2 {
            let w = Word::new(2, vec![k]).unwrap();
            assert_eq!(phis[w.position()], NCPoly::monomial(w, ONE));
        }
    }

    #[test]
    fn rejects_singular_b() {
        let mut j = free_family(2, 2, 0.0).unwrap();
        j.b[1][0][(0, 0)] = ZERO;
        assert!(matches!(
            JacobiFamily::new(2, j.a.clone(), j.b.clone()),
            Err(Error::NotInvertible { level: 1, .. })
        ));
    }
}
