//! Several isometric variables: stationary sparse kernels on words,
//! word-indexed recurrences, Kolmogorov decompositions, the associated
//! isometries and the matrix-unit witnesses.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::ncpoly::NCPoly;
use crate::scalar::{defect, re, C64, ONE, ZERO};
use crate::schur_params::{moments_from_params, params_from_moments, GammaParams1D, MomentKernel1D};
use crate::words::{count_up_to, enumerate, Word};

/// Parameters `γ_σ` for nonempty words of length at most `max_len`.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaParamsCT {
    alphabet: usize,
    max_len: usize,
    s_empty: f64,
    // gamma[pos(σ) - 1]
    gamma: Vec<C64>,
}

impl GammaParamsCT {
    pub fn from_fn(
        alphabet: usize,
        max_len: usize,
        s_empty: f64,
        mut f: impl FnMut(&Word) -> C64,
    ) -> Result<Self> {
        if alphabet == 0 {
            return Err(Error::EmptyAlphabet);
        }
        if !(s_empty > 0.0) {
            return Err(Error::NonPositiveDiagonal {
                index: 0,
                value: s_empty,
            });
        }
        let words = enumerate(alphabet, max_len)?;
        let mut gamma = Vec::with_capacity(words.len().saturating_sub(1));
        for (i, w) in words.iter().enumerate().skip(1) {
            let g = f(w);
            if !(g.norm() < 1.0) {
                return Err(Error::NotContractive {
                    k: 0,
                    j: i,
                    modulus: g.norm(),
                });
            }
            gamma.push(g);
        }
        Ok(GammaParamsCT {
            alphabet,
            max_len,
            s_empty,
            gamma,
        })
    }

    pub fn zero(alphabet: usize, max_len: usize) -> Result<Self> {
        GammaParamsCT::from_fn(alphabet, max_len, 1.0, |_| ZERO)
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn s_empty(&self) -> f64 {
        self.s_empty
    }

    /// `γ_σ` for nonempty `σ`.
    pub fn gamma(&self, w: &Word) -> C64 {
        debug_assert!(!w.is_empty() && w.len() <= self.max_len);
        self.gamma[w.position() - 1]
    }

    /// `γ` of the word at graded position `pos >= 1`.
    pub fn gamma_at(&self, pos: usize) -> C64 {
        self.gamma[pos - 1]
    }

    pub fn defect(&self, w: &Word) -> f64 {
        defect(self.gamma(w))
    }

    /// Parameters of the kernel in the graded order of all words of length
    /// at most `max_len`: `γ_{σ,σα} = γ_α`, and `0` between words that do
    /// not extend one another.
    pub fn graded_params(&self) -> Result<GammaParams1D> {
        let words = enumerate(self.alphabet, self.max_len)?;
        GammaParams1D::from_fn(vec![self.s_empty; words.len()], |a, b| {
            match words[b].strip_prefix(&words[a]) {
                Some(alpha) => self.gamma(&alpha),
                None => ZERO,
            }
        })
    }
}

/// Stationary kernel on words: `K(τ, τα)` depends only on `α`, and
/// `K(σ, τ) = 0` unless one word extends the other.
#[derive(Clone, Debug, PartialEq)]
pub struct CTKernel {
    alphabet: usize,
    max_len: usize,
    // from_empty[pos(α)] = K(∅, α)
    from_empty: Vec<C64>,
}

impl CTKernel {
    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// `K(σ, τ)`; the extension between the two words must have length at
    /// most `max_len`.
    pub fn get(&self, sigma: &Word, tau: &Word) -> Result<C64> {
        if let Some(alpha) = tau.strip_prefix(sigma) {
            return self.base(&alpha);
        }
        if let Some(alpha) = sigma.strip_prefix(tau) {
            return Ok(self.base(&alpha)?.conj());
        }
        Ok(ZERO)
    }

    fn base(&self, alpha: &Word) -> Result<C64> {
        if alpha.len() > self.max_len {
            return Err(Error::HorizonTooShort {
                needed: alpha.len(),
                available: self.max_len,
            });
        }
        Ok(self.from_empty[alpha.position()])
    }

    /// Dense section on the given words.
    pub fn dense(&self, words: &[Word]) -> Result<Mat> {
        let n = words.len();
        let mut m = Mat::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                m[(a, b)] = self.get(&words[a], &words[b])?;
            }
        }
        Ok(m)
    }

    /// All comparable pairs among words of length at most `max_len`.
    pub fn entries(&self) -> Result<Vec<(Word, Word, C64)>> {
        let words = enumerate(self.alphabet, self.max_len)?;
        let mut out = Vec::new();
        for s in words.iter() {
            for t in words.iter() {
                if s.comparable(t) {
                    out.push((s.clone(), t.clone(), self.get(s, t)?));
                }
            }
        }
        Ok(out)
    }

    /// Builds a kernel from the values `K(∅, α)`, indexed by graded position.
    pub fn from_base(alphabet: usize, max_len: usize, from_empty: Vec<C64>) -> Result<Self> {
        let need = count_up_to(alphabet, max_len);
        if from_empty.len() != need {
            return Err(Error::DimensionMismatch {
                expected: need,
                found: from_empty.len(),
            });
        }
        if from_empty[0].im.abs() > 1e-12 || !(from_empty[0].re > 0.0) {
            return Err(Error::NonPositiveDiagonal {
                index: 0,
                value: from_empty[0].re,
            });
        }
        Ok(CTKernel {
            alphabet,
            max_len,
            from_empty,
        })
    }
}

/// Forward map over the graded order of words; `K(∅, α)` is read off the
/// first row, the remaining entries follow by stationarity.
pub fn ct_kernel_from_gamma(p: &GammaParamsCT) -> Result<CTKernel> {
    let m = moments_from_params(&p.graded_params()?);
    let from_empty = (0..=m.horizon()).map(|j| m.get(0, j)).collect();
    Ok(CTKernel {
        alphabet: p.alphabet,
        max_len: p.max_len,
        from_empty,
    })
}

/// Recovers `γ_σ` by inverting the graded-order kernel.
pub fn ct_params_from_kernel(k: &CTKernel) -> Result<GammaParamsCT> {
    let words = enumerate(k.alphabet, k.max_len)?;
    let dense = MomentKernel1D::new(k.dense(&words)?)?;
    let p = params_from_moments(&dense)?;
    Ok(GammaParamsCT {
        alphabet: k.alphabet,
        max_len: k.max_len,
        s_empty: k.from_empty[0].re,
        gamma: (1..words.len()).map(|j| p.gamma(0, j)).collect(),
    })
}

/// `φ_σ` and `φ♯_σ` for every word of length at most `max_len`.
#[derive(Clone, Debug, PartialEq)]
pub struct WordPolyFamily {
    words: Vec<Word>,
    phi: Vec<NCPoly>,
    phisharp: Vec<NCPoly>,
}

impl WordPolyFamily {
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn phi(&self, w: &Word) -> &NCPoly {
        &self.phi[w.position()]
    }

    pub fn phisharp(&self, w: &Word) -> &NCPoly {
        &self.phisharp[w.position()]
    }
}

/// Word recurrence
/// `φ_{kσ} = (X_k φ_σ - γ_{kσ} φ♯_{pred(kσ)}) / d_{kσ}` and
/// `φ♯_{kσ} = (-conj γ_{kσ} X_k φ_σ + φ♯_{pred(kσ)}) / d_{kσ}`,
/// with `pred` the graded predecessor.
pub fn ct_ortho_recurrence(p: &GammaParamsCT) -> Result<WordPolyFamily> {
    let words = enumerate(p.alphabet, p.max_len)?;
    let c0 = re(1.0 / libm::sqrt(p.s_empty));
    let mut phi = vec![NCPoly::constant(p.alphabet, c0)];
    let mut phisharp = vec![NCPoly::constant(p.alphabet, c0)];
    for (pos, w) in words.iter().enumerate().skip(1) {
        let k = w.letters()[0];
        let rest = w.slice(1, w.len());
        let g = p.gamma_at(pos);
        let inv_d = re(1.0 / defect(g));
        let shifted = phi[rest.position()].left_mul(k)?;
        let prev = &phisharp[pos - 1];
        let mut a = shifted.scale(inv_d);
        a.axpy(-g * inv_d, prev)?;
        let mut b = prev.scale(inv_d);
        b.axpy(-g.conj() * inv_d, &shifted)?;
        phi.push(a);
        phisharp.push(b);
    }
    Ok(WordPolyFamily {
        words,
        phi,
        phisharp,
    })
}

/// Gram matrix `<φ_b, φ_a>` of a word family under a stationary kernel.
pub fn ct_gram(k: &CTKernel, fam: &WordPolyFamily) -> Result<Mat> {
    let n = fam.words.len();
    let kernel = k.dense(&fam.words)?;
    // row a holds the coefficients of φ_a
    let mut coeffs = Mat::zeros(n, n);
    for (a, p) in fam.phi.iter().enumerate() {
        for (w, v) in p.terms() {
            coeffs[(a, w.position())] = *v;
        }
    }
    Ok(&(&coeffs.conj() * &kernel) * &coeffs.transpose())
}

/// Column `m` of the isometry built from `γ(i) = γ_{k,k+i}`, `i = 1..=m+1`:
/// row `0` is `d_1…d_m γ_{m+1}`, row `i` is `-conj γ_i d_{i+1}…d_m γ_{m+1}`,
/// row `m+1` is `d_{m+1}`.
pub fn isometry_column(gamma: impl Fn(usize) -> C64, m: usize) -> Vec<C64> {
    let last = gamma(m + 1);
    let mut col = vec![ZERO; m + 2];
    col[m + 1] = re(defect(last));
    // tail = d_{i+1} … d_m γ_{m+1}, built from i = m downwards
    let mut tail = last;
    for i in (1..=m).rev() {
        let g = gamma(i);
        col[i] = -g.conj() * tail;
        tail *= defect(g);
    }
    col[0] = tail;
    col
}

fn require_unit_diag(p: &GammaParams1D) -> Result<()> {
    for (i, &s) in p.diag().iter().enumerate() {
        if (s - 1.0).abs() > 1e-12 {
            return Err(Error::DiagonalNotUnit { index: i });
        }
    }
    Ok(())
}

/// Truncated `W_k`: `(M+1) × M` with `M = horizon - k`.
pub fn kolmogorov_w(p: &GammaParams1D, k: usize) -> Result<Mat> {
    require_unit_diag(p)?;
    if k >= p.horizon() {
        return Err(Error::HorizonTooShort {
            needed: k + 1,
            available: p.horizon(),
        });
    }
    let m = p.horizon() - k;
    let mut w = Mat::zeros(m + 1, m);
    for col in 0..m {
        for (r, v) in isometry_column(|i| p.gamma(k, k + i), col).into_iter().enumerate() {
            w[(r, col)] = v;
        }
    }
    Ok(w)
}

/// `V(k) = W_0 W_1 … W_{k-1} e_0` for `k = 0..=up_to`; `V(k)` has `k + 1`
/// entries and is exact once `horizon >= k`.
pub fn kolmogorov_v(p: &GammaParams1D, up_to: usize) -> Result<Vec<Vec<C64>>> {
    require_unit_diag(p)?;
    if up_to > p.horizon() {
        return Err(Error::HorizonTooShort {
            needed: up_to,
            available: p.horizon(),
        });
    }
    let mut out = Vec::with_capacity(up_to + 1);
    for k in 0..=up_to {
        let mut v = vec![ONE];
        for j in (0..k).rev() {
            let mut next = vec![ZERO; v.len() + 1];
            for (m, &x) in v.iter().enumerate() {
                for (r, c) in isometry_column(|i| p.gamma(j, j + i), m).into_iter().enumerate() {
                    next[r] += c * x;
                }
            }
            v = next;
        }
        out.push(v);
    }
    Ok(out)
}

/// `<V(l), V(j)> = V(j)^* V(l)` (shorter vectors are zero-padded).
pub fn pairing(vl: &[C64], vj: &[C64]) -> C64 {
    vl.iter().zip(vj.iter()).map(|(a, b)| b.conj() * a).sum()
}

/// Truncated isometries `U(1..=N)` on words of length at most `max_len`.
#[derive(Clone, Debug, PartialEq)]
pub struct CuntzTuple {
    pub alphabet: usize,
    pub max_len: usize,
    /// Square, indexed by graded position; columns for words of length
    /// `max_len` fall outside the truncation and are left zero.
    pub u: Vec<Mat>,
    /// Number of interior columns (words of length below `max_len`).
    pub interior: usize,
}

impl CuntzTuple {
    /// `max |U(k)^* U(l) - δ_{kl} I|` on the interior columns.
    pub fn interior_residual(&self) -> f64 {
        let n = self.interior;
        let mut worst: f64 = 0.0;
        for (a, ua) in self.u.iter().enumerate() {
            for (b, ub) in self.u.iter().enumerate() {
                let prod = &ua.adjoint() * ub;
                for r in 0..n {
                    for c in 0..n {
                        let e = if a == b && r == c { ONE } else { ZERO };
                        worst = worst.max((prod[(r, c)] - e).norm());
                    }
                }
            }
        }
        worst
    }
}

/// `U(k)` has column `τ` equal to the column of the stationary isometry
/// attached to the word `kτ`.
pub fn cuntz_isometries(p: &GammaParamsCT) -> Result<CuntzTuple> {
    if (p.s_empty - 1.0).abs() > 1e-12 {
        return Err(Error::DiagonalNotUnit { index: 0 });
    }
    let words = enumerate(p.alphabet, p.max_len)?;
    let size = words.len();
    let interior = if p.max_len == 0 {
        0
    } else {
        count_up_to(p.alphabet, p.max_len - 1)
    };
    let mut u = Vec::with_capacity(p.alphabet);
    for k in 1..=p.alphabet {
        let mut m = Mat::zeros(size, size);
        for (c, tau) in words.iter().enumerate().take(interior) {
            let target = tau.prepend(k)?.position();
            let col = isometry_column(|i| p.gamma_at(i), target - 1);
            for (r, v) in col.into_iter().enumerate() {
                m[(r, c)] = v;
            }
        }
        u.push(m);
    }
    Ok(CuntzTuple {
        alphabet: p.alphabet,
        max_len: p.max_len,
        u,
        interior,
    })
}

/// Truncated product `∏_{1<=|σ|<=max_len} d_σ`.
pub fn cuntz_condition(p: &GammaParamsCT) -> f64 {
    p.gamma.iter().map(|&g| defect(g)).product()
}

/// Positions `r` (1-based) that start a nonzero chain for `τ` in the
/// tuples built from `σ`: `r + t ∈ J_{τ_{m-t}}` for `t = 0..m`, where
/// `J_s = {l : σ_{k+1-l} = s}`.
pub fn chain_starts(sigma: &Word, tau: &Word) -> Vec<usize> {
    let k = sigma.len();
    let m = tau.len();
    let s = sigma.letters();
    let t = tau.letters();
    let in_j = |l: usize, letter: usize| (1..=k).contains(&l) && s[k - l] == letter;
    (1..=k)
        .filter(|&r| (0..m).all(|i| in_j(r + i, t[m - 1 - i])))
        .collect()
}

/// `E_{a,b} ⊗ I_f` inside `2k` blocks of size `f` (1-based block indices).
fn unit(size_blocks: usize, f: usize, a: usize, b: usize, scale: f64) -> Mat {
    let mut m = Mat::zeros(size_blocks * f, size_blocks * f);
    for i in 0..f {
        m[((a - 1) * f + i, (b - 1) * f + i)] = re(scale);
    }
    m
}

/// The `2|σ|` operator tuples `Z^p = (Z^p_1, …, Z^p_N)` on `E_1^{⊕2|σ|}`,
/// `dim E_1 = dim_factor`, returned as `[p-1][s-1]`.
pub fn matrix_unit_tuples(sigma: &Word, dim_factor: usize) -> Result<Vec<Vec<Mat>>> {
    if sigma.is_empty() {
        return Err(Error::EmptyWord);
    }
    if dim_factor == 0 {
        return Err(Error::Domain("dimension factor must be positive"));
    }
    let k = sigma.len();
    let n = sigma.alphabet();
    let s = sigma.letters();
    let blocks = 2 * k;
    let h = 1.0 / libm::sqrt(2.0);
    let mut out = Vec::with_capacity(blocks);
    for p in 1..=blocks {
        let mut tuple = Vec::with_capacity(n);
        for letter in 1..=n {
            let mut adj = Mat::zeros(blocks * dim_factor, blocks * dim_factor);
            for r in 1..=k {
                let term = if p <= k {
                    (s[k - r] == letter).then(|| unit(blocks, dim_factor, r + p - 1, r + p, h))
                } else {
                    (s[r - 1] == letter)
                        .then(|| unit(blocks, dim_factor, r + p - k, r + p - k - 1, h))
                };
                if let Some(t) = term {
                    adj = &adj + &t;
                }
            }
            tuple.push(adj.adjoint());
        }
        out.push(tuple);
    }
    Ok(out)
}

/// `Z_τ = Z_{τ_1} ⋯ Z_{τ_m}` for one tuple.
pub fn word_product(tuple: &[Mat], tau: &Word) -> Mat {
    let n = tuple[0].rows();
    tau.letters()
        .iter()
        .fold(Mat::identity(n), |acc, &l| &acc * &tuple[l - 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;
    use crate::words::level;

    fn sample(n: usize, l: usize) -> GammaParamsCT {
        GammaParamsCT::from_fn(n, l, 1.0, |w| {
            let p = w.position() as f64;
            c(0.35 * libm::sin(1.3 * p), 0.3 * libm::cos(0.7 * p))
        })
        .unwrap()
    }

    #[test]
    fn trivial_kernel() {
        let k = ct_kernel_from_gamma(&GammaParamsCT::zero(2, 3).unwrap()).unwrap();
        let words = enumerate(2, 3).unwrap();
        assert_eq!(k.dense(&words).unwrap(), Mat::identity(words.len()));
    }

    #[test]
    fn one_letter_kernel() {
        let one = Word::parse("1", 2).unwrap();
        let p = GammaParamsCT::from_fn(2, 3, 1.0, |w| if *w == one { re(0.5) } else { ZERO })
            .unwrap();
        let k = ct_kernel_from_gamma(&p).unwrap();
        assert_eq!(k.get(&Word::empty(2), &one).unwrap(), re(0.5));
        for tau in enumerate(2, 2).unwrap() {
            let ext = tau.concat(&one).unwrap();
            assert!((k.get(&tau, &ext).unwrap() - re(0.5)).norm() < 1e-15);
        }
    }

    #[test]
    fn kernel_positive_and_roundtrip() {
        let p = sample(2, 3);
        let k = ct_kernel_from_gamma(&p).unwrap();
        let words = enumerate(2, 3).unwrap();
        let m = k.dense(&words).unwrap();
        assert!(m.min_hermitian_eigenvalue().unwrap() > 0.0);
        let q = ct_params_from_kernel(&k).unwrap();
        for w in words.iter().skip(1) {
            assert!((q.gamma(w) - p.gamma(w)).norm() < 1e-12);
        }
    }

    #[test]
    fn trivial_recurrence_gives_monomials() {
        let fam = ct_ortho_recurrence(&GammaParamsCT::zero(2, 3).unwrap()).unwrap();
        for w in fam.words() {
            assert_eq!(fam.phi(w), &NCPoly::monomial(w.clone(), ONE));
        }
    }

    #[test]
    fn recurrence_is_orthonormal() {
        for n in 1..=3 {
            let p = sample(n, 3);
            let k = ct_kernel_from_gamma(&p).unwrap();
            let fam = ct_ortho_recurrence(&p).unwrap();
            let g = ct_gram(&k, &fam).unwrap();
            assert!(g.max_abs_diff(&Mat::identity(g.rows())) < 1e-10, "N={n}");
        }
    }

    #[test]
    fn w_trivial_is_shift() {
        let w = kolmogorov_w(&GammaParams1D::identity(5), 1).unwrap();
        for r in 0..5 {
            for c in 0..4 {
                assert_eq!(w[(r, c)], if r == c + 1 { ONE } else { ZERO });
            }
        }
    }

    #[test]
    fn w_columns_match_julia_products() {
        let p = GammaParams1D::unit_diag(7, |k, j| c(0.1 * k as f64 - 0.2, 0.07 * j as f64)).unwrap();
        let w = kolmogorov_w(&p, 2).unwrap();
        for m in 0..5 {
            let mut v = vec![ZERO; m + 2];
            v[m] = ONE;
            for i in (1..=m + 1).rev() {
                let j = crate::schur_params::julia(p.gamma(2, 2 + i)).unwrap();
                let (x, y) = (v[i - 1], v[i]);
                v[i - 1] = j[(0, 0)] * x + j[(0, 1)] * y;
                v[i] = j[(1, 0)] * x + j[(1, 1)] * y;
            }
            for r in 0..m + 2 {
                assert!((w[(r, m)] - v[r]).norm() < 1e-14);
            }
        }
        let norms = &w.adjoint() * &w;
        assert!(norms.max_abs_diff(&Mat::identity(5)) < 1e-12);
    }

    #[test]
    fn kolmogorov_pairing() {
        let p = GammaParams1D::unit_diag(12, |_, _| re(0.5)).unwrap();
        let v = kolmogorov_v(&p, 6).unwrap();
        let k = moments_from_params(&p);
        assert!((pairing(&v[1], &v[0]) - re(0.5)).norm() < 1e-14);
        for l in 0..=6 {
            for j in 0..=6 {
                assert!((pairing(&v[l], &v[j]) - k.get(j, l)).norm() < 1e-12);
            }
        }
        let bad = GammaParams1D::from_fn(vec![2.0, 1.0], |_, _| ZERO).unwrap();
        assert!(matches!(kolmogorov_v(&bad, 1), Err(Error::DiagonalNotUnit { .. })));
    }

    #[test]
    fn cuntz_trivial_is_shift() {
        let t = cuntz_isometries(&GammaParamsCT::zero(2, 3).unwrap()).unwrap();
        let words = enumerate(2, 3).unwrap();
        for k in 1..=2 {
            for (c, tau) in words.iter().enumerate().take(t.interior) {
                let target = tau.prepend(k).unwrap().position();
                for r in 0..words.len() {
                    assert_eq!(t.u[k - 1][(r, c)], if r == target { ONE } else { ZERO });
                }
            }
        }
        assert_eq!(t.interior_residual(), 0.0);
        assert_eq!(cuntz_condition(&GammaParamsCT::zero(2, 3).unwrap()), 1.0);
    }

    #[test]
    fn cuntz_interior_relations() {
        let t = cuntz_isometries(&sample(2, 4)).unwrap();
        assert!(t.interior_residual() < 1e-12);
    }

    #[test]
    fn matrix_units_single_letter() {
        let z = matrix_unit_tuples(&Word::parse("1", 1).unwrap(), 1).unwrap();
        assert_eq!(z.len(), 2);
        let adj = z[0][0].adjoint();
        let h = 1.0 / libm::sqrt(2.0);
        assert_eq!(adj, unit(2, 1, 1, 2, h));
    }

    #[test]
    fn matrix_units_norm_half() {
        let sigma = Word::parse("12", 2).unwrap();
        for tuple in matrix_unit_tuples(&sigma, 2).unwrap() {
            let mut s = Mat::zeros(8, 8);
            for z in tuple.iter() {
                s = &s + &(z * &z.adjoint());
            }
            let top = s.hermitian_eigenvalues().unwrap().into_iter().fold(0.0, f64::max);
            assert!((top - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn chain_start_sets() {
        let sigma = Word::parse("112", 2).unwrap();
        for tau in level(2, 3).unwrap() {
            let a = chain_starts(&sigma, &tau);
            if tau == sigma {
                assert_eq!(a, vec![1]);
            } else {
                assert!(a.is_empty(), "{tau}");
            }
        }
    }
}
