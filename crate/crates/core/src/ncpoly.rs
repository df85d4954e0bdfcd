//! Polynomials in noncommuting variables `X_1..X_N`.

use alloc::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{C64, ZERO};
use crate::words::Word;

/// Finite linear combination of words; absent words have coefficient zero.
#[derive(Clone, Debug, PartialEq)]
pub struct NCPoly {
    alphabet: usize,
    terms: BTreeMap<Word, C64>,
}

impl NCPoly {
    pub fn zero(alphabet: usize) -> Self {
        NCPoly {
            alphabet,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(alphabet: usize, c: C64) -> Self {
        NCPoly::monomial(Word::empty(alphabet), c)
    }

    pub fn monomial(w: Word, c: C64) -> Self {
        let mut p = NCPoly::zero(w.alphabet());
        if c != ZERO {
            p.terms.insert(w, c);
        }
        p
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn coeff(&self, w: &Word) -> C64 {
        self.terms.get(w).copied().unwrap_or(ZERO)
    }

    /// Nonzero terms in graded order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Length of the largest word present, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    /// Adds `c` to the coefficient of `w`.
    pub fn add_term(&mut self, w: Word, c: C64) -> Result<()> {
        if w.alphabet() != self.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet,
                right: w.alphabet(),
            });
        }
        let e = self.terms.entry(w.clone()).or_insert(ZERO);
        *e += c;
        if *e == ZERO {
            self.terms.remove(&w);
        }
        Ok(())
    }

    /// `self + c * other`.
    pub fn axpy(&mut self, c: C64, other: &NCPoly) -> Result<()> {
        for (w, v) in other.terms.iter() {
            self.add_term(w.clone(), c * v)?;
        }
        Ok(())
    }

    pub fn scale(&self, c: C64) -> NCPoly {
        NCPoly {
            alphabet: self.alphabet,
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    /// `X_k P`.
    pub fn left_mul(&self, k: usize) -> Result<NCPoly> {
        let mut out = NCPoly::zero(self.alphabet);
        for (w, v) in self.terms.iter() {
            out.terms.insert(w.prepend(k)?, *v);
        }
        Ok(out)
    }

    /// Drops coefficients with modulus at most `tol`.
    pub fn prune(&mut self, tol: f64) {
        self.terms.retain(|_, v| v.norm() > tol);
    }

    /// `Σ conj(q_a) p_b kernel(a, b)`.
    pub fn inner_with(&self, q: &NCPoly, mut kernel: impl FnMut(&Word, &Word) -> C64) -> C64 {
        let mut acc = ZERO;
        for (a, qa) in q.terms.iter() {
            for (b, pb) in self.terms.iter() {
                acc += qa.conj() * pb * kernel(a, b);
            }
        }
        acc
    }

    /// Largest coefficient difference.
    pub fn max_abs_diff(&self, other: &NCPoly) -> f64 {
        let mut m: f64 = 0.0;
        for (w, v) in self.terms.iter() {
            m = m.max((v - other.coeff(w)).norm());
        }
        for (w, v) in other.terms.iter() {
            m = m.max((v - self.coeff(w)).norm());
        }
        m
    }
}
