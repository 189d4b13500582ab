//! Sequence transforms and truncated divisibility matrices.
//!
//! All transforms act on the prefix `1..=N` of a sequence and return a prefix
//! of the same length. The divisibility relation restricted to `1..=N` is
//! closed under taking divisors, so the truncated divisor-sum and Möbius
//! transforms are exact inverses with no boundary correction.

use alloc::vec;
use alloc::vec::Vec;

use crate::divisor::{gcd, mobius_prefix};
use crate::error::{Error, Result};
use crate::field::GReal;

/// Default largest matrix emitted by [`emit_w_matrix`] and [`emit_m_matrix`].
pub const DEFAULT_MATRIX_CAP: usize = 2048;

/// A finite, non-empty, 1-indexed prefix of a geometric sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GSeq {
    terms: Vec<GReal>,
}

impl GSeq {
    pub fn new(terms: Vec<GReal>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Domain("sequence must have at least one term"));
        }
        Ok(GSeq { terms })
    }

    pub fn from_exponents(exponents: &[f64]) -> Result<Self> {
        let terms = exponents
            .iter()
            .map(|&t| GReal::from_exponent(t))
            .collect::<Result<Vec<_>>>()?;
        Self::new(terms)
    }

    pub fn from_ints(exponents: &[i64]) -> Result<Self> {
        Self::new(exponents.iter().map(|&k| GReal::from_int(k)).collect())
    }

    /// The prefix `rule(1), …, rule(len)`.
    pub fn from_fn<F>(len: usize, rule: F) -> Result<Self>
    where
        F: FnMut(usize) -> GReal,
    {
        Self::new((1..=len).map(rule).collect())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Always false; present for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Term `i` (1-based).
    pub fn get(&self, i: usize) -> Option<GReal> {
        i.checked_sub(1).and_then(|k| self.terms.get(k)).copied()
    }

    /// Term `i` (1-based).
    ///
    /// # Panics
    ///
    /// Panics if `i` is `0` or exceeds the length.
    pub fn at(&self, i: usize) -> GReal {
        assert!(i >= 1 && i <= self.terms.len(), "index {i} out of 1..={}", self.terms.len());
        self.terms[i - 1]
    }

    pub fn terms(&self) -> &[GReal] {
        &self.terms
    }

    pub fn iter(&self) -> core::slice::Iter<'_, GReal> {
        self.terms.iter()
    }

    pub fn exponents(&self) -> Vec<f64> {
        self.terms.iter().map(|x| x.exponent()).collect()
    }

    pub fn into_terms(self) -> Vec<GReal> {
        self.terms
    }

    /// Pointwise `a ⊙ self ⊕ b ⊙ other`.
    pub fn linear_combination(&self, a: GReal, other: &GSeq, b: GReal) -> Result<GSeq> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch { left: self.len(), right: other.len() });
        }
        let terms = self
            .iter()
            .zip(other.iter())
            .map(|(&f, &g)| a.gmul(f).gadd(b.gmul(g)))
            .collect();
        Ok(GSeq { terms })
    }
}

impl<'a> IntoIterator for &'a GSeq {
    type Item = &'a GReal;
    type IntoIter = core::slice::Iter<'a, GReal>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

/// Divisor-sum transform: `g(m) = ⊕_{k|m} f(k)`.
pub fn w_transform(f: &GSeq) -> GSeq {
    let n = f.len();
    let mut out = vec![GReal::ZERO; n];
    for k in 1..=n {
        let fk = f.terms[k - 1];
        for m in (k..=n).step_by(k) {
            out[m - 1] += fk;
        }
    }
    GSeq { terms: out }
}

/// Möbius inversion: `f(n) = ⊕_{k|n} μ_G(n/k) ⊙ g(k)`.
pub fn m_transform(g: &GSeq) -> GSeq {
    let n = g.len();
    let mu = mobius_prefix(n);
    let mut out = vec![GReal::ZERO; n];
    for k in 1..=n {
        let gk = g.terms[k - 1];
        for d in 1..=n / k {
            if mu[d] != 0 {
                out[k * d - 1] += GReal::from_int(mu[d].into()).gmul(gk);
            }
        }
    }
    GSeq { terms: out }
}

/// Gcd pullback: `g(i) = f(⟨n, i⟩)`.
pub fn q_transform(f: &GSeq, n: usize) -> Result<GSeq> {
    if n == 0 {
        return Err(Error::Domain("pullback index must be at least 1"));
    }
    let terms = (1..=f.len()).map(|i| f.terms[gcd(n, i) - 1]).collect();
    Ok(GSeq { terms })
}

/// Divisor restriction: `g(i) = f(i)` for `i | n`, geometric zero otherwise.
pub fn r_transform(f: &GSeq, n: usize) -> Result<GSeq> {
    if n == 0 {
        return Err(Error::Domain("restriction index must be at least 1"));
    }
    let terms = f
        .iter()
        .enumerate()
        .map(|(k, &x)| if n.is_multiple_of(k + 1) { x } else { GReal::ZERO })
        .collect();
    Ok(GSeq { terms })
}

/// Dirichlet product of two prefixes of equal length, evaluated on the whole
/// prefix.
pub fn dirichlet_convolve_seq(f: &GSeq, g: &GSeq) -> Result<GSeq> {
    if f.len() != g.len() {
        return Err(Error::SizeMismatch { left: f.len(), right: g.len() });
    }
    let n = f.len();
    let mut out = vec![GReal::ZERO; n];
    for a in 1..=n {
        let fa = f.terms[a - 1];
        for b in 1..=n / a {
            out[a * b - 1] += fa.gmul(g.terms[b - 1]);
        }
    }
    Ok(GSeq { terms: out })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    /// Divisibility (zeta) matrix: `e` at `(i, j)` iff `i | j`.
    W,
    /// Möbius matrix: `μ_G(j / i)` at `(i, j)` iff `i | j`.
    M,
    General,
}

/// A dense square matrix over the geometric field, 1-indexed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorMatrix {
    size: usize,
    kind: MatrixKind,
    entries: Vec<GReal>,
}

impl DivisorMatrix {
    /// Builds a general matrix from row-major entries.
    pub fn new(size: usize, entries: Vec<GReal>) -> Result<Self> {
        if size == 0 {
            return Err(Error::Domain("matrix size must be at least 1"));
        }
        if entries.len() != size * size {
            return Err(Error::SizeMismatch { left: size * size, right: entries.len() });
        }
        Ok(DivisorMatrix { size, kind: MatrixKind::General, entries })
    }

    pub fn zeros(size: usize) -> Result<Self> {
        Self::new(size, vec![GReal::ZERO; size * size])
    }

    /// The geometric identity: `e` on the diagonal, `e^0` elsewhere.
    pub fn identity(size: usize) -> Result<Self> {
        let mut m = Self::zeros(size)?;
        for i in 0..size {
            m.entries[i * size + i] = GReal::ONE;
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    /// Entry at row `i`, column `j` (both 1-based).
    pub fn entry(&self, i: usize, j: usize) -> GReal {
        assert!((1..=self.size).contains(&i) && (1..=self.size).contains(&j));
        self.entries[(i - 1) * self.size + (j - 1)]
    }

    /// Row `i` (1-based).
    pub fn row(&self, i: usize) -> &[GReal] {
        assert!((1..=self.size).contains(&i));
        &self.entries[(i - 1) * self.size..i * self.size]
    }

    pub fn rows(&self) -> core::slice::Chunks<'_, GReal> {
        self.entries.chunks(self.size)
    }

    pub fn entries(&self) -> &[GReal] {
        &self.entries
    }

    /// Exact equality with the geometric identity.
    pub fn is_identity(&self) -> bool {
        self.rows().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, &x)| x == if i == j { GReal::ONE } else { GReal::ZERO })
        })
    }
}

fn check_cap(size: usize, cap: usize) -> Result<()> {
    if size == 0 {
        return Err(Error::Domain("matrix size must be at least 1"));
    }
    if size > cap {
        return Err(Error::Capacity {
            what: "matrix size",
            requested: size as u64,
            limit: cap as u64,
        });
    }
    Ok(())
}

pub fn emit_w_matrix(size: usize) -> Result<DivisorMatrix> {
    emit_w_matrix_with_cap(size, DEFAULT_MATRIX_CAP)
}

pub fn emit_w_matrix_with_cap(size: usize, cap: usize) -> Result<DivisorMatrix> {
    check_cap(size, cap)?;
    let mut entries = vec![GReal::ZERO; size * size];
    for i in 1..=size {
        for j in (i..=size).step_by(i) {
            entries[(i - 1) * size + (j - 1)] = GReal::ONE;
        }
    }
    Ok(DivisorMatrix { size, kind: MatrixKind::W, entries })
}

pub fn emit_m_matrix(size: usize) -> Result<DivisorMatrix> {
    emit_m_matrix_with_cap(size, DEFAULT_MATRIX_CAP)
}

pub fn emit_m_matrix_with_cap(size: usize, cap: usize) -> Result<DivisorMatrix> {
    check_cap(size, cap)?;
    let mu = mobius_prefix(size);
    let mut entries = vec![GReal::ZERO; size * size];
    for i in 1..=size {
        for d in 1..=size / i {
            entries[(i - 1) * size + (i * d - 1)] = GReal::from_int(mu[d].into());
        }
    }
    Ok(DivisorMatrix { size, kind: MatrixKind::M, entries })
}

/// Geometric matrix product: `(AB)(i, j) = ⊕_k A(i, k) ⊙ B(k, j)`.
///
/// The accumulation order is fixed, so integer-exponent inputs give
/// bit-identical results on every run.
pub fn gmatmul(a: &DivisorMatrix, b: &DivisorMatrix) -> Result<DivisorMatrix> {
    if a.size != b.size {
        return Err(Error::SizeMismatch { left: a.size, right: b.size });
    }
    let n = a.size;
    let mut acc = vec![0.0f64; n * n];
    for i in 0..n {
        let out = &mut acc[i * n..(i + 1) * n];
        for k in 0..n {
            let aik = a.entries[i * n + k].exponent();
            if aik == 0.0 {
                continue;
            }
            let brow = &b.entries[k * n..(k + 1) * n];
            for (o, bkj) in out.iter_mut().zip(brow) {
                *o += aik * bkj.exponent();
            }
        }
    }
    let entries = acc
        .into_iter()
        .map(GReal::from_exponent)
        .collect::<Result<Vec<_>>>()?;
    Ok(DivisorMatrix { size: n, kind: MatrixKind::General, entries })
}

/// The action `g = A f` under which `W f` is the divisor-sum transform:
/// `g(j) = ⊕_i A(i, j) ⊙ f(i)`.
///
/// With `A(i, j)` nonzero only for `i | j`, output `j` gathers inputs at the
/// divisors of `j`, matching [`w_transform`] and [`m_transform`] exactly.
pub fn apply_matrix(a: &DivisorMatrix, f: &GSeq) -> Result<GSeq> {
    if a.size != f.len() {
        return Err(Error::SizeMismatch { left: a.size, right: f.len() });
    }
    let n = a.size;
    let mut out = vec![GReal::ZERO; n];
    for (i, &fi) in f.iter().enumerate() {
        let row = &a.entries[i * n..(i + 1) * n];
        for (o, &aij) in out.iter_mut().zip(row) {
            if !aij.is_zero() {
                *o += aij.gmul(fi);
            }
        }
    }
    Ok(GSeq { terms: out })
}
