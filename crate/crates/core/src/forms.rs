//! Exact symmetric bilinear forms over the rationals.
//!
//! The inertia of a form is computed by symmetric congruence elimination:
//! a nonzero diagonal entry is used as a 1×1 pivot; when every remaining
//! diagonal entry vanishes but some off-diagonal entry `a` does not, the
//! basis vector `e_i` is replaced by `e_i + e_j`, which creates the diagonal
//! entry `2a` and lets the pair split off as a hyperbolic plane contributing
//! `(1, 1)` to the inertia. No eigenvalues are ever computed.

use crate::dense::{self, DenseMatrix};
use crate::rational::{JsonRational, Rational};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormsError {
    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("circulant form needs at least 3 weights, got {0}")]
    CircTooShort(usize),
    #[error("circulant weight a_{0} must be negative")]
    CircNonNegative(usize),
}

/// Inertia `(pos, neg, null)` of a real symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    pub pos: usize,
    pub neg: usize,
    pub null: usize,
}

impl Signature {
    pub fn new(pos: usize, neg: usize, null: usize) -> Self {
        Signature { pos, neg, null }
    }

    /// Non-degenerate signature `(pos, neg)`.
    pub fn nondegenerate(pos: usize, neg: usize) -> Self {
        Signature { pos, neg, null: 0 }
    }

    pub fn dim(&self) -> usize {
        self.pos + self.neg + self.null
    }

    pub fn rank(&self) -> usize {
        self.pos + self.neg
    }

    pub fn is_degenerate(&self) -> bool {
        self.null > 0
    }
}

impl std::ops::Add for Signature {
    type Output = Signature;
    fn add(self, o: Signature) -> Signature {
        Signature::new(self.pos + o.pos, self.neg + o.neg, self.null + o.null)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.null == 0 {
            write!(f, "({}, {})", self.pos, self.neg)
        } else {
            write!(f, "({}, {}; null {})", self.pos, self.neg, self.null)
        }
    }
}

/// Symmetric `n × n` rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| crate::rational::format(self.get(i, j))).collect())
            .collect();
        f.debug_struct("SymMatrix").field("n", &self.n).field("entries", &rows).finish()
    }
}

/// Result of a rational congruence diagonalization: `transform · m · transformᵀ = diag(diagonal)`.
#[derive(Debug, Clone)]
pub struct Diagonalization {
    pub transform: DenseMatrix,
    pub diagonal: Vec<Rational>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix { n, entries: vec![Rational::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![Rational::one(); n])
    }

    pub fn diagonal(d: &[Rational]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, v) in d.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    /// Builds the matrix from `f(i, j)` evaluated for `i <= j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, FormsError> {
        let n = rows.len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(FormsError::NotSquare { row, len: r.len(), n });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if rows[i][j] != rows[j][i] {
                    return Err(FormsError::NotSymmetric(i, j));
                }
            }
        }
        Ok(SymMatrix { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self, FormsError> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| crate::rational::int(v)).collect()).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[j * self.n + i] = v.clone();
        self.entries[i * self.n + j] = v;
    }

    pub fn rows(&self) -> DenseMatrix {
        self.entries.chunks(self.n.max(1)).take(self.n).map(<[Rational]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// `D m D` for the diagonal matrix `D = diag(d)`.
    pub fn congruent_by_diagonal(&self, d: &[Rational]) -> SymMatrix {
        assert_eq!(d.len(), self.n, "diagonal length must match dimension");
        SymMatrix::from_fn(self.n, |i, j| &d[i] * self.get(i, j) * &d[j])
    }

    /// Orthogonal sum: `self` in the upper-left block, `other` in the lower-right.
    pub fn block_sum(&self, other: &SymMatrix) -> SymMatrix {
        let n = self.n + other.n;
        SymMatrix::from_fn(n, |i, j| match (i < self.n, j < self.n) {
            (true, true) => self.get(i, j).clone(),
            (false, false) => other.get(i - self.n, j - self.n).clone(),
            _ => Rational::zero(),
        })
    }

    /// Principal submatrix on the given indices, in the given order.
    pub fn principal(&self, idx: &[usize]) -> SymMatrix {
        SymMatrix::from_fn(idx.len(), |a, b| self.get(idx[a], idx[b]).clone())
    }

    /// Rational congruence diagonalization with 1×1 pivots and the
    /// `e_i + e_j` fallback for zero diagonals.
    pub fn diagonalize(&self) -> Diagonalization {
        let n = self.n;
        let mut a = self.rows();
        let mut p = dense::identity(n);
        let mut active: Vec<usize> = (0..n).collect();

        // row/column operation: basis vector k ← k + c·i
        fn add_multiple(a: &mut DenseMatrix, p: &mut DenseMatrix, k: usize, i: usize, c: &Rational) {
            let n = a.len();
            for j in 0..n {
                let d = c * &a[i][j];
                a[k][j] += d;
            }
            for j in 0..n {
                let d = c * &a[j][i];
                a[j][k] += d;
            }
            for j in 0..n {
                let d = c * &p[i][j];
                p[k][j] += d;
            }
        }

        while !active.is_empty() {
            let pivot = match active.iter().position(|&i| !a[i][i].is_zero()) {
                Some(pos) => pos,
                None => {
                    let pair = active.iter().enumerate().find_map(|(x, &i)| {
                        active[x + 1..].iter().find(|&&j| !a[i][j].is_zero()).map(|&j| (x, j))
                    });
                    match pair {
                        Some((x, j)) => {
                            let i = active[x];
                            add_multiple(&mut a, &mut p, i, j, &Rational::one());
                            x
                        }
                        None => break,
                    }
                }
            };
            let i = active.remove(pivot);
            let inv = a[i][i].recip();
            for &k in &active {
                if !a[k][i].is_zero() {
                    let c = -(&a[k][i] * &inv);
                    add_multiple(&mut a, &mut p, k, i, &c);
                }
            }
        }
        let diagonal = (0..n).map(|i| a[i][i].clone()).collect();
        Diagonalization { transform: p, diagonal }
    }

    /// Exact inertia by congruence elimination.
    pub fn signature(&self) -> Signature {
        signature(self)
    }

    /// Determinant by Gaussian elimination.
    pub fn determinant(&self) -> Rational {
        dense::determinant(&self.rows())
    }

    /// Rank by Gaussian elimination, independent of the congruence routine.
    pub fn rank(&self) -> usize {
        dense::rank(&self.rows())
    }
}

/// Exact inertia `(pos, neg, null)`; invariant under congruence.
pub fn signature(m: &SymMatrix) -> Signature {
    let d = m.diagonalize().diagonal;
    let pos = d.iter().filter(|v| v.is_positive()).count();
    let neg = d.iter().filter(|v| v.is_negative()).count();
    Signature::new(pos, neg, m.n() - pos - neg)
}

pub fn determinant(m: &SymMatrix) -> Rational {
    m.determinant()
}

/// Cyclic form with zero diagonal and `a_k` on the edge `{k, k+1 mod n}`.
pub fn circ(a: &[Rational]) -> Result<SymMatrix, FormsError> {
    let n = a.len();
    if n < 3 {
        return Err(FormsError::CircTooShort(n));
    }
    if let Some(k) = a.iter().position(|v| !v.is_negative()) {
        return Err(FormsError::CircNonNegative(k + 1));
    }
    let mut m = SymMatrix::zeros(n);
    for (k, v) in a.iter().enumerate() {
        m.set(k, (k + 1) % n, v.clone());
    }
    Ok(m)
}

/// JSON form `{"n": int, "entries": [[...]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<Vec<JsonRational>>,
}

impl From<&SymMatrix> for MatrixJson {
    fn from(m: &SymMatrix) -> Self {
        MatrixJson {
            n: m.n(),
            entries: m.rows().into_iter().map(|r| r.into_iter().map(JsonRational).collect()).collect(),
        }
    }
}

impl TryFrom<MatrixJson> for SymMatrix {
    type Error = FormsError;
    fn try_from(j: MatrixJson) -> Result<Self, FormsError> {
        if j.entries.len() != j.n {
            return Err(FormsError::NotSquare { row: j.entries.len(), len: j.entries.len(), n: j.n });
        }
        SymMatrix::from_rows(j.entries.into_iter().map(|r| r.into_iter().map(|v| v.0).collect()).collect())
    }
}

impl Serialize for SymMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        SymMatrix::try_from(MatrixJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}
