//! Dense exact linear algebra over [`FieldSpec`] scalars.
//!
//! Elimination always takes the first nonzero entry as pivot, so results are
//! deterministic. Rational entries stay reduced because [`Scalar`] keeps
//! canonical form after every operation.

mod poly;

use std::fmt;
use std::ops::{Index, IndexMut};

pub use poly::{PolySplit, Polynomial};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// A dense row-major matrix with entries in one field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    spec: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Outcome of a nilpotency test. `index` is the least `m` with `A^m = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Nilpotency {
    pub nilpotent: bool,
    pub index: Option<usize>,
}

impl ExactMatrix {
    pub fn new(spec: FieldSpec, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!(
                "matrices must be non-empty, got {rows}x{cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(e) = entries.iter().find(|e| e.spec() != spec) {
            return Err(Error::FieldMismatch(spec, e.spec()));
        }
        Ok(ExactMatrix {
            spec,
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(spec: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("rows have different lengths".into()));
        }
        Self::new(spec, r, c, rows.into_iter().flatten().collect())
    }

    /// Small integer matrices, mostly for tests and examples.
    pub fn from_i64_rows(spec: FieldSpec, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| spec.from_i64(v)).collect())
            .collect();
        Self::from_rows(spec, rows).expect("well-formed integer rows")
    }

    /// # Panics
    /// If either dimension is zero.
    pub fn zeros(spec: FieldSpec, rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrices must be non-empty");
        ExactMatrix {
            spec,
            rows,
            cols,
            entries: vec![spec.zero(); rows * cols],
        }
    }

    pub fn identity(spec: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(spec, n, n);
        for i in 0..n {
            m[(i, i)] = spec.one();
        }
        m
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        self.entries
            .chunks(self.cols)
            .map(<[Scalar]>::to_vec)
            .collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub(crate) fn square_size(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::Dimension(format!(
                "expected a square matrix, got {}x{}",
                self.rows, self.cols
            )))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    fn check_same_shape(&self, other: &ExactMatrix) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::FieldMismatch(self.spec, other.spec));
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(self.with_entries(entries))
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(self.with_entries(entries))
    }

    fn with_entries(&self, entries: Vec<Scalar>) -> ExactMatrix {
        debug_assert_eq!(entries.len(), self.entries.len());
        ExactMatrix {
            spec: self.spec,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn scale(&self, c: &Scalar) -> ExactMatrix {
        self.with_entries(self.entries.iter().map(|a| a * c).collect())
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut out = ExactMatrix::zeros(self.spec, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.spec != other.spec {
            return Err(Error::FieldMismatch(self.spec, other.spec));
        }
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ExactMatrix::zeros(self.spec, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.spec.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    /// `A^e` by repeated squaring; `A^0 = I`.
    pub fn pow(&self, mut e: u64) -> Result<ExactMatrix> {
        let n = self.square_size()?;
        let mut acc = ExactMatrix::identity(self.spec, n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Result<Scalar> {
        let n = self.square_size()?;
        Ok((0..n).fold(self.spec.zero(), |acc, i| &acc + &self[(i, i)]))
    }

    /// Reduced row-echelon form and the pivot columns, in ascending order.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut rows = self.to_rows();
        let pivots = rref_in_place(&mut rows, self.cols);
        let m = self.with_entries(rows.into_iter().flatten().collect());
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{x : A x = 0}`, one vector per free
    /// column in ascending column order. Empty iff the kernel is trivial.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![self.spec.zero(); self.cols];
                v[free] = self.spec.one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -&r[(row, free)];
                }
                v
            })
            .collect()
    }

    pub fn determinant(&self) -> Result<Scalar> {
        let n = self.square_size()?;
        let mut rows = self.to_rows();
        let mut det = self.spec.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
                return Ok(self.spec.zero());
            };
            if p != col {
                rows.swap(p, col);
                det = -det;
            }
            let pivot = rows[col][col].clone();
            det = &det * &pivot;
            let pinv = pivot.inv()?;
            let (top, below) = rows.split_at_mut(col + 1);
            let pivot_row = &top[col];
            for row in below.iter_mut().filter(|row| !row[col].is_zero()) {
                let factor = &row[col] * &pinv;
                for (x, y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x = &*x - &(&factor * y);
                }
            }
        }
        Ok(det)
    }

    pub fn is_invertible(&self) -> Result<bool> {
        Ok(!self.determinant()?.is_zero())
    }

    /// Decides `A^n = 0` by squaring up to the first power of two `>= n`,
    /// then finds the exact index by binary lifting over the cached squares.
    pub fn is_nilpotent(&self) -> Result<Nilpotency> {
        let n = self.square_size()?;
        let mut squares = vec![self.clone()];
        while (1usize << (squares.len() - 1)) < n {
            let last = squares.last().expect("non-empty");
            squares.push(last.mul(last)?);
        }
        if !squares.last().expect("non-empty").is_zero() {
            return Ok(Nilpotency {
                nilpotent: false,
                index: None,
            });
        }
        // largest m with A^m != 0
        let mut m = 0usize;
        let mut cur: Option<ExactMatrix> = None;
        for (j, sq) in squares.iter().enumerate().rev() {
            let cand = match &cur {
                None => sq.clone(),
                Some(c) => c.mul(sq)?,
            };
            if !cand.is_zero() {
                cur = Some(cand);
                m += 1 << j;
            }
        }
        debug_assert!(m < n);
        Ok(Nilpotency {
            nilpotent: true,
            index: Some(m + 1),
        })
    }

    /// The monic annihilating polynomial of least degree, from the first
    /// linear dependency among `I, A, A^2, ...` (as flattened vectors).
    pub fn minimal_polynomial(&self) -> Result<Polynomial> {
        let n = self.square_size()?;
        let spec = self.spec;
        // (reduced vector, pivot, combination of powers producing it)
        let mut basis: Vec<(Vec<Scalar>, usize, Vec<Scalar>)> = Vec::new();
        let mut power = ExactMatrix::identity(spec, n);
        for k in 0..=n {
            let mut v = power.entries.clone();
            let mut combo = vec![spec.zero(); k + 1];
            combo[k] = spec.one();
            for (b, piv, c) in &basis {
                let f = v[*piv].clone();
                if f.is_zero() {
                    continue;
                }
                axpy(&mut v, &f, b);
                axpy(&mut combo, &f, c);
            }
            match v.iter().position(|x| !x.is_zero()) {
                None => return Polynomial::new(spec, combo),
                Some(piv) => {
                    let s = v[piv].inv()?;
                    v.iter_mut().for_each(|x| *x = &*x * &s);
                    combo.iter_mut().for_each(|x| *x = &*x * &s);
                    basis.push((v, piv, combo));
                }
            }
            power = power.mul(self)?;
        }
        unreachable!("Cayley-Hamilton bounds the degree by n")
    }

    /// `det(xI - A)` by the division-free Berkowitz recurrence.
    pub fn characteristic_polynomial(&self) -> Result<Polynomial> {
        let n = self.square_size()?;
        let spec = self.spec;
        // descending coefficients of the char. poly of the leading r x r block
        let mut c = vec![spec.one()];
        for r in 0..n {
            let mut col = vec![spec.one(), -&self[(r, r)]];
            let mut v: Vec<Scalar> = (0..r).map(|i| self[(i, r)].clone()).collect();
            for _ in 0..r {
                let rv = (0..r).fold(spec.zero(), |acc, j| &acc + &(&self[(r, j)] * &v[j]));
                col.push(-rv);
                v = (0..r)
                    .map(|i| (0..r).fold(spec.zero(), |acc, j| &acc + &(&self[(i, j)] * &v[j])))
                    .collect();
            }
            c = (0..r + 2)
                .map(|i| {
                    (0..c.len())
                        .filter(|&j| j <= i)
                        .fold(spec.zero(), |acc, j| &acc + &(&col[i - j] * &c[j]))
                })
                .collect();
        }
        c.reverse();
        Polynomial::new(spec, c)
    }
}

/// `v -= f * b`
fn axpy(v: &mut [Scalar], f: &Scalar, b: &[Scalar]) {
    for (x, y) in v.iter_mut().zip(b) {
        if !y.is_zero() {
            *x = &*x - &(f * y);
        }
    }
}

/// Row-reduces `rows` (each of length `cols`) in place; returns pivot columns.
pub(crate) fn rref_in_place(rows: &mut [Vec<Scalar>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        rows[r].iter_mut().for_each(|x| *x = &*x * &inv);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                axpy(row, &f, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// RREF basis (nonzero rows, pivot-ascending) of the span of `vectors`.
pub fn span_basis(vectors: &[Vec<Scalar>], len: usize) -> Vec<Vec<Scalar>> {
    let mut rows = vectors.to_vec();
    let rank = rref_in_place(&mut rows, len).len();
    rows.truncate(rank);
    rows
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
