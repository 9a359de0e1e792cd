//! Small dense linear algebra: row-major matrices, LU with partial pivoting,
//! triangular inversion.
//!
//! Sizes here are tiny (tableaus, s <= 19) to moderate (semi-discretized PDEs,
//! a few hundred unknowns), so everything is dense and allocation-light.

use std::fmt;
use std::ops::{Index, IndexMut};

use thiserror::Error;

/// Relative pivot threshold: a pivot below `PIVOT_TOLERANCE * max|A|` is
/// reported as singular.
pub const PIVOT_TOLERANCE: f64 = 1e-14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("matrix is singular (pivot {pivot:.3e} in column {column})")]
    SingularMatrix { column: usize, pivot: f64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix contains non-finite entries")]
    NonFinite,
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Builds a matrix from row-major data. Panics if the length does not
    /// match `rows * cols`.
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Self {
        assert_eq!(
            data.len(),
            rows * cols,
            "row-major data has {} entries, expected {}x{}",
            data.len(),
            rows,
            cols
        );
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n * m);
        for r in rows {
            assert_eq!(r.len(), m, "ragged rows");
            data.extend_from_slice(r);
        }
        Self {
            rows: n,
            cols: m,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [f64] {
        let c = self.cols;
        &mut self.data[i * c..(i + 1) * c]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, values: &[f64]) {
        for (i, &v) in values.iter().enumerate() {
            self[(i, j)] = v;
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    /// `self + factor * other`
    pub fn add_scaled(&self, factor: f64, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + factor * b)
                .collect(),
        }
    }

    pub fn mat_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.rows];
        self.mat_vec_into(x, &mut out);
        out
    }

    pub fn mat_vec_into(&self, x: &[f64], out: &mut [f64]) {
        assert_eq!(x.len(), self.cols, "mat_vec: vector length");
        assert_eq!(out.len(), self.rows, "mat_vec: output length");
        for (i, o) in out.iter_mut().enumerate() {
            *o = dot(self.row(i), x);
        }
    }

    /// `x^T A`
    pub fn vec_mat(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.rows, "vec_mat: vector length");
        let mut out = vec![0.0; self.cols];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0.0 {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                *o += xi * a;
            }
        }
        out
    }

    pub fn mat_mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "mat_mul: inner dimensions");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                let orow = other.row(k);
                for (o, b) in out.row_mut(i).iter_mut().zip(orow) {
                    *o += a * b;
                }
            }
        }
        out
    }

    /// True when every entry strictly above the diagonal is exactly zero.
    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)] == 0.0))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self[(i, j)] == 0.0))
    }

    pub fn is_strictly_lower_triangular(&self) -> bool {
        self.is_lower_triangular() && (0..self.rows.min(self.cols)).all(|i| self[(i, i)] == 0.0)
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn hadamard_in_place(acc: &mut [f64], other: &[f64]) {
    for (a, b) in acc.iter_mut().zip(other) {
        *a *= b;
    }
}

/// `y += a * x`
#[inline]
pub fn axpy(a: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

pub fn norm_inf(x: &[f64]) -> f64 {
    x.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}

pub fn norm2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Combined `L\U` factors of `P A` with the row permutation.
#[derive(Debug, Clone)]
pub struct LuFactorization {
    factors: DenseMatrix,
    /// `pivots[k]` is the original row placed at position `k`.
    pivots: Vec<usize>,
}

impl LuFactorization {
    pub fn dim(&self) -> usize {
        self.factors.rows
    }

    pub fn factors(&self) -> &DenseMatrix {
        &self.factors
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Unit lower-triangular factor.
    pub fn lower(&self) -> DenseMatrix {
        let n = self.dim();
        let mut l = DenseMatrix::identity(n);
        for i in 0..n {
            for j in 0..i {
                l[(i, j)] = self.factors[(i, j)];
            }
        }
        l
    }

    pub fn upper(&self) -> DenseMatrix {
        let n = self.dim();
        let mut u = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                u[(i, j)] = self.factors[(i, j)];
            }
        }
        u
    }

    /// Applies the row permutation to `a`, giving `P A`.
    pub fn permute_rows(&self, a: &DenseMatrix) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(a.rows, a.cols);
        for (k, &p) in self.pivots.iter().enumerate() {
            out.row_mut(k).copy_from_slice(a.row(p));
        }
        out
    }

    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>, LinalgError> {
        let mut x = rhs.to_vec();
        self.solve_in_place(&mut x)?;
        Ok(x)
    }

    pub fn solve_in_place(&self, x: &mut [f64]) -> Result<(), LinalgError> {
        let n = self.dim();
        if x.len() != n {
            return Err(LinalgError::DimensionMismatch {
                expected: n,
                got: x.len(),
            });
        }
        let b: Vec<f64> = self.pivots.iter().map(|&p| x[p]).collect();
        x.copy_from_slice(&b);
        // forward, unit diagonal
        for i in 0..n {
            let row = self.factors.row(i);
            let s = dot(&row[..i], &x[..i]);
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let row = self.factors.row(i);
            let s = dot(&row[i + 1..], &x[i + 1..]);
            x[i] = (x[i] - s) / row[i];
        }
        Ok(())
    }
}

pub fn lu_factor(a: &DenseMatrix) -> Result<LuFactorization, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    if !a.all_finite() {
        return Err(LinalgError::NonFinite);
    }
    let n = a.rows;
    let threshold = PIVOT_TOLERANCE * a.max_abs();
    let mut lu = a.clone();
    let mut pivots: Vec<usize> = (0..n).collect();

    for k in 0..n {
        let (p, pmax) = (k..n)
            .map(|i| (i, lu[(i, k)].abs()))
            .fold(
                (k, -1.0),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            );
        if pmax <= threshold || pmax == 0.0 {
            return Err(LinalgError::SingularMatrix {
                column: k,
                pivot: pmax,
            });
        }
        if p != k {
            pivots.swap(p, k);
            let c = lu.cols;
            let (head, tail) = lu.data.split_at_mut(p * c);
            head[k * c..(k + 1) * c].swap_with_slice(&mut tail[..c]);
        }
        let pivot = lu[(k, k)];
        let c = lu.cols;
        let (top, bottom) = lu.data.split_at_mut((k + 1) * c);
        let prow = &top[k * c..(k + 1) * c];
        for row in bottom.chunks_exact_mut(c) {
            let m = row[k] / pivot;
            row[k] = m;
            if m != 0.0 {
                for (r, u) in row[k + 1..].iter_mut().zip(&prow[k + 1..]) {
                    *r -= m * u;
                }
            }
        }
    }
    Ok(LuFactorization {
        factors: lu,
        pivots,
    })
}

pub fn lu_solve(f: &LuFactorization, rhs: &[f64]) -> Result<Vec<f64>, LinalgError> {
    f.solve(rhs)
}

/// Matrix inverse. Triangular inputs are inverted by substitution so the
/// result keeps exact zeros in the opposite triangle.
pub fn invert(a: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare {
            rows: a.rows,
            cols: a.cols,
        });
    }
    if a.is_lower_triangular() {
        return invert_lower(a);
    }
    if a.is_upper_triangular() {
        return Ok(invert_lower(&a.transpose())?.transpose());
    }
    let lu = lu_factor(a)?;
    let n = a.rows;
    let mut inv = DenseMatrix::zeros(n, n);
    let mut e = vec![0.0; n];
    for j in 0..n {
        e.iter_mut().for_each(|v| *v = 0.0);
        e[j] = 1.0;
        lu.solve_in_place(&mut e)?;
        inv.set_column(j, &e);
    }
    Ok(inv)
}

fn invert_lower(a: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
    let n = a.rows;
    if !a.all_finite() {
        return Err(LinalgError::NonFinite);
    }
    let threshold = PIVOT_TOLERANCE * a.max_abs();
    for k in 0..n {
        if a[(k, k)].abs() <= threshold || a[(k, k)] == 0.0 {
            return Err(LinalgError::SingularMatrix {
                column: k,
                pivot: a[(k, k)].abs(),
            });
        }
    }
    let mut inv = DenseMatrix::zeros(n, n);
    for j in 0..n {
        inv[(j, j)] = 1.0 / a[(j, j)];
        for i in j + 1..n {
            let s: f64 = (j..i).map(|k| a[(i, k)] * inv[(k, j)]).sum();
            inv[(i, j)] = -s / a[(i, i)];
        }
    }
    Ok(inv)
}
