//! Exact sparse matrices over [`Rational`].
//!
//! Rows are stored as sorted `(column, value)` lists with no explicit zeros,
//! so equality is structural and signed-permutation matrices (every Clifford
//! generator built here) cost O(n) to multiply.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(usize, Rational)>>,
}

impl Matrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Matrix { nrows, ncols, rows: vec![Vec::new(); nrows] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Rational::ONE)
    }

    pub fn scalar(n: usize, c: Rational) -> Self {
        let mut m = Self::zeros(n, n);
        if !c.is_zero() {
            for (i, row) in m.rows.iter_mut().enumerate() {
                row.push((i, c));
            }
        }
        m
    }

    pub fn from_fn(nrows: usize, ncols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let rows = (0..nrows)
            .map(|i| {
                (0..ncols)
                    .filter_map(|j| {
                        let v = f(i, j);
                        (!v.is_zero()).then_some((j, v))
                    })
                    .collect()
            })
            .collect();
        Matrix { nrows, ncols, rows }
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix rows");
        Self::from_fn(nrows, ncols, |i, j| rows[i][j])
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        Self::from_fn(nrows, ncols, |i, j| Rational::from_int(rows[i][j]))
    }

    /// Row-major flat data of length `nrows * ncols`.
    pub fn from_flat(nrows: usize, ncols: usize, flat: &[Rational]) -> Option<Self> {
        (flat.len() == nrows * ncols).then(|| Self::from_fn(nrows, ncols, |i, j| flat[i * ncols + j]))
    }

    /// Builds from sparse rows; entries may be unsorted and repeated (summed).
    pub fn from_sparse_rows(nrows: usize, ncols: usize, rows: Vec<Vec<(usize, Rational)>>) -> Self {
        assert_eq!(rows.len(), nrows);
        let rows = rows
            .into_iter()
            .map(|mut r| {
                r.sort_by_key(|e| e.0);
                let mut out: Vec<(usize, Rational)> = Vec::with_capacity(r.len());
                for (c, v) in r {
                    assert!(c < ncols, "column index out of range");
                    match out.last_mut() {
                        Some(last) if last.0 == c => last.1 += v,
                        _ => out.push((c, v)),
                    }
                }
                out.retain(|e| !e.1.is_zero());
                out
            })
            .collect();
        Matrix { nrows, ncols, rows }
    }

    /// The elementary rotation `E_ab = e_b e_aᵀ - e_a e_bᵀ`, mapping `e_a ↦ e_b`.
    pub fn elementary_rotation(n: usize, a: usize, b: usize) -> Self {
        assert!(a != b && a < n && b < n);
        let mut rows = vec![Vec::new(); n];
        rows[b].push((a, Rational::ONE));
        rows[a].push((b, -Rational::ONE));
        Matrix { nrows: n, ncols: n, rows }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn row(&self, i: usize) -> &[(usize, Rational)] {
        &self.rows[i]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        let row = &self.rows[i];
        match row.binary_search_by_key(&j, |e| e.0) {
            Ok(k) => row[k].1,
            Err(_) => Rational::ZERO,
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(i < self.nrows && j < self.ncols);
        let row = &mut self.rows[i];
        match row.binary_search_by_key(&j, |e| e.0) {
            Ok(k) if v.is_zero() => {
                row.remove(k);
            }
            Ok(k) => row[k].1 = v,
            Err(_) if v.is_zero() => {}
            Err(k) => row.insert(k, (j, v)),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Rational)> + '_ {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |&(j, v)| (i, j, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> Self {
        let mut rows = vec![Vec::new(); self.ncols];
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                rows[j].push((i, v));
            }
        }
        Matrix { nrows: self.ncols, ncols: self.nrows, rows }
    }

    pub fn scale(&self, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zeros(self.nrows, self.ncols);
        }
        let rows = self.rows.iter().map(|r| r.iter().map(|&(j, v)| (j, v * c)).collect()).collect();
        Matrix { nrows: self.nrows, ncols: self.ncols, rows }
    }

    fn merge(&self, other: &Matrix, sign: Rational) -> Matrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols), "shape mismatch");
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut x, mut y) = (0, 0);
                while x < a.len() || y < b.len() {
                    let take_a = y >= b.len() || (x < a.len() && a[x].0 < b[y].0);
                    let take_b = x >= a.len() || (y < b.len() && b[y].0 < a[x].0);
                    if take_a {
                        out.push(a[x]);
                        x += 1;
                    } else if take_b {
                        out.push((b[y].0, b[y].1 * sign));
                        y += 1;
                    } else {
                        let v = a[x].1 + b[y].1 * sign;
                        if !v.is_zero() {
                            out.push((a[x].0, v));
                        }
                        x += 1;
                        y += 1;
                    }
                }
                out
            })
            .collect();
        Matrix { nrows: self.nrows, ncols: self.ncols, rows }
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols, other.nrows, "shape mismatch in product");
        let mut acc = vec![Rational::ZERO; other.ncols];
        let mut touched: Vec<usize> = Vec::new();
        let rows = self
            .rows
            .iter()
            .map(|arow| {
                for &(k, a) in arow {
                    for &(j, b) in &other.rows[k] {
                        if acc[j].is_zero() {
                            touched.push(j);
                        }
                        acc[j] += a * b;
                    }
                }
                touched.sort_unstable();
                touched.dedup();
                let out = touched
                    .iter()
                    .filter_map(|&j| {
                        let v = std::mem::take(&mut acc[j]);
                        (!v.is_zero()).then_some((j, v))
                    })
                    .collect();
                touched.clear();
                out
            })
            .collect();
        Matrix { nrows: self.nrows, ncols: other.ncols, rows }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.ncols);
        self.rows.iter().map(|r| r.iter().map(|&(j, a)| a * v[j]).sum()).collect()
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        &self.matmul(other) - &other.matmul(self)
    }

    /// `AB + BA`.
    pub fn anticommutator(&self, other: &Matrix) -> Matrix {
        &self.matmul(other) + &other.matmul(self)
    }

    pub fn trace(&self) -> Rational {
        assert!(self.is_square());
        (0..self.nrows).map(|i| self.get(i, i)).sum()
    }

    /// `tr(A ∘ B)` without forming the product.
    pub fn trace_product(&self, other: &Matrix) -> Rational {
        assert_eq!((self.nrows, self.ncols), (other.ncols, other.nrows));
        self.rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.iter().map(|&(k, a)| a * other.get(k, i)).sum::<Rational>())
            .sum()
    }

    /// Sum of squared entries.
    pub fn frobenius_sq(&self) -> Rational {
        self.entries().map(|(_, _, v)| v * v).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_skew(&self) -> bool {
        self.is_square() && *self == -&self.transpose()
    }

    /// Every row and column holds exactly one entry, equal to ±1.
    pub fn is_signed_permutation(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let mut seen = vec![false; self.ncols];
        for row in &self.rows {
            if row.len() != 1 || row[0].1.abs() != Rational::ONE || seen[row[0].0] {
                return false;
            }
            seen[row[0].0] = true;
        }
        true
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (p, q) = (other.nrows, other.ncols);
        let mut rows = vec![Vec::new(); self.nrows * p];
        for (i, arow) in self.rows.iter().enumerate() {
            for (k, brow) in other.rows.iter().enumerate() {
                let out = &mut rows[i * p + k];
                for &(j, a) in arow {
                    for &(l, b) in brow {
                        out.push((j * q + l, a * b));
                    }
                }
            }
        }
        Matrix { nrows: self.nrows * p, ncols: self.ncols * q, rows }
    }

    pub fn block_diag(blocks: &[Matrix]) -> Matrix {
        let nrows = blocks.iter().map(|b| b.nrows).sum();
        let ncols = blocks.iter().map(|b| b.ncols).sum();
        let mut rows = Vec::with_capacity(nrows);
        let mut off = 0;
        for b in blocks {
            for r in &b.rows {
                rows.push(r.iter().map(|&(j, v)| (j + off, v)).collect());
            }
            off += b.ncols;
        }
        Matrix { nrows, ncols, rows }
    }

    /// Restriction to the given row and column index sets.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Matrix {
        let mut col_map = vec![usize::MAX; self.ncols];
        for (new, &old) in col_idx.iter().enumerate() {
            col_map[old] = new;
        }
        let rows = row_idx
            .iter()
            .map(|&i| {
                let mut r: Vec<(usize, Rational)> = self.rows[i]
                    .iter()
                    .filter(|e| col_map[e.0] != usize::MAX)
                    .map(|&(j, v)| (col_map[j], v))
                    .collect();
                r.sort_by_key(|e| e.0);
                r
            })
            .collect();
        Matrix { nrows: row_idx.len(), ncols: col_idx.len(), rows }
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        (0..self.nrows).map(|i| (0..self.ncols).map(|j| self.get(i, j)).collect()).collect()
    }

    pub fn to_flat(&self) -> Vec<Rational> {
        self.to_dense().into_iter().flatten().collect()
    }

    /// Upper-triangle coordinates `(A[b][a])_{a<b}` of a skew matrix along
    /// the elementary rotations `E_ab`.
    pub fn skew_coords(&self) -> Vec<Rational> {
        let n = self.nrows;
        let mut out = Vec::with_capacity(n * (n - 1) / 2);
        for a in 0..n {
            for b in a + 1..n {
                out.push(self.get(b, a));
            }
        }
        out
    }

    /// Inverse of [`Matrix::skew_coords`].
    pub fn from_skew_coords(n: usize, coords: &[Rational]) -> Matrix {
        assert_eq!(coords.len(), n * (n - 1) / 2);
        let mut rows = vec![Vec::new(); n];
        let mut k = 0;
        for a in 0..n {
            for b in a + 1..n {
                let c = coords[k];
                k += 1;
                if !c.is_zero() {
                    rows[b].push((a, c));
                    rows[a].push((b, -c));
                }
            }
        }
        Matrix::from_sparse_rows(n, n, rows)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.nrows, self.ncols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>4}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.merge(rhs, Rational::ONE)
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.merge(rhs, -Rational::ONE)
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs)
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.scale(-Rational::ONE)
    }
}

impl Add for Matrix {
    type Output = Matrix;
    fn add(self, rhs: Matrix) -> Matrix {
        &self + &rhs
    }
}

impl Sub for Matrix {
    type Output = Matrix;
    fn sub(self, rhs: Matrix) -> Matrix {
        &self - &rhs
    }
}

impl Mul for Matrix {
    type Output = Matrix;
    fn mul(self, rhs: Matrix) -> Matrix {
        self.matmul(&rhs)
    }
}

impl Neg for Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64_rows(rows)
    }

    #[test]
    fn product_matches_hand_computation() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(&a * &b, m(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.trace_product(&b), (&a * &b).trace());
    }

    #[test]
    fn cancellation_leaves_no_stored_zeros() {
        let a = m(&[&[1, -1], &[0, 2]]);
        let z = &a - &a;
        assert!(z.is_zero());
        assert_eq!(z.nnz(), 0);
        assert_eq!(z, Matrix::zeros(2, 2));
    }

    #[test]
    fn elementary_rotation_convention() {
        let e = Matrix::elementary_rotation(3, 0, 1);
        // e_0 -> e_1, e_1 -> -e_0
        assert_eq!(e.mul_vec(&[qi(1), qi(0), qi(0)]), vec![qi(0), qi(1), qi(0)]);
        assert_eq!(e.mul_vec(&[qi(0), qi(1), qi(0)]), vec![qi(-1), qi(0), qi(0)]);
        assert!(e.is_skew());
        assert_eq!(e.skew_coords(), vec![qi(1), qi(0), qi(0)]);
    }

    #[test]
    fn skew_coords_round_trip() {
        let coords = vec![q(1, 2), qi(0), qi(-3)];
        let a = Matrix::from_skew_coords(3, &coords);
        assert!(a.is_skew());
        assert_eq!(a.skew_coords(), coords);
    }

    #[test]
    fn kron_and_blocks() {
        let eps = m(&[&[0, -1], &[1, 0]]);
        let k = Matrix::identity(2).kron(&eps);
        assert_eq!(k, Matrix::block_diag(&[eps.clone(), eps.clone()]));
        assert!(k.is_signed_permutation());
        assert!(k.is_skew());
        let sub = k.submatrix(&[2, 3], &[2, 3]);
        assert_eq!(sub, eps);
    }

    #[test]
    fn set_and_get() {
        let mut a = Matrix::zeros(2, 3);
        a.set(1, 2, qi(5));
        a.set(1, 0, qi(1));
        assert_eq!(a.get(1, 2), qi(5));
        assert_eq!(a.row(1)[0].0, 0);
        a.set(1, 2, qi(0));
        assert_eq!(a.nnz(), 1);
    }
}
