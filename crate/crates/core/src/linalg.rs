//! Exact linear algebra: echelon forms, nullspaces, inverses and rational
//! spectra of matrices over [`Rational`].

use crate::matrix::Matrix;
use crate::rational::Rational;

/// A sparse vector: sorted `(index, value)` pairs with no zeros.
pub type SparseVec = Vec<(usize, Rational)>;

pub fn sparse_from_dense(v: &[Rational]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, &x)| (i, x)).collect()
}

/// Row-major flattening of a matrix as a sparse vector.
pub fn flatten(m: &Matrix) -> SparseVec {
    let nc = m.ncols();
    m.entries().map(|(i, j, v)| (i * nc + j, v)).collect()
}

/// `a + c·b` for sparse vectors.
pub fn axpy(a: &SparseVec, c: Rational, b: &SparseVec) -> SparseVec {
    if c.is_zero() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut x, mut y) = (0, 0);
    while x < a.len() || y < b.len() {
        if y >= b.len() || (x < a.len() && a[x].0 < b[y].0) {
            out.push(a[x]);
            x += 1;
        } else if x >= a.len() || b[y].0 < a[x].0 {
            out.push((b[y].0, c * b[y].1));
            y += 1;
        } else {
            let v = a[x].1 + c * b[y].1;
            if !v.is_zero() {
                out.push((a[x].0, v));
            }
            x += 1;
            y += 1;
        }
    }
    out
}

/// Incrementally built echelon basis of a subspace of sparse vectors.
#[derive(Debug, Clone, Default)]
pub struct EchelonBasis {
    rows: Vec<SparseVec>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after elimination against the basis.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        for row in &self.rows {
            let p = row[0].0;
            if let Ok(k) = v.binary_search_by_key(&p, |e| e.0) {
                let c = -v[k].1;
                v = axpy(&v, c, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let inv = r[0].1.recip();
        let r: SparseVec = r.into_iter().map(|(i, x)| (i, x * inv)).collect();
        // Keep the invariant that every stored pivot is absent from later rows
        // and earlier rows alike, so `reduce` needs a single pass.
        let p = r[0].0;
        for row in &mut self.rows {
            if let Ok(k) = row.binary_search_by_key(&p, |e| e.0) {
                let c = -row[k].1;
                *row = axpy(row, c, &r);
            }
        }
        self.rows.push(r);
        true
    }
}

impl EchelonBasis {
    /// Kernel of the stored rows, viewed as equations in `ncols` unknowns.
    /// The rows are fully reduced, so each free column is read off directly.
    pub fn nullspace(&self, ncols: usize) -> Vec<Vec<Rational>> {
        let mut is_pivot = vec![false; ncols];
        for row in &self.rows {
            is_pivot[row[0].0] = true;
        }
        let mut out: Vec<Vec<Rational>> = Vec::new();
        let mut slot = vec![usize::MAX; ncols];
        for f in (0..ncols).filter(|&f| !is_pivot[f]) {
            slot[f] = out.len();
            let mut x = vec![Rational::ZERO; ncols];
            x[f] = Rational::ONE;
            out.push(x);
        }
        for row in &self.rows {
            let p = row[0].0;
            for &(j, v) in &row[1..] {
                out[slot[j]][p] = -v;
            }
        }
        out
    }
}

/// Dimension of the linear span of a list of matrices.
pub fn span_dim(mats: &[Matrix]) -> usize {
    let mut basis = EchelonBasis::new();
    for m in mats {
        basis.insert(&flatten(m));
    }
    basis.rank()
}

/// Reduced row echelon form of a dense matrix, in place. Returns pivot columns.
pub fn rref(rows: &mut [Vec<Rational>]) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut basis = EchelonBasis::new();
    for i in 0..m.nrows() {
        basis.insert(&m.row(i).to_vec());
    }
    basis.rank()
}

/// Basis of `{x : m x = 0}`, one vector per free column.
pub fn nullspace(m: &Matrix) -> Vec<Vec<Rational>> {
    let mut basis = EchelonBasis::new();
    for i in 0..m.nrows() {
        basis.insert(&m.row(i).to_vec());
    }
    basis.nullspace(m.ncols())
}

pub fn nullity(m: &Matrix) -> usize {
    m.ncols() - rank(m)
}

/// Some solution of `a x = b`, or `None` when the system is inconsistent.
pub fn solve(a: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(a.nrows(), b.len());
    let n = a.ncols();
    let mut rows: Vec<Vec<Rational>> = a
        .to_dense()
        .into_iter()
        .zip(b)
        .map(|(mut r, &bi)| {
            r.push(bi);
            r
        })
        .collect();
    let pivots = rref(&mut rows);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rational::ZERO; n];
    for (row, &p) in rows.iter().zip(&pivots) {
        x[p] = row[n];
    }
    Some(x)
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    assert!(m.is_square());
    let n = m.nrows();
    let mut rows: Vec<Vec<Rational>> = m
        .to_dense()
        .into_iter()
        .enumerate()
        .map(|(i, mut r)| {
            r.extend((0..n).map(|j| if i == j { Rational::ONE } else { Rational::ZERO }));
            r
        })
        .collect();
    let pivots = rref(&mut rows);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(Matrix::from_fn(n, n, |i, j| rows[i][n + j]))
}

/// Matrix whose columns are the given vectors.
pub fn from_columns(n: usize, cols: &[Vec<Rational>]) -> Matrix {
    Matrix::from_fn(n, cols.len(), |i, j| cols[j][i])
}

/// Basis (as columns) of the eigenspace `{x : m x = λ x}`.
pub fn eigenspace(m: &Matrix, lambda: Rational) -> Matrix {
    let n = m.nrows();
    from_columns(n, &nullspace(&(m - &Matrix::scalar(n, lambda))))
}

/// Matrix of `m` restricted to the invariant subspace spanned by the
/// columns of `basis`, in that basis: `(BᵀB)⁻¹ Bᵀ m B`.
pub fn restrict_to_subspace(m: &Matrix, basis: &Matrix) -> Matrix {
    let bt = basis.transpose();
    let gram_inv = inverse(&bt.matmul(basis)).expect("basis columns are independent");
    gram_inv.matmul(&bt).matmul(&m.matmul(basis))
}

/// A polynomial as ascending coefficients `c_0 + c_1 x + …`.
pub type Poly = Vec<Rational>;

/// Monic minimal polynomial of a square matrix.
pub fn minimal_polynomial(m: &Matrix) -> Poly {
    assert!(m.is_square());
    let n = m.nrows();
    let mut powers = vec![Matrix::identity(n)];
    loop {
        let next = powers.last().unwrap().matmul(m);
        // Solve Σ c_k M^k = M^d over the flattened entries.
        let cols: Vec<SparseVec> = powers.iter().map(flatten).collect();
        let rhs = flatten(&next);
        let d = powers.len();
        let mut support: Vec<usize> = cols.iter().chain(std::iter::once(&rhs)).flatten().map(|e| e.0).collect();
        support.sort_unstable();
        support.dedup();
        let a = Matrix::from_fn(support.len(), d, |i, k| lookup(&cols[k], support[i]));
        let b: Vec<Rational> = support.iter().map(|&s| lookup(&rhs, s)).collect();
        if let Some(c) = solve(&a, &b) {
            let mut p: Poly = c.into_iter().map(|x| -x).collect();
            p.push(Rational::ONE);
            return p;
        }
        powers.push(next);
    }
}

fn lookup(v: &SparseVec, i: usize) -> Rational {
    match v.binary_search_by_key(&i, |e| e.0) {
        Ok(k) => v[k].1,
        Err(_) => Rational::ZERO,
    }
}

pub fn poly_eval(p: &Poly, x: Rational) -> Rational {
    p.iter().rev().fold(Rational::ZERO, |acc, &c| acc * x + c)
}

/// Divides `p` by `(x - r)`, assuming `r` is a root.
fn deflate(p: &Poly, r: Rational) -> Poly {
    let d = p.len() - 1;
    let mut out = vec![Rational::ZERO; d];
    let mut carry = Rational::ZERO;
    for k in (0..d).rev() {
        carry = carry * r + p[k + 1];
        out[k] = carry;
    }
    out
}

fn divisors(n: i128) -> Vec<i128> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

/// Rational roots of `p` (with multiplicity in `p`) and the leftover factor
/// of degree ≥ 1 without rational roots, if any.
pub fn rational_roots(p: &Poly) -> (Vec<Rational>, Option<Poly>) {
    let mut p = p.clone();
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    let mut roots = Vec::new();
    while p.len() > 1 && p[0].is_zero() {
        roots.push(Rational::ZERO);
        p.remove(0);
    }
    loop {
        if p.len() <= 1 {
            return (roots, None);
        }
        let lcm = p.iter().fold(1i128, |l, c| num_integer::lcm(l, c.denom()));
        let ints: Vec<i128> = p.iter().map(|c| (*c * Rational::new(lcm, 1)).numer()).collect();
        let a0 = ints[0];
        let ad = *ints.last().unwrap();
        let mut found = None;
        'search: for num in divisors(a0) {
            for den in divisors(ad) {
                for s in [1, -1] {
                    let cand = Rational::new(s * num, den);
                    if poly_eval(&p, cand).is_zero() {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some(r) => {
                roots.push(r);
                p = deflate(&p, r);
            }
            None => return (roots, Some(p)),
        }
    }
}

/// Eigenvalues with geometric multiplicities, computed exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    /// Ascending `(eigenvalue, multiplicity)` pairs.
    pub eigenvalues: Vec<(Rational, usize)>,
    /// Factor of the minimal polynomial with no rational roots.
    pub irrational_factor: Option<Poly>,
}

impl Spectrum {
    pub fn total_multiplicity(&self) -> usize {
        self.eigenvalues.iter().map(|e| e.1).sum()
    }

    pub fn multiplicity(&self, lambda: Rational) -> usize {
        self.eigenvalues.iter().find(|e| e.0 == lambda).map_or(0, |e| e.1)
    }
}

pub fn spectrum(m: &Matrix) -> Spectrum {
    let (mut roots, rest) = rational_roots(&minimal_polynomial(m));
    roots.sort();
    roots.dedup();
    let n = m.nrows();
    let eigenvalues = roots
        .into_iter()
        .map(|l| (l, nullity(&(m - &Matrix::scalar(n, l)))))
        .collect();
    Spectrum { eigenvalues, irrational_factor: rest }
}
