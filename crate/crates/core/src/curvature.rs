//! Exact curvature operators on `Λ²ℝ^n`.
//!
//! Conventions: `R(X,Y,Z,W) = g(R_{X,Y}Z, W)` with
//! `R_{V,X}Y = g(X,Y)V - g(V,Y)X` on the unit sphere; a skew matrix `A`
//! is the 2-form `α(X,Y) = g(AX, Y)`, so the elementary rotation `E_ab`
//! (`e_a ↦ e_b`) is `e^a∧e^b`. The stored matrix `M` is the curvature
//! endomorphism `R̂(A)(X,Y) = ½ Σ_a R(A X_a, X_a, X, Y)` in the basis
//! `{E_ab}_{a<b}`, which gives `M[(cd),(ab)] = R(a,b,d,c)`,
//! `Ric(X,Y) = Σ_a R(X,X_a,X_a,Y)` and `tr M = scal/2`.

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::report::VerificationReport;
use crate::spin::JFamily;
use crate::structure::EvenCliffordStructure;

/// Index of the pair `(a, b)`, `0 ≤ a < b < n`, in lexicographic order.
pub fn pair_index(n: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < n);
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

fn unit(n: usize, a: usize) -> Vec<Rational> {
    let mut v = vec![Rational::ZERO; n];
    v[a] = Rational::ONE;
    v
}

/// `x yᵀ` as a matrix.
fn outer(x: &[Rational], y: &[Rational]) -> Matrix {
    Matrix::from_fn(x.len(), y.len(), |i, j| x[i] * y[j])
}

fn column(m: &Matrix, a: usize) -> Vec<Rational> {
    (0..m.nrows()).map(|i| m.get(i, a)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureOperator {
    n: usize,
    m: Matrix,
}

impl CurvatureOperator {
    pub fn zero(n: usize) -> Self {
        let d = n * (n - 1) / 2;
        CurvatureOperator { n, m: Matrix::zeros(d, d) }
    }

    /// Builds from the endomorphisms `R_{e_a,e_b}`, `a < b` (0-based).
    pub fn from_endomorphisms(n: usize, mut f: impl FnMut(usize, usize) -> Matrix) -> Self {
        let d = n * (n - 1) / 2;
        let mut cols = Vec::with_capacity(d);
        for (a, b) in pairs(n) {
            let r = f(a, b);
            cols.push(r.skew_coords().into_iter().map(|x| -x).collect::<Vec<_>>());
        }
        CurvatureOperator { n, m: linalg::from_columns(d, &cols) }
    }

    /// Wraps a matrix on `Λ²` in the `{E_ab}` basis; it must be symmetric.
    pub fn from_lambda2(n: usize, m: Matrix) -> Result<Self> {
        let d = n * (n - 1) / 2;
        if m.nrows() != d || m.ncols() != d {
            return Err(Error::DimensionMismatch { expected: d, found: m.nrows() });
        }
        if !m.is_symmetric() {
            return Err(Error::Invariant("curvature operator on Λ² must be symmetric".into()));
        }
        Ok(CurvatureOperator { n, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The matrix of `R̂` on `Λ²` in the `{E_ab}_{a<b}` basis.
    pub fn lambda2_matrix(&self) -> &Matrix {
        &self.m
    }

    /// `R(e_i, e_j, e_k, e_l)` (0-based).
    pub fn r4(&self, i: usize, j: usize, k: usize, l: usize) -> Rational {
        if i == j || k == l {
            return Rational::ZERO;
        }
        let (col, s1) = if i < j { (pair_index(self.n, i, j), 1) } else { (pair_index(self.n, j, i), -1) };
        let (row, s2) = if l < k { (pair_index(self.n, l, k), 1) } else { (pair_index(self.n, k, l), -1) };
        let v = self.m.get(row, col);
        if s1 * s2 == 1 {
            v
        } else {
            -v
        }
    }

    /// The endomorphism `R_{e_a,e_b}`, with entries `(w, z) = R(e_a, e_b, e_z, e_w)`.
    pub fn r_xy(&self, a: usize, b: usize) -> Matrix {
        if a == b {
            return Matrix::zeros(self.n, self.n);
        }
        let (lo, hi, s) = if a < b { (a, b, -Rational::ONE) } else { (b, a, Rational::ONE) };
        let col = pair_index(self.n, lo, hi);
        let coords: Vec<Rational> = (0..self.m.nrows()).map(|i| self.m.get(i, col) * s).collect();
        Matrix::from_skew_coords(self.n, &coords)
    }

    /// `R̂(A)` for a skew matrix `A`.
    pub fn hat(&self, a: &Matrix) -> Matrix {
        Matrix::from_skew_coords(self.n, &self.m.mul_vec(&a.skew_coords()))
    }

    pub fn scale(&self, c: Rational) -> Self {
        CurvatureOperator { n: self.n, m: self.m.scale(c) }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        CurvatureOperator { n: self.n, m: &self.m + &other.m }
    }

    /// Product metric: `self` on the first `n₁` coordinates, `other` on the rest.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let (n1, n2) = (self.n, other.n);
        let n = n1 + n2;
        CurvatureOperator::from_endomorphisms(n, |a, b| {
            if b < n1 {
                Matrix::block_diag(&[self.r_xy(a, b), Matrix::zeros(n2, n2)])
            } else if a >= n1 {
                Matrix::block_diag(&[Matrix::zeros(n1, n1), other.r_xy(a - n1, b - n1)])
            } else {
                Matrix::zeros(n, n)
            }
        })
    }

    pub fn ricci(&self) -> Matrix {
        let n = self.n;
        Matrix::from_fn(n, n, |x, y| (0..n).map(|a| self.r4(x, a, a, y)).sum())
    }

    pub fn scalar(&self) -> Rational {
        self.ricci().trace()
    }

    /// `Some(c)` when `Ric = c·g`.
    pub fn einstein_constant(&self) -> Option<Rational> {
        let ric = self.ricci();
        let c = ric.get(0, 0);
        (ric == Matrix::scalar(self.n, c)).then_some(c)
    }

    pub fn spectrum(&self) -> linalg::Spectrum {
        linalg::spectrum(&self.m)
    }

    /// Antisymmetries, pair symmetry, first Bianchi identity and
    /// `tr R̂ = scal/2`.
    pub fn check_symmetries(&self) -> VerificationReport {
        let n = self.n;
        let mut rep = VerificationReport::new("curvature symmetries");
        rep.check_flag("pair symmetry", &[], self.m.is_symmetric());
        rep.check_eq("R_XY skew", &[], &self.r_xy(0, n - 1).transpose(), &-&self.r_xy(0, n - 1));
        rep.absorb(self.bianchi());
        rep.check_scalar("tr R^ = scal/2", &[], self.m.trace(), self.scalar() * Rational::new(1, 2));
        rep
    }

    pub fn bianchi(&self) -> VerificationReport {
        let n = self.n;
        let mut rep = VerificationReport::new("bianchi");
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in 0..n {
                        let s = self.r4(i, j, k, l) + self.r4(j, k, i, l) + self.r4(k, i, j, l);
                        rep.check_scalar("first Bianchi", &[i + 1, j + 1, k + 1, l + 1], s, Rational::ZERO);
                    }
                }
            }
        }
        rep
    }
}

/// `R(X,Y,Z,W) = c[g(X,W)g(Y,Z) - g(X,Z)g(Y,W)]`.
pub fn constant_curvature_op(n: usize, c: Rational) -> Result<CurvatureOperator> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("dimension {n} < 2")));
    }
    Ok(CurvatureOperator { n, m: Matrix::scalar(n * (n - 1) / 2, c) })
}

/// `(c/4)[XYᵀ - YXᵀ + Σ_α (J_αX (J_αY)ᵀ - J_αY (J_αX)ᵀ - 2g(J_αX,Y)J_α)]`,
/// the shared shape of the complex and quaternionic projective models.
fn projective_model(structures: &[Matrix], c: Rational) -> CurvatureOperator {
    let n = structures[0].nrows();
    let quarter = c * Rational::new(1, 4);
    CurvatureOperator::from_endomorphisms(n, |a, b| {
        let (x, y) = (unit(n, a), unit(n, b));
        let mut m = &outer(&x, &y) - &outer(&y, &x);
        for j in structures {
            let jx = column(j, a);
            let jy = column(j, b);
            m = &m + &(&outer(&jx, &jy) - &outer(&jy, &jx));
            let g = jx[b];
            if !g.is_zero() {
                m = &m - &j.scale(Rational::from_int(2) * g);
            }
        }
        m.scale(quarter)
    })
}

fn check_complex_structure(j: &Matrix) -> Result<()> {
    let n = j.nrows();
    if !j.is_skew() || j.matmul(j) != Matrix::scalar(n, -Rational::ONE) {
        return Err(Error::Invariant("expected an orthogonal complex structure".into()));
    }
    Ok(())
}

/// Standard complex structure on `ℝ^{2m}` (blocks `[[0,-1],[1,0]]`).
pub fn standard_complex_structure(m: usize) -> Matrix {
    Matrix::identity(m).kron(&Matrix::from_i64_rows(&[&[0, -1], &[1, 0]]))
}

/// Standard quaternionic triple `(I, J, K = IJ)` on `ℝ^{4q}`.
pub fn standard_quaternionic_triple(q: usize) -> [Matrix; 3] {
    let e = Matrix::from_i64_rows(&[&[0, -1], &[1, 0]]);
    let x = Matrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
    let i = Matrix::identity(2).kron(&e);
    let j = e.kron(&x);
    let k = i.matmul(&j);
    let id = Matrix::identity(q);
    [id.kron(&i), id.kron(&j), id.kron(&k)]
}

/// `ℂP^m` with holomorphic sectional curvature `c` and the standard `J`.
pub fn fubini_study_op(m: usize, c: Rational) -> Result<(CurvatureOperator, Matrix)> {
    if m == 0 {
        return Err(Error::OutOfRange("complex dimension must be at least 1".into()));
    }
    let j = standard_complex_structure(m);
    Ok((fubini_study_with(&j, c)?, j))
}

/// `ℂP^m` curvature for a given orthogonal complex structure `J`.
pub fn fubini_study_with(j: &Matrix, c: Rational) -> Result<CurvatureOperator> {
    check_complex_structure(j)?;
    Ok(projective_model(std::slice::from_ref(j), c))
}

/// `ℍP^q` with the standard quaternionic triple.
pub fn quaternionic_op(q: usize, c: Rational) -> Result<(CurvatureOperator, [Matrix; 3])> {
    if q == 0 {
        return Err(Error::OutOfRange("quaternionic dimension must be at least 1".into()));
    }
    let t = standard_quaternionic_triple(q);
    Ok((quaternionic_with(&t, c)?, t))
}

/// `ℍP^q` curvature for a triple `I, J, K = IJ` of orthogonal complex structures.
pub fn quaternionic_with(triple: &[Matrix; 3], c: Rational) -> Result<CurvatureOperator> {
    for j in triple {
        check_complex_structure(j)?;
    }
    if triple[0].matmul(&triple[1]) != triple[2] {
        return Err(Error::Invariant("quaternionic triple must satisfy IJ = K".into()));
    }
    Ok(projective_model(triple, c))
}

/// Rescales `op` so that its scalar curvature equals `target`.
pub fn calibrate(op: &CurvatureOperator, target: Rational) -> Result<(CurvatureOperator, Rational)> {
    let s = op.scalar();
    if s.is_zero() {
        return Err(Error::Invariant("cannot calibrate a scalar-flat operator".into()));
    }
    let c = target / s;
    Ok((op.scale(c), c))
}

/// One ideal of an isotropy algebra: spanning skew matrices and its scale.
#[derive(Debug, Clone)]
pub struct Ideal {
    pub generators: Vec<Matrix>,
    pub scale: Rational,
}

fn independent_coords(gens: &[Matrix]) -> Vec<Vec<Rational>> {
    let mut basis = linalg::EchelonBasis::new();
    let mut out = Vec::new();
    for g in gens {
        let c = g.skew_coords();
        if basis.insert(&linalg::sparse_from_dense(&c)) {
            out.push(c);
        }
    }
    out
}

/// Orthogonal projection of `Λ²` onto the span of `gens` in `{E_ab}` coordinates.
pub fn projection_onto(n: usize, gens: &[Matrix]) -> Matrix {
    let d = n * (n - 1) / 2;
    let cols = independent_coords(gens);
    if cols.is_empty() {
        return Matrix::zeros(d, d);
    }
    let v = linalg::from_columns(d, &cols);
    let vt = v.transpose();
    let gram_inv = linalg::inverse(&vt.matmul(&v)).expect("independent columns");
    v.matmul(&gram_inv).matmul(&vt)
}

/// `R̂ = Σ c_ideal·Π_ideal` for an isotropy algebra `𝔥 = ⊕ ideals`.
pub fn isotropy_projection_op(n: usize, ideals: &[Ideal]) -> Result<CurvatureOperator> {
    if ideals.is_empty() {
        return Ok(CurvatureOperator::zero(n));
    }
    for (x, ideal) in ideals.iter().enumerate() {
        for g in &ideal.generators {
            if g.nrows() != n || !g.is_skew() {
                return Err(Error::NotSubalgebra(format!("ideal {x} has a generator that is not a skew {n}×{n} matrix")));
            }
        }
        let mut span = linalg::EchelonBasis::new();
        for g in &ideal.generators {
            span.insert(&linalg::flatten(g));
        }
        for (p, a) in ideal.generators.iter().enumerate() {
            for b in &ideal.generators[p + 1..] {
                if !span.contains(&linalg::flatten(&a.commutator(b))) {
                    return Err(Error::NotSubalgebra(format!("ideal {x} is not closed under the bracket")));
                }
            }
        }
        for (y, other) in ideals.iter().enumerate().skip(x + 1) {
            for a in &ideal.generators {
                for b in &other.generators {
                    if !a.commutator(b).is_zero() {
                        return Err(Error::NotSubalgebra(format!("ideals {x} and {y} do not commute")));
                    }
                }
            }
        }
    }
    let d = n * (n - 1) / 2;
    let mut m = Matrix::zeros(d, d);
    for ideal in ideals {
        m = &m + &projection_onto(n, &ideal.generators).scale(ideal.scale);
    }
    let op = CurvatureOperator { n, m };
    let b = op.bianchi();
    if !b.passed {
        let residual: Rational = b.failures.iter().map(|f| f.residual).sum();
        return Err(Error::Calibration { residual: residual.to_string() });
    }
    Ok(op)
}

/// Dimension and basis of `{X ∈ 𝔰𝔬(n) : [X, G] = 0 for all G in gens}`.
pub fn centralizer(n: usize, gens: &[Matrix]) -> (usize, Vec<Matrix>) {
    let ps = pairs(n);
    // Column (ab) holds the stacked flattened commutators [E_ab, G].
    let mut rows: Vec<Vec<(usize, Rational)>> = Vec::new();
    let mut cols: Vec<Vec<(usize, Rational)>> = Vec::with_capacity(ps.len());
    for &(a, b) in &ps {
        let e = Matrix::elementary_rotation(n, a, b);
        let mut col = Vec::new();
        for (gi, g) in gens.iter().enumerate() {
            for (idx, v) in linalg::flatten(&e.commutator(g)) {
                col.push((gi * n * n + idx, v));
            }
        }
        cols.push(col);
    }
    let nrows = gens.len() * n * n;
    rows.resize(nrows, Vec::new());
    for (c, col) in cols.iter().enumerate() {
        for &(r, v) in col {
            rows[r].push((c, v));
        }
    }
    let system = Matrix::from_sparse_rows(nrows, ps.len(), rows);
    let ns = linalg::nullspace(&system);
    let basis: Vec<Matrix> = ns.iter().map(|x| Matrix::from_skew_coords(n, x)).collect();
    (basis.len(), basis)
}

pub fn centralizer_dim(n: usize, gens: &[Matrix]) -> usize {
    centralizer(n, gens).0
}

/// Pair list `(i, j)`, `i < j`, of a family.
fn family_pairs(f: &JFamily) -> Vec<(usize, usize)> {
    f.pairs()
}

/// `Σ_s [ω_si J_sj + ω_sj J_is]` for a skew table `ω` (with `ω_ss = 0`)
/// of scalars.
fn derivation(f: &JFamily, omega: &dyn Fn(usize, usize) -> Rational, i: usize, j: usize) -> Matrix {
    let n = f.n();
    let mut out = Matrix::zeros(n, n);
    for s in 1..=f.r() {
        let a = if s == i { Rational::ZERO } else { omega(s, i) };
        if !a.is_zero() {
            out = &out + &f.get(s, j).scale(a);
        }
        let b = if s == j { Rational::ZERO } else { omega(s, j) };
        if !b.is_zero() {
            out = &out + &f.get(i, s).scale(b);
        }
    }
    out
}

/// Checks, for a structure `J` and a constant `κ`:
/// `R̂(J_ik) = (n/4)κ·J_ik`; `[R_{X,Y}, J_ij] = κ Σ_s [g(J_si X,Y) J_sj + g(J_sj X,Y) J_is]`
/// on frame pairs (terms with `s = i` resp. `s = j` vanish); and
/// `Ric = κ(n/4 + 2r - 4)·g`.
pub fn verify_parallel_identities(op: &CurvatureOperator, s: &EvenCliffordStructure, kappa: Rational) -> Result<VerificationReport> {
    let (n, r) = (s.n(), s.r());
    if op.n() != n {
        return Err(Error::DimensionMismatch { expected: op.n(), found: n });
    }
    let f = &s.family;
    let mut rep = VerificationReport::new("parallel identities");
    let nq = Rational::new(n as i128, 4);
    for (i, k) in family_pairs(f) {
        rep.check_eq("R^(J_ik) = (n/4)k J_ik", &[i, k], &op.hat(f.get(i, k)), &f.get(i, k).scale(nq * kappa));
    }
    for (a, b) in pairs(n) {
        let rxy = op.r_xy(a, b);
        // g(J_st e_a, e_b) = (J_st)[b][a]
        let omega = |p: usize, q: usize| kappa * f.get(p, q).get(b, a);
        for (i, j) in family_pairs(f) {
            let lhs = rxy.commutator(f.get(i, j));
            let rhs = derivation(f, &omega, i, j);
            rep.check_eq("[R_XY, J_ij] = k sum_s(...)", &[a + 1, b + 1, i, j], &lhs, &rhs);
        }
    }
    let ric_c = kappa * (nq + Rational::from_int(2 * r as i64 - 4));
    rep.check_eq("Ric = k(n/4+2r-4) g", &[], &op.ricci(), &Matrix::scalar(n, ric_c));
    Ok(rep)
}

/// `scal = 2n(n/4 + 2r - 4)`.
pub fn scal_formula(n: usize, r: usize) -> Rational {
    let n_q = Rational::from_int(n as i64);
    Rational::from_int(2) * n_q * (n_q * Rational::new(1, 4) + Rational::from_int(2 * r as i64 - 4))
}

/// The parallel identities with `κ = 2` plus the scalar-curvature check.
pub fn verify_cc_normalization(op: &CurvatureOperator, s: &EvenCliffordStructure) -> Result<VerificationReport> {
    let mut rep = verify_parallel_identities(op, s, Rational::from_int(2))?;
    rep.suite = "cc normalization".into();
    if s.n() == 4 {
        rep.observe("n = 4 lies outside the range of the scal formula", &[4], scal_formula(4, s.r()));
    }
    rep.check_scalar("scal = 2n(n/4+2r-4)", &[s.n(), s.r()], op.scalar(), scal_formula(s.n(), s.r()));
    Ok(rep)
}

/// Curvature forms `ω_ik = (4/n)·R̂(J_ik)` read off from `2R^{ik} = nω_ik`.
pub fn derived_forms(op: &CurvatureOperator, f: &JFamily) -> JFamily {
    let c = Rational::new(4, op.n() as i128);
    JFamily::from_fn(f.n(), f.r(), |i, k| op.hat(f.get(i, k)).scale(c))
}

/// Identities that follow from the derived forms `ω = (4/n)R̂(J)`:
/// `ω_ij = κJ_ij`; `0 = Ric + (n/4-2)J_ij∘ω_ij + Σ_s[J_si∘ω_si + J_sj∘ω_sj]`;
/// `J_ij∘ω_ij = Ric/(4 - n/4 - 2r)`; `<ω_ij, J_kl> = 0` off the diagonal.
pub fn verify_derived_identities(op: &CurvatureOperator, s: &EvenCliffordStructure, kappa: Rational) -> VerificationReport {
    let (n, r) = (s.n(), s.r());
    let f = &s.family;
    let w = derived_forms(op, f);
    // ω_ss = 0 while the table stores -I on the diagonal.
    let om = |a: usize, b: usize| if a == b { Matrix::zeros(n, n) } else { w.get(a, b).clone() };
    let ric = op.ricci();
    let nq = Rational::new(n as i128, 4);
    let mut rep = VerificationReport::new("derived identities");
    for (i, j) in family_pairs(f) {
        rep.check_eq("omega_ij = k J_ij", &[i, j], &om(i, j), &f.get(i, j).scale(kappa));
        let mut sum = &ric + &f.get(i, j).matmul(&om(i, j)).scale(nq - Rational::from_int(2));
        for s_ in 1..=r {
            sum = &sum + &f.get(s_, i).matmul(&om(s_, i));
            sum = &sum + &f.get(s_, j).matmul(&om(s_, j));
        }
        rep.check_zero("0 = Ric + (n/4-2)J_ij w_ij + sum_s(...)", &[i, j], &sum);
        let denom = Rational::from_int(4) - nq - Rational::from_int(2 * r as i64);
        if !denom.is_zero() {
            rep.check_eq("J_ij w_ij = Ric/(4-n/4-2r)", &[i, j], &f.get(i, j).matmul(&om(i, j)), &ric.scale(denom.recip()));
        }
        for (k, l) in family_pairs(f) {
            if (k, l) != (i, j) {
                rep.check_scalar("<w_ij, J_kl> = 0", &[i, j, k, l], om(i, j).trace_product(f.get(k, l)), Rational::ZERO);
            }
        }
    }
    rep
}

/// Curvature forms `ω_st(e_a, e_b)` solved from
/// `[R_{X,Y}, J_ij] = Σ_s [ω_si(X,Y) J_sj + ω_sj(X,Y) J_is]`, returned as
/// skew matrices (2-forms), or `None` when the system has no solution.
pub fn connection_forms(op: &CurvatureOperator, f: &JFamily) -> Option<JFamily> {
    let (n, r) = (f.n(), f.r());
    let unknowns = family_pairs(f);
    let eqs = family_pairs(f);
    // Column u = flattened Σ over equations of the derivation induced by ω = E^{pq}.
    let cols: Vec<linalg::SparseVec> = unknowns
        .iter()
        .map(|&(p, q)| {
            let om = move |a: usize, b: usize| {
                if (a, b) == (p, q) {
                    Rational::ONE
                } else if (a, b) == (q, p) {
                    -Rational::ONE
                } else {
                    Rational::ZERO
                }
            };
            let mut v = Vec::new();
            for (e, &(i, j)) in eqs.iter().enumerate() {
                for (idx, x) in linalg::flatten(&derivation(f, &om, i, j)) {
                    v.push((e * n * n + idx, x));
                }
            }
            v
        })
        .collect();
    let u = unknowns.len();
    let dot = |a: &linalg::SparseVec, b: &linalg::SparseVec| -> Rational {
        let (mut x, mut y, mut s) = (0, 0, Rational::ZERO);
        while x < a.len() && y < b.len() {
            match a[x].0.cmp(&b[y].0) {
                std::cmp::Ordering::Less => x += 1,
                std::cmp::Ordering::Greater => y += 1,
                std::cmp::Ordering::Equal => {
                    s += a[x].1 * b[y].1;
                    x += 1;
                    y += 1;
                }
            }
        }
        s
    };
    let gram = Matrix::from_fn(u, u, |p, q| dot(&cols[p], &cols[q]));
    let gram_inv = linalg::inverse(&gram)?;
    let mut values = vec![vec![Rational::ZERO; n * (n - 1) / 2]; u];
    for (pi, (a, b)) in pairs(n).into_iter().enumerate() {
        let rxy = op.r_xy(a, b);
        let mut rhs = Vec::new();
        for (e, &(i, j)) in eqs.iter().enumerate() {
            for (idx, x) in linalg::flatten(&rxy.commutator(f.get(i, j))) {
                rhs.push((e * n * n + idx, x));
            }
        }
        let atb: Vec<Rational> = cols.iter().map(|c| dot(c, &rhs)).collect();
        let x = gram_inv.mul_vec(&atb);
        let mut fit: linalg::SparseVec = Vec::new();
        for (k, col) in cols.iter().enumerate() {
            fit = linalg::axpy(&fit, x[k], col);
        }
        if fit != rhs {
            return None;
        }
        for k in 0..u {
            values[k][pi] = x[k];
        }
    }
    let idx = |i: usize, j: usize| unknowns.iter().position(|&p| p == (i, j)).expect("pair");
    Some(JFamily::from_fn(n, r, |i, j| Matrix::from_skew_coords(n, &values[idx(i, j)])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    #[test]
    fn sphere_conventions() {
        let op = constant_curvature_op(4, qi(1)).unwrap();
        assert_eq!(op.ricci(), Matrix::scalar(4, qi(3)));
        // R_{V,X}Y = g(X,Y)V - g(V,Y)X with V = e0, X = Y = e1 gives e0.
        let r01 = op.r_xy(0, 1);
        assert_eq!(r01.mul_vec(&unit(4, 1)), unit(4, 0));
        assert_eq!(op.r4(0, 1, 1, 0), qi(1));
        assert!(op.check_symmetries().passed);
    }

    #[test]
    fn projective_line_is_round() {
        let (op, _) = fubini_study_op(1, qi(3)).unwrap();
        assert_eq!(op.lambda2_matrix(), &Matrix::scalar(1, qi(3)));
    }

    #[test]
    fn quaternionic_line_blocks() {
        let (op, t) = quaternionic_op(1, qi(1)).unwrap();
        assert!(op.check_symmetries().passed);
        assert!(op.einstein_constant().is_some());
        let s = op.spectrum();
        assert_eq!(s.total_multiplicity(), 6);
        for j in &t {
            let h = op.hat(j);
            assert_eq!(linalg::span_dim(&[h, j.clone()]), 1);
        }
    }

    #[test]
    fn full_isotropy_gives_constant_curvature() {
        let n = 4;
        let gens: Vec<Matrix> = pairs(n).into_iter().map(|(a, b)| Matrix::elementary_rotation(n, a, b)).collect();
        let op = isotropy_projection_op(n, &[Ideal { generators: gens, scale: qi(3) }]).unwrap();
        assert_eq!(op, constant_curvature_op(n, qi(3)).unwrap());
    }

    #[test]
    fn centralizer_of_nothing_is_everything() {
        assert_eq!(centralizer_dim(5, &[]), 10);
        assert_eq!(centralizer_dim(4, &[standard_complex_structure(2)]), 4);
    }

    #[test]
    fn scal_formula_values() {
        assert_eq!(scal_formula(8, 8), qi(224));
        assert_eq!(scal_formula(16, 9), qi(576));
    }
}
