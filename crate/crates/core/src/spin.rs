//! Integer matrix representations of `Cl_r` and `Cl⁰_r`, their dimension
//! tables, and the `J_ij` families they induce.

use serde::{Deserialize, Serialize};

use crate::blade::{indices_of, CliffordElement};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::Rational;

pub const DEFAULT_MAX_RANK: usize = 16;
pub const MAX_RANK_ENV: &str = "CLIFFLAB_MAX_RANK";

/// Largest rank accepted by the constructors: 16, or `CLIFFLAB_MAX_RANK`
/// when set (clamped to 32).
pub fn max_rank() -> usize {
    std::env::var(MAX_RANK_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map_or(DEFAULT_MAX_RANK, |v| v.clamp(1, crate::blade::MAX_ALGEBRA_RANK))
}

fn check_rank(r: usize) -> Result<()> {
    let max = max_rank();
    if r > max {
        return Err(Error::UnsupportedRank { rank: r, max });
    }
    Ok(())
}

const N_BASE: [usize; 8] = [2, 4, 4, 8, 8, 8, 8, 16];

/// Dimension `N(r)` of an irreducible real `Cl_r` module.
pub fn n_irr(r: usize) -> Result<usize> {
    if r == 0 {
        return Err(Error::InvalidRank(0));
    }
    let (q, s) = ((r - 1) / 8, (r - 1) % 8);
    Ok(N_BASE[s] * 16usize.pow(q as u32))
}

/// Dimension `N₀(r) = N(r-1)` of an irreducible real `Cl⁰_r` module.
pub fn n0(r: usize) -> Result<usize> {
    if r < 2 {
        return Err(Error::InvalidRank(r));
    }
    n_irr(r - 1)
}

fn pauli(c: char) -> Matrix {
    match c {
        'I' => Matrix::identity(2),
        'E' => Matrix::from_i64_rows(&[&[0, -1], &[1, 0]]),
        'X' => Matrix::from_i64_rows(&[&[0, 1], &[1, 0]]),
        'Z' => Matrix::from_i64_rows(&[&[1, 0], &[0, -1]]),
        _ => unreachable!("unknown Pauli letter"),
    }
}

/// Kronecker product of a word over `I, E, X, Z`, left factor outermost.
fn pauli_word(w: &str) -> Matrix {
    w.chars().map(pauli).reduce(|a, b| a.kron(&b)).expect("empty Pauli word")
}

const OCTONIONIC: [&str; 7] = ["IIE", "IEX", "EIZ", "EXX", "EZX", "XEZ", "ZEZ"];

fn base_generators(r: usize) -> Vec<Matrix> {
    match r {
        1 => vec![pauli('E')],
        2 | 3 => ["IE", "EX", "EZ"][..r].iter().map(|w| pauli_word(w)).collect(),
        4..=7 => OCTONIONIC[..r].iter().map(|w| pauli_word(w)).collect(),
        8 => {
            let x = pauli('X');
            let mut g: Vec<Matrix> = OCTONIONIC.iter().map(|w| x.kron(&pauli_word(w))).collect();
            g.push(pauli('E').kron(&Matrix::identity(8)));
            g
        }
        _ => unreachable!(),
    }
}

/// Irreducible generators for any rank, via `Cl_{r+8} = Cl_8 ⊗ Cl_r`.
fn irreducible_generators(r: usize) -> Vec<Matrix> {
    if r <= 8 {
        return base_generators(r);
    }
    let g8 = base_generators(8);
    let omega = product(&g8);
    let inner = irreducible_generators(r - 8);
    let k = inner[0].nrows();
    let id_k = Matrix::identity(k);
    let mut out: Vec<Matrix> = g8.iter().map(|g| g.kron(&id_k)).collect();
    out.extend(inner.iter().map(|f| omega.kron(f)));
    out
}

fn product(ms: &[Matrix]) -> Matrix {
    ms.iter().skip(1).fold(ms[0].clone(), |acc, m| acc.matmul(m))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepKind {
    Full,
    Even,
}

impl std::str::FromStr for RepKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(RepKind::Full),
            "even" => Ok(RepKind::Even),
            _ => Err(Error::Parse(format!("unknown representation kind `{s}`"))),
        }
    }
}

/// Integer generator matrices realizing `Cl_r` (`Full`) or `Cl⁰_r` (`Even`).
///
/// For the even kind, `generators[i]` is the image of `e_1·e_{i+2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixRep {
    pub rank: usize,
    pub dim: usize,
    pub kind: RepKind,
    pub generators: Vec<Matrix>,
    pub volume_split: Option<(usize, usize)>,
}

pub fn build_clifford_rep(r: usize, copies: usize) -> Result<MatrixRep> {
    if r == 0 {
        return Err(Error::InvalidRank(0));
    }
    check_rank(r)?;
    if copies == 0 {
        return Err(Error::OutOfRange("copies must be at least 1".into()));
    }
    let id = Matrix::identity(copies);
    let generators: Vec<Matrix> = irreducible_generators(r).iter().map(|g| id.kron(g)).collect();
    Ok(MatrixRep { rank: r, dim: generators[0].nrows(), kind: RepKind::Full, generators, volume_split: None })
}

/// A `Cl⁰_r` module built from `Cl_{r-1}` generators `F` by `e_1·e_{k+1} ↦ F_k`.
///
/// For `r ≡ 0 mod 4` the volume acts by `+1` on the first `N₀(r)·m_plus`
/// coordinates and by `-1` on the rest. Otherwise there is a single
/// irreducible class, `m_plus` must equal `m_minus`, and the dimension is
/// `N₀(r)·m_plus`.
pub fn build_even_rep(r: usize, m_plus: usize, m_minus: usize) -> Result<MatrixRep> {
    if r < 2 {
        return Err(Error::InvalidRank(r));
    }
    check_rank(r)?;
    let bad = |reason| Error::InvalidMultiplicities { rank: r, m_plus, m_minus, reason };
    if m_plus + m_minus == 0 {
        return Err(bad("at least one block is required"));
    }
    let f = irreducible_generators(r - 1);
    if !r.is_multiple_of(4) {
        if m_plus != m_minus {
            return Err(bad("only one irreducible class exists for this rank"));
        }
        let id = Matrix::identity(m_plus);
        let generators: Vec<Matrix> = f.iter().map(|g| id.kron(g)).collect();
        return Ok(MatrixRep { rank: r, dim: generators[0].nrows(), kind: RepKind::Even, generators, volume_split: None });
    }
    // Orient the block so the even volume J12·J34·… is +I on it.
    let n = f[0].nrows();
    let vol = even_volume_of(&f);
    let plus_block = if vol == Matrix::identity(n) {
        f.clone()
    } else if vol == Matrix::scalar(n, -Rational::ONE) {
        f.iter().map(|g| -g).collect()
    } else {
        return Err(Error::Invariant("irreducible block volume is not ±I".into()));
    };
    let minus_block: Vec<Matrix> = plus_block.iter().map(|g| -g).collect();
    let generators = (0..r - 1)
        .map(|k| {
            let mut blocks = Vec::new();
            blocks.extend(std::iter::repeat_n(plus_block[k].clone(), m_plus));
            blocks.extend(std::iter::repeat_n(minus_block[k].clone(), m_minus));
            Matrix::block_diag(&blocks)
        })
        .collect::<Vec<_>>();
    Ok(MatrixRep {
        rank: r,
        dim: generators[0].nrows(),
        kind: RepKind::Even,
        generators,
        volume_split: Some((n * m_plus, n * m_minus)),
    })
}

/// `J_12·J_34·…` for the even family induced by `f` (`r = f.len() + 1` even).
fn even_volume_of(f: &[Matrix]) -> Matrix {
    let n = f[0].nrows();
    let r = f.len() + 1;
    let tilde = |a: usize| if a == 1 { Matrix::identity(n) } else { f[a - 2].clone() };
    let mut v = Matrix::identity(n);
    for a in (1..r).step_by(2) {
        v = v.matmul(&tilde(a).matmul(&tilde(a + 1)));
    }
    v
}

impl MatrixRep {
    /// `Ĝ_a` with `J_ab = Ĝ_a·Ĝ_b` for the even kind (`Ĝ_1 = I`).
    fn even_factor(&self, a: usize) -> Matrix {
        if a == 1 {
            Matrix::identity(self.dim)
        } else {
            self.generators[a - 2].clone()
        }
    }

    /// Image of `e_a·e_b` for `a ≠ b`.
    pub fn j(&self, a: usize, b: usize) -> Matrix {
        assert!(a != b && a >= 1 && b >= 1 && a <= self.rank && b <= self.rank);
        match self.kind {
            RepKind::Full => self.generators[a - 1].matmul(&self.generators[b - 1]),
            RepKind::Even => {
                let (lo, hi, s) = if a < b { (a, b, 1) } else { (b, a, -1) };
                let m = self.even_factor(lo).matmul(&self.even_factor(hi));
                if s == 1 {
                    m
                } else {
                    -&m
                }
            }
        }
    }

    fn blade_image(&self, mask: u32) -> Matrix {
        let idx = indices_of(mask);
        match self.kind {
            RepKind::Full => {
                let mut m = Matrix::identity(self.dim);
                for i in idx {
                    m = m.matmul(&self.generators[i - 1]);
                }
                m
            }
            RepKind::Even => {
                let mut m = Matrix::identity(self.dim);
                for pair in idx.chunks(2) {
                    m = m.matmul(&self.j(pair[0], pair[1]));
                }
                m
            }
        }
    }

    /// Algebra morphism `Cl_r → End(ℝ^N)` (or from `Cl⁰_r` for the even kind).
    pub fn evaluate(&self, x: &CliffordElement) -> Result<Matrix> {
        if x.rank() != self.rank {
            return Err(Error::SignatureMismatch { left: x.rank(), right: self.rank });
        }
        if self.kind == RepKind::Even && !x.is_even() {
            return Err(Error::ParityMismatch);
        }
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (mask, c) in x.terms() {
            out = &out + &self.blade_image(mask).scale(c);
        }
        Ok(out)
    }

    /// Image of the volume element (full kind, or even kind with `r` even).
    pub fn volume(&self) -> Result<Matrix> {
        match self.kind {
            RepKind::Full => Ok(product(&self.generators)),
            RepKind::Even if self.rank.is_multiple_of(2) => Ok(self.blade_image(crate::blade::mask_of(&(1..=self.rank).collect::<Vec<_>>()))),
            RepKind::Even => Err(Error::ParityMismatch),
        }
    }

    pub fn j_family(&self) -> JFamily {
        JFamily::from_fn(self.dim, self.rank, |a, b| self.j(a, b))
    }

    /// The full representation restricted to the first `k` generators.
    pub fn truncate(&self, k: usize) -> Result<MatrixRep> {
        if self.kind != RepKind::Full || k == 0 || k > self.rank {
            return Err(Error::OutOfRange(format!("cannot truncate to rank {k}")));
        }
        Ok(MatrixRep { rank: k, dim: self.dim, kind: RepKind::Full, generators: self.generators[..k].to_vec(), volume_split: None })
    }

    /// Checks signed-permutation, skew and anticommutation invariants.
    pub fn check_invariants(&self) -> Result<()> {
        let id = Matrix::identity(self.dim);
        let minus2 = id.scale(Rational::from_int(-2));
        for (i, g) in self.generators.iter().enumerate() {
            if g.nrows() != self.dim || !g.is_signed_permutation() || !g.is_skew() {
                return Err(Error::Invariant(format!("generator {} is not a skew signed permutation", i + 1)));
            }
            if &g.transpose() * g != id {
                return Err(Error::Invariant(format!("generator {} is not orthogonal", i + 1)));
            }
            for (j, h) in self.generators.iter().enumerate().skip(i) {
                let expect = if i == j { minus2.clone() } else { Matrix::zeros(self.dim, self.dim) };
                if g.anticommutator(h) != expect {
                    return Err(Error::Invariant(format!("generators {} and {} violate the Clifford relation", i + 1, j + 1)));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> RepJson {
        RepJson {
            rank: self.rank,
            dim: self.dim,
            kind: self.kind,
            volume_split: self.volume_split,
            generators: self
                .generators
                .iter()
                .map(|g| g.to_flat().iter().map(|v| v.to_integer().expect("integer generator") as i64).collect())
                .collect(),
        }
    }

    /// Reads a serialized representation back and re-checks its invariants.
    pub fn from_json(json: &RepJson) -> Result<Self> {
        if json.rank == 0 || (json.kind == RepKind::Even && json.rank < 2) {
            return Err(Error::InvalidRank(json.rank));
        }
        check_rank(json.rank)?;
        if json.dim == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        let expected = match json.kind {
            RepKind::Full => json.rank,
            RepKind::Even => json.rank - 1,
        };
        if json.generators.len() != expected {
            return Err(Error::DimensionMismatch { expected, found: json.generators.len() });
        }
        let generators = json
            .generators
            .iter()
            .map(|g| {
                let flat: Vec<Rational> = g.iter().map(|&v| Rational::from_int(v)).collect();
                Matrix::from_flat(json.dim, json.dim, &flat).ok_or(Error::DimensionMismatch { expected: json.dim * json.dim, found: g.len() })
            })
            .collect::<Result<Vec<_>>>()?;
        let rep = MatrixRep { rank: json.rank, dim: json.dim, kind: json.kind, generators, volume_split: json.volume_split };
        rep.check_invariants()?;
        Ok(rep)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepJson {
    pub rank: usize,
    pub dim: usize,
    pub kind: RepKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub volume_split: Option<(usize, usize)>,
    /// Row-major integer entries, one array per generator.
    pub generators: Vec<Vec<i64>>,
}

/// The family `J_ij`, `1 ≤ i, j ≤ r`, with `J_ji = -J_ij` and `J_ii = -I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JFamily {
    n: usize,
    r: usize,
    table: Vec<Matrix>,
}

impl JFamily {
    /// Builds from the upper-triangle values `f(i, j)`, `i < j`.
    pub fn from_fn(n: usize, r: usize, mut f: impl FnMut(usize, usize) -> Matrix) -> Self {
        let mut table = vec![Matrix::zeros(n, n); r * r];
        for i in 1..=r {
            table[(i - 1) * r + i - 1] = Matrix::scalar(n, -Rational::ONE);
            for j in i + 1..=r {
                let m = f(i, j);
                assert_eq!((m.nrows(), m.ncols()), (n, n), "J_{i}{j} has the wrong shape");
                table[(j - 1) * r + i - 1] = -&m;
                table[(i - 1) * r + j - 1] = m;
            }
        }
        JFamily { n, r, table }
    }

    /// Validating constructor for untrusted upper-triangle data.
    pub fn from_upper(n: usize, r: usize, entries: Vec<((usize, usize), Matrix)>) -> Result<Self> {
        let mut map = std::collections::BTreeMap::new();
        for ((i, j), m) in entries {
            if !(1 <= i && i < j && j <= r) {
                return Err(Error::OutOfRange(format!("pair ({i}, {j}) for rank {r}")));
            }
            if m.nrows() != n || m.ncols() != n {
                return Err(Error::DimensionMismatch { expected: n, found: m.nrows() });
            }
            map.insert((i, j), m);
        }
        if map.len() != r * (r - 1) / 2 {
            return Err(Error::Parse(format!("expected {} matrices, found {}", r * (r - 1) / 2, map.len())));
        }
        Ok(Self::from_fn(n, r, |i, j| map[&(i, j)].clone()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn get(&self, i: usize, j: usize) -> &Matrix {
        &self.table[(i - 1) * self.r + j - 1]
    }

    /// Pairs `(i, j)` with `i < j`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (1..=self.r).flat_map(|i| (i + 1..=self.r).map(move |j| (i, j))).collect()
    }

    pub fn replace(&mut self, i: usize, j: usize, m: Matrix) {
        assert!(i < j);
        self.table[(j - 1) * self.r + i - 1] = -&m;
        self.table[(i - 1) * self.r + j - 1] = m;
    }

    /// Sets `J_ii = -unit`, for a family that acts on the image of the
    /// projection `unit` and vanishes on its kernel.
    pub fn with_unit(mut self, unit: &Matrix) -> JFamily {
        for i in 1..=self.r {
            self.table[(i - 1) * self.r + i - 1] = -unit;
        }
        self
    }

    /// Restriction to the given coordinates (an invariant subspace).
    pub fn restrict(&self, coords: &[usize]) -> JFamily {
        JFamily::from_fn(coords.len(), self.r, |i, j| self.get(i, j).submatrix(coords, coords))
    }

    /// Conjugation `P⁻¹ J P` by an invertible matrix.
    pub fn conjugate(&self, p: &Matrix, p_inv: &Matrix) -> JFamily {
        JFamily::from_fn(self.n, self.r, |i, j| p_inv.matmul(self.get(i, j)).matmul(p))
    }

    pub fn to_json(&self) -> StructureJson {
        StructureJson {
            n: self.n,
            r: self.r,
            j: self
                .pairs()
                .into_iter()
                .map(|(i, j)| JEntryJson { i, j, data: self.get(i, j).to_flat() })
                .collect(),
        }
    }

    pub fn from_json(s: &StructureJson) -> Result<Self> {
        if s.r < 2 {
            return Err(Error::InvalidRank(s.r));
        }
        let entries = s
            .j
            .iter()
            .map(|e| {
                let m = Matrix::from_flat(s.n, s.n, &e.data)
                    .ok_or(Error::DimensionMismatch { expected: s.n * s.n, found: e.data.len() })?;
                Ok(((e.i, e.j), m))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_upper(s.n, s.r, entries)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JEntryJson {
    pub i: usize,
    pub j: usize,
    /// Row-major entries; integers as numbers, fractions as `"p/q"`.
    pub data: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureJson {
    pub n: usize,
    pub r: usize,
    pub j: Vec<JEntryJson>,
}
