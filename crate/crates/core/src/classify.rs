//! Case analysis for symmetric spaces, the `n = 8` and Clifford ledgers,
//! and Tables 1–3 regenerated from them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::curvature::{centralizer_dim, scal_formula};
use crate::error::{Error, Result};
use crate::linalg::EchelonBasis;
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::report::VerificationReport;
use crate::spin::{build_clifford_rep, build_even_rep, n0, n_irr};

/// Compact simple Lie algebras (plus `𝔲(1)`), normalized through the
/// low-rank isomorphisms `B₁ = C₁ = A₁`, `C₂ = B₂`, `D₃ = A₃`, `D₂ = A₁ + A₁`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Simple {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    G2,
    F4,
    E6,
    E7,
    E8,
    U1,
}

impl Simple {
    pub fn dim(self) -> usize {
        match self {
            Simple::A(n) => n * (n + 2),
            Simple::B(n) | Simple::C(n) => n * (2 * n + 1),
            Simple::D(n) => n * (2 * n - 1),
            Simple::G2 => 14,
            Simple::F4 => 52,
            Simple::E6 => 78,
            Simple::E7 => 133,
            Simple::E8 => 248,
            Simple::U1 => 1,
        }
    }

    /// The `r ≥ 5` with `𝔰𝔬(r) ≅ self`, if any.
    pub fn so_rank(self) -> Option<usize> {
        match self {
            Simple::B(n) if n >= 2 => Some(2 * n + 1),
            Simple::D(n) if n >= 4 => Some(2 * n),
            Simple::A(3) => Some(6),
            _ => None,
        }
    }
}

pub fn so(k: usize) -> Vec<Simple> {
    match k {
        0 | 1 => vec![],
        2 => vec![Simple::U1],
        3 => vec![Simple::A(1)],
        4 => vec![Simple::A(1), Simple::A(1)],
        5 => vec![Simple::B(2)],
        6 => vec![Simple::A(3)],
        _ if k % 2 == 1 => vec![Simple::B(k / 2)],
        _ => vec![Simple::D(k / 2)],
    }
}

pub fn su(k: usize) -> Vec<Simple> {
    if k <= 1 {
        vec![]
    } else {
        vec![Simple::A(k - 1)]
    }
}

pub fn sp(k: usize) -> Vec<Simple> {
    match k {
        0 => vec![],
        1 => vec![Simple::A(1)],
        2 => vec![Simple::B(2)],
        _ => vec![Simple::C(k)],
    }
}

pub fn u(k: usize) -> Vec<Simple> {
    let mut v = su(k);
    if k >= 1 {
        v.push(Simple::U1);
    }
    v
}

fn cat(parts: &[Vec<Simple>]) -> Vec<Simple> {
    parts.concat()
}

fn total_dim(v: &[Simple]) -> usize {
    v.iter().map(|s| s.dim()).sum()
}

/// `(𝔤, 𝔥)` as lists of simple summands, for given parameters.
type Algebras = fn(&[usize]) -> (Vec<Simple>, Vec<Simple>);

/// A compact irreducible symmetric space `G/H` (or a family of them).
#[derive(Clone)]
pub struct SymmetricSpaceCandidate {
    pub case: u8,
    pub label: &'static str,
    pub params: &'static [&'static str],
    pub min: &'static [usize],
    algebras: Algebras,
}

impl fmt::Debug for SymmetricSpaceCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymmetricSpaceCandidate").field("case", &self.case).field("label", &self.label).finish()
    }
}

impl SymmetricSpaceCandidate {
    fn check(&self, params: &[usize]) -> Result<()> {
        if params.len() != self.params.len() {
            return Err(Error::OutOfRange(format!("{} takes {} parameter(s), got {}", self.label, self.params.len(), params.len())));
        }
        for ((name, &min), &v) in self.params.iter().zip(self.min).zip(params) {
            if v < min {
                return Err(Error::OutOfRange(format!("{name} = {v} below {min} for {}", self.label)));
            }
        }
        Ok(())
    }

    /// `(𝔤, 𝔥)` as lists of simple summands.
    pub fn algebras(&self, params: &[usize]) -> Result<(Vec<Simple>, Vec<Simple>)> {
        self.check(params)?;
        Ok((self.algebras)(params))
    }

    /// `dim G - dim H`.
    pub fn dim(&self, params: &[usize]) -> Result<usize> {
        let (g, h) = self.algebras(params)?;
        Ok(total_dim(&g) - total_dim(&h))
    }

    /// Ranks `r ≥ 5` for which `𝔰𝔬(r)` is a summand of `𝔥`.
    pub fn summand_ranks(&self, params: &[usize]) -> Result<Vec<usize>> {
        let (_, h) = self.algebras(params)?;
        let set: BTreeSet<usize> = h.iter().filter_map(|s| s.so_rank()).collect();
        Ok(set.into_iter().collect())
    }
}

macro_rules! cand {
    ($case:expr, $label:expr, [$($p:expr),*], [$($m:expr),*], $f:expr) => {
        SymmetricSpaceCandidate { case: $case, label: $label, params: &[$($p),*], min: &[$($m),*], algebras: $f }
    };
}

/// Every compact irreducible symmetric space, grouped into cases (1)–(9).
pub fn candidates() -> Vec<SymmetricSpaceCandidate> {
    use Simple::*;
    vec![
        cand!(1, "SU(n)/SO(n)", ["n"], [2], |p| (su(p[0]), so(p[0]))),
        cand!(2, "SU(2n)/Sp(n)", ["n"], [2], |p| (su(2 * p[0]), sp(p[0]))),
        cand!(3, "SU(p+q)/S(U(p)×U(q))", ["p", "q"], [1, 1], |p| (su(p[0] + p[1]), cat(&[su(p[0]), su(p[1]), vec![U1]]))),
        cand!(4, "SO(p+q)/SO(p)×SO(q)", ["p", "q"], [1, 1], |p| (so(p[0] + p[1]), cat(&[so(p[0]), so(p[1])]))),
        cand!(5, "SO(2n)/U(n)", ["n"], [2], |p| (so(2 * p[0]), u(p[0]))),
        cand!(6, "Sp(n)/U(n)", ["n"], [1], |p| (sp(p[0]), u(p[0]))),
        cand!(7, "Sp(p+q)/Sp(p)×Sp(q)", ["p", "q"], [1, 1], |p| (sp(p[0] + p[1]), cat(&[sp(p[0]), sp(p[1])]))),
        cand!(8, "E₆/Sp(4)", [], [], |_| (vec![E6], sp(4))),
        cand!(8, "E₆/SU(6)·SU(2)", [], [], |_| (vec![E6], cat(&[su(6), su(2)]))),
        cand!(8, "E₆/Spin(10)·U(1)", [], [], |_| (vec![E6], cat(&[so(10), vec![U1]]))),
        cand!(8, "E₆/F₄", [], [], |_| (vec![E6], vec![F4])),
        cand!(8, "E₇/SU(8)", [], [], |_| (vec![E7], su(8))),
        cand!(8, "E₇/Spin(12)·SU(2)", [], [], |_| (vec![E7], cat(&[so(12), su(2)]))),
        cand!(8, "E₇/E₆·U(1)", [], [], |_| (vec![E7], vec![E6, U1])),
        cand!(8, "E₈/Spin⁺(16)", [], [], |_| (vec![E8], so(16))),
        cand!(8, "E₈/E₇·SU(2)", [], [], |_| (vec![E8], cat(&[vec![E7], su(2)]))),
        cand!(8, "F₄/Sp(3)·SU(2)", [], [], |_| (vec![F4], cat(&[sp(3), su(2)]))),
        cand!(8, "F₄/Spin(9)", [], [], |_| (vec![F4], so(9))),
        cand!(8, "G₂/SO(4)", [], [], |_| (vec![G2], so(4))),
        cand!(9, "SU(n)×SU(n)/SU(n)", ["n"], [2], |p| (cat(&[su(p[0]), su(p[0])]), su(p[0]))),
        cand!(9, "SO(n)×SO(n)/SO(n)", ["n"], [5], |p| (cat(&[so(p[0]), so(p[0])]), so(p[0]))),
        cand!(9, "Sp(n)×Sp(n)/Sp(n)", ["n"], [1], |p| (cat(&[sp(p[0]), sp(p[0])]), sp(p[0]))),
        cand!(9, "G₂×G₂/G₂", [], [], |_| (vec![G2, G2], vec![G2])),
        cand!(9, "F₄×F₄/F₄", [], [], |_| (vec![F4, F4], vec![F4])),
        cand!(9, "E₆×E₆/E₆", [], [], |_| (vec![E6, E6], vec![E6])),
        cand!(9, "E₇×E₇/E₇", [], [], |_| (vec![E7, E7], vec![E7])),
        cand!(9, "E₈×E₈/E₈", [], [], |_| (vec![E8, E8], vec![E8])),
    ]
}

pub fn candidate(label: &str) -> Option<SymmetricSpaceCandidate> {
    candidates().into_iter().find(|c| c.label == label)
}

/// The candidate family of a classical case (1)–(7).
pub fn case_candidate(case: u8) -> Option<SymmetricSpaceCandidate> {
    candidates().into_iter().find(|c| c.case == case && !c.params.is_empty() && case <= 7)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    FailsConditionA,
    FailsDivisibilityB,
    NeedsEquivarianceArgument,
    Admissible,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reason::FailsConditionA => "fails_condition_a",
            Reason::FailsDivisibilityB => "fails_divisibility_b",
            Reason::NeedsEquivarianceArgument => "needs_equivariance_argument",
            Reason::Admissible => "admissible",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub case: u8,
    pub space: String,
    pub params: Vec<usize>,
    pub dim: usize,
    pub admissible: bool,
    pub reason: Reason,
    /// The rank of the `𝔰𝔬(r)` summand the verdict refers to.
    pub r: Option<usize>,
    pub n0: Option<usize>,
}

/// Conditions (a) and (b) for every `𝔰𝔬(r)` summand, `r ≥ 5`; the best
/// outcome wins. In case (4) a summand other than `𝔰𝔬(8)` that passes
/// divisibility is reported as needing the equivariance argument.
pub fn check_conditions(c: &SymmetricSpaceCandidate, params: &[usize]) -> Result<Verdict> {
    let dim = c.dim(params)?;
    let mut best = Verdict {
        case: c.case,
        space: c.label.to_string(),
        params: params.to_vec(),
        dim,
        admissible: false,
        reason: Reason::FailsConditionA,
        r: None,
        n0: None,
    };
    for r in c.summand_ranks(params)? {
        let n0r = n0(r)?;
        let reason = if dim % n0r != 0 {
            Reason::FailsDivisibilityB
        } else if c.case == 4 && r != 8 {
            Reason::NeedsEquivarianceArgument
        } else {
            Reason::Admissible
        };
        if best.r.is_none() || reason > best.reason {
            best.reason = reason;
            best.r = Some(r);
            best.n0 = Some(n0r);
        }
    }
    best.admissible = best.reason == Reason::Admissible;
    Ok(best)
}

/// Parameter bounds for the finite scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanBounds {
    pub max_param: usize,
}

impl Default for ScanBounds {
    fn default() -> Self {
        ScanBounds { max_param: 32 }
    }
}

fn param_grid(min: &[usize], max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &m in min {
        out = out.into_iter().flat_map(|p| (m..=max).map(move |v| [p.clone(), vec![v]].concat())).collect();
    }
    out
}

pub fn scan(c: &SymmetricSpaceCandidate, bounds: ScanBounds) -> Result<Vec<Verdict>> {
    param_grid(c.min, bounds.max_param).iter().map(|p| check_conditions(c, p)).collect()
}

/// Case 1: what an 8-dimensional manifold with a parallel rank-`r` even
/// Clifford structure must be.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct N8Case {
    pub r: usize,
    pub geometry: &'static str,
    pub structure_group: &'static str,
    /// Dimension of the centralizer of `φ(Λ²E)` in `𝔰𝔬(8)`.
    pub centralizer_dim: usize,
}

pub fn case1_n8(r: usize) -> Result<N8Case> {
    let (geometry, structure_group) = match r {
        5 => ("quaternion-Kähler", "Sp(2)·Sp(1)"),
        6 => ("Kähler", "U(4)"),
        7 => ("holonomy contained in Spin(7)", "Spin(7)"),
        8 => ("no condition", "SO(8)"),
        _ => return Err(Error::OutOfRange(format!("case 1 needs 5 ≤ r ≤ 8, got {r}"))),
    };
    let fam = if r == 8 { build_even_rep(8, 1, 0)?.j_family() } else { build_clifford_rep(7, 1)?.truncate(r)?.j_family() };
    let gens: Vec<Matrix> = fam.pairs().into_iter().map(|(i, j)| fam.get(i, j).clone()).collect();
    Ok(N8Case { r, geometry, structure_group, centralizer_dim: centralizer_dim(8, &gens) })
}

/// Which cases of the classification of parallel Clifford structures
/// apply to `(r, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LedgerVerdict {
    pub r: usize,
    pub n: usize,
    /// The non-flat case (1)–(7), if any.
    pub case: Option<u8>,
    pub geometry: Option<&'static str>,
    /// The flat case (8): `n` is a multiple of `N(r)`.
    pub flat: bool,
    pub reason: String,
}

pub fn clifford_ledger(r: usize, n: usize) -> Result<LedgerVerdict> {
    if r == 0 {
        return Err(Error::InvalidRank(0));
    }
    let nr = n_irr(r)?;
    let flat = n > 0 && n.is_multiple_of(nr);
    let mut v = LedgerVerdict { r, n, case: None, geometry: None, flat, reason: String::new() };
    let hit = |v: &mut LedgerVerdict, case: u8, geometry: &'static str| {
        v.case = Some(case);
        v.geometry = Some(geometry);
        v.reason = format!("case ({case})");
    };
    match r {
        9 | 10 | 12 | 16 if n == nr / 2 => {
            v.reason = format!("N({r}) = {nr} is twice the dimension of the only non-flat candidate")
        }
        _ if n == 0 || !n.is_multiple_of(nr) => v.reason = format!("n is not a multiple of N({r}) = {nr}"),
        1 => hit(&mut v, 1, "Kähler"),
        2 if n == 4 => hit(&mut v, 2, "Kähler"),
        2 => hit(&mut v, 2, "hyper-Kähler"),
        3 => hit(&mut v, 3, "quaternion-Kähler"),
        4 if n == 8 => hit(&mut v, 4, "product of two Ricci-flat Kähler surfaces"),
        5 if n == 8 => hit(&mut v, 5, "hyper-Kähler"),
        6 if n == 8 => hit(&mut v, 6, "Ricci-flat Kähler"),
        7 if n == 8 => hit(&mut v, 7, "Spin(7) holonomy"),
        4..=7 => v.reason = format!("non-flat rank {r} structures need n = 8"),
        8 => v.reason = "the volume element is a parallel involution anticommuting with E, which splits TM".into(),
        _ => v.reason = format!("no non-flat space of dimension {n} carries a rank {r} structure"),
    }
    Ok(v)
}

/// Computational form of the case (4) exclusion for small `(p, q)`:
/// every `SO(p)`-equivariant `φ: 𝔰𝔬(p) → End(ℝ^p ⊗ ℝ^q)` is `A ↦ Λ ⊗ A`,
/// and no such map has `φ(E₁₂)² = -id`.
#[derive(Debug, Clone, Serialize)]
pub struct EquivarianceCertificate {
    pub p: usize,
    pub q: usize,
    pub unknowns: usize,
    pub solution_dim: usize,
    /// Every solution has the form `A ↦ Λ ⊗ A`.
    pub scalar_blocks: bool,
    /// Some solution could satisfy `φ(E₁₂)² = -id`.
    pub clifford_compatible: bool,
    pub report: VerificationReport,
}

pub fn equivariance_certificate(p: usize, q: usize) -> Result<EquivarianceCertificate> {
    if p < 5 || q == 0 || p * q > 12 {
        return Err(Error::OutOfRange(format!("equivariance solve supports p ≥ 5, q ≥ 1, pq ≤ 12; got ({p}, {q})")));
    }
    let n = p * q;
    let pairs: Vec<(usize, usize)> = (0..p).flat_map(|a| (a + 1..p).map(move |b| (a, b))).collect();
    let d = pairs.len();
    let basis: Vec<Matrix> = pairs.iter().map(|&(a, b)| Matrix::elementary_rotation(p, a, b)).collect();
    let coords = |m: &Matrix| -> Vec<Rational> { m.skew_coords() };
    let rho: Vec<Matrix> = basis.iter().map(|x| Matrix::identity(q).kron(x)).collect();
    let var = |k: usize, i: usize, j: usize| k * n * n + i * n + j;
    let unknowns = d * n * n;

    // φ([X, A]) - [ρ(X), φ(A)] = 0 for basis elements X, A.
    let mut system = EchelonBasis::new();
    for (x, rx) in rho.iter().enumerate() {
        for (a, ea) in basis.iter().enumerate() {
            let br = coords(&basis[x].commutator(ea));
            for i in 0..n {
                for j in 0..n {
                    let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
                    let mut add = |v: usize, c: Rational| {
                        let e = row.entry(v).or_insert(Rational::ZERO);
                        *e += c;
                    };
                    for (k, &c) in br.iter().enumerate() {
                        if !c.is_zero() {
                            add(var(k, i, j), c);
                        }
                    }
                    for &(l, c) in rx.row(i) {
                        add(var(a, l, j), -c);
                    }
                    for l in 0..n {
                        let c = rx.get(l, j);
                        if !c.is_zero() {
                            add(var(a, i, l), c);
                        }
                    }
                    let row: Vec<(usize, Rational)> = row.into_iter().filter(|e| !e.1.is_zero()).collect();
                    if !row.is_empty() {
                        system.insert(&row);
                    }
                }
            }
        }
    }
    let solutions = system.nullspace(unknowns);
    let image = |sol: &[Rational], k: usize| Matrix::from_flat(n, n, &sol[k * n * n..(k + 1) * n * n]).expect("block size");

    let mut report = VerificationReport::new("equivariance");
    report.check_flag("solution space has dimension q^2", &[p, q], solutions.len() == q * q);
    let mut scalar_blocks = true;
    let mut kills_e3 = true;
    for (s, sol) in solutions.iter().enumerate() {
        // Read Λ off φ(E₁₂): entry (1, 0) of E₁₂ is 1.
        let phi12 = image(sol, 0);
        let lambda = Matrix::from_fn(q, q, |i, j| phi12.get(i * p + 1, j * p));
        for (k, e) in basis.iter().enumerate() {
            scalar_blocks &= report.check_eq("phi(A) = Lambda (x) A", &[s, k], &image(sol, k), &lambda.kron(e));
        }
        for blk in 0..q {
            let col = blk * p + 2;
            kills_e3 &= (0..n).all(|i| phi12.get(i, col).is_zero());
        }
    }
    report.check_flag("phi(E12) annihilates e3 (x) R^q", &[p, q], kills_e3);
    // If φ(E₁₂) kills e₃ ⊗ f then so does φ(E₁₂)², which therefore is not -id.
    let clifford_compatible = !kills_e3;
    Ok(EquivarianceCertificate {
        p,
        q,
        unknowns,
        solution_dim: solutions.len(),
        scalar_blocks,
        clifford_compatible,
        report,
    })
}

/// Parameter domain of a one-parameter family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Domain {
    AtLeast(usize),
    OddAtLeast(usize),
    OneOrEven,
}

impl Domain {
    pub fn contains(&self, k: usize) -> bool {
        match *self {
            Domain::AtLeast(m) => k >= m,
            Domain::OddAtLeast(m) => k >= m && k % 2 == 1,
            Domain::OneOrEven => k == 1 || (k > 0 && k.is_multiple_of(2)),
        }
    }

    fn render(&self, p: &str) -> String {
        match self {
            Domain::AtLeast(m) => format!("{p} ≥ {m}"),
            Domain::OddAtLeast(m) => format!("{p} odd ≥ {m}"),
            Domain::OneOrEven => format!("{p} = 1 or {p} even"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairDomain {
    Unstated,
    EachAtLeastOne,
    SumAtLeastOne,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DimSpec {
    Fixed(usize),
    Linear { coef: usize, param: &'static str, domain: Domain },
    /// `4(q⁺ + q⁻)`.
    QuaternionPair(PairDomain),
    MultipleOfN0,
}

impl DimSpec {
    pub fn at(&self, params: &[usize]) -> Option<usize> {
        match self {
            DimSpec::Fixed(n) => Some(*n),
            DimSpec::Linear { coef, domain, .. } => params.first().filter(|&&k| domain.contains(k)).map(|k| coef * k),
            DimSpec::QuaternionPair(_) => match params {
                [a, b] => Some(4 * (a + b)),
                _ => None,
            },
            DimSpec::MultipleOfN0 => None,
        }
    }
}

impl fmt::Display for DimSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimSpec::Fixed(n) => write!(f, "{n}"),
            DimSpec::Linear { coef, param, domain } => write!(f, "{coef}{param}, {}", domain.render(param)),
            DimSpec::QuaternionPair(d) => {
                f.write_str("4(q⁺+q⁻)")?;
                match d {
                    PairDomain::Unstated => Ok(()),
                    PairDomain::EachAtLeastOne => f.write_str(", q⁺ ≥ 1, q⁻ ≥ 1"),
                    PairDomain::SumAtLeastOne => f.write_str(", q⁺+q⁻ ≥ 1"),
                }
            }
            DimSpec::MultipleOfN0 => f.write_str("multiple of N₀(r)"),
        }
    }
}

/// The "type of E" column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Projective {
    Never,
    Always,
    If(&'static str),
}

impl fmt::Display for Projective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Projective::Never => Ok(()),
            Projective::Always => f.write_str("projective"),
            Projective::If(c) => write!(f, "projective if {c}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fibre {
    Sphere(usize),
    Projective(usize),
}

impl fmt::Display for Fibre {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Fibre::Sphere(k) => write!(f, "S{}", superscript(k)),
            Fibre::Projective(k) => write!(f, "ℝP{}", superscript(k)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalSpec {
    Blank,
    /// `2n(n/4 + 2r - 4)`.
    Normalized,
    /// Sum over two quaternion-Kähler factors with `ω^± = 4J^±`.
    QuaternionPairSum,
}

fn superscript(k: usize) -> String {
    const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    k.to_string().chars().map(|c| SUP[c.to_digit(10).expect("digit") as usize]).collect()
}

/// `κ·n(n/4 + 2r - 4)`, the scalar curvature when `Ric = κ(n/4 + 2r - 4)`.
pub fn scal_with_kappa(n: usize, r: usize, kappa: i64) -> Rational {
    scal_formula(n, r) * Rational::new(kappa as i128, 2)
}

/// `κ·f·k(f·k/4 + 2r - 4)` written as `a·k(k+b)`.
fn render_family_scal(kappa: i64, f: usize, r: usize, p: &str) -> String {
    let f = f as i64;
    let a = kappa * f * f / 4;
    let b = Rational::new(4 * (2 * r as i128 - 4), f as i128);
    assert!(b.is_integer() && kappa * f * f % 4 == 0, "family scal does not factor over the integers");
    format!("{a}{p}({p}+{b})")
}

fn render_factored(v: Rational) -> String {
    let mut n = v.to_integer().expect("integral scalar curvature") as u64;
    let mut parts = Vec::new();
    let mut d = 2;
    while n > 1 {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            parts.push(if e == 1 { d.to_string() } else { format!("{d}{}", superscript(e)) });
        }
        d += 1;
    }
    parts.join("·")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub table: u8,
    /// Empty for "arbitrary".
    pub ranks: Vec<usize>,
    pub space: String,
    pub type_of_e: Projective,
    pub dim: DimSpec,
    pub fibre: Option<Fibre>,
    pub total_space: Option<String>,
    pub scal: ScalSpec,
    /// Non-compact dual, for symmetric rows of Table 2.
    pub dual: Option<String>,
}

impl TableRow {
    fn new(table: u8, ranks: Vec<usize>, space: &str, dim: DimSpec) -> Self {
        TableRow {
            table,
            ranks,
            space: space.to_string(),
            type_of_e: Projective::Never,
            dim,
            fibre: None,
            total_space: None,
            scal: ScalSpec::Blank,
            dual: None,
        }
    }

    pub fn r(&self) -> Option<usize> {
        self.ranks.first().copied()
    }

    pub fn rank_label(&self) -> String {
        match self.ranks.as_slice() {
            [] => "arbitrary".into(),
            [r] => r.to_string(),
            rs => rs.iter().map(usize::to_string).collect::<Vec<_>>().join(" and "),
        }
    }

    pub fn scal_label(&self) -> String {
        let r = self.r().unwrap_or(0);
        match (&self.scal, &self.dim) {
            (ScalSpec::Blank, _) => String::new(),
            (ScalSpec::Normalized, DimSpec::Fixed(n)) => render_factored(scal_formula(*n, r)),
            (ScalSpec::Normalized, DimSpec::Linear { coef, param, .. }) => render_family_scal(2, *coef, r, param),
            (ScalSpec::QuaternionPairSum, _) => {
                format!("{} + {}", render_family_scal(4, 4, 3, "q⁺"), render_family_scal(4, 4, 3, "q⁻"))
            }
            _ => String::new(),
        }
    }

    /// Scalar curvature at the given parameters.
    pub fn scal_at(&self, params: &[usize]) -> Option<Rational> {
        let r = self.r()?;
        match self.scal {
            ScalSpec::Blank => None,
            ScalSpec::Normalized => Some(scal_formula(self.dim.at(params)?, r)),
            ScalSpec::QuaternionPairSum => match params {
                [a, b] => Some(scal_with_kappa(4 * a, 3, 4) + scal_with_kappa(4 * b, 3, 4)),
                _ => None,
            },
        }
    }

    /// `dim Z = dim M + r - 1`, symbolically.
    pub fn dim_z_label(&self) -> String {
        let extra = self.r().map_or(0, |r| r - 1);
        match &self.dim {
            DimSpec::Fixed(n) => (n + extra).to_string(),
            DimSpec::Linear { coef, param, .. } => format!("{coef}{param}+{extra}"),
            DimSpec::QuaternionPair(_) => format!("4(q⁺+q⁻)+{extra}"),
            DimSpec::MultipleOfN0 => String::new(),
        }
    }
}

impl Serialize for TableRow {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("table", &self.table)?;
        m.serialize_entry("r", &self.ranks)?;
        m.serialize_entry("space", &self.space)?;
        if self.table == 2 {
            m.serialize_entry("type_of_e", &self.type_of_e.to_string())?;
            m.serialize_entry("projective", &projective_flag(&self.type_of_e))?;
        }
        m.serialize_entry("dim", &self.dim.to_string())?;
        if let DimSpec::Fixed(n) = self.dim {
            m.serialize_entry("dim_value", &n)?;
        }
        if self.table == 3 {
            m.serialize_entry("total_space", &self.total_space)?;
            m.serialize_entry("fibre", &self.fibre.map(|f| f.to_string()))?;
            m.serialize_entry("dim_z", &self.dim_z_label())?;
            m.serialize_entry("scal", &self.scal_label())?;
            if let (ScalSpec::Normalized, DimSpec::Fixed(n)) = (&self.scal, &self.dim) {
                m.serialize_entry("scal_value", &scal_formula(*n, self.r().unwrap_or(0)))?;
            }
        }
        if let Some(d) = &self.dual {
            m.serialize_entry("noncompact_dual", d)?;
        }
        m.end()
    }
}

fn projective_flag(p: &Projective) -> &'static str {
    match p {
        Projective::Never => "no",
        Projective::Always => "yes",
        Projective::If(_) => "conditional",
    }
}

pub fn table1_rows() -> Vec<TableRow> {
    vec![
        TableRow::new(1, vec![2], "Kähler", DimSpec::Linear { coef: 2, param: "m", domain: Domain::AtLeast(1) }),
        TableRow::new(1, vec![3, 4], "hyper-Kähler", DimSpec::Linear { coef: 4, param: "q", domain: Domain::AtLeast(1) }),
        TableRow::new(1, vec![4], "reducible hyper-Kähler", DimSpec::QuaternionPair(PairDomain::EachAtLeastOne)),
        TableRow::new(1, vec![], "Cl⁰_r representation space", DimSpec::MultipleOfN0),
    ]
}

/// A one-parameter family of admissible symmetric spaces: the case, the
/// value of the parameter carrying the `𝔰𝔬(r)` summand, and its labels.
struct Family {
    case: u8,
    fixed: usize,
    space: &'static str,
    dual: &'static str,
    type_of_e: Projective,
}

fn families() -> Vec<Family> {
    vec![
        Family { case: 7, fixed: 2, space: "Sp(k+2)/Sp(k)×Sp(2)", dual: "Sp(k,2)/Sp(k)×Sp(2)", type_of_e: Projective::Never },
        Family { case: 3, fixed: 4, space: "SU(k+4)/S(U(k)×U(4))", dual: "SU(k,4)/S(U(k)×U(4))", type_of_e: Projective::Always },
        Family {
            case: 4,
            fixed: 8,
            space: "SO(k+8)/SO(k)×SO(8)",
            dual: "SO₀(k,8)/SO(k)×SO(8)",
            type_of_e: Projective::If("k odd"),
        },
    ]
}

struct Plane {
    label: &'static str,
    space: &'static str,
    dual: &'static str,
}

const PLANES: [Plane; 4] = [
    Plane { label: "F₄/Spin(9)", space: "𝕆P² = F₄/Spin(9)", dual: "F₄⁽⁻²⁰⁾/Spin(9)" },
    Plane { label: "E₆/Spin(10)·U(1)", space: "(ℂ⊗𝕆)P² = E₆/Spin(10)·U(1)", dual: "E₆⁽⁻¹⁴⁾/Spin(10)·U(1)" },
    Plane { label: "E₇/Spin(12)·SU(2)", space: "(ℍ⊗𝕆)P² = E₇/Spin(12)·SU(2)", dual: "E₇⁽⁻⁵⁾/Spin(12)·SU(2)" },
    Plane { label: "E₈/Spin⁺(16)", space: "(𝕆⊗𝕆)P² = E₈/Spin⁺(16)", dual: "E₈⁽⁸⁾/Spin⁺(16)" },
];

/// Rows of Table 2 for the admissible symmetric spaces found by the
/// case scans. Spaces of dimension 8 are left to the Case 1 rows.
fn symmetric_rows(bounds: ScanBounds) -> Result<Vec<TableRow>> {
    let mut fam_hits: BTreeMap<u8, (usize, BTreeMap<usize, usize>)> = BTreeMap::new();
    let mut planes = Vec::new();
    for c in candidates() {
        for v in scan(&c, bounds)? {
            if !v.admissible {
                continue;
            }
            let r = v.r.expect("admissible verdicts carry r");
            if c.params.is_empty() {
                planes.push((r, v.dim, c.label));
                continue;
            }
            let fam = families()
                .into_iter()
                .find(|f| f.case == c.case)
                .ok_or_else(|| Error::Invariant(format!("admissible space {} {:?} matches no family", c.label, v.params)))?;
            let k = match v.params.as_slice() {
                [a, b] if *a == fam.fixed => *b,
                [a, b] if *b == fam.fixed => *a,
                _ => return Err(Error::Invariant(format!("{} {:?} does not contain the fixed factor", c.label, v.params))),
            };
            let entry = fam_hits.entry(c.case).or_insert((r, BTreeMap::new()));
            if entry.0 != r {
                return Err(Error::Invariant(format!("case ({}) admits two ranks", c.case)));
            }
            entry.1.insert(k, v.dim);
        }
    }
    let mut rows = Vec::new();
    for fam in families() {
        let Some((r, hits)) = fam_hits.get(&fam.case) else {
            return Err(Error::Invariant(format!("no admissible spaces in case ({})", fam.case)));
        };
        let coef = hits.values().next().copied().unwrap_or(0) / hits.keys().next().copied().unwrap_or(1);
        if hits.iter().any(|(k, d)| coef * k != *d) {
            return Err(Error::Invariant(format!("case ({}) dimension is not linear in k", fam.case)));
        }
        let ks: Vec<usize> = hits.iter().filter(|(_, &d)| d != 8).map(|(&k, _)| k).collect();
        let min = ks[0];
        if ks != (min..=bounds.max_param).collect::<Vec<_>>() {
            return Err(Error::Invariant(format!("case ({}) admissible parameters are not an interval", fam.case)));
        }
        let mut row = TableRow::new(2, vec![*r], fam.space, DimSpec::Linear { coef, param: "k", domain: Domain::AtLeast(min) });
        row.type_of_e = fam.type_of_e;
        row.dual = Some(fam.dual.into());
        rows.push(row);
    }
    planes.sort();
    for (r, dim, label) in planes {
        let plane = PLANES
            .iter()
            .find(|p| p.label == label)
            .ok_or_else(|| Error::Invariant(format!("admissible exceptional space {label} is not a Rosenfeld plane")))?;
        let mut row = TableRow::new(2, vec![r], plane.space, DimSpec::Fixed(dim));
        row.dual = Some(plane.dual.into());
        rows.push(row);
    }
    Ok(rows)
}

pub fn table2_rows() -> Result<Vec<TableRow>> {
    table2_rows_with(ScanBounds::default())
}

pub fn table2_rows_with(bounds: ScanBounds) -> Result<Vec<TableRow>> {
    let mut rows = vec![TableRow::new(2, vec![2], "Kähler", DimSpec::Linear { coef: 2, param: "m", domain: Domain::AtLeast(1) })];
    let mut r3 = TableRow::new(2, vec![3], "quaternion-Kähler (QK)", DimSpec::Linear { coef: 4, param: "q", domain: Domain::AtLeast(1) });
    r3.type_of_e = Projective::If("M ≠ ℍP^q");
    rows.push(r3);
    let mut r4 = TableRow::new(2, vec![4], "product of two QK manifolds", DimSpec::QuaternionPair(PairDomain::Unstated));
    r4.type_of_e = Projective::If("M ≠ ℍP^{q⁺}×ℍP^{q⁻}");
    rows.push(r4);
    for r in 5..=8 {
        let c = case1_n8(r)?;
        let label = match c.r {
            5 => "QK",
            6 => "Kähler",
            7 => "Spin(7) holonomy",
            _ => "Riemannian",
        };
        let mut row = TableRow::new(2, vec![r], label, DimSpec::Fixed(8));
        if r == 6 || r == 8 {
            row.type_of_e = Projective::If("M non-spin");
        }
        rows.push(row);
    }
    rows.extend(symmetric_rows(bounds)?);
    Ok(rows)
}

/// Spin structure of the 8-dimensional models forced by curvature
/// constancy: `ℍP²`, `ℂP⁴` (not spin), `S⁸`.
fn n8_model_is_spin(r: usize) -> bool {
    r != 6
}

/// Rows of Table 3: each row of Table 2 except rank 7 (a `Spin(7)` holonomy
/// manifold is Ricci-flat while the normalization forces
/// `Ric = 2(n/4 + 2r - 4) > 0`), with the 8-dimensional rows folded into the
/// families at `k = 1`.
pub fn table3_rows() -> Result<Vec<TableRow>> {
    let t2 = table2_rows()?;
    let mut rows = Vec::new();
    let mut low = |space: &str, z: &str, r: usize, dim: DimSpec, fibre: Fibre, scal: ScalSpec| {
        let mut row = TableRow::new(3, vec![r], space, dim);
        row.total_space = Some(z.into());
        row.fibre = Some(fibre);
        row.scal = scal;
        rows.push(row);
    };
    low("Hodge", "Sasakian", 2, DimSpec::Linear { coef: 2, param: "m", domain: Domain::AtLeast(1) }, Fibre::Sphere(1), ScalSpec::Blank);
    low(
        "quaternion-Kähler (QK)",
        "Twistor space Z",
        3,
        DimSpec::Linear { coef: 4, param: "q", domain: Domain::AtLeast(1) },
        Fibre::Sphere(2),
        ScalSpec::Normalized,
    );
    low(
        "product of two QK manifolds",
        "Quaternion-Sasakian",
        4,
        DimSpec::QuaternionPair(PairDomain::SumAtLeastOne),
        Fibre::Projective(3),
        ScalSpec::QuaternionPairSum,
    );
    low(
        "ℍP^{q⁺}×ℍP^{q⁻}",
        "Sp(q⁺+1)×Sp(q⁻+1)/Sp(q⁺)×Sp(q⁻)×Sp(1)",
        4,
        DimSpec::QuaternionPair(PairDomain::SumAtLeastOne),
        Fibre::Sphere(3),
        ScalSpec::QuaternionPairSum,
    );
    let n8: BTreeSet<usize> = t2.iter().filter(|t| t.dim == DimSpec::Fixed(8)).filter_map(TableRow::r).collect();
    for t in t2.iter().filter(|t| t.r().is_some_and(|r| r >= 5) && t.dim != DimSpec::Fixed(8)) {
        let r = t.r().expect("rank");
        let z = total_space(&t.space, r);
        match &t.dim {
            DimSpec::Linear { coef, param, domain: Domain::AtLeast(min) } => {
                let start = if n8.contains(&r) && r != 7 { 1 } else { *min };
                let mut push = |domain: Domain, fibre: Fibre, z: Option<String>| {
                    let mut row = TableRow::new(3, vec![r], &t.space, DimSpec::Linear { coef: *coef, param, domain });
                    row.fibre = Some(fibre);
                    row.total_space = z;
                    row.scal = ScalSpec::Normalized;
                    rows.push(row);
                };
                match t.type_of_e {
                    Projective::Never => push(Domain::AtLeast(start), Fibre::Sphere(r - 1), z.clone()),
                    Projective::Always if start == 1 && !n8_model_is_spin(r) => {
                        push(Domain::AtLeast(start), Fibre::Projective(r - 1), z.clone())
                    }
                    Projective::Always => push(Domain::AtLeast(*min), Fibre::Projective(r - 1), z.clone()),
                    Projective::If(_) => {
                        // Projective exactly for odd k ≥ 3; k = 1 is the spin model S⁸.
                        assert!(n8_model_is_spin(r));
                        push(Domain::OddAtLeast(3), Fibre::Projective(r - 1), z.clone());
                        push(Domain::OneOrEven, Fibre::Sphere(r - 1), total_space(&format!("{}/spin", t.space), r));
                    }
                }
            }
            DimSpec::Fixed(n) => {
                let label = t.space.split(" = ").last().unwrap_or(&t.space).to_string();
                let mut row = TableRow::new(3, vec![r], &label, DimSpec::Fixed(*n));
                row.fibre = Some(Fibre::Sphere(r - 1));
                row.total_space = z;
                row.scal = ScalSpec::Normalized;
                rows.push(row);
            }
            _ => return Err(Error::Invariant(format!("unexpected dimension form in Table 2 row {}", t.space))),
        }
    }
    Ok(rows)
}

/// Total spaces of the submersions over the symmetric rows.
fn total_space(space: &str, r: usize) -> Option<String> {
    let z = match (space, r) {
        ("Sp(k+2)/Sp(k)×Sp(2)", 5) => "Sp(k+2)/Sp(k)×Spin(4)",
        ("SU(k+4)/S(U(k)×U(4))", 6) => "SU(k+4)/S(U(k)×(Sp(2)·U(1)))",
        ("SO(k+8)/SO(k)×SO(8)", 8) => "SO(k+8)/SO(k)×Spin(7)",
        ("SO(k+8)/SO(k)×SO(8)/spin", 8) => "Spin(k+8)/SO(k)×Spin(7)",
        (_, 9) => "F₄/Spin(8)",
        (_, 10) => "E₆/Spin(9)·U(1)",
        (_, 12) => "E₇/Spin(11)·SU(2)",
        (_, 16) => "E₈/Spin(15)",
        _ => return None,
    };
    Some(z.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Markdown,
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "markdown" | "md" => Ok(Format::Markdown),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Parse(format!("unknown format `{s}` (expected json, csv or markdown)"))),
        }
    }
}

fn columns(table: u8) -> &'static [&'static str] {
    match table {
        1 => &["r", "M", "dimension of M"],
        2 => &["r", "type of E", "M", "dimension of M"],
        _ => &["Z", "M", "Fibre", "dim(M)", "scal(M)"],
    }
}

fn cells(row: &TableRow) -> Vec<String> {
    match row.table {
        1 => vec![row.rank_label(), row.space.clone(), row.dim.to_string()],
        2 => vec![row.rank_label(), row.type_of_e.to_string(), row.space.clone(), row.dim.to_string()],
        _ => vec![
            row.total_space.clone().unwrap_or_default(),
            row.space.clone(),
            row.fibre.map(|f| f.to_string()).unwrap_or_default(),
            row.dim.to_string(),
            row.scal_label(),
        ],
    }
}

pub fn render_markdown(table: u8, rows: &[TableRow]) -> String {
    let cols = columns(table);
    let mut out = format!("| {} |\n|{}\n", cols.join(" | "), "---|".repeat(cols.len()));
    for row in rows {
        let c = cells(row);
        out.push_str("| ");
        out.push_str(&c.join(" | "));
        out.push_str(" |\n");
    }
    out
}

pub fn render_csv(table: u8, rows: &[TableRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Invariant(format!("csv: {e}"));
    w.write_record(columns(table)).map_err(io)?;
    for row in rows {
        w.write_record(cells(row)).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Invariant(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Invariant(e.to_string()))
}

pub fn render_json(rows: &[TableRow]) -> Result<String> {
    serde_json::to_string_pretty(rows).map_err(|e| Error::Invariant(e.to_string()))
}

pub fn table_rows(table: u8) -> Result<Vec<TableRow>> {
    match table {
        1 => Ok(table1_rows()),
        2 => table2_rows(),
        3 => table3_rows(),
        _ => Err(Error::OutOfRange(format!("table {table} (expected 1, 2 or 3)"))),
    }
}

pub fn render(table: u8, format: Format) -> Result<String> {
    let rows = table_rows(table)?;
    match format {
        Format::Markdown => Ok(render_markdown(table, &rows)),
        Format::Csv => render_csv(table, &rows),
        Format::Json => render_json(&rows),
    }
}
