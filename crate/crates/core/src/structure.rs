//! Even Clifford structures on `ℝ^n`: relation checks, the volume
//! endomorphism, the rank-4 splitting, the Hodge extension for
//! `r ≡ 3 mod 4`, and extension of linear maps on `Λ²` to `Cl⁰`.

use std::collections::BTreeMap;

use crate::blade::{hodge_dual_vector, indices_of, volume_square_sign, AlgebraSignature, CliffordElement};
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::report::VerificationReport;
use crate::sample;
use crate::spin::{JFamily, MatrixRep, RepKind};

/// A family `J_ij` on `ℝ^n`, optionally backed by the representation it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenCliffordStructure {
    pub family: JFamily,
    pub rep: Option<MatrixRep>,
}

impl EvenCliffordStructure {
    pub fn from_rep(rep: MatrixRep) -> Self {
        EvenCliffordStructure { family: rep.j_family(), rep: Some(rep) }
    }

    pub fn from_family(family: JFamily) -> Self {
        EvenCliffordStructure { family, rep: None }
    }

    pub fn n(&self) -> usize {
        self.family.n()
    }

    pub fn r(&self) -> usize {
        self.family.r()
    }

    pub fn j(&self, i: usize, k: usize) -> &Matrix {
        self.family.get(i, k)
    }

    /// Image of an even blade as the ordered product `J_{i1 i2}·J_{i3 i4}·…`.
    pub fn even_blade(&self, mask: u32) -> Matrix {
        let idx = indices_of(mask);
        assert!(idx.len().is_multiple_of(2), "odd blade");
        let mut m = Matrix::identity(self.n());
        for p in idx.chunks(2) {
            m = m.matmul(self.j(p[0], p[1]));
        }
        m
    }
}

/// Checks skewness and the four relation groups
/// `J_ii = -I`, `J_ij = -J_ji`, `J_ij² = -I`, `J_ij·J_ik = J_jk`, `[J_ij, J_kl] = 0`.
pub fn verify_relations(s: &EvenCliffordStructure) -> VerificationReport {
    verify_family(&s.family)
}

pub fn verify_family(f: &JFamily) -> VerificationReport {
    let (n, r) = (f.n(), f.r());
    let mut rep = VerificationReport::new("relations");
    let minus_id = Matrix::scalar(n, -Rational::ONE);
    for i in 1..=r {
        rep.check_eq("J_ii=-id", &[i, i], f.get(i, i), &minus_id);
    }
    for (i, j) in f.pairs() {
        let a = f.get(i, j);
        rep.check_eq("skew", &[i, j], &a.transpose(), &-a);
        rep.check_eq("J_ij=-J_ji", &[i, j], a, &-f.get(j, i));
        rep.check_eq("J_ij^2=-id", &[i, j], &a.matmul(a), &minus_id);
    }
    for i in 1..=r {
        for j in (1..=r).filter(|&j| j != i) {
            for k in (1..=r).filter(|&k| k != i && k != j) {
                rep.check_eq("J_ij*J_ik=J_jk", &[i, j, k], &f.get(i, j).matmul(f.get(i, k)), f.get(j, k));
            }
        }
    }
    let pairs = f.pairs();
    for (x, &(i, j)) in pairs.iter().enumerate() {
        for &(k, l) in &pairs[x + 1..] {
            if k == i || k == j || l == i || l == j {
                continue;
            }
            rep.check_zero("J_ij*J_kl=J_kl*J_ij", &[i, j, k, l], &f.get(i, j).commutator(f.get(k, l)));
        }
    }
    rep
}

/// Trace pairings `<J_ij, J_kl> = tr(J_ij∘J_kl)` for distinct pairs.
///
/// Pairs sharing one index are asserted orthogonal for every rank. Pairs
/// with four distinct indices are asserted for `r ≠ 4` and only recorded
/// as observations for `r = 4`. `tr(J_kl) = 0` is asserted throughout.
pub fn verify_orthogonality(s: &EvenCliffordStructure) -> VerificationReport {
    let f = &s.family;
    let r = f.r();
    let mut rep = VerificationReport::new("orthogonality");
    let pairs = f.pairs();
    for &(k, l) in &pairs {
        rep.check_scalar("<J_ii,J_kl>=0", &[k, l], f.get(k, l).trace(), Rational::ZERO);
    }
    for (x, &(i, j)) in pairs.iter().enumerate() {
        for &(k, l) in &pairs[x + 1..] {
            let t = f.get(i, j).trace_product(f.get(k, l));
            let disjoint = k != i && k != j && l != i && l != j;
            if disjoint && r == 4 {
                rep.observe("<J_ij,J_kl>", &[i, j, k, l], t);
            } else {
                let id = if disjoint { "<J_ij,J_kl>=0 (disjoint)" } else { "<J_ij,J_kl>=0 (one shared index)" };
                rep.check_scalar(id, &[i, j, k, l], t, Rational::ZERO);
            }
        }
    }
    rep
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumeReport {
    pub v: Matrix,
    /// `s` with `v² = s·I`, or `None` when `v²` is not a multiple of `I`.
    pub square_sign: Option<i8>,
    pub expected_square_sign: i8,
    /// `v` commutes with every `J_ij`.
    pub commutes_with_family: bool,
    /// Measured `ε` in `v·G_i = ε·G_i·v` when a full representation backs the structure.
    pub generator_parity: Option<i8>,
    /// `(dim ker(v - I), dim ker(v + I))` when `v² = I`.
    pub multiplicities: Option<(usize, usize)>,
}

/// The image `v` of the volume element.
///
/// For even `r` this is `J_12·J_34·…`; for odd `r` the volume is odd and a
/// full representation must back the structure.
pub fn volume_endomorphism(s: &EvenCliffordStructure) -> Result<VolumeReport> {
    let (n, r) = (s.n(), s.r());
    let v = if r % 2 == 0 {
        let mut v = Matrix::identity(n);
        for a in (1..r).step_by(2) {
            v = v.matmul(s.j(a, a + 1));
        }
        v
    } else {
        match &s.rep {
            Some(rep) if rep.kind == RepKind::Full => rep.volume()?,
            _ => return Err(Error::Unsupported("the volume of an odd rank needs a full Clifford representation".into())),
        }
    };
    let sq = v.matmul(&v);
    let square_sign = if sq == Matrix::identity(n) {
        Some(1)
    } else if sq == Matrix::scalar(n, -Rational::ONE) {
        Some(-1)
    } else {
        None
    };
    let commutes_with_family = s.family.pairs().iter().all(|&(i, j)| v.commutator(s.j(i, j)).is_zero());
    let generator_parity = match &s.rep {
        Some(rep) if rep.kind == RepKind::Full => {
            let all = |sign: i8| {
                rep.generators.iter().all(|g| {
                    let lhs = v.matmul(g);
                    let rhs = g.matmul(&v);
                    if sign == 1 {
                        lhs == rhs
                    } else {
                        lhs == -&rhs
                    }
                })
            };
            if all(1) {
                Some(1)
            } else if all(-1) {
                Some(-1)
            } else {
                None
            }
        }
        _ => None,
    };
    let multiplicities = (square_sign == Some(1)).then(|| {
        let t = v.trace().to_integer().expect("integer trace") as i64;
        (((n as i64 + t) / 2) as usize, ((n as i64 - t) / 2) as usize)
    });
    Ok(VolumeReport { v, square_sign, expected_square_sign: volume_square_sign(r), commutes_with_family, generator_parity, multiplicities })
}

/// Output of the rank-4 splitting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitResult {
    pub v: Matrix,
    pub p_plus: Matrix,
    pub p_minus: Matrix,
    /// `φ(e^±_1), φ(e^±_2), φ(e^±_3)`.
    pub frame_plus: [Matrix; 3],
    pub frame_minus: [Matrix; 3],
    /// Rank-3 families `J^±` with `J^±_12, J^±_13 = -J^±_31, J^±_23`, and
    /// `J^±_ii = -P^∓`.
    pub j_plus: JFamily,
    pub j_minus: JFamily,
    pub report: VerificationReport,
}

fn half(m: &Matrix) -> Matrix {
    m.scale(Rational::new(1, 2))
}

/// Splits a rank-4 structure along the eigenspaces of its volume `v`.
pub fn split_rank4(s: &EvenCliffordStructure) -> Result<SplitResult> {
    if s.r() != 4 {
        return Err(Error::Unsupported(format!("splitting needs rank 4, got {}", s.r())));
    }
    let n = s.n();
    let j = |a, b| s.j(a, b).clone();
    let id = Matrix::identity(n);
    let v = j(1, 2).matmul(&j(3, 4));
    if v.matmul(&v) != id {
        return Err(Error::NotInvolution);
    }
    let p_plus = half(&(&id + &v));
    let p_minus = half(&(&id - &v));

    let frame = |sg: Rational| -> [Matrix; 3] {
        [
            half(&(&j(1, 2) + &j(3, 4).scale(sg))),
            half(&(&j(1, 3) - &j(2, 4).scale(sg))),
            half(&(&j(1, 4) + &j(2, 3).scale(sg))),
        ]
    };
    let one = Rational::ONE;
    let frame_plus = frame(one);
    let frame_minus = frame(-one);

    // J^±_12 = ±½(J14 ± J23), J^±_31 = ±½(J13 ∓ J24), J^±_23 = ±½(J12 ± J34).
    let tj = |sg: Rational| -> (Matrix, Matrix, Matrix) {
        let j12 = half(&(&j(1, 4) + &j(2, 3).scale(sg))).scale(sg);
        let j31 = half(&(&j(1, 3) - &j(2, 4).scale(sg))).scale(sg);
        let j23 = half(&(&j(1, 2) + &j(3, 4).scale(sg))).scale(sg);
        (j12, j31, j23)
    };
    let family = |(j12, j31, j23): (Matrix, Matrix, Matrix)| {
        JFamily::from_fn(n, 3, |a, b| match (a, b) {
            (1, 2) => j12.clone(),
            (1, 3) => -&j31,
            (2, 3) => j23.clone(),
            _ => unreachable!(),
        })
    };
    let j_plus = family(tj(one)).with_unit(&p_minus);
    let j_minus = family(tj(-one)).with_unit(&p_plus);

    let mut report = VerificationReport::new("split_rank4");
    report.check_eq("P+ + P- = I", &[], &(&p_plus + &p_minus), &id);
    report.check_eq("P+^2 = P+", &[], &p_plus.matmul(&p_plus), &p_plus);
    report.check_eq("P-^2 = P-", &[], &p_minus.matmul(&p_minus), &p_minus);
    report.check_eq("v = P+ - P-", &[], &v, &(&p_plus - &p_minus));
    for (fam, frames, p_own, label) in [(&j_plus, &frame_plus, &p_plus, "+"), (&j_minus, &frame_minus, &p_minus, "-")] {
        for (a, b) in [(1, 2), (3, 1), (2, 3)] {
            report.check_eq(
                &format!("J{label}_ab = phi(e{label}_a)phi(e{label}_b)"),
                &[a, b],
                fam.get(a, b),
                &frames[a - 1].matmul(&frames[b - 1]),
            );
        }
        for (a, b) in fam.pairs() {
            report.check_zero(&format!("J{label}_ab P{label} = 0"), &[a, b], &fam.get(a, b).matmul(p_own));
        }
    }
    for (a, b) in j_plus.pairs() {
        for (c, d) in j_minus.pairs() {
            report.check_zero("[J+_ab, J-_cd] = 0", &[a, b, c, d], &j_plus.get(a, b).commutator(j_minus.get(c, d)));
        }
    }
    // Quaternion relations on the opposite eigenspace.
    for (fam, lambda, label) in [(&j_plus, -one, "J+ on T-"), (&j_minus, one, "J- on T+")] {
        let basis = linalg::eigenspace(&v, lambda);
        if basis.ncols() == 0 {
            continue;
        }
        let restricted = JFamily::from_fn(basis.ncols(), 3, |a, b| linalg::restrict_to_subspace(fam.get(a, b), &basis));
        let mut sub = verify_family(&restricted);
        for f in &mut sub.failures {
            f.relation = format!("{label}: {}", f.relation);
        }
        report.absorb(sub);
    }
    Ok(SplitResult { v, p_plus, p_minus, frame_plus, frame_minus, j_plus, j_minus, report })
}

/// The full Clifford family `K_i = φ(⋆e_i)` extending an even structure of
/// rank `r ∈ {3, 7, 11, 15}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeExtension {
    pub k: Vec<Matrix>,
    pub report: VerificationReport,
}

pub fn extend_hodge(s: &EvenCliffordStructure) -> Result<HodgeExtension> {
    let r = s.r();
    if r % 4 != 3 || r > 15 {
        return Err(Error::Unsupported(format!("Hodge extension is defined only for r in {{3, 7, 11, 15}}, got {r}")));
    }
    let rel = verify_relations(s);
    if !rel.passed {
        return Err(Error::Invariant(format!("structure fails {} relation checks", rel.failures.len())));
    }
    let sig = AlgebraSignature::new(r)?;
    let n = s.n();
    let k: Vec<Matrix> = (1..=r)
        .map(|i| {
            let star = hodge_dual_vector(i, sig).expect("index in range");
            s.even_blade(star.mask).scale(Rational::from_int(star.sign as i64))
        })
        .collect();
    let mut report = VerificationReport::new("hodge");
    let minus2 = Matrix::scalar(n, Rational::from_int(-2));
    let zero = Matrix::zeros(n, n);
    for i in 0..r {
        report.check_eq("K_i skew", &[i + 1], &k[i].transpose(), &-&k[i]);
        for j in i..r {
            let expect = if i == j { &minus2 } else { &zero };
            report.check_eq("K_iK_j+K_jK_i=-2d_ij", &[i + 1, j + 1], &k[i].anticommutator(&k[j]), expect);
        }
    }
    let vol = k.iter().skip(1).fold(k[0].clone(), |acc, m| acc.matmul(m));
    for (i, ki) in k.iter().enumerate() {
        report.check_zero("[K_i, K_1...K_r] = 0", &[i + 1], &ki.commutator(&vol));
    }
    Ok(HodgeExtension { k, report })
}

/// A linear map `Λ²ℝ^k → End(ℝ^n)` given on the basis `e_i∧e_j`, `i < j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lambda2Map {
    pub k: usize,
    pub n: usize,
    images: BTreeMap<(usize, usize), Matrix>,
}

impl Lambda2Map {
    pub fn new(k: usize, n: usize, mut f: impl FnMut(usize, usize) -> Matrix) -> Self {
        let mut images = BTreeMap::new();
        for i in 1..=k {
            for j in i + 1..=k {
                images.insert((i, j), f(i, j));
            }
        }
        Lambda2Map { k, n, images }
    }

    /// Restriction of an even structure to `Λ²`.
    pub fn from_structure(s: &EvenCliffordStructure) -> Self {
        Self::new(s.r(), s.n(), |i, j| s.j(i, j).clone())
    }

    pub fn set(&mut self, i: usize, j: usize, m: Matrix) {
        assert!(i < j);
        self.images.insert((i, j), m);
    }

    /// `φ(e_i∧e_j)` for any `i, j`.
    pub fn basis_image(&self, i: usize, j: usize) -> Matrix {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.images[&(i, j)].clone(),
            std::cmp::Ordering::Greater => -&self.images[&(j, i)],
            std::cmp::Ordering::Equal => Matrix::zeros(self.n, self.n),
        }
    }

    /// `φ(u∧v) = Σ_{i<j} (u_i v_j - u_j v_i)·φ(e_i∧e_j)`.
    pub fn wedge(&self, u: &[Rational], v: &[Rational]) -> Matrix {
        let mut out = Matrix::zeros(self.n, self.n);
        for (&(i, j), m) in &self.images {
            let c = u[i - 1] * v[j - 1] - u[j - 1] * v[i - 1];
            if !c.is_zero() {
                out = &out + &m.scale(c);
            }
        }
        out
    }

    /// `σ_ab = φ(e_a∧e_b) - δ_ab·I`.
    fn sigma(&self, a: usize, b: usize) -> Matrix {
        if a == b {
            Matrix::scalar(self.n, -Rational::ONE)
        } else {
            self.basis_image(a, b)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UniversalityConfig {
    pub seed: u64,
    /// Random unit-`u` triples checked after the frame checks.
    pub samples: usize,
    /// Random pairs used to confirm multiplicativity of the extension.
    pub product_pairs: usize,
}

impl Default for UniversalityConfig {
    fn default() -> Self {
        UniversalityConfig { seed: 0, samples: 256, product_pairs: 64 }
    }
}

/// The algebra morphism `Cl⁰_k → End(ℝ^n)` extending a map on `Λ²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenMorphism {
    pub k: usize,
    pub n: usize,
    blades: BTreeMap<u32, Matrix>,
    pub report: VerificationReport,
}

impl EvenMorphism {
    pub fn blade_image(&self, mask: u32) -> &Matrix {
        &self.blades[&mask]
    }

    pub fn evaluate(&self, x: &CliffordElement) -> Result<Matrix> {
        if x.rank() != self.k {
            return Err(Error::SignatureMismatch { left: x.rank(), right: self.k });
        }
        if !x.is_even() {
            return Err(Error::ParityMismatch);
        }
        let mut out = Matrix::zeros(self.n, self.n);
        for (mask, c) in x.terms() {
            out = &out + &self.blades[&mask].scale(c);
        }
        Ok(out)
    }

    pub fn even_blades(&self) -> impl Iterator<Item = u32> + '_ {
        self.blades.keys().copied()
    }
}

fn vec_label(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Extends `phi` to `Cl⁰_k` after checking
/// `φ(u∧v)·φ(u∧w) = φ(v∧w) - h(v,w)·1` (`|u| = 1`, `v, w ⊥ u`).
///
/// The identity is checked on frame triples, then in the form
/// `σ_{v u1}σ_{u2 w} + σ_{v u2}σ_{u1 w} = -2h(u1,u2)·σ_vw` on frame
/// quadruples (which covers every `u` by polarization), then on seeded
/// random rational triples.
pub fn universal_extension(phi: &Lambda2Map, cfg: &UniversalityConfig) -> Result<EvenMorphism> {
    let (k, n) = (phi.k, phi.n);
    let id = Matrix::identity(n);
    let mut report = VerificationReport::new("universality");
    if k < 2 {
        let mut blades = BTreeMap::new();
        blades.insert(0u32, id);
        return Ok(EvenMorphism { k, n, blades, report });
    }
    let e = |i: usize| -> String { format!("e{i}") };

    for u in 1..=k {
        for v in (1..=k).filter(|&v| v != u) {
            for w in (1..=k).filter(|&w| w != u) {
                let lhs = phi.basis_image(u, v).matmul(&phi.basis_image(u, w));
                let rhs = if v == w { &phi.basis_image(v, w) - &id } else { phi.basis_image(v, w) };
                if !report.check_eq("e51 frame", &[u, v, w], &lhs, &rhs) {
                    return Err(Error::Rejected { u, v: e(v), w: e(w) });
                }
            }
        }
    }
    for u1 in 1..=k {
        for u2 in u1..=k {
            for v in 1..=k {
                for w in 1..=k {
                    let lhs = &phi.sigma(v, u1).matmul(&phi.sigma(u2, w)) + &phi.sigma(v, u2).matmul(&phi.sigma(u1, w));
                    let h = if u1 == u2 { Rational::from_int(-2) } else { Rational::ZERO };
                    let rhs = phi.sigma(v, w).scale(h);
                    if !report.check_eq("s2 polarized", &[u1, u2, v, w], &lhs, &rhs) {
                        return Err(Error::Rejected { u: u1, v: e(v), w: e(w) });
                    }
                }
            }
        }
    }
    let mut rng = sample::rng(cfg.seed);
    for t in 0..cfg.samples {
        let u = sample::unit_vector(&mut rng, k);
        let v = sample::project_out(&sample::small_vector(&mut rng, k), &u);
        let w = sample::project_out(&sample::small_vector(&mut rng, k), &u);
        let lhs = phi.wedge(&u, &v).matmul(&phi.wedge(&u, &w));
        let rhs = &phi.wedge(&v, &w) - &id.scale(sample::dot(&v, &w));
        if !report.check_eq("e51 random", &[t], &lhs, &rhs) {
            return Err(Error::Invariant(format!(
                "random triple u = {}, v = {}, w = {} fails after the frame checks passed",
                vec_label(&u),
                vec_label(&v),
                vec_label(&w)
            )));
        }
    }

    let sig = AlgebraSignature::new(k)?;
    let mut blades = BTreeMap::new();
    for mask in 0..=sig.full_mask() {
        if mask.count_ones() % 2 != 0 {
            continue;
        }
        let idx = indices_of(mask);
        let mut m = id.clone();
        for p in idx.chunks(2) {
            m = m.matmul(&phi.sigma(p[0], p[1]));
        }
        blades.insert(mask, m);
    }
    let mut morphism = EvenMorphism { k, n, blades, report };
    for t in 0..cfg.product_pairs {
        let a = sample::element(&mut rng, sig, 3, true);
        let b = sample::element(&mut rng, sig, 3, true);
        let lhs = morphism.evaluate(&(&a * &b))?;
        let rhs = morphism.evaluate(&a)?.matmul(&morphism.evaluate(&b)?);
        if !morphism.report.check_eq("multiplicative", &[t], &lhs, &rhs) {
            return Err(Error::Invariant(format!("extension is not multiplicative on {a} and {b}")));
        }
    }
    Ok(morphism)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;
    use crate::spin::{build_clifford_rep, build_even_rep};

    fn even(r: usize, p: usize, m: usize) -> EvenCliffordStructure {
        EvenCliffordStructure::from_rep(build_even_rep(r, p, m).unwrap())
    }

    #[test]
    fn relations_pass_and_detect_tampering() {
        let s = even(6, 1, 1);
        assert!(verify_relations(&s).passed);
        let mut bad = s.family.clone();
        let j12 = bad.get(1, 2).clone();
        bad.replace(1, 3, j12);
        let rep = verify_family(&bad);
        assert!(!rep.passed);
        assert!(rep.failures.iter().any(|f| f.relation == "J_ij*J_ik=J_jk" && f.indices == vec![1, 2, 3]));
    }

    #[test]
    fn rank_two_structure() {
        let s = even(2, 1, 1);
        let rep = verify_relations(&s);
        assert!(rep.passed);
        let v = volume_endomorphism(&s).unwrap();
        assert_eq!(v.v, s.j(1, 2).clone());
        assert_eq!(v.square_sign, Some(-1));
    }

    #[test]
    fn rank_four_block_pairing() {
        let s = even(4, 1, 0);
        let rep = verify_orthogonality(&s);
        assert!(rep.passed);
        let obs = rep.observations.iter().find(|o| o.indices == vec![1, 2, 3, 4]).unwrap();
        assert_eq!(obs.value, qi(4));
    }

    #[test]
    fn odd_volume_needs_full_rep() {
        assert!(volume_endomorphism(&even(5, 1, 1)).is_err());
        let full = EvenCliffordStructure::from_rep(build_clifford_rep(5, 1).unwrap());
        let v = volume_endomorphism(&full).unwrap();
        assert_eq!(v.square_sign, Some(-1));
        assert_eq!(v.generator_parity, Some(1));
    }

    #[test]
    fn split_basic() {
        let s = even(4, 1, 1);
        let sp = split_rank4(&s).unwrap();
        assert!(sp.report.passed, "{:?}", sp.report.failures);
        assert_eq!(linalg::rank(&sp.p_plus), 4);
        assert_eq!(linalg::rank(&sp.p_minus), 4);
    }

    #[test]
    fn hodge_rank_three_signs() {
        let s = even(3, 1, 1);
        let h = extend_hodge(&s).unwrap();
        assert!(h.report.passed);
        assert_eq!(h.k[0], s.j(2, 3).clone());
        assert_eq!(h.k[1], -s.j(1, 3));
        assert_eq!(h.k[2], s.j(1, 2).clone());
        assert!(extend_hodge(&even(5, 1, 1)).is_err());
    }

    #[test]
    fn doubled_map_rejected_with_witness() {
        let s = even(5, 1, 1);
        let mut phi = Lambda2Map::from_structure(&s);
        phi.set(1, 2, s.j(1, 2).scale(qi(2)));
        let err = universal_extension(&phi, &UniversalityConfig::default()).unwrap_err();
        assert_eq!(err, Error::Rejected { u: 1, v: "e2".into(), w: "e2".into() });
    }
}
