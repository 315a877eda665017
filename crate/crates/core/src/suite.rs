//! The full verification suite, run in a fixed order.

use serde::Serialize;

use crate::blade::{grade, AlgebraSignature};
use crate::classify::{self, case_candidate, scan, ScanBounds};
use crate::curvature::{centralizer_dim, projection_onto, scal_formula, verify_cc_normalization, verify_derived_identities, verify_parallel_identities};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::models::{self, quaternionic_product, verify_rank4_product, MODEL_NAMES};
use crate::rational::Rational;
use crate::report::VerificationReport;
use crate::sample;
use crate::spin::{build_clifford_rep, build_even_rep, n0, n_irr};
use crate::structure::{
    extend_hodge, split_rank4, universal_extension, verify_orthogonality, verify_relations, EvenCliffordStructure, Lambda2Map,
    UniversalityConfig,
};
use crate::triality::triality_map;

pub const SCHEMA: u32 = 1;

/// Suite names in execution order.
pub const SUITES: [&str; 12] = [
    "dimensions",
    "relations",
    "rank4_split",
    "hodge",
    "universality",
    "triality",
    "curvature_n8",
    "octonionic_plane",
    "curvature_identities",
    "centralizers",
    "classification",
    "blade_algebra",
];

/// Failures beyond this many are counted but not listed.
pub const MAX_LISTED_FAILURES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub failure_count: usize,
    pub report: VerificationReport,
}

impl SuiteResult {
    fn new(name: &str, mut report: VerificationReport) -> Self {
        report.suite = name.to_string();
        let failure_count = report.failures.len();
        report.failures.truncate(MAX_LISTED_FAILURES);
        SuiteResult { name: name.to_string(), passed: report.passed, checked: report.checked, failure_count, report }
    }
}

fn even(r: usize, p: usize, m: usize) -> Result<EvenCliffordStructure> {
    Ok(EvenCliffordStructure::from_rep(build_even_rep(r, p, m)?))
}

/// The smallest even module: one irreducible block, or one of each class
/// when the two classes coincide.
fn minimal_even(r: usize) -> Result<EvenCliffordStructure> {
    if r.is_multiple_of(4) {
        even(r, 1, 0)
    } else {
        even(r, 1, 1)
    }
}

fn err_report(rep: &mut VerificationReport, what: &str, e: &Error) {
    rep.check_flag(&format!("{what}: {e}"), &[], false);
}

pub fn dimensions() -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("dimensions");
    for (r, v) in [(5, 8), (6, 8), (9, 16), (10, 32), (12, 64), (16, 128)] {
        rep.check_scalar("N0(r)", &[r], Rational::from(n0(r)?), Rational::from(v as usize));
    }
    for (r, v) in [(9, 32), (10, 64), (12, 128), (16, 256)] {
        rep.check_scalar("N(r)", &[r], Rational::from(n_irr(r)?), Rational::from(v as usize));
    }
    Ok(rep)
}

pub fn relations() -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("relations");
    for r in 2..=16 {
        let s = minimal_even(r)?;
        rep.absorb(verify_relations(&s));
        let orth = verify_orthogonality(&s);
        if r == 4 {
            let pairing = orth.observations.iter().find(|o| o.indices == [1, 2, 3, 4]).map(|o| o.value.abs());
            rep.check_flag("r = 4: |tr(J12 J34)| = 4", &[r], pairing == Some(Rational::from_int(4)));
        } else {
            rep.absorb(orth);
        }
    }
    Ok(rep)
}

pub fn rank4_split() -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("rank4_split");
    for (p, m) in [(1, 1), (2, 1), (1, 0)] {
        let sp = split_rank4(&even(4, p, m)?)?;
        rep.absorb(sp.report);
    }
    Ok(rep)
}

pub fn hodge() -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("hodge");
    for r in [3, 7] {
        rep.absorb(extend_hodge(&even(r, 1, 1)?)?.report);
    }
    for r in [5, 6] {
        let rejected = matches!(extend_hodge(&even(r, 1, 1)?), Err(Error::Unsupported(_)));
        rep.check_flag("Hodge extension rejected", &[r], rejected);
    }
    Ok(rep)
}

pub fn universality(seed: u64) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("universality");
    let cfg = UniversalityConfig { seed, ..UniversalityConfig::default() };
    for r in [2, 3, 5, 6, 7, 8] {
        let s = minimal_even(r)?;
        let ext = universal_extension(&Lambda2Map::from_structure(&s), &cfg)?;
        rep.absorb(ext.report.clone());
        for mask in ext.even_blades() {
            rep.check_eq("extension = backing representation", &[r, mask as usize], ext.blade_image(mask), &s.even_blade(mask));
        }
    }
    let s = even(5, 1, 1)?;
    let mut phi = Lambda2Map::from_structure(&s);
    phi.set(1, 2, s.j(1, 2).scale(Rational::from_int(2)));
    match universal_extension(&phi, &cfg) {
        Err(Error::Rejected { u, v, w }) => {
            rep.check_flag(&format!("scaled map rejected at u = e{u}, v = {v}, w = {w}"), &[5], true);
        }
        _ => {
            rep.check_flag("scaled map rejected", &[5], false);
        }
    }
    Ok(rep)
}

pub fn triality() -> Result<VerificationReport> {
    Ok(triality_map()?.certificate)
}

pub fn curvature_n8() -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("curvature_n8");
    let q = Rational::from_int;
    let s8 = models::s8()?;
    rep.check_eq("S8: R^ = 4 id", &[], s8.operator.lambda2_matrix(), &Matrix::scalar(28, q(4)));
    rep.check_scalar("S8: scal", &[], s8.operator.scalar(), q(224));

    let cp4 = models::cp4()?;
    rep.check_scalar("CP4: scal", &[], cp4.operator.scalar(), q(160));
    rep.check_eq("CP4: Ric = 20g", &[], &cp4.operator.ricci(), &Matrix::scalar(8, q(20)));
    let spec = cp4.operator.spectrum();
    rep.check_flag("CP4: spectrum {0^12, 4^15, 20^1}", &[], spec.irrational_factor.is_none() && spec.eigenvalues == vec![(q(0), 12), (q(4), 15), (q(20), 1)]);

    let hp2 = models::hp2()?;
    let op = &hp2.operator;
    rep.check_scalar("HP2: scal", &[], op.scalar(), q(128));
    rep.check_eq("HP2: Ric = 16g", &[], &op.ricci(), &Matrix::scalar(8, q(16)));
    let sp2: Vec<Matrix> = hp2.structure.family.pairs().into_iter().map(|(i, j)| hp2.structure.j(i, j).clone()).collect();
    for (k, a) in sp2.iter().enumerate() {
        rep.check_eq("HP2: R^ = 4 on sp(2)", &[k], &op.hat(a), &a.scale(q(4)));
    }
    let mut h = sp2;
    h.extend(hp2.extra.iter().cloned());
    let comp = &Matrix::identity(28) - &projection_onto(8, &h);
    rep.check_scalar("HP2: complement rank", &[], Rational::from(crate::linalg::rank(&comp)), q(15));
    rep.check_zero("HP2: R^ = 0 on complement", &[], &op.lambda2_matrix().matmul(&comp));
    rep.check_scalar("HP2: tr R^", &[], op.lambda2_matrix().trace(), q(64));
    for m in [&s8, &cp4, &hp2] {
        rep.absorb(m.operator.check_symmetries());
    }
    Ok(rep)
}

pub fn octonionic_plane() -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("octonionic_plane");
    let m = models::op2()?;
    let q = Rational::from_int;
    rep.check_scalar("OP2: scal", &[], m.operator.scalar(), q(576));
    rep.check_eq("OP2: Ric = 36g", &[], &m.operator.ricci(), &Matrix::scalar(16, q(36)));
    rep.check_scalar("OP2: scal = scal_formula(16, 9)", &[], m.operator.scalar(), scal_formula(16, 9));
    rep.absorb(m.operator.check_symmetries());
    rep.absorb(verify_cc_normalization(&m.operator, &m.structure)?);
    Ok(rep)
}

pub fn curvature_identities() -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("curvature_identities");
    let two = Rational::from_int(2);
    for name in MODEL_NAMES {
        let m = models::model(name)?;
        rep.absorb(verify_parallel_identities(&m.operator, &m.structure, two)?);
        rep.absorb(verify_derived_identities(&m.operator, &m.structure, two));
    }
    for (a, b) in [(1, 1), (2, 1)] {
        rep.absorb(verify_rank4_product(&quaternionic_product(a, b)?));
    }
    Ok(rep)
}

pub fn centralizers() -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("centralizers");
    let g = build_clifford_rep(7, 1)?;
    for (r, expected) in [(5, 3), (6, 1), (7, 0)] {
        let fam = g.truncate(r)?.j_family();
        let gens: Vec<Matrix> = fam.pairs().into_iter().map(|(i, j)| fam.get(i, j).clone()).collect();
        rep.check_scalar("centralizer dimension", &[r], Rational::from(centralizer_dim(8, &gens)), Rational::from(expected as usize));
    }
    Ok(rep)
}

pub fn classification() -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("classification");
    let t2 = classify::table2_rows()?;
    let t3 = classify::table3_rows()?;
    rep.check_scalar("Table 2 rows", &[], Rational::from(t2.len()), Rational::from(14usize));
    rep.check_scalar("Table 3 rows", &[], Rational::from(t3.len()), Rational::from(12usize));
    for row in t2.iter().filter(|t| t.r().is_some_and(|r| r >= 5)) {
        let r = row.r().expect("rank");
        let ok = (1..=8).filter_map(|k| row.dim.at(&[k])).all(|d| d % n0(r).expect("rank in range") == 0);
        rep.check_flag("Table 2: N0(r) divides dim M", &[r], ok);
    }
    for row in &t3 {
        let r = row.r().expect("rank");
        for k in 1..=8 {
            if let (Some(n), Some(s)) = (row.dim.at(&[k]), row.scal_at(&[k])) {
                rep.check_scalar("Table 3: scal = 2n(n/4 + 2r - 4)", &[r, k], s, scal_formula(n, r));
            }
        }
    }
    let bounds = ScanBounds::default();
    for (case, w, dim) in [(2u8, 2usize, 5usize), (5, 4, 12), (6, 4, 20)] {
        let c = case_candidate(case).ok_or_else(|| Error::Invariant(format!("case ({case})")))?;
        let v = classify::check_conditions(&c, &[w])?;
        rep.check_flag("witness fails divisibility", &[case as usize, v.dim], v.reason == classify::Reason::FailsDivisibilityB && v.dim == dim);
        let all_excluded = scan(&c, bounds)?.iter().all(|v| !v.admissible);
        rep.check_flag("case excluded", &[case as usize], all_excluded);
    }
    let c1 = case_candidate(1).ok_or_else(|| Error::Invariant("case (1)".into()))?;
    for v in scan(&c1, bounds)?.iter().filter(|v| v.params[0] >= 5) {
        let n = v.params[0];
        rep.check_flag("case (1) fails divisibility", &[n], v.reason == classify::Reason::FailsDivisibilityB && v.dim == (n - 1) * (n + 2) / 2);
    }
    for c in classify::candidates().iter().filter(|c| c.case == 9) {
        for v in scan(c, bounds)? {
            rep.check_flag("case (9) excluded", &v.params, !v.admissible);
        }
    }
    for (p, q) in [(5, 1), (5, 2), (6, 1)] {
        let cert = classify::equivariance_certificate(p, q)?;
        rep.check_flag("equivariant maps admit no Clifford solution", &[p, q], !cert.clifford_compatible && cert.scalar_blocks);
        rep.absorb(cert.report);
    }
    Ok(rep)
}

/// Seeded checks of associativity and the Clifford relation in `Cl_r`.
pub fn blade_algebra(seed: u64) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("blade_algebra");
    let mut rng = sample::rng(seed);
    for r in [3, 5, 8, 12] {
        let sig = AlgebraSignature::new(r)?;
        for t in 0..16 {
            let a = sample::element(&mut rng, sig, 4, false);
            let b = sample::element(&mut rng, sig, 4, false);
            let c = sample::element(&mut rng, sig, 4, false);
            let lhs = a.geometric_product(&b)?.geometric_product(&c)?;
            let rhs = a.geometric_product(&b.geometric_product(&c)?)?;
            let diff = lhs.try_add(&rhs.scale(-Rational::ONE))?;
            rep.check_flag("(ab)c = a(bc)", &[r, t], diff.is_zero());
            let even = sample::element(&mut rng, sig, 4, true);
            let odd_free = even.terms().all(|(m, _)| grade(m).is_multiple_of(2));
            rep.check_flag("even sample is even", &[r, t], odd_free && even.is_even());
        }
    }
    Ok(rep)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub command: &'static str,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FullReport {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub config: SuiteConfig,
    pub passed: bool,
    pub suites: Vec<SuiteResult>,
}

pub fn run_suite(name: &str, seed: u64) -> Result<VerificationReport> {
    match name {
        "dimensions" => dimensions(),
        "relations" => relations(),
        "rank4_split" => rank4_split(),
        "hodge" => hodge(),
        "universality" => universality(seed),
        "triality" => triality(),
        "curvature_n8" => curvature_n8(),
        "octonionic_plane" => octonionic_plane(),
        "curvature_identities" => curvature_identities(),
        "centralizers" => centralizers(),
        "classification" => classification(),
        "blade_algebra" => blade_algebra(seed),
        _ => Err(Error::Unsupported(format!("unknown suite `{name}`"))),
    }
}

/// Runs one suite; an error becomes a failed suite rather than aborting.
pub fn run_one(name: &str, seed: u64) -> SuiteResult {
    let report = run_suite(name, seed).unwrap_or_else(|e| {
        let mut rep = VerificationReport::new(name);
        err_report(&mut rep, "error", &e);
        rep
    });
    SuiteResult::new(name, report)
}

/// Every suite in [`SUITES`] order; `on_done` sees each result as it lands.
pub fn verify_all_with(seed: u64, mut on_done: impl FnMut(&SuiteResult, std::time::Duration)) -> FullReport {
    let suites: Vec<SuiteResult> = SUITES
        .iter()
        .map(|name| {
            let t = std::time::Instant::now();
            let res = run_one(name, seed);
            on_done(&res, t.elapsed());
            res
        })
        .collect();
    FullReport {
        schema: SCHEMA,
        tool: "clifflab",
        version: env!("CARGO_PKG_VERSION"),
        config: SuiteConfig { command: "verify-all", seed },
        passed: suites.iter().all(|s| s.passed),
        suites,
    }
}

pub fn verify_all(seed: u64) -> FullReport {
    verify_all_with(seed, |_, _| {})
}
