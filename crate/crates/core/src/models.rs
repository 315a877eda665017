//! The model spaces with curvature constancy on `ℝ⁸` and `ℝ¹⁶`, and the
//! rank-4 products of two quaternionic blocks.

use serde::Serialize;

use crate::curvature::{
    calibrate, connection_forms, constant_curvature_op, fubini_study_with, isotropy_projection_op, quaternionic_with,
    scal_formula, CurvatureOperator, Ideal,
};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::Rational;
use crate::report::VerificationReport;
use crate::spin::{build_clifford_rep, build_even_rep, JFamily};
use crate::structure::{split_rank4, EvenCliffordStructure};

pub const MODEL_NAMES: [&str; 4] = ["s8", "cp4", "hp2", "op2"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Constructor {
    ConstantCurvature,
    FubiniStudy,
    Quaternionic,
    IsotropyProjection,
}

#[derive(Debug, Clone)]
pub struct ModelSpace {
    pub name: &'static str,
    pub n: usize,
    pub r: usize,
    pub constructor: Constructor,
    /// The constant `c` in the constructor, solved from `scal`.
    pub calibration: Rational,
    pub ric: Rational,
    pub scal: Rational,
    pub operator: CurvatureOperator,
    pub structure: EvenCliffordStructure,
    /// Kähler form for `cp4`, `(I, J, K)` for `hp2`.
    pub extra: Vec<Matrix>,
}

/// Rank-`r` family `G_iG_j` from the first `r` generators of the octonionic
/// `Cl_7` module on `ℝ⁸`, together with the remaining generators.
fn octonionic_family(r: usize) -> Result<(EvenCliffordStructure, Vec<Matrix>)> {
    let rep = build_clifford_rep(7, 1)?;
    let rest = rep.generators[r..].to_vec();
    let fam = rep.truncate(r)?.j_family();
    Ok((EvenCliffordStructure::from_family(fam), rest))
}

fn finish(
    name: &'static str,
    constructor: Constructor,
    unit: CurvatureOperator,
    structure: EvenCliffordStructure,
    extra: Vec<Matrix>,
) -> Result<ModelSpace> {
    let (n, r) = (structure.n(), structure.r());
    let scal = scal_formula(n, r);
    let (operator, calibration) = calibrate(&unit, scal)?;
    Ok(ModelSpace {
        name,
        n,
        r,
        constructor,
        calibration,
        ric: scal / Rational::from_int(n as i64),
        scal,
        operator,
        structure,
        extra,
    })
}

/// `S⁸(1/2)` with the rank-8 family on its spinor module.
pub fn s8() -> Result<ModelSpace> {
    let s = EvenCliffordStructure::from_rep(build_even_rep(8, 1, 0)?);
    finish("s8", Constructor::ConstantCurvature, constant_curvature_op(8, Rational::ONE)?, s, Vec::new())
}

/// `ℂP⁴` with Kähler form `G_7` and the rank-6 family `G_iG_j`, `i, j ≤ 6`.
pub fn cp4() -> Result<ModelSpace> {
    let (s, rest) = octonionic_family(6)?;
    let j = rest[0].clone();
    let unit = fubini_study_with(&j, Rational::ONE)?;
    finish("cp4", Constructor::FubiniStudy, unit, s, vec![j])
}

/// `ℍP²` with the triple `(G_6, G_7, G_6G_7)` and the rank-5 family.
pub fn hp2() -> Result<ModelSpace> {
    let (s, rest) = octonionic_family(5)?;
    let triple = [rest[0].clone(), rest[1].clone(), rest[0].matmul(&rest[1])];
    let unit = quaternionic_with(&triple, Rational::ONE)?;
    finish("hp2", Constructor::Quaternionic, unit, s, triple.to_vec())
}

/// `𝕆P²`: projection onto the `𝔰𝔭𝔦𝔫(9)` span of the rank-9 family on `ℝ¹⁶`.
pub fn op2() -> Result<ModelSpace> {
    let s = EvenCliffordStructure::from_rep(build_even_rep(9, 1, 1)?);
    let gens: Vec<Matrix> = s.family.pairs().into_iter().map(|(i, j)| s.j(i, j).clone()).collect();
    let unit = isotropy_projection_op(16, &[Ideal { generators: gens, scale: Rational::ONE }])?;
    finish("op2", Constructor::IsotropyProjection, unit, s, Vec::new())
}

pub fn model(name: &str) -> Result<ModelSpace> {
    match name {
        "s8" => s8(),
        "cp4" => cp4(),
        "hp2" => hp2(),
        "op2" => op2(),
        _ => Err(Error::Unsupported(format!("unknown model `{name}` (expected one of {})", MODEL_NAMES.join(", ")))),
    }
}

/// `ℍP^{q₊} × ℍP^{q₋}` carrying the rank-4 family of `Cl⁰_4` with
/// multiplicities `(q₊, q₋)`; each factor has `scal = 16q(q+2)`.
#[derive(Debug, Clone)]
pub struct QuaternionicProduct {
    pub q_plus: usize,
    pub q_minus: usize,
    pub operator: CurvatureOperator,
    pub structure: EvenCliffordStructure,
    pub j_plus: JFamily,
    pub j_minus: JFamily,
}

pub fn quaternionic_product(q_plus: usize, q_minus: usize) -> Result<QuaternionicProduct> {
    if q_plus == 0 || q_minus == 0 {
        return Err(Error::OutOfRange("both quaternionic factors must be non-trivial".into()));
    }
    let s = EvenCliffordStructure::from_rep(build_even_rep(4, q_plus, q_minus)?);
    let split = split_rank4(&s)?;
    let (n_plus, n_minus) = (4 * q_plus, 4 * q_minus);
    let plus: Vec<usize> = (0..n_plus).collect();
    let minus: Vec<usize> = (n_plus..n_plus + n_minus).collect();
    // J^∓ acts quaternionically on T^±.
    let factor = |fam: &JFamily, coords: &[usize], q: usize| -> Result<CurvatureOperator> {
        let t = |a, b| fam.get(a, b).submatrix(coords, coords);
        let triple = [t(1, 2), t(2, 3), -&t(1, 3)];
        let unit = quaternionic_with(&triple, Rational::ONE)?;
        let q = q as i64;
        Ok(calibrate(&unit, Rational::from_int(16 * q * (q + 2)))?.0)
    };
    let op_plus = factor(&split.j_minus, &plus, q_plus)?;
    let op_minus = factor(&split.j_plus, &minus, q_minus)?;
    Ok(QuaternionicProduct {
        q_plus,
        q_minus,
        operator: op_plus.direct_sum(&op_minus),
        structure: s,
        j_plus: split.j_plus,
        j_minus: split.j_minus,
    })
}

/// Checks on a rank-4 product: the forms `ω_ij` solved from the curvature
/// are `2J_ij`; the forms `ω^±` solved independently for the families `J^±`
/// agree with the combinations `ω^±_12 = ±(ω_14 ± ω_23)`,
/// `ω^±_31 = ±(ω_13 ∓ ω_24)`, `ω^±_23 = ±(ω_12 ± ω_34)`; and `ω^± = 4J^±`.
pub fn verify_rank4_product(p: &QuaternionicProduct) -> VerificationReport {
    let mut rep = VerificationReport::new("rank-4 product");
    let f = &p.structure.family;
    let two = Rational::from_int(2);
    let Some(w) = connection_forms(&p.operator, f) else {
        rep.check_flag("curvature forms solvable", &[], false);
        return rep;
    };
    for (i, j) in f.pairs() {
        rep.check_eq("omega_ij = 2 J_ij", &[i, j], w.get(i, j), &f.get(i, j).scale(two));
    }
    for (sg, fam, label) in [(Rational::ONE, &p.j_plus, "+"), (-Rational::ONE, &p.j_minus, "-")] {
        let Some(ws) = connection_forms(&p.operator, fam) else {
            rep.check_flag(&format!("omega{label} solvable"), &[], false);
            continue;
        };
        let comb = |a: (usize, usize), b: (usize, usize), inner: Rational| (w.get(a.0, a.1) + &w.get(b.0, b.1).scale(inner)).scale(sg);
        let expected = [
            ((1, 2), comb((1, 4), (2, 3), sg)),
            ((3, 1), comb((1, 3), (2, 4), -sg)),
            ((2, 3), comb((1, 2), (3, 4), sg)),
        ];
        for ((a, b), e) in expected {
            rep.check_eq(&format!("omega{label} from omega"), &[a, b], ws.get(a, b), &e);
            rep.check_eq(&format!("omega{label} = 4 J{label}"), &[a, b], ws.get(a, b), &fam.get(a, b).scale(Rational::from_int(4)));
        }
    }
    let (qp, qm) = (p.q_plus as i64, p.q_minus as i64);
    rep.check_scalar(
        "scal = 16q+(q+ + 2) + 16q-(q- + 2)",
        &[p.q_plus, p.q_minus],
        p.operator.scalar(),
        Rational::from_int(16 * qp * (qp + 2) + 16 * qm * (qm + 2)),
    );
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_model_is_rejected() {
        assert!(matches!(model("cp9"), Err(Error::Unsupported(_))));
    }

    #[test]
    fn calibrations() {
        assert_eq!(s8().unwrap().calibration, Rational::from_int(4));
        assert_eq!(cp4().unwrap().calibration, Rational::from_int(8));
        assert_eq!(hp2().unwrap().calibration, Rational::from_int(4));
    }
}
