use clifflab_core::curvature::{
    self, centralizer_dim, constant_curvature_op, derived_forms, isotropy_projection_op, projection_onto,
    verify_cc_normalization, verify_derived_identities, verify_parallel_identities, Ideal,
};
use clifflab_core::linalg;
use clifflab_core::models::{self, quaternionic_product, verify_rank4_product};
use clifflab_core::rational::{q, qi};
use clifflab_core::spin::build_clifford_rep;
use clifflab_core::{Error, Matrix, Rational};

fn eigen(op: &curvature::CurvatureOperator) -> Vec<(Rational, usize)> {
    let s = op.spectrum();
    assert!(s.irrational_factor.is_none());
    s.eigenvalues
}

/// Independent Ricci oracle from the (4,0) accessor with the sum taken
/// over the second and third slots in the opposite order.
fn ricci_oracle(op: &curvature::CurvatureOperator) -> Matrix {
    let n = op.n();
    Matrix::from_fn(n, n, |x, y| (0..n).map(|a| -op.r4(a, x, a, y)).sum())
}

#[test]
fn s8_is_four_on_lambda2() {
    let m = models::s8().unwrap();
    assert_eq!(m.operator.lambda2_matrix(), &Matrix::scalar(28, qi(4)));
    assert_eq!(m.operator.scalar(), qi(224));
    assert_eq!(m.operator.ricci(), Matrix::scalar(8, qi(28)));
    assert!(verify_cc_normalization(&m.operator, &m.structure).unwrap().passed);
}

#[test]
fn s8_with_half_kappa_fails_by_factor_two() {
    let m = models::s8().unwrap();
    let rep = verify_parallel_identities(&m.operator, &m.structure, qi(1)).unwrap();
    assert!(!rep.passed);
    let j = m.structure.j(1, 2);
    // R^(J) = 4J while κ = 1 predicts 2J.
    assert_eq!(m.operator.hat(j), j.scale(qi(4)));
    assert_eq!(j.scale(Rational::from_int(8) / qi(4)), j.scale(qi(2)));
    assert!(rep.failures.iter().any(|f| f.relation.starts_with("R^(J_ik)")));
}

#[test]
fn cp4_spectrum_and_kahler_line() {
    let m = models::cp4().unwrap();
    assert_eq!(m.operator.scalar(), qi(160));
    assert_eq!(ricci_oracle(&m.operator), Matrix::scalar(8, qi(20)));
    assert_eq!(eigen(&m.operator), vec![(qi(0), 12), (qi(4), 15), (qi(20), 1)]);
    let j = &m.extra[0];
    assert_eq!(m.operator.hat(j), j.scale(qi(20)));
    assert!(m.operator.check_symmetries().passed);
    let rep = verify_cc_normalization(&m.operator, &m.structure).unwrap();
    assert!(rep.passed, "{:?}", rep.first_failure());
}

#[test]
fn cp4_at_half_scal_fails_scalar_check() {
    let m = models::cp4().unwrap();
    let half = m.operator.scale(q(1, 2));
    assert_eq!(half.scalar(), qi(80));
    let rep = verify_cc_normalization(&half, &m.structure).unwrap();
    assert!(rep.failures.iter().any(|f| f.relation.starts_with("scal")));
}

#[test]
fn hp2_values_on_isotropy_pieces() {
    let m = models::hp2().unwrap();
    let op = &m.operator;
    assert_eq!(op.einstein_constant(), Some(qi(16)));
    let sp2: Vec<Matrix> = m.structure.family.pairs().into_iter().map(|(i, j)| m.structure.j(i, j).clone()).collect();
    for a in &sp2 {
        assert_eq!(op.hat(a), a.scale(qi(4)));
    }
    for a in &m.extra {
        assert_eq!(op.hat(a), a.scale(qi(8)));
    }
    // The trace-orthogonal complement of sp(1) ⊕ sp(2) is annihilated.
    let mut h = sp2.clone();
    h.extend(m.extra.iter().cloned());
    let p = projection_onto(8, &h);
    let comp = &Matrix::identity(28) - &p;
    assert_eq!(linalg::rank(&comp), 15);
    assert!(op.lambda2_matrix().matmul(&comp).is_zero());
    assert_eq!(op.lambda2_matrix().trace(), qi(64));
    let rep = verify_cc_normalization(op, &m.structure).unwrap();
    assert!(rep.passed, "{:?}", rep.first_failure());
}

#[test]
fn hp1_splits_into_two_blocks() {
    let (op, t) = curvature::quaternionic_op(1, qi(1)).unwrap();
    // Self-dual forms carry the triple; the anti-self-dual ones commute with it.
    let asd: Vec<Matrix> = {
        let (_, basis) = curvature::centralizer(4, &t);
        basis
    };
    assert_eq!(asd.len(), 3);
    let e = eigen(&op);
    assert_eq!(e.iter().map(|x| x.1).sum::<usize>(), 6);
    let on_triple = op.hat(&t[0]);
    assert_eq!(linalg::span_dim(&[on_triple.clone(), t[0].clone()]), 1);
    for a in &asd {
        assert_eq!(linalg::span_dim(&[op.hat(a), a.clone()]), 1);
    }
}

#[test]
fn op2_isotropy_model() {
    let m = models::op2().unwrap();
    assert_eq!(m.calibration, qi(8));
    assert_eq!(m.operator.scalar(), qi(576));
    assert_eq!(m.operator.einstein_constant(), Some(qi(36)));
    let rep = verify_cc_normalization(&m.operator, &m.structure).unwrap();
    assert!(rep.passed, "{:?}", rep.first_failure());
}

#[test]
fn sp2_alone_is_not_a_curvature_tensor() {
    let m = models::hp2().unwrap();
    let sp2: Vec<Matrix> = m.structure.family.pairs().into_iter().map(|(i, j)| m.structure.j(i, j).clone()).collect();
    match isotropy_projection_op(8, &[Ideal { generators: sp2, scale: qi(4) }]) {
        Err(Error::Calibration { .. }) => {}
        Ok(op) => assert!(op.einstein_constant().is_none()),
        Err(e) => panic!("unexpected {e}"),
    }
}

#[test]
fn not_a_subalgebra() {
    let g = build_clifford_rep(7, 1).unwrap();
    let gens = vec![g.generators[0].clone(), g.generators[1].clone()];
    assert!(matches!(isotropy_projection_op(8, &[Ideal { generators: gens, scale: qi(1) }]), Err(Error::NotSubalgebra(_))));
}

#[test]
fn derived_routes_agree_on_cc_models() {
    for name in ["s8", "cp4", "hp2"] {
        let m = models::model(name).unwrap();
        let rep = verify_derived_identities(&m.operator, &m.structure, qi(2));
        assert!(rep.passed, "{name}: {:?}", rep.first_failure());
        let w = derived_forms(&m.operator, &m.structure.family);
        assert_eq!(w.get(1, 2), &m.structure.j(1, 2).scale(qi(2)));
    }
}

#[test]
fn centralizers_in_so8() {
    let g = build_clifford_rep(7, 1).unwrap();
    for (r, expected) in [(5, 3), (6, 1), (7, 0)] {
        let fam = g.truncate(r).unwrap().j_family();
        let gens: Vec<Matrix> = fam.pairs().into_iter().map(|(i, j)| fam.get(i, j).clone()).collect();
        assert_eq!(centralizer_dim(8, &gens), expected, "r = {r}");
    }
}

#[test]
fn rank4_products() {
    for (a, b) in [(1, 1), (2, 1), (1, 2)] {
        let p = quaternionic_product(a, b).unwrap();
        assert!(p.operator.check_symmetries().passed);
        let rep = verify_rank4_product(&p);
        assert!(rep.passed, "({a},{b}) {:?}", rep.first_failure());
    }
    assert!(quaternionic_product(2, 1).unwrap().operator.einstein_constant().is_none());
}

#[test]
fn zero_and_unit_sphere() {
    let z = constant_curvature_op(5, qi(0)).unwrap();
    assert!(z.ricci().is_zero());
    assert_eq!(constant_curvature_op(4, qi(1)).unwrap().ricci(), Matrix::scalar(4, qi(3)));
    assert!(constant_curvature_op(1, qi(1)).is_err());
}
