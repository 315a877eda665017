use clifflab_core::blade::{blade_product, indices_of, mask_of, AlgebraSignature, CliffordElement};
use clifflab_core::curvature::scal_formula;
use clifflab_core::models::{self, MODEL_NAMES};
use clifflab_core::spin::{build_clifford_rep, build_even_rep, n0, n_irr};
use clifflab_core::structure::{verify_orthogonality, verify_relations, EvenCliffordStructure};
use clifflab_core::{Matrix, Rational};
use proptest::prelude::*;

/// Product of two ascending index words by bubble sort, with `e_i e_i = -1`.
fn word_product(s: &[usize], t: &[usize]) -> (i8, Vec<usize>) {
    let mut w: Vec<usize> = s.iter().chain(t).copied().collect();
    let mut sign = 1i8;
    let mut changed = true;
    while changed {
        changed = false;
        let mut i = 0;
        while i + 1 < w.len() {
            if w[i] > w[i + 1] {
                w.swap(i, i + 1);
                sign = -sign;
                changed = true;
            } else if w[i] == w[i + 1] {
                w.drain(i..i + 2);
                sign = -sign;
                changed = true;
                continue;
            }
            i += 1;
        }
    }
    (sign, w)
}

/// Irreducible dimensions for ranks 1 to 8 from the classification of `Cl_r`
/// as matrix algebras over ℂ, ℍ, ℍ⊕ℍ, ℍ(2), ℂ(4), ℝ(8), ℝ(8)⊕ℝ(8), ℝ(16).
const N_ORACLE: [usize; 8] = [2, 4, 4, 8, 8, 8, 8, 16];

fn n_oracle(r: usize) -> usize {
    N_ORACLE[(r - 1) % 8] * 16usize.pow(((r - 1) / 8) as u32)
}

fn element(rank: usize, terms: &[(u32, i64)]) -> CliffordElement {
    let sig = AlgebraSignature::new(rank).unwrap();
    let mask = sig.full_mask();
    CliffordElement::from_terms(sig, terms.iter().map(|&(m, c)| (m & mask, Rational::from_int(c)))).unwrap()
}

fn terms() -> impl Strategy<Value = Vec<(u32, i64)>> {
    prop::collection::vec((any::<u32>(), -3i64..=3), 0..6)
}

#[test]
fn dimensions_follow_periodicity() {
    for r in 1..=24 {
        assert_eq!(n_irr(r).unwrap(), n_oracle(r), "N({r})");
        if r >= 2 {
            assert_eq!(n0(r).unwrap(), n_oracle(r - 1), "N0({r})");
        }
    }
}

#[test]
fn generators_anticommute() {
    let sig = AlgebraSignature::new(6).unwrap();
    for i in 1..=6 {
        for j in 1..=6 {
            let (a, b) = (CliffordElement::generator(sig, i).unwrap(), CliffordElement::generator(sig, j).unwrap());
            let sum = &(&a * &b) + &(&b * &a);
            let want = if i == j { CliffordElement::scalar(sig, Rational::from_int(-2)) } else { CliffordElement::zero(sig) };
            assert_eq!(sum, want, "e{i} e{j}");
        }
    }
}

#[test]
fn full_reps_are_faithful_on_blades() {
    for r in 1..=7 {
        let rep = build_clifford_rep(r, 1).unwrap();
        let sig = AlgebraSignature::new(r).unwrap();
        let images: Vec<Matrix> =
            (0..1u32 << r).map(|m| rep.evaluate(&CliffordElement::blade_mask(sig, m, Rational::ONE)).unwrap()).collect();
        for (m, a) in images.iter().enumerate() {
            assert!(!a.is_zero(), "rank {r}, blade {m:#b}");
        }
        assert_eq!(images[0], Matrix::identity(rep.dim));
    }
}

#[test]
fn even_reps_pass_relations_for_all_ranks() {
    for r in 2..=12 {
        let (p, m) = if r % 4 == 0 { (1, 2) } else { (2, 2) };
        let s = EvenCliffordStructure::from_rep(build_even_rep(r, p, m).unwrap());
        let rep = verify_relations(&s);
        assert!(rep.passed, "rank {r}: {:?}", rep.first_failure());
        assert!(rep.checked > 0);
        if r != 4 {
            assert!(verify_orthogonality(&s).passed, "rank {r}");
        }
    }
}

#[test]
fn tampering_is_detected() {
    let mut s = EvenCliffordStructure::from_rep(build_even_rep(6, 1, 1).unwrap());
    let scaled = s.j(2, 5).scale(Rational::from_int(2));
    s.family.replace(2, 5, scaled);
    let rep = verify_relations(&s);
    assert!(!rep.passed);
    assert!(rep.failures.iter().any(|f| f.indices.contains(&2) && f.indices.contains(&5)));
}

#[test]
fn curvature_trace_is_half_scal() {
    for name in MODEL_NAMES {
        let m = models::model(name).unwrap();
        let op = &m.operator;
        assert_eq!(op.lambda2_matrix().trace(), op.scalar() / Rational::from_int(2), "{name}");
        assert_eq!(op.ricci().trace(), op.scalar(), "{name}");
    }
    assert_eq!(models::op2().unwrap().operator.scalar(), scal_formula(16, 9));
}

proptest! {
    #[test]
    fn blade_product_matches_word_oracle(r in 1usize..=12, s in any::<u32>(), t in any::<u32>()) {
        let sig = AlgebraSignature::new(r).unwrap();
        let (s, t) = (s & sig.full_mask(), t & sig.full_mask());
        let (sign, w) = word_product(&indices_of(s), &indices_of(t));
        prop_assert_eq!(blade_product(s, t, sig).unwrap(), (sign, mask_of(&w)));
    }

    #[test]
    fn product_is_associative(r in 1usize..=9, a in terms(), b in terms(), c in terms()) {
        let (a, b, c) = (element(r, &a), element(r, &b), element(r, &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn product_distributes(r in 1usize..=9, a in terms(), b in terms(), c in terms()) {
        let (a, b, c) = (element(r, &a), element(r, &b), element(r, &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn text_round_trip(r in 1usize..=9, a in terms()) {
        let a = element(r, &a);
        prop_assert_eq!(CliffordElement::parse(&a.to_string(), a.signature()).unwrap(), a);
    }

    #[test]
    fn full_rep_is_multiplicative(r in 1usize..=6, a in terms(), b in terms()) {
        let rep = build_clifford_rep(r, 1).unwrap();
        let (a, b) = (element(r, &a), element(r, &b));
        let lhs = rep.evaluate(&(&a * &b)).unwrap();
        prop_assert_eq!(lhs, rep.evaluate(&a).unwrap().matmul(&rep.evaluate(&b).unwrap()));
    }

    #[test]
    fn even_rep_is_multiplicative(r in 2usize..=8, a in terms(), b in terms()) {
        let rep = build_even_rep(r, 1, 1).unwrap();
        let even = |t: &[(u32, i64)]| {
            let kept: Vec<(u32, i64)> = t.iter().copied().filter(|(m, _)| (m & ((1 << r) - 1)).count_ones() % 2 == 0).collect();
            element(r, &kept)
        };
        let (a, b) = (even(&a), even(&b));
        let lhs = rep.evaluate(&(&a * &b)).unwrap();
        prop_assert_eq!(lhs, rep.evaluate(&a).unwrap().matmul(&rep.evaluate(&b).unwrap()));
    }
}
