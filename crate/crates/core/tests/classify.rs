use clifflab_core::classify::{
    candidate, candidates, case1_n8, case_candidate, check_conditions, clifford_ledger, equivariance_certificate,
    render, render_csv, scan, table1_rows, table2_rows, table3_rows, DimSpec, Format, Reason, ScanBounds,
};
use clifflab_core::models;
use clifflab_core::spin::n0;
use clifflab_core::Rational;
use proptest::prelude::*;

const TABLE2: &str = include_str!("fixtures/table2.md");
const TABLE3: &str = include_str!("fixtures/table3.md");

fn scal_oracle(n: usize, r: usize) -> Rational {
    let (n, r) = (n as i64, r as i64);
    Rational::new((2 * n * (n + 8 * r - 16)) as i128, 4)
}

#[test]
fn table2_matches_fixture() {
    assert_eq!(render(2, Format::Markdown).unwrap(), TABLE2);
}

#[test]
fn table3_matches_fixture() {
    assert_eq!(render(3, Format::Markdown).unwrap(), TABLE3);
}

#[test]
fn table1_has_four_rows() {
    let rows = table1_rows();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[1].rank_label(), "3 and 4");
    assert_eq!(rows[3].dim, DimSpec::MultipleOfN0);
}

#[test]
fn excluded_cases_and_witness_dimensions() {
    let b = ScanBounds::default();
    for (case, witness) in [(1u8, None), (2, Some((2, 5))), (5, Some((4, 12))), (6, Some((4, 20)))] {
        let c = case_candidate(case).unwrap();
        for v in scan(&c, b).unwrap() {
            assert!(!v.admissible, "{v:?}");
            let n = v.params[0];
            match (case, witness) {
                (1, _) if n >= 5 => {
                    assert_eq!(v.reason, Reason::FailsDivisibilityB);
                    assert_eq!(v.dim, (n - 1) * (n + 2) / 2);
                    assert_eq!(v.r, Some(n));
                }
                (_, Some((w, d))) if n == w => {
                    assert_eq!(v.reason, Reason::FailsDivisibilityB);
                    assert_eq!(v.dim, d);
                }
                _ => assert_eq!(v.reason, Reason::FailsConditionA, "{v:?}"),
            }
        }
    }
    for c in candidates().iter().filter(|c| c.case == 9) {
        for v in scan(c, b).unwrap() {
            assert!(!v.admissible, "{v:?}");
            match (c.label, v.r) {
                ("SU(n)×SU(n)/SU(n)", Some(6)) => assert_eq!(v.dim, 15),
                ("SO(n)×SO(n)/SO(n)", Some(r)) => assert_eq!(v.dim, r * (r - 1) / 2),
                ("Sp(n)×Sp(n)/Sp(n)", Some(5)) => assert_eq!(v.dim, 10),
                (_, None) => assert_eq!(v.reason, Reason::FailsConditionA),
                other => panic!("unexpected {other:?}"),
            }
        }
    }
}

#[test]
fn exceptional_admissible_spaces() {
    let admissible: Vec<(String, usize, usize)> = candidates()
        .iter()
        .filter(|c| c.case == 8)
        .map(|c| check_conditions(c, &[]).unwrap())
        .filter(|v| v.admissible)
        .map(|v| (v.space, v.r.unwrap(), v.dim))
        .collect();
    assert_eq!(
        admissible,
        vec![
            ("E₆/Spin(10)·U(1)".to_string(), 10, 32),
            ("E₇/Spin(12)·SU(2)".to_string(), 12, 64),
            ("E₈/Spin⁺(16)".to_string(), 16, 128),
            ("F₄/Spin(9)".to_string(), 9, 16),
        ]
    );
}

#[test]
fn case4_verdicts() {
    let c = case_candidate(4).unwrap();
    let v = |p, q| check_conditions(&c, &[p, q]).unwrap();
    assert_eq!(v(5, 1).reason, Reason::FailsDivisibilityB);
    assert_eq!(v(5, 8).reason, Reason::Admissible);
    assert_eq!(v(5, 8).r, Some(8));
    assert_eq!(v(5, 16).reason, Reason::NeedsEquivarianceArgument);
    assert_eq!(v(7, 8).reason, Reason::Admissible);
    assert_eq!(v(8, 3).reason, Reason::Admissible);
    assert_eq!(v(3, 3).reason, Reason::FailsConditionA);
    assert!(c.dim(&[0, 1]).is_err());
}

#[test]
fn equivariance_excludes_case4() {
    for (p, q) in [(5, 1), (5, 2), (6, 1)] {
        let cert = equivariance_certificate(p, q).unwrap();
        assert_eq!(cert.solution_dim, q * q);
        assert!(cert.scalar_blocks);
        assert!(!cert.clifford_compatible);
        assert!(cert.report.passed, "{:?}", cert.report.first_failure());
    }
    assert!(equivariance_certificate(4, 1).is_err());
}

#[test]
fn n8_structure_groups() {
    let got: Vec<(usize, usize)> = (5..=8).map(|r| (r, case1_n8(r).unwrap().centralizer_dim)).collect();
    assert_eq!(got, vec![(5, 3), (6, 1), (7, 0), (8, 0)]);
    assert_eq!(case1_n8(5).unwrap().geometry, "quaternion-Kähler");
    assert!(case1_n8(4).is_err());
}

#[test]
fn ledger_examples() {
    let l = clifford_ledger(3, 12).unwrap();
    assert_eq!(l.case, Some(3));
    assert_eq!(clifford_ledger(2, 4).unwrap().geometry, Some("Kähler"));
    assert_eq!(clifford_ledger(2, 8).unwrap().geometry, Some("hyper-Kähler"));
    let r8 = clifford_ledger(8, 16).unwrap();
    assert_eq!(r8.case, None);
    assert!(r8.flat);
    for (r, n) in [(9, 16), (10, 32), (12, 64), (16, 128)] {
        let v = clifford_ledger(r, n).unwrap();
        assert_eq!(v.case, None);
        assert!(!v.flat);
        assert!(v.reason.contains("twice"));
    }
    assert_eq!(clifford_ledger(7, 8).unwrap().case, Some(7));
    assert_eq!(clifford_ledger(5, 16).unwrap().case, None);
    assert!(!clifford_ledger(3, 6).unwrap().flat);
}

#[test]
fn table3_scal_matches_normalization() {
    for row in table3_rows().unwrap() {
        let r = row.r().unwrap();
        match &row.dim {
            DimSpec::Fixed(n) => {
                if let Some(s) = row.scal_at(&[]) {
                    assert_eq!(s, scal_oracle(*n, r), "{}", row.space);
                }
            }
            DimSpec::Linear { domain, .. } => {
                for k in (1..12).filter(|&k| domain.contains(k)) {
                    let n = row.dim.at(&[k]).unwrap();
                    if let Some(s) = row.scal_at(&[k]) {
                        assert_eq!(s, scal_oracle(n, r), "{} k={k}", row.space);
                    }
                }
            }
            _ => {}
        }
    }
}

#[test]
fn table3_scal_agrees_with_models() {
    let rows = table3_rows().unwrap();
    let find = |r: usize| rows.iter().find(|t| t.r() == Some(r)).unwrap();
    assert_eq!(find(5).scal_at(&[1]).unwrap(), models::hp2().unwrap().operator.scalar());
    assert_eq!(find(6).scal_at(&[1]).unwrap(), models::cp4().unwrap().operator.scalar());
    let s8 = rows.iter().find(|t| t.r() == Some(8) && t.dim.at(&[1]).is_some()).unwrap();
    assert_eq!(s8.scal_at(&[1]).unwrap(), models::s8().unwrap().operator.scalar());
    assert_eq!(find(9).scal_at(&[]).unwrap(), models::op2().unwrap().operator.scalar());
    let pair = find(4);
    for (a, b) in [(1, 1), (2, 1)] {
        let p = models::quaternionic_product(a, b).unwrap();
        assert_eq!(pair.scal_at(&[a, b]).unwrap(), p.operator.scalar());
    }
}

#[test]
fn table3_rows_come_from_table2() {
    let t2 = table2_rows().unwrap();
    let t3 = table3_rows().unwrap();
    assert!(t3.iter().all(|t| t.r() != Some(7)));
    let distinct_scal: std::collections::BTreeSet<String> = t3.iter().filter(|t| t.r() != Some(4)).map(|t| t.scal_label()).filter(|s| !s.is_empty()).collect();
    assert_eq!(distinct_scal.len(), 8);
    for row in &t3 {
        let r = row.r().unwrap();
        assert!(t2.iter().any(|s| s.r() == Some(r)), "rank {r}");
        if r >= 9 {
            assert!(t2.iter().any(|s| s.space.ends_with(&row.space)));
        }
        if let Some(k) = [1usize, 2, 3].into_iter().find(|&k| row.dim.at(&[k]).is_some()) {
            let n = row.dim.at(&[k]).unwrap();
            let host = t2.iter().filter(|s| s.r() == Some(r)).any(|s| s.dim.at(&[k]) == Some(n) || s.dim == DimSpec::Fixed(n));
            assert!(host, "{} k={k}", row.space);
        }
    }
}

#[test]
fn noncompact_duals() {
    let duals: Vec<String> = table2_rows().unwrap().into_iter().filter_map(|r| r.dual).collect();
    assert_eq!(duals.len(), 7);
    assert_eq!(duals[0], "Sp(k,2)/Sp(k)×Sp(2)");
}

#[test]
fn csv_round_trips() {
    for t in 1..=3 {
        let text = render(t, Format::Csv).unwrap();
        let mut rd = csv::Reader::from_reader(text.as_bytes());
        let n = rd.records().collect::<Result<Vec<_>, _>>().unwrap().len();
        let expect = match t {
            1 => 4,
            2 => 14,
            _ => 12,
        };
        assert_eq!(n, expect);
    }
    let rows = table2_rows().unwrap();
    let text = render_csv(2, &rows).unwrap();
    assert!(text.contains("\"8k, k ≥ 2\""));
}

#[test]
fn json_is_valid() {
    let v: serde_json::Value = serde_json::from_str(&render(3, Format::Json).unwrap()).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 12);
    assert_eq!(rows[8]["scal_value"], serde_json::json!(576));
    assert!("yaml".parse::<Format>().is_err());
}

#[test]
fn unknown_candidate() {
    assert!(candidate("G₂/SO(4)").is_some());
    assert!(candidate("G₂/SU(3)").is_none());
}

proptest! {
    #[test]
    fn classical_dimensions(p in 1usize..20, q in 1usize..20) {
        let d = |case: u8, params: &[usize]| case_candidate(case).unwrap().dim(params).unwrap();
        prop_assert_eq!(d(3, &[p, q]), 2 * p * q);
        prop_assert_eq!(d(4, &[p, q]), p * q);
        prop_assert_eq!(d(7, &[p, q]), 4 * p * q);
        let n = p + 1;
        prop_assert_eq!(d(1, &[n]), (n - 1) * (n + 2) / 2);
        prop_assert_eq!(d(2, &[n]), (n - 1) * (2 * n + 1));
        prop_assert_eq!(d(5, &[n]), n * (n - 1));
        prop_assert_eq!(d(6, &[p]), p * (p + 1));
    }

    #[test]
    fn verdict_reason_is_consistent(p in 1usize..24, q in 1usize..24) {
        for case in [3u8, 4, 7] {
            let v = check_conditions(&case_candidate(case).unwrap(), &[p, q]).unwrap();
            match v.r {
                None => prop_assert_eq!(v.reason, Reason::FailsConditionA),
                Some(r) => {
                    let divisible = v.dim.is_multiple_of(n0(r).unwrap());
                    prop_assert_eq!(v.reason == Reason::FailsDivisibilityB, !divisible);
                    prop_assert_eq!(v.admissible, v.reason == Reason::Admissible);
                }
            }
        }
    }
}
