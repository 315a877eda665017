use std::process::Command;
use std::time::{Duration, Instant};

use clifflab_core::classify::{self, Format};
use clifflab_core::curvature::scal_formula;
use clifflab_core::report::VerificationReport;
use clifflab_core::spin::{build_even_rep, n0, n_irr};
use clifflab_core::structure::{extend_hodge, split_rank4, EvenCliffordStructure};
use clifflab_core::suite;
use clifflab_core::triality::triality_map;
use clifflab_core::{Matrix, Rational};

const TABLE2: &str = include_str!("../../core/tests/fixtures/table2.md");
const TABLE3: &str = include_str!("../../core/tests/fixtures/table3.md");

type Check = Result<(), String>;

type Criterion = (&'static str, &'static str, Option<Duration>, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn clean(rep: clifflab_core::Result<VerificationReport>) -> Check {
    let rep = rep.map_err(|e| e.to_string())?;
    ensure(rep.passed && rep.failures.is_empty(), || {
        format!("{} of {} checks failed in {}, first: {:?}", rep.failures.len(), rep.checked, rep.suite, rep.first_failure())
    })
}

fn even(r: usize, p: usize, m: usize) -> Result<EvenCliffordStructure, String> {
    build_even_rep(r, p, m).map(EvenCliffordStructure::from_rep).map_err(|e| e.to_string())
}

fn ac1() -> Check {
    let n0s: Vec<usize> = [5, 6, 9, 10, 12, 16].iter().map(|&r| n0(r).unwrap_or(0)).collect();
    let ns: Vec<usize> = [9, 10, 12, 16].iter().map(|&r| n_irr(r).unwrap_or(0)).collect();
    ensure(n0s == [8, 8, 16, 32, 64, 128], || format!("N0 = {n0s:?}"))?;
    ensure(ns == [32, 64, 128, 256], || format!("N = {ns:?}"))
}

fn ac2() -> Check {
    clean(suite::relations())
}

fn ac3() -> Check {
    clean(suite::rank4_split())?;
    for (p, m) in [(1, 1), (2, 1)] {
        let sp = split_rank4(&even(4, p, m)?).map_err(|e| e.to_string())?;
        ensure(sp.p_plus.trace() == Rational::from(4 * p) && sp.p_minus.trace() == Rational::from(4 * m), || {
            format!("block sizes for ({p}, {m})")
        })?;
    }
    Ok(())
}

fn ac4() -> Check {
    clean(suite::hodge())?;
    for r in [3, 7] {
        let h = extend_hodge(&even(r, 1, 1)?).map_err(|e| e.to_string())?;
        ensure(h.k.len() == r, || format!("rank {r}: {} generators", h.k.len()))?;
        for (i, a) in h.k.iter().enumerate() {
            for (j, b) in h.k.iter().enumerate() {
                let c = if i == j { -2 } else { 0 };
                let want = Matrix::scalar(a.nrows(), Rational::from_int(c));
                ensure(a.anticommutator(b) == want, || format!("rank {r}: K{i} K{j}"))?;
            }
        }
    }
    Ok(())
}

fn ac5() -> Check {
    clean(suite::universality(0))
}

fn ac6() -> Check {
    let t = triality_map().map_err(|e| e.to_string())?;
    clean(Ok(t.certificate.clone()))?;
    let basis: Vec<Matrix> = (0..8).flat_map(|a| (a + 1..8).map(move |b| Matrix::elementary_rotation(8, a, b))).collect();
    let images: Vec<Matrix> = basis.iter().map(|x| t.apply(x)).collect();
    let mut brackets = 0;
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let lhs = t.apply(&basis[i].commutator(&basis[j]));
            ensure(lhs == images[i].commutator(&images[j]), || format!("bracket ({i}, {j})"))?;
            brackets += 1;
        }
    }
    ensure(brackets == 378, || format!("{brackets} brackets"))
}

fn ac7() -> Check {
    clean(suite::curvature_n8())
}

fn ac8() -> Check {
    clean(suite::octonionic_plane())
}

fn ac9() -> Check {
    clean(suite::curvature_identities())
}

fn ac10() -> Check {
    clean(suite::centralizers())
}

fn ac11() -> Check {
    let t2 = classify::render(2, Format::Markdown).map_err(|e| e.to_string())?;
    let t3 = classify::render(3, Format::Markdown).map_err(|e| e.to_string())?;
    ensure(t2 == TABLE2, || "Table 2 differs from fixture".into())?;
    ensure(t3 == TABLE3, || "Table 3 differs from fixture".into())?;
    let printed: Vec<(usize, usize, i64)> =
        vec![(16, 9, 576), (32, 10, 1536), (64, 12, 4608), (128, 16, 15360), (8, 8, 224), (8, 6, 160), (8, 5, 128), (4, 3, 24)];
    for (n, r, v) in printed {
        ensure(scal_formula(n, r) == Rational::from_int(v), || format!("scal_formula({n}, {r})"))?;
    }
    clean(suite::classification())
}

fn ac12() -> Check {
    let run = || -> Result<(Vec<u8>, Duration), String> {
        let t = Instant::now();
        let out = Command::new(env!("CARGO_BIN_EXE_clifflab"))
            .args(["verify-all", "--seed", "0"])
            .output()
            .map_err(|e| e.to_string())?;
        let elapsed = t.elapsed();
        ensure(out.status.success(), || format!("exit {:?}", out.status.code()))?;
        Ok((out.stdout, elapsed))
    };
    let (a, ta) = run()?;
    let (b, tb) = run()?;
    ensure(a == b, || "reports differ between runs".into())?;
    let limit = Duration::from_secs(300);
    ensure(ta < limit && tb < limit, || format!("runs took {ta:?} and {tb:?}"))?;
    let v: serde_json::Value = serde_json::from_slice(&a).map_err(|e| e.to_string())?;
    ensure(v["passed"] == true, || "report not passing".into())
}

fn main() {
    // AC9 has no pinned time; AC12 pins each of its two runs separately.
    let criteria: [Criterion; 12] = [
        ("AC1", "dimension tables", Some(Duration::from_millis(1)), ac1),
        ("AC2", "relations and orthogonality for 2 <= r <= 16", Some(Duration::from_secs(10)), ac2),
        ("AC3", "rank-4 splitting", Some(Duration::from_secs(1)), ac3),
        ("AC4", "Hodge extension", Some(Duration::from_secs(1)), ac4),
        ("AC5", "universality round trip", Some(Duration::from_secs(5)), ac5),
        ("AC6", "triality", Some(Duration::from_secs(5)), ac6),
        ("AC7", "model curvature at n = 8", Some(Duration::from_secs(30)), ac7),
        ("AC8", "octonionic plane", Some(Duration::from_secs(120)), ac8),
        ("AC9", "curvature identities at kappa = 2", None, ac9),
        ("AC10", "centralizers in so(8)", Some(Duration::from_secs(1)), ac10),
        ("AC11", "classification tables and exclusions", Some(Duration::from_secs(1)), ac11),
        ("AC12", "verify-all determinism", None, ac12),
    ];
    let mut failed = 0;
    for (id, name, limit, f) in criteria {
        let t = Instant::now();
        let result = f();
        let elapsed = t.elapsed();
        let result = result.and_then(|()| match limit {
            Some(l) if elapsed > l => Err(format!("took {elapsed:?}, limit {l:?}")),
            _ => Ok(()),
        });
        match result {
            Ok(()) => println!("PASS {id} {name} ({elapsed:.2?})"),
            Err(e) => {
                failed += 1;
                println!("FAIL {id} {name} ({elapsed:.2?}): {e}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 12 criteria failed");
        std::process::exit(1);
    }
    println!("all 12 criteria passed");
}
