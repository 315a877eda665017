use std::process::Command;

fn repgen(rank: &str, env: Option<&str>, out: &std::path::Path) -> Option<i32> {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_clifflab"));
    cmd.args(["repgen", "--rank", rank, "--kind", "even", "--out", out.to_str().unwrap()]);
    match env {
        Some(v) => cmd.env("CLIFFLAB_MAX_RANK", v),
        None => cmd.env_remove("CLIFFLAB_MAX_RANK"),
    };
    cmd.output().unwrap().status.code()
}

#[test]
fn env_overrides_rank_cap() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rep.json");
    assert_eq!(repgen("17", None, &out), Some(2));
    assert_eq!(repgen("17", Some("not a number"), &out), Some(2));
    assert_eq!(repgen("17", Some("17"), &out), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(v["dim"], 256);
    assert_eq!(repgen("33", Some("40"), &out), Some(2));
}
