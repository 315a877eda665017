use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use clifflab_core::classify::{self, Format};
use clifflab_core::curvature::{verify_cc_normalization, verify_derived_identities, verify_parallel_identities};
use clifflab_core::models;
use clifflab_core::report::VerificationReport;
use clifflab_core::spin::{build_clifford_rep, build_even_rep, MatrixRep, RepJson, StructureJson};
use clifflab_core::structure::{
    extend_hodge, universal_extension, verify_orthogonality, verify_relations, EvenCliffordStructure, Lambda2Map,
    UniversalityConfig,
};
use clifflab_core::suite::{self, SCHEMA};
use clifflab_core::{Error, Rational};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {message}")]
    Input { path: PathBuf, message: String },
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } => 3,
            CliError::Core(Error::Invariant(_)) => 1,
            _ => 2,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Exact Clifford representations, even Clifford structures, model
/// curvature operators and classification tables.
#[derive(Debug, Parser)]
#[command(name = "clifflab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit integer generator matrices of a Clifford representation.
    Repgen(RepgenArgs),
    /// Run one verification suite on a serialized structure or representation.
    Verify(VerifyArgs),
    /// Check a model curvature operator.
    Curvature(CurvatureArgs),
    /// Render Tables 1-3 or evaluate a single symmetric space.
    Classify(ClassifyArgs),
    /// Run every suite in a fixed order.
    VerifyAll(VerifyAllArgs),
    /// Write table1.md, table2.md, table3.md and tables.json into a directory.
    EmitTables(EmitArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Even,
    Full,
}

#[derive(Debug, Args)]
struct RepgenArgs {
    #[arg(long)]
    rank: usize,
    #[arg(long, value_enum, default_value = "even")]
    kind: KindArg,
    /// Number of copies; for even kinds with r ≡ 0 mod 4, copies of the `+1` volume block.
    #[arg(long, default_value_t = 1)]
    copies: usize,
    /// Copies of the `-1` volume block (even kind, r ≡ 0 mod 4 only; defaults to 0).
    #[arg(long)]
    minus: Option<usize>,
    /// Emit the `J_ij` family instead of the generators.
    #[arg(long)]
    structure: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Relations,
    Orthogonality,
    Hodge,
    Universality,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// A `J_ij` family or a representation written by `repgen`.
    #[arg(long)]
    structure: PathBuf,
    #[arg(long, value_enum)]
    suite: SuiteArg,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelArg {
    S8,
    Cp4,
    Hp2,
    Op2,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CheckArg {
    Identities,
    Cc,
    Spectrum,
}

#[derive(Debug, Args)]
struct CurvatureArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    #[arg(long, value_enum)]
    check: CheckArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Markdown,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3), conflicts_with = "candidate")]
    table: Option<u8>,
    #[arg(long, value_enum, default_value = "markdown")]
    format: FormatArg,
    /// `case1` to `case7`, or the label of a single space such as `F₄/Spin(9)`.
    #[arg(long)]
    candidate: Option<String>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyAllArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Add per-suite wall-clock times to the report.
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EmitArgs {
    dir: PathBuf,
}

fn write_output(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source }),
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io { path: "<stdout>".into(), source: e }),
                _ => Ok(()),
            }
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn with_schema<T: Serialize>(v: &T) -> Value {
    let mut value = serde_json::to_value(v).expect("reports serialize");
    if let Value::Object(map) = &mut value {
        map.insert("schema".into(), json!(SCHEMA));
    }
    value
}

fn repgen(a: RepgenArgs) -> CliResult<bool> {
    let rep = match a.kind {
        KindArg::Full => {
            if a.minus.is_some() {
                return Err(CliError::Usage("--minus applies only to --kind even".into()));
            }
            build_clifford_rep(a.rank, a.copies)?
        }
        KindArg::Even => {
            let minus = match a.minus {
                Some(m) => m,
                None if a.rank.is_multiple_of(4) => 0,
                None => a.copies,
            };
            build_even_rep(a.rank, a.copies, minus)?
        }
    };
    let text = if a.structure { to_json(&with_schema(&rep.j_family().to_json())) } else { to_json(&with_schema(&rep.to_json())) };
    write_output(a.out.as_deref(), &text)?;
    Ok(true)
}

fn load_structure(path: &Path) -> CliResult<EvenCliffordStructure> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    let input = |message: String| CliError::Input { path: path.to_path_buf(), message };
    let value: Value = serde_json::from_str(&text).map_err(|e| input(format!("invalid JSON: {e}")))?;
    if value.get("generators").is_some() {
        let rep: RepJson = serde_json::from_value(value).map_err(|e| input(format!("not a representation: {e}")))?;
        let rep = MatrixRep::from_json(&rep).map_err(|e| input(e.to_string()))?;
        Ok(EvenCliffordStructure::from_rep(rep))
    } else {
        let s: StructureJson = serde_json::from_value(value).map_err(|e| input(format!("not a structure: {e}")))?;
        let family = clifflab_core::spin::JFamily::from_json(&s).map_err(|e| input(e.to_string()))?;
        Ok(EvenCliffordStructure::from_family(family))
    }
}

fn verify(a: VerifyArgs) -> CliResult<bool> {
    let s = load_structure(&a.structure)?;
    let report = match a.suite {
        SuiteArg::Relations => verify_relations(&s),
        SuiteArg::Orthogonality => verify_orthogonality(&s),
        SuiteArg::Hodge => extend_hodge(&s)?.report,
        SuiteArg::Universality => {
            let cfg = UniversalityConfig { seed: a.seed, ..UniversalityConfig::default() };
            match universal_extension(&Lambda2Map::from_structure(&s), &cfg) {
                Ok(ext) => {
                    let mut rep = ext.report.clone();
                    for mask in ext.even_blades() {
                        rep.check_eq("extension = structure", &[mask as usize], ext.blade_image(mask), &s.even_blade(mask));
                    }
                    rep
                }
                Err(e @ Error::Rejected { .. }) => {
                    let mut rep = VerificationReport::new("universality");
                    rep.check_flag(&e.to_string(), &[], false);
                    rep
                }
                Err(e) => return Err(e.into()),
            }
        }
    };
    write_output(a.report.as_deref(), &to_json(&with_schema(&report)))?;
    Ok(report.passed)
}

fn curvature(a: CurvatureArgs) -> CliResult<bool> {
    let name = match a.model {
        ModelArg::S8 => "s8",
        ModelArg::Cp4 => "cp4",
        ModelArg::Hp2 => "hp2",
        ModelArg::Op2 => "op2",
    };
    let m = models::model(name)?;
    let two = Rational::from_int(2);
    let (passed, body) = match a.check {
        CheckArg::Identities => {
            let mut rep = verify_parallel_identities(&m.operator, &m.structure, two)?;
            rep.absorb(verify_derived_identities(&m.operator, &m.structure, two));
            rep.absorb(m.operator.check_symmetries());
            (rep.passed, serde_json::to_value(&rep).expect("serializable"))
        }
        CheckArg::Cc => {
            let rep = verify_cc_normalization(&m.operator, &m.structure)?;
            (rep.passed, serde_json::to_value(&rep).expect("serializable"))
        }
        CheckArg::Spectrum => {
            let spec = m.operator.spectrum();
            let list: Vec<Value> = spec.eigenvalues.iter().map(|(l, k)| json!({"eigenvalue": l, "multiplicity": k})).collect();
            let mut v = json!({ "spectrum": list });
            if let Some(p) = &spec.irrational_factor {
                v["irrational_factor"] = json!(p.iter().map(ToString::to_string).collect::<Vec<_>>());
            }
            (true, v)
        }
    };
    let report = json!({
        "schema": SCHEMA,
        "model": name,
        "n": m.n,
        "r": m.r,
        "constructor": m.constructor,
        "calibration": m.calibration,
        "scal": m.scal,
        "ric": m.ric,
        "check": format!("{:?}", a.check).to_lowercase(),
        "passed": passed,
        "result": body,
    });
    write_output(a.out.as_deref(), &to_json(&report))?;
    Ok(passed)
}

fn classify_cmd(a: ClassifyArgs) -> CliResult<bool> {
    let format = match a.format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
        FormatArg::Markdown => Format::Markdown,
    };
    if let Some(t) = a.table {
        let mut text = match format {
            Format::Json => {
                let rows = classify::table_rows(t)?;
                serde_json::to_string_pretty(&json!({"schema": SCHEMA, "table": t, "rows": rows})).expect("serializable")
            }
            _ => classify::render(t, format)?,
        };
        if !text.ends_with('\n') {
            text.push('\n');
        }
        write_output(a.out.as_deref(), &text)?;
        return Ok(true);
    }
    let Some(label) = a.candidate else {
        return Err(CliError::Usage("classify needs --table or --candidate".into()));
    };
    let c = match label.strip_prefix("case").and_then(|k| k.parse::<u8>().ok()) {
        Some(k) => classify::case_candidate(k),
        None => classify::candidate(&label),
    }
    .ok_or_else(|| CliError::Usage(format!("unknown candidate `{label}`")))?;
    let mut params = Vec::new();
    for name in c.params {
        let v = match *name {
            "p" => a.p,
            "q" => a.q,
            _ => a.n,
        };
        params.push(v.ok_or_else(|| CliError::Usage(format!("{} needs --{name}", c.label)))?);
    }
    let verdict = classify::check_conditions(&c, &params)?;
    write_output(a.out.as_deref(), &to_json(&with_schema(&verdict)))?;
    Ok(true)
}

fn verify_all(a: VerifyAllArgs) -> CliResult<bool> {
    let mut times = Vec::new();
    let report = suite::verify_all_with(a.seed, |res, d| {
        eprintln!("{} {}", if res.passed { "PASS" } else { "FAIL" }, res.name);
        times.push((res.name.clone(), d.as_secs_f64() * 1e3));
    });
    let mut value = serde_json::to_value(&report).expect("serializable");
    if a.timing {
        let map: serde_json::Map<String, Value> = times.into_iter().map(|(k, ms)| (k, json!(ms))).collect();
        value["timing_ms"] = Value::Object(map);
    }
    write_output(a.out.as_deref(), &to_json(&value))?;
    Ok(report.passed)
}

fn emit_tables(a: EmitArgs) -> CliResult<bool> {
    let io = |path: PathBuf| move |source| CliError::Io { path, source };
    fs::create_dir_all(&a.dir).map_err(io(a.dir.clone()))?;
    let mut all = serde_json::Map::new();
    for t in 1..=3u8 {
        let path = a.dir.join(format!("table{t}.md"));
        fs::write(&path, classify::render(t, Format::Markdown)?).map_err(io(path.clone()))?;
        all.insert(format!("table{t}"), serde_json::to_value(classify::table_rows(t)?).expect("serializable"));
    }
    let path = a.dir.join("tables.json");
    let text = to_json(&json!({"schema": SCHEMA, "tables": all}));
    fs::write(&path, text).map_err(io(path.clone()))?;
    Ok(true)
}

fn run(cli: Cli) -> CliResult<bool> {
    match cli.command {
        Command::Repgen(a) => repgen(a),
        Command::Verify(a) => verify(a),
        Command::Curvature(a) => curvature(a),
        Command::Classify(a) => classify_cmd(a),
        Command::VerifyAll(a) => verify_all(a),
        Command::EmitTables(a) => emit_tables(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("clifflab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
