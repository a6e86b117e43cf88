//! `qdiff`: file-driven front end for qdiff-core.
//!
//! Reports go to stdout as text (or JSON with `--json`) and, with `--out`, as
//! pretty JSON to a file. Failures print a one-line JSON error record to
//! stderr. Exit codes: 0 success, 1 a law or check failed, 2 bad input.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qdiff_core::acceptance::{self, CriterionResult};
use qdiff_core::{
    attach, cohomology_table, compare_envelopes, covering, envelope_abstract, hexagon_check, hexagon_classes,
    inner_differential, long_sequences, parse_sparse, AlgebraFile, BilinearProduct, CochainAlgebra, ComplexView,
    DegreeOneMap, DifferentialFile, GeneralizedCohomology, GradedAlgebra, Grading, QDiffAlgebra, QMode,
    TruncatedAlgebra, Values,
};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "qdiff", version, about = "Exact computations with graded q-differential algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the q-Leibniz rule, d(1) = 0 and d^N = 0 for a differential
    Check {
        #[command(flatten)]
        job: Job,
        #[command(flatten)]
        source: DiffSource,
    },
    /// Dimensions of the universal q-differential envelope, abstract vs embedded
    Envelope {
        #[command(flatten)]
        job: Job,
        /// Also list basis labels per degree
        #[arg(long)]
        basis: bool,
    },
    /// Generalized cohomology of the q-twisted Hochschild complex C(A, A)
    Hochschild {
        #[command(flatten)]
        job: Job,
    },
    /// Generalized cohomology table H^(k),n of a graded N-complex
    Homology {
        #[command(flatten)]
        job: Job,
        #[command(flatten)]
        source: DiffSource,
    },
    /// Exactness of every hexagon and its long sequences
    Hexagon {
        #[command(flatten)]
        job: Job,
        #[command(flatten)]
        source: DiffSource,
    },
    /// Run the acceptance suite and print a pass/fail matrix
    Reproduce {
        /// Criteria to run (default: all)
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct Job {
    /// Algebra presentation (JSON)
    #[arg(long)]
    algebra: PathBuf,
    /// Order of the root of unity q, or `generic`
    #[arg(long = "N", value_name = "int|generic")]
    mode: QMode,
    /// Truncation degree (default 2N+2, or 6 for generic q)
    #[arg(long)]
    max_degree: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct Output {
    /// Write the full JSON report here
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON report instead of the text summary
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct DiffSource {
    /// Differential as per-degree sparse blocks (JSON)
    #[arg(long)]
    differential: Option<PathBuf>,
    /// Degree-one element e (JSON map index -> scalar); uses the inner differential of e
    #[arg(long)]
    inner: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error(transparent)]
    Core(#[from] qdiff_core::Error),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "Io",
            CliError::Json { .. } => "Json",
            CliError::Core(e) => e.kind(),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if !e.is_law_violation() => 2,
            CliError::Io { .. } | CliError::Json { .. } => 2,
            CliError::Core(_) => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// A finished command: the JSON report, the text summary, and whether every
/// check it ran passed.
struct Report {
    json: Value,
    text: String,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("QDIFF_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let output = match &cli.command {
        Command::Check { job, .. }
        | Command::Envelope { job, .. }
        | Command::Hochschild { job }
        | Command::Homology { job, .. }
        | Command::Hexagon { job, .. } => &job.output,
        Command::Reproduce { output, .. } => output,
    };
    let result = match &cli.command {
        Command::Check { job, source } => check(job, source),
        Command::Envelope { job, basis } => envelope(job, *basis),
        Command::Hochschild { job } => hochschild(job),
        Command::Homology { job, source } => homology(job, source),
        Command::Hexagon { job, source } => hexagon(job, source),
        Command::Reproduce { only, .. } => reproduce(only),
    };
    match result.and_then(|r| emit(r, output)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let record = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
            eprintln!("{record}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn emit(report: Report, output: &Output) -> Result<bool> {
    let pretty = serde_json::to_string_pretty(&report.json).expect("reports serialize");
    if let Some(path) = &output.out {
        fs::write(path, format!("{pretty}\n")).map_err(|source| CliError::Io { path: path.clone(), source })?;
    }
    if output.json {
        println!("{pretty}");
    } else {
        print!("{}", report.text);
    }
    Ok(report.ok)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.into(), source })
}

fn load_algebra(job: &Job) -> Result<GradedAlgebra> {
    let file: AlgebraFile = read_json(&job.algebra)?;
    Ok(file.build(job.mode)?)
}

fn window(job: &Job) -> usize {
    job.max_degree.unwrap_or(match job.mode.order() {
        Some(n) => 2 * n as usize + 2,
        None => 6,
    })
}

/// The order of the N-complex, enforcing `max_degree >= N`.
fn complex_order(job: &Job) -> Result<usize> {
    let n = job
        .mode
        .order()
        .ok_or_else(|| qdiff_core::Error::IllFormed("generalized cohomology needs a finite N".into()))?
        as usize;
    if window(job) < n {
        return Err(qdiff_core::Error::IllFormed(format!("max degree {} is below N = {n}", window(job))).into());
    }
    Ok(n)
}

/// The algebra carrying the differential: the covering for ℤ_N-graded input.
fn carrier(job: &Job, a: GradedAlgebra) -> Result<GradedAlgebra> {
    Ok(match a.grading() {
        Grading::ModN(_) => covering(&a, window(job))?.into_algebra(),
        Grading::Nat => a,
    })
}

/// The graded space and differential, without checking any law.
fn load_complex(job: &Job, source: &DiffSource) -> Result<(GradedAlgebra, DegreeOneMap)> {
    let a = load_algebra(job)?;
    if let Some(path) = &source.inner {
        let qda = load_inner(job, &a, path)?;
        return Ok((qda.algebra().clone(), qda.d().clone()));
    }
    let path = source.differential.as_ref().expect("clap enforces one source");
    let file: DifferentialFile = read_json(path)?;
    let alg = carrier(job, a)?;
    let d = file.to_map(&alg.dims(), job.mode)?;
    Ok((alg, d))
}

fn load_inner(job: &Job, a: &GradedAlgebra, path: &Path) -> Result<QDiffAlgebra<GradedAlgebra>> {
    let map: BTreeMap<String, String> = read_json(path)?;
    let e = parse_sparse(&map, job.mode)?;
    Ok(inner_differential(a, &e, window(job))?)
}

fn load_qda(job: &Job, source: &DiffSource) -> Result<QDiffAlgebra<GradedAlgebra>> {
    if let Some(path) = &source.inner {
        return load_inner(job, &load_algebra(job)?, path);
    }
    let (alg, d) = load_complex(job, source)?;
    Ok(attach(alg, d, job.mode)?)
}

fn dims_line(dims: &[usize]) -> String {
    dims.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn table_text(table: &[GeneralizedCohomology]) -> String {
    let mut s = String::from("k n dim stable\n");
    for h in table {
        let _ = writeln!(s, "{} {} {} {}", h.k, h.n, h.dim, h.stable);
    }
    s
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn check(job: &Job, source: &DiffSource) -> Result<Report> {
    let qda = load_qda(job, source)?;
    let r = qda.report();
    let text = format!(
        "mode {}\ndims {}\nq-Leibniz: {} basis pairs ok\nd^N = 0: degrees {:?} ok\nd(1) = 0: {}\nall laws hold\n",
        r.mode,
        dims_line(&r.dims),
        r.leibniz_pairs,
        r.nilpotency_degrees,
        r.unit_closed.map_or("no unit".to_string(), |b| b.to_string()),
    );
    Ok(Report { json: json!({ "command": "check", "laws_hold": true, "report": to_value(r) }), text, ok: true })
}

fn envelope(job: &Job, basis: bool) -> Result<Report> {
    let base = load_algebra(job)?;
    let max = window(job);
    let r = compare_envelopes(&base, max, job.mode)?;
    let mut text = format!("{}\nisomorphic {}\n", dims_line(&r.abstract_dims), r.isomorphic);
    let mut json = json!({ "command": "envelope", "report": to_value(&r) });
    if basis {
        let env = envelope_abstract(&base, max, job.mode)?;
        let labels: Vec<Vec<String>> = (0..=max)
            .map(|n| (0..env.algebra().dim(n)).map(|i| env.algebra().basis_label(n, i)).collect())
            .collect();
        for (n, ls) in labels.iter().enumerate() {
            let _ = writeln!(text, "degree {n}: {}", ls.join(", "));
        }
        json["basis"] = to_value(&labels);
    }
    Ok(Report { json, text, ok: r.isomorphic })
}

fn hochschild(job: &Job) -> Result<Report> {
    let a = load_algebra(job)?;
    let cochains = CochainAlgebra::new(BilinearProduct::from_algebra(&a)?, Values::Algebra, window(job));
    let delta = cochains.delta_q_map()?;
    let qda = attach(cochains, delta, job.mode)?;
    let r = qda.report();
    let mut text = format!("mode {}\ncochain dims {}\nlaws hold\n", r.mode, dims_line(&r.dims));
    let mut json = json!({ "command": "hochschild", "report": to_value(r) });
    if job.mode.order().is_some() {
        complex_order(job)?;
        let table = cohomology_table(&qda.complex_view()?);
        text.push_str(&table_text(&table));
        json["cohomology"] = to_value(&table);
    }
    Ok(Report { json, text, ok: true })
}

fn view_of(job: &Job, source: &DiffSource) -> Result<ComplexView> {
    let order = complex_order(job)?;
    let (alg, d) = load_complex(job, source)?;
    Ok(ComplexView::new(alg.dims(), d, order, job.mode)?)
}

fn homology(job: &Job, source: &DiffSource) -> Result<Report> {
    let view = view_of(job, source)?;
    let table = cohomology_table(&view);
    let text = format!("N {}\ndims {}\n{}", view.order(), dims_line(view.dims()), table_text(&table));
    let json = json!({
        "command": "homology",
        "order": view.order(),
        "dims": view.dims(),
        "cohomology": to_value(&table),
    });
    Ok(Report { json, text, ok: true })
}

fn hexagon(job: &Job, source: &DiffSource) -> Result<Report> {
    let view = view_of(job, source)?;
    let n = view.order();
    let mut hexagons = Vec::new();
    let mut sequences = Vec::new();
    let mut text = String::new();
    let mut ok = true;
    for l in 1..n {
        for m in 1..n - l {
            let h = hexagon_check(&view, l, m)?;
            let _ = writeln!(text, "hexagon ({l}, {m}): exact {}", h.exact);
            ok &= h.exact;
            hexagons.push(h);
            for p in 0..n {
                let s = long_sequences(&view, l, m, p)?;
                let _ = writeln!(
                    text,
                    "  sequence p = {p}: {} tested nodes, {} outside window, exact {}",
                    s.tested, s.untested, s.exact
                );
                ok &= s.exact;
                sequences.push(s);
            }
        }
    }
    let classes = hexagon_classes(n);
    for c in &classes {
        let _ = writeln!(text, "class {:?}: {:?}", c.representative, c.members);
    }
    let json = json!({
        "command": "hexagon",
        "order": n,
        "exact": ok,
        "hexagons": to_value(&hexagons),
        "sequences": to_value(&sequences),
        "classes": to_value(&classes),
    });
    Ok(Report { json, text, ok })
}

fn reproduce(only: &[usize]) -> Result<Report> {
    let ids: Vec<usize> = if only.is_empty() { (1..=12).collect() } else { only.to_vec() };
    if let Some(bad) = ids.iter().find(|i| !(1..=12).contains(*i)) {
        return Err(qdiff_core::Error::IllFormed(format!("no criterion {bad}; criteria are 1..=12")).into());
    }
    let results: Vec<CriterionResult> = ids.par_iter().map(|&i| acceptance::run(i)).collect();
    let mut text = String::from(" #  result  seconds  criterion\n");
    for r in &results {
        let _ = writeln!(
            text,
            "{:>2}  {:<6}  {:>7.2}  {}",
            r.id,
            if r.passed { "PASS" } else { "FAIL" },
            r.seconds,
            r.title
        );
    }
    text.push('\n');
    for r in &results {
        let _ = writeln!(text, "{:>2}: {}", r.id, r.detail);
    }
    let passed = results.iter().filter(|r| r.passed).count();
    let _ = writeln!(text, "\n{passed}/{} passed", results.len());
    let json = json!({ "command": "reproduce", "results": to_value(&results) });
    Ok(Report { json, text, ok: passed == results.len() })
}
