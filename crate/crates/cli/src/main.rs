//! `fermat`: command-line front end for fermat-core.
//!
//! Every subcommand prints one report on stdout (JSON with sorted keys by
//! default) and exits with 0 on success, 2 on invalid input, 3 when a
//! resource cap is hit and 4 when a verification fails.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fermat_core::cohomology;
use fermat_core::fixed_points::{self, DEFAULT_ELEMENT_CAP};
use fermat_core::free_enum::{self, EnumerationTask, Mode, DEFAULT_SUBSPACE_CAP};
use fermat_core::geometry::{self, Arrangement, VarietyModel, DEFAULT_FIBER_CAP};
use fermat_core::golden;
use fermat_core::invariants::{QuotientModel, QuotientOptions};
use fermat_core::json::biguint_value;
use fermat_core::{Error, GroupElement, GroupParams, Subgroup};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

const SCHEMA_VERSION: u32 = 1;
const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
const SAMPLING_TRIALS: usize = 10_000;

#[derive(Parser)]
#[command(name = "fermat", version, about = "Elementary abelian actions on generalized Fermat varieties")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Include wall-clock timing in the report (makes output run-dependent).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Level sets and fixed strata of an element, or freeness of a subgroup.
    FixedPoints(FixedPointsArgs),
    /// Enumerate freely acting subgroups K with H/K ≅ Z_p^m.
    Enumerate(EnumerateArgs),
    /// Enumerate and classify up to generator permutations.
    Classify(EnumerateArgs),
    /// Twisted-sheaf dimensions, genus and Kodaira dimension.
    Cohomology(CohomologyArgs),
    /// Algebraic hyperbolicity verdict for the quotient surfaces.
    Hyperbolicity(VarietyArgs),
    /// Check or sample a hyperplane arrangement and print its equations.
    Arrangement(ArrangementArgs),
    /// Numeric fibers of the branched cover over random base points.
    Fiber(FiberArgs),
    /// Invariant generators and relations of the quotient by a subgroup.
    Invariants(InvariantsArgs),
    /// Recompute the frozen reference values.
    #[command(alias = "reproduce-paper")]
    Reproduce(ReproduceArgs),
}

#[derive(Args)]
struct VarietyArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    p: u32,
    #[arg(long)]
    n: usize,
}

#[derive(Args)]
struct FixedPointsArgs {
    #[command(flatten)]
    v: VarietyArgs,
    /// Comma-separated exponents m_1,...,m_{n+1}.
    #[arg(long, allow_hyphen_values = true)]
    element: Option<String>,
    /// Subgroup JSON file {"p","n","basis"}.
    #[arg(long)]
    subgroup: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
    cap_elements: u64,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    v: VarietyArgs,
    #[arg(long)]
    m: usize,
    /// Also classify the result into orbits.
    #[arg(long)]
    classify: bool,
    /// Use the normalized exponent-matrix search (d = 2 only).
    #[arg(long)]
    normalized: bool,
    /// Include every subgroup in the report.
    #[arg(long)]
    list: bool,
    #[arg(long, default_value_t = DEFAULT_SUBSPACE_CAP)]
    cap_subspaces: u64,
    #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
    cap_elements: u64,
}

#[derive(Args)]
struct CohomologyArgs {
    #[command(flatten)]
    v: VarietyArgs,
    /// Report h^i(O_X(r)) for i = 0..=d.
    #[arg(long, allow_hyphen_values = true)]
    r: Option<i64>,
    /// Report the plurigenus P_m.
    #[arg(long)]
    m: Option<u64>,
}

#[derive(Args)]
struct LambdaSource {
    /// Seed for sampling Λ (and base points where needed).
    #[arg(long)]
    seed: Option<u64>,
    /// Λ file {"n","d","lambda":[["a/b",...],...]}.
    #[arg(long)]
    lambda: Option<PathBuf>,
}

#[derive(Args)]
struct ArrangementArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: Option<u32>,
    #[command(flatten)]
    src: LambdaSource,
}

#[derive(Args)]
struct FiberArgs {
    #[command(flatten)]
    v: VarietyArgs,
    #[command(flatten)]
    src: LambdaSource,
    /// Number of random base points.
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, default_value_t = DEFAULT_FIBER_CAP)]
    cap_elements: u64,
}

#[derive(Args)]
struct InvariantsArgs {
    #[command(flatten)]
    v: VarietyArgs,
    #[command(flatten)]
    src: LambdaSource,
    /// Generators of K as semicolon-separated exponent lists.
    #[arg(long)]
    generators: Option<String>,
    /// Subgroup JSON file {"p","n","basis"}.
    #[arg(long)]
    subgroup: Option<PathBuf>,
    /// Degree bound for generators and relations (default |K|).
    #[arg(long)]
    degree_bound: Option<u32>,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Run only one group of checks.
    #[arg(long)]
    filter: Option<String>,
    /// Reference file to check against instead of the built-in one.
    #[arg(long)]
    golden: Option<PathBuf>,
}

/// A failed run: exit code plus message for stderr.
struct Failure {
    code: u8,
    message: String,
    /// partial report still printed on stdout
    report: Option<Value>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Resource { .. } => 3,
            Error::Inconsistency(_) => 4,
            _ => 2,
        };
        Failure { code, message: e.to_string(), report: None }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into(), report: None }
}

type CmdResult = Result<Output, Failure>;

enum Output {
    Report(Value),
    /// header followed by one record per line
    Lines(Value, Vec<Value>),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = match &cli.command {
        Command::FixedPoints(a) => fixed_points_cmd(a),
        Command::Enumerate(a) => enumerate_cmd(a, a.classify),
        Command::Classify(a) => enumerate_cmd(a, true),
        Command::Cohomology(a) => cohomology_cmd(a),
        Command::Hyperbolicity(a) => hyperbolicity_cmd(a),
        Command::Arrangement(a) => arrangement_cmd(a),
        Command::Fiber(a) => fiber_cmd(a),
        Command::Invariants(a) => invariants_cmd(a),
        Command::Reproduce(a) => reproduce_cmd(a),
    };
    let elapsed = start.elapsed().as_millis();
    let finish = |v: Value| {
        let mut v = with_envelope(v);
        if cli.timing {
            v["elapsed_ms"] = json!(elapsed);
        }
        v
    };
    match result {
        Ok(Output::Report(v)) => {
            emit(&finish(v), cli.format);
            ExitCode::SUCCESS
        }
        Ok(Output::Lines(header, lines)) => {
            emit(&finish(header), cli.format);
            for l in &lines {
                emit(l, cli.format);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(v) = f.report {
                emit(&finish(v), cli.format);
            }
            eprintln!("fermat: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn with_envelope(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("schemaVersion".into(), json!(SCHEMA_VERSION));
        m.insert("toolVersion".into(), json!(TOOL_VERSION));
    }
    v
}

/// Write errors (a closed pipe) are ignored; the exit code still reports the run.
fn emit(v: &Value, format: Format) {
    let mut out = std::io::stdout().lock();
    let _ = match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(v).expect("values serialize")),
        Format::Text => match v {
            Value::Object(m) => m.iter().try_for_each(|(k, x)| match x {
                Value::String(s) => writeln!(out, "{k}: {s}"),
                other => writeln!(out, "{k}: {other}"),
            }),
            other => writeln!(out, "{other}"),
        },
    };
}

fn params(v: &VarietyArgs) -> Result<GroupParams, Failure> {
    let gp = GroupParams::new(v.p, v.n)?;
    if v.d < 1 || v.d > v.n {
        return Err(input_error(format!("d must satisfy 1 <= d <= n, got d = {}, n = {}", v.d, v.n)));
    }
    Ok(gp)
}

fn parse_ints(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| input_error(format!("bad integer {t:?}: {e}"))))
        .collect()
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input_error(format!("cannot read {}: {e}", path.display())))
}

fn read_subgroup(path: &Path, gp: GroupParams) -> Result<Subgroup, Failure> {
    let k: Subgroup =
        serde_json::from_str(&read_file(path)?).map_err(|e| input_error(format!("bad subgroup file: {e}")))?;
    if k.params() != gp {
        return Err(input_error("subgroup file has different p or n"));
    }
    Ok(k)
}

fn arrangement_from(src: &LambdaSource, n: usize, d: usize) -> Result<Arrangement, Failure> {
    match (&src.lambda, src.seed) {
        (Some(path), _) => {
            let arr = Arrangement::from_json(&read_file(path)?)?;
            if (arr.n(), arr.d()) != (n, d) {
                return Err(input_error(format!("Λ file is for (n, d) = ({}, {})", arr.n(), arr.d())));
            }
            Ok(arr)
        }
        (None, _) if n == d + 1 => Ok(Arrangement::fermat(d)?),
        (None, Some(seed)) => Ok(geometry::random_omega_sample(seed, n, d, SAMPLING_TRIALS)?),
        (None, None) => Err(input_error("either --seed or --lambda is required")),
    }
}

fn fixed_points_cmd(a: &FixedPointsArgs) -> CmdResult {
    let gp = params(&a.v)?;
    let d = a.v.d;
    let task = json!({"d": d, "p": gp.p, "n": gp.n});
    match (&a.element, &a.subgroup) {
        (Some(e), None) => {
            let x = GroupElement::normalize(&parse_ints(e)?, gp)?;
            let report = fixed_points::strata_report(&x, d)?;
            let mut v = serde_json::to_value(&report).expect("plain data");
            v["task"] = task;
            v["hasFixedPoints"] = json!(!report.strata.is_empty());
            v["levelSets"] = serde_json::to_value(fixed_points::level_sets(&x)).expect("plain data");
            Ok(Output::Report(v))
        }
        (None, Some(path)) => {
            let k = read_subgroup(path, gp)?;
            let free = fixed_points::acts_freely_subgroup(&k, d, a.cap_elements)?;
            Ok(Output::Report(json!({
                "task": task,
                "subgroup": k,
                "order": biguint_value(&k.order()),
                "actsFreely": free,
            })))
        }
        _ => Err(input_error("give exactly one of --element and --subgroup")),
    }
}

fn enumerate_cmd(a: &EnumerateArgs, classify: bool) -> CmdResult {
    let gp = params(&a.v)?;
    let mut task = EnumerationTask::new(a.v.d, gp.p, gp.n, a.m);
    task.subspace_cap = a.cap_subspaces;
    task.element_cap = a.cap_elements;
    if a.normalized {
        task.mode = Mode::Normalized;
    }
    let bounds = free_enum::necessary_bounds(task.d, task.p, task.n, task.m)?;
    let mut v = json!({
        "task": serde_json::to_value(&task).expect("plain data"),
        "bounds": serde_json::to_value(&bounds).expect("plain data"),
    });
    let subgroups: Vec<Subgroup> = match task.mode {
        Mode::Exhaustive => free_enum::enumerate_all(&task)?,
        Mode::Normalized => {
            let mats = free_enum::enumerate_normalized(&task)?;
            if mats.len() > task.orbit_cap {
                return Err(Error::resource("orbit closure", mats.len(), task.orbit_cap).into());
            }
            let ks: Vec<Subgroup> = mats.iter().map(|m| m.to_subgroup()).collect::<Result<_, _>>()?;
            v["normalizedForms"] = json!(mats.len());
            free_enum::close_under_autg(&ks, task.orbit_cap)?
        }
    };
    v["count"] = json!(subgroups.len());
    if a.list {
        v["subgroups"] = serde_json::to_value(&subgroups).expect("plain data");
    }
    if classify {
        let classes = free_enum::classify_orbits_capped(&subgroups, task.orbit_cap)?;
        v["orbits"] = serde_json::to_value(&classes).expect("plain data");
    }
    Ok(Output::Report(v))
}

fn cohomology_cmd(a: &CohomologyArgs) -> CmdResult {
    let (d, p, n) = (a.v.d, a.v.p, a.v.n);
    let profile = cohomology::genus_profile(d, p, n)?;
    let mut v = serde_json::to_value(&profile).expect("plain data");
    v["hyperbolicity"] = serde_json::to_value(cohomology::hyperbolicity_verdict(d, p, n)?).expect("plain data");
    if let Some(r) = a.r {
        let h: Vec<Value> = (0..=d).map(|i| biguint_value(&cohomology::h_i(d, p, n, i, r))).collect();
        v["r"] = json!(r);
        v["h"] = json!(h);
    }
    if let Some(m) = a.m {
        v["m"] = json!(m);
        v["plurigenus"] = biguint_value(&cohomology::plurigenus(d, p, n, m));
    }
    Ok(Output::Report(v))
}

fn hyperbolicity_cmd(a: &VarietyArgs) -> CmdResult {
    let verdict = cohomology::hyperbolicity_verdict(a.d, a.p, a.n)?;
    let mut v = serde_json::to_value(verdict).expect("plain data");
    v["task"] = json!({"d": a.d, "p": a.p, "n": a.n});
    Ok(Output::Report(v))
}

fn rational_rows(rows: &[Vec<num_rational::BigRational>]) -> Value {
    json!(rows.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn arrangement_cmd(a: &ArrangementArgs) -> CmdResult {
    let arr = arrangement_from(&a.src, a.n, a.d)?;
    let mut v = json!({
        "arrangement": arr.to_json_value(),
        "generalPosition": geometry::in_general_position(&arr),
        "hyperplanes": rational_rows(arr.hyperplanes()),
    });
    if let Some(p) = a.p {
        let model = VarietyModel::new(p, arr)?;
        v["equations"] = rational_rows(model.equations());
        v["p"] = json!(p);
    }
    Ok(Output::Report(v))
}

fn fiber_cmd(a: &FiberArgs) -> CmdResult {
    params(&a.v)?;
    let arr = arrangement_from(&a.src, a.v.n, a.v.d)?;
    if !geometry::in_general_position(&arr) {
        return Err(input_error("Λ is not in general position"));
    }
    let model = VarietyModel::new(a.v.p, arr.clone())?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.src.seed.unwrap_or(0));
    let mut lines = Vec::new();
    for b in 0..a.count {
        let y = geometry::random_base_point(&mut rng, &arr);
        for (i, x) in geometry::fiber_over(&y, &model, a.cap_elements)?.iter().enumerate() {
            lines.push(json!({
                "base": b,
                "index": i,
                "point": x.to_json_value(),
                "residual": geometry::residual(&model, x)?,
            }));
        }
    }
    let header = json!({
        "task": {"d": a.v.d, "p": a.v.p, "n": a.v.n, "count": a.count},
        "arrangement": arr.to_json_value(),
        "points": lines.len(),
    });
    Ok(Output::Lines(header, lines))
}

fn invariants_cmd(a: &InvariantsArgs) -> CmdResult {
    let gp = params(&a.v)?;
    let k = match (&a.generators, &a.subgroup) {
        (Some(g), None) => {
            let elems: Vec<GroupElement> = g
                .split(';')
                .map(|s| Ok(GroupElement::normalize(&parse_ints(s)?, gp)?))
                .collect::<Result<_, Failure>>()?;
            Subgroup::from_generators(&elems, gp)?
        }
        (None, Some(path)) => read_subgroup(path, gp)?,
        _ => return Err(input_error("give exactly one of --generators and --subgroup")),
    };
    let arr = arrangement_from(&a.src, gp.n, a.v.d)?;
    let model = VarietyModel::new(gp.p, arr)?;
    let opts = QuotientOptions { degree_bound: a.degree_bound, ..QuotientOptions::default() };
    let q = QuotientModel::build(&k, &model, opts)?;
    let mut v = q.to_json_value();
    v["task"] = json!({"d": a.v.d, "p": gp.p, "n": gp.n});
    v["subgroup"] = serde_json::to_value(&k).expect("plain data");
    v["actsFreely"] = json!(fixed_points::acts_freely_subgroup(&k, a.v.d, DEFAULT_ELEMENT_CAP)?);
    Ok(Output::Report(v))
}

fn reproduce_cmd(a: &ReproduceArgs) -> CmdResult {
    let text = match &a.golden {
        Some(path) => read_file(path)?,
        None => golden::REFERENCE.to_string(),
    };
    // an unreadable reference is a verification failure, not bad input
    let file = golden::load(&text).map_err(|e| Failure { code: 4, message: e.to_string(), report: None })?;
    let report = golden::run(&file, a.filter.as_deref())?;
    let mut groups: Map<String, Value> = Map::new();
    for o in &report.outcomes {
        let entry = groups.entry(o.group.clone()).or_insert_with(|| json!({"passed": 0, "failed": 0}));
        let key = if o.passed { "passed" } else { "failed" };
        entry[key] = json!(entry[key].as_u64().unwrap_or(0) + 1);
    }
    let diff = report.diff();
    let v = json!({
        "checks": report.outcomes.len(),
        "groups": groups,
        "allPassed": report.all_passed(),
        "diff": diff,
    });
    if report.all_passed() {
        Ok(Output::Report(v))
    } else {
        Err(Failure { code: 4, message: format!("{} reference checks failed", diff.len()), report: Some(v) })
    }
}
