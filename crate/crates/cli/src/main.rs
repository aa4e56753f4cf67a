//! `bohrlab`: radii, functionals, the radius table and the verification harness
//! from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parameter or parse error,
//! 3 no sign change in a radius equation.

use std::fmt::Display;
use std::path::PathBuf;
use std::process::ExitCode;

use bohrlab::extremal::FunctionSpec;
use bohrlab::functionals::{
    alternating_modulus, bohr_power, circle_max, d_lambda, real_constant, refinement_g, rogosinski_e, series_stats,
    Bounded, DEFAULT_THETA_SAMPLES,
};
use bohrlab::radii::{radius, table1, RadiusId, RadiusParams, RadiusQuery, DEFAULT_TOL};
use bohrlab::verify::{
    check_standard, corollary2_biconditional, equality_check, probe_table, problem2_probe, run_probe, theorem,
    theorem_ids, CheckConfig, CheckOptions, EqualityCase, EqualityParams, ProbeKind, SharpnessReport,
    VerificationReport, DEFAULT_DELTA, DEFAULT_MARGIN, DEFAULT_R_POINTS, DEFAULT_SAMPLES, DEFAULT_SEED,
    THREADS_ENV,
};
use bohrlab::{Error, MonomialTable, WeightSequence};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "bohrlab", version, about = "Bohr-type radii and inequality verification")]
struct Cli {
    /// Worker threads for grid evaluation (0 = sequential); sets BOHRLAB_THREADS.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a radius equation.
    Radius(RadiusArgs),
    /// Evaluate a functional of one test function.
    Eval(EvalArgs),
    /// Run the inequality check and sharpness probes of a theorem.
    Verify(VerifyArgs),
    /// Recompute the radius table against its printed values.
    Table1(Table1Args),
    /// Tabulate a radius over one parameter.
    Sweep(SweepArgs),
    /// Run one sharpness probe.
    Probe(ProbeArgs),
    /// Check one equality case.
    Equality(EqualityArgs),
    /// The a0 biconditional at r = 1/3.
    Biconditional(CorpusArgs),
    /// Non-normative search for the largest radius of the refined alternating bound.
    Explore(CorpusArgs),
    /// List the known ids.
    List,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Default, Clone)]
struct ParamArgs {
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    a0: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    /// geometric, harmonic, even, odd, lacunary:K, mono-plain or mono-harmonic.
    #[arg(long)]
    weights: Option<String>,
    /// Monomial weight table, one `C tau` pair per line.
    #[arg(long, conflicts_with = "weights")]
    weights_file: Option<PathBuf>,
}

#[derive(Args)]
struct RadiusArgs {
    #[arg(long)]
    id: String,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct EvalArgs {
    /// Mf, Mf0, Af, Af0, norm_sq, norm0_sq, area_ratio, sup, d_lambda,
    /// bohr_power, refinement_g, rogosinski or alternating_modulus.
    #[arg(long)]
    functional: String,
    /// Function spec such as `phi:a=0.5` or `blaschke:seed=7,deg=4`.
    #[arg(long)]
    function: String,
    #[arg(long)]
    r: f64,
    #[arg(long, default_value_t = DEFAULT_THETA_SAMPLES)]
    theta_samples: usize,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Theorem id, or `all`.
    #[arg(long)]
    theorem: String,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_DELTA)]
    delta: f64,
    #[arg(long, default_value_t = DEFAULT_R_POINTS)]
    r_points: usize,
    #[arg(long, default_value_t = DEFAULT_THETA_SAMPLES)]
    theta_samples: usize,
    #[arg(long, default_value_t = bohrlab::verify::DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_MARGIN)]
    margin: f64,
    /// Skip the sharpness probes.
    #[arg(long)]
    no_sharpness: bool,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct Table1Args {
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    id: String,
    /// a0, lambda, m, q, p or k.
    #[arg(long)]
    param: String,
    #[arg(long)]
    from: f64,
    #[arg(long)]
    to: f64,
    #[arg(long)]
    step: f64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ProbeArgs {
    #[arg(long)]
    id: String,
    #[arg(long, default_value_t = DEFAULT_DELTA)]
    delta: f64,
    /// Comma-separated values of the family parameter.
    #[arg(long, value_delimiter = ',')]
    schedule: Option<Vec<f64>>,
    #[arg(long, default_value_t = DEFAULT_THETA_SAMPLES)]
    theta_samples: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct EqualityArgs {
    #[arg(long = "case")]
    case_name: String,
    #[arg(long, default_value_t = 0.5)]
    a: f64,
    #[arg(long, default_value_t = 0.4)]
    r: f64,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CorpusArgs {
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_THETA_SAMPLES)]
    theta_samples: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Display) -> Self {
        Self { code: 2, message: message.to_string() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NoSignChange { .. } => 3,
            Error::ClosedFormMismatch { .. } => 1,
            _ => 2,
        };
        Self { code, message: e.to_string() }
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        std::env::set_var(THREADS_ENV, t.to_string());
    }
    let result = match cli.command {
        Command::Radius(a) => cmd_radius(a),
        Command::Eval(a) => cmd_eval(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Table1(a) => cmd_table1(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Probe(a) => cmd_probe(a),
        Command::Equality(a) => cmd_equality(a),
        Command::Biconditional(a) => cmd_biconditional(a),
        Command::Explore(a) => cmd_explore(a),
        Command::List => cmd_list(),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn f6(x: f64) -> String {
    format!("{x:.6}")
}

fn emit(output: &OutputArgs, text: String) -> Result<(), Failure> {
    match &output.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json(output: &OutputArgs, value: &impl Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::usage(e.to_string()))?;
    emit(output, text + "\n")
}

/// CSV preceded by `# key=value` lines echoing the resolved parameters.
fn csv_text(echo: &Value, header: &[&str], rows: &[Vec<String>], footer: &[String]) -> Result<String, Failure> {
    let mut text = String::new();
    if let Value::Object(map) = echo {
        for (k, v) in map {
            let v = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            text.push_str(&format!("# {k}={v}\n"));
        }
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(|e| Failure::usage(e.to_string()))?;
    for row in rows {
        w.write_record(row).map_err(|e| Failure::usage(e.to_string()))?;
    }
    let body = w.into_inner().map_err(|e| Failure::usage(e.to_string()))?;
    text.push_str(&String::from_utf8_lossy(&body));
    for line in footer {
        text.push_str(&format!("# {line}\n"));
    }
    Ok(text)
}

impl ParamArgs {
    fn weights(&self) -> Result<Option<WeightSequence>, Failure> {
        if let Some(path) = &self.weights_file {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            return Ok(Some(WeightSequence::Monomial(MonomialTable::from_text(&text)?)));
        }
        Ok(self.weights.as_deref().map(str::parse).transpose()?)
    }

    fn radius_params(&self) -> Result<RadiusParams, Failure> {
        Ok(RadiusParams {
            p: self.p,
            q: self.q,
            m: self.m,
            k: self.k,
            a0: self.a0,
            lambda: self.lambda,
            weights: self.weights()?,
        })
    }

    fn any_config(&self) -> bool {
        self.p.is_some()
            || self.q.is_some()
            || self.m.is_some()
            || self.lambda.is_some()
            || self.weights.is_some()
            || self.weights_file.is_some()
    }

    fn apply(&self, mut c: CheckConfig) -> Result<CheckConfig, Failure> {
        if let Some(w) = self.weights()? {
            c.weights = w;
        }
        c.p = self.p.unwrap_or(c.p);
        c.q = self.q.unwrap_or(c.q);
        c.m = self.m.unwrap_or(c.m);
        c.lambda = self.lambda.unwrap_or(c.lambda);
        Ok(c)
    }
}

fn echo_params(p: &RadiusParams) -> Value {
    let mut v = serde_json::to_value(p).unwrap_or(Value::Null);
    if let Value::Object(map) = &mut v {
        map.retain(|_, x| !x.is_null());
        if let Some(w) = &p.weights {
            map.insert("weights".into(), Value::String(w.to_string()));
        }
    }
    v
}

fn cmd_radius(a: RadiusArgs) -> Outcome {
    let id: RadiusId = a.id.parse()?;
    let params = a.params.radius_params()?;
    let echo = echo_params(&params);
    let root = radius(&RadiusQuery::new(id, params), a.tol)?;
    match a.output.format.unwrap_or(Format::Json) {
        Format::Json => emit_json(
            &a.output,
            &json!({
                "id": id.name(),
                "params": echo,
                "value": root.value,
                "residual": root.residual,
                "bracket": [root.bracket.0, root.bracket.1],
                "iterations": root.iterations,
            }),
        )?,
        Format::Csv => {
            let mut head = json!({ "id": id.name(), "tol": a.tol });
            if let (Value::Object(h), Value::Object(p)) = (&mut head, echo) {
                h.extend(p);
            }
            let row = vec![
                id.name().to_string(),
                f6(root.value),
                format!("{:.6e}", root.residual),
                f6(root.bracket.0),
                f6(root.bracket.1),
                root.iterations.to_string(),
            ];
            let header = ["id", "value", "residual", "bracket_lo", "bracket_hi", "iterations"];
            emit(&a.output, csv_text(&head, &header, &[row], &[])?)?;
        }
    }
    Ok(0)
}

const FUNCTIONALS: [&str; 13] = [
    "Mf",
    "Mf0",
    "Af",
    "Af0",
    "norm_sq",
    "norm0_sq",
    "area_ratio",
    "sup",
    "d_lambda",
    "bohr_power",
    "refinement_g",
    "rogosinski",
    "alternating_modulus",
];

fn evaluate(a: &EvalArgs, spec: &FunctionSpec) -> Result<Bounded, Failure> {
    let f = spec.realize_for_radius(a.r)?;
    let s = series_stats(&f, a.r)?;
    let w = a.params.weights()?.unwrap_or(WeightSequence::Geometric);
    let p = a.params.p.unwrap_or(1.0);
    Ok(match a.functional.as_str() {
        "Mf" => Bounded::new(s.m_f, s.tail_budget),
        "Mf0" => Bounded::new(s.m_f0, s.tail_budget),
        "Af" => Bounded::new(s.a_f, s.tail_budget),
        "Af0" => Bounded::new(s.a_f0, s.tail_budget),
        "norm_sq" => Bounded::new(s.norm_sq, s.square_budget),
        "norm0_sq" => Bounded::new(s.norm0_sq, s.square_budget),
        "area_ratio" => Bounded::new(s.area_ratio, s.area_budget),
        "sup" => Bounded::new(circle_max(&f, a.r, a.theta_samples, |v| v.norm()).0, s.tail_budget),
        "d_lambda" => {
            real_constant(&f)?;
            d_lambda(&f, a.params.lambda.unwrap_or(0.0), a.r)?
        }
        "bohr_power" => bohr_power(&f, &w, p, a.r)?,
        "refinement_g" => refinement_g(&f, &w, a.r)?,
        "rogosinski" => {
            let (q, m) = (a.params.q.unwrap_or(1.0), a.params.m.unwrap_or(1));
            rogosinski_e(&f, &w, p, q, m, a.r, a.theta_samples)?
        }
        "alternating_modulus" => alternating_modulus(&f, a.r, a.theta_samples)?,
        other => {
            return Err(Failure::usage(format!(
                "unknown functional `{other}` (expected one of {})",
                FUNCTIONALS.join(", ")
            )))
        }
    })
}

fn cmd_eval(a: EvalArgs) -> Outcome {
    let spec: FunctionSpec = a.function.parse()?;
    let got = evaluate(&a, &spec)?;
    let mut echo = echo_params(&a.params.radius_params()?);
    if let Value::Object(map) = &mut echo {
        map.insert("functional".into(), json!(a.functional));
        map.insert("function".into(), json!(spec.label()));
        map.insert("r".into(), json!(a.r));
        map.insert("theta_samples".into(), json!(a.theta_samples));
    }
    match a.output.format.unwrap_or(Format::Json) {
        Format::Json => emit_json(
            &a.output,
            &json!({
                "functional": a.functional,
                "function": spec.label(),
                "r": a.r,
                "value": got.value,
                "tail_budget": got.budget,
                "params": echo,
            }),
        )?,
        Format::Csv => {
            let row = vec![
                a.functional.clone(),
                spec.label().to_string(),
                f6(a.r),
                f6(got.value),
                format!("{:.6e}", got.budget),
            ];
            let header = ["functional", "function", "r", "value", "tail_budget"];
            emit(&a.output, csv_text(&echo, &header, &[row], &[])?)?;
        }
    }
    Ok(0)
}

/// Offset used to look at a probe family right at its radius.
const BOUNDARY_DELTA: f64 = 1e-9;

#[derive(Serialize)]
struct ProbeOutcome {
    report: SharpnessReport,
    /// Largest excess of the same family just above the radius.
    boundary_excess: Option<f64>,
}

#[derive(Serialize)]
struct TheoremOutcome {
    theorem: String,
    passed: bool,
    report: VerificationReport,
    sharpness: Vec<ProbeOutcome>,
    notes: Vec<String>,
}

fn verify_one(id: &str, a: &VerifyArgs) -> Result<TheoremOutcome, Failure> {
    let def = theorem(id)?;
    let overridden = a.params.any_config();
    let config = if overridden { Some(a.params.apply((def.default_config)())?) } else { None };
    let options = CheckOptions {
        r_points: a.r_points,
        theta_samples: a.theta_samples,
        tol: a.tol,
        margin: a.margin,
        config: config.clone(),
    };
    let report = check_standard(id, a.samples, a.seed, &options)?;
    let mut notes = Vec::new();
    let mut sharpness = Vec::new();
    if !a.no_sharpness {
        for mut case in probe_table().into_iter().filter(|c| c.theorem_id == id) {
            if let Some(c) = &config {
                case.config = Some(c.clone());
            }
            let probe = run_probe(&case, a.delta, a.theta_samples)?;
            let boundary_excess = match case.kind {
                ProbeKind::Exceed => Some(run_probe(&case, BOUNDARY_DELTA, a.theta_samples)?.best_excess),
                ProbeKind::Equality => None,
            };
            if let (Some(excess), Some(w)) = (boundary_excess, &probe.witness) {
                if excess.abs() <= 1e-6 {
                    let r = w.r - a.delta;
                    notes.push(format!(
                        "{}: boundary equality at r = {r:.6} (excess {excess:.2e})",
                        case.probe_id
                    ));
                }
            }
            sharpness.push(ProbeOutcome { report: probe, boundary_excess });
        }
        if sharpness.is_empty() {
            notes.push("no sharpness clause; nothing probed".into());
        }
    }
    let passed = report.passed && sharpness.iter().all(|s| s.report.found);
    Ok(TheoremOutcome { theorem: id.to_string(), passed, report, sharpness, notes })
}

fn cmd_verify(a: VerifyArgs) -> Outcome {
    let ids: Vec<String> = if a.theorem == "all" {
        theorem_ids().into_iter().map(String::from).collect()
    } else {
        vec![a.theorem.clone()]
    };
    let outcomes = ids.iter().map(|id| verify_one(id, &a)).collect::<Result<Vec<_>, _>>()?;
    for o in outcomes.iter().filter(|o| !o.passed) {
        if let Some(w) = &o.report.witness {
            if !o.report.passed {
                eprintln!(
                    "{}: violated by {} at r = {}, θ = {:?} (lhs {}, rhs {}, budget {})",
                    o.theorem, w.function, w.r, w.theta, w.lhs, w.rhs, w.budget
                );
            }
        }
        for s in o.sharpness.iter().filter(|s| !s.report.found) {
            eprintln!("{}: no sharpness witness (best excess {:e})", s.report.probe_id, s.report.best_excess);
        }
    }
    let echo = json!({
        "theorem": a.theorem,
        "samples": a.samples,
        "seed": a.seed,
        "delta": a.delta,
        "r_points": a.r_points,
        "theta_samples": a.theta_samples,
        "tol": a.tol,
        "margin": a.margin,
    });
    match a.output.format.unwrap_or(Format::Json) {
        Format::Json if outcomes.len() == 1 => emit_json(&a.output, &json!({ "params": echo, "result": &outcomes[0] }))?,
        Format::Json => emit_json(&a.output, &json!({ "params": echo, "results": &outcomes }))?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = outcomes
                .iter()
                .map(|o| {
                    vec![
                        o.theorem.clone(),
                        o.passed.to_string(),
                        o.report.functions_checked.to_string(),
                        o.report.points_checked.to_string(),
                        format!("{:.6e}", o.report.max_violation),
                        o.sharpness.len().to_string(),
                        o.sharpness.iter().filter(|s| s.report.found).count().to_string(),
                    ]
                })
                .collect();
            let header =
                ["theorem", "passed", "functions", "points", "max_violation", "probes", "probes_found"];
            emit(&a.output, csv_text(&echo, &header, &rows, &[])?)?;
        }
    }
    Ok(if outcomes.iter().all(|o| o.passed) { 0 } else { 1 })
}

fn cmd_table1(a: Table1Args) -> Outcome {
    let rows = table1(a.tol)?;
    let max_diff = rows.iter().map(|r| r.diff).fold(0.0, f64::max);
    match a.output.format.unwrap_or(Format::Csv) {
        Format::Json => emit_json(&a.output, &json!({ "tol": a.tol, "rows": rows, "max_abs_diff": max_diff }))?,
        Format::Csv => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| vec![r.p.to_string(), r.q.to_string(), r.m.to_string(), f6(r.radius), f6(r.printed), f6(r.diff)])
                .collect();
            let echo = json!({ "weights": "geometric", "tol": a.tol });
            let footer = [format!("max_abs_diff={max_diff:.6e}")];
            emit(&a.output, csv_text(&echo, &["p", "q", "m", "radius", "printed", "diff"], &cells, &footer)?)?;
        }
    }
    Ok(0)
}

fn set_param(params: &mut RadiusParams, name: &str, x: f64) -> Result<(), Failure> {
    let int = || {
        if x >= 0.0 && x.fract() == 0.0 {
            Ok(x as usize)
        } else {
            Err(Failure::usage(format!("{name} = {x} must be a nonnegative integer")))
        }
    };
    match name {
        "a0" => params.a0 = Some(x),
        "lambda" => params.lambda = Some(x),
        "q" => params.q = Some(x),
        "p" => params.p = Some(x),
        "m" => params.m = Some(int()?),
        "k" => params.k = Some(int()?),
        other => return Err(Failure::usage(format!("cannot sweep `{other}`"))),
    }
    Ok(())
}

fn trend(values: &[f64]) -> &'static str {
    let diffs: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
    if diffs.iter().all(|d| *d > 0.0) {
        "increasing"
    } else if diffs.iter().all(|d| *d < 0.0) {
        "decreasing"
    } else if diffs.iter().all(|d| *d == 0.0) {
        "constant"
    } else {
        "not monotone"
    }
}

fn cmd_sweep(a: SweepArgs) -> Outcome {
    let id: RadiusId = a.id.parse()?;
    if !(a.step > 0.0 && a.from <= a.to && a.from.is_finite() && a.to.is_finite()) {
        return Err(Failure::usage(format!("bad range {}..{} step {}", a.from, a.to, a.step)));
    }
    let base = a.params.radius_params()?;
    let mut probe = base.clone();
    set_param(&mut probe, &a.param, a.from)?;
    if !RadiusQuery::new(id, probe).depends_on(&a.param) {
        return Err(Failure::usage(format!("{id} does not depend on `{}`", a.param)));
    }
    let count = ((a.to - a.from) / a.step + 1e-9).floor() as usize + 1;
    let mut xs = Vec::with_capacity(count);
    let mut values = Vec::with_capacity(count);
    for i in 0..count {
        let x = a.from + a.step * i as f64;
        let mut params = base.clone();
        set_param(&mut params, &a.param, x)?;
        values.push(radius(&RadiusQuery::new(id, params), a.tol)?.value);
        xs.push(x);
    }
    let overall = trend(&values);
    let mut echo = json!({ "id": id.name(), "param": a.param, "from": a.from, "to": a.to, "step": a.step });
    if let (Value::Object(h), Value::Object(p)) = (&mut echo, echo_params(&base)) {
        h.extend(p);
    }
    match a.output.format.unwrap_or(Format::Csv) {
        Format::Json => {
            let rows: Vec<Value> = xs.iter().zip(&values).map(|(x, v)| json!({ "param": x, "radius": v })).collect();
            emit_json(&a.output, &json!({ "params": echo, "rows": rows, "monotonicity": overall }))?
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = xs
                .iter()
                .zip(&values)
                .enumerate()
                .map(|(i, (x, v))| {
                    let step = match i {
                        0 => "",
                        _ if *v > values[i - 1] => "up",
                        _ if *v < values[i - 1] => "down",
                        _ => "flat",
                    };
                    vec![f6(*x), f6(*v), step.to_string()]
                })
                .collect();
            let footer = [format!("monotonicity={overall}")];
            emit(&a.output, csv_text(&echo, &[a.param.as_str(), "radius", "trend"], &rows, &footer)?)?;
        }
    }
    Ok(0)
}

fn cmd_probe(a: ProbeArgs) -> Outcome {
    let mut case = probe_table()
        .into_iter()
        .find(|c| c.probe_id == a.id)
        .ok_or_else(|| Failure::usage(format!("no sharpness probe `{}`", a.id)))?;
    if let Some(s) = &a.schedule {
        case.schedule = s.clone();
    }
    let rep = run_probe(&case, a.delta, a.theta_samples)?;
    match a.output.format.unwrap_or(Format::Json) {
        Format::Json => emit_json(&a.output, &rep)?,
        Format::Csv => {
            let echo = json!({ "probe": rep.probe_id, "theorem": rep.theorem_id, "delta": a.delta, "limit": rep.limit });
            let w = rep.witness.as_ref();
            let row = vec![
                rep.probe_id.clone(),
                rep.found.to_string(),
                rep.evaluated.to_string(),
                format!("{:.6e}", rep.best_excess),
                w.map(|w| w.function.clone()).unwrap_or_default(),
                w.map(|w| f6(w.r)).unwrap_or_default(),
            ];
            let header = ["probe", "found", "evaluated", "best_excess", "witness", "r"];
            emit(&a.output, csv_text(&echo, &header, &[row], &[])?)?;
        }
    }
    Ok(if rep.found { 0 } else { 1 })
}

fn cmd_equality(a: EqualityArgs) -> Outcome {
    let case: EqualityCase = a.case_name.parse()?;
    let d = EqualityParams::default();
    let params = EqualityParams {
        a: a.a,
        r: a.r,
        p: a.params.p.unwrap_or(d.p),
        m: a.params.m.unwrap_or(d.m),
        k: a.params.k.unwrap_or(d.k),
        weights: a.params.weights()?.unwrap_or(d.weights),
    };
    let res = equality_check(case, &params)?;
    match a.output.format.unwrap_or(Format::Json) {
        Format::Json => emit_json(&a.output, &res)?,
        Format::Csv => {
            let echo = json!({
                "case": case.name(), "a": params.a, "r": params.r, "p": params.p,
                "m": params.m, "k": params.k, "weights": params.weights.to_string(),
            });
            let row = vec![
                case.name().to_string(),
                f6(res.lhs),
                f6(res.rhs),
                format!("{:.6e}", res.residual),
                format!("{:.6e}", res.budget),
                res.passed.to_string(),
            ];
            let header = ["case", "lhs", "rhs", "residual", "budget", "passed"];
            emit(&a.output, csv_text(&echo, &header, &[row], &[])?)?;
        }
    }
    Ok(if res.passed { 0 } else { 1 })
}

fn cmd_biconditional(a: CorpusArgs) -> Outcome {
    let options = CheckOptions { theta_samples: a.theta_samples, ..CheckOptions::default() };
    let b = corollary2_biconditional(a.samples, a.seed, &options)?;
    match a.output.format.unwrap_or(Format::Json) {
        Format::Json => emit_json(&a.output, &b)?,
        Format::Csv => {
            let echo = json!({ "samples": a.samples, "seed": a.seed, "r": 1.0 / 3.0 });
            let rows: Vec<Vec<String>> =
                b.below.iter().map(|(a0, v)| vec![f6(*a0), format!("{v:.6e}")]).collect();
            let footer = [
                format!("max_violation_a0_at_least_half={:.6e}", b.max_violation_at_third),
                format!("passed={}", b.passed),
            ];
            emit(&a.output, csv_text(&echo, &["a0", "violation"], &rows, &footer)?)?;
        }
    }
    Ok(if b.passed { 0 } else { 1 })
}

fn cmd_explore(a: CorpusArgs) -> Outcome {
    let rep = problem2_probe(a.samples, a.seed, a.theta_samples)?;
    match a.output.format.unwrap_or(Format::Json) {
        Format::Json => emit_json(&a.output, &rep)?,
        Format::Csv => {
            let echo = json!({ "samples": a.samples, "seed": a.seed, "normative": false });
            let rows: Vec<Vec<String>> =
                rep.profile.iter().map(|(r, v)| vec![f6(*r), format!("{v:.6e}")]).collect();
            let footer = [format!("largest_r={:.6}", rep.largest_r)];
            emit(&a.output, csv_text(&echo, &["r", "max_violation"], &rows, &footer)?)?;
        }
    }
    Ok(0)
}

fn cmd_list() -> Outcome {
    let radii: Vec<&str> = RadiusId::ALL.iter().map(|id| id.name()).collect();
    let probes: Vec<&str> = probe_table().iter().map(|c| c.probe_id).collect();
    let cases: Vec<&str> = EqualityCase::ALL.iter().map(|c| c.name()).collect();
    let value = json!({
        "radii": radii,
        "theorems": theorem_ids(),
        "probes": probes,
        "equality_cases": cases,
        "functionals": FUNCTIONALS,
    });
    println!("{}", serde_json::to_string_pretty(&value).map_err(|e| Failure::usage(e.to_string()))?);
    Ok(0)
}
