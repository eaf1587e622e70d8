//! Batch command-line front end: file ingestion, analysis pipelines,
//! verification runs, trajectory simulation, oracle cross-checks.
//!
//! Exit codes: 0 holds/completed, 1 fails (witness in the report),
//! 2 hypothesis not met, 3 inconclusive, 64+ usage or input trouble.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::functions::ConeFunction;
use crate::geometry::{PolarSign, PolyCone, Polyhedron};
use crate::io::{self, ConeJson, FunctionJson, ProcessJson, ReportJson};
use crate::lyapunov::{self, DualTarget, LyapunovQuery, Mode};
use crate::numerics::{self, QpOutcome};
use crate::oracle;
use crate::process::ConvexProcess;
use crate::report::{Verdict, VerifyVerdict};
use crate::sampling::SampleSpec;
use crate::Config;

pub const SCHEMA: &str = "conelyap/1";

const EXIT_USAGE: i32 = 64;
const EXIT_DATA: i32 = 65;
const EXIT_NOINPUT: i32 = 66;
const EXIT_INTERNAL: i32 = 70;

#[derive(Parser, Debug)]
#[command(name = "conelyap", version, about = "Polyhedral convex process analysis and Lyapunov duality checks")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structural analysis: domains, duals, feasible sets, condition panel.
    Analyze {
        process_file: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Verify a decay condition for a candidate function.
    Lyapunov {
        process_file: PathBuf,
        function_file: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        gamma: f64,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run a duality pipeline (weak-to-strong or strong-to-weak).
    Duality {
        process_file: PathBuf,
        function_file: PathBuf,
        #[arg(long)]
        gamma: f64,
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
        theorem: u8,
        /// Second process for theorem 3: dual_pos, dual_neg, or a file path.
        #[arg(long, default_value = "dual_pos")]
        g: String,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Roll a trajectory under a selection policy.
    Simulate {
        process_file: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x0: Vec<f64>,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = PolicyArg::MinV)]
        policy: PolicyArg,
        /// Candidate used by the min_v policy (default: |x|^2/2).
        #[arg(long)]
        function: Option<PathBuf>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Brute-force reference computations.
    #[command(subcommand)]
    Oracle(OracleCmd),
}

#[derive(Subcommand, Debug)]
enum OracleCmd {
    /// LP feasibility of the d-step trajectory system.
    FeasibleDepth {
        process_file: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x0: Vec<f64>,
        #[arg(long)]
        depth: usize,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Sampled stabilizability via terminal-norm minimization.
    Stabilizable {
        process_file: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        x0: Vec<f64>,
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Direction-sampled check of the polar computation.
    PolarSampled {
        cone_file: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Radial-grid lower bound of a convex conjugate.
    ConjugateGrid {
        function_file: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        y: Vec<f64>,
        #[command(flatten)]
        common: CommonOpts,
    },
}

#[derive(Args, Debug, Clone)]
struct CommonOpts {
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Simplex-grid levels of the cross-section mesh.
    #[arg(long, default_value_t = 16)]
    mesh: usize,
    /// Cap on feasible-set refinements (default 4n).
    #[arg(long)]
    max_iter: Option<usize>,
    #[arg(long)]
    tol_mem: Option<f64>,
    #[arg(long)]
    tol_geom: Option<f64>,
}

impl CommonOpts {
    fn config(&self) -> Config {
        let mut cfg = Config::default();
        if let Some(t) = self.tol_mem {
            cfg.tol_mem = t;
        }
        if let Some(t) = self.tol_geom {
            cfg.tol_geom = t;
        }
        cfg
    }

    fn sample_spec(&self) -> SampleSpec {
        SampleSpec { count: self.samples, seed: self.seed, mesh_levels: self.mesh }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Weak,
    Strong,
    GoebelWeak,
    GoebelStrong,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Weak => Mode::Weak,
            ModeArg::Strong => Mode::Strong,
            ModeArg::GoebelWeak => Mode::GoebelWeak,
            ModeArg::GoebelStrong => Mode::GoebelStrong,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PolicyArg {
    #[value(name = "min_v", alias = "min-v", alias = "min_V")]
    MinV,
    Vertex,
    Random,
}

impl PolicyArg {
    fn as_str(self) -> &'static str {
        match self {
            PolicyArg::MinV => "min_v",
            PolicyArg::Vertex => "vertex",
            PolicyArg::Random => "random",
        }
    }
}

/// Top-level report envelope; field order fixes the byte layout of the
/// json output.
#[derive(Serialize)]
struct Envelope<T: Serialize> {
    schema: &'static str,
    command: &'static str,
    seed: u64,
    verdict: String,
    report: T,
}

fn emit<T: Serialize>(envelope: &Envelope<T>, format: FormatArg, text: String) {
    match format {
        FormatArg::Json => {
            println!("{}", serde_json::to_string_pretty(envelope).expect("report serializes"));
        }
        FormatArg::Text => {
            println!("{text}");
        }
    }
}

/// Entry point returning the process exit code.
pub fn run() -> i32 {
    if let Ok(threads) = std::env::var("CONELYAP_THREADS") {
        if let Ok(k) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(k.max(1)).build_global();
        }
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders --help/--version through the error path too.
            let is_help = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if is_help { 0 } else { EXIT_USAGE };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                CliError::Io(io::IoError::File(_)) => EXIT_NOINPUT,
                CliError::Io(_) => EXIT_DATA,
                CliError::Usage(_) => EXIT_USAGE,
                _ => EXIT_INTERNAL,
            }
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Io(#[from] io::IoError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Process(#[from] crate::process::ProcessError),
    #[error(transparent)]
    Lyapunov(#[from] lyapunov::LyapunovError),
    #[error(transparent)]
    Geometry(#[from] crate::geometry::GeometryError),
    #[error(transparent)]
    Function(#[from] crate::functions::FunctionError),
    #[error(transparent)]
    Oracle(#[from] oracle::OracleError),
    #[error("solver: {0}")]
    Solve(#[from] crate::numerics::SolveError),
}

fn load_process(path: &Path, cfg: Config) -> Result<ConvexProcess<f64>, CliError> {
    let parsed: ProcessJson = io::read_json(path)?;
    Ok(parsed.to_process(cfg)?)
}

fn load_function(path: &Path, cfg: Config) -> Result<ConeFunction<f64>, CliError> {
    let parsed: FunctionJson = io::read_json(path)?;
    Ok(parsed.to_function(cfg)?)
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Analyze { process_file, common } => cmd_analyze(&process_file, &common),
        Command::Lyapunov { process_file, function_file, mode, gamma, common } => {
            cmd_lyapunov(&process_file, &function_file, mode.into(), gamma, &common)
        }
        Command::Duality { process_file, function_file, gamma, theorem, g, common } => {
            cmd_duality(&process_file, &function_file, gamma, theorem, &g, &common)
        }
        Command::Simulate { process_file, x0, steps, policy, function, common } => {
            cmd_simulate(&process_file, &x0, steps, policy, function.as_deref(), &common)
        }
        Command::Oracle(oracle_cmd) => dispatch_oracle(oracle_cmd),
    }
}

#[derive(Serialize)]
struct FeasibleJson {
    cone: ConeJson,
    converged: bool,
    iterations: usize,
}

#[derive(Serialize)]
struct PanelJson {
    domain_condition: bool,
    transversality_pos: String,
    transversality_neg: String,
    necessary_condition: String,
    rint_condition: String,
}

#[derive(Serialize)]
struct AnalyzeJson {
    n: usize,
    dom: ConeJson,
    im: ConeJson,
    minimal_linear_graph: ConeJson,
    maximal_linear_graph: ConeJson,
    reachable_minus: ConeJson,
    reachable_plus: ConeJson,
    feasible: FeasibleJson,
    feasible_dual_pos: FeasibleJson,
    feasible_dual_neg: FeasibleJson,
    panel: PanelJson,
}

fn verdict3_str(v: Verdict) -> String {
    match v {
        Verdict::Holds => "true",
        Verdict::Fails => "false",
        Verdict::Inconclusive => "inconclusive",
    }
    .to_string()
}

fn feasible_json(f: &crate::process::FeasibleSet<f64>) -> Result<FeasibleJson, CliError> {
    Ok(FeasibleJson {
        cone: ConeJson::from_cone(&f.cone)?,
        converged: f.converged,
        iterations: f.iterations,
    })
}

fn cmd_analyze(process_file: &Path, common: &CommonOpts) -> Result<i32, CliError> {
    let cfg = common.config();
    let h = load_process(process_file, cfg)?;
    let dom = h.domain()?;
    let im = h.image()?;
    let l_minus = h.minimal_linear()?;
    let l_plus = h.maximal_linear()?;
    let r_minus = l_minus.reachable()?;
    let r_plus = l_plus.reachable()?;
    let feasible = h.feasible_set(common.max_iter)?;
    let feas_pos = h.dual(PolarSign::Positive).feasible_set(common.max_iter)?;
    let feas_neg = h.dual(PolarSign::Negative).feasible_set(common.max_iter)?;
    let trans = h.check_transversality(common.max_iter)?;
    let necessary = h.check_necessary_condition(common.max_iter)?;
    let rint = lyapunov::check_rint_condition(&h, common.max_iter)?;
    let panel = PanelJson {
        domain_condition: h.check_domain_condition()?,
        transversality_pos: verdict3_str(trans.pos),
        transversality_neg: verdict3_str(trans.neg),
        necessary_condition: verdict3_str(necessary),
        rint_condition: verdict3_str(rint),
    };
    let analyze = AnalyzeJson {
        n: h.state_dim(),
        dom: ConeJson::from_cone(&dom)?,
        im: ConeJson::from_cone(&im)?,
        minimal_linear_graph: ConeJson::from_cone(l_minus.as_process().graph())?,
        maximal_linear_graph: ConeJson::from_cone(l_plus.as_process().graph())?,
        reachable_minus: ConeJson::from_cone(&r_minus)?,
        reachable_plus: ConeJson::from_cone(&r_plus)?,
        feasible: feasible_json(&feasible)?,
        feasible_dual_pos: feasible_json(&feas_pos)?,
        feasible_dual_neg: feasible_json(&feas_neg)?,
        panel,
    };
    let envelope = Envelope {
        schema: SCHEMA,
        command: "analyze",
        seed: common.seed,
        verdict: "completed".into(),
        report: analyze,
    };
    let mut text = String::new();
    text.push_str(&format!("analysis of {} (n = {})\n", process_file.display(), h.state_dim()));
    text.push_str(&render_cone_line("dom H", &envelope.report.dom));
    text.push_str(&render_cone_line("im H", &envelope.report.im));
    text.push_str(&render_cone_line("R(L-)", &envelope.report.reachable_minus));
    text.push_str(&render_cone_line("R(L+)", &envelope.report.reachable_plus));
    text.push_str(&format!(
        "F(H): converged = {}, iterations = {}\n",
        envelope.report.feasible.converged, envelope.report.feasible.iterations
    ));
    text.push_str(&render_cone_line("F(H)", &envelope.report.feasible.cone));
    text.push_str(&render_cone_line("F(H+)", &envelope.report.feasible_dual_pos.cone));
    text.push_str(&render_cone_line("F(H-)", &envelope.report.feasible_dual_neg.cone));
    text.push_str(&format!(
        "panel: domain_condition = {}, transversality = ({}, {}), necessary = {}, rint = {}\n",
        envelope.report.panel.domain_condition,
        envelope.report.panel.transversality_pos,
        envelope.report.panel.transversality_neg,
        envelope.report.panel.necessary_condition,
        envelope.report.panel.rint_condition,
    ));
    emit(&envelope, common.format, text);
    Ok(0)
}

fn render_cone_line(label: &str, cone: &ConeJson) -> String {
    let gens = cone.generators.as_deref().unwrap_or(&[]);
    let rounded: Vec<Vec<f64>> = gens
        .iter()
        .map(|g| g.iter().map(|v| (v * 1e6).round() / 1e6).collect())
        .collect();
    format!("{label:<8} generators {rounded:?}\n")
}

fn cmd_lyapunov(
    process_file: &Path,
    function_file: &Path,
    mode: Mode,
    gamma: f64,
    common: &CommonOpts,
) -> Result<i32, CliError> {
    let cfg = common.config();
    let process = load_process(process_file, cfg)?;
    let candidate = load_function(function_file, cfg)?;
    let query = LyapunovQuery {
        process: &process,
        candidate: &candidate,
        gamma,
        mode,
        sampling: common.sample_spec(),
        max_iter: common.max_iter,
    };
    let report = lyapunov::verify(&query)?;
    finish_verification("lyapunov", &report.verdict.clone(), report, common)
}

fn cmd_duality(
    process_file: &Path,
    function_file: &Path,
    gamma: f64,
    theorem: u8,
    g: &str,
    common: &CommonOpts,
) -> Result<i32, CliError> {
    let cfg = common.config();
    let process = load_process(process_file, cfg)?;
    let candidate = load_function(function_file, cfg)?;
    let spec = common.sample_spec();
    let report = match theorem {
        2 => lyapunov::check_theorem2(&process, &candidate, gamma, &spec, common.max_iter)?,
        3 => {
            let custom;
            let target = match g {
                "dual_pos" => DualTarget::PositiveDual,
                "dual_neg" => DualTarget::NegativeDual,
                path => {
                    custom = load_process(Path::new(path), cfg)?;
                    DualTarget::Custom(&custom)
                }
            };
            lyapunov::check_theorem3(&process, target, &candidate, gamma, &spec, common.max_iter)?
        }
        _ => return Err(CliError::Usage("theorem must be 2 or 3".into())),
    };
    finish_verification("duality", &report.verdict.clone(), report, common)
}

fn finish_verification(
    command: &'static str,
    verdict: &VerifyVerdict,
    report: crate::report::VerificationReport<f64>,
    common: &CommonOpts,
) -> Result<i32, CliError> {
    let json = ReportJson::from_report(&report);
    let envelope = Envelope {
        schema: SCHEMA,
        command,
        seed: common.seed,
        verdict: io::verdict_str(verdict).to_string(),
        report: json,
    };
    let mut text = String::new();
    envelope.report.render_text(0, &mut text);
    emit(&envelope, common.format, text);
    Ok(io::verdict_exit_code(verdict))
}

#[derive(Serialize)]
struct SimulateJson {
    policy: String,
    requested_steps: usize,
    completed_steps: usize,
    states: Vec<Vec<f64>>,
    norms: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stopped_reason: Option<String>,
}

fn cmd_simulate(
    process_file: &Path,
    x0: &[f64],
    steps: usize,
    policy: PolicyArg,
    function: Option<&Path>,
    common: &CommonOpts,
) -> Result<i32, CliError> {
    use rand::{Rng, SeedableRng};
    let cfg = common.config();
    let process = load_process(process_file, cfg)?;
    let n = process.state_dim();
    if x0.len() != n {
        return Err(CliError::Usage(format!("--x0 must have {n} components")));
    }
    let candidate = match function {
        Some(path) => load_function(path, cfg)?,
        None => ConeFunction::half_norm_squared(n),
    };
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(common.seed);
    let mut states = vec![x0.to_vec()];
    let mut stopped_reason = None;
    for _ in 0..steps {
        let x = states.last().expect("nonempty trajectory");
        let slice = process.image_of_point(x)?;
        if slice.is_empty()? {
            stopped_reason = Some("successor slice is empty".to_string());
            break;
        }
        let next = match policy {
            PolicyArg::MinV => select_min_v(&candidate, &slice)?,
            PolicyArg::Vertex => select_vertex(&slice, None)?,
            PolicyArg::Random => {
                let pick: u64 = rng.gen();
                select_vertex(&slice, Some(pick))?
            }
        };
        match next {
            Some(y) => states.push(y),
            None => {
                stopped_reason = Some("selection policy found no successor".to_string());
                break;
            }
        }
    }
    let norms: Vec<f64> = states.iter().map(|s| crate::scalar::norm(s)).collect();
    let completed = states.len() - 1;
    let report = SimulateJson {
        policy: policy.as_str().to_string(),
        requested_steps: steps,
        completed_steps: completed,
        states,
        norms: norms.clone(),
        stopped_reason,
    };
    let envelope = Envelope {
        schema: SCHEMA,
        command: "simulate",
        seed: common.seed,
        verdict: "completed".into(),
        report,
    };
    let mut text = format!(
        "trajectory under {} for {} steps\n",
        envelope.report.policy, envelope.report.completed_steps
    );
    for (k, norm) in norms.iter().enumerate() {
        text.push_str(&format!("  k = {k:<3} |x_k| = {norm}\n"));
    }
    if let Some(r) = &envelope.report.stopped_reason {
        text.push_str(&format!("  stopped: {r}\n"));
    }
    emit(&envelope, common.format, text);
    Ok(0)
}

fn select_min_v(
    candidate: &ConeFunction<f64>,
    slice: &Polyhedron<f64>,
) -> Result<Option<Vec<f64>>, CliError> {
    match candidate {
        ConeFunction::QuadOnCone { q, cone } => {
            let constrained = slice.intersect_cone(cone)?;
            if constrained.is_empty()? {
                return Ok(None);
            }
            let n = slice.dim();
            let q2: Vec<Vec<f64>> = q.iter().map(|r| r.iter().map(|v| 2.0 * v).collect()).collect();
            let qp = numerics::QuadraticProgram { q: q2, c: vec![0.0; n], constraints: constrained };
            match numerics::solve_qp(&qp)? {
                QpOutcome::Optimal { point, .. } => Ok(Some(point)),
                _ => Ok(None),
            }
        }
        _ => Err(CliError::Usage(
            "the min_v policy needs a quadratic candidate".into(),
        )),
    }
}

/// Deterministic vertex selection: lexicographically smallest vertex of the
/// lineality-reduced slice (or an arbitrary-but-deterministic feasible
/// point when no vertex exists); `pick` rotates the choice for the random
/// policy.
fn select_vertex(slice: &Polyhedron<f64>, pick: Option<u64>) -> Result<Option<Vec<f64>>, CliError> {
    let recession = slice.recession_cone()?;
    let lin = recession.lineality_basis()?.to_vec();
    let reduced = if lin.is_empty() {
        slice.clone()
    } else {
        let eqs: Vec<(Vec<f64>, f64)> = lin.iter().map(|l| (l.clone(), 0.0)).collect();
        slice.intersect(&Polyhedron::new(slice.dim(), Vec::new(), eqs, *slice.cfg())?)?
    };
    let mut vertices = reduced.vertices()?;
    if vertices.is_empty() {
        return Ok(reduced.any_point()?);
    }
    vertices.sort_by(|a, b| {
        a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal)
    });
    let idx = match pick {
        Some(p) => (p as usize) % vertices.len(),
        None => 0,
    };
    Ok(Some(vertices[idx].clone()))
}

#[derive(Serialize)]
struct FeasibleDepthJson {
    x0: Vec<f64>,
    depth: usize,
    feasible: bool,
    provenance: &'static str,
}

#[derive(Serialize)]
struct StabilizableJson {
    x0: Vec<f64>,
    depth: usize,
    epsilon: f64,
    verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    envelope_constant: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trajectory: Option<Vec<Vec<f64>>>,
    provenance: &'static str,
}

#[derive(Serialize)]
struct PolarSampledJson {
    checked: usize,
    violations_forward: usize,
    violations_backward: usize,
    holds: bool,
    provenance: &'static str,
}

#[derive(Serialize)]
struct ConjugateGridJson {
    y: Vec<f64>,
    lower_bound: f64,
    provenance: &'static str,
}

fn dispatch_oracle(cmd: OracleCmd) -> Result<i32, CliError> {
    match cmd {
        OracleCmd::FeasibleDepth { process_file, x0, depth, common } => {
            let process = load_process(&process_file, common.config())?;
            let feasible = oracle::feasible_depth(&process, &x0, depth)?;
            let report = FeasibleDepthJson { x0, depth, feasible, provenance: "oracle" };
            let text = format!("feasible at depth {}: {}\n", report.depth, report.feasible);
            let envelope = Envelope {
                schema: SCHEMA,
                command: "oracle.feasible_depth",
                seed: common.seed,
                verdict: "completed".into(),
                report,
            };
            emit(&envelope, common.format, text);
            Ok(0)
        }
        OracleCmd::Stabilizable { process_file, x0, depth, epsilon, common } => {
            let process = load_process(&process_file, common.config())?;
            let sample = oracle::stabilizable_sample(&process, &x0, depth, epsilon)?;
            let verdict = match sample.verdict {
                oracle::StabilizableVerdict::YesCertified => "yes_certified",
                oracle::StabilizableVerdict::Unknown => "unknown",
            };
            let report = StabilizableJson {
                x0,
                depth,
                epsilon,
                verdict: verdict.into(),
                envelope_constant: sample.envelope_constant,
                trajectory: sample.trajectory,
                provenance: "oracle",
            };
            let text = format!("stabilizable: {}\n", report.verdict);
            let envelope = Envelope {
                schema: SCHEMA,
                command: "oracle.stabilizable",
                seed: common.seed,
                verdict: "completed".into(),
                report,
            };
            emit(&envelope, common.format, text);
            Ok(0)
        }
        OracleCmd::PolarSampled { cone_file, common } => {
            let parsed: ConeJson = io::read_json(&cone_file)?;
            let cone: PolyCone<f64> = parsed.to_cone(common.config())?;
            let polar = cone.polar(PolarSign::Negative);
            let rep = oracle::polar_sampled(&cone, &polar, common.samples.max(1000), common.seed)?;
            let report = PolarSampledJson {
                checked: rep.checked,
                violations_forward: rep.violations_forward,
                violations_backward: rep.violations_backward,
                holds: rep.holds(),
                provenance: "oracle",
            };
            let text = format!(
                "polar inclusion sampling: checked = {}, violations = ({}, {})\n",
                report.checked, report.violations_forward, report.violations_backward
            );
            let envelope = Envelope {
                schema: SCHEMA,
                command: "oracle.polar_sampled",
                seed: common.seed,
                verdict: "completed".into(),
                report,
            };
            emit(&envelope, common.format, text);
            Ok(0)
        }
        OracleCmd::ConjugateGrid { function_file, y, common } => {
            let f = load_function(&function_file, common.config())?;
            let spec = common.sample_spec();
            let bound = oracle::conjugate_grid(&f, &y, &spec)?;
            let report = ConjugateGridJson { y, lower_bound: bound, provenance: "oracle" };
            let text = format!("conjugate grid lower bound: {}\n", report.lower_bound);
            let envelope = Envelope {
                schema: SCHEMA,
                command: "oracle.conjugate_grid",
                seed: common.seed,
                verdict: "completed".into(),
                report,
            };
            emit(&envelope, common.format, text);
            Ok(0)
        }
    }
}
