//! Command-line front end.
//!
//! Exit status: 0 on success, 1 on domain errors (inadmissible metrics,
//! degenerate flows, failed spectral checks), 2 on usage or parse errors.
//! Every run echoes a one-line manifest of its resolved inputs to stderr.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::complex::{builtin_mesh, Dimension, Triangulation};
use crate::curvature::CurvatureReport;
use crate::error::Error;
use crate::flow::{
    check_stability, integrate, normalization_equivalence_check_with, specialization, FlowConfig,
    Verdict,
};
use crate::geometry::{is_admissible, Admissibility, EdgeWeights, PackingMetric};
use crate::io::{fmt17, parse_mesh, parse_metric, parse_weights, write_metric, write_trace_csv};
use crate::operators::laplacian_spectrum;

#[derive(Parser, Debug)]
#[command(
    name = "abflow",
    version,
    about = "Discrete (alpha, beta) curvature flows"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mesh statistics (and Euler characteristic on surfaces).
    Info {
        #[arg(long)]
        mesh: String,
    },
    /// Per-vertex curvature and alpha-curvature.
    Curvature {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        alpha: f64,
    },
    /// Integrate the flow.
    Flow(FlowArgs),
    /// Spectral stability test at a constant alpha-curvature metric.
    Stability {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
    },
    /// Spectrum of the alpha-Laplacian.
    LaplacianSpectrum {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
    },
    /// Compare the normalised and unnormalised flows.
    CheckNormalization {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long, default_value_t = 0.05)]
        tmax: f64,
    },
}

#[derive(Args, Debug)]
struct Input {
    /// `builtin:NAME` or a mesh file.
    #[arg(long)]
    mesh: String,
    /// `uniform:V` or a metric file.
    #[arg(long)]
    metric: String,
    /// Edge weight file (surfaces only).
    #[arg(long)]
    weights: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FlowArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, allow_hyphen_values = true, required_unless_present = "family")]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true, required_unless_present = "family")]
    beta: Option<f64>,
    /// A named flow from the registry; fixes beta and normalisation.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    unnormalized: bool,
    #[arg(long, default_value_t = 50.0)]
    tmax: f64,
    /// Relative tolerance; the absolute tolerance is 1% of it.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long)]
    trace: Option<PathBuf>,
    #[arg(long)]
    dump_final: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::Io(_) | Error::UnknownMeshName(_) => {
                Failure::Usage(e.to_string())
            }
            Error::UnknownSpecialization(_) | Error::InvalidSpecializationParameter(_) => {
                Failure::Usage(e.to_string())
            }
            Error::InvalidConfig(_) => Failure::Usage(e.to_string()),
            other => Failure::Domain(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Domain(format!("Io: {e}"))
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Runs the tool on `args` (including the program name) and returns the exit
/// status.
pub fn run<O: Write, E: Write>(args: &[String], out: &mut O, err: &mut E) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Domain(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
    }
}

fn read_file(path: &str) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))
}

fn load_mesh(source: &str) -> std::result::Result<Triangulation, Failure> {
    match source.strip_prefix("builtin:") {
        Some(name) => Ok(builtin_mesh(name)?),
        None => Ok(parse_mesh(&read_file(source)?)?),
    }
}

fn load_metric(source: &str, n: usize) -> std::result::Result<PackingMetric, Failure> {
    match source.strip_prefix("uniform:") {
        Some(v) => {
            let value: f64 = v
                .parse()
                .map_err(|_| Failure::Usage(format!("--metric: bad uniform value `{v}`")))?;
            Ok(PackingMetric::uniform(n, value)?)
        }
        None => Ok(parse_metric(&read_file(source)?, n)?),
    }
}

struct Loaded {
    mesh: Triangulation,
    metric: PackingMetric,
    weights: Option<EdgeWeights>,
}

fn load_input(input: &Input) -> std::result::Result<Loaded, Failure> {
    let mesh = load_mesh(&input.mesh)?;
    let metric = load_metric(&input.metric, mesh.vertex_count())?;
    let weights = match &input.weights {
        Some(p) => Some(parse_weights(&read_file(&p.to_string_lossy())?, &mesh)?),
        None => None,
    };
    Ok(Loaded {
        mesh,
        metric,
        weights,
    })
}

fn require_admissible(l: &Loaded) -> Outcome {
    match is_admissible(&l.mesh, &l.metric, l.weights.as_ref())? {
        Admissibility::Admissible => Ok(()),
        Admissibility::DegenerateTetrahedron { simplex, q } => Err(Failure::Domain(format!(
            "Inadmissible: tetrahedron {simplex:?} has Q = {q}"
        ))),
        Admissibility::TriangleInequality { simplex } => Err(Failure::Domain(format!(
            "TriangleInequalityViolated: triangle {simplex:?}"
        ))),
    }
}

fn opt_path(p: &Option<PathBuf>) -> String {
    p.as_ref()
        .map(|p| p.display().to_string())
        .unwrap_or_else(|| "-".into())
}

fn dispatch<O: Write, E: Write>(command: Command, out: &mut O, err: &mut E) -> Outcome {
    match command {
        Command::Info { mesh } => {
            writeln!(err, "manifest: info mesh={mesh}")?;
            let t = load_mesh(&mesh)?;
            let n = t.vertex_count();
            let e = t.edges().len();
            let f = t.triangles().len();
            match t.dimension() {
                Dimension::Two => writeln!(
                    out,
                    "dim=2 N={n} edges={e} faces={f} chi={}",
                    t.euler_characteristic()?
                )?,
                Dimension::Three => writeln!(
                    out,
                    "dim=3 N={n} edges={e} faces={f} tets={}",
                    t.tetrahedra().len()
                )?,
            }
            Ok(())
        }
        Command::Curvature { input, alpha } => {
            writeln!(
                err,
                "manifest: curvature mesh={} metric={} weights={} alpha={alpha}",
                input.mesh,
                input.metric,
                opt_path(&input.weights)
            )?;
            let l = load_input(&input)?;
            require_admissible(&l)?;
            let rep = CurvatureReport::compute(&l.mesh, &l.metric, l.weights.as_ref(), alpha)?;
            writeln!(out, "vertex,r,K,R_alpha")?;
            for (i, r) in l.metric.radii().iter().enumerate() {
                writeln!(
                    out,
                    "{i},{},{},{}",
                    fmt17(*r),
                    fmt17(rep.curvature[i]),
                    fmt17(rep.alpha_curvature[i])
                )?;
            }
            writeln!(out, "s_alpha={}", fmt17(rep.s_alpha))?;
            if let Some(d) = rep.gauss_bonnet_defect {
                writeln!(out, "gauss_bonnet_defect={}", fmt17(d))?;
            }
            Ok(())
        }
        Command::Flow(args) => run_flow(args, out, err),
        Command::Stability { input, alpha } => {
            writeln!(
                err,
                "manifest: stability mesh={} metric={} alpha={alpha}",
                input.mesh, input.metric
            )?;
            let l = load_input(&input)?;
            require_admissible(&l)?;
            let rep = check_stability(&l.mesh, &l.metric, alpha)?;
            match rep.lambda1() {
                Some(l1) => writeln!(out, "lambda1={}", fmt17(l1))?,
                None => writeln!(out, "lambda1=-")?,
            }
            writeln!(out, "alpha_s_alpha={}", fmt17(rep.threshold))?;
            writeln!(out, "constancy_residual={}", fmt17(rep.constancy_residual))?;
            writeln!(out, "verdict={:?}", rep.verdict)?;
            Ok(())
        }
        Command::LaplacianSpectrum { input, alpha } => {
            writeln!(
                err,
                "manifest: laplacian-spectrum mesh={} metric={} alpha={alpha}",
                input.mesh, input.metric
            )?;
            let l = load_input(&input)?;
            require_admissible(&l)?;
            let rep = laplacian_spectrum(&l.mesh, &l.metric, alpha)?;
            writeln!(out, "alpha={}", fmt17(alpha))?;
            writeln!(out, "lambda1={}", fmt17(rep.lambda1))?;
            let spectrum: Vec<String> = rep.spectrum.iter().map(|x| fmt17(*x)).collect();
            writeln!(out, "spectrum={}", spectrum.join(","))?;
            if let Some(a) = rep.zero_mode_alignment {
                writeln!(out, "zero_mode_alignment={}", fmt17(a))?;
            }
            Ok(())
        }
        Command::CheckNormalization {
            input,
            alpha,
            beta,
            tmax,
        } => {
            writeln!(
                err,
                "manifest: check-normalization mesh={} metric={} alpha={alpha} beta={beta} tmax={tmax}",
                input.mesh, input.metric
            )?;
            let l = load_input(&input)?;
            require_admissible(&l)?;
            let rep = normalization_equivalence_check_with(&l.mesh, &l.metric, alpha, beta, tmax)?;
            writeln!(out, "t,ratio_cov")?;
            for (t, c) in rep.times.iter().zip(&rep.ratio_cov) {
                writeln!(out, "{},{}", fmt17(*t), fmt17(*c))?;
            }
            writeln!(out, "max_cov={}", fmt17(rep.max_cov()))?;
            Ok(())
        }
    }
}

fn run_flow<O: Write, E: Write>(args: FlowArgs, out: &mut O, err: &mut E) -> Outcome {
    let (alpha, beta, normalized) = match &args.family {
        Some(name) => {
            let resolved = specialization(name)?.resolve(args.alpha)?;
            if args.beta.is_some_and(|b| b != resolved.beta) {
                return Err(Failure::Usage(format!(
                    "--beta: {name} fixes beta = {}",
                    resolved.beta
                )));
            }
            (
                resolved.alpha,
                resolved.beta,
                resolved.normalized && !args.unnormalized,
            )
        }
        None => (
            args.alpha.expect("required by clap"),
            args.beta.expect("required by clap"),
            !args.unnormalized,
        ),
    };
    writeln!(
        err,
        "manifest: flow mesh={} metric={} weights={} family={} alpha={alpha} beta={beta} \
         normalized={normalized} tmax={} rel_tol={} abs_tol={} trace={} dump_final={}",
        args.input.mesh,
        args.input.metric,
        opt_path(&args.input.weights),
        args.family.as_deref().unwrap_or("-"),
        args.tmax,
        args.tol,
        args.tol * 1e-2,
        opt_path(&args.trace),
        opt_path(&args.dump_final),
    )?;
    let l = load_input(&args.input)?;
    let mut cfg = FlowConfig::new(alpha, beta, l.metric.clone(), args.tmax);
    cfg.normalized = normalized;
    cfg.rel_tol = args.tol;
    cfg.abs_tol = args.tol * 1e-2;
    let trace = integrate(&l.mesh, l.weights.as_ref(), &cfg)?;

    if let Some(path) = &args.trace {
        let file = fs::File::create(path)?;
        write_trace_csv(&trace, std::io::BufWriter::new(file))?;
    }
    if let Some(path) = &args.dump_final {
        fs::write(path, write_metric(&trace.final_metric))?;
    }
    let last = trace.final_sample();
    writeln!(out, "verdict={:?}", trace.verdict)?;
    writeln!(out, "t_final={}", fmt17(last.t))?;
    writeln!(out, "accepted_steps={}", trace.accepted_steps)?;
    writeln!(out, "rejected_steps={}", trace.rejected_steps)?;
    writeln!(out, "s_alpha={}", fmt17(last.s_alpha))?;
    writeln!(out, "max_curv_dev={}", fmt17(last.max_curvature_deviation))?;
    writeln!(out, "field_norm={}", fmt17(last.field_norm))?;
    writeln!(out, "conserved_drift={}", fmt17(trace.conserved_drift()))?;
    match trace.verdict {
        Verdict::Converged | Verdict::MaxTimeReached => Ok(()),
        v => Err(Failure::Domain(format!(
            "flow stopped at t = {} with verdict {v:?}",
            last.t
        ))),
    }
}
