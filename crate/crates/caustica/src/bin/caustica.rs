//! Thin command-line front end over the library: classification, edge
//! invariants, singular-curve tracing, mesh export, and the combined report.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use caustica::edge::{trace_zero_curve, ZeroCurve};
use caustica::mesh::{self, MeshObject, Window};
use caustica::report::{render_json, run, AnalysisJob, Report};

#[derive(Parser)]
#[command(name = "caustica", version, about = "Singularities of parallel and focal surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct JobArgs {
    /// Job description as a JSON file; flags below override its fields
    #[arg(long)]
    job: Option<PathBuf>,
    /// Surface as a parenthesized triple, e.g. "(u, v, u^2 - v^2)"
    #[arg(long)]
    surface: Option<String>,
    /// Base point "u,v"
    #[arg(long)]
    point: Option<String>,
    /// Offset distance of the parallel surface
    #[arg(long)]
    t: Option<f64>,
    /// Focal sheet to analyze (1 or 2)
    #[arg(long)]
    branch: Option<u8>,
    /// Truncation order of the jet arithmetic
    #[arg(long)]
    order: Option<usize>,
    /// Base zero tolerance
    #[arg(long)]
    tol: Option<f64>,
    /// Half-width of the parameter window (meshing) or trace arclength
    #[arg(long)]
    window: Option<f64>,
    /// Grid resolution per side
    #[arg(long)]
    res: Option<usize>,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the parallel and/or focal surface at a point
    Classify(JobArgs),
    /// Classification plus cuspidal-edge invariants
    Invariants(JobArgs),
    /// Trace the singular curve through the given point in parameter space
    Trace(JobArgs),
    /// Export base/parallel/focal grids and singular curves as OBJ
    Mesh(JobArgs),
    /// Full report: classification, invariants, and traced singular curves
    ReportAll(JobArgs),
}

fn parse_point(text: &str) -> Result<[f64; 2]> {
    let parts: Vec<&str> = text.split(',').collect();
    anyhow::ensure!(parts.len() == 2, "expected point as \"u,v\", got {text:?}");
    Ok([
        parts[0].trim().parse().context("bad u coordinate")?,
        parts[1].trim().parse().context("bad v coordinate")?,
    ])
}

/// Assemble the job: file first (if any), then flag overrides on top.
fn build_job(args: &JobArgs) -> Result<AnalysisJob> {
    let mut job = match &args.job {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading job file {}", path.display()))?;
            serde_json::from_str(&text).context("parsing job file")?
        }
        None => {
            let surface = args
                .surface
                .as_deref()
                .context("--surface (or --job) is required")?;
            AnalysisJob::new(surface, (0.0, 0.0))
        }
    };
    if let Some(s) = &args.surface {
        job.surface = s.clone();
    }
    if let Some(p) = &args.point {
        job.point = parse_point(p)?;
    }
    if let Some(t) = args.t {
        job.distance_t = Some(t);
    }
    if let Some(b) = args.branch {
        job.focal_branch = Some(b);
    }
    if let Some(n) = args.order {
        job.jet_order = Some(n);
    }
    if let Some(tau) = args.tol {
        job.tolerance = Some(tau);
    }
    if let Some(w) = args.window {
        job.window = Some(w);
    }
    if let Some(r) = args.res {
        job.res = Some(r);
    }
    Ok(job)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Trace the focal singular curve if a branch is requested, otherwise the
/// parallel one. Degenerate seeds (lips/beaks centers) are hard errors here:
/// the user asked for exactly this trace.
fn trace_one(job: &AnalysisJob) -> Result<ZeroCurve> {
    job.validate()?;
    let cfg = job.config();
    let half = job.window.unwrap_or(0.5);
    let front = match job.focal()? {
        Some(focal) => focal.front_data(&cfg),
        None => job.parallel()?.expect("validated").front_data(&cfg),
    };
    Ok(trace_zero_curve(&front, job.point(), half, &cfg)?)
}

/// Sample every requested sheet plus whichever singular curves can be
/// traced; untraceable curves degrade to warnings, not failures.
fn build_meshes(job: &AnalysisJob, warnings: &mut Vec<String>) -> Result<Vec<MeshObject>> {
    job.validate()?;
    let cfg = job.config();
    let window = Window { center: job.point(), half: job.window.unwrap_or(0.5) };
    let res = job.res.unwrap_or(64);
    let surface = caustica::parse_surface(&job.surface)?;

    let mut objects = vec![mesh::sample_surface(&surface, window, res)?];
    if let Some(par) = job.parallel()? {
        objects.push(mesh::sample_parallel(&par, window, res, &cfg)?);
    }
    if let Some(focal) = job.focal()? {
        objects.push(mesh::sample_focal(&focal, window, res, &cfg)?);
    }

    if let Some(focal) = job.focal()? {
        match trace_zero_curve(&focal.front_data(&cfg), job.point(), window.half, &cfg) {
            Ok(curve) => objects.push(mesh::map_curve("focal_singular_curve", &curve, |p| {
                focal.eval(p, &cfg)
            })?),
            Err(e) => warnings.push(format!("focal singular curve not traced: {e}")),
        }
    }
    if let Some(par) = job.parallel()? {
        match trace_zero_curve(&par.front_data(&cfg), job.point(), window.half, &cfg) {
            Ok(curve) => objects.push(mesh::map_curve("parallel_singular_curve", &curve, |p| {
                par.eval(p, &cfg)
            })?),
            Err(e) => warnings.push(format!("parallel singular curve not traced: {e}")),
        }
    }
    Ok(objects)
}

#[derive(serde::Serialize)]
struct FullReport {
    report: Report,
    #[serde(skip_serializing_if = "Option::is_none")]
    parallel_trace: Option<ZeroCurve>,
    #[serde(skip_serializing_if = "Option::is_none")]
    focal_trace: Option<ZeroCurve>,
}

fn report_all(job: &AnalysisJob) -> Result<FullReport> {
    let mut report = run(job, true)?;
    let cfg = job.config();
    let half = job.window.unwrap_or(0.5);
    let mut trace_for = |front: caustica::edge::FrontData, label: &str| match trace_zero_curve(
        &front,
        job.point(),
        half,
        &cfg,
    ) {
        Ok(c) => Some(c),
        Err(e) => {
            report
                .warnings
                .push(format!("{label} singular curve not traced: {e}"));
            None
        }
    };
    let parallel_trace = match job.parallel()? {
        Some(par) => trace_for(par.front_data(&cfg), "parallel"),
        None => None,
    };
    let focal_trace = match job.focal()? {
        Some(focal) => trace_for(focal.front_data(&cfg), "focal"),
        None => None,
    };
    Ok(FullReport { report, parallel_trace, focal_trace })
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Classify(args) => {
            let job = build_job(&args)?;
            emit(&args.out, &render_json(&run(&job, false)?)?)
        }
        Command::Invariants(args) => {
            let job = build_job(&args)?;
            emit(&args.out, &render_json(&run(&job, true)?)?)
        }
        Command::Trace(args) => {
            let job = build_job(&args)?;
            emit(&args.out, &render_json(&trace_one(&job)?)?)
        }
        Command::Mesh(args) => {
            let job = build_job(&args)?;
            let mut warnings = Vec::new();
            let objects = build_meshes(&job, &mut warnings)?;
            for w in &warnings {
                eprintln!("warning: {w}");
            }
            let mut buf = Vec::new();
            mesh::write_obj(&mut buf, &objects)?;
            emit(&args.out, &String::from_utf8(buf)?)
        }
        Command::ReportAll(args) => {
            let job = build_job(&args)?;
            emit(&args.out, &render_json(&report_all(&job)?)?)
        }
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
