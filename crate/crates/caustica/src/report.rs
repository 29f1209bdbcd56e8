//! Job descriptions, the JSON report assembled from them, and the
//! deterministic serialization used for golden files: stable (sorted) key
//! order and floats at 17 significant digits.

use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::edge::{edge_invariants, EdgeInvariants};
use crate::error::{Error, Result};
use crate::expr::{parse_surface, SurfaceExpr};
use crate::focal::{FocalBranch, FocalSurface};
use crate::geometry::{fundamental_forms, principal_data};
use crate::jet::Point;
use crate::parallel::{BoundednessReport, Classification, ParallelCurvatures, ParallelSurface};

pub const SCHEMA_VERSION: u32 = 1;

/// One analysis request: a surface, a base point, and which derived
/// surfaces to inspect there.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AnalysisJob {
    pub surface: String,
    pub point: [f64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance_t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub focal_branch: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jet_order: Option<usize>,
    /// Override of the base zero tolerance `tau`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// Half-width of the parameter window for meshing and tracing.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<f64>,
    /// Samples per side for meshing.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub res: Option<usize>,
}

impl AnalysisJob {
    pub fn new(surface: &str, point: Point) -> AnalysisJob {
        AnalysisJob {
            surface: surface.to_string(),
            point: [point.0, point.1],
            distance_t: None,
            focal_branch: None,
            jet_order: None,
            tolerance: None,
            window: None,
            res: None,
        }
    }

    pub fn point(&self) -> Point {
        (self.point[0], self.point[1])
    }

    /// Effective configuration for this job (defaults overridden by the
    /// job's own fields; command-line overrides are merged in before this).
    pub fn config(&self) -> Config {
        let mut cfg = Config::default();
        if let Some(order) = self.jet_order {
            cfg.jet_order = order;
        }
        if let Some(tau) = self.tolerance {
            cfg.tol.tau = tau;
        }
        cfg
    }

    pub fn validate(&self) -> Result<()> {
        if self.distance_t.is_none() && self.focal_branch.is_none() {
            return Err(Error::InvalidJob(
                "need at least one of distance_t / focal_branch".into(),
            ));
        }
        if let Some(b) = self.focal_branch {
            if b != 1 && b != 2 {
                return Err(Error::InvalidJob(format!("focal_branch must be 1 or 2, got {b}")));
            }
        }
        if self.distance_t == Some(0.0) {
            return Err(Error::ZeroDistance);
        }
        Ok(())
    }

    pub fn focal(&self) -> Result<Option<FocalSurface>> {
        match self.focal_branch {
            None => Ok(None),
            Some(b) => {
                let branch = if b == 1 { FocalBranch::First } else { FocalBranch::Second };
                Ok(Some(FocalSurface::new(parse_surface(&self.surface)?, branch)))
            }
        }
    }

    pub fn parallel(&self) -> Result<Option<ParallelSurface>> {
        match self.distance_t {
            None => Ok(None),
            Some(t) => Ok(Some(ParallelSurface::new(parse_surface(&self.surface)?, t)?)),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PrincipalReport {
    pub kappa1: f64,
    pub kappa2: f64,
    pub dir1: [f64; 2],
    pub dir2: [f64; 2],
    pub gaussian: f64,
    pub mean: f64,
    pub curvature_line: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParallelSection {
    pub t: f64,
    pub classification: Classification,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limiting_normal_curvature: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curvatures: Option<ParallelCurvatures>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundedness: Option<BoundednessReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FocalSection {
    pub branch: u8,
    pub classification: Classification,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gaussian_closed: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gaussian_direct: Option<f64>,
}

/// Edge invariants with closed-form cross-checks where the hypotheses for
/// the closed forms hold.
#[derive(Clone, Debug, Serialize)]
pub struct EdgeSection {
    pub generic: EdgeInvariants,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_kappa_nu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_kappa_s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa_nu_delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa_s_delta: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub config: Config,
    pub config_hash: String,
    pub job: AnalysisJob,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub principal: Option<PrincipalReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parallel: Option<ParallelSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub focal: Option<FocalSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parallel_edge: Option<EdgeSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub focal_edge: Option<EdgeSection>,
    pub warnings: Vec<String>,
}

fn skeleton(job: &AnalysisJob, cfg: &Config) -> Report {
    Report {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        config: cfg.clone(),
        config_hash: cfg.hash(),
        job: job.clone(),
        principal: None,
        parallel: None,
        focal: None,
        parallel_edge: None,
        focal_edge: None,
        warnings: Vec::new(),
    }
}

/// The misprinted graph surface from a published example whose printed
/// normal vector implies a squared leading term. When either reading shows
/// up verbatim we flag the other, so a mistyped job is caught early.
fn check_known_misprint(surface: &SurfaceExpr, warnings: &mut Vec<String>) {
    let misprint = parse_surface("(u, v, (1/2)*u + u*v^2 + u^4)").expect("literal parses");
    let corrected = parse_surface("(u, v, (1/2)*u^2 + u*v^2 + u^4)").expect("literal parses");
    if *surface == misprint {
        warnings.push(
            "surface matches a known misprinted example; the accompanying normal vector \
             implies (1/2)*u^2 + u*v^2 + u^4 instead"
                .to_string(),
        );
    } else if *surface == corrected {
        warnings.push(
            "surface matches the corrected reading of a published example that also \
             circulates misprinted as (1/2)*u + u*v^2 + u^4"
                .to_string(),
        );
    }
}

fn principal_report(surface: &SurfaceExpr, p: Point, cfg: &Config) -> Result<PrincipalReport> {
    let f = surface.lift(p, cfg.jet_order)?;
    let fd = fundamental_forms(&f, &cfg.tol)?;
    let pd = principal_data(&fd, &cfg.tol)?;
    Ok(PrincipalReport {
        kappa1: pd.kappa1.value(),
        kappa2: pd.kappa2.value(),
        dir1: [pd.dir1[0].value(), pd.dir1[1].value()],
        dir2: [pd.dir2[0].value(), pd.dir2[1].value()],
        gaussian: fd.gaussian()?.value(),
        mean: fd.mean()?.value(),
        curvature_line: fd.is_curvature_line(&cfg.tol),
    })
}

/// Run classification (and, when requested, invariants) for a job.
pub fn run(job: &AnalysisJob, with_invariants: bool) -> Result<Report> {
    job.validate()?;
    let cfg = job.config();
    let p = job.point();
    let mut report = skeleton(job, &cfg);
    let surface = parse_surface(&job.surface)?;
    check_known_misprint(&surface, &mut report.warnings);

    report.principal = Some(principal_report(&surface, p, &cfg)?);

    if let Some(par) = job.parallel()? {
        let classification = par.classify(p, &cfg)?;
        let singular = classification.lambda.abs()
            < cfg.tol.tau_sing * (1.0 + classification.lambda.abs());
        let limiting_normal_curvature = if singular {
            Some(par.limiting_normal_curvature(p, &cfg)?)
        } else {
            None
        };
        let curvatures = if singular {
            None
        } else {
            Some(par.curvatures(p, &cfg)?)
        };
        let boundedness = match par.boundedness(p, &cfg) {
            Ok(b) => Some(b),
            Err(e) => {
                report.warnings.push(format!("boundedness skipped: {e}"));
                None
            }
        };
        report.parallel = Some(ParallelSection {
            t: par.t(),
            classification,
            limiting_normal_curvature,
            curvatures,
            boundedness,
        });
        if with_invariants && singular {
            match edge_invariants(&par.front_data(&cfg), p, &cfg) {
                Ok(generic) => {
                    let closed = limiting_normal_curvature;
                    report.parallel_edge = Some(EdgeSection {
                        generic,
                        method: "generic-jet".to_string(),
                        closed_kappa_nu: closed,
                        closed_kappa_s: None,
                        kappa_nu_delta: closed.map(|c| (generic.kappa_nu - c).abs()),
                        kappa_s_delta: None,
                    });
                }
                Err(e) => report
                    .warnings
                    .push(format!("parallel edge invariants skipped: {e}")),
            }
        }
    }

    if let Some(focal) = job.focal()? {
        let classification = focal.classify(p, &cfg)?;
        let (gaussian_closed, gaussian_direct) = match focal.gaussian(p, &cfg) {
            Ok(fg) => (Some(fg.closed), Some(fg.direct)),
            Err(e) => {
                report
                    .warnings
                    .push(format!("focal Gaussian curvature skipped: {e}"));
                (None, None)
            }
        };
        report.focal = Some(FocalSection {
            branch: job.focal_branch.unwrap_or(1),
            classification,
            gaussian_closed,
            gaussian_direct,
        });
        if with_invariants {
            match edge_invariants(&focal.front_data(&cfg), p, &cfg) {
                Ok(generic) => {
                    let closed_kappa_nu = focal.kn_closed_form(p, &cfg).ok();
                    let closed_kappa_s = focal.ks_closed_form(p, &cfg).ok();
                    if closed_kappa_nu.is_none() {
                        report.warnings.push(
                            "closed-form focal invariants unavailable (hypotheses not met); \
                             generic values reported"
                                .to_string(),
                        );
                    }
                    report.focal_edge = Some(EdgeSection {
                        generic,
                        method: "generic-jet".to_string(),
                        closed_kappa_nu,
                        closed_kappa_s,
                        kappa_nu_delta: closed_kappa_nu.map(|c| (generic.kappa_nu - c).abs()),
                        kappa_s_delta: closed_kappa_s.map(|c| (generic.kappa_s - c).abs()),
                    });
                }
                Err(e) => report
                    .warnings
                    .push(format!("focal edge invariants skipped: {e}")),
            }
        }
    }

    Ok(report)
}

/// Serialize any `Serialize` value as JSON with sorted keys and every float
/// printed with 17 significant digits, so the text round-trips losslessly
/// and diffs are stable.
pub fn render_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value)?;
    let mut out = String::new();
    write_value(&mut out, &v, 0);
    out.push('\n');
    Ok(out)
}

fn write_value(out: &mut String, v: &serde_json::Value, indent: usize) {
    use serde_json::Value;
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(f) = n.as_f64() {
                if n.is_f64() {
                    out.push_str(&format!("{f:.16e}"));
                } else {
                    out.push_str(&n.to_string());
                }
            } else {
                out.push_str(&n.to_string());
            }
        }
        Value::String(s) => {
            out.push_str(&serde_json::to_string(s).expect("string serializes"));
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('\n');
                out.push_str(&"  ".repeat(indent + 1));
                write_value(out, item, indent + 1);
            }
            out.push('\n');
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            out.push('{');
            // serde_json's default map is a BTreeMap: iteration is sorted
            for (i, (k, val)) in map.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push('\n');
                out.push_str(&"  ".repeat(indent + 1));
                out.push_str(&serde_json::to_string(k).expect("key serializes"));
                out.push_str(": ");
                write_value(out, val, indent + 1);
            }
            out.push('\n');
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
    }
}
