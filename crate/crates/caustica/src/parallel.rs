//! Parallel surfaces `f + t nu`, their singular points, and the
//! classification of those points by jet data of the identifier
//! `lambda = kappa - 1/t`.

use crate::config::Config;
use crate::error::{Error, Result};
use crate::expr::SurfaceExpr;
use crate::geometry::{fundamental_forms, principal_data, FundamentalData, PrincipalData};
use crate::germ::{order, GermOrder};
use crate::jet::{directional_derivative, Jet, JetVec3, Point};

/// Singularity type of a point on a front.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum SingularityClass {
    Regular,
    CuspidalEdge,
    Swallowtail,
    CuspidalButterfly,
    CuspidalLips,
    CuspidalBeaks,
    /// Singular, but outside the generic classes this jet test decides
    /// (e.g. the identifier vanishes identically along a curve, or the
    /// discriminating jet coefficients are below tolerance).
    DegenerateOther,
}

/// The surface at constant normal distance `t` from a regular base surface.
#[derive(Clone)]
pub struct ParallelSurface {
    surface: SurfaceExpr,
    t: f64,
}

/// Fundamental data of the base surface at a point, with the principal
/// branches reordered so `kappa1` is the branch whose focal distance is
/// closest to `t`, plus whether the point is singular on the parallel
/// surface at that distance.
pub struct ParallelPointData {
    pub fd: FundamentalData,
    pub pd: PrincipalData,
    /// `|1 - t kappa1| < tau_sing (1 + |t kappa1|)` at the point.
    pub singular: bool,
}

/// Jet diagnostics behind a classification decision, kept for reporting.
#[derive(Clone, Debug, serde::Serialize)]
pub struct Classification {
    pub class: SingularityClass,
    /// Identifier value at the point (zero iff singular).
    pub lambda: f64,
    /// Derivative of the identifier along the null direction.
    pub eta_lambda: f64,
    pub grad_lambda: [f64; 2],
    pub eta2_lambda: f64,
    pub eta3_lambda: f64,
    pub hessian_det: f64,
    /// Null direction in parameter space (unnormalized).
    pub null_direction: [f64; 2],
    pub identifier_order: GermOrder,
}

impl ParallelSurface {
    pub fn new(surface: SurfaceExpr, t: f64) -> Result<ParallelSurface> {
        if t == 0.0 || !t.is_finite() {
            return Err(Error::ZeroDistance);
        }
        Ok(ParallelSurface { surface, t })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn base(&self) -> &SurfaceExpr {
        &self.surface
    }

    /// Jet of the parallel map `f + t nu` at `p`.
    pub fn lift(&self, p: Point, cfg: &Config) -> Result<JetVec3> {
        let f = self.surface.lift(p, cfg.jet_order)?;
        let fd = fundamental_forms(&f, &cfg.tol)?;
        f.add(&fd.nu.scale_f64(self.t))
    }

    pub fn eval(&self, p: Point, cfg: &Config) -> Result<[f64; 3]> {
        Ok(self.lift(p, cfg)?.value())
    }

    /// Base-surface data with the branch relevant at distance `t` first.
    pub fn point_data(&self, p: Point, cfg: &Config) -> Result<ParallelPointData> {
        let f = self.surface.lift(p, cfg.jet_order)?;
        let fd = fundamental_forms(&f, &cfg.tol)?;
        let pd = principal_data(&fd, &cfg.tol)?;
        let near = |kappa: &Jet| {
            let tk = self.t * kappa.value();
            ((1.0 - tk).abs(), (1.0 - tk).abs() < cfg.tol.tau_sing * (1.0 + tk.abs()))
        };
        let (d1, s1) = near(&pd.kappa1);
        let (d2, s2) = near(&pd.kappa2);
        if s1 && s2 {
            return Err(Error::RankZero);
        }
        let pd = if d2 < d1 { pd.swapped() } else { pd };
        Ok(ParallelPointData {
            fd,
            pd,
            singular: s1 || s2,
        })
    }

    /// Identifier field `lambda = kappa - 1/t` for the branch nearest `t`,
    /// as a jet at `p`. Its zero set is the singular set of the parallel
    /// surface (for that branch).
    pub fn identifier(&self, p: Point, cfg: &Config) -> Result<Jet> {
        let data = self.point_data(p, cfg)?;
        Ok(data.pd.kappa1.add_scalar(-1.0 / self.t))
    }

    /// Classify the point on the parallel surface by the criteria on the
    /// identifier: its derivative along the null direction, its gradient,
    /// its Hessian determinant, and higher null-direction derivatives.
    pub fn classify(&self, p: Point, cfg: &Config) -> Result<Classification> {
        let data = self.point_data(p, cfg)?;
        let lambda = data.pd.kappa1.add_scalar(-1.0 / self.t);
        let eta = data.pd.dir1.clone();
        classify_from_identifier(&lambda, &eta, data.singular, cfg)
    }

    /// Principal curvatures of the parallel surface at a regular point, from
    /// the base curvatures: `K_t = K / (1 - 2tH + t^2 K)` and
    /// `H_t = (H - tK) / (1 - 2tH + t^2 K)`, with the normal transported
    /// from the base surface.
    pub fn curvatures(&self, p: Point, cfg: &Config) -> Result<ParallelCurvatures> {
        let data = self.point_data(p, cfg)?;
        if data.singular {
            return Err(Error::NotSingular(format!(
                "curvatures of the parallel surface are undefined at the singular point {p:?}"
            )));
        }
        let f = self.surface.lift(p, cfg.jet_order)?;
        let k = data.fd.gaussian()?.value();
        let h = data.fd.mean()?.value();
        let denom = 1.0 - 2.0 * self.t * h + self.t * self.t * k;
        let k_t = k / denom;
        let h_t = (h - self.t * k) / denom;

        // cross-check against forms computed directly on the parallel jet;
        // its induced normal is sigma = sgn(denom) times the transported one
        let par = f.add(&data.fd.nu.scale_f64(self.t))?;
        let pfd = fundamental_forms(&par, &cfg.tol)?;
        let sigma = denom.signum();
        let k_direct = pfd.gaussian()?.value();
        let h_direct = sigma * pfd.mean()?.value();
        Ok(ParallelCurvatures {
            gaussian: k_t,
            mean: h_t,
            gaussian_residual: (k_direct - k_t).abs() / (1.0 + k_t.abs()),
            mean_residual: (h_direct - h_t).abs() / (1.0 + h_t.abs()),
        })
    }

    /// Rational orders of the parallel curvatures at a singular point:
    /// `K_t` and `H_t` as quotient germs over `1 - 2tH + t^2 K`.
    ///
    /// A non-negative order means the curvature stays bounded approaching
    /// the singular point; `None` means the numerator vanishes to jet order.
    pub fn boundedness(&self, p: Point, cfg: &Config) -> Result<BoundednessReport> {
        let data = self.point_data(p, cfg)?;
        let k = data.fd.gaussian()?;
        let h = data.fd.mean()?;
        let denom = k
            .scale(self.t * self.t)
            .sub(&h.scale(2.0 * self.t))?
            .add_scalar(1.0);
        let mean_num = h.sub(&k.scale(self.t))?;
        let gaussian_order = crate::germ::rational_order(&k, &denom, &cfg.tol)?;
        Ok(BoundednessReport {
            gaussian_order,
            mean_order: crate::germ::rational_order(&mean_num, &denom, &cfg.tol)?,
            other_curvature_order: order(&data.pd.kappa2, &cfg.tol),
            rationally_bounded: gaussian_order.map_or(true, |o| o >= 0),
        })
    }

    /// This parallel surface as an abstract front: its map, transported
    /// unit normal, singular-set identifier, and null direction.
    pub fn front_data(&self, cfg: &Config) -> crate::edge::FrontData {
        let cfg = cfg.clone();
        let (s1, s2, s3, s4) = (self.clone(), self.clone(), self.clone(), self.clone());
        let c1 = cfg.clone();
        let c2 = cfg.clone();
        let c3 = cfg.clone();
        crate::edge::FrontData {
            map: Box::new(move |p| s1.lift(p, &cfg)),
            normal: Box::new(move |p| {
                let f = s2.base().lift(p, c1.jet_order)?;
                Ok(fundamental_forms(&f, &c1.tol)?.nu)
            }),
            identifier: Box::new(move |p| s3.identifier(p, &c2)),
            null_field: Box::new(move |p| Ok(s4.point_data(p, &c3)?.pd.dir1)),
        }
    }

    /// Limiting normal curvature at a cuspidal edge of the parallel surface:
    /// `kappa1 kappa2 / (kappa1 - kappa2)` with `kappa1` the branch singular
    /// at distance `t`.
    pub fn limiting_normal_curvature(&self, p: Point, cfg: &Config) -> Result<f64> {
        let data = self.point_data(p, cfg)?;
        if !data.singular {
            return Err(Error::NotSingular(format!(
                "limiting normal curvature requires a singular point, got {p:?}"
            )));
        }
        let k1 = data.pd.kappa1.value();
        let k2 = data.pd.kappa2.value();
        Ok(k1 * k2 / (k1 - k2))
    }
}

/// Parallel-surface curvatures with residuals of the closed formulas against
/// direct computation from the parallel jet.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct ParallelCurvatures {
    pub gaussian: f64,
    pub mean: f64,
    pub gaussian_residual: f64,
    pub mean_residual: f64,
}

#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct BoundednessReport {
    /// Rational order of the parallel Gaussian curvature at the point.
    pub gaussian_order: Option<i64>,
    /// Rational order of the parallel mean curvature at the point.
    pub mean_order: Option<i64>,
    /// Germ order of the inactive principal curvature, which controls the
    /// boundedness of the parallel Gaussian curvature.
    pub other_curvature_order: GermOrder,
    pub rationally_bounded: bool,
}

impl BoundednessReport {
    pub fn gaussian_bounded(&self) -> Option<bool> {
        self.gaussian_order.map(|o| o >= 0)
    }

    pub fn mean_bounded(&self) -> Option<bool> {
        self.mean_order.map(|o| o >= 0)
    }
}

/// Decision tree on the identifier jet `lambda` with null-direction field
/// `eta`, shared by the parallel and focal classifiers.
pub(crate) fn classify_from_identifier(
    lambda: &Jet,
    eta: &[Jet; 2],
    singular: bool,
    cfg: &Config,
) -> Result<Classification> {
    let scale = lambda.max_abs_coeff();
    let eta_l = directional_derivative(lambda, eta)?;
    let eta2_l = directional_derivative(&eta_l, eta)?;
    let eta3_l = directional_derivative(&eta2_l, eta)?;
    let grad = [lambda.partial(1, 0), lambda.partial(0, 1)];
    let luu = lambda.partial(2, 0);
    let luv = lambda.partial(1, 1);
    let lvv = lambda.partial(0, 2);
    let hessian_det = luu * lvv - luv * luv;
    let identifier_order = order(lambda, &cfg.tol);

    let eta_scale = eta[0].value().hypot(eta[1].value()).max(1.0);
    let z = |x: f64, s: f64| cfg.tol.is_zero(x, s);

    let class = if !singular {
        SingularityClass::Regular
    } else if matches!(identifier_order, GermOrder::AtLeast(_)) {
        // identifier vanishes identically to jet order: the whole
        // neighborhood is singular at this distance
        SingularityClass::DegenerateOther
    } else if !z(eta_l.value(), scale * eta_scale) {
        SingularityClass::CuspidalEdge
    } else if !z(grad[0].hypot(grad[1]), scale) {
        if !z(eta2_l.value(), scale * eta_scale * eta_scale) {
            SingularityClass::Swallowtail
        } else if !z(eta3_l.value(), scale * eta_scale.powi(3)) {
            SingularityClass::CuspidalButterfly
        } else {
            SingularityClass::DegenerateOther
        }
    } else {
        let hess_scale = luu.abs().max(luv.abs()).max(lvv.abs()).max(scale);
        if z(hessian_det, hess_scale * hess_scale) {
            SingularityClass::DegenerateOther
        } else if hessian_det > 0.0 {
            SingularityClass::CuspidalLips
        } else if !z(eta2_l.value(), scale * eta_scale * eta_scale) {
            SingularityClass::CuspidalBeaks
        } else {
            SingularityClass::DegenerateOther
        }
    };

    Ok(Classification {
        class,
        lambda: lambda.value(),
        eta_lambda: eta_l.value(),
        grad_lambda: grad,
        eta2_lambda: eta2_l.value(),
        eta3_lambda: eta3_l.value(),
        hessian_det,
        null_direction: [eta[0].value(), eta[1].value()],
        identifier_order,
    })
}
