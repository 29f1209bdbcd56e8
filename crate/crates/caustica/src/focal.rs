//! Focal surfaces `C = f + nu / kappa`, their singular sets, and the
//! curvature-line closed forms for their Gaussian curvature and
//! cuspidal-edge invariants.

use crate::config::Config;
use crate::error::{Error, Result};
use crate::expr::SurfaceExpr;
use crate::geometry::{fundamental_forms, principal_data, FundamentalData};
use crate::jet::{directional_derivative, directional_derivative_vec, Jet, JetVec3, Point};
use crate::parallel::{classify_from_identifier, Classification};

/// Which principal branch the focal surface follows.
///
/// On a curvature-line parametrization, `First` is the branch whose
/// principal direction runs along `u` (curvature `L/E`) and `Second` the
/// one along `v`; elsewhere the branches are ordered by descending
/// curvature value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum FocalBranch {
    First,
    Second,
}

/// The focal surface (caustic) of a regular base surface along one branch.
#[derive(Clone)]
pub struct FocalSurface {
    surface: SurfaceExpr,
    branch: FocalBranch,
}

/// Per-point data for one focal branch: the selected principal curvature,
/// its (unnormalized) principal direction field with a canonical sign, and
/// the opposite curvature.
pub struct FocalPointData {
    pub fd: FundamentalData,
    pub kappa: Jet,
    pub other: Jet,
    pub vdir: [Jet; 2],
    pub curvature_line: bool,
}

/// Closed-form and directly computed Gaussian curvature of the focal
/// surface at a point where it is regular.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct FocalGaussian {
    pub closed: f64,
    pub direct: f64,
    pub residual: f64,
}

/// Flip signs so the dominant component at the base point is positive,
/// making the principal-direction field (and hence the focal normal)
/// deterministic.
fn canonicalize(dir: [Jet; 2]) -> [Jet; 2] {
    let [a, b] = dir;
    let lead = if a.value().abs() >= b.value().abs() {
        a.value()
    } else {
        b.value()
    };
    if lead < 0.0 {
        [a.neg(), b.neg()]
    } else {
        [a, b]
    }
}

impl FocalSurface {
    pub fn new(surface: SurfaceExpr, branch: FocalBranch) -> FocalSurface {
        FocalSurface { surface, branch }
    }

    pub fn branch(&self) -> FocalBranch {
        self.branch
    }

    pub fn base(&self) -> &SurfaceExpr {
        &self.surface
    }

    /// The same caustic seen from the parameter-swapped base surface, with
    /// the branch roles exchanged. Closed forms stated for the first branch
    /// apply to the second through this mirror.
    pub fn mirrored(&self) -> FocalSurface {
        FocalSurface {
            surface: self.surface.swap_params(),
            branch: match self.branch {
                FocalBranch::First => FocalBranch::Second,
                FocalBranch::Second => FocalBranch::First,
            },
        }
    }

    pub fn point_data(&self, p: Point, cfg: &Config) -> Result<FocalPointData> {
        let f = self.surface.lift(p, cfg.jet_order)?;
        let fd = fundamental_forms(&f, &cfg.tol)?;
        let pd = principal_data(&fd, &cfg.tol)?;
        let curvature_line = fd.is_curvature_line(&cfg.tol);
        let pd = if curvature_line {
            // align the value-sorted branches with the coordinate labeling
            let k_u = fd.l.value() / fd.e.value();
            if (pd.kappa2.value() - k_u).abs() < (pd.kappa1.value() - k_u).abs() {
                pd.swapped()
            } else {
                pd
            }
        } else {
            pd
        };
        let (kappa, other, vdir) = match self.branch {
            FocalBranch::First => (pd.kappa1, pd.kappa2, pd.dir1),
            FocalBranch::Second => (pd.kappa2, pd.kappa1, pd.dir2),
        };
        Ok(FocalPointData {
            fd,
            kappa,
            other,
            vdir: canonicalize(vdir),
            curvature_line,
        })
    }

    /// Jet of the focal map `f + nu / kappa` at `p`.
    pub fn lift(&self, p: Point, cfg: &Config) -> Result<JetVec3> {
        let data = self.point_data(p, cfg)?;
        self.lift_with(&data, p, cfg)
    }

    fn lift_with(&self, data: &FocalPointData, p: Point, cfg: &Config) -> Result<JetVec3> {
        if data.kappa.value().abs() < cfg.tol.tau_parab {
            return Err(Error::ParabolicPoint(data.kappa.value().abs()));
        }
        let f = self.surface.lift(p, cfg.jet_order)?;
        f.add(&data.fd.nu.scale(&data.kappa.recip()?)?)
    }

    pub fn eval(&self, p: Point, cfg: &Config) -> Result<[f64; 3]> {
        Ok(self.lift(p, cfg)?.value())
    }

    /// Unit normal of the focal surface as a frontal: the normalized push
    /// forward of the principal direction, `v f / |v f|`.
    pub fn unit_normal(&self, p: Point, cfg: &Config) -> Result<JetVec3> {
        let data = self.point_data(p, cfg)?;
        self.unit_normal_with(&data, p, cfg)
    }

    fn unit_normal_with(&self, data: &FocalPointData, p: Point, cfg: &Config) -> Result<JetVec3> {
        let f = self.surface.lift(p, cfg.jet_order)?;
        directional_derivative_vec(&f, &data.vdir)?.normalized()
    }

    /// Identifier of the focal singular set in arbitrary coordinates: the
    /// derivative of the branch curvature along its own principal
    /// direction. Its zero set is where the focal map drops rank.
    pub fn identifier(&self, p: Point, cfg: &Config) -> Result<Jet> {
        let data = self.point_data(p, cfg)?;
        directional_derivative(&data.kappa, &data.vdir)
    }

    /// Signed area density of the focal surface with respect to its unit
    /// normal, `det(C_u, C_v, e)`, in the curvature-line closed form
    /// `(kappa_1)_u / kappa_1^2 (1 - kappa_2/kappa_1) |f_v|` (first branch;
    /// the second goes through [`FocalSurface::mirrored`]). Vanishes on the
    /// same set as [`FocalSurface::identifier`] but carries a sign usable
    /// for the singular-curvature sign rule.
    pub fn area_density(&self, p: Point, cfg: &Config) -> Result<Jet> {
        if self.branch == FocalBranch::Second {
            // the mirror reverses domain orientation, so the transposed
            // density picks up a sign
            return self
                .mirrored()
                .area_density((p.1, p.0), cfg)
                .map(|j| j.transposed().neg());
        }
        let data = self.point_data(p, cfg)?;
        if !data.curvature_line {
            return Err(Error::NotCurvatureLine {
                f: data.fd.f.max_abs_coeff(),
                m: data.fd.m.max_abs_coeff(),
            });
        }
        if data.kappa.value().abs() < cfg.tol.tau_parab {
            return Err(Error::ParabolicPoint(data.kappa.value().abs()));
        }
        let k1 = &data.kappa;
        let k2 = &data.other;
        let factor = Jet::constant(p, k1.order(), 1.0).sub(&k2.div(k1)?)?;
        k1.deriv_u()?
            .div(&k1.mul(k1)?)?
            .mul(&factor)?
            .mul(&data.fd.g.sqrt()?)
    }

    /// Classify the point on the focal surface via the identifier and the
    /// principal direction as null field.
    pub fn classify(&self, p: Point, cfg: &Config) -> Result<Classification> {
        let data = self.point_data(p, cfg)?;
        // reject branches where the focal map itself is undefined
        if data.kappa.value().abs() < cfg.tol.tau_parab {
            return Err(Error::ParabolicPoint(data.kappa.value().abs()));
        }
        let w = directional_derivative(&data.kappa, &data.vdir)?;
        let singular = w.value().abs() < cfg.tol.tau_sing * (1.0 + w.max_abs_coeff());
        classify_from_identifier(&w, &data.vdir, singular, cfg)
    }

    /// Gaussian curvature of the focal surface at a point where it is
    /// regular: the curvature-line closed form
    /// `-kappa_1^4 (kappa_2)_u / ((kappa_1)_u (kappa_1 - kappa_2)^2)`
    /// against the direct `det II / det I` from the focal jet.
    pub fn gaussian(&self, p: Point, cfg: &Config) -> Result<FocalGaussian> {
        if self.branch == FocalBranch::Second {
            return self.mirrored().gaussian((p.1, p.0), cfg);
        }
        let data = self.point_data(p, cfg)?;
        if !data.curvature_line {
            return Err(Error::NotCurvatureLine {
                f: data.fd.f.max_abs_coeff(),
                m: data.fd.m.max_abs_coeff(),
            });
        }
        let k1 = data.kappa.value();
        let k2 = data.other.value();
        let k1u = data.kappa.partial(1, 0);
        let k2u = data.other.partial(1, 0);
        let closed = -k1.powi(4) * k2u / (k1u * (k1 - k2).powi(2));

        let c = self.lift_with(&data, p, cfg)?;
        let e = self.unit_normal_with(&data, p, cfg)?;
        let cu = c.deriv_u()?;
        let cv = c.deriv_v()?;
        let (eu, ev) = (e.deriv_u()?, e.deriv_v()?);
        let big_e = cu.dot(&cu)?.value();
        let big_f = cu.dot(&cv)?.value();
        let big_g = cv.dot(&cv)?.value();
        let big_l = -cu.dot(&eu)?.value();
        let big_m = -cu.dot(&ev)?.value();
        let big_n = -cv.dot(&ev)?.value();
        let direct = (big_l * big_n - big_m * big_m) / (big_e * big_g - big_f * big_f);
        Ok(FocalGaussian {
            closed,
            direct,
            residual: (closed - direct).abs() / (1.0 + closed.abs()),
        })
    }

    /// Gaussian curvature of the focal surface when the base surface has
    /// constant Gaussian curvature `c`: `c kappa^4 / (c - kappa^2)^2`.
    pub fn gaussian_constant_base(&self, p: Point, c: f64, cfg: &Config) -> Result<f64> {
        let data = self.point_data(p, cfg)?;
        let k = data.kappa.value();
        Ok(c * k.powi(4) / (c - k * k).powi(2))
    }

    /// Limiting normal curvature at a cuspidal edge of the focal surface,
    /// in the curvature-line closed form (requires the opposite curvature
    /// to vanish at the point):
    /// `-kappa_1^3 (kappa_2)_u G / (sqrt(E) (kappa_1^4 G + (kappa_1)_v^2))`.
    pub fn kn_closed_form(&self, p: Point, cfg: &Config) -> Result<f64> {
        if self.branch == FocalBranch::Second {
            return self.mirrored().kn_closed_form((p.1, p.0), cfg);
        }
        let data = self.closed_form_data(p, cfg)?;
        let k1 = data.kappa.value();
        let k1v = data.kappa.partial(0, 1);
        let k2u = data.other.partial(1, 0);
        let e = data.fd.e.value();
        let g = data.fd.g.value();
        Ok(-k1.powi(3) * k2u * g / (e.sqrt() * (k1.powi(4) * g + k1v * k1v)))
    }

    /// Singular curvature at a cuspidal edge of the focal surface, in the
    /// curvature-line closed form (same hypotheses as
    /// [`FocalSurface::kn_closed_form`]).
    pub fn ks_closed_form(&self, p: Point, cfg: &Config) -> Result<f64> {
        if self.branch == FocalBranch::Second {
            return self.mirrored().ks_closed_form((p.1, p.0), cfg);
        }
        let data = self.closed_form_data(p, cfg)?;
        let k1 = data.kappa.value();
        let k1v = data.kappa.partial(0, 1);
        let k1uu = data.kappa.partial(2, 0);
        let k1uv = data.kappa.partial(1, 1);
        let k1vv = data.kappa.partial(0, 2);
        let k2v = data.other.partial(0, 1);
        let g = data.fd.g.value();
        let gv = data.fd.g.partial(0, 1);
        let gamma222 = gv / (2.0 * g);
        let hess = k1uu * k1vv - k1uv * k1uv;
        let delta = (k1.powi(4) * g + k1v * k1v).sqrt();
        Ok(k1uu.signum() * k1.powi(3) * g.sqrt() / (k1uu * delta.powi(3))
            * (k1 * hess - k1v * k1uu * (gamma222 * k1 + 2.0 * k1v - k2v)))
    }

    /// This focal surface as an abstract front.
    pub fn front_data(&self, cfg: &Config) -> crate::edge::FrontData {
        let (s1, s2, s3, s4) = (self.clone(), self.clone(), self.clone(), self.clone());
        let (c1, c2, c3, c4) = (cfg.clone(), cfg.clone(), cfg.clone(), cfg.clone());
        crate::edge::FrontData {
            map: Box::new(move |p| s1.lift(p, &c1)),
            normal: Box::new(move |p| s2.unit_normal(p, &c2)),
            identifier: Box::new(move |p| s3.identifier(p, &c3)),
            null_field: Box::new(move |p| Ok(s4.point_data(p, &c4)?.vdir)),
        }
    }

    /// Shared hypothesis checks for the closed-form edge invariants:
    /// curvature-line coordinates, a singular point of the focal branch,
    /// and a vanishing opposite curvature.
    fn closed_form_data(&self, p: Point, cfg: &Config) -> Result<FocalPointData> {
        let data = self.point_data(p, cfg)?;
        if !data.curvature_line {
            return Err(Error::NotCurvatureLine {
                f: data.fd.f.max_abs_coeff(),
                m: data.fd.m.max_abs_coeff(),
            });
        }
        let k1u = data.kappa.partial(1, 0);
        if k1u.abs() > cfg.tol.tau_sing * (1.0 + data.kappa.max_abs_coeff()) {
            return Err(Error::NotSingular(format!(
                "focal branch is regular at {p:?}: derivative of the curvature along its line is {k1u:e}"
            )));
        }
        let k2 = data.other.value();
        if k2.abs() > cfg.tol.tau_sing * (1.0 + data.other.max_abs_coeff()) {
            return Err(Error::Hypothesis(format!(
                "closed forms need the opposite principal curvature to vanish, got {k2:e}"
            )));
        }
        Ok(data)
    }
}
