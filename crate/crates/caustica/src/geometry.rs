//! Fundamental forms, principal curvatures and directions, and residual
//! checks of the structure equations in curvature-line coordinates.

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::jet::{Jet, JetVec3};

/// First and second fundamental form coefficients with the unit normal, all
/// as jets at the query point.
#[derive(Clone, Debug)]
pub struct FundamentalData {
    pub e: Jet,
    pub f: Jet,
    pub g: Jet,
    pub l: Jet,
    pub m: Jet,
    pub n: Jet,
    pub nu: JetVec3,
    pub fu: JetVec3,
    pub fv: JetVec3,
}

/// Compute fundamental forms and unit normal from the surface jet.
///
/// `nu = f_u x f_v / |f_u x f_v|`; the second-form coefficients follow the
/// sign convention `L = -<f_u, nu_u>`.
pub fn fundamental_forms(f: &JetVec3, tol: &Tolerances) -> Result<FundamentalData> {
    let fu = f.deriv_u()?;
    let fv = f.deriv_v()?;
    let cross = fu.cross(&fv)?;
    let area = cross.dot(&cross)?.value().sqrt();
    let scale = fu.dot(&fu)?.value().max(fv.dot(&fv)?.value());
    if area < tol.zero_tol(scale) {
        return Err(Error::RankDeficient(area));
    }
    let nu = cross.normalized()?;
    let nu_u = nu.deriv_u()?;
    let nu_v = nu.deriv_v()?;
    Ok(FundamentalData {
        e: fu.dot(&fu)?,
        f: fu.dot(&fv)?,
        g: fv.dot(&fv)?,
        l: fu.dot(&nu_u)?.neg(),
        m: fu.dot(&nu_v)?.neg(),
        n: fv.dot(&nu_v)?.neg(),
        nu,
        fu,
        fv,
    })
}

impl FundamentalData {
    /// Gaussian curvature `(LN - M^2)/(EG - F^2)` as a jet.
    pub fn gaussian(&self) -> Result<Jet> {
        let num = self.l.mul(&self.n)?.sub(&self.m.mul(&self.m)?)?;
        num.div(&self.metric_det()?)
    }

    /// Mean curvature `(EN - 2FM + GL)/(2(EG - F^2))` as a jet.
    pub fn mean(&self) -> Result<Jet> {
        let num = self
            .e
            .mul(&self.n)?
            .sub(&self.f.mul(&self.m)?.scale(2.0))?
            .add(&self.g.mul(&self.l)?)?;
        num.div(&self.metric_det()?.scale(2.0))
    }

    fn metric_det(&self) -> Result<Jet> {
        self.e.mul(&self.g)?.sub(&self.f.mul(&self.f)?)
    }

    /// Is the parametrization in curvature-line coordinates at this point
    /// (`F` and `M` zero as jet identities)?
    pub fn is_curvature_line(&self, tol: &Tolerances) -> bool {
        let scale_f = self.e.max_abs_coeff().max(self.g.max_abs_coeff());
        let scale_m = self.l.max_abs_coeff().max(self.n.max_abs_coeff()).max(scale_f);
        self.f.max_abs_coeff() < tol.zero_tol(scale_f)
            && self.m.max_abs_coeff() < tol.zero_tol(scale_m)
    }

    pub fn require_curvature_line(&self, tol: &Tolerances) -> Result<()> {
        if self.is_curvature_line(tol) {
            Ok(())
        } else {
            Err(Error::NotCurvatureLine {
                f: self.f.max_abs_coeff(),
                m: self.m.max_abs_coeff(),
            })
        }
    }

    /// Coordinate-labeled principal curvature jets `(L/E, N/G)` — the usual
    /// `kappa_1, kappa_2` in curvature-line coordinates. Gated.
    pub fn coordinate_branches(&self, tol: &Tolerances) -> Result<(Jet, Jet)> {
        self.require_curvature_line(tol)?;
        Ok((self.l.div(&self.e)?, self.n.div(&self.g)?))
    }

    /// The same data with the normal orientation flipped.
    pub fn flipped(&self) -> FundamentalData {
        FundamentalData {
            e: self.e.clone(),
            f: self.f.clone(),
            g: self.g.clone(),
            l: self.l.neg(),
            m: self.m.neg(),
            n: self.n.neg(),
            nu: self.nu.scale_f64(-1.0),
            fu: self.fu.clone(),
            fv: self.fv.clone(),
        }
    }
}

/// How the two principal branches in a [`PrincipalData`] are labeled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchLabeling {
    /// `kappa1` is the branch with the larger value at the query point.
    DescendingValue,
    /// `kappa1` was re-selected as the branch matching an external context
    /// (parallel distance or focal branch index).
    ContextSelected,
}

/// Principal curvatures as jet-valued fields with their (unnormalized)
/// principal directions in parameter space.
#[derive(Clone, Debug)]
pub struct PrincipalData {
    pub kappa1: Jet,
    pub kappa2: Jet,
    pub dir1: [Jet; 2],
    pub dir2: [Jet; 2],
    pub labeling: BranchLabeling,
}

/// Solve the shape-operator eigenproblem over jets.
///
/// The eigenvalue jets come from the quadratic formula `H +- sqrt(H^2 - K)`;
/// the square root is legal exactly when the point is not umbilic. Each
/// direction is picked from the two rows of `II - kappa I` by the one with
/// the larger norm at the query point, which avoids the vanishing-row
/// degeneracy and reproduces the row `(kappa G - N, M - kappa F)` when that
/// row dominates.
pub fn principal_data(fd: &FundamentalData, tol: &Tolerances) -> Result<PrincipalData> {
    let h = fd.mean()?;
    let k = fd.gaussian()?;
    let disc = h.mul(&h)?.sub(&k)?;
    let scale = h.value() * h.value() + k.value().abs();
    if disc.value() < tol.zero_tol(scale) {
        return Err(Error::UmbilicPoint(disc.value()));
    }
    let root = disc.sqrt()?;
    let kappa1 = h.add(&root)?;
    let kappa2 = h.sub(&root)?;
    let dir1 = principal_direction(fd, &kappa1)?;
    let dir2 = principal_direction(fd, &kappa2)?;
    Ok(PrincipalData {
        kappa1,
        kappa2,
        dir1,
        dir2,
        labeling: BranchLabeling::DescendingValue,
    })
}

/// Unnormalized principal direction for the eigenvalue jet `kappa`.
pub fn principal_direction(fd: &FundamentalData, kappa: &Jet) -> Result<[Jet; 2]> {
    // Row 1 of II - kappa I gives (M - kF, kE - L); row 2 gives (kG - N, M - kF).
    let mkf = fd.m.sub(&kappa.mul(&fd.f)?)?;
    let row1 = [mkf.clone(), kappa.mul(&fd.e)?.sub(&fd.l)?];
    let row2 = [kappa.mul(&fd.g)?.sub(&fd.n)?, mkf];
    let n1 = row1[0].value().powi(2) + row1[1].value().powi(2);
    let n2 = row2[0].value().powi(2) + row2[1].value().powi(2);
    Ok(if n1 > n2 { row1 } else { row2 })
}

impl PrincipalData {
    /// Residual of the shape-operator eigen-relation for one (kappa, dir)
    /// pair at the base point.
    pub fn eigen_residual(&self, fd: &FundamentalData, first: bool) -> Result<f64> {
        let (kappa, dir) = if first {
            (&self.kappa1, &self.dir1)
        } else {
            (&self.kappa2, &self.dir2)
        };
        let a = dir[0].value();
        let b = dir[1].value();
        let (e, f, g) = (fd.e.value(), fd.f.value(), fd.g.value());
        let (l, m, n) = (fd.l.value(), fd.m.value(), fd.n.value());
        let kv = kappa.value();
        let r1 = (l - kv * e) * a + (m - kv * f) * b;
        let r2 = (m - kv * f) * a + (n - kv * g) * b;
        let scale = (a * a + b * b).sqrt() * (1.0 + kv.abs()) * (1.0 + e.max(g));
        Ok((r1.hypot(r2)) / scale.max(1.0))
    }

    /// Swap the branch labels (used when an external context decides which
    /// branch is "kappa_1").
    pub fn swapped(self) -> PrincipalData {
        PrincipalData {
            kappa1: self.kappa2,
            kappa2: self.kappa1,
            dir1: self.dir2,
            dir2: self.dir1,
            labeling: BranchLabeling::ContextSelected,
        }
    }
}

/// Pointwise residuals of the curvature-line structure equations, with
/// denominators cleared so umbilic-degenerate inputs (e.g. the flat plane)
/// produce zeros instead of 0/0.
#[derive(Clone, Debug, serde::Serialize)]
pub struct StructureResiduals {
    /// `L_v - (kappa1 + kappa2) E_v / 2`
    pub codazzi_u: f64,
    /// `N_u - (kappa1 + kappa2) G_u / 2`
    pub codazzi_v: f64,
    /// `E_v (kappa2 - kappa1) - 2E (kappa1)_v`
    pub dkappa_1: f64,
    /// `G_u (kappa1 - kappa2) - 2G (kappa2)_u`
    pub dkappa_2: f64,
    /// `|(kappa1-kappa2)|f_v| (e1)_u - (kappa1)_v |f_u| e2 - kappa1 |f_u| (kappa1-kappa2)|f_v| nu|`
    pub frame_e1_u: f64,
    /// `|(kappa1-kappa2)|f_v| (e2)_u + (kappa1)_v |f_u| e1|`
    pub frame_e2_u: f64,
    /// `|(kappa1-kappa2)|f_u| (e1)_v - (kappa2)_u |f_v| e2|`
    pub frame_e1_v: f64,
    /// `|(kappa1-kappa2)|f_u| (e2)_v + (kappa2)_u |f_v| e1 - kappa2 |f_v| (kappa1-kappa2)|f_u| nu|`
    pub frame_e2_v: f64,
    /// `|(kappa1-kappa2) (e1)_u x (e1)_v + kappa1 (kappa2)_u |f_v| e1|`
    pub sing_frame_e1: f64,
    /// `|(kappa1-kappa2) (e2)_u x (e2)_v + kappa2 (kappa1)_v |f_u| e2|`
    pub sing_frame_e2: f64,
}

impl StructureResiduals {
    pub fn max_abs(&self) -> f64 {
        [
            self.codazzi_u,
            self.codazzi_v,
            self.dkappa_1,
            self.dkappa_2,
            self.frame_e1_u,
            self.frame_e2_u,
            self.frame_e1_v,
            self.frame_e2_v,
            self.sing_frame_e1,
            self.sing_frame_e2,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

fn vec_norm_value(v: &JetVec3) -> f64 {
    let [x, y, z] = v.value();
    (x * x + y * y + z * z).sqrt()
}

/// Residuals of the Codazzi equations, the principal-curvature derivative
/// identities, the curvature-line frame equations, and the frame singular-set
/// identities, all at the base point of `f`.
///
/// Requires curvature-line coordinates (checked, not assumed); the principal
/// curvatures here are the coordinate-labeled `L/E` and `N/G`.
pub fn verify_structure_equations(f: &JetVec3, tol: &Tolerances) -> Result<StructureResiduals> {
    let fd = fundamental_forms(f, tol)?;
    let (k1, k2) = fd.coordinate_branches(tol)?;
    let ksum = k1.add(&k2)?;

    let codazzi_u = fd.l.deriv_v()?.value() - 0.5 * ksum.value() * fd.e.deriv_v()?.value();
    let codazzi_v = fd.n.deriv_u()?.value() - 0.5 * ksum.value() * fd.g.deriv_u()?.value();

    let kdiff = k1.sub(&k2)?;
    let dkappa_1 = fd.e.deriv_v()?.value() * (-kdiff.value())
        - 2.0 * fd.e.value() * k1.deriv_v()?.value();
    let dkappa_2 =
        fd.g.deriv_u()?.value() * kdiff.value() - 2.0 * fd.g.value() * k2.deriv_u()?.value();

    let e1 = fd.fu.normalized()?;
    let e2 = fd.fv.normalized()?;
    let norm_fu = fd.e.sqrt()?;
    let norm_fv = fd.g.sqrt()?;

    // cleared-denominator entries of the frame equations:
    //   x1 (kappa1-kappa2)|f_v| = (kappa1)_v |f_u|, x2 = kappa1 |f_u|,
    //   y1 (kappa1-kappa2)|f_u| = (kappa2)_u |f_v|, y3 = kappa2 |f_v|
    let k1v_fu = k1.deriv_v()?.mul(&norm_fu)?;
    let k2u_fv = k2.deriv_u()?.mul(&norm_fv)?;
    let kd_fv = kdiff.mul(&norm_fv)?;
    let kd_fu = kdiff.mul(&norm_fu)?;
    let x2 = k1.mul(&norm_fu)?;
    let y3 = k2.mul(&norm_fv)?;

    let frame_e1_u = vec_norm_value(
        &e1.deriv_u()?
            .scale(&kd_fv)?
            .sub(&e2.scale(&k1v_fu)?)?
            .sub(&fd.nu.scale(&x2.mul(&kd_fv)?)?)?,
    );
    let frame_e2_u = vec_norm_value(&e2.deriv_u()?.scale(&kd_fv)?.add(&e1.scale(&k1v_fu)?)?);
    let frame_e1_v = vec_norm_value(&e1.deriv_v()?.scale(&kd_fu)?.sub(&e2.scale(&k2u_fv)?)?);
    let frame_e2_v = vec_norm_value(
        &e2.deriv_v()?
            .scale(&kd_fu)?
            .add(&e1.scale(&k2u_fv)?)?
            .sub(&fd.nu.scale(&y3.mul(&kd_fu)?)?)?,
    );

    let factor1 = k1.mul(&k2.deriv_u()?)?.mul(&norm_fv)?;
    let sing_frame_e1 = vec_norm_value(
        &e1.deriv_u()?
            .cross(&e1.deriv_v()?)?
            .scale(&kdiff)?
            .add(&e1.scale(&factor1)?)?,
    );
    let factor2 = k2.mul(&k1.deriv_v()?)?.mul(&norm_fu)?;
    let sing_frame_e2 = vec_norm_value(
        &e2.deriv_u()?
            .cross(&e2.deriv_v()?)?
            .scale(&kdiff)?
            .add(&e2.scale(&factor2)?)?,
    );

    Ok(StructureResiduals {
        codazzi_u,
        codazzi_v,
        dkappa_1,
        dkappa_2,
        frame_e1_u,
        frame_e2_u,
        frame_e1_v,
        frame_e2_v,
        sing_frame_e1,
        sing_frame_e2,
    })
}
