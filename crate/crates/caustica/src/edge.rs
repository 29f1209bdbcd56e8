//! Fronts in the abstract: zero-curve tracing of the singular set and the
//! cuspidal-edge invariants computed generically from jet data, without
//! closed-form shortcuts.

use crate::config::Config;
use crate::error::{Error, Result};
use crate::jet::{directional_derivative_vec, Jet, JetVec3, Point};

/// A front given by evaluable jet fields: the map into space, a unit normal
/// field defined across the singular set, an identifier whose zero set is
/// the singular set, and a null direction field.
pub struct FrontData {
    pub map: Box<dyn Fn(Point) -> Result<JetVec3>>,
    pub normal: Box<dyn Fn(Point) -> Result<JetVec3>>,
    pub identifier: Box<dyn Fn(Point) -> Result<Jet>>,
    pub null_field: Box<dyn Fn(Point) -> Result<[Jet; 2]>>,
}

/// A polyline approximation of one connected piece of the singular curve in
/// parameter space.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ZeroCurve {
    pub points: Vec<Point>,
    pub tangents: Vec<[f64; 2]>,
    pub step: f64,
}

/// Newton-correct `p` onto the zero set of the identifier, moving along its
/// gradient.
fn correct(front: &FrontData, mut p: Point, cfg: &Config) -> Result<(Point, [f64; 2])> {
    for _ in 0..cfg.tol.max_corrector_iters {
        let w = (front.identifier)(p)?;
        let g = [w.partial(1, 0), w.partial(0, 1)];
        let g2 = g[0] * g[0] + g[1] * g[1];
        let scale = w.max_abs_coeff().max(1.0);
        if g2.sqrt() < cfg.tol.zero_tol(scale) {
            return Err(Error::DegenerateSeed(g2.sqrt()));
        }
        if w.value().abs() < cfg.tol.tau_trace * scale {
            return Ok((p, g));
        }
        let s = w.value() / g2;
        p = (p.0 - s * g[0], p.1 - s * g[1]);
    }
    let w = (front.identifier)(p)?;
    let scale = w.max_abs_coeff().max(1.0);
    if w.value().abs() < cfg.tol.tau_trace * scale {
        let g = [w.partial(1, 0), w.partial(0, 1)];
        Ok((p, g))
    } else {
        Err(Error::StepFailure(format!(
            "corrector stalled at {p:?} with identifier {:e}",
            w.value()
        )))
    }
}

fn unit_tangent(g: [f64; 2]) -> [f64; 2] {
    let n = g[0].hypot(g[1]);
    [-g[1] / n, g[0] / n]
}

/// Trace the zero curve of the identifier through `seed` by
/// predictor-corrector continuation, for parameter arclength `half_length`
/// in each direction.
///
/// The seed itself must correct onto a point where the identifier gradient
/// is nonzero; lips/beaks centers, where the singular curve itself is
/// singular, are rejected with [`Error::DegenerateSeed`].
pub fn trace_zero_curve(
    front: &FrontData,
    seed: Point,
    half_length: f64,
    cfg: &Config,
) -> Result<ZeroCurve> {
    let h = cfg.tol.trace_step;
    let steps = (half_length / h).ceil() as usize;
    let (p0, g0) = correct(front, seed, cfg)?;
    let t0 = unit_tangent(g0);

    let march = |dir: f64| -> Result<Vec<(Point, [f64; 2])>> {
        let mut out = Vec::with_capacity(steps);
        let mut p = p0;
        let mut t = [dir * t0[0], dir * t0[1]];
        for _ in 0..steps {
            let pred = (p.0 + h * t[0], p.1 + h * t[1]);
            let (q, g) = correct(front, pred, cfg)?;
            let mut tq = unit_tangent(g);
            // keep marching the same way; a flipped tangent means the
            // gradient rotated through the tangent line, not a U-turn
            if tq[0] * t[0] + tq[1] * t[1] < 0.0 {
                tq = [-tq[0], -tq[1]];
            }
            if (q.0 - p.0).hypot(q.1 - p.1) > 10.0 * h {
                return Err(Error::StepFailure(format!(
                    "corrector jumped from {p:?} to {q:?}"
                )));
            }
            out.push((q, tq));
            p = q;
            t = tq;
        }
        Ok(out)
    };

    let forward = march(1.0)?;
    let backward = march(-1.0)?;
    let mut points = Vec::with_capacity(2 * steps + 1);
    let mut tangents = Vec::with_capacity(2 * steps + 1);
    for (q, t) in backward.into_iter().rev() {
        points.push(q);
        // report tangents in a single consistent orientation
        tangents.push([-t[0], -t[1]]);
    }
    points.push(p0);
    tangents.push(t0);
    for (q, t) in forward {
        points.push(q);
        tangents.push(t);
    }
    Ok(ZeroCurve {
        points,
        tangents,
        step: h,
    })
}

/// Cuspidal-edge invariants at one singular point, with the intermediate
/// quantities that witness the computation.
#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct EdgeInvariants {
    pub kappa_nu: f64,
    pub kappa_s: f64,
    /// Derivative of the identifier along the null direction (nonzero at a
    /// cuspidal edge).
    pub eta_lambda: f64,
    /// Orientation pairing of the curve field with the null direction.
    pub det_xi_eta: f64,
    /// `det(xi F, xi xi F, e)` before sign and normalization.
    pub det3: f64,
    /// Speed `|xi F|` of the singular locus under the curve field.
    pub speed: f64,
    /// Residual of the frontal identity `<xi F, e> = 0`.
    pub frontal_residual: f64,
}

/// Compute the limiting normal curvature and singular curvature at a
/// cuspidal-edge point of the front.
///
/// The singular locus is differentiated through the curve field
/// `xi = (-w_v, w_u)` of the identifier `w`, which is tangent to the zero
/// curve; the invariants are
/// `kappa_nu = <xi xi F, e> / |xi F|^2` and
/// `kappa_s = sgn(eta w * det(xi, eta)) det(xi F, xi xi F, e) / |xi F|^3`.
pub fn edge_invariants(front: &FrontData, p: Point, cfg: &Config) -> Result<EdgeInvariants> {
    let w = (front.identifier)(p)?;
    let scale = w.max_abs_coeff().max(1.0);
    if w.value().abs() > cfg.tol.tau_sing * scale {
        return Err(Error::NotSingular(format!(
            "identifier is {:e} at {p:?}",
            w.value()
        )));
    }
    let xi = [w.deriv_v()?.neg(), w.deriv_u()?];
    let xi_norm = xi[0].value().hypot(xi[1].value());
    if xi_norm < cfg.tol.zero_tol(scale) {
        return Err(Error::DegenerateSeed(xi_norm));
    }

    let f = (front.map)(p)?;
    let e = (front.normal)(p)?;
    let eta = (front.null_field)(p)?;

    let eta_w = eta[0]
        .mul(&w.deriv_u()?)?
        .add(&eta[1].mul(&w.deriv_v()?)?)?
        .value();
    let det_xi_eta = xi[0].value() * eta[1].value() - xi[1].value() * eta[0].value();
    if eta_w.abs() < cfg.tol.zero_tol(scale) {
        return Err(Error::NotCuspidalEdge(format!(
            "identifier derivative along the null direction is {eta_w:e} at {p:?}"
        )));
    }

    let xi_f = directional_derivative_vec(&f, &xi)?;
    let xi_xi_f = directional_derivative_vec(&xi_f, &xi)?;
    let speed2 = xi_f.dot(&xi_f)?.value();
    let speed = speed2.sqrt();
    let frontal_residual = xi_f.dot(&e)?.value().abs() / speed.max(1.0);
    let det3 = JetVec3::det3(&xi_f, &xi_xi_f, &e)?.value();
    let kappa_nu = xi_xi_f.dot(&e)?.value() / speed2;
    let kappa_s = (eta_w * det_xi_eta).signum() * det3 / (speed2 * speed);
    Ok(EdgeInvariants {
        kappa_nu,
        kappa_s,
        eta_lambda: eta_w,
        det_xi_eta,
        det3,
        speed,
        frontal_residual,
    })
}

/// Trace the singular curve through `seed` and evaluate the edge invariants
/// at every `stride`-th sample.
pub fn invariants_along_curve(
    front: &FrontData,
    seed: Point,
    half_length: f64,
    stride: usize,
    cfg: &Config,
) -> Result<Vec<(Point, EdgeInvariants)>> {
    let curve = trace_zero_curve(front, seed, half_length, cfg)?;
    let stride = stride.max(1);
    curve
        .points
        .iter()
        .step_by(stride)
        .map(|&p| Ok((p, edge_invariants(front, p, cfg)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_surface;
    use crate::focal::{FocalBranch, FocalSurface};
    use crate::parallel::ParallelSurface;

    const BEAKS: &str = "(u, v, (1/2)*u^2 + u^4 + u^3*v)";
    const LIPS: &str = "(u, v, (1/2)*u^2 + u*v^2 + u^4)";
    const SWALLOWTAIL: &str = "(u, v, (1/2)*u^2 + u^2*v + u^4)";
    const PARABOLOID: &str = "(u*cos(v), u*sin(v), u^2)";

    fn focal_front(text: &str) -> FrontData {
        let cfg = Config::default();
        FocalSurface::new(parse_surface(text).unwrap(), FocalBranch::First).front_data(&cfg)
    }

    #[test]
    fn beaks_focal_edge_invariants() {
        let cfg = Config::default();
        let inv = edge_invariants(&focal_front(BEAKS), (0.0, 0.0), &cfg).unwrap();
        assert!((inv.kappa_s + 12.0 / 7.0).abs() < 1e-9, "{}", inv.kappa_s);
        assert!(inv.kappa_nu.abs() < 1e-9);
        assert!((inv.eta_lambda - 21.0).abs() < 1e-8);
        assert!((inv.det_xi_eta + 21.0).abs() < 1e-8);
        assert!((inv.det3 - 15876.0).abs() < 1e-5);
        assert!((inv.speed - 21.0).abs() < 1e-8);
        assert!(inv.frontal_residual < 1e-10);
    }

    #[test]
    fn lips_focal_edge_invariants() {
        let cfg = Config::default();
        let inv = edge_invariants(&focal_front(LIPS), (0.0, 0.0), &cfg).unwrap();
        assert!((inv.kappa_s - 8.0).abs() < 1e-9, "{}", inv.kappa_s);
        assert!((inv.kappa_nu + 2.0).abs() < 1e-9, "{}", inv.kappa_nu);
    }

    #[test]
    fn swallowtail_focal_edge_invariants() {
        let cfg = Config::default();
        let inv = edge_invariants(&focal_front(SWALLOWTAIL), (0.0, 0.0), &cfg).unwrap();
        assert!((inv.kappa_s + 0.7155417527999327).abs() < 1e-9, "{}", inv.kappa_s);
        assert!(inv.kappa_nu.abs() < 1e-9);
    }

    #[test]
    fn invariants_ignore_null_field_sign() {
        let cfg = Config::default();
        let base = edge_invariants(&focal_front(BEAKS), (0.0, 0.0), &cfg).unwrap();
        let flipped = focal_front(BEAKS);
        let flipped = FrontData {
            map: flipped.map,
            normal: flipped.normal,
            identifier: flipped.identifier,
            null_field: Box::new({
                let inner = focal_front(BEAKS).null_field;
                move |p| {
                    let [a, b] = (inner)(p)?;
                    Ok([a.neg(), b.neg()])
                }
            }),
        };
        let inv = edge_invariants(&flipped, (0.0, 0.0), &cfg).unwrap();
        assert!((inv.kappa_s - base.kappa_s).abs() < 1e-12);
        assert!((inv.kappa_nu - base.kappa_nu).abs() < 1e-12);
    }

    #[test]
    fn identifier_sign_sets_singular_curvature_sign() {
        // the identifier stands in for the signed area density, so negating
        // it flips kappa_s (a convention, not a bug) while kappa_nu is even
        let cfg = Config::default();
        let base = edge_invariants(&focal_front(BEAKS), (0.0, 0.0), &cfg).unwrap();
        let flipped = focal_front(BEAKS);
        let flipped = FrontData {
            map: flipped.map,
            normal: flipped.normal,
            identifier: Box::new({
                let inner = focal_front(BEAKS).identifier;
                move |p| Ok((inner)(p)?.neg())
            }),
            null_field: flipped.null_field,
        };
        let inv = edge_invariants(&flipped, (0.0, 0.0), &cfg).unwrap();
        assert!((inv.kappa_s + base.kappa_s).abs() < 1e-12);
        assert!((inv.kappa_nu - base.kappa_nu).abs() < 1e-12);
    }

    #[test]
    fn trace_parallel_singular_circle() {
        // the parallel of the paraboloid of revolution at the meridian focal
        // distance is singular exactly on the circle u = 1/2
        let cfg = Config::default();
        let par = ParallelSurface::new(parse_surface(PARABOLOID).unwrap(), 2.0_f64.sqrt()).unwrap();
        let front = par.front_data(&cfg);
        let curve = trace_zero_curve(&front, (0.502, 0.3), 0.05, &cfg).unwrap();
        assert_eq!(curve.points.len(), 101);
        for &(u, _) in &curve.points {
            assert!((u - 0.5).abs() < 1e-9, "{u}");
        }
        for w in curve.tangents.windows(2) {
            assert!(w[0][0] * w[1][0] + w[0][1] * w[1][1] > 0.9);
        }
    }

    #[test]
    fn degenerate_seed_rejected() {
        // at a lips point the identifier gradient vanishes, so the singular
        // curve cannot be continued from it
        let cfg = Config::default();
        let par = ParallelSurface::new(parse_surface(LIPS).unwrap(), 1.0).unwrap();
        let front = par.front_data(&cfg);
        assert!(matches!(
            trace_zero_curve(&front, (0.0, 0.0), 0.01, &cfg),
            Err(Error::DegenerateSeed(_))
        ));
    }

    #[test]
    fn parallel_edge_generic_matches_closed_form() {
        let cfg = Config::default();
        let par = ParallelSurface::new(parse_surface(PARABOLOID).unwrap(), 2.0_f64.sqrt()).unwrap();
        let front = par.front_data(&cfg);
        let samples = invariants_along_curve(&front, (0.502, 0.3), 0.1, 5, &cfg).unwrap();
        assert!(samples.len() >= 20);
        for (p, inv) in samples {
            let closed = par.limiting_normal_curvature(p, &cfg).unwrap();
            assert!(
                (inv.kappa_nu - closed).abs() / (1.0 + closed.abs()) < 1e-9,
                "{p:?}: {} vs {closed}",
                inv.kappa_nu
            );
        }
    }

    #[test]
    fn focal_edge_curve_through_beaks_point() {
        let cfg = Config::default();
        let front = focal_front(BEAKS);
        let samples = invariants_along_curve(&front, (0.0, 0.0), 0.02, 4, &cfg).unwrap();
        assert!(samples.len() >= 10);
        for (p, inv) in &samples {
            assert!(inv.frontal_residual < 1e-8, "{p:?}");
            assert!((inv.kappa_s + 12.0 / 7.0).abs() < 0.2, "{p:?}: {}", inv.kappa_s);
        }
    }
}
