//! Tracing checks with known answers: a synthetic identifier whose zero set
//! is an exact parabola, and the tangent direction of the focal singular
//! curve at the beaks example.

use caustica::edge::{trace_zero_curve, FrontData};
use caustica::expr::parse_expr;
use caustica::focal::{FocalBranch, FocalSurface};
use caustica::jet::{Jet, JetVec3, Point};
use caustica::{parse_surface, Config};

/// A front over the plane whose identifier is an arbitrary expression; map
/// and normal are the trivial graph data, only the zero set matters here.
fn synthetic_front(identifier: &str) -> FrontData {
    let cfg = Config::default();
    let order = cfg.jet_order;
    let w = parse_expr(identifier).unwrap();
    let plane = parse_surface("(u, v, 0)").unwrap();
    let normal = move |p: Point| {
        JetVec3::new(
            Jet::constant(p, order, 0.0),
            Jet::constant(p, order, 0.0),
            Jet::constant(p, order, 1.0),
        )
    };
    FrontData {
        map: Box::new(move |p| plane.lift(p, order)),
        normal: Box::new(normal),
        identifier: Box::new(move |p| w.eval_jet(p, order)),
        null_field: Box::new(move |p| {
            Ok([Jet::constant(p, order, 1.0), Jet::constant(p, order, 0.0)])
        }),
    }
}

#[test]
fn traced_zero_set_of_u2_plus_v_is_the_parabola() {
    let cfg = Config::default();
    let front = synthetic_front("u^2 + v");
    let curve = trace_zero_curve(&front, (0.0, 0.0), 0.3, &cfg).unwrap();
    assert!(curve.points.len() > 500);
    for &(u, v) in &curve.points {
        assert!((v + u * u).abs() < 1e-9, "({u}, {v}) off the parabola");
    }
    // both branches of the march were taken
    let us: Vec<f64> = curve.points.iter().map(|p| p.0).collect();
    assert!(us.iter().cloned().fold(f64::INFINITY, f64::min) < -0.2);
    assert!(us.iter().cloned().fold(f64::NEG_INFINITY, f64::max) > 0.2);
}

#[test]
fn beaks_focal_singular_curve_tangent() {
    // identifier gradient at the origin is (21, 6), so the curve leaves
    // along +-(-6, 21)
    let cfg = Config::default();
    let focal = FocalSurface::new(
        parse_surface("(u, v, (1/2)*u^2 + u^4 + u^3*v)").unwrap(),
        FocalBranch::First,
    );
    let curve = trace_zero_curve(&focal.front_data(&cfg), (0.0, 0.0), 0.05, &cfg).unwrap();
    let mid = curve.points.len() / 2;
    let t = curve.tangents[mid];
    let expected: [f64; 2] = [-6.0, 21.0];
    let norm = (expected[0] * expected[0] + expected[1] * expected[1]).sqrt();
    let cross = t[0] * expected[1] / norm - t[1] * expected[0] / norm;
    assert!(cross.abs() < 1e-9, "tangent {t:?} not parallel to (-6, 21)");
}
