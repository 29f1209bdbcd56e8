//! Trace the singular curve of a parallel surface through parameter space
//! and sample the edge invariants along it.

use caustica::edge::{invariants_along_curve, trace_zero_curve};
use caustica::parallel::ParallelSurface;
use caustica::{parse_surface, Config};

fn main() -> anyhow::Result<()> {
    let cfg = Config::default();
    // paraboloid of revolution; the parallel surface at the meridian focal
    // distance sqrt(2) is singular exactly along the circle u = 1/2
    let surface = parse_surface("(u*cos(v), u*sin(v), u^2)")?;
    let par = ParallelSurface::new(surface, 2.0_f64.sqrt())?;
    let front = par.front_data(&cfg);

    let curve = trace_zero_curve(&front, (0.52, 0.0), 0.05, &cfg)?;
    println!(
        "traced {} points, first {:?}, last {:?}",
        curve.points.len(),
        curve.points.first().unwrap(),
        curve.points.last().unwrap()
    );

    for (p, inv) in invariants_along_curve(&front, (0.52, 0.0), 0.05, 10, &cfg)? {
        println!(
            "  ({:+.6}, {:+.6})  kappa_nu = {:+.9}  kappa_s = {:+.9}",
            p.0, p.1, inv.kappa_nu, inv.kappa_s
        );
    }
    Ok(())
}
