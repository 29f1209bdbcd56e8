//! Classify the first focal sheet of the same four graph surfaces and show
//! how each parallel-surface singularity corresponds to a focal one.

use caustica::focal::{FocalBranch, FocalSurface};
use caustica::parallel::ParallelSurface;
use caustica::{parse_surface, Config};

fn main() -> anyhow::Result<()> {
    let cfg = Config::default();
    let cases = [
        "(u, v, (1/2)*u^2 + u^3)",
        "(u, v, (1/2)*u^2 + u^2*v + u^4)",
        "(u, v, (1/2)*u^2 + u*v^2 + u^4)",
        "(u, v, (1/2)*u^2 + u^4 + u^3*v)",
    ];
    println!("{:40} {:18} {:18}", "surface", "parallel (t = 1)", "focal sheet 1");
    for text in cases {
        let surface = parse_surface(text)?;
        let par = ParallelSurface::new(surface.clone(), 1.0)?.classify((0.0, 0.0), &cfg)?;
        let foc = FocalSurface::new(surface, FocalBranch::First).classify((0.0, 0.0), &cfg)?;
        println!("{text:40} {:18} {:18}", format!("{:?}", par.class), format!("{:?}", foc.class));
    }
    Ok(())
}
