//! Classify the parallel surface at distance 1 of four graph surfaces that
//! each realize a different singularity type at the origin.

use caustica::parallel::ParallelSurface;
use caustica::{parse_surface, Config};

fn main() -> anyhow::Result<()> {
    let cfg = Config::default();
    let cases = [
        ("cuspidal edge", "(u, v, (1/2)*u^2 + u^3)"),
        ("swallowtail", "(u, v, (1/2)*u^2 + u^2*v + u^4)"),
        ("lips", "(u, v, (1/2)*u^2 + u*v^2 + u^4)"),
        ("beaks", "(u, v, (1/2)*u^2 + u^4 + u^3*v)"),
    ];
    for (label, text) in cases {
        let par = ParallelSurface::new(parse_surface(text)?, 1.0)?;
        let c = par.classify((0.0, 0.0), &cfg)?;
        println!(
            "{label:13} {text:40} -> {:?}  (eta.lambda = {:.3}, det Hess = {:.3})",
            c.class, c.eta_lambda, c.hessian_det
        );
    }
    Ok(())
}
