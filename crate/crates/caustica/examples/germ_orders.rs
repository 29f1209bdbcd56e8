//! Orders of function germs from truncated jets, and the rational-order
//! test for boundedness of a quotient near the base point.

use caustica::germ::{order, rational_order};
use caustica::{parse_surface, Config, Tolerances};

fn jet(text: &str) -> caustica::Jet {
    caustica::expr::parse_expr(text)
        .unwrap()
        .eval_jet((0.0, 0.0), 6)
        .unwrap()
}

fn main() -> anyhow::Result<()> {
    let tol = Tolerances::default();
    for text in ["u*v", "u^2 - v^2", "1 + u", "u^3"] {
        println!("ord({text}) = {:?}", order(&jet(text), &tol));
    }
    // quotient of two germs of equal order stays bounded: rational order 0
    println!(
        "rational order of (u*v) / (u^2 - v^2) = {:?}",
        rational_order(&jet("u*v"), &jet("u^2 - v^2"), &tol)?
    );

    // the same machinery answers whether parallel-surface curvatures blow
    // up when approaching the singular point
    let cfg = Config::default();
    let par = caustica::parallel::ParallelSurface::new(
        parse_surface("(u, v, (1/2)*u^2 + u^4 + u^3*v)")?,
        1.0,
    )?;
    let b = par.boundedness((0.0, 0.0), &cfg)?;
    println!(
        "beaks parallel surface: gaussian order {:?}, mean order {:?}, bounded: {}",
        b.gaussian_order, b.mean_order, b.rationally_bounded
    );
    Ok(())
}
