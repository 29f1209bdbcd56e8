//! Limiting normal curvature and singular curvature at cuspidal-edge points
//! of the first focal sheet, computed generically from jet data and
//! cross-checked against the closed forms where their hypotheses hold.

use caustica::edge::edge_invariants;
use caustica::focal::{FocalBranch, FocalSurface};
use caustica::{parse_surface, Config};

fn main() -> anyhow::Result<()> {
    let cfg = Config::default();
    let cases = [
        ("beaks graph", "(u, v, (1/2)*u^2 + u^4 + u^3*v)", (0.0, 0.0)),
        ("lips graph", "(u, v, (1/2)*u^2 + u*v^2 + u^4)", (0.0, 0.0)),
        (
            "revolution",
            "((2 + u)*cos(v), (2 + u)*sin(v), u^2)",
            (0.0, 1.0),
        ),
    ];
    for (label, text, p) in cases {
        let focal = FocalSurface::new(parse_surface(text)?, FocalBranch::First);
        let inv = edge_invariants(&focal.front_data(&cfg), p, &cfg)?;
        print!(
            "{label:11} kappa_s = {:+.12}  kappa_nu = {:+.12}",
            inv.kappa_s, inv.kappa_nu
        );
        // the closed forms need a curvature-line chart and a critical point
        // of the leading principal curvature along the edge
        match (focal.ks_closed_form(p, &cfg), focal.kn_closed_form(p, &cfg)) {
            (Ok(ks), Ok(kn)) => println!("  (closed forms: {ks:+.12}, {kn:+.12})"),
            _ => println!("  (closed forms not applicable here)"),
        }
    }
    Ok(())
}
