//! Build one analysis job in code and print the full JSON report: stable
//! key order, every float at 17 significant digits.

use caustica::report::{render_json, run, AnalysisJob};

fn main() -> anyhow::Result<()> {
    let mut job = AnalysisJob::new("(u, v, (1/2)*u^2 + u^4 + u^3*v)", (0.0, 0.0));
    job.distance_t = Some(1.0);
    job.focal_branch = Some(1);
    let report = run(&job, true)?;
    print!("{}", render_json(&report)?);
    Ok(())
}
