//! Solve the quadratic potential under x -> -2x and compare against the
//! closed-form subaction.

use subaction::dynamics::CircleMap;
use subaction::oracle::analytic_subaction;
use subaction::potential::PotentialSpec;
use subaction::solver::{solve, SolveConfig};

fn main() -> subaction::error::Result<()> {
    let spec = PotentialSpec::quadratic();
    let map = CircleMap::MinusDoubling;
    let cfg = SolveConfig::default();
    let report = solve(&spec, map, &cfg)?;
    let exact = analytic_subaction(&spec, map, cfg.n)?;

    println!(
        "converged   {} after {} iterations",
        report.converged, report.iterations
    );
    println!(
        "m estimate  {:.9}  (exact -1/36 = {:.9})",
        report.m_estimate,
        -1.0 / 36.0
    );
    println!("|u - exact| {:.3e}", report.u.quotient_dist(&exact)?);
    for x in [0.0, 0.25, 1.0 / 3.0, 0.5, 2.0 / 3.0, 0.75] {
        println!("  u({x:.4}) = {:+.6}", report.u.eval(x));
    }
    Ok(())
}
