//! Piecewise-linear potential under doubling: the period-two orbit
//! {1/3, 2/3} carries the maximizing measure, and the residual of the
//! solved subaction vanishes on it.

use subaction::dynamics::CircleMap;
use subaction::operators::System;
use subaction::potential::PotentialSpec;
use subaction::solver::{mather_candidates, solve_system, SolveConfig};

fn main() -> subaction::error::Result<()> {
    let spec = PotentialSpec::example_ex();
    let map = CircleMap::Doubling;
    let cfg = SolveConfig::default();
    let system = System::new(map, spec.sample(cfg.n)?);
    let report = solve_system(&system, &cfg)?;
    let u = &report.u;

    println!("m estimate     {:.9}", report.m_estimate);
    println!("u(0) - u(1/2)  {:+.6}", u.eval(0.0) - u.eval(0.5));

    let r = system.residual(u, report.m_estimate)?;
    println!("R(0)           {:.6}", r.samples()[0]);
    println!(
        "max R on [1/4, 3/4]  {:.3e}",
        (cfg.n / 4..=3 * cfg.n / 4)
            .map(|j| r.samples()[j])
            .fold(0.0, f64::max)
    );

    let zero_set = mather_candidates(&system, u, report.m_estimate, 1e-6)?;
    println!(
        "{} grid points with R < 1e-6, from x = {} to {}",
        zero_set.len(),
        u.x(zero_set[0]),
        u.x(*zero_set.last().unwrap())
    );
    for x in [1.0 / 3.0, 2.0 / 3.0] {
        println!("  R({x:.4}) = {:.3e}", r.eval(x));
    }
    Ok(())
}
