//! A bump on the subaction is halved by G when it sits off the dominant
//! branch and survives untouched at the fixed point 2/3. Along a full
//! solve the step ratios wander between these extremes.

use subaction::dynamics::CircleMap;
use subaction::operators::System;
use subaction::oracle::analytic_subaction;
use subaction::perturblab::{rate_series, BumpExperiment};
use subaction::potential::PotentialSpec;
use subaction::solver::SolveConfig;

fn main() -> subaction::error::Result<()> {
    for (label, exp) in [
        ("bump at 0.7", BumpExperiment::half_rate(1440)?),
        ("bump at 2/3", BumpExperiment::unit_rate(1440)?),
    ] {
        let r = exp.run()?;
        println!(
            "{label}: before {:.6}  after {:.6}  ratio {:.4}",
            r.dist_before, r.dist_after, r.ratio
        );
    }
    for eps in [0.05, 0.025, 0.0125] {
        let r = BumpExperiment::quadratic(1440, 0.7, eps)?.run()?;
        println!("eps = {eps:<7} ratio {:.4}", r.ratio);
    }

    let spec = PotentialSpec::quadratic();
    let map = CircleMap::MinusDoubling;
    let cfg = SolveConfig::default();
    let system = System::new(map, spec.sample(cfg.n)?);
    let u = analytic_subaction(&spec, map, cfg.n)?;
    let series = rate_series(&system, &cfg, &u)?;
    println!("\nsolve from 0, distance to the exact subaction:");
    for (k, d) in series.distances.iter().enumerate().step_by(4) {
        println!("  k = {k:>2}  {d:.3e}");
    }
    let ratios: Vec<String> = series
        .rates
        .iter()
        .map(|r| format!("{:.2}", r.ratio))
        .collect();
    println!("step ratios: {}", ratios.join(" "));
    Ok(())
}
