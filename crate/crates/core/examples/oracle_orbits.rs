//! Brute-force m(A) over periodic orbits for every catalog potential, next
//! to the value the solver finds.

use subaction::oracle::{periodic_m, MAX_ORACLE_PERIOD};
use subaction::potential::PotentialSpec;
use subaction::solver::{solve, SolveConfig};

fn main() -> subaction::error::Result<()> {
    let cfg = SolveConfig::default();
    println!(
        "{:<18} {:<15} {:>12} {:>12} {:>7}",
        "potential", "map", "oracle", "solver", "period"
    );
    for spec in PotentialSpec::catalog() {
        let map = spec.native_map();
        let orbit = periodic_m(&spec, map, 16)?;
        let report = solve(&spec, map, &cfg)?;
        println!(
            "{:<18} {:<15} {:>12.8} {:>12.8} {:>7}",
            spec.name,
            map.name(),
            orbit.m_value,
            report.m_estimate,
            orbit.period
        );
    }

    let quad = periodic_m(
        &PotentialSpec::quadratic(),
        subaction::dynamics::CircleMap::MinusDoubling,
        MAX_ORACLE_PERIOD,
    )?;
    println!(
        "\nquadratic maximizing points: {:?}",
        quad.maximizer_points()
    );
    println!("best average by minimal period:");
    for (p, best) in quad.per_period.iter().take(8) {
        match best {
            Some(v) => println!("  p = {p:>2}  {v:.10}"),
            None => println!("  p = {p:>2}  (no orbit)"),
        }
    }
    Ok(())
}
