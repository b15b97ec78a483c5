//! H - Id near the subaction: where it vanishes, the bounds it obeys, and
//! the turning points of the realizing branches.

use subaction::analysis::{h_identity_zero, t1_bounds};
use subaction::circlefn::GridFunction;
use subaction::dynamics::CircleMap;
use subaction::operators::System;
use subaction::oracle::analytic_subaction;
use subaction::potential::PotentialSpec;

fn main() -> subaction::error::Result<()> {
    let n = 1440;
    let spec = PotentialSpec::quadratic_shifted();
    let map = CircleMap::MinusDoubling;
    let system = System::new(map, spec.sample(n)?);
    let u = analytic_subaction(&spec, map, n)?;

    let realizers = system.realizers(&u, 1e-9)?;
    println!("turning points of u: {:?}", realizers.turning_points());

    for amp in [0.1, 0.02] {
        let f = GridFunction::from_fn(n, |x| amp * (6.0 * x).sin())?.add(&u)?;
        let t = t1_bounds(&system, &f, &u)?;
        println!(
            "|f - u| = {:.4}: |H f - f| = {:.4} <= 2|f - u|: {}, gap {:.4} within bounds: {}",
            t.distance,
            t.beta_t,
            t.upper_holds,
            t.shifted_gap,
            t.fundamental_holds && t.lower_holds
        );
        let z = h_identity_zero(&system, &f, 1e-12)?;
        println!("  H(f) - f vanishes at x = {:.6}", z.x);
    }
    Ok(())
}
