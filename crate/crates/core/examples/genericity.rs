//! A function whose maximum at 3/4 is shared with both of its preimages,
//! and the Gaussian perturbation that breaks the tie.

use subaction::analysis::{
    beta, default_tolerance, generic_membership, tied_maximizer_example, Sides,
};
use subaction::circlefn::GridFunction;
use subaction::dynamics::CircleMap;
use subaction::perturblab::{perturb_periodic, Bump};

fn main() -> subaction::error::Result<()> {
    let n = 2000;
    let map = CircleMap::Doubling;
    let f = GridFunction::from_fn(n, tied_maximizer_example)?;
    let zero = GridFunction::zeros(n)?;

    println!("beta(3/4, f, 0) = {:.3e}", beta(map, 0.75, &f, &zero)?);
    let report = generic_membership(
        map,
        &f,
        &zero,
        default_tolerance(&f, &zero)?,
        Sides::Positive,
    )?;
    let xs = |idx: &[usize]| idx.iter().map(|&j| f.x(j)).collect::<Vec<_>>();
    println!(
        "maximizers {:?}, violations {:?}",
        xs(&report.maximizers),
        xs(&report.violations)
    );

    let q = Bump::gaussian(0.005, 0.75 - 0.015, 1.0 / 500.0)?;
    let w = Bump::gaussian(0.005, 0.015, -1.0 / 1000.0)?;
    let f_eps = perturb_periodic(&perturb_periodic(&f, &q)?, &w)?;
    println!("|f_eps - f| = {:.5}", f_eps.quotient_dist(&f)?);
    let after = generic_membership(
        map,
        &f_eps,
        &zero,
        default_tolerance(&f_eps, &zero)?,
        Sides::Both,
    )?;
    println!(
        "after: in set {}, maximizers {:?}",
        after.in_set,
        xs(&after.maximizers)
    );
    Ok(())
}
