//! Where a triangular bump changes psi and H, depending on whether the
//! bump sits on the dominant branch.

use subaction::circlefn::GridFunction;
use subaction::dynamics::CircleMap;
use subaction::operators::System;
use subaction::perturblab::{support_check, Bump};
use subaction::potential::PotentialSpec;

fn main() -> subaction::error::Result<()> {
    let n = 1200;
    let system = System::new(CircleMap::Doubling, PotentialSpec::sin_sq().sample(n)?);
    let f = GridFunction::from_fn(n, |x| -(x - 0.5) * (x - 0.5))?;

    for bump in [
        Bump::triangular(0.1, 0.7, 1.0)?,
        Bump::triangular(0.03, 0.2, 1.0)?,
    ] {
        let r = support_check(&system, &f, &bump, 1e-9)?;
        println!("bump on {:?}, image {:?}", r.interval, r.image);
        println!(
            "  dominant branch at T(a): {:?}, bump branch: {:?}",
            r.dominant, r.bump_branch
        );
        println!("  max |psi change|          {:.4}", r.psi_gap_max);
        println!("  max |psi change| off T(I) {:.4}", r.psi_gap_outside_image);
        println!(
            "  H change in [{:.4}, {:.4}], bound {:.4}",
            r.h_gap_min, r.h_gap_max, r.h_gap_bound
        );
        println!("  all statements hold: {}", r.holds());
    }

    let overlapping = Bump::triangular(0.1, 0.85, 1.0)?;
    match support_check(&system, &f, &overlapping, 1e-9) {
        Err(e) => println!("bump at 0.85: {e}"),
        Ok(_) => println!("bump at 0.85 unexpectedly accepted"),
    }
    Ok(())
}
