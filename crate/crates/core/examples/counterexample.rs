//! G is nonexpansive but not a strict contraction: a pair whose distance
//! does not shrink, against random pairs that never grow.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use subaction::circlefn::{grid_slack, GridFunction};
use subaction::dynamics::CircleMap;
use subaction::operators::System;
use subaction::perturblab::{counterexample1, pair_distances};
use subaction::potential::PotentialSpec;

fn main() -> subaction::error::Result<()> {
    let r = counterexample1(1440)?;
    println!(
        "|f0 - g0| = {:.12}   |G f0 - G g0| = {:.12}",
        r.dist_before, r.dist_after
    );

    let n = 1440;
    let spec = PotentialSpec::sin_sq();
    let system = System::new(CircleMap::Doubling, spec.sample(n)?);
    let k = spec.lipschitz();
    let mut rng = ChaCha8Rng::seed_from_u64(20240101);
    let mut worst = f64::NEG_INFINITY;
    for _ in 0..50 {
        let f = GridFunction::random_lipschitz(n, k, &mut rng)?;
        let g = GridFunction::random_lipschitz(n, k, &mut rng)?;
        let d = pair_distances(&system, &f, &g)?;
        worst = worst.max(d.dist_after - d.dist_before);
    }
    println!(
        "50 random pairs: max(|Gf - Gg| - |f - g|) = {worst:.3e}, slack {:.3e}",
        grid_slack(k, n)
    );
    Ok(())
}
