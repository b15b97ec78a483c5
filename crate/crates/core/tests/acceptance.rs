//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use subaction::analysis::{
    beta, default_tolerance, generic_membership, tied_maximizer_example, Sides,
};
use subaction::circlefn::{grid_slack, GridFunction};
use subaction::dynamics::CircleMap;
use subaction::operators::System;
use subaction::oracle::{analytic_subaction, periodic_m};
use subaction::perturblab::{counterexample1, perturb_periodic, rate_series, Bump, BumpExperiment};
use subaction::potential::PotentialSpec;
use subaction::solver::{solve, solve_system, SolveConfig};

const N: usize = 1440;
const SEED: u64 = 20240101;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(checks: &[(&str, bool)], detail: String) -> Outcome {
    let failed: Vec<&str> = checks
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(name, _)| *name)
        .collect();
    let detail = if failed.is_empty() {
        detail
    } else {
        format!("{detail}; failed: {}", failed.join(", "))
    };
    Outcome {
        pass: failed.is_empty(),
        detail,
    }
}

fn quadratic_benchmark() -> Outcome {
    let spec = PotentialSpec::quadratic();
    let map = CircleMap::MinusDoubling;
    let cfg = SolveConfig::default().with_n(N).with_tol(1e-9);
    let start = Instant::now();
    let report = solve(&spec, map, &cfg).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let gap = report
        .u
        .quotient_dist(&analytic_subaction(&spec, map, N).unwrap())
        .unwrap();
    let m_err = (report.m_estimate + 1.0 / 36.0).abs();
    outcome(
        &[
            ("converged", report.converged),
            ("m within 1e-3", m_err <= 1e-3),
            ("u within 5e-3", gap <= 5e-3),
            ("runtime <= 10 s", secs <= 10.0),
        ],
        format!(
            "m = {:.9}, |u - exact| = {gap:.2e}, {} iterations, {secs:.3} s",
            report.m_estimate, report.iterations
        ),
    )
}

fn example_ex_benchmark() -> Outcome {
    let spec = PotentialSpec::example_ex();
    let map = CircleMap::Doubling;
    let cfg = SolveConfig::default().with_n(N);
    let system = System::new(map, spec.sample(N).unwrap());
    let report = solve_system(&system, &cfg).unwrap();
    let u = &report.u;
    let r = system.residual(u, report.m_estimate).unwrap();
    let gap = u.samples()[0] - u.samples()[N / 2];
    let r_mid = (N / 4..=3 * N / 4)
        .map(|j| r.samples()[j])
        .fold(0.0, f64::max);
    let r0 = r.samples()[0];
    outcome(
        &[
            ("m within 1e-3 of -1/3", (report.m_estimate + 1.0 / 3.0).abs() <= 1e-3),
            ("u(0) - u(1/2) within 1e-2 of 2/3", (gap - 2.0 / 3.0).abs() <= 1e-2),
            ("R < 1e-2 on [1/4, 3/4]", r_mid < 1e-2),
            ("R(0) within 1e-2 of 2/3", (r0 - 2.0 / 3.0).abs() <= 1e-2),
        ],
        format!(
            "m = {:.9}, u(0) - u(1/2) = {gap:.6}, max R on [1/4, 3/4] = {r_mid:.2e}, R(0) = {r0:.6}",
            report.m_estimate
        ),
    )
}

fn oracle_agreement() -> Outcome {
    let cfg = SolveConfig::default().with_n(N);
    let mut checks = Vec::new();
    let mut worst = 0.0_f64;
    for spec in PotentialSpec::catalog() {
        let map = spec.native_map();
        let oracle = periodic_m(&spec, map, 16).unwrap();
        let report = solve(&spec, map, &cfg).unwrap();
        let gap = (oracle.m_value - report.m_estimate).abs();
        worst = worst.max(gap);
        checks.push((spec.name.clone(), gap <= 1e-3));
    }
    let quad = periodic_m(&PotentialSpec::quadratic(), CircleMap::MinusDoubling, 16).unwrap();
    let pts = quad.maximizer_points();
    let has_fixed = pts.contains(&(1.0 / 3.0)) && pts.contains(&(2.0 / 3.0));
    let mut named: Vec<(&str, bool)> = checks.iter().map(|(n, ok)| (n.as_str(), *ok)).collect();
    named.push(("maximizers contain 1/3 and 2/3", has_fixed));
    outcome(
        &named,
        format!("max |oracle - solver| = {worst:.2e}, quadratic maximizers {pts:?}"),
    )
}

fn nonexpansive_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let catalog = PotentialSpec::catalog();
    let systems: Vec<(System, f64)> = catalog
        .iter()
        .map(|s| {
            (
                System::new(s.native_map(), s.sample(N).unwrap()),
                s.lipschitz(),
            )
        })
        .collect();
    let mut violations = 0;
    let mut worst = f64::NEG_INFINITY;
    for i in 0..200 {
        let (system, k) = &systems[i % systems.len()];
        let f = GridFunction::random_lipschitz(N, *k, &mut rng).unwrap();
        let g = GridFunction::random_lipschitz(N, *k, &mut rng).unwrap();
        let before = f.quotient_dist(&g).unwrap();
        let after = system
            .g_op(&f)
            .unwrap()
            .quotient_dist(&system.g_op(&g).unwrap())
            .unwrap();
        worst = worst.max(after - before);
        if after > before + grid_slack(*k, N) {
            violations += 1;
        }
    }
    outcome(
        &[("zero violations", violations == 0)],
        format!("200 pairs, {violations} violations, max(|Gf - Gg| - |f - g|) = {worst:.2e}"),
    )
}

fn lipschitz_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let catalog = PotentialSpec::catalog();
    let mut violations = 0;
    let mut worst = f64::NEG_INFINITY;
    for i in 0..100 {
        let spec = &catalog[i % catalog.len()];
        let system = System::new(spec.native_map(), spec.sample(N).unwrap());
        let k = spec.lipschitz();
        let f = GridFunction::random_lipschitz(N, k, &mut rng).unwrap();
        let lip = system.g_op(&f).unwrap().lipschitz_estimate();
        worst = worst.max(lip / k);
        if lip > k + 2.0 * k / N as f64 {
            violations += 1;
        }
    }
    outcome(
        &[("zero violations", violations == 0)],
        format!("100 functions, {violations} violations, max Lip(G f) / Lip(A) = {worst:.6}"),
    )
}

fn counterexample() -> Outcome {
    let r = counterexample1(N).unwrap();
    outcome(
        &[
            ("|f0 - g0| = 1/2", (r.dist_before - 0.5).abs() <= 1e-9),
            ("|f1 - g1| = 1/2", (r.dist_after - 0.5).abs() <= 1e-9),
        ],
        format!("before {:.12}, after {:.12}", r.dist_before, r.dist_after),
    )
}

fn half_rate() -> Outcome {
    let r = BumpExperiment::half_rate(N).unwrap().run().unwrap();
    outcome(
        &[
            ("dist_before", (r.dist_before - 0.00556).abs() <= 2e-4),
            ("dist_after", (r.dist_after - 0.00278).abs() <= 2e-4),
            ("ratio", (r.ratio - 0.5).abs() <= 0.02),
        ],
        format!(
            "before {:.6}, after {:.6}, ratio {:.6}",
            r.dist_before, r.dist_after, r.ratio
        ),
    )
}

fn unit_rate() -> Outcome {
    let exp = BumpExperiment::unit_rate(N).unwrap();
    let r = exp.run().unwrap();
    let slack = exp.slack();
    outcome(
        &[(
            "ratio in [0.98, 1 + slack]",
            r.ratio >= 0.98 && r.ratio <= 1.0 + slack,
        )],
        format!("ratio {:.6}, slack {slack:.2e}", r.ratio),
    )
}

fn genericity_regression() -> Outcome {
    let n = 2000;
    let map = CircleMap::Doubling;
    let f = GridFunction::from_fn(n, tied_maximizer_example).unwrap();
    let zero = GridFunction::zeros(n).unwrap();
    let b = beta(map, 0.75, &f, &zero).unwrap();
    let before = generic_membership(
        map,
        &f,
        &zero,
        default_tolerance(&f, &zero).unwrap(),
        Sides::Positive,
    )
    .unwrap();
    let q = Bump::gaussian(0.005, 0.75 - 0.015, 1.0 / 500.0).unwrap();
    let w = Bump::gaussian(0.005, 0.015, -1.0 / 1000.0).unwrap();
    let f_eps = perturb_periodic(&perturb_periodic(&f, &q).unwrap(), &w).unwrap();
    let after = generic_membership(
        map,
        &f_eps,
        &zero,
        default_tolerance(&f_eps, &zero).unwrap(),
        Sides::Positive,
    )
    .unwrap();
    let dist = f_eps.quotient_dist(&f).unwrap();
    outcome(
        &[
            ("beta(3/4) = 0", b.abs() <= 1e-6),
            ("violation at 3/4", before.violations.contains(&(3 * n / 4))),
            ("perturbed pair in set", after.in_set),
            ("|f_eps - f| = 0.1695", (dist - 0.1695).abs() <= 2e-3),
        ],
        format!(
            "beta = {b:.2e}, violations {:?}, in_set after = {}, |f_eps - f| = {dist:.6}",
            before.violations, after.in_set
        ),
    )
}

fn monotone_approach() -> Outcome {
    let spec = PotentialSpec::quadratic();
    let map = CircleMap::MinusDoubling;
    let system = System::new(map, spec.sample(N).unwrap());
    let u = analytic_subaction(&spec, map, N).unwrap();
    let series = rate_series(&system, &SolveConfig::default().with_n(N), &u).unwrap();
    let slack = grid_slack(spec.lipschitz(), N);
    let increases = series
        .distances
        .windows(2)
        .filter(|w| w[1] > w[0] + slack)
        .count();
    let fastest = series
        .rates
        .iter()
        .map(|r| r.ratio)
        .fold(f64::INFINITY, f64::min);
    outcome(
        &[
            ("nonincreasing up to slack", increases == 0),
            ("some step ratio <= 0.75", fastest <= 0.75),
        ],
        format!(
            "{} steps, {increases} increases, fastest ratio {fastest:.4}",
            series.rates.len()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("quadratic benchmark", quadratic_benchmark),
        ("piecewise example benchmark", example_ex_benchmark),
        ("oracle agreement", oracle_agreement),
        ("nonexpansiveness", nonexpansive_suite),
        ("Lipschitz invariance", lipschitz_invariance),
        ("counterexample distances", counterexample),
        ("rate 1/2 bump", half_rate),
        ("rate 1 bump", unit_rate),
        ("genericity regression", genericity_regression),
        ("monotone approach", monotone_approach),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        if !o.pass {
            failures += 1;
        }
        println!(
            "criterion {:>2} {} {name}: {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
