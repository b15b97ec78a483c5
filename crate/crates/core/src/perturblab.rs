//! Local perturbations of a subaction and the contraction rate of `G`
//! they produce.
//!
//! A triangular bump of slope `k` on `I = [a - eps, a + eps]` moves `f`
//! by `k eps / 2` in the quotient norm. Depending on whether `a` lies on
//! the dominant branch above `T(a)`, one application of `G` halves that
//! distance or leaves it unchanged, so no uniform rate exists near `u`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::circlefn::{grid_slack, wrap_unit, GridFunction};
use crate::dynamics::{Branch, CircleMap};
use crate::error::{Error, Result};
use crate::operators::System;
use crate::oracle::analytic_subaction;
use crate::potential::PotentialSpec;
use crate::solver::{solve_observed, SolveConfig, SolveReport};

/// Distances at or below this are treated as "already at the reference".
pub const DEGENERATE_DISTANCE: f64 = 1e-12;

/// Gaussian values below this are flushed to zero.
const GAUSSIAN_FLOOR: f64 = 1e-300;

const EDGE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Bump {
    /// `slope * max(0, eps - |x - center|)`: support `[center - eps,
    /// center + eps]`, peak `slope * eps`.
    Triangular { eps: f64, center: f64, slope: f64 },
    /// `scale * exp(-d^2 / eps^2) / (eps sqrt(pi))` with `d` the circle
    /// distance to `center`.
    Gaussian { eps: f64, center: f64, scale: f64 },
}

fn circle_distance(a: f64, b: f64) -> f64 {
    let d = wrap_unit(a - b);
    d.min(1.0 - d)
}

impl Bump {
    pub fn triangular(eps: f64, center: f64, slope: f64) -> Result<Self> {
        if !(eps > 0.0) || !(slope > 0.0) || !center.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "triangular bump needs eps > 0 and slope > 0, got eps={eps} slope={slope}"
            )));
        }
        Ok(Bump::Triangular { eps, center, slope })
    }

    pub fn gaussian(eps: f64, center: f64, scale: f64) -> Result<Self> {
        if !(eps > 0.0) || !center.is_finite() || !scale.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "gaussian bump needs eps > 0, got {eps}"
            )));
        }
        Ok(Bump::Gaussian { eps, center, scale })
    }

    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            Bump::Triangular { eps, center, slope } => {
                let room = eps - circle_distance(x, center);
                // support endpoints land on the grid up to rounding
                if room <= EDGE * eps {
                    0.0
                } else {
                    slope * room
                }
            }
            Bump::Gaussian { eps, center, scale } => {
                let d = circle_distance(x, center);
                let v = (-(d * d) / (eps * eps)).exp() / (eps * PI.sqrt());
                if v < GAUSSIAN_FLOOR {
                    0.0
                } else {
                    scale * v
                }
            }
        }
    }

    pub fn sample(&self, n: usize) -> Result<GridFunction> {
        GridFunction::from_fn(n, |x| self.eval(x))
    }

    /// `[center - eps, center + eps]` for triangular bumps.
    pub fn support(&self) -> Option<(f64, f64)> {
        match *self {
            Bump::Triangular { eps, center, .. } => Some((center - eps, center + eps)),
            Bump::Gaussian { .. } => None,
        }
    }

    /// Whether the support of a triangular bump crosses `0 = 1`.
    pub fn wraps_seam(&self) -> bool {
        self.support().is_some_and(|(lo, hi)| lo < 0.0 || hi > 1.0)
    }

    pub fn slope(&self) -> f64 {
        match *self {
            Bump::Triangular { slope, .. } => slope,
            Bump::Gaussian { .. } => 0.0,
        }
    }
}

/// `f + bump`. Triangular bumps across the seam are rejected.
pub fn perturb(f: &GridFunction, bump: &Bump) -> Result<GridFunction> {
    if bump.wraps_seam() {
        return Err(Error::PreconditionViolated(format!(
            "bump support {:?} crosses the seam",
            bump.support()
        )));
    }
    perturb_periodic(f, bump)
}

/// `f + bump` with the bump wrapped around the circle.
pub fn perturb_periodic(f: &GridFunction, bump: &Bump) -> Result<GridFunction> {
    f.add(&bump.sample(f.n())?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateResult {
    /// `|f - u|`.
    pub dist_before: f64,
    /// `|G(f) - u|`.
    pub dist_after: f64,
    pub ratio: f64,
}

pub fn contraction_ratio(
    system: &System,
    f: &GridFunction,
    u: &GridFunction,
) -> Result<RateResult> {
    let dist_before = f.quotient_dist(u)?;
    if dist_before <= DEGENERATE_DISTANCE {
        return Err(Error::DegenerateDistance {
            distance: dist_before,
            threshold: DEGENERATE_DISTANCE,
        });
    }
    let dist_after = system.g_op(f)?.quotient_dist(u)?;
    Ok(RateResult {
        dist_before,
        dist_after,
        ratio: dist_after / dist_before,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SupportReport {
    /// Interval `I` carrying the bump.
    pub interval: (f64, f64),
    /// `T(I)`, centered at `T(a)` with radius `2 eps`.
    pub image: (f64, f64),
    /// Dominant branch of `f` above `T(a)`.
    pub dominant: Branch,
    /// Branch through which `a` is reached from `T(a)`.
    pub bump_branch: Branch,
    /// `max |psi(f_eps) - psi(f)|` over grid points outside `T(I)`.
    pub psi_gap_outside_image: f64,
    /// `max |psi(f_eps) - psi(f)|` over the whole grid.
    pub psi_gap_max: f64,
    /// `min (H(f_eps) - H(f))`; nonnegative when `H` is monotone here.
    pub h_gap_min: f64,
    /// `max (H(f_eps) - H(f))`.
    pub h_gap_max: f64,
    /// `max |H(f_eps) - H(f)|` outside `I` and `T(I)`.
    pub h_gap_outside: f64,
    /// `k eps / 2 + slack`.
    pub h_gap_bound: f64,
    pub slack: f64,
}

impl SupportReport {
    /// All the support statements hold on this grid.
    pub fn holds(&self) -> bool {
        self.psi_gap_outside_image == 0.0
            && self.h_gap_min >= -1e-15
            && self.h_gap_outside == 0.0
            && self.h_gap_max <= self.h_gap_bound
            && (self.dominant == self.bump_branch || self.psi_gap_max == 0.0)
    }
}

/// Compares `psi` and `H` before and after adding a triangular bump.
///
/// Requires `I` and `T(I)` to have disjoint interiors, `a` and `T(a)` on
/// the grid, and `T(a)` not a turning point (tie within `tie_tol`).
pub fn support_check(
    system: &System,
    f: &GridFunction,
    bump: &Bump,
    tie_tol: f64,
) -> Result<SupportReport> {
    let Bump::Triangular { eps, center, slope } = *bump else {
        return Err(Error::InvalidArgument(
            "support_check needs a triangular bump".into(),
        ));
    };
    let map = system.map();
    let n = f.n();
    let image_center = map.forward(center);
    if circle_distance(center, image_center) < 3.0 * eps - 1e-12 {
        return Err(Error::PreconditionViolated(format!(
            "I = [{}, {}] overlaps T(I) around {image_center}",
            center - eps,
            center + eps
        )));
    }
    let a_index = (center * n as f64).round();
    if (a_index / n as f64 - center).abs() > 1e-12 {
        return Err(Error::PreconditionViolated(format!(
            "bump center {center} is not a grid point"
        )));
    }
    let t_index = map.forward_index(a_index as usize % n, n);
    let realizers = system.realizers(f, tie_tol)?;
    let Some(dominant) = realizers.dominant(t_index) else {
        return Err(Error::PreconditionViolated(format!(
            "T(a) = {image_center} is a turning point of f"
        )));
    };
    let bump_branch = crate::analysis::branch_of(map, center);

    let f_eps = perturb(f, bump)?;
    let psi_gap = system.psi(&f_eps)?.sub(&system.psi(f)?)?;
    let h_gap = system.h_op(&f_eps)?.sub(&system.h_op(f)?)?;
    let mut psi_gap_outside_image = 0.0_f64;
    let mut h_gap_outside = 0.0_f64;
    for j in 0..n {
        let x = j as f64 / n as f64;
        let outside_image = circle_distance(x, image_center) >= 2.0 * eps - 1e-12;
        let outside_interval = circle_distance(x, center) >= eps - 1e-12;
        if outside_image {
            psi_gap_outside_image = psi_gap_outside_image.max(psi_gap.samples()[j].abs());
            if outside_interval {
                h_gap_outside = h_gap_outside.max(h_gap.samples()[j].abs());
            }
        }
    }
    let slack = grid_slack(system.potential().lipschitz_estimate().max(slope), n);
    Ok(SupportReport {
        interval: (center - eps, center + eps),
        image: (image_center - 2.0 * eps, image_center + 2.0 * eps),
        dominant,
        bump_branch,
        psi_gap_outside_image,
        psi_gap_max: psi_gap.sup_norm(),
        h_gap_min: h_gap.min(),
        h_gap_max: h_gap.max(),
        h_gap_outside,
        h_gap_bound: slope * eps / 2.0 + slack,
        slack,
    })
}

/// A subaction, a bump on it, and the dynamics: one rate measurement.
#[derive(Debug, Clone)]
pub struct BumpExperiment {
    pub system: System,
    pub u: GridFunction,
    pub bump: Bump,
}

impl BumpExperiment {
    /// Quadratic potential normalized to `m = 0` under `-2x`, exact
    /// subaction, bump of slope `Lip(u) = 2/9` at `center`.
    pub fn quadratic(n: usize, center: f64, eps: f64) -> Result<Self> {
        let spec = PotentialSpec::quadratic_shifted();
        let map = CircleMap::MinusDoubling;
        Ok(Self {
            system: System::new(map, spec.sample(n)?),
            u: analytic_subaction(&spec, map, n)?,
            bump: Bump::triangular(eps, center, 2.0 / 9.0)?,
        })
    }

    /// Bump at 0.7, away from turning-point preimages: ratio 1/2.
    pub fn half_rate(n: usize) -> Result<Self> {
        Self::quadratic(n, 0.7, 0.05)
    }

    /// Bump at the fixed point 2/3 on its own dominant branch: ratio 1.
    pub fn unit_rate(n: usize) -> Result<Self> {
        Self::quadratic(n, 2.0 / 3.0, 0.05)
    }

    pub fn perturbed(&self) -> Result<GridFunction> {
        perturb(&self.u, &self.bump)
    }

    pub fn run(&self) -> Result<RateResult> {
        contraction_ratio(&self.system, &self.perturbed()?, &self.u)
    }

    /// `2 max(Lip A, k) / n`.
    pub fn slack(&self) -> f64 {
        grid_slack(
            self.system
                .potential()
                .lipschitz_estimate()
                .max(self.bump.slope()),
            self.u.n(),
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CounterexampleReport {
    /// `|f_0 - g_0|`.
    pub dist_before: f64,
    /// `|G(f_0) - G(g_0)|`.
    pub dist_after: f64,
}

/// `f_0 = A` (the `counterex1` potential) and `g_0 = 0` under doubling:
/// both distances are 1/2, so `G` is not a strict contraction.
pub fn counterexample1(n: usize) -> Result<CounterexampleReport> {
    if n == 0 || n % 16 != 0 {
        return Err(Error::InvalidArgument(format!(
            "grid size must be a multiple of 16, got {n}"
        )));
    }
    let a = PotentialSpec::counter_ex1().sample(n)?;
    let system = System::new(CircleMap::Doubling, a.clone());
    pair_distances(&system, &a, &GridFunction::zeros(n)?)
}

/// `|f - g|` and `|G(f) - G(g)|`.
pub fn pair_distances(
    system: &System,
    f: &GridFunction,
    g: &GridFunction,
) -> Result<CounterexampleReport> {
    Ok(CounterexampleReport {
        dist_before: f.quotient_dist(g)?,
        dist_after: system.g_op(f)?.quotient_dist(&system.g_op(g)?)?,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RateSeries {
    /// `|f_k - u_ref|` for every iterate, starting at `f_0`.
    pub distances: Vec<f64>,
    /// Step ratios until the distance becomes degenerate.
    pub rates: Vec<RateResult>,
    #[serde(skip)]
    pub report: SolveReport,
}

/// Runs the solver and logs `|f_{k+1} - u_ref| / |f_k - u_ref|`.
pub fn rate_series(system: &System, cfg: &SolveConfig, u_ref: &GridFunction) -> Result<RateSeries> {
    system.potential().check_same_grid(u_ref)?;
    let mut distances = Vec::new();
    let report = solve_observed(system, cfg, |_, f| {
        // grids were checked above
        distances.push(f.quotient_dist(u_ref).unwrap_or(f64::NAN));
    })?;
    let rates = distances
        .windows(2)
        .take_while(|w| w[0] > DEGENERATE_DISTANCE)
        .map(|w| RateResult {
            dist_before: w[0],
            dist_after: w[1],
            ratio: w[1] / w[0],
        })
        .collect();
    Ok(RateSeries {
        distances,
        rates,
        report,
    })
}
