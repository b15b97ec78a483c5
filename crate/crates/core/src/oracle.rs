//! Independent references for the solver: brute-force `m(A)` over periodic
//! orbits and closed-form subactions for catalog potentials.

use serde::Serialize;

use crate::circlefn::GridFunction;
use crate::dynamics::CircleMap;
use crate::error::{Error, Result};
use crate::potential::{PotentialKind, PotentialSpec};
use crate::solver::SolveReport;

pub const MAX_ORACLE_PERIOD: u32 = 20;

/// Orbits whose average is within this of the best are reported as
/// maximizers too.
const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Serialize)]
pub struct OrbitResult {
    /// Best Birkhoff average over all periodic orbits of period `<= pmax`.
    pub m_value: f64,
    pub period: u32,
    pub orbit: Vec<f64>,
    /// `(p, best average over orbits of minimal period p)`; `None` when the
    /// map has no orbit of minimal period `p`.
    pub per_period: Vec<(u32, Option<f64>)>,
    /// Every orbit attaining `m_value` within `1e-12`.
    pub maximizers: Vec<Vec<f64>>,
}

impl OrbitResult {
    pub fn maximizer_points(&self) -> Vec<f64> {
        let mut pts: Vec<f64> = self.maximizers.iter().flatten().copied().collect();
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }
}

/// Numerators of the orbit of `j / q`, if `j` is the smallest numerator
/// on an orbit of minimal period exactly `p`.
fn canonical_orbit(map: CircleMap, j: u64, q: u64, p: u32) -> Option<Vec<u64>> {
    let mut orbit = Vec::with_capacity(p as usize);
    orbit.push(j);
    let mut k = j;
    for _ in 1..p {
        k = map.forward_rational(k, q);
        if k <= j {
            // back at j early (smaller period) or j is not the minimum
            return None;
        }
        orbit.push(k);
    }
    Some(orbit)
}

/// `m(A)` restricted to periodic-orbit measures of period at most `pmax`.
pub fn periodic_m(potential: &PotentialSpec, map: CircleMap, pmax: u32) -> Result<OrbitResult> {
    if pmax == 0 || pmax > MAX_ORACLE_PERIOD {
        return Err(Error::PeriodOutOfRange {
            period: pmax,
            max: MAX_ORACLE_PERIOD,
        });
    }
    let mut per_period = Vec::with_capacity(pmax as usize);
    let mut candidates: Vec<(f64, u32, Vec<f64>)> = Vec::new();
    for p in 1..=pmax {
        let q = map.period_denominator(p)?;
        let mut best: Option<f64> = None;
        for j in 0..q {
            let Some(orbit) = canonical_orbit(map, j, q, p) else {
                continue;
            };
            let points: Vec<f64> = orbit.iter().map(|&k| k as f64 / q as f64).collect();
            let avg = points.iter().map(|&x| potential.eval(x)).sum::<f64>() / p as f64;
            best = Some(best.map_or(avg, |b: f64| b.max(avg)));
            candidates.retain(|(v, _, _)| *v >= avg - TIE_TOL);
            if candidates.iter().all(|(v, _, _)| avg >= *v - TIE_TOL) {
                candidates.push((avg, p, points));
            }
        }
        per_period.push((p, best));
    }
    let m_value = candidates
        .iter()
        .map(|(v, _, _)| *v)
        .fold(f64::NEG_INFINITY, f64::max);
    candidates.retain(|(v, _, _)| *v >= m_value - TIE_TOL);
    let (_, period, orbit) = candidates
        .iter()
        .find(|(v, _, _)| *v == m_value)
        .cloned()
        .expect("period 1 always contributes an orbit");
    Ok(OrbitResult {
        m_value,
        period,
        orbit,
        per_period,
        maximizers: candidates.into_iter().map(|(_, _, o)| o).collect(),
    })
}

/// Closed-form calibrated subaction sampled on `n` points, sup-zero.
///
/// * quadratic (either shift) under `-2x`:
///   `max(-x^2/3 + x/9, -x^2/3 + 5x/9 - 2/9)`
/// * the piecewise-linear `example-ex` under `2x`: `-(2/3)|2x - 1|`
/// * constants: `0`
pub fn analytic_subaction(
    potential: &PotentialSpec,
    map: CircleMap,
    n: usize,
) -> Result<GridFunction> {
    let u = match (&potential.kind, map) {
        (PotentialKind::Quadratic | PotentialKind::QuadraticShifted, CircleMap::MinusDoubling) => {
            GridFunction::from_fn(n, quadratic_subaction)?
        }
        (PotentialKind::ExampleEx, CircleMap::Doubling) => {
            GridFunction::from_fn(n, |x| -(2.0 / 3.0) * (2.0 * x - 1.0).abs())?
        }
        (PotentialKind::Constant(_), _) => GridFunction::zeros(n)?,
        _ => {
            return Err(Error::UnsupportedKind {
                potential: potential.name.clone(),
                map: map.to_string(),
            })
        }
    };
    Ok(u.sup_normalized())
}

/// Unnormalized closed form for the quadratic potential under `-2x`.
pub fn quadratic_subaction(x: f64) -> f64 {
    let base = -x * x / 3.0;
    (base + x / 9.0).max(base + 5.0 * x / 9.0 - 2.0 / 9.0)
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossCheck {
    pub m_estimate: f64,
    pub m_oracle: f64,
    pub m_gap: f64,
    /// Quotient distance to the closed-form subaction, when one exists.
    pub u_gap: Option<f64>,
    pub oracle: OrbitResult,
}

pub fn cross_check(
    potential: &PotentialSpec,
    map: CircleMap,
    report: &SolveReport,
    pmax: u32,
) -> Result<CrossCheck> {
    let oracle = periodic_m(potential, map, pmax)?;
    let u_gap = match analytic_subaction(potential, map, report.u.n()) {
        Ok(u) => Some(report.u.quotient_dist(&u)?),
        Err(Error::UnsupportedKind { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(CrossCheck {
        m_estimate: report.m_estimate,
        m_oracle: oracle.m_value,
        m_gap: (report.m_estimate - oracle.m_value).abs(),
        u_gap,
        oracle,
    })
}
