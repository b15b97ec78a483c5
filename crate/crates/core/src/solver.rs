//! Fixed-point iteration `f_{k+1} = G(f_k)` for calibrated subactions.

use serde::Serialize;

use crate::circlefn::{GridFunction, DEFAULT_GRID};
use crate::dynamics::CircleMap;
use crate::error::{Error, Result};
use crate::operators::System;
use crate::potential::PotentialSpec;

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_ITERS: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub enum InitialGuess {
    Zero,
    /// Start from the sampled potential itself.
    Potential,
    /// Caller-supplied samples, e.g. read from a function CSV.
    Given(GridFunction),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveConfig {
    pub n: usize,
    /// Stop once the quotient distance between consecutive iterates is at
    /// most this.
    pub tol: f64,
    pub max_iters: usize,
    pub initial: InitialGuess,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            n: DEFAULT_GRID,
            tol: DEFAULT_TOL,
            max_iters: DEFAULT_MAX_ITERS,
            initial: InitialGuess::Zero,
        }
    }
}

impl SolveConfig {
    pub fn with_n(mut self, n: usize) -> Self {
        self.n = n;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_max_iters(mut self, max_iters: usize) -> Self {
        self.max_iters = max_iters;
        self
    }

    pub fn with_initial(mut self, initial: InitialGuess) -> Self {
        self.initial = initial;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "tol must be > 0, got {}",
                self.tol
            )));
        }
        if self.max_iters == 0 {
            return Err(Error::InvalidArgument("max_iters must be >= 1".into()));
        }
        if self.n < 2 {
            return Err(Error::GridTooSmall(self.n));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    /// Last iterate; its largest sample is 0.
    #[serde(skip)]
    pub u: GridFunction,
    pub iterations: usize,
    /// `|f_{k+1} - f_k|` in the quotient norm, one entry per iteration.
    pub residuals: Vec<f64>,
    /// `c_{f_k}` for each iterate the map was applied to.
    pub c_series: Vec<f64>,
    /// `c_u` of the returned iterate.
    pub c_final: f64,
    /// `2 c_u`.
    pub m_estimate: f64,
    pub converged: bool,
}

/// Solves for the potential sampled on `cfg.n` points.
pub fn solve(potential: &PotentialSpec, map: CircleMap, cfg: &SolveConfig) -> Result<SolveReport> {
    cfg.validate()?;
    let system = System::new(map, potential.sample(cfg.n)?);
    solve_system(&system, cfg)
}

pub fn solve_system(system: &System, cfg: &SolveConfig) -> Result<SolveReport> {
    solve_observed(system, cfg, |_, _| {})
}

/// Like [`solve_system`], calling `observe(k, f_k)` on every iterate,
/// starting with the initial guess at `k = 0`.
pub fn solve_observed(
    system: &System,
    cfg: &SolveConfig,
    mut observe: impl FnMut(usize, &GridFunction),
) -> Result<SolveReport> {
    cfg.validate()?;
    if system.n() != cfg.n {
        return Err(Error::GridMismatch {
            left: system.n(),
            right: cfg.n,
        });
    }
    let mut f = match &cfg.initial {
        InitialGuess::Zero => GridFunction::zeros(cfg.n)?,
        InitialGuess::Potential => system.potential().clone(),
        InitialGuess::Given(g) => {
            system.potential().check_same_grid(g)?;
            g.clone()
        }
    };
    observe(0, &f);

    let mut residuals = Vec::new();
    let mut c_series = Vec::new();
    let mut converged = false;
    for k in 0..cfg.max_iters {
        let (next, c) = system.g_and_c(&f)?;
        let residual = next.quotient_dist(&f)?;
        residuals.push(residual);
        c_series.push(c);
        f = next;
        observe(k + 1, &f);
        if residual <= cfg.tol {
            converged = true;
            break;
        }
    }
    let c_final = system.c_of(&f)?;
    Ok(SolveReport {
        u: f,
        iterations: residuals.len(),
        residuals,
        c_series,
        c_final,
        m_estimate: 2.0 * c_final,
        converged,
    })
}

/// Grid indices where the residual `R` is below `tol`: candidates for
/// the support of maximizing measures.
pub fn mather_candidates(
    system: &System,
    u: &GridFunction,
    m: f64,
    tol: f64,
) -> Result<Vec<usize>> {
    let r = system.residual(u, m)?;
    Ok(r.samples()
        .iter()
        .enumerate()
        .filter(|(_, &v)| v < tol)
        .map(|(j, _)| j)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_potential_is_immediate() {
        let cfg = SolveConfig::default().with_n(64);
        let report = solve(&PotentialSpec::constant(0.0), CircleMap::Doubling, &cfg).unwrap();
        assert!(report.converged);
        assert!(report.iterations <= 2);
        assert_eq!(report.m_estimate, 0.0);
        assert_eq!(report.u.sup_norm(), 0.0);
        assert_eq!(report.residuals.len(), report.iterations);
    }

    #[test]
    fn constant_potential_gives_its_value() {
        let cfg = SolveConfig::default().with_n(32);
        let report = solve(
            &PotentialSpec::constant(-0.3),
            CircleMap::MinusDoubling,
            &cfg,
        )
        .unwrap();
        assert!((report.m_estimate + 0.3).abs() < 1e-15);
    }

    #[test]
    fn non_convergence_is_flagged() {
        let cfg = SolveConfig::default()
            .with_n(90)
            .with_tol(1e-15)
            .with_max_iters(3);
        let report = solve(&PotentialSpec::sin_sq(), CircleMap::Doubling, &cfg).unwrap();
        assert!(!report.converged);
        assert_eq!(report.iterations, 3);
        assert!(*report.residuals.last().unwrap() > cfg.tol);
    }

    #[test]
    fn rejects_bad_config() {
        let spec = PotentialSpec::quadratic();
        let map = CircleMap::Doubling;
        assert!(solve(&spec, map, &SolveConfig::default().with_tol(0.0)).is_err());
        assert!(solve(&spec, map, &SolveConfig::default().with_max_iters(0)).is_err());
        let bad_initial = SolveConfig::default()
            .with_initial(InitialGuess::Given(GridFunction::zeros(10).unwrap()));
        assert!(solve(&spec, map, &bad_initial).is_err());
    }

    #[test]
    fn restart_from_output_is_idempotent() {
        let cfg = SolveConfig::default().with_n(360);
        let map = CircleMap::MinusDoubling;
        let first = solve(&PotentialSpec::quadratic(), map, &cfg).unwrap();
        assert!(first.converged);
        let again = solve(
            &PotentialSpec::quadratic(),
            map,
            &cfg.clone()
                .with_initial(InitialGuess::Given(first.u.clone())),
        )
        .unwrap();
        assert!(again.converged);
        assert!(again.iterations <= 2);
    }

    #[test]
    fn mather_candidates_of_zero_potential_cover_the_grid() {
        let system = System::new(CircleMap::Doubling, GridFunction::zeros(40).unwrap());
        let u = GridFunction::zeros(40).unwrap();
        assert_eq!(
            mather_candidates(&system, &u, 0.0, 1e-12).unwrap().len(),
            40
        );
    }
}
