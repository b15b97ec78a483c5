//! Genericity tests for pairs of functions and the operator bounds that
//! control the contraction of `G` near its fixed point.

use serde::Serialize;

use crate::circlefn::{grid_slack, GridFunction};
use crate::dynamics::{Branch, CircleMap};
use crate::error::{Error, Result};
use crate::operators::System;

/// `beta(x, f, g) = (N - |h(x)|) + min_i (N - |h(tau_i(x))|)` with
/// `N = |f - g|` and `h = (f - g) + alpha_{f-g}` the centered difference.
///
/// Zero exactly when `|h|` peaks at `x` and at one of its preimages.
pub fn beta(map: CircleMap, x: f64, f: &GridFunction, g: &GridFunction) -> Result<f64> {
    let h = f.sub(g)?.centered();
    let norm = h.quotient_norm().norm;
    let (a, b) = map.preimages(x);
    let side = |y: f64| norm - h.eval(y).abs();
    Ok(side(x) + side(a).min(side(b)))
}

/// [`beta`] at every grid point.
pub fn beta_profile(map: CircleMap, f: &GridFunction, g: &GridFunction) -> Result<GridFunction> {
    let h = f.sub(g)?.centered();
    let norm = h.quotient_norm().norm;
    let n = h.n();
    GridFunction::new(
        (0..n)
            .map(|j| {
                let (ka, kb) = map.preimage_half_indices(j, n);
                let at = norm - h.samples()[j].abs();
                at + (norm - h.at_half_index(ka).abs()).min(norm - h.at_half_index(kb).abs())
            })
            .collect(),
    )
}

#[derive(Debug, Clone, Serialize)]
pub struct GenericityReport {
    pub norm: f64,
    pub tolerance: f64,
    /// Grid indices where the centered difference is within `tolerance`
    /// of its extreme value.
    pub maximizers: Vec<usize>,
    /// Maximizers `r` with `(f-g)(r)` matching `(f-g)(tau_i(r))`.
    pub violations: Vec<usize>,
    pub in_set: bool,
    /// `f - g` is constant, so every point is a maximizer.
    pub degenerate: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sides {
    /// Only maximizers of `h` (not of `-h`).
    #[default]
    Positive,
    Both,
}

/// `1e-8` relative to the quotient norm.
pub fn default_tolerance(f: &GridFunction, g: &GridFunction) -> Result<f64> {
    Ok(1e-8 * f.quotient_dist(g)?)
}

/// Tests whether `(f, g)` avoids branch-coincident maximizers.
pub fn generic_membership(
    map: CircleMap,
    f: &GridFunction,
    g: &GridFunction,
    tol: f64,
    sides: Sides,
) -> Result<GenericityReport> {
    if tol < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be >= 0, got {tol}"
        )));
    }
    let h = f.sub(g)?.centered();
    let norm = h.quotient_norm().norm;
    let n = h.n();
    let mut maximizers = Vec::new();
    let mut violations = Vec::new();
    for j in 0..n {
        let v = h.samples()[j];
        let positive = v >= norm - tol;
        let negative = sides == Sides::Both && v <= -norm + tol;
        if !(positive || negative) {
            continue;
        }
        maximizers.push(j);
        let (ka, kb) = map.preimage_half_indices(j, n);
        if (v - h.at_half_index(ka)).abs() <= tol || (v - h.at_half_index(kb)).abs() <= tol {
            violations.push(j);
        }
    }
    Ok(GenericityReport {
        norm,
        tolerance: tol,
        in_set: violations.is_empty(),
        maximizers,
        violations,
        degenerate: norm == 0.0,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct T1Report {
    /// `|f - u|`.
    pub distance: f64,
    /// `|H(f) - f|_0` with `A` normalized so that `c_u = 0`.
    pub beta_t: f64,
    /// `|G(f) - u + (d + c_f)|_0`.
    pub shifted_gap: f64,
    pub slack: f64,
    /// `beta_t <= 2 |f - u| + slack`.
    pub upper_holds: bool,
    /// `shifted_gap <= |f - u| + slack`.
    pub fundamental_holds: bool,
    /// `shifted_gap >= |f - u| - beta_t - slack`.
    pub lower_holds: bool,
}

/// Checks the `H - Id` bounds near the reference subaction `u`.
///
/// The potential is shifted internally so that `u` (taken sup-zero) has
/// `c_u = 0`.
pub fn t1_bounds(system: &System, f: &GridFunction, u: &GridFunction) -> Result<T1Report> {
    let u = u.sup_normalized();
    let c_u = system.c_of(&u)?;
    let normalized = system.with_potential_shift(-2.0 * c_u);
    let rep = f.sub(&u)?.quotient_norm();
    let (h, c_f) = normalized.h_and_c(f)?;
    let beta_t = h.sup_dist(f)?;
    let g = h.shifted(-c_f);
    let shifted_gap = g.sub(&u)?.shifted(rep.shift + c_f).sup_norm();
    let k = system
        .potential()
        .lipschitz_estimate()
        .max(f.lipschitz_estimate())
        .max(u.lipschitz_estimate());
    let slack = grid_slack(k, f.n());
    Ok(T1Report {
        distance: rep.norm,
        beta_t,
        shifted_gap,
        slack,
        upper_holds: beta_t <= 2.0 * rep.norm + slack,
        fundamental_holds: shifted_gap <= rep.norm + slack,
        lower_holds: shifted_gap >= rep.norm - beta_t - slack,
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ZeroPoint {
    pub x: f64,
    /// Nearest grid index at or below `x`.
    pub index: usize,
    /// `(H(f) - f)` at `x`, linearly interpolated.
    pub value: f64,
}

/// A point where `H(f) - f` vanishes: the first grid point with
/// `|H(f) - f| <= tol`, else the interpolated root of the first sign change.
///
/// At such a point `f(z) = max_{T(y)=z} (A + f)(y)`. The potential should
/// be normalized to `m(A) = 0` for a zero to be guaranteed.
pub fn h_identity_zero(system: &System, f: &GridFunction, tol: f64) -> Result<ZeroPoint> {
    let p = system.h_op(f)?.sub(f)?;
    let n = p.n();
    let s = p.samples();
    if let Some(j) = (0..n).find(|&j| s[j].abs() <= tol) {
        return Ok(ZeroPoint {
            x: p.x(j),
            index: j,
            value: s[j],
        });
    }
    for j in 0..n {
        let (a, b) = (s[j], s[(j + 1) % n]);
        if a * b < 0.0 {
            let t = a / (a - b);
            let x = (j as f64 + t) / n as f64;
            return Ok(ZeroPoint {
                x: x.rem_euclid(1.0),
                index: j,
                value: p.eval(x),
            });
        }
    }
    Err(Error::NotFound {
        min_abs: s.iter().fold(f64::INFINITY, |m, v| m.min(v.abs())),
    })
}

/// Smooth function with maxima at 3/8, 3/4 and 7/8; since
/// `tau_1(3/4) = 3/8` and `tau_2(3/4) = 7/8` under the doubling map, the
/// pair `(f, 0)` has a branch-coincident maximizer at 3/4.
pub fn tied_maximizer_example(x: f64) -> f64 {
    let x = crate::circlefn::wrap_unit(x);
    if x < 0.375 {
        16.0 / 3.0 * x - 2.0
    } else if x < 0.75 {
        32.0 * x * x - 36.0 * x + 9.0
    } else if x <= 0.875 {
        64.0 * x * x - 104.0 * x + 42.0
    } else {
        -16.0 * x + 14.0
    }
}

/// Branch through which `x` is reached from `T(x)`.
pub fn branch_of(map: CircleMap, x: f64) -> Branch {
    let (a, _) = map.preimages(map.forward(x));
    let d = crate::circlefn::wrap_unit(a - x);
    if d.min(1.0 - d) < 1e-12 {
        Branch::First
    } else {
        Branch::Second
    }
}
