//! Function-space operators built from a potential `A` and a circle map `T`:
//!
//! * `psi(f)(x) = max_{T(y)=x} (A + f)(y)`
//! * `hat_L(f) = psi(f) - m`
//! * `L(f) = psi(f) - sup psi(f)`
//! * `H(f) = (f + psi(f)) / 2`, `c_f = sup H(f)`
//! * `G(f) = H(f) - c_f`, the 1/2 Mann-type iteration map
//! * the residual `R(x) = u(T(x)) - u(x) - A(x) + m`
//!
//! Preimages of a grid point `j/n` are half-grid points, so `psi` reads the
//! piecewise-linear interpolant there exactly (a sample or the average of
//! two neighbours).

use serde::Serialize;

use crate::circlefn::GridFunction;
use crate::dynamics::{Branch, CircleMap};
use crate::error::Result;

/// A potential sampled on a grid together with the dynamics it lives on.
#[derive(Debug, Clone)]
pub struct System {
    map: CircleMap,
    potential: GridFunction,
}

/// Realizing branch at a grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Realizer {
    Branch1,
    Branch2,
    /// Both branches agree within tolerance: a turning point.
    Both,
}

#[derive(Debug, Clone)]
pub struct RealizerMap {
    pub labels: Vec<Realizer>,
    pub tolerance: f64,
}

impl RealizerMap {
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Grid indices labelled [`Realizer::Both`], plus indices `j` where the
    /// dominant branch differs from the one at `j - 1` (cyclically). The
    /// latter catches switches at the seam, where the branches trade places.
    pub fn turning_indices(&self) -> Vec<usize> {
        let n = self.n();
        (0..n)
            .filter(|&j| {
                let here = self.labels[j];
                let before = self.labels[(j + n - 1) % n];
                here == Realizer::Both || (before != Realizer::Both && before != here)
            })
            .collect()
    }

    pub fn turning_points(&self) -> Vec<f64> {
        let n = self.n() as f64;
        self.turning_indices()
            .into_iter()
            .map(|j| j as f64 / n)
            .collect()
    }

    /// Dominant branch at grid index `j`, `None` at a turning point.
    pub fn dominant(&self, j: usize) -> Option<Branch> {
        match self.labels[j % self.n()] {
            Realizer::Branch1 => Some(Branch::First),
            Realizer::Branch2 => Some(Branch::Second),
            Realizer::Both => None,
        }
    }
}

/// Ingredients of the sign test that gives a 1/2 contraction step.
///
/// `q = f - g + alpha_{f-g}`; `z1` maximizes `G(f) - G(g)`; `zbar` is the
/// preimage of `z1` realizing `psi(f)`. Opposite signs of `q(z1)` and
/// `q(zbar)` bound the top of `G(f) - G(g) + c_f - c_g + alpha_{f-g}` by
/// half the distance.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RateCondition {
    pub z1: f64,
    pub zbar: f64,
    pub q_at_z1: f64,
    pub q_at_zbar: f64,
    pub opposite_signs: bool,
}

impl System {
    pub fn new(map: CircleMap, potential: GridFunction) -> Self {
        Self { map, potential }
    }

    pub fn map(&self) -> CircleMap {
        self.map
    }

    pub fn potential(&self) -> &GridFunction {
        &self.potential
    }

    pub fn n(&self) -> usize {
        self.potential.n()
    }

    /// Same dynamics with the potential shifted by `c`.
    pub fn with_potential_shift(&self, c: f64) -> System {
        System::new(self.map, self.potential.shifted(c))
    }

    /// `(A + f)` at both preimages of every grid point.
    fn branch_values(&self, f: &GridFunction) -> Result<Vec<(f64, f64)>> {
        self.potential.check_same_grid(f)?;
        let n = self.n();
        Ok((0..n)
            .map(|j| {
                let (ka, kb) = self.map.preimage_half_indices(j, n);
                (
                    self.potential.at_half_index(ka) + f.at_half_index(ka),
                    self.potential.at_half_index(kb) + f.at_half_index(kb),
                )
            })
            .collect())
    }

    /// Ties resolve to the first branch.
    pub fn psi(&self, f: &GridFunction) -> Result<GridFunction> {
        let values = self.branch_values(f)?;
        GridFunction::new(
            values
                .into_iter()
                .map(|(a, b)| if a >= b { a } else { b })
                .collect(),
        )
    }

    pub fn hat_l(&self, f: &GridFunction, m: f64) -> Result<GridFunction> {
        Ok(self.psi(f)?.shifted(-m))
    }

    pub fn l_op(&self, f: &GridFunction) -> Result<GridFunction> {
        Ok(self.psi(f)?.sup_normalized())
    }

    /// `(H(f), c_f)` with `c_f` the largest sample of `H(f)`.
    pub fn h_and_c(&self, f: &GridFunction) -> Result<(GridFunction, f64)> {
        let psi = self.psi(f)?;
        let h = f.zip_with(&psi, |a, b| 0.5 * a + 0.5 * b)?;
        let c = h.max();
        Ok((h, c))
    }

    pub fn h_op(&self, f: &GridFunction) -> Result<GridFunction> {
        Ok(self.h_and_c(f)?.0)
    }

    /// `c_f = sup H(f)`.
    pub fn c_of(&self, f: &GridFunction) -> Result<f64> {
        Ok(self.h_and_c(f)?.1)
    }

    /// `G(f) = H(f) - c_f`; the largest sample of the result is exactly 0.
    pub fn g_op(&self, f: &GridFunction) -> Result<GridFunction> {
        let (h, c) = self.h_and_c(f)?;
        Ok(h.shifted(-c))
    }

    /// `G` together with the `c_f` it subtracted.
    pub fn g_and_c(&self, f: &GridFunction) -> Result<(GridFunction, f64)> {
        let (h, c) = self.h_and_c(f)?;
        Ok((h.shifted(-c), c))
    }

    /// `R(x_j) = u(T(x_j)) - u(x_j) - A(x_j) + m`.
    pub fn residual(&self, u: &GridFunction, m: f64) -> Result<GridFunction> {
        self.potential.check_same_grid(u)?;
        let n = self.n();
        let a = self.potential.samples();
        let s = u.samples();
        GridFunction::new(
            (0..n)
                .map(|j| s[self.map.forward_index(j, n)] - s[j] - a[j] + m)
                .collect(),
        )
    }

    pub fn realizers(&self, f: &GridFunction, tol: f64) -> Result<RealizerMap> {
        let labels = self
            .branch_values(f)?
            .into_iter()
            .map(|(a, b)| {
                if (a - b).abs() <= tol {
                    Realizer::Both
                } else if a > b {
                    Realizer::Branch1
                } else {
                    Realizer::Branch2
                }
            })
            .collect();
        Ok(RealizerMap {
            labels,
            tolerance: tol,
        })
    }

    pub fn rate_condition(&self, f: &GridFunction, g: &GridFunction) -> Result<RateCondition> {
        let diff = f.sub(g)?;
        let q = diff.centered();
        let gap = self.g_op(f)?.sub(&self.g_op(g)?)?;
        let n = self.n();
        let j = gap.argmax();
        let (va, vb) = self.branch_values(f)?[j];
        let (ka, kb) = self.map.preimage_half_indices(j, n);
        let k = if va >= vb { ka } else { kb };
        let q_at_z1 = q.samples()[j];
        let q_at_zbar = q.at_half_index(k);
        Ok(RateCondition {
            z1: j as f64 / n as f64,
            zbar: (k % (2 * n)) as f64 / (2 * n) as f64,
            q_at_z1,
            q_at_zbar,
            opposite_signs: q_at_z1 * q_at_zbar < 0.0,
        })
    }
}
