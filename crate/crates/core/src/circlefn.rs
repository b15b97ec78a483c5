//! Grid-sampled functions on the circle `R/Z` and the quotient norm of
//! continuous functions modulo constants.
//!
//! A [`GridFunction`] with `n` samples stores `f(j/n)` for `j = 0..n`.
//! Off-grid values are obtained by periodic piecewise-linear interpolation,
//! so the sampled function is Lipschitz with constant
//! [`GridFunction::lipschitz_estimate`].

use rand::Rng;

use crate::error::{Error, Result};

/// Default grid size: divisible by 16, 9, 5 and 3, so sixteenths, thirds
/// and the bump breakpoints 0.65/0.7/0.75 are grid points.
pub const DEFAULT_GRID: usize = 1440;

/// Interpolation error budget `2 K / n` attached to continuum identities
/// checked on an `n`-point grid.
pub fn grid_slack(lipschitz: f64, n: usize) -> f64 {
    2.0 * lipschitz / n as f64
}

/// Reduces `x` to `[0, 1)`.
pub fn wrap_unit(x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    // rem_euclid can round up to exactly 1.0 for tiny negative inputs
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Samples of a real function on `n` equispaced points of the circle.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    samples: Vec<f64>,
}

/// The quotient norm `(max - min) / 2` together with the constant that
/// attains it, `shift = -(max + min) / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuotientRep {
    pub norm: f64,
    pub shift: f64,
}

impl GridFunction {
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::GridTooSmall(samples.len()));
        }
        if let Some((index, &value)) = samples.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(Self { samples })
    }

    /// Samples `f` at `j / n`.
    pub fn from_fn(n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new((0..n).map(|j| f(j as f64 / n as f64)).collect())
    }

    pub fn constant(n: usize, c: f64) -> Result<Self> {
        Self::new(vec![c; n])
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::constant(n, 0.0)
    }

    /// Random function with adjacent-sample slope at most `lipschitz`.
    ///
    /// Increments are drawn uniformly, centered so the walk closes up
    /// periodically, then rescaled so the steepest one has slope
    /// `lipschitz * u` for a uniform `u` in `(0, 1]`.
    pub fn random_lipschitz<R: Rng + ?Sized>(
        n: usize,
        lipschitz: f64,
        rng: &mut R,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::GridTooSmall(n));
        }
        let mut steps: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mean = steps.iter().sum::<f64>() / n as f64;
        steps.iter_mut().for_each(|s| *s -= mean);
        let steepest = steps.iter().fold(0.0_f64, |m, s| m.max(s.abs()));
        let h = 1.0 / n as f64;
        let scale = if steepest > 0.0 {
            lipschitz * h * rng.gen_range(f64::EPSILON..=1.0) / steepest
        } else {
            0.0
        };
        let offset = rng.gen_range(-1.0..1.0);
        let mut samples = Vec::with_capacity(n);
        let mut acc = offset;
        for s in &steps {
            samples.push(acc);
            acc += s * scale;
        }
        Self::new(samples)
    }

    pub fn n(&self) -> usize {
        self.samples.len()
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    /// Grid abscissa `j / n`.
    pub fn x(&self, j: usize) -> f64 {
        j as f64 / self.n() as f64
    }

    /// Periodic piecewise-linear evaluation; exact at grid points.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.n();
        let t = wrap_unit(x) * n as f64;
        let i = t.floor();
        let frac = t - i;
        let i = (i as usize) % n;
        if frac == 0.0 {
            return self.samples[i];
        }
        let next = self.samples[(i + 1) % n];
        self.samples[i] + frac * (next - self.samples[i])
    }

    /// Value at the half-grid point `k / (2n)`, for `k` taken modulo `2n`.
    ///
    /// Even `k` hits a sample, odd `k` is the midpoint average, which is
    /// what [`GridFunction::eval`] returns there up to rounding.
    pub(crate) fn at_half_index(&self, k: usize) -> f64 {
        let n = self.n();
        let k = k % (2 * n);
        let i = k / 2;
        if k % 2 == 0 {
            self.samples[i]
        } else {
            0.5 * (self.samples[i] + self.samples[(i + 1) % n])
        }
    }

    pub fn max(&self) -> f64 {
        self.samples
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.samples.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Index of the first largest sample.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (j, &v) in self.samples.iter().enumerate() {
            if v > self.samples[best] {
                best = j;
            }
        }
        best
    }

    pub fn argmin(&self) -> usize {
        let mut best = 0;
        for (j, &v) in self.samples.iter().enumerate() {
            if v < self.samples[best] {
                best = j;
            }
        }
        best
    }

    /// `max_j |f_j|`.
    pub fn sup_norm(&self) -> f64 {
        self.samples.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn quotient_norm(&self) -> QuotientRep {
        let (max, min) = (self.max(), self.min());
        QuotientRep {
            norm: (max - min) / 2.0,
            shift: -(max + min) / 2.0,
        }
    }

    /// Quotient norm of `self - other`.
    pub fn quotient_dist(&self, other: &GridFunction) -> Result<f64> {
        Ok(self.sub(other)?.quotient_norm().norm)
    }

    /// Largest adjacent-sample slope, including the wrap from `n-1` to `0`.
    pub fn lipschitz_estimate(&self) -> f64 {
        let n = self.n();
        let steepest = (0..n).fold(0.0_f64, |m, j| {
            m.max((self.samples[(j + 1) % n] - self.samples[j]).abs())
        });
        steepest * n as f64
    }

    /// Representative of the class with supremum zero.
    pub fn sup_normalized(&self) -> GridFunction {
        self.shifted(-self.max())
    }

    /// Representative `f + alpha_f` with `max = -min`.
    pub fn centered(&self) -> GridFunction {
        self.shifted(self.quotient_norm().shift)
    }

    pub fn shifted(&self, c: f64) -> GridFunction {
        self.map(|v| v + c)
    }

    pub fn scaled(&self, c: f64) -> GridFunction {
        self.map(|v| v * c)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> GridFunction {
        GridFunction {
            samples: self.samples.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn zip_with(
        &self,
        other: &GridFunction,
        f: impl Fn(f64, f64) -> f64,
    ) -> Result<GridFunction> {
        self.check_same_grid(other)?;
        Ok(GridFunction {
            samples: self
                .samples
                .iter()
                .zip(&other.samples)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, other: &GridFunction) -> Result<GridFunction> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &GridFunction) -> Result<GridFunction> {
        self.zip_with(other, |a, b| a - b)
    }

    /// `max_j |f_j - g_j|`.
    pub fn sup_dist(&self, other: &GridFunction) -> Result<f64> {
        Ok(self.sub(other)?.sup_norm())
    }

    pub fn check_same_grid(&self, other: &GridFunction) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::GridMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(())
    }
}
