//! The expanding circle maps `x -> 2x` and `x -> -2x` (mod 1), their two
//! inverse branches, and closed-form enumeration of periodic points.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::circlefn::wrap_unit;
use crate::error::{Error, Result};

/// Largest period accepted by [`CircleMap::periodic_points`] by default.
pub const DEFAULT_MAX_PERIOD: u32 = 20;

/// Hard limit: `2^p + 1` must fit comfortably in a `u64` orbit computation.
const PERIOD_LIMIT: u32 = 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CircleMap {
    /// `T(x) = 2x mod 1`, branches `(x + 0)/2` and `(x + 1)/2`.
    Doubling,
    /// `T(x) = -2x mod 1`, branches `(1 - x)/2` and `(2 - x)/2`.
    MinusDoubling,
}

/// Which inverse branch realizes a maximum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    First,
    Second,
}

impl CircleMap {
    pub fn forward(self, x: f64) -> f64 {
        match self {
            CircleMap::Doubling => wrap_unit(2.0 * x),
            CircleMap::MinusDoubling => wrap_unit(-2.0 * x),
        }
    }

    pub fn branch(self, branch: Branch, x: f64) -> f64 {
        let x = wrap_unit(x);
        let y = match (self, branch) {
            (CircleMap::Doubling, Branch::First) => 0.5 * x,
            (CircleMap::Doubling, Branch::Second) => 0.5 * (x + 1.0),
            (CircleMap::MinusDoubling, Branch::First) => 0.5 * (1.0 - x),
            (CircleMap::MinusDoubling, Branch::Second) => 0.5 * (2.0 - x),
        };
        wrap_unit(y)
    }

    /// `(tau_1(x), tau_2(x))`, both in `[0, 1)`.
    pub fn preimages(self, x: f64) -> (f64, f64) {
        (
            self.branch(Branch::First, x),
            self.branch(Branch::Second, x),
        )
    }

    /// Preimages of the grid point `j/n` as half-grid indices `k`, meaning
    /// the points `k / (2n)`, each reduced modulo `2n`.
    pub(crate) fn preimage_half_indices(self, j: usize, n: usize) -> (usize, usize) {
        let j = j % n;
        match self {
            CircleMap::Doubling => (j, j + n),
            CircleMap::MinusDoubling => ((n - j) % (2 * n), (2 * n - j) % (2 * n)),
        }
    }

    /// Image of the grid point `j/n` as a grid index; exact because the
    /// image of a grid point is again a grid point.
    pub(crate) fn forward_index(self, j: usize, n: usize) -> usize {
        match self {
            CircleMap::Doubling => (2 * j) % n,
            CircleMap::MinusDoubling => (n - (2 * j) % n) % n,
        }
    }

    /// The integer `q` with `T^p(x) = x` iff `x = j/q`: `2^p - 1` for the
    /// doubling map and `|(-2)^p - 1|` for the minus variant.
    pub fn period_denominator(self, p: u32) -> Result<u64> {
        if p == 0 || p > PERIOD_LIMIT {
            return Err(Error::PeriodOutOfRange {
                period: p,
                max: PERIOD_LIMIT,
            });
        }
        let pow = 1u64 << p;
        Ok(match self {
            CircleMap::Doubling => pow - 1,
            CircleMap::MinusDoubling if p % 2 == 0 => pow - 1,
            CircleMap::MinusDoubling => pow + 1,
        })
    }

    /// `T` acting on numerators of `j/q`.
    pub fn forward_rational(self, j: u64, q: u64) -> u64 {
        let doubled = (2 * j) % q;
        match self {
            CircleMap::Doubling => doubled,
            CircleMap::MinusDoubling => (q - doubled) % q,
        }
    }

    /// All solutions of `T^p(x) = x` in `[0, 1)`, as `j/q` in increasing
    /// order. Points of smaller period dividing `p` are included.
    pub fn periodic_points(self, p: u32) -> Result<Vec<f64>> {
        self.periodic_points_bounded(p, DEFAULT_MAX_PERIOD)
    }

    pub fn periodic_points_bounded(self, p: u32, max_period: u32) -> Result<Vec<f64>> {
        if p == 0 || p > max_period.min(PERIOD_LIMIT) {
            return Err(Error::PeriodOutOfRange {
                period: p,
                max: max_period.min(PERIOD_LIMIT),
            });
        }
        let q = self.period_denominator(p)?;
        Ok((0..q).map(|j| j as f64 / q as f64).collect())
    }

    pub fn name(self) -> &'static str {
        match self {
            CircleMap::Doubling => "doubling",
            CircleMap::MinusDoubling => "minus-doubling",
        }
    }
}

impl fmt::Display for CircleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CircleMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "doubling" => Ok(CircleMap::Doubling),
            "minus-doubling" => Ok(CircleMap::MinusDoubling),
            other => Err(Error::InvalidArgument(format!(
                "unknown map {other:?}, expected doubling or minus-doubling"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MAPS: [CircleMap; 2] = [CircleMap::Doubling, CircleMap::MinusDoubling];

    fn circle_gap(a: f64, b: f64) -> f64 {
        let d = wrap_unit(a - b);
        d.min(1.0 - d)
    }

    #[test]
    fn forward_examples() {
        assert_eq!(CircleMap::Doubling.forward(1.0 / 3.0), 2.0 / 3.0);
        assert!(circle_gap(CircleMap::MinusDoubling.forward(1.0 / 3.0), 1.0 / 3.0) < 1e-15);
        assert_eq!(CircleMap::Doubling.forward(0.0), 0.0);
        assert_eq!(CircleMap::MinusDoubling.forward(0.0), 0.0);
    }

    #[test]
    fn preimage_examples() {
        assert_eq!(CircleMap::Doubling.preimages(0.0), (0.0, 0.5));
        let (a, b) = CircleMap::Doubling.preimages(1.0 / 3.0);
        assert!((a - 1.0 / 6.0).abs() < 1e-15 && (b - 2.0 / 3.0).abs() < 1e-15);
        let (a, b) = CircleMap::MinusDoubling.preimages(2.0 / 3.0);
        assert!((a - 1.0 / 6.0).abs() < 1e-15);
        assert!((b - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn branches_invert_forward() {
        for map in MAPS {
            for i in 0..1000 {
                let x = i as f64 / 1000.0 + 1e-4;
                let (a, b) = map.preimages(x);
                assert!((0.0..1.0).contains(&a) && (0.0..1.0).contains(&b));
                assert!(circle_gap(map.forward(a), x) < 1e-12);
                assert!(circle_gap(map.forward(b), x) < 1e-12);
                // images of the branches are disjoint half circles
                assert!(circle_gap(a, b) > 0.5 - 1e-12);
            }
        }
    }

    #[test]
    fn half_indices_agree_with_branches() {
        let n = 36;
        for map in MAPS {
            for j in 0..n {
                let (ka, kb) = map.preimage_half_indices(j, n);
                let (a, b) = map.preimages(j as f64 / n as f64);
                assert!(circle_gap(ka as f64 / (2 * n) as f64, a) < 1e-14);
                assert!(circle_gap(kb as f64 / (2 * n) as f64, b) < 1e-14);
                let fwd = map.forward_index(j, n);
                assert!(
                    circle_gap(fwd as f64 / n as f64, map.forward(j as f64 / n as f64)) < 1e-14
                );
            }
        }
    }

    #[test]
    fn periodic_point_examples() {
        assert_eq!(
            CircleMap::MinusDoubling.periodic_points(1).unwrap(),
            vec![0.0, 1.0 / 3.0, 2.0 / 3.0]
        );
        assert_eq!(CircleMap::Doubling.periodic_points(1).unwrap(), vec![0.0]);
        assert_eq!(
            CircleMap::Doubling.periodic_points(2).unwrap(),
            vec![0.0, 1.0 / 3.0, 2.0 / 3.0]
        );
    }

    #[test]
    fn periodic_points_are_periodic() {
        for map in MAPS {
            for p in 1..=12 {
                for x in map.periodic_points(p).unwrap() {
                    let mut y = x;
                    for _ in 0..p {
                        y = map.forward(y);
                    }
                    assert!(circle_gap(y, x) < 1e-9, "{map} p={p} x={x}");
                }
            }
        }
    }

    #[test]
    fn period_range_guard() {
        assert!(CircleMap::Doubling.periodic_points(0).is_err());
        assert!(CircleMap::Doubling.periodic_points(21).is_err());
        assert!(CircleMap::Doubling.period_denominator(63).is_err());
    }

    #[test]
    fn parses_names() {
        for map in MAPS {
            assert_eq!(map.name().parse::<CircleMap>().unwrap(), map);
        }
        assert!("tripling".parse::<CircleMap>().is_err());
    }
}
