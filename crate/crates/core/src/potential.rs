//! Catalog of potentials with analytic evaluators, plus file-backed
//! periodic piecewise-linear potentials.

use std::f64::consts::PI;
use std::fmt;
use std::path::Path;

use crate::circlefn::{wrap_unit, GridFunction};
use crate::dynamics::CircleMap;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum PotentialKind {
    /// `-(x - 1/2)^2`.
    Quadratic,
    /// `-(x - 1/2)^2 + 1/36`, normalized so that `m(A) = 0` under `-2x`.
    QuadraticShifted,
    /// `sin^2(2 pi x)`.
    SinSq,
    /// Piecewise linear: 0 at 1/4 and 3/4, -1 at 0, 1/2 and 1.
    ExampleEx,
    /// Piecewise linear: 0 at 1/8, 1/4, 3/4, 7/8 and -1 at 0, 3/16, 1/2,
    /// 13/16, 1. Witnesses that `G` is not a strict contraction.
    CounterEx1,
    Constant(f64),
    /// Periodic piecewise-linear interpolation of `(x, value)` breakpoints
    /// sorted by `x` in `[0, 1)`.
    Samples(Vec<(f64, f64)>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PotentialSpec {
    pub kind: PotentialKind,
    /// Display name, e.g. `quadratic` or `file:path.csv`.
    pub name: String,
}

const EXAMPLE_EX_BREAKS: [(f64, f64); 5] = [
    (0.0, -1.0),
    (0.25, 0.0),
    (0.5, -1.0),
    (0.75, 0.0),
    (1.0, -1.0),
];

const COUNTER_EX1_BREAKS: [(f64, f64); 9] = [
    (0.0, -1.0),
    (0.125, 0.0),
    (0.1875, -1.0),
    (0.25, 0.0),
    (0.5, -1.0),
    (0.75, 0.0),
    (0.8125, -1.0),
    (0.875, 0.0),
    (1.0, -1.0),
];

/// Linear interpolation on sorted breakpoints whose span covers `[0, 1)`.
fn piecewise_linear(breaks: &[(f64, f64)], x: f64) -> f64 {
    let x = wrap_unit(x);
    let i = breaks
        .partition_point(|(bx, _)| *bx <= x)
        .clamp(1, breaks.len() - 1);
    let (x0, y0) = breaks[i - 1];
    let (x1, y1) = breaks[i];
    if x1 == x0 {
        return y1;
    }
    y0 + (x - x0) * (y1 - y0) / (x1 - x0)
}

impl PotentialSpec {
    pub fn new(kind: PotentialKind) -> Self {
        let name = match &kind {
            PotentialKind::Quadratic => "quadratic".to_string(),
            PotentialKind::QuadraticShifted => "quadratic-shifted".to_string(),
            PotentialKind::SinSq => "sinsq".to_string(),
            PotentialKind::ExampleEx => "example-ex".to_string(),
            PotentialKind::CounterEx1 => "counterex1".to_string(),
            PotentialKind::Constant(c) if *c == 0.0 => "zero".to_string(),
            PotentialKind::Constant(c) => format!("const:{c}"),
            PotentialKind::Samples(_) => "samples".to_string(),
        };
        Self { kind, name }
    }

    pub fn quadratic() -> Self {
        Self::new(PotentialKind::Quadratic)
    }

    pub fn quadratic_shifted() -> Self {
        Self::new(PotentialKind::QuadraticShifted)
    }

    pub fn sin_sq() -> Self {
        Self::new(PotentialKind::SinSq)
    }

    pub fn example_ex() -> Self {
        Self::new(PotentialKind::ExampleEx)
    }

    pub fn counter_ex1() -> Self {
        Self::new(PotentialKind::CounterEx1)
    }

    pub fn constant(c: f64) -> Self {
        Self::new(PotentialKind::Constant(c))
    }

    /// Catalog entries with analytic evaluators.
    pub fn catalog() -> Vec<PotentialSpec> {
        vec![
            Self::quadratic(),
            Self::quadratic_shifted(),
            Self::sin_sq(),
            Self::example_ex(),
            Self::counter_ex1(),
        ]
    }

    /// The map each catalog entry is studied under.
    pub fn native_map(&self) -> CircleMap {
        match self.kind {
            PotentialKind::Quadratic | PotentialKind::QuadraticShifted => CircleMap::MinusDoubling,
            _ => CircleMap::Doubling,
        }
    }

    /// Breakpoints `(x, value)`; the list is sorted and made periodic.
    pub fn from_breakpoints(mut points: Vec<(f64, f64)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument(
                "potential needs at least one point".into(),
            ));
        }
        if points.iter().any(|(x, v)| !x.is_finite() || !v.is_finite()) {
            return Err(Error::InvalidArgument("non-finite breakpoint".into()));
        }
        for p in points.iter_mut() {
            p.0 = wrap_unit(p.0);
        }
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        points.dedup_by(|b, a| a.0 == b.0);
        let (first_x, first_v) = points[0];
        let (last_x, last_v) = points[points.len() - 1];
        // close the loop across the seam
        points.insert(0, (last_x - 1.0, last_v));
        points.push((first_x + 1.0, first_v));
        Ok(Self::new(PotentialKind::Samples(points)))
    }

    /// Reads `x,value` lines (optional header, `#` comments allowed).
    pub fn from_file(path: &Path) -> Result<Self> {
        let points = read_xy_file(path)?;
        let mut spec = Self::from_breakpoints(points)?;
        spec.name = format!("file:{}", path.display());
        Ok(spec)
    }

    pub fn eval(&self, x: f64) -> f64 {
        match &self.kind {
            PotentialKind::Quadratic => -(wrap_unit(x) - 0.5).powi(2),
            PotentialKind::QuadraticShifted => -(wrap_unit(x) - 0.5).powi(2) + 1.0 / 36.0,
            PotentialKind::SinSq => (2.0 * PI * x).sin().powi(2),
            PotentialKind::ExampleEx => piecewise_linear(&EXAMPLE_EX_BREAKS, x),
            PotentialKind::CounterEx1 => piecewise_linear(&COUNTER_EX1_BREAKS, x),
            PotentialKind::Constant(c) => *c,
            PotentialKind::Samples(points) => piecewise_linear(points, x),
        }
    }

    pub fn sample(&self, n: usize) -> Result<GridFunction> {
        GridFunction::from_fn(n, |x| self.eval(x))
    }

    /// Lipschitz constant of the analytic potential on the circle.
    pub fn lipschitz(&self) -> f64 {
        match &self.kind {
            PotentialKind::Quadratic | PotentialKind::QuadraticShifted => 1.0,
            PotentialKind::SinSq => 2.0 * PI,
            PotentialKind::ExampleEx => 4.0,
            PotentialKind::CounterEx1 => 16.0,
            PotentialKind::Constant(_) => 0.0,
            PotentialKind::Samples(points) => points
                .windows(2)
                .filter(|w| w[1].0 > w[0].0)
                .map(|w| ((w[1].1 - w[0].1) / (w[1].0 - w[0].0)).abs())
                .fold(0.0, f64::max),
        }
    }
}

impl fmt::Display for PotentialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl std::str::FromStr for PotentialSpec {
    type Err = Error;

    /// Catalog names, `zero`, `const:C`, or `file:PATH`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quadratic" => Ok(Self::quadratic()),
            "quadratic-shifted" => Ok(Self::quadratic_shifted()),
            "sinsq" => Ok(Self::sin_sq()),
            "example-ex" => Ok(Self::example_ex()),
            "counterex1" => Ok(Self::counter_ex1()),
            "zero" => Ok(Self::constant(0.0)),
            other => {
                if let Some(path) = other.strip_prefix("file:") {
                    Self::from_file(Path::new(path))
                } else if let Some(c) = other.strip_prefix("const:") {
                    c.parse::<f64>()
                        .ok()
                        .filter(|c| c.is_finite())
                        .map(Self::constant)
                        .ok_or_else(|| Error::InvalidArgument(format!("bad constant {c:?}")))
                } else {
                    Err(Error::InvalidArgument(format!(
                        "unknown potential {other:?}, expected quadratic, quadratic-shifted, \
                         sinsq, example-ex, counterex1, zero, const:C or file:PATH"
                    )))
                }
            }
        }
    }
}

/// Loads a function on `n` grid points. A file with exactly the rows
/// `x = j/n` is taken sample by sample; anything else is read as periodic
/// piecewise-linear breakpoints and resampled.
pub fn read_function(path: &Path, n: usize) -> Result<GridFunction> {
    let points = read_xy_file(path)?;
    let on_grid = points.len() == n
        && points
            .iter()
            .enumerate()
            .all(|(j, (x, _))| (x - j as f64 / n as f64).abs() <= 1e-12);
    if on_grid {
        GridFunction::new(points.into_iter().map(|(_, v)| v).collect())
    } else {
        PotentialSpec::from_breakpoints(points)?.sample(n)
    }
}

/// Parses `x,value` lines. A non-numeric first line is taken as a header.
pub fn read_xy_file(path: &Path) -> Result<Vec<(f64, f64)>> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_xy(&text, path)
}

pub(crate) fn parse_xy(text: &str, path: &Path) -> Result<Vec<(f64, f64)>> {
    let mut points = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            path: path.to_path_buf(),
            line: idx + 1,
            message,
        };
        let mut cols = line.split(',').map(str::trim);
        let (Some(x), Some(v), None) = (cols.next(), cols.next(), cols.next()) else {
            return Err(parse_err("expected two columns `x,value`".into()));
        };
        match (x.parse::<f64>(), v.parse::<f64>()) {
            (Ok(x), Ok(v)) => points.push((x, v)),
            _ if points.is_empty() && idx == first_content_line(text) => continue,
            _ => return Err(parse_err(format!("not a number pair: {line:?}"))),
        }
    }
    if points.is_empty() {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            line: 0,
            message: "no data rows".into(),
        });
    }
    Ok(points)
}

fn first_content_line(text: &str) -> usize {
    text.lines()
        .position(|l| {
            let l = l.trim();
            !l.is_empty() && !l.starts_with('#')
        })
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_ex_anchors() {
        let a = PotentialSpec::example_ex();
        for x in [0.25, 0.75] {
            assert_eq!(a.eval(x), 0.0);
        }
        for x in [0.0, 0.5, 1.0] {
            assert_eq!(a.eval(x), -1.0);
        }
        assert!((a.eval(1.0 / 3.0) + 1.0 / 3.0).abs() < 1e-15);
        assert!((a.eval(2.0 / 3.0) + 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn counter_ex1_anchors() {
        let a = PotentialSpec::counter_ex1();
        for x in [0.125, 0.25, 0.75, 0.875] {
            assert_eq!(a.eval(x), 0.0);
        }
        for x in [0.0, 0.1875, 0.5, 0.8125, 1.0] {
            assert_eq!(a.eval(x), -1.0);
        }
        assert!((a.eval(0.15625) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn sampled_lipschitz_matches_analytic() {
        for spec in PotentialSpec::catalog() {
            let g = spec.sample(1440).unwrap();
            assert!(g.lipschitz_estimate() <= spec.lipschitz() + 1e-9, "{spec}");
        }
    }

    #[test]
    fn breakpoints_close_periodically() {
        let p = PotentialSpec::from_breakpoints(vec![(0.25, 1.0), (0.75, -1.0)]).unwrap();
        assert_eq!(p.eval(0.25), 1.0);
        assert_eq!(p.eval(0.5), 0.0);
        assert_eq!(p.eval(0.0), 0.0);
        assert_eq!(p.eval(0.875), -0.5);
        assert_eq!(p.lipschitz(), 4.0);
    }

    #[test]
    fn parse_with_header_and_errors() {
        let pts = parse_xy("x,value\n0,1\n0.5,2\n", Path::new("t")).unwrap();
        assert_eq!(pts, vec![(0.0, 1.0), (0.5, 2.0)]);
        assert!(parse_xy("0,1\nfoo,2\n", Path::new("t")).is_err());
        assert!(parse_xy("0,1,2\n", Path::new("t")).is_err());
        assert!(parse_xy("x,value\n", Path::new("t")).is_err());
    }

    #[test]
    fn names_round_trip() {
        for spec in PotentialSpec::catalog() {
            assert_eq!(spec.name.parse::<PotentialSpec>().unwrap(), spec);
        }
        assert_eq!("zero".parse::<PotentialSpec>().unwrap().eval(0.3), 0.0);
        assert_eq!("const:2.5".parse::<PotentialSpec>().unwrap().eval(0.3), 2.5);
        assert!("cubic".parse::<PotentialSpec>().is_err());
    }
}
