//! Command-line front end: `solve`, `oracle`, `perturb`, `generic-check`
//! and `rates`. Every command prints a JSON summary with a `config` echo;
//! function data goes to `x,value` CSV files.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::analysis::{default_tolerance, generic_membership, Sides};
use crate::circlefn::GridFunction;
use crate::dynamics::CircleMap;
use crate::error::{Error, Result};
use crate::operators::System;
use crate::oracle::{analytic_subaction, periodic_m};
use crate::perturblab::{counterexample1, rate_series, support_check, Bump, BumpExperiment};
use crate::potential::{read_function, PotentialSpec};
use crate::solver::{solve_system, InitialGuess, SolveConfig, SolveReport};

pub const DEFAULT_SEED: u64 = 20240101;

#[derive(Debug, Parser)]
#[command(
    name = "subaction",
    version,
    about = "Calibrated subactions of expanding circle maps"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// quadratic, quadratic-shifted, sinsq, example-ex, counterex1, zero,
    /// const:C or file:PATH
    #[arg(long, global = true)]
    pub potential: Option<String>,
    /// doubling or minus-doubling; defaults to the potential's usual map
    #[arg(long, global = true)]
    pub map: Option<CircleMap>,
    #[arg(long, global = true, default_value_t = 1440)]
    pub n: usize,
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = 10_000)]
    pub max_iters: usize,
    /// Function CSV output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// JSON summary output (also printed to stdout)
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Iterate G to a calibrated subaction
    Solve {
        /// zero, potential, random or file:PATH
        #[arg(long, default_value = "zero")]
        initial: String,
    },
    /// Best periodic-orbit average up to a period bound
    Oracle {
        #[arg(long, default_value_t = 16)]
        pmax: u32,
    },
    /// Bump experiments around a subaction
    Perturb {
        #[arg(long, value_enum)]
        experiment: Experiment,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        center: Option<f64>,
        /// Bump slope (support experiment)
        #[arg(long)]
        slope: Option<f64>,
        /// Function to perturb (support experiment); defaults to the solved subaction
        #[arg(long)]
        f: Option<PathBuf>,
    },
    /// Test whether the pair (f, g) avoids branch-coincident maximizers
    GenericCheck {
        #[arg(long)]
        f: PathBuf,
        /// file, zero, or u for the solved subaction
        #[arg(long, default_value = "zero")]
        g: String,
        /// Maximizer tolerance; defaults to 1e-8 |f - g|
        #[arg(long)]
        gen_tol: Option<f64>,
        /// Count minimizers of the centered difference as well
        #[arg(long)]
        both_sides: bool,
    },
    /// Distance to the reference subaction along a solve
    Rates {
        #[arg(long, default_value = "zero")]
        initial: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    /// Bump at 0.7 on the quadratic subaction: ratio 1/2
    L6,
    /// Bump at the fixed point 2/3: ratio 1
    E3,
    /// The pair (A, 0) with |G f - G g| = |f - g| = 1/2
    Counterexample1,
    /// Support of the change in psi and H under a bump
    Support,
}

/// Exit status for a failed command.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidArgument(_)
        | Error::Parse { .. }
        | Error::Io { .. }
        | Error::GridTooSmall(_)
        | Error::PeriodOutOfRange { .. }
        | Error::UnsupportedKind { .. } => 2,
        _ => 1,
    }
}

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(Outcome { summary, converged }) => {
            let text = format!(
                "{}\n",
                serde_json::to_string_pretty(&summary).expect("json values serialize")
            );
            // a closed pipe is not an error worth a panic
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if let Some(path) = &cli.common.report {
                if let Err(e) = write_file(path, &text) {
                    eprintln!("error: {e}");
                    return 2;
                }
            }
            if converged {
                0
            } else {
                eprintln!(
                    "error: no convergence within {} iterations",
                    cli.common.max_iters
                );
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

struct Outcome {
    summary: Value,
    converged: bool,
}

impl Outcome {
    fn done(summary: Value) -> Self {
        Self {
            summary,
            converged: true,
        }
    }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let c = &cli.common;
    if c.n < 2 {
        return Err(Error::GridTooSmall(c.n));
    }
    match &cli.command {
        Command::Solve { initial } => {
            let (spec, map) = resolve(c)?;
            let system = System::new(map, spec.sample(c.n)?);
            let cfg = solver_config(c, &system, initial)?;
            let report = solve_system(&system, &cfg)?;
            write_function(c.out.as_deref(), &report.u)?;
            let summary = solve_summary(
                &report,
                config_echo(c, "solve", &spec, map, json!({ "initial": initial })),
            );
            Ok(Outcome {
                summary,
                converged: report.converged,
            })
        }
        Command::Oracle { pmax } => {
            let (spec, map) = resolve(c)?;
            let r = periodic_m(&spec, map, *pmax)?;
            let per_period: Vec<Value> = r
                .per_period
                .iter()
                .map(|(p, best)| json!({ "period": p, "best": best }))
                .collect();
            Ok(Outcome::done(json!({
                "m_value": r.m_value,
                "period": r.period,
                "orbit": r.orbit,
                "maximizers": r.maximizers,
                "per_period": per_period,
                "config": config_echo(c, "oracle", &spec, map, json!({ "pmax": pmax })),
            })))
        }
        Command::Perturb {
            experiment,
            eps,
            center,
            slope,
            f,
        } => perturb(c, *experiment, *eps, *center, *slope, f.as_deref()),
        Command::GenericCheck {
            f,
            g,
            gen_tol,
            both_sides,
        } => {
            let (spec, map) = resolve(c)?;
            let fv = read_function(f, c.n)?;
            let gv = match g.as_str() {
                "zero" => GridFunction::zeros(c.n)?,
                "u" => {
                    let system = System::new(map, spec.sample(c.n)?);
                    converged_subaction(&system, &solver_config(c, &system, "zero")?)?
                }
                path => read_function(Path::new(path), c.n)?,
            };
            let tol = match gen_tol {
                Some(t) => *t,
                None => default_tolerance(&fv, &gv)?,
            };
            let sides = if *both_sides {
                Sides::Both
            } else {
                Sides::Positive
            };
            let r = generic_membership(map, &fv, &gv, tol, sides)?;
            let xs = |idx: &[usize]| idx.iter().map(|&j| fv.x(j)).collect::<Vec<_>>();
            Ok(Outcome::done(json!({
                "in_set": r.in_set,
                "degenerate": r.degenerate,
                "norm": r.norm,
                "tolerance": r.tolerance,
                "maximizers": xs(&r.maximizers),
                "violations": xs(&r.violations),
                "config": config_echo(c, "generic-check", &spec, map, json!({
                    "f": f.display().to_string(),
                    "g": g,
                    "both_sides": both_sides,
                })),
            })))
        }
        Command::Rates { initial } => {
            let (spec, map) = resolve(c)?;
            let system = System::new(map, spec.sample(c.n)?);
            let (u_ref, reference) = match analytic_subaction(&spec, map, c.n) {
                Ok(u) => (u, "analytic"),
                Err(Error::UnsupportedKind { .. }) => {
                    let tight = solver_config(c, &system, "zero")?.with_tol(1e-13);
                    (converged_subaction(&system, &tight)?, "solver")
                }
                Err(e) => return Err(e),
            };
            let cfg = solver_config(c, &system, initial)?;
            let series = rate_series(&system, &cfg, &u_ref)?;
            write_function(c.out.as_deref(), &series.report.u)?;
            let mut summary = solve_summary(
                &series.report,
                config_echo(
                    c,
                    "rates",
                    &spec,
                    map,
                    json!({ "initial": initial, "reference": reference }),
                ),
            );
            summary["ratio_series"] =
                json!(series.rates.iter().map(|r| r.ratio).collect::<Vec<_>>());
            summary["distances"] = json!(series.distances);
            Ok(Outcome {
                summary,
                converged: series.report.converged,
            })
        }
    }
}

fn perturb(
    c: &Common,
    experiment: Experiment,
    eps: Option<f64>,
    center: Option<f64>,
    slope: Option<f64>,
    f: Option<&Path>,
) -> Result<Outcome> {
    let name = experiment
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    match experiment {
        Experiment::L6 | Experiment::E3 | Experiment::Counterexample1 => {
            if c.potential.is_some() || c.map.is_some() {
                return Err(Error::InvalidArgument(format!(
                    "experiment {name} fixes its own potential and map"
                )));
            }
        }
        Experiment::Support => {}
    }
    match experiment {
        Experiment::L6 | Experiment::E3 => {
            let default_center = if experiment == Experiment::L6 {
                0.7
            } else {
                2.0 / 3.0
            };
            let exp = BumpExperiment::quadratic(
                c.n,
                center.unwrap_or(default_center),
                eps.unwrap_or(0.05),
            )?;
            let perturbed = exp.perturbed()?;
            write_function(c.out.as_deref(), &perturbed)?;
            let r = exp.run()?;
            Ok(Outcome::done(json!({
                "dist_before": r.dist_before,
                "dist_after": r.dist_after,
                "ratio": r.ratio,
                "slack": exp.slack(),
                "bump": exp.bump,
                "config": config_echo(c, "perturb", &PotentialSpec::quadratic_shifted(), exp.system.map(),
                    json!({ "experiment": name })),
            })))
        }
        Experiment::Counterexample1 => {
            let r = counterexample1(c.n)?;
            Ok(Outcome::done(json!({
                "dist_before": r.dist_before,
                "dist_after": r.dist_after,
                "config": config_echo(c, "perturb", &PotentialSpec::counter_ex1(), CircleMap::Doubling,
                    json!({ "experiment": name })),
            })))
        }
        Experiment::Support => {
            let (spec, map) = resolve_or(c, "sinsq")?;
            let system = System::new(map, spec.sample(c.n)?);
            let base = match f {
                Some(path) => read_function(path, c.n)?,
                None => converged_subaction(&system, &solver_config(c, &system, "zero")?)?,
            };
            let bump = Bump::triangular(
                eps.unwrap_or(0.1),
                center.unwrap_or(0.7),
                slope.unwrap_or(1.0),
            )?;
            let report = support_check(&system, &base, &bump, 1e-9)?;
            write_function(c.out.as_deref(), &crate::perturblab::perturb(&base, &bump)?)?;
            let mut summary = serde_json::to_value(&report).expect("report serializes");
            summary["holds"] = json!(report.holds());
            summary["config"] = config_echo(
                c,
                "perturb",
                &spec,
                map,
                json!({ "experiment": name, "f": f.map(|p| p.display().to_string()) }),
            );
            Ok(Outcome::done(summary))
        }
    }
}

fn resolve(c: &Common) -> Result<(PotentialSpec, CircleMap)> {
    resolve_or(c, "quadratic")
}

fn resolve_or(c: &Common, default_potential: &str) -> Result<(PotentialSpec, CircleMap)> {
    let spec: PotentialSpec = c
        .potential
        .as_deref()
        .unwrap_or(default_potential)
        .parse()?;
    let map = c.map.unwrap_or_else(|| spec.native_map());
    Ok((spec, map))
}

fn solver_config(c: &Common, system: &System, initial: &str) -> Result<SolveConfig> {
    let initial = match initial {
        "zero" => InitialGuess::Zero,
        "potential" => InitialGuess::Potential,
        "random" => {
            let k = system.potential().lipschitz_estimate().max(1.0);
            let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
            InitialGuess::Given(GridFunction::random_lipschitz(c.n, k, &mut rng)?)
        }
        other => match other.strip_prefix("file:") {
            Some(path) => InitialGuess::Given(read_function(Path::new(path), c.n)?),
            None => {
                return Err(Error::InvalidArgument(format!(
                    "unknown initial guess {other:?}, expected zero, potential, random or file:PATH"
                )))
            }
        },
    };
    Ok(SolveConfig::default()
        .with_n(c.n)
        .with_tol(c.tol)
        .with_max_iters(c.max_iters)
        .with_initial(initial))
}

fn converged_subaction(system: &System, cfg: &SolveConfig) -> Result<GridFunction> {
    let report = solve_system(system, cfg)?;
    if !report.converged {
        return Err(Error::PreconditionViolated(format!(
            "reference solve did not converge within {} iterations",
            cfg.max_iters
        )));
    }
    Ok(report.u)
}

fn config_echo(
    c: &Common,
    command: &str,
    spec: &PotentialSpec,
    map: CircleMap,
    extra: Value,
) -> Value {
    let mut v = json!({
        "command": command,
        "potential": spec.name,
        "map": map.name(),
        "n": c.n,
        "tol": c.tol,
        "max_iters": c.max_iters,
        "seed": c.seed,
    });
    if let (Value::Object(base), Value::Object(more)) = (&mut v, extra) {
        base.extend(more);
    }
    v
}

fn solve_summary(r: &SolveReport, config: Value) -> Value {
    json!({
        "m_estimate": r.m_estimate,
        "c_final": r.c_final,
        "iterations": r.iterations,
        "converged": r.converged,
        "residuals": r.residuals,
        "config": config,
    })
}

/// `x,value` header then one `j/n,f_j` row per sample, LF endings.
pub fn function_csv(f: &GridFunction) -> String {
    let mut s = String::with_capacity(48 * (f.n() + 1));
    s.push_str("x,value\n");
    for (j, v) in f.samples().iter().enumerate() {
        let _ = writeln!(s, "{:.16e},{:.16e}", f.x(j), v);
    }
    s
}

fn write_function(path: Option<&Path>, f: &GridFunction) -> Result<()> {
    match path {
        Some(path) => write_file(path, &function_csv(f)),
        None => Ok(()),
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
