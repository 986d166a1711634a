//! Command-line front end for the `kepler` binary.
//!
//! Exit codes: 0 success, 1 precondition or I/O failure (and failed
//! `verify` suites), 2 malformed command line or config file. Reports go to
//! stdout, diagnostics to stderr.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::conserved::angular_momentum;
use crate::dynamics::{default_dt, integrate, KeplerSystem, Method, OrbitState, Trajectory};
use crate::error::KeplerError;
use crate::euclid::{ellipse_geometry, kepler3_check, kepler3_constant, EllipseGeometry};
use crate::hodograph::{
    construct_d_residual, fit_circle, membership_residual, predicted_center, predicted_radius,
    tangency_residual,
};
use crate::io;
use crate::newton::{newton_report, CenteredEllipse};
use crate::suites::{format_table, run_verify, VerifyConfig, NEWTON_SAMPLES};
use crate::vector::{plane_frame, Vec3};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{kind}: {0}", kind = .0.kind())]
    Kepler(#[from] KeplerError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "kepler",
    version,
    about = "Kepler two-body simulation and geometric orbit checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate an orbit, write its trajectory CSV and print its ellipse.
    Simulate(SimulateArgs),
    /// Run every invariant suite and print a pass/fail table.
    Verify(OrbitArgs),
    /// Write the velocity curve and optionally the two-panel SVG figure.
    Hodograph(HodographArgs),
    /// Two-center areal-speed check on a centered ellipse.
    Newton(NewtonArgs),
    /// Measure T²/a³ for a set of orbits.
    Kepler3(Kepler3Args),
}

/// Step size: `auto` or a fixed positive value.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum DtChoice {
    #[default]
    Auto,
    Fixed(f64),
}

fn parse_dt(s: &str) -> Result<DtChoice, String> {
    if s.trim().eq_ignore_ascii_case("auto") {
        return Ok(DtChoice::Auto);
    }
    s.trim()
        .parse::<f64>()
        .map(DtChoice::Fixed)
        .map_err(|_| format!("expected 'auto' or a number, got '{s}'"))
}

/// `x,y,z` without spaces.
pub fn parse_vec3(s: &str) -> Result<Vec3, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected a comma-separated triple, got '{s}'"));
    }
    let mut xyz = [0.0; 3];
    for (slot, part) in xyz.iter_mut().zip(&parts) {
        *slot = part
            .parse::<f64>()
            .map_err(|_| format!("'{part}' in '{s}' is not a number"))?;
    }
    Ok(Vec3::from(xyz))
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: KeplerError| e.to_string())
}

fn parse_f64(s: &str) -> Result<f64, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("'{s}' is not a number"))
}

/// Orbit and integration settings shared by the orbit commands. Every field
/// may also come from `--config`; flags win.
#[derive(Debug, Clone, Default, Args)]
pub struct OrbitArgs {
    /// key=value file with any of the flags below (without the dashes).
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Initial position, e.g. 1,0,0.
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub r0: Option<Vec3>,
    /// Initial velocity, e.g. 0,1,0.
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub v0: Option<Vec3>,
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<f64>,
    /// rk4 or verlet.
    #[arg(long, value_parser = parse_method)]
    pub integrator: Option<Method>,
    /// auto (T/10⁴, capped near periapsis) or a fixed step.
    #[arg(long, value_parser = parse_dt, allow_hyphen_values = true)]
    pub dt: Option<DtChoice>,
    #[arg(long, allow_hyphen_values = true)]
    pub periods: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub orbit: OrbitArgs,
    /// Trajectory CSV [default: trajectory.csv].
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Conserved-quantity CSV.
    #[arg(long, value_name = "PATH")]
    pub conserved_out: Option<PathBuf>,
    /// Per-sample geometry residual CSV.
    #[arg(long, value_name = "PATH")]
    pub residuals_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct HodographArgs {
    #[command(flatten)]
    pub orbit: OrbitArgs,
    /// Hodograph CSV [default: hodograph.csv].
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct NewtonArgs {
    /// Semi-major axis.
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub a: f64,
    /// Semi-minor axis [default: a·sqrt(3)/2, eccentricity 0.5].
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    #[arg(long, default_value_t = NEWTON_SAMPLES)]
    pub n_samples: usize,
    /// Newton-check CSV [default: newton.csv].
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Kepler3Args {
    #[command(flatten)]
    pub orbit: OrbitArgs,
    /// Explicit initial conditions `rx,ry,rz:vx,vy,vz`; repeatable.
    #[arg(long = "state", value_parser = parse_state, allow_hyphen_values = true)]
    pub states: Vec<(Vec3, Vec3)>,
    /// Length scales applied to the base orbit when no --state is given.
    #[arg(long, value_delimiter = ',', default_values_t = [0.5, 1.0, 2.0], allow_hyphen_values = true)]
    pub scales: Vec<f64>,
}

fn parse_state(s: &str) -> Result<(Vec3, Vec3), String> {
    let (r, v) = s
        .split_once(':')
        .ok_or_else(|| format!("expected rx,ry,rz:vx,vy,vz, got '{s}'"))?;
    Ok((parse_vec3(r)?, parse_vec3(v)?))
}

/// Fully resolved and validated orbit settings.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub system: KeplerSystem,
    pub state: OrbitState,
    pub integrator: Method,
    pub dt: DtChoice,
    pub periods: f64,
    /// Output paths given in the config file, keyed by flag name.
    pub outputs: BTreeMap<String, PathBuf>,
}

const OUTPUT_KEYS: [&str; 4] = ["out", "conserved-out", "residuals-out", "svg"];
const DEFAULT_PERIODS: f64 = 10.0;

/// Reads `key=value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> CliResult<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", n + 1)))?;
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

impl RunConfig {
    /// Defaults, then the config file, then flags; validated before return.
    pub fn resolve(args: &OrbitArgs) -> CliResult<Self> {
        let file = match &args.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                })?;
                parse_config(&text)?
            }
            None => BTreeMap::new(),
        };
        let mut merged = OrbitArgs::default();
        let mut outputs = BTreeMap::new();
        for (key, value) in &file {
            let usage = |e: String| CliError::Usage(format!("config key '{key}': {e}"));
            match key.as_str() {
                "r0" => merged.r0 = Some(parse_vec3(value).map_err(usage)?),
                "v0" => merged.v0 = Some(parse_vec3(value).map_err(usage)?),
                "m" => merged.m = Some(parse_f64(value).map_err(usage)?),
                "k" => merged.k = Some(parse_f64(value).map_err(usage)?),
                "integrator" => merged.integrator = Some(parse_method(value).map_err(usage)?),
                "dt" => merged.dt = Some(parse_dt(value).map_err(usage)?),
                "periods" => merged.periods = Some(parse_f64(value).map_err(usage)?),
                k if OUTPUT_KEYS.contains(&k) => {
                    outputs.insert(k.to_string(), PathBuf::from(value));
                }
                other => return Err(CliError::Usage(format!("unknown config key '{other}'"))),
            }
        }

        let m = args.m.or(merged.m).unwrap_or(1.0);
        let k = args.k.or(merged.k).unwrap_or(1.0);
        let system = KeplerSystem::new(m, k)?;
        let r0 = args.r0.or(merged.r0).unwrap_or(Vec3::X);
        // circular speed sqrt(k/(m r)) at the default radius
        let v0 = args
            .v0
            .or(merged.v0)
            .unwrap_or_else(|| Vec3::new(0.0, (k / (m * r0.norm())).sqrt(), 0.0));
        let state = OrbitState::new(r0, v0)?;
        let periods = args.periods.or(merged.periods).unwrap_or(DEFAULT_PERIODS);
        if !(periods.is_finite() && periods > 0.0) {
            return Err(KeplerError::InvalidInput(format!(
                "periods must be positive, got {periods:?}"
            ))
            .into());
        }
        let dt = args.dt.or(merged.dt).unwrap_or_default();
        if let DtChoice::Fixed(h) = dt {
            if !(h.is_finite() && h > 0.0) {
                return Err(
                    KeplerError::InvalidInput(format!("dt must be positive, got {h:?}")).into(),
                );
            }
        }
        Ok(RunConfig {
            system,
            state,
            integrator: args.integrator.or(merged.integrator).unwrap_or_default(),
            dt,
            periods,
            outputs,
        })
    }

    /// Ellipse of the initial state; fails with `NotBound` for `H ≥ 0`.
    pub fn geometry(&self) -> CliResult<EllipseGeometry> {
        Ok(ellipse_geometry(&self.system, &self.state)?)
    }

    pub fn step_size(&self) -> CliResult<f64> {
        Ok(match self.dt {
            DtChoice::Fixed(h) => h,
            DtChoice::Auto => default_dt(&self.system, &self.state)?,
        })
    }

    /// Integrates `periods` estimated periods with the configured method.
    pub fn trajectory(&self, geom: &EllipseGeometry) -> CliResult<Trajectory> {
        let dt = self.step_size()?;
        let n = (self.periods * geom.period / dt).ceil() as usize;
        Ok(integrate(
            &self.system,
            &self.state,
            dt,
            n.max(1),
            self.integrator,
        )?)
    }

    fn output(&self, flag: &Option<PathBuf>, key: &str) -> Option<PathBuf> {
        flag.clone().or_else(|| self.outputs.get(key).cloned())
    }
}

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })
}

fn io_at(path: &Path) -> impl Fn(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn write_file(
    path: &Path,
    body: impl FnOnce(&mut BufWriter<File>) -> CliResult<std::io::Result<()>>,
) -> CliResult<()> {
    let mut w = create(path)?;
    body(&mut w)?.map_err(io_at(path))?;
    w.flush().map_err(io_at(path))
}

fn vec_line(key: &str, v: Vec3) -> String {
    // + 0.0 turns -0.0 into 0.0
    format!("{key}={:?},{:?},{:?}\n", v.x + 0.0, v.y + 0.0, v.z + 0.0)
}

pub fn cmd_simulate(args: &SimulateArgs, out: &mut dyn Write) -> CliResult<i32> {
    let cfg = RunConfig::resolve(&args.orbit)?;
    let geom = cfg.geometry()?;
    let traj = cfg.trajectory(&geom)?;
    let path = cfg
        .output(&args.out, "out")
        .unwrap_or_else(|| PathBuf::from("trajectory.csv"));
    write_file(&path, |w| Ok(io::write_trajectory_csv(w, &traj)))?;
    if let Some(p) = cfg.output(&args.conserved_out, "conserved-out") {
        write_file(&p, |w| Ok(io::write_conserved_csv(w, &traj)?))?;
    }
    if let Some(p) = cfg.output(&args.residuals_out, "residuals-out") {
        write_file(&p, |w| Ok(io::write_residuals_csv(w, &traj)?))?;
    }

    let q = crate::conserved::ConservedSet::of(&cfg.system, &cfg.state)?;
    let mut report = io::geometry_report(&geom);
    report.push_str(&vec_line("L_vec", q.angular_momentum));
    report.push_str(&vec_line("K_vec", q.lrl));
    report.push_str(&format!(
        "integrator={}\ndt={:?}\nsamples={}\ntrajectory={}\n",
        cfg.integrator,
        traj.dt,
        traj.len(),
        path.display()
    ));
    write_stdout(out, &report)?;
    Ok(0)
}

pub fn cmd_verify(args: &OrbitArgs, out: &mut dyn Write) -> CliResult<i32> {
    let cfg = RunConfig::resolve(args)?;
    cfg.geometry()?;
    let verify = VerifyConfig {
        system: cfg.system,
        state: cfg.state,
        dt: match cfg.dt {
            DtChoice::Fixed(h) => Some(h),
            DtChoice::Auto => None,
        },
        periods: cfg.periods,
    };
    let results = run_verify(&verify)?;
    let mut text = String::new();
    text.push_str(&vec_line("r0", cfg.state.r));
    text.push_str(&vec_line("v0", cfg.state.v));
    text.push_str(&format!(
        "m={:?}\nk={:?}\nperiods={:?}\n\n",
        cfg.system.m(),
        cfg.system.k(),
        cfg.periods
    ));
    text.push_str(&format_table(&results));
    write_stdout(out, &text)?;
    Ok(if results.iter().all(|r| r.passed) {
        0
    } else {
        1
    })
}

pub fn cmd_hodograph(args: &HodographArgs, out: &mut dyn Write) -> CliResult<i32> {
    let cfg = RunConfig::resolve(&args.orbit)?;
    let geom = cfg.geometry()?;
    let traj = cfg.trajectory(&geom)?;
    let path = cfg
        .output(&args.out, "out")
        .unwrap_or_else(|| PathBuf::from("hodograph.csv"));
    write_file(&path, |w| Ok(io::write_hodograph_csv(w, &traj)?))?;
    if let Some(p) = cfg.output(&args.svg, "svg") {
        let svg = crate::svg::render(&traj)?;
        write_file(&p, |w| Ok(w.write_all(svg.as_bytes())))?;
    }

    let sys = &cfg.system;
    let frame = plane_frame(angular_momentum(&cfg.state, sys.m()))?;
    let velocities: Vec<Vec3> = traj.states().map(|s| s.v).collect();
    let fit = fit_circle(&velocities, &frame)?;
    let mut report = String::new();
    report.push_str(&vec_line(
        "center_predicted",
        predicted_center(sys, &cfg.state)?,
    ));
    report.push_str(&vec_line("center_fitted", fit.center));
    report.push_str(&format!(
        "radius_predicted={:?}\nradius_fitted={:?}\nmembership_residual={:?}\nD_residual={:?}\ntangency_residual={:?}\nhodograph={}\n",
        predicted_radius(sys, &cfg.state)?,
        fit.radius,
        membership_residual(&traj)?,
        construct_d_residual(&traj)?,
        tangency_residual(&traj)?,
        path.display()
    ));
    write_stdout(out, &report)?;
    Ok(0)
}

pub fn cmd_newton(args: &NewtonArgs, out: &mut dyn Write) -> CliResult<i32> {
    let b = args.b.unwrap_or(args.a * 0.75f64.sqrt());
    let ell = CenteredEllipse::planar(args.a, b)?;
    let report = newton_report(&ell, args.n_samples)?;
    let path = args
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("newton.csv"));
    write_file(&path, |w| {
        Ok(io::write_newton_csv(w, &ell, &report.samples))
    })?;
    let text = format!(
        "a={:?}\nb={:?}\ne={:?}\nn_samples={}\n\
         e_distance_residual={:?}\nlemma_de_ef={:?}\nlemma_fr_br={:?}\n\
         areal_center_residual={:?}\nareal_focus_residual={:?}\nratio_residual={:?}\n\
         inverse_square_spread={:?}\nmean_Q={:?}\na_cubed={:?}\nmax_direction_error={:?}\nnewton={}\n",
        ell.a(),
        ell.b(),
        ell.eccentricity(),
        args.n_samples,
        report.e_distance_residual,
        report.lemma_de_ef,
        report.lemma_fr_br,
        report.areal_center_residual,
        report.areal_focus_residual,
        report.ratio_residual,
        report.inverse_square.spread,
        report.inverse_square.mean_q,
        ell.a().powi(3),
        report.inverse_square.max_direction_error,
        path.display()
    );
    write_stdout(out, &text)?;
    Ok(0)
}

pub fn cmd_kepler3(args: &Kepler3Args, out: &mut dyn Write) -> CliResult<i32> {
    let cfg = RunConfig::resolve(&args.orbit)?;
    let states: Vec<OrbitState> = if args.states.is_empty() {
        let mut v = Vec::with_capacity(args.scales.len());
        for &s in &args.scales {
            if !(s.is_finite() && s > 0.0) {
                return Err(KeplerError::InvalidInput(format!(
                    "scale must be positive, got {s:?}"
                ))
                .into());
            }
            v.push(OrbitState::new(cfg.state.r * s, cfg.state.v / s.sqrt())?);
        }
        v
    } else {
        args.states
            .iter()
            .map(|&(r, v)| OrbitState::new(r, v))
            .collect::<crate::Result<_>>()?
    };
    if states.is_empty() {
        return Err(CliError::Usage("no orbits given".into()));
    }
    let rows = kepler3_check(&cfg.system, &states)?;
    let mut text = String::from("a,T,T2_over_a3\n");
    for r in &rows {
        text.push_str(&format!(
            "{},{},{}\n",
            io::fmt_num(r.a),
            io::fmt_num(r.period),
            io::fmt_num(r.ratio)
        ));
    }
    let n = rows.len() as f64;
    let mean = rows.iter().map(|r| r.ratio).sum::<f64>() / n;
    let (lo, hi) = rows
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
            (lo.min(r.ratio), hi.max(r.ratio))
        });
    let worst = rows
        .iter()
        .map(|r| r.relative_deviation(&cfg.system))
        .fold(0.0, f64::max);
    text.push_str(&format!(
        "\ncommon_ratio={mean:?}\nexpected={:?}\nmax_relative_spread={:?}\nmax_relative_deviation={worst:?}\n",
        kepler3_constant(&cfg.system),
        (hi - lo) / mean,
    ));
    write_stdout(out, &text)?;
    Ok(0)
}

fn write_stdout(out: &mut dyn Write, text: &str) -> CliResult<()> {
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        })
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Simulate(a) => cmd_simulate(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Hodograph(a) => cmd_hodograph(a, out),
        Command::Newton(a) => cmd_newton(a, out),
        Command::Kepler3(a) => cmd_kepler3(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_parsing() {
        assert_eq!(parse_vec3("1,0,-2.5").unwrap(), Vec3::new(1.0, 0.0, -2.5));
        assert!(parse_vec3("1,0").is_err());
        assert!(parse_vec3("1, 0, 0").is_err());
        assert!(parse_vec3("a,b,c").is_err());
    }

    #[test]
    fn dt_parsing() {
        assert_eq!(parse_dt("auto").unwrap(), DtChoice::Auto);
        assert_eq!(parse_dt("1e-3").unwrap(), DtChoice::Fixed(1e-3));
        assert!(parse_dt("fast").is_err());
    }

    #[test]
    fn config_file_and_flag_precedence() {
        let text = "# orbit\nr0 = 2,0,0\nv0=0,0.5,0\nperiods=3\nintegrator=verlet\nout=x.csv\n";
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        std::fs::write(&path, text).unwrap();
        let args = OrbitArgs {
            config: Some(path),
            periods: Some(1.5),
            ..Default::default()
        };
        let cfg = RunConfig::resolve(&args).unwrap();
        assert_eq!(cfg.state.r, Vec3::new(2.0, 0.0, 0.0));
        assert_eq!(cfg.state.v, Vec3::new(0.0, 0.5, 0.0));
        assert_eq!(cfg.periods, 1.5);
        assert_eq!(cfg.integrator, Method::Verlet);
        assert_eq!(cfg.outputs["out"], PathBuf::from("x.csv"));
    }

    #[test]
    fn config_errors_are_usage_errors() {
        assert!(matches!(parse_config("nonsense"), Err(CliError::Usage(_))));
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.cfg");
        std::fs::write(&path, "colour=blue\n").unwrap();
        let args = OrbitArgs {
            config: Some(path),
            ..Default::default()
        };
        let e = RunConfig::resolve(&args).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn defaults_are_circular() {
        let cfg = RunConfig::resolve(&OrbitArgs::default()).unwrap();
        let g = cfg.geometry().unwrap();
        assert!(g.eccentricity < 1e-12);
        assert_eq!(cfg.integrator, Method::Rk4);
        assert_eq!(cfg.dt, DtChoice::Auto);
    }

    #[test]
    fn precondition_errors_name_the_value() {
        let args = OrbitArgs {
            m: Some(-1.0),
            ..Default::default()
        };
        let e = RunConfig::resolve(&args).unwrap_err();
        assert_eq!(e.exit_code(), 1);
        assert!(e.to_string().contains("-1"), "{e}");
        let args = OrbitArgs {
            periods: Some(0.0),
            ..Default::default()
        };
        assert_eq!(RunConfig::resolve(&args).unwrap_err().exit_code(), 1);
    }
}
