//! Command-line front end for the triangular droplet model.
//!
//! Every analysis in the library is exposed as a subcommand writing CSV/JSON
//! files for external plotting. Each flag can also be supplied through a
//! JSON config file (`--config`) whose keys mirror the flag names; explicit
//! flags win. Commands that write into an output directory also drop a
//! `config.json` snapshot of the fully resolved parameters there, so a run
//! can be reproduced byte-for-byte from its own output.
//!
//! Exit codes: 0 on success, 2 on domain errors (bad inputs, degenerate
//! configurations), 3 on numerical failures.

use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use tridrop::dynamics::{
    escape_detect, initial_condition, integrate, manifold_deviation, poincare, preset_phi_list,
    stable_equilibrium, sweep, sweep_preset_alphas, torus_embed, write_embedding_csv,
    write_section_csv, write_sweep_summary_csv, write_trajectory_csv, EmbeddingVariant, Scheme,
    Trajectory, DEFAULT_DT, DEFAULT_T_END,
};
use tridrop::equilibria::{
    bifurcation_scan, classify, critical_alpha_star, eigen_set, write_bifurcation_csv, Branch,
    Equilibrium,
};
use tridrop::manifolds::{rocking_series, singular_alphas, write_manifold_json};
use tridrop::model::{Params, State};
use tridrop::sessile::{com_trace, read_xi_csv, write_com_trace_csv, CapMode, XiProfile};
use tridrop::{Error, Result};

/// Contact angles this close to the critical angle get a stderr warning:
/// the stability labels are about to exchange.
const CRITICAL_WARN_WINDOW: f64 = 1e-3;
/// The manifold command refuses angles this close to a series singularity
/// before attempting the solve (the library's own refusal window is tighter,
/// but conditioning is already hopeless well outside it).
const SINGULAR_GUARD: f64 = 2e-3;

#[derive(Parser)]
#[command(
    name = "tridrop",
    version,
    about = "Deforming triangular droplet: equilibria, invariant manifolds, trajectories, and spherical-cap mode classes"
)]
struct Cli {
    /// JSON config file whose keys mirror this subcommand's flags
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Interpret all angle inputs (contact angles, phi) as degrees
    #[arg(long, global = true)]
    degrees: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print both equilibrium branches with eigenvalues and stability
    Equilibria(EquilibriaArgs),
    /// Scan contact angles and export the two-branch bifurcation table
    Bifurcation(BifurcationArgs),
    /// Solve the rocking-surface series and export it as JSON
    Manifold(ManifoldArgs),
    /// Integrate one trajectory; export trajectory, section, and embedding CSVs
    Simulate(SimulateArgs),
    /// Run a perturbation-angle sweep and summarize each orbit
    Sweep(SweepArgs),
    /// Center-of-mass trace of a perturbed spherical-cap mode
    Sessile(SessileArgs),
}

/// Comma-separated floats on the command line; a plain array (or the same
/// string form) in config files.
#[derive(Clone, Debug)]
struct FloatList(Vec<f64>);

impl FromStr for FloatList {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        s.split(',')
            .map(|p| {
                p.trim()
                    .parse::<f64>()
                    .map_err(|e| format!("bad float '{p}': {e}"))
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(FloatList)
    }
}

impl<'de> Deserialize<'de> for FloatList {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Text(String),
            List(Vec<f64>),
        }
        match Repr::deserialize(d)? {
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
            Repr::List(v) => Ok(FloatList(v)),
        }
    }
}

/// Mode-shape source for the sessile command, kept serializable so the
/// config snapshot embeds sampled profiles rather than referencing files.
#[derive(Serialize, Deserialize, Clone, Debug)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum XiSpec {
    Constant { value: f64 },
    Polynomial { coeffs: Vec<f64> },
    Cosine { amplitude: f64, waves: f64 },
    Samples { points: Vec<(f64, f64)> },
}

impl XiSpec {
    fn to_profile(&self) -> XiProfile {
        match self {
            XiSpec::Constant { value } => XiProfile::Constant(*value),
            XiSpec::Polynomial { coeffs } => XiProfile::Polynomial(coeffs.clone()),
            XiSpec::Cosine { amplitude, waves } => XiProfile::Cosine {
                amplitude: *amplitude,
                waves: *waves,
            },
            XiSpec::Samples { points } => XiProfile::Samples(points.clone()),
        }
    }
}

/// Die quietly when downstream closes the pipe, like any other unix filter.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_) => 2,
        Error::Numerical(_) => 3,
    }
}

fn run(cli: Cli) -> Result<()> {
    let degrees = cli.degrees;
    let config = cli.config.as_deref();
    match cli.command {
        Command::Equilibria(args) => cmd_equilibria(args, config, degrees),
        Command::Bifurcation(args) => cmd_bifurcation(args, config, degrees),
        Command::Manifold(args) => cmd_manifold(args, config, degrees),
        Command::Simulate(args) => cmd_simulate(args, config, degrees),
        Command::Sweep(args) => cmd_sweep(args, config, degrees),
        Command::Sessile(args) => cmd_sessile(args, config, degrees),
    }
}

fn load_file_args<T: serde::de::DeserializeOwned + Default>(path: Option<&Path>) -> Result<T> {
    match path {
        None => Ok(T::default()),
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| Error::Domain(format!("config {}: {e}", p.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| Error::Domain(format!("config {}: {e}", p.display())))
        }
    }
}

fn to_rad(v: f64, degrees: bool) -> f64 {
    if degrees {
        v * std::f64::consts::PI / 180.0
    } else {
        v
    }
}

fn require<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| Error::Domain(format!("{flag} is required (flag or config file)")))
}

fn io_err(what: &str, e: io::Error) -> Error {
    Error::Numerical(format!("{what}: {e}"))
}

fn prepare_out_dir<T: Serialize>(dir: &Path, snapshot: &T) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| io_err("creating output directory", e))?;
    let mut f = fs::File::create(dir.join("config.json"))
        .map_err(|e| io_err("writing config snapshot", e))?;
    serde_json::to_writer_pretty(&mut f, snapshot)
        .map_err(|e| Error::Numerical(format!("serializing config snapshot: {e}")))?;
    writeln!(f).map_err(|e| io_err("writing config snapshot", e))?;
    Ok(())
}

fn write_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    let mut f = fs::File::create(path)
        .map_err(|e| io_err(&format!("writing {}", path.display()), e))?;
    serde_json::to_writer_pretty(&mut f, value)
        .map_err(|e| Error::Numerical(format!("serializing {}: {e}", path.display())))?;
    writeln!(f).map_err(|e| io_err(&format!("writing {}", path.display()), e))?;
    Ok(())
}

fn parse_branch(s: &str) -> Result<Branch> {
    match s {
        "primary" => Ok(Branch::Primary),
        "secondary" => Ok(Branch::Secondary),
        other => Err(Error::Domain(format!(
            "unknown branch '{other}' (expected primary or secondary)"
        ))),
    }
}

fn complex_pair(l: &[Complex64; 2]) -> serde_json::Value {
    serde_json::json!([[l[0].re, l[0].im], [l[1].re, l[1].im]])
}

fn fmt_complex(c: Complex64) -> String {
    format!("{:+.6}{:+.6}i", c.re, c.im)
}

// ---------------------------------------------------------------- equilibria

#[derive(Args, Deserialize, Default, Clone)]
#[serde(rename_all = "kebab-case", default)]
struct EquilibriaArgs {
    /// Contact angle of the unperturbed drop
    #[arg(long, allow_negative_numbers = true)]
    alpha0: Option<f64>,
    /// Optional output directory for a JSON export
    #[arg(long)]
    out: Option<PathBuf>,
}

impl EquilibriaArgs {
    fn or(self, file: Self) -> Self {
        Self {
            alpha0: self.alpha0.or(file.alpha0),
            out: self.out.or(file.out),
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "kebab-case")]
struct EquilibriaConfig {
    command: &'static str,
    alpha0: f64,
    out: PathBuf,
}

fn print_equilibrium(eq: &Equilibrium) {
    let es = eigen_set(eq);
    println!(
        "{:<9}  y = {:.9}  contact angle = {:.9} rad  [{}]",
        eq.branch.as_str(),
        eq.y_eq,
        eq.contact_angle,
        eq.stability.as_str()
    );
    println!(
        "           horizontal pair: {}, {}   vertical pair: {}, {}",
        fmt_complex(es.lambda12[0]),
        fmt_complex(es.lambda12[1]),
        fmt_complex(es.lambda34[0]),
        fmt_complex(es.lambda34[1])
    );
}

fn cmd_equilibria(args: EquilibriaArgs, config: Option<&Path>, degrees: bool) -> Result<()> {
    let a = args.or(load_file_args(config)?);
    let alpha0 = to_rad(require(a.alpha0, "--alpha0")?, degrees);
    let params = Params::new(alpha0)?;
    let a_star = critical_alpha_star(1e-10);
    if (alpha0 - a_star).abs() < CRITICAL_WARN_WINDOW {
        eprintln!(
            "warning: alpha0 = {alpha0:.6} is within {CRITICAL_WARN_WINDOW:.0e} of the \
             stability-exchange angle {a_star:.6}; the branches are near-degenerate there"
        );
    }
    let (pri, sec) = classify(&params)?;
    println!("alpha0 = {:.9} rad  (q = {:.9})", alpha0, params.q());
    print_equilibrium(&pri);
    print_equilibrium(&sec);
    if let Some(dir) = &a.out {
        let snapshot = EquilibriaConfig {
            command: "equilibria",
            alpha0,
            out: dir.clone(),
        };
        prepare_out_dir(dir, &snapshot)?;
        let mut rows = Vec::new();
        for eq in [&pri, &sec] {
            let es = eigen_set(eq);
            rows.push(serde_json::json!({
                "branch": eq.branch.as_str(),
                "y": eq.y_eq,
                "contact-angle": eq.contact_angle,
                "stability": eq.stability.as_str(),
                "lambda12": complex_pair(&es.lambda12),
                "lambda34": complex_pair(&es.lambda34),
            }));
        }
        let doc = serde_json::json!({
            "alpha0": alpha0,
            "q": params.q(),
            "critical-alpha": a_star,
            "equilibria": rows,
        });
        write_json(&dir.join("equilibria.json"), &doc)?;
        println!("wrote {}", dir.join("equilibria.json").display());
    }
    Ok(())
}

// --------------------------------------------------------------- bifurcation

#[derive(Args, Deserialize, Default, Clone)]
#[serde(rename_all = "kebab-case", default)]
struct BifurcationArgs {
    /// First contact angle of the scan
    #[arg(long, allow_negative_numbers = true)]
    start: Option<f64>,
    /// Last contact angle of the scan
    #[arg(long, allow_negative_numbers = true)]
    stop: Option<f64>,
    /// Number of grid points
    #[arg(long)]
    count: Option<usize>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
}

impl BifurcationArgs {
    fn or(self, file: Self) -> Self {
        Self {
            start: self.start.or(file.start),
            stop: self.stop.or(file.stop),
            count: self.count.or(file.count),
            out: self.out.or(file.out),
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "kebab-case")]
struct BifurcationConfig {
    command: &'static str,
    start: f64,
    stop: f64,
    count: usize,
    out: PathBuf,
}

fn cmd_bifurcation(args: BifurcationArgs, config: Option<&Path>, degrees: bool) -> Result<()> {
    let a = args.or(load_file_args(config)?);
    let start = a.start.map(|v| to_rad(v, degrees)).unwrap_or(0.3);
    let stop = a.stop.map(|v| to_rad(v, degrees)).unwrap_or(1.55);
    let count = a.count.unwrap_or(200);
    let dir = require(a.out, "--out")?;
    if !(start > 0.0 && stop < std::f64::consts::FRAC_PI_2 && start < stop) {
        return Err(Error::Domain(format!(
            "scan range [{start}, {stop}] must satisfy 0 < start < stop < pi/2"
        )));
    }
    if count < 2 {
        return Err(Error::Domain(format!("count {count} must be at least 2")));
    }
    let grid: Vec<f64> = (0..count)
        .map(|i| start + (stop - start) * i as f64 / (count - 1) as f64)
        .collect();
    let rows = bifurcation_scan(&grid);
    let snapshot = BifurcationConfig {
        command: "bifurcation",
        start,
        stop,
        count,
        out: dir.clone(),
    };
    prepare_out_dir(&dir, &snapshot)?;
    let path = dir.join("bifurcation.csv");
    let mut f = fs::File::create(&path).map_err(|e| io_err("writing bifurcation.csv", e))?;
    write_bifurcation_csv(&rows, &mut f).map_err(|e| io_err("writing bifurcation.csv", e))?;
    println!("wrote {} rows to {}", rows.len(), path.display());
    Ok(())
}

// ------------------------------------------------------------------ manifold

#[derive(Args, Deserialize, Default, Clone)]
#[serde(rename_all = "kebab-case", default)]
struct ManifoldArgs {
    /// Contact angle of the unperturbed drop
    #[arg(long, allow_negative_numbers = true)]
    alpha0: Option<f64>,
    /// Truncation order of the series (1-4)
    #[arg(long)]
    order: Option<usize>,
    /// Equilibrium branch to expand around: primary or secondary
    #[arg(long)]
    branch: Option<String>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
}

impl ManifoldArgs {
    fn or(self, file: Self) -> Self {
        Self {
            alpha0: self.alpha0.or(file.alpha0),
            order: self.order.or(file.order),
            branch: self.branch.or(file.branch),
            out: self.out.or(file.out),
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "kebab-case")]
struct ManifoldConfig {
    command: &'static str,
    alpha0: f64,
    order: usize,
    branch: String,
    out: PathBuf,
}

fn cmd_manifold(args: ManifoldArgs, config: Option<&Path>, degrees: bool) -> Result<()> {
    let a = args.or(load_file_args(config)?);
    let alpha0 = to_rad(require(a.alpha0, "--alpha0")?, degrees);
    let order = a.order.unwrap_or(4);
    if !(1..=4).contains(&order) {
        return Err(Error::Domain(format!("order {order} outside 1..=4")));
    }
    let branch_name = a.branch.unwrap_or_else(|| "primary".into());
    let branch = parse_branch(&branch_name)?;
    let dir = require(a.out, "--out")?;
    let params = Params::new(alpha0)?;

    let roots = singular_alphas(if order >= 4 { 4 } else { 2 })?;
    let (nearest, distance) = roots
        .iter()
        .map(|&r| (r, (alpha0 - r).abs()))
        .min_by(|x, y| x.1.partial_cmp(&y.1).unwrap())
        .unwrap();
    if distance < SINGULAR_GUARD {
        return Err(Error::Domain(format!(
            "alpha0 = {alpha0:.6} is within {SINGULAR_GUARD:.0e} of the series singularity at \
             {nearest:.6}; no differentiable rocking manifold is available there"
        )));
    }

    let series = rocking_series(&params, order, branch)?;
    let snapshot = ManifoldConfig {
        command: "manifold",
        alpha0,
        order,
        branch: branch_name,
        out: dir.clone(),
    };
    prepare_out_dir(&dir, &snapshot)?;
    let path = dir.join("manifold.json");
    let mut f = fs::File::create(&path).map_err(|e| io_err("writing manifold.json", e))?;
    write_manifold_json(&series, &mut f).map_err(|e| io_err("writing manifold.json", e))?;
    let report = serde_json::json!({
        "order": order,
        "branch": series.branch().as_str(),
        "singular-alphas": roots,
        "nearest-singularity": nearest,
        "distance": distance,
    });
    write_json(&dir.join("report.json"), &report)?;
    println!(
        "y_center = {:.9}; x^2 coefficient = {:.9}; w^2 coefficient = {:.9}",
        series.y_center(),
        series.coeff(2, 0),
        series.coeff(0, 2)
    );
    println!("wrote {}", path.display());
    Ok(())
}

// ------------------------------------------------------------------ simulate

#[derive(Args, Deserialize, Default, Clone)]
#[serde(rename_all = "kebab-case", default)]
struct SimulateArgs {
    /// Contact angle of the unperturbed drop
    #[arg(long, allow_negative_numbers = true)]
    alpha0: Option<f64>,
    /// Explicit initial state (all four of --x --w --y --z, overriding --radius/--phi)
    #[arg(long, allow_negative_numbers = true)]
    x: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    w: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    y: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    z: Option<f64>,
    /// Perturbation size around the stable equilibrium
    #[arg(long, allow_negative_numbers = true)]
    radius: Option<f64>,
    /// Perturbation angle from the vertical, in [0, pi]
    #[arg(long, allow_negative_numbers = true)]
    phi: Option<f64>,
    /// Integrator step
    #[arg(long, allow_negative_numbers = true)]
    dt: Option<f64>,
    /// End time
    #[arg(long, allow_negative_numbers = true)]
    t_end: Option<f64>,
    /// Integrator: symmetric, symmetric4, or rk-adaptive
    #[arg(long)]
    scheme: Option<String>,
    /// Torus embedding variant: verbatim or corrected
    #[arg(long)]
    variant: Option<String>,
    /// Write every n-th step to the CSVs
    #[arg(long)]
    stride: Option<usize>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
}

impl SimulateArgs {
    fn or(self, file: Self) -> Self {
        Self {
            alpha0: self.alpha0.or(file.alpha0),
            x: self.x.or(file.x),
            w: self.w.or(file.w),
            y: self.y.or(file.y),
            z: self.z.or(file.z),
            radius: self.radius.or(file.radius),
            phi: self.phi.or(file.phi),
            dt: self.dt.or(file.dt),
            t_end: self.t_end.or(file.t_end),
            scheme: self.scheme.or(file.scheme),
            variant: self.variant.or(file.variant),
            stride: self.stride.or(file.stride),
            out: self.out.or(file.out),
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "kebab-case")]
struct SimulateConfig {
    command: &'static str,
    alpha0: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    w: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    y: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    z: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    phi: Option<f64>,
    dt: f64,
    t_end: f64,
    scheme: String,
    variant: String,
    stride: usize,
    out: PathBuf,
}

/// Every n-th sample of a trajectory, for plot-sized CSV output.
fn decimate(traj: &Trajectory, stride: usize) -> Trajectory {
    if stride <= 1 {
        return traj.clone();
    }
    Trajectory {
        times: traj.times.iter().copied().step_by(stride).collect(),
        states: traj.states.iter().copied().step_by(stride).collect(),
        events: traj.events.clone(),
        meta: traj.meta.clone(),
    }
}

fn cmd_simulate(args: SimulateArgs, config: Option<&Path>, degrees: bool) -> Result<()> {
    let a = args.or(load_file_args(config)?);
    let alpha0 = to_rad(require(a.alpha0, "--alpha0")?, degrees);
    let params = Params::new(alpha0)?;
    let dt = a.dt.unwrap_or(DEFAULT_DT);
    let t_end = a.t_end.unwrap_or(100.0);
    let scheme: Scheme = a.scheme.as_deref().unwrap_or("symmetric").parse()?;
    let variant: EmbeddingVariant = a.variant.as_deref().unwrap_or("verbatim").parse()?;
    let stride = a.stride.unwrap_or(1);
    if stride == 0 {
        return Err(Error::Domain("stride must be at least 1".into()));
    }
    let dir = require(a.out, "--out")?;

    let explicit = [a.x, a.w, a.y, a.z];
    let n_explicit = explicit.iter().filter(|v| v.is_some()).count();
    let (state0, radius, phi) = match n_explicit {
        4 => (
            State::new(a.x.unwrap(), a.w.unwrap(), a.y.unwrap(), a.z.unwrap())?,
            None,
            None,
        ),
        0 => {
            let radius = a.radius.unwrap_or(0.05);
            let phi = to_rad(a.phi.unwrap_or(0.0), degrees);
            (initial_condition(&params, radius, phi)?, Some(radius), Some(phi))
        }
        _ => {
            return Err(Error::Domain(
                "an explicit initial state needs all four of --x --w --y --z".into(),
            ))
        }
    };

    let snapshot = SimulateConfig {
        command: "simulate",
        alpha0,
        x: radius.is_none().then_some(state0.x),
        w: radius.is_none().then_some(state0.w),
        y: radius.is_none().then_some(state0.y),
        z: radius.is_none().then_some(state0.z),
        radius,
        phi,
        dt,
        t_end,
        scheme: scheme.as_str().into(),
        variant: variant.as_str().into(),
        stride,
        out: dir.clone(),
    };
    prepare_out_dir(&dir, &snapshot)?;

    let traj = integrate(&state0, &params, dt, t_end, scheme)?;
    let class = escape_detect(&traj, &params);

    let thin = decimate(&traj, stride);
    let mut f = fs::File::create(dir.join("trajectory.csv"))
        .map_err(|e| io_err("writing trajectory.csv", e))?;
    write_trajectory_csv(&thin, &mut f).map_err(|e| io_err("writing trajectory.csv", e))?;

    let points = torus_embed(&thin, variant)?;
    let mut f = fs::File::create(dir.join("embedding.csv"))
        .map_err(|e| io_err("writing embedding.csv", e))?;
    write_embedding_csv(&points, &mut f).map_err(|e| io_err("writing embedding.csv", e))?;

    let (section_count, section_note) = match poincare(&traj) {
        Ok(map) => {
            let mut f = fs::File::create(dir.join("section.csv"))
                .map_err(|e| io_err("writing section.csv", e))?;
            write_section_csv(&map, &mut f).map_err(|e| io_err("writing section.csv", e))?;
            (map.crossings.len(), map.warning.map(String::from))
        }
        Err(e) => (0, Some(format!("section skipped: {e}"))),
    };

    let max_dev = stable_equilibrium(&params)
        .and_then(|(branch, _)| rocking_series(&params, 4, branch))
        .map(|series| manifold_deviation(&traj, &series))
        .ok();

    let events: Vec<serde_json::Value> = traj
        .events
        .iter()
        .map(|e| serde_json::json!({"t": e.t, "kind": e.kind.as_str()}))
        .collect();
    let doc = serde_json::json!({
        "command": "simulate",
        "escape": class.as_str(),
        "events": events,
        "section-count": section_count,
        "section-note": section_note,
        "max-manifold-dev": max_dev,
        "embedding-variant": variant.as_str(),
    });
    write_json(&dir.join("run.json"), &doc)?;
    println!(
        "{}: {} steps, {} section crossings, outputs in {}",
        class.as_str(),
        traj.states.len() - 1,
        section_count,
        dir.display()
    );
    Ok(())
}

// --------------------------------------------------------------------- sweep

#[derive(Args, Deserialize, Default, Clone)]
#[serde(rename_all = "kebab-case", default)]
struct SweepArgs {
    /// Named setup: pi4, dagger, 2pi5, or a145
    #[arg(long)]
    preset: Option<String>,
    /// List the named setups and exit
    #[arg(long)]
    list_presets: bool,
    /// Contact angle (alternative to --preset)
    #[arg(long, allow_negative_numbers = true)]
    alpha0: Option<f64>,
    /// Perturbation size
    #[arg(long, allow_negative_numbers = true)]
    radius: Option<f64>,
    /// Perturbation angles, comma separated (default: the preset protocol)
    #[arg(long, allow_negative_numbers = true)]
    phis: Option<FloatList>,
    /// Integrator step
    #[arg(long, allow_negative_numbers = true)]
    dt: Option<f64>,
    /// End time per trajectory
    #[arg(long, allow_negative_numbers = true)]
    t_end: Option<f64>,
    /// Write every n-th step to the per-angle CSVs
    #[arg(long)]
    stride: Option<usize>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
}

impl SweepArgs {
    fn or(self, file: Self) -> Self {
        Self {
            preset: self.preset.or(file.preset),
            list_presets: self.list_presets || file.list_presets,
            alpha0: self.alpha0.or(file.alpha0),
            radius: self.radius.or(file.radius),
            phis: self.phis.or(file.phis),
            dt: self.dt.or(file.dt),
            t_end: self.t_end.or(file.t_end),
            stride: self.stride.or(file.stride),
            out: self.out.or(file.out),
        }
    }
}

// the snapshot stores the resolved angle, never the preset shorthand,
// so replaying it cannot conflict with an --alpha0 flag
#[derive(Serialize)]
#[serde(rename_all = "kebab-case")]
struct SweepConfig {
    command: &'static str,
    alpha0: f64,
    radius: f64,
    phis: Vec<f64>,
    dt: f64,
    t_end: f64,
    stride: usize,
    out: PathBuf,
}

fn cmd_sweep(args: SweepArgs, config: Option<&Path>, degrees: bool) -> Result<()> {
    let a = args.or(load_file_args(config)?);
    if a.list_presets {
        for (name, alpha0) in sweep_preset_alphas()? {
            println!("{name:<8} alpha0 = {alpha0:.9}");
        }
        return Ok(());
    }
    let alpha0 = match (&a.preset, a.alpha0) {
        (Some(name), None) => sweep_preset_alphas()?
            .into_iter()
            .find(|(n, _)| n == name)
            .map(|(_, alpha0)| alpha0)
            .ok_or_else(|| Error::Domain(format!("unknown preset '{name}'")))?,
        (None, Some(v)) => to_rad(v, degrees),
        (Some(_), Some(_)) => {
            return Err(Error::Domain(
                "--preset and --alpha0 are mutually exclusive".into(),
            ))
        }
        (None, None) => return Err(Error::Domain("--preset or --alpha0 is required".into())),
    };
    let params = Params::new(alpha0)?;
    let radius = a.radius.unwrap_or(0.05);
    let dt = a.dt.unwrap_or(DEFAULT_DT);
    let t_end = a.t_end.unwrap_or(DEFAULT_T_END);
    let stride = a.stride.unwrap_or(10).max(1);
    let dir = require(a.out, "--out")?;

    let (phis, preset_note) = match a.phis {
        Some(FloatList(v)) => (
            v.into_iter().map(|p| to_rad(p, degrees)).collect(),
            None,
        ),
        None => preset_phi_list(&params, radius)?,
    };

    let snapshot = SweepConfig {
        command: "sweep",
        alpha0,
        radius,
        phis: phis.clone(),
        dt,
        t_end,
        stride,
        out: dir.clone(),
    };
    prepare_out_dir(&dir, &snapshot)?;

    let result = sweep(&params, radius, &phis, dt, t_end)?;
    let mut notes = result.notes.clone();
    if let Some(n) = preset_note {
        if !notes.contains(&n) {
            notes.insert(0, n);
        }
    }

    let path = dir.join("summary.csv");
    let mut f = fs::File::create(&path).map_err(|e| io_err("writing summary.csv", e))?;
    write_sweep_summary_csv(&result.rows, &mut f)
        .map_err(|e| io_err("writing summary.csv", e))?;

    let mut files = Vec::new();
    for (i, traj) in result.trajectories.iter().enumerate() {
        let name = format!("trajectory_{i:02}.csv");
        let mut f = fs::File::create(dir.join(&name))
            .map_err(|e| io_err(&format!("writing {name}"), e))?;
        write_trajectory_csv(&decimate(traj, stride), &mut f)
            .map_err(|e| io_err(&format!("writing {name}"), e))?;
        files.push(name);
    }

    let doc = serde_json::json!({
        "command": "sweep",
        "notes": notes,
        "trajectory-files": files,
    });
    write_json(&dir.join("run.json"), &doc)?;

    for row in &result.rows {
        let dev = row
            .max_manifold_dev
            .map(|d| format!("{d:.3e}"))
            .unwrap_or_else(|| "n/a".into());
        println!(
            "phi = {:.6}: {}, {} section crossings, manifold deviation {}",
            row.phi,
            row.class.as_str(),
            row.section_count,
            dev
        );
    }
    for n in &notes {
        println!("note: {n}");
    }
    println!("outputs in {}", dir.display());
    Ok(())
}

// ------------------------------------------------------------------- sessile

#[derive(Args, Deserialize, Default, Clone)]
#[serde(rename_all = "kebab-case", default)]
struct SessileArgs {
    /// Contact angle of the cap (default 4*pi/9)
    #[arg(long, allow_negative_numbers = true)]
    alpha: Option<f64>,
    /// Azimuthal wavenumber
    #[arg(long)]
    l: Option<u32>,
    /// Polar wavenumber label
    #[arg(long)]
    k: Option<u32>,
    /// Perturbation amplitude
    #[arg(long, allow_negative_numbers = true)]
    epsilon: Option<f64>,
    /// Angular frequency of the mode
    #[arg(long, allow_negative_numbers = true)]
    omega: Option<f64>,
    /// Trace length in time
    #[arg(long, allow_negative_numbers = true)]
    t_end: Option<f64>,
    /// Number of time steps in the trace
    #[arg(long)]
    steps: Option<usize>,
    /// Mode shape sampled from a CSV file with header s,xi
    #[arg(long)]
    xi_csv: Option<PathBuf>,
    /// Constant mode shape
    #[arg(long, allow_negative_numbers = true)]
    xi_const: Option<f64>,
    /// Polynomial mode shape, comma-separated coefficients (constant first)
    #[arg(long, allow_negative_numbers = true)]
    xi_poly: Option<FloatList>,
    /// Cosine mode shape as "amplitude,waves"
    #[arg(long, allow_negative_numbers = true)]
    xi_cosine: Option<FloatList>,
    /// Mode shape from a config file (written by snapshots)
    #[arg(skip)]
    xi: Option<XiSpec>,
    /// Output directory
    #[arg(long)]
    out: Option<PathBuf>,
}

impl SessileArgs {
    fn or(self, file: Self) -> Self {
        Self {
            alpha: self.alpha.or(file.alpha),
            l: self.l.or(file.l),
            k: self.k.or(file.k),
            epsilon: self.epsilon.or(file.epsilon),
            omega: self.omega.or(file.omega),
            t_end: self.t_end.or(file.t_end),
            steps: self.steps.or(file.steps),
            xi_csv: self.xi_csv.or(file.xi_csv),
            xi_const: self.xi_const.or(file.xi_const),
            xi_poly: self.xi_poly.or(file.xi_poly),
            xi_cosine: self.xi_cosine.or(file.xi_cosine),
            xi: self.xi.or(file.xi),
            out: self.out.or(file.out),
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "kebab-case")]
struct SessileConfig {
    command: &'static str,
    alpha: f64,
    l: u32,
    k: u32,
    epsilon: f64,
    omega: f64,
    t_end: f64,
    steps: usize,
    xi: XiSpec,
    out: PathBuf,
}

fn resolve_xi(a: &SessileArgs) -> Result<XiSpec> {
    let mut specs: Vec<XiSpec> = Vec::new();
    if let Some(path) = &a.xi_csv {
        let f = fs::File::open(path)
            .map_err(|e| Error::Domain(format!("profile {}: {e}", path.display())))?;
        match read_xi_csv(BufReader::new(f))? {
            XiProfile::Samples(points) => specs.push(XiSpec::Samples { points }),
            _ => unreachable!("csv profiles are always sampled"),
        }
    }
    if let Some(value) = a.xi_const {
        specs.push(XiSpec::Constant { value });
    }
    if let Some(FloatList(coeffs)) = &a.xi_poly {
        specs.push(XiSpec::Polynomial {
            coeffs: coeffs.clone(),
        });
    }
    if let Some(FloatList(v)) = &a.xi_cosine {
        if v.len() != 2 {
            return Err(Error::Domain(
                "--xi-cosine takes exactly two values: amplitude,waves".into(),
            ));
        }
        specs.push(XiSpec::Cosine {
            amplitude: v[0],
            waves: v[1],
        });
    }
    match specs.len() {
        0 => Ok(a
            .xi
            .clone()
            .unwrap_or(XiSpec::Constant { value: 1.0 })),
        1 => Ok(specs.pop().unwrap()),
        _ => Err(Error::Domain(
            "give at most one of --xi-csv, --xi-const, --xi-poly, --xi-cosine".into(),
        )),
    }
}

fn cmd_sessile(args: SessileArgs, config: Option<&Path>, degrees: bool) -> Result<()> {
    let a = args.or(load_file_args(config)?);
    let alpha = a
        .alpha
        .map(|v| to_rad(v, degrees))
        .unwrap_or(4.0 * std::f64::consts::PI / 9.0);
    let l = require(a.l, "--l")?;
    let k = a.k.unwrap_or(2);
    let epsilon = a.epsilon.unwrap_or(0.01);
    let omega = a.omega.unwrap_or(1.0);
    let t_end = a.t_end.unwrap_or(2.0 * std::f64::consts::PI);
    let steps = a.steps.unwrap_or(128).max(1);
    let dir = require(a.out.clone(), "--out")?;
    let xi = resolve_xi(&a)?;

    let mode = CapMode::new(alpha, l, k, epsilon, omega, xi.to_profile())?;
    if let Some(w) = mode.epsilon_warning() {
        eprintln!("warning: {w}");
    }
    let t_grid: Vec<f64> = (0..=steps).map(|i| t_end * i as f64 / steps as f64).collect();
    let trace = com_trace(&mode, &t_grid)?;

    let snapshot = SessileConfig {
        command: "sessile",
        alpha,
        l,
        k,
        epsilon,
        omega,
        t_end,
        steps,
        xi,
        out: dir.clone(),
    };
    prepare_out_dir(&dir, &snapshot)?;
    let path = dir.join("com_trace.csv");
    let mut f = fs::File::create(&path).map_err(|e| io_err("writing com_trace.csv", e))?;
    write_com_trace_csv(&trace, &mut f).map_err(|e| io_err("writing com_trace.csv", e))?;
    let doc = serde_json::json!({
        "command": "sessile",
        "class": trace.classification.as_str(),
    });
    write_json(&dir.join("run.json"), &doc)?;
    println!(
        "class = {}; wrote {} rows to {}",
        trace.classification.as_str(),
        trace.times.len(),
        path.display()
    );
    Ok(())
}
