//! Time integration and trajectory analysis for the full 4D system.
//!
//! The default integrator is a position-Verlet step: both accelerations
//! depend only on the positions (x, y), so the scheme is time-symmetric and
//! respects the reversing involutions exactly up to round-off. A fourth-order
//! symmetric composition of the same step and an adaptive Dormand-Prince
//! pair are available for tighter tolerances and cross-validation.

use std::io;
use std::str::FromStr;

use crate::equilibria::{classify, fmt_float, primary_equilibrium, Branch, Stability};
use crate::error::{Error, Result};
use crate::manifolds::{rocking_series, ManifoldSeries};
use crate::model::{accelerations, Params, State};
use crate::numerics::roots::bisect_secant;

/// Height below which a trajectory counts as a flattening escape.
pub const Y_FLAT: f64 = 0.02;
/// Height above which a trajectory counts as a stretching escape.
pub const Y_TALL: f64 = 10.0;

pub const DEFAULT_DT: f64 = 1e-3;
pub const DEFAULT_T_END: f64 = 500.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// Second-order position-Verlet, time-symmetric. The default.
    Symmetric,
    /// Fourth-order symmetric composition of three Verlet substeps.
    Symmetric4,
    /// Adaptive Dormand-Prince 5(4), for cross-checks; `dt` is the initial
    /// step and steps are chosen by error control.
    RkAdaptive,
}

impl Scheme {
    pub fn as_str(&self) -> &'static str {
        match self {
            Scheme::Symmetric => "symmetric",
            Scheme::Symmetric4 => "symmetric4",
            Scheme::RkAdaptive => "rk-adaptive",
        }
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "symmetric" => Ok(Scheme::Symmetric),
            "symmetric4" => Ok(Scheme::Symmetric4),
            "rk-adaptive" => Ok(Scheme::RkAdaptive),
            other => Err(Error::Domain(format!(
                "unknown scheme '{other}' (expected symmetric, symmetric4, or rk-adaptive)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    Escape,
    SectionCrossing,
    DomainExit,
}

impl EventKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            EventKind::Escape => "escape",
            EventKind::SectionCrossing => "section-crossing",
            EventKind::DomainExit => "domain-exit",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub t: f64,
    pub kind: EventKind,
}

#[derive(Debug, Clone)]
pub struct TrajectoryMeta {
    pub scheme: Scheme,
    pub dt: f64,
    pub params: Params,
}

#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<State>,
    pub events: Vec<Event>,
    pub meta: TrajectoryMeta,
}

impl Trajectory {
    pub fn last_state(&self) -> &State {
        self.states.last().expect("trajectory is never empty")
    }
}

fn verlet_step(
    params: &Params,
    s: &State,
    dt: f64,
    ax: f64,
    ay: f64,
) -> Result<(State, f64, f64)> {
    let wh = s.w + 0.5 * dt * ax;
    let zh = s.z + 0.5 * dt * ay;
    let x = s.x + dt * wh;
    let y = s.y + dt * zh;
    let (fx, fy) = accelerations(params, x, y)?;
    let next = State {
        x,
        w: wh + 0.5 * dt * fx,
        y,
        z: zh + 0.5 * dt * fy,
    };
    Ok((next, fx, fy))
}

// 2^(1/3); the classic fourth-order triple-step composition coefficients.
const CBRT2: f64 = 1.259921049894873;

fn symmetric4_step(
    params: &Params,
    s: &State,
    dt: f64,
    ax: f64,
    ay: f64,
) -> Result<(State, f64, f64)> {
    let w1 = 1.0 / (2.0 - CBRT2);
    let w0 = -CBRT2 / (2.0 - CBRT2);
    let (s1, ax1, ay1) = verlet_step(params, s, w1 * dt, ax, ay)?;
    let (s2, ax2, ay2) = verlet_step(params, &s1, w0 * dt, ax1, ay1)?;
    verlet_step(params, &s2, w1 * dt, ax2, ay2)
}

fn rhs4(params: &Params, s: &[f64; 4]) -> Result<[f64; 4]> {
    let (fx, fy) = accelerations(params, s[0], s[2])?;
    Ok([s[1], fx, s[3], fy])
}

/// One Dormand-Prince 5(4) attempt: fifth-order result and scaled error norm.
fn dp54_attempt(params: &Params, s: &[f64; 4], h: f64) -> Result<([f64; 4], f64)> {
    const A: [[f64; 6]; 6] = [
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [
            19372.0 / 6561.0,
            -25360.0 / 2187.0,
            64448.0 / 6561.0,
            -212.0 / 729.0,
            0.0,
            0.0,
        ],
        [
            9017.0 / 3168.0,
            -355.0 / 33.0,
            46732.0 / 5247.0,
            49.0 / 176.0,
            -5103.0 / 18656.0,
            0.0,
        ],
        [
            35.0 / 384.0,
            0.0,
            500.0 / 1113.0,
            125.0 / 192.0,
            -2187.0 / 6784.0,
            11.0 / 84.0,
        ],
    ];
    const B5: [f64; 7] = [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
        0.0,
    ];
    const B4: [f64; 7] = [
        5179.0 / 57600.0,
        0.0,
        7571.0 / 16695.0,
        393.0 / 640.0,
        -92097.0 / 339200.0,
        187.0 / 2100.0,
        1.0 / 40.0,
    ];
    let mut k = [[0.0; 4]; 7];
    k[0] = rhs4(params, s)?;
    for stage in 1..7 {
        let mut arg = *s;
        for (j, kj) in k.iter().enumerate().take(stage) {
            let a = A[stage - 1][j];
            if a != 0.0 {
                for i in 0..4 {
                    arg[i] += h * a * kj[i];
                }
            }
        }
        k[stage] = rhs4(params, &arg)?;
    }
    let mut y5 = *s;
    let mut y4 = *s;
    for (j, kj) in k.iter().enumerate() {
        for i in 0..4 {
            y5[i] += h * B5[j] * kj[i];
            y4[i] += h * B4[j] * kj[i];
        }
    }
    let (atol, rtol) = (1e-12, 1e-10);
    let mut err = 0.0;
    for i in 0..4 {
        let scale = atol + rtol * s[i].abs().max(y5[i].abs());
        err += ((y5[i] - y4[i]) / scale).powi(2);
    }
    Ok((y5, (err / 4.0).sqrt()))
}

/// Integrates from `state0`, recording every accepted step. Halts early with
/// a domain-exit event if the state leaves the admissible region.
pub fn integrate(
    state0: &State,
    params: &Params,
    dt: f64,
    t_end: f64,
    scheme: Scheme,
) -> Result<Trajectory> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::Domain(format!("step size {dt} must be positive")));
    }
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(Error::Domain(format!("end time {t_end} must be positive")));
    }
    let meta = TrajectoryMeta {
        scheme,
        dt,
        params: *params,
    };
    let mut times = Vec::new();
    let mut states = Vec::new();
    let mut events = Vec::new();
    times.push(0.0);
    states.push(*state0);

    match scheme {
        Scheme::Symmetric | Scheme::Symmetric4 => {
            let n = (t_end / dt).round().max(1.0) as usize;
            times.reserve(n);
            states.reserve(n);
            let (mut ax, mut ay) = accelerations(params, state0.x, state0.y)?;
            let mut s = *state0;
            for i in 1..=n {
                let step = match scheme {
                    Scheme::Symmetric => verlet_step(params, &s, dt, ax, ay),
                    _ => symmetric4_step(params, &s, dt, ax, ay),
                };
                match step {
                    Ok((next, fx, fy)) if next.is_finite() => {
                        s = next;
                        ax = fx;
                        ay = fy;
                        times.push(i as f64 * dt);
                        states.push(s);
                    }
                    _ => {
                        events.push(Event {
                            t: i as f64 * dt,
                            kind: EventKind::DomainExit,
                        });
                        break;
                    }
                }
            }
        }
        Scheme::RkAdaptive => {
            let mut s = [state0.x, state0.w, state0.y, state0.z];
            rhs4(params, &s)?;
            let mut t = 0.0;
            let mut h = dt.min(t_end);
            while t < t_end - 1e-12 {
                h = h.min(t_end - t);
                match dp54_attempt(params, &s, h) {
                    Ok((next, err)) if next.iter().all(|v| v.is_finite()) => {
                        if err <= 1.0 {
                            t += h;
                            s = next;
                            times.push(t);
                            states.push(State {
                                x: s[0],
                                w: s[1],
                                y: s[2],
                                z: s[3],
                            });
                        }
                        let factor = if err > 0.0 {
                            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
                        } else {
                            5.0
                        };
                        h *= factor;
                        if h < 1e-13 {
                            events.push(Event {
                                t,
                                kind: EventKind::DomainExit,
                            });
                            break;
                        }
                    }
                    _ => {
                        events.push(Event {
                            t: t + h,
                            kind: EventKind::DomainExit,
                        });
                        break;
                    }
                }
            }
        }
    }
    debug_assert!(times.windows(2).all(|w| w[0] < w[1]));
    // mark the first excursion past either escape threshold; classification
    // of where the orbit ends up is escape_detect's job
    if let Some(idx) = states.iter().position(|s| s.y < Y_FLAT || s.y > Y_TALL) {
        events.insert(
            0,
            Event {
                t: times[idx],
                kind: EventKind::Escape,
            },
        );
    }
    Ok(Trajectory {
        times,
        states,
        events,
        meta,
    })
}

impl State {
    fn is_finite(&self) -> bool {
        self.x.is_finite() && self.w.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

/// The equilibrium a perturbation sweep should center on: the stable one,
/// falling back to the prescribed branch in the degenerate window.
pub fn stable_equilibrium(params: &Params) -> Result<(Branch, f64)> {
    match classify(params) {
        Ok((pri, sec)) => {
            if pri.stability == Stability::Saddle {
                Ok((Branch::Secondary, sec.y_eq))
            } else {
                Ok((Branch::Primary, pri.y_eq))
            }
        }
        Err(_) => Ok((Branch::Primary, primary_equilibrium(params)?.y_eq)),
    }
}

/// Position-only perturbation of the stable equilibrium: displacement of
/// size `radius` at angle `phi` from the vertical, with zero velocities so
/// the state is fixed by the velocity-reversing involution. `phi = 0` lies
/// in the axial invariant plane; `phi` near the horizontal reaches the
/// rocking surface.
pub fn initial_condition(params: &Params, radius: f64, phi: f64) -> Result<State> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::Domain(format!("radius {radius} must be positive")));
    }
    if !(0.0..=std::f64::consts::PI).contains(&phi) {
        return Err(Error::Domain(format!("phi = {phi} outside [0, pi]")));
    }
    let (_, y_center) = stable_equilibrium(params)?;
    State::new(
        radius * phi.sin(),
        0.0,
        y_center + radius * phi.cos(),
        0.0,
    )
}

/// The perturbation angle at which the seed point lies on the rocking
/// surface's w = 0 slice, found by solving y_c + r cos(phi) = g(r sin(phi), 0).
pub fn rocking_phi(series: &ManifoldSeries, radius: f64) -> Result<f64> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::Domain(format!("radius {radius} must be positive")));
    }
    let f = |phi: f64| {
        series.y_center() + radius * phi.cos() - series.evaluate(radius * phi.sin(), 0.0)
    };
    bisect_secant(f, 0.0, std::f64::consts::PI, 1e-13, 200)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EscapeClass {
    Bounded,
    EscapedFlat,
    EscapedStretched,
}

impl EscapeClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            EscapeClass::Bounded => "bounded",
            EscapeClass::EscapedFlat => "escaped-flat",
            EscapeClass::EscapedStretched => "escaped-stretched",
        }
    }

    pub fn is_bounded(&self) -> bool {
        matches!(self, EscapeClass::Bounded)
    }
}

/// Classifies a trajectory by its first threshold crossing: below `Y_FLAT`
/// it flattened, above `Y_TALL` it stretched, otherwise it stayed bounded.
/// A candidate escape is confirmed by integrating 10 more time units and
/// requiring the height to end up large and non-returning (every escape
/// eventually runs upward; a flattening one rebounds from the incompressible
/// core first).
pub fn escape_detect(traj: &Trajectory, params: &Params) -> EscapeClass {
    let mut candidate = None;
    for (i, s) in traj.states.iter().enumerate() {
        if s.y < Y_FLAT {
            candidate = Some((i, EscapeClass::EscapedFlat));
            break;
        }
        if s.y > Y_TALL {
            candidate = Some((i, EscapeClass::EscapedStretched));
            break;
        }
    }
    let Some((_, class)) = candidate else {
        return EscapeClass::Bounded;
    };
    let last = traj.last_state();
    if !last.is_finite() || last.y <= 0.0 {
        // the run already blew past the admissible region
        return class;
    }
    let cont = match integrate(last, params, traj.meta.dt, 10.0, traj.meta.scheme) {
        Ok(c) => c,
        Err(_) => return class,
    };
    let final_y = cont.last_state().y;
    if final_y > Y_TALL && final_y >= 0.99 * last.y {
        class
    } else {
        EscapeClass::Bounded
    }
}

/// Section crossings at x = 0 with positive horizontal velocity, refined on
/// cubic Hermite interpolants of the stored steps.
#[derive(Debug, Clone)]
pub struct SectionMap {
    pub times: Vec<f64>,
    /// (w, y, z) at each refined crossing.
    pub crossings: Vec<[f64; 3]>,
    pub warning: Option<&'static str>,
}

fn hermite(p0: f64, m0: f64, p1: f64, m1: f64, dt: f64, tau: f64) -> f64 {
    let t2 = tau * tau;
    let t3 = t2 * tau;
    (2.0 * t3 - 3.0 * t2 + 1.0) * p0
        + (t3 - 2.0 * t2 + tau) * dt * m0
        + (-2.0 * t3 + 3.0 * t2) * p1
        + (t3 - t2) * dt * m1
}

pub fn poincare(traj: &Trajectory) -> Result<SectionMap> {
    let params = &traj.meta.params;
    let max_x = traj.states.iter().fold(0.0f64, |acc, s| acc.max(s.x.abs()));
    if max_x < 1e-12 {
        return Err(Error::Numerical(
            "non-transversal: the trajectory lies inside the section x = 0".into(),
        ));
    }
    let mut times = Vec::new();
    let mut crossings = Vec::new();
    for i in 0..traj.states.len().saturating_sub(1) {
        let (s0, s1) = (&traj.states[i], &traj.states[i + 1]);
        if !(s0.x < 0.0 && s1.x >= 0.0) {
            continue;
        }
        let dt = traj.times[i + 1] - traj.times[i];
        let (f0, h0) = accelerations(params, s0.x, s0.y)?;
        let (f1, h1) = accelerations(params, s1.x, s1.y)?;
        let x_at = |tau: f64| hermite(s0.x, s0.w, s1.x, s1.w, dt, tau);
        let (mut lo, mut hi) = (0.0, 1.0);
        let mut tau = 0.5;
        for _ in 0..200 {
            tau = 0.5 * (lo + hi);
            let v = x_at(tau);
            if v.abs() < 1e-10 || hi - lo < 1e-16 {
                break;
            }
            if (v < 0.0) == (s0.x < 0.0) {
                lo = tau;
            } else {
                hi = tau;
            }
        }
        if x_at(tau).abs() > 1e-10 {
            continue;
        }
        let w = hermite(s0.w, f0, s1.w, f1, dt, tau);
        if w <= 0.0 {
            continue;
        }
        let y = hermite(s0.y, s0.z, s1.y, s1.z, dt, tau);
        let z = hermite(s0.z, h0, s1.z, h1, dt, tau);
        times.push(traj.times[i] + tau * dt);
        crossings.push([w, y, z]);
    }
    let warning = if crossings.len() < 2 {
        Some("fewer than 2 section crossings")
    } else {
        None
    };
    Ok(SectionMap {
        times,
        crossings,
        warning,
    })
}

/// Largest nearest-neighbor distance among the section points: shrinks as a
/// quasiperiodic orbit fills its invariant circle.
pub fn section_gap_statistic(map: &SectionMap) -> Option<f64> {
    let n = map.crossings.len();
    if n < 2 {
        return None;
    }
    let mut worst = 0.0f64;
    for i in 0..n {
        let mut nearest = f64::INFINITY;
        for j in 0..n {
            if i == j {
                continue;
            }
            let d = map.crossings[i]
                .iter()
                .zip(map.crossings[j].iter())
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            nearest = nearest.min(d);
        }
        worst = worst.max(nearest);
    }
    Some(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbeddingVariant {
    /// The published display form, which repeats x*y/norm in both of the
    /// first two components.
    Verbatim,
    /// The symmetric reading with x*z/norm in the second component.
    Corrected,
}

impl EmbeddingVariant {
    pub fn as_str(&self) -> &'static str {
        match self {
            EmbeddingVariant::Verbatim => "verbatim",
            EmbeddingVariant::Corrected => "corrected",
        }
    }
}

impl FromStr for EmbeddingVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "verbatim" => Ok(EmbeddingVariant::Verbatim),
            "corrected" => Ok(EmbeddingVariant::Corrected),
            other => Err(Error::Domain(format!(
                "unknown embedding variant '{other}' (expected verbatim or corrected)"
            ))),
        }
    }
}

/// Maps a trajectory into 3D display coordinates by wrapping the x-excursion
/// around the (y, z) oscillation.
pub fn torus_embed(traj: &Trajectory, variant: EmbeddingVariant) -> Result<Vec<[f64; 3]>> {
    let mut out = Vec::with_capacity(traj.states.len());
    for s in &traj.states {
        let norm = s.y.hypot(s.z);
        if norm == 0.0 {
            return Err(Error::Domain(
                "degenerate embedding normalization at y = z = 0".into(),
            ));
        }
        let radial = s.x * s.y / norm;
        let second = match variant {
            EmbeddingVariant::Verbatim => s.z + radial,
            EmbeddingVariant::Corrected => s.z + s.x * s.z / norm,
        };
        out.push([s.y + radial, second, s.w]);
    }
    Ok(out)
}

/// Largest distance between the trajectory height and the rocking surface.
pub fn manifold_deviation(traj: &Trajectory, series: &ManifoldSeries) -> f64 {
    traj.states.iter().fold(0.0f64, |acc, s| {
        acc.max((s.y - series.evaluate(s.x, s.w)).abs())
    })
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub phi: f64,
    pub class: EscapeClass,
    pub max_manifold_dev: Option<f64>,
    pub section_count: usize,
}

#[derive(Debug)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub trajectories: Vec<Trajectory>,
    pub notes: Vec<String>,
}

/// Integrates one trajectory per perturbation angle and summarizes each:
/// boundedness, deviation from the rocking surface (when the surface exists
/// at this contact angle), and section-crossing count. Trajectories run
/// concurrently; output order follows the input angles.
pub fn sweep(
    params: &Params,
    radius: f64,
    phi_list: &[f64],
    dt: f64,
    t_end: f64,
) -> Result<SweepResult> {
    let mut notes = Vec::new();
    let (branch, _) = stable_equilibrium(params)?;
    let series = match rocking_series(params, 4, branch) {
        Ok(s) => Some(s),
        Err(e) => {
            notes.push(format!("no differentiable rocking manifold: {e}"));
            None
        }
    };
    let mut slots: Vec<Option<(SweepRow, Trajectory)>> = Vec::new();
    slots.resize_with(phi_list.len(), || None);
    let mut errors: Vec<String> = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for (idx, &phi) in phi_list.iter().enumerate() {
            let series = series.as_ref();
            handles.push((
                idx,
                phi,
                scope.spawn(move || -> Result<(SweepRow, Trajectory)> {
                    let ic = initial_condition(params, radius, phi)?;
                    let traj = integrate(&ic, params, dt, t_end, Scheme::Symmetric)?;
                    let class = escape_detect(&traj, params);
                    let max_manifold_dev = series.map(|s| manifold_deviation(&traj, s));
                    let section_count = match poincare(&traj) {
                        Ok(map) => map.crossings.len(),
                        Err(_) => 0,
                    };
                    Ok((
                        SweepRow {
                            phi,
                            class,
                            max_manifold_dev,
                            section_count,
                        },
                        traj,
                    ))
                }),
            ));
        }
        for (idx, phi, handle) in handles {
            match handle.join() {
                Ok(Ok(pair)) => slots[idx] = Some(pair),
                Ok(Err(e)) => errors.push(format!("phi = {phi}: {e}")),
                Err(_) => errors.push(format!("phi = {phi}: worker panicked")),
            }
        }
    });
    notes.extend(errors);
    let mut rows = Vec::new();
    let mut trajectories = Vec::new();
    for slot in slots.into_iter().flatten() {
        rows.push(slot.0);
        trajectories.push(slot.1);
    }
    Ok(SweepResult {
        rows,
        trajectories,
        notes,
    })
}

/// The four named sweep setups used for the figure protocol.
pub fn sweep_preset_alphas() -> Result<Vec<(&'static str, f64)>> {
    let dagger = crate::manifolds::singular_alphas(2)?[0];
    Ok(vec![
        ("pi4", std::f64::consts::FRAC_PI_4),
        ("dagger", dagger),
        ("2pi5", 2.0 * std::f64::consts::PI / 5.0),
        ("a145", 1.45),
    ])
}

/// Perturbation angles for a sweep: the axial seed, two interior angles, and
/// the rocking endpoint when the rocking surface exists at this contact
/// angle. Returns the note to record when it does not.
pub fn preset_phi_list(params: &Params, radius: f64) -> Result<(Vec<f64>, Option<String>)> {
    let (branch, _) = stable_equilibrium(params)?;
    match rocking_series(params, 4, branch).and_then(|s| rocking_phi(&s, radius)) {
        Ok(phi_rock) => Ok((
            vec![
                0.0,
                0.1,
                std::f64::consts::FRAC_PI_4,
                phi_rock - 0.1,
                phi_rock,
            ],
            None,
        )),
        Err(e) => Ok((
            vec![
                0.0,
                0.1,
                std::f64::consts::FRAC_PI_4,
                std::f64::consts::FRAC_PI_2,
            ],
            Some(format!("no differentiable rocking manifold: {e}")),
        )),
    }
}

/// CSV with header `t,x,w,y,z`.
pub fn write_trajectory_csv<W: io::Write>(traj: &Trajectory, out: &mut W) -> io::Result<()> {
    writeln!(out, "t,x,w,y,z")?;
    for (t, s) in traj.times.iter().zip(traj.states.iter()) {
        writeln!(
            out,
            "{},{},{},{},{}",
            fmt_float(*t),
            fmt_float(s.x),
            fmt_float(s.w),
            fmt_float(s.y),
            fmt_float(s.z)
        )?;
    }
    Ok(())
}

/// CSV with header `n,w,y,z`.
pub fn write_section_csv<W: io::Write>(map: &SectionMap, out: &mut W) -> io::Result<()> {
    writeln!(out, "n,w,y,z")?;
    for (n, c) in map.crossings.iter().enumerate() {
        writeln!(
            out,
            "{n},{},{},{}",
            fmt_float(c[0]),
            fmt_float(c[1]),
            fmt_float(c[2])
        )?;
    }
    Ok(())
}

/// CSV with header `e1,e2,e3`.
pub fn write_embedding_csv<W: io::Write>(points: &[[f64; 3]], out: &mut W) -> io::Result<()> {
    writeln!(out, "e1,e2,e3")?;
    for p in points {
        writeln!(
            out,
            "{},{},{}",
            fmt_float(p[0]),
            fmt_float(p[1]),
            fmt_float(p[2])
        )?;
    }
    Ok(())
}

/// CSV with header `phi,bounded,max_manifold_dev,section_count`; the
/// deviation column is empty when no rocking surface exists.
pub fn write_sweep_summary_csv<W: io::Write>(rows: &[SweepRow], out: &mut W) -> io::Result<()> {
    writeln!(out, "phi,bounded,max_manifold_dev,section_count")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{},{}",
            fmt_float(row.phi),
            row.class.is_bounded(),
            row.max_manifold_dev.map(fmt_float).unwrap_or_default(),
            row.section_count
        )?;
    }
    Ok(())
}
