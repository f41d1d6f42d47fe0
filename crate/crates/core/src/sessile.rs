//! Center-of-mass motion of a perturbed spherical-cap drop.
//!
//! The unperturbed drop is the region of a unit-contact-radius sphere above
//! the substrate plane: sphere radius csc(alpha), plane at height cot(alpha)
//! from the sphere center, polar angle s running from the apex (s = 0) to
//! the contact line (s = alpha). A pure surface mode perturbs the free
//! radius to
//!
//!   rho(s, phi, t) = csc(alpha) + eps * xi(s) * cos(l * phi) * cos(Omega * t)
//!
//! and every first-order center-of-mass statement reduces, by the phi
//! integral alone, to a 1D integral over s: l = 0 moves the drop vertically,
//! l = 1 horizontally within a fixed vertical plane, l >= 2 not at all. The
//! mode shape xi comes from the caller; only the classification and the
//! moment integrals live here.

use std::io;

use crate::equilibria::fmt_float;
use crate::error::{Error, Result};
use crate::numerics::quad::{gauss_legendre, integrate_adaptive};

pub const DEFAULT_ORACLE_NODES: usize = 128;
/// Amplitudes above this leave the linear-response regime the reduced
/// formulas describe.
pub const EPSILON_WARN: f64 = 0.05;

/// Mode shape along the polar angle, either an analytic test family or a
/// sampled profile from file.
#[derive(Debug, Clone)]
pub enum XiProfile {
    Constant(f64),
    /// Coefficients c0 + c1 s + c2 s^2 + ...
    Polynomial(Vec<f64>),
    /// amplitude * cos(waves * s)
    Cosine { amplitude: f64, waves: f64 },
    /// (s, xi) pairs with s ascending; evaluated by linear interpolation.
    Samples(Vec<(f64, f64)>),
}

impl XiProfile {
    pub fn eval(&self, s: f64) -> f64 {
        match self {
            XiProfile::Constant(c) => *c,
            XiProfile::Polynomial(coeffs) => {
                coeffs.iter().rev().fold(0.0, |acc, c| acc * s + c)
            }
            XiProfile::Cosine { amplitude, waves } => amplitude * (waves * s).cos(),
            XiProfile::Samples(pts) => {
                if pts.is_empty() {
                    return 0.0;
                }
                if s <= pts[0].0 {
                    return pts[0].1;
                }
                if s >= pts[pts.len() - 1].0 {
                    return pts[pts.len() - 1].1;
                }
                let i = pts.partition_point(|p| p.0 <= s) - 1;
                let (s0, v0) = pts[i];
                let (s1, v1) = pts[i + 1];
                v0 + (v1 - v0) * (s - s0) / (s1 - s0)
            }
        }
    }

    /// Interior knots where the profile is only piecewise smooth.
    fn breakpoints(&self) -> Vec<f64> {
        match self {
            XiProfile::Samples(pts) if pts.len() > 2 => {
                pts[1..pts.len() - 1].iter().map(|p| p.0).collect()
            }
            _ => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeClass {
    Bouncing,
    Rocking,
    Stationary,
}

impl ModeClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            ModeClass::Bouncing => "bouncing",
            ModeClass::Rocking => "rocking",
            ModeClass::Stationary => "stationary",
        }
    }
}

/// One pure surface mode of the cap. `k` is carried as a label only (it
/// indexes the out-of-scope polar eigenproblem); everything computed here
/// depends on (alpha, l, epsilon, Omega, xi).
#[derive(Debug, Clone)]
pub struct CapMode {
    pub alpha: f64,
    pub l: u32,
    pub k: u32,
    pub epsilon: f64,
    pub omega: f64,
    pub xi: XiProfile,
}

impl CapMode {
    pub fn new(
        alpha: f64,
        l: u32,
        k: u32,
        epsilon: f64,
        omega: f64,
        xi: XiProfile,
    ) -> Result<Self> {
        if !(alpha > 0.0 && alpha < std::f64::consts::PI) {
            return Err(Error::Domain(format!(
                "contact angle {alpha} outside (0, pi)"
            )));
        }
        if !(epsilon >= 0.0 && epsilon.is_finite()) {
            return Err(Error::Domain(format!(
                "amplitude {epsilon} must be finite and non-negative"
            )));
        }
        if !omega.is_finite() {
            return Err(Error::Domain(format!("frequency {omega} must be finite")));
        }
        if let XiProfile::Samples(pts) = &xi {
            if pts.len() < 2 {
                return Err(Error::Domain(
                    "sampled profile needs at least 2 points".into(),
                ));
            }
            if !pts.windows(2).all(|w| w[0].0 < w[1].0) {
                return Err(Error::Domain(
                    "sampled profile abscissas must be strictly ascending".into(),
                ));
            }
            if pts[0].0 < -1e-12 || pts[pts.len() - 1].0 > alpha + 1e-12 {
                return Err(Error::Domain(format!(
                    "sampled profile must lie inside [0, {alpha}]"
                )));
            }
        }
        let mode = CapMode {
            alpha,
            l,
            k,
            epsilon,
            omega,
            xi,
        };
        for i in 0..=200 {
            let s = alpha * i as f64 / 200.0;
            if !mode.xi.eval(s).is_finite() {
                return Err(Error::Domain(format!(
                    "profile is not finite at s = {s}"
                )));
            }
        }
        Ok(mode)
    }

    pub fn epsilon_warning(&self) -> Option<String> {
        (self.epsilon > EPSILON_WARN).then(|| {
            format!(
                "amplitude {} exceeds {}; first-order formulas degrade",
                self.epsilon, EPSILON_WARN
            )
        })
    }
}

/// Wavenumber classification of the first-order center-of-mass response.
pub fn classify_mode(mode: &CapMode) -> Result<ModeClass> {
    match mode.l {
        0 => Ok(ModeClass::Bouncing),
        1 if mode.k == 1 => Err(Error::Domain(
            "mode (k, l) = (1, 1) is rejected: it is not a stable oscillation".into(),
        )),
        1 => Ok(ModeClass::Rocking),
        _ => Ok(ModeClass::Stationary),
    }
}

/// Unperturbed cap volume in closed form.
pub fn volume_closed_form(alpha: f64) -> f64 {
    let half = 0.5 * alpha;
    std::f64::consts::PI / 6.0 * (alpha.cos() + 2.0) * half.tan() / half.cos().powi(2)
}

fn xi_integral(mode: &CapMode, kernel: impl Fn(f64) -> f64) -> Result<f64> {
    let mut f = |s: f64| mode.xi.eval(s) * kernel(s);
    integrate_adaptive(&mut f, 0.0, mode.alpha, 1e-12)
}

/// Volume at time t: the exact cone subtraction plus the sector integral,
/// whose O(eps) part survives only for l = 0.
pub fn cap_volume(mode: &CapMode, t: f64) -> Result<f64> {
    let m0 = volume_closed_form(mode.alpha);
    if mode.l != 0 || mode.epsilon == 0.0 {
        return Ok(m0);
    }
    let csc = 1.0 / mode.alpha.sin();
    let linear = xi_integral(mode, |s| s.sin())?;
    Ok(m0
        + mode.epsilon
            * (mode.omega * t).cos()
            * 2.0
            * std::f64::consts::PI
            * csc
            * csc
            * linear)
}

#[derive(Debug, Clone)]
pub struct ComTrace {
    pub times: Vec<f64>,
    pub xbar: Vec<f64>,
    pub ybar: Vec<f64>,
    pub zbar: Vec<f64>,
    pub volume: Vec<f64>,
    pub classification: ModeClass,
}

/// First-order center-of-mass trace on a time grid. The three wavenumber
/// cases are separate closed-form paths; heights are measured from the
/// sphere center, where the unperturbed moment is pi/4 for every contact
/// angle.
pub fn com_trace(mode: &CapMode, t_grid: &[f64]) -> Result<ComTrace> {
    if t_grid.iter().any(|t| !t.is_finite()) {
        return Err(Error::Domain("time grid must be finite".into()));
    }
    let classification = classify_mode(mode)?;
    let m0 = volume_closed_form(mode.alpha);
    let quarter_pi = std::f64::consts::FRAC_PI_4;
    let csc = 1.0 / mode.alpha.sin();
    let csc3 = csc * csc * csc;

    let mut xbar = Vec::with_capacity(t_grid.len());
    let mut ybar = vec![0.0; t_grid.len()];
    let mut zbar = Vec::with_capacity(t_grid.len());
    let mut volume = Vec::with_capacity(t_grid.len());

    match classification {
        ModeClass::Bouncing => {
            let vol_term = 2.0 * std::f64::consts::PI * csc * csc
                * xi_integral(mode, |s| s.sin())?;
            let z_term = std::f64::consts::PI * csc3
                * xi_integral(mode, |s| (2.0 * s).sin())?;
            for &t in t_grid {
                let c = mode.epsilon * (mode.omega * t).cos();
                let m = m0 + c * vol_term;
                volume.push(m);
                zbar.push((quarter_pi + c * z_term) / m);
                xbar.push(0.0);
            }
        }
        ModeClass::Rocking => {
            let x_term = std::f64::consts::PI * csc3
                * xi_integral(mode, |s| s.sin() * s.sin())?;
            for &t in t_grid {
                let c = mode.epsilon * (mode.omega * t).cos();
                volume.push(m0);
                zbar.push(quarter_pi / m0);
                xbar.push(c * x_term / m0);
            }
        }
        ModeClass::Stationary => {
            for _ in t_grid {
                volume.push(m0);
                zbar.push(quarter_pi / m0);
                xbar.push(0.0);
            }
        }
    }
    ybar.shrink_to_fit();
    Ok(ComTrace {
        times: t_grid.to_vec(),
        xbar,
        ybar,
        zbar,
        volume,
        classification,
    })
}

/// Gauss-Legendre nodes for the polar integral: one rule per smooth panel
/// of the profile, budgeted proportionally to panel length.
fn polar_rule(mode: &CapMode, n: usize) -> Vec<(f64, f64)> {
    let mut edges = vec![0.0];
    edges.extend(
        mode.xi
            .breakpoints()
            .into_iter()
            .filter(|&s| s > 1e-12 && s < mode.alpha - 1e-12),
    );
    edges.push(mode.alpha);
    let mut rule = Vec::new();
    for pair in edges.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let m = ((n as f64 * (b - a) / mode.alpha).ceil() as usize).clamp(6, n.max(6));
        let (nodes, weights) = gauss_legendre(m);
        for (node, weight) in nodes.into_iter().zip(weights) {
            let mid = 0.5 * (a + b);
            let half = 0.5 * (b - a);
            rule.push((mid + half * node, half * weight));
        }
    }
    rule
}

/// One full product-rule pass: (M, M x̄, M ȳ, M z̄).
fn oracle_pass(mode: &CapMode, t: f64, n: usize) -> [f64; 4] {
    let csc = 1.0 / mode.alpha.sin();
    let cot = 1.0 / mode.alpha.tan();
    let carrier = mode.epsilon * (mode.omega * t).cos();
    let s_rule = polar_rule(mode, n);
    let (phi_nodes, phi_weights) = gauss_legendre(n);
    let phi_rule: Vec<(f64, f64)> = phi_nodes
        .into_iter()
        .zip(phi_weights)
        .map(|(node, weight)| {
            (
                std::f64::consts::PI * (node + 1.0),
                std::f64::consts::PI * weight,
            )
        })
        .collect();
    let mut acc = [0.0f64; 4];
    for &(s, ws) in &s_rule {
        let (sin_s, cos_s) = s.sin_cos();
        let xi = mode.xi.eval(s);
        for &(phi, wphi) in &phi_rule {
            let rho = csc + carrier * xi * (mode.l as f64 * phi).cos();
            let r3 = rho * rho * rho;
            let r4 = r3 * rho;
            let w = ws * wphi * sin_s;
            acc[0] += w * r3 / 3.0;
            acc[1] += w * r4 / 4.0 * sin_s * phi.cos();
            acc[2] += w * r4 / 4.0 * sin_s * phi.sin();
            acc[3] += w * r4 / 4.0 * cos_s;
        }
    }
    acc[0] -= std::f64::consts::PI / 3.0 * cot;
    acc[3] -= std::f64::consts::FRAC_PI_4 * cot * cot;
    acc
}

/// Direct 3D quadrature of the drop moments with the radial integral in
/// closed form, so only (s, phi) carry discretization error. Runs the rule
/// at n and n/2 nodes and rejects the result if the two disagree.
pub fn com_oracle_3d(mode: &CapMode, t: f64, n: usize) -> Result<(f64, f64, f64, f64)> {
    if n < 8 {
        return Err(Error::Domain(format!("resolution {n} too small (need 8+)")));
    }
    let fine = oracle_pass(mode, t, n);
    let coarse = oracle_pass(mode, t, n / 2);
    for i in 0..4 {
        let est = (fine[i] - coarse[i]).abs();
        if est > 1e-7 * (1.0 + fine[i].abs()) {
            return Err(Error::Numerical(format!(
                "quadrature at {n} nodes has not converged (moment {i} error estimate {est:.3e})"
            )));
        }
    }
    Ok((fine[0], fine[1], fine[2], fine[3]))
}

/// Parses a mode-shape CSV with header `s,xi`.
pub fn read_xi_csv<R: io::BufRead>(reader: R) -> Result<XiProfile> {
    let mut pts = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::Domain(format!("profile read failed: {e}")))?;
        let line = line.trim();
        if idx == 0 {
            if line != "s,xi" {
                return Err(Error::Domain(format!(
                    "expected header 's,xi', found '{line}'"
                )));
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let mut cells = line.split(',');
        let (s, xi) = match (cells.next(), cells.next(), cells.next()) {
            (Some(a), Some(b), None) => (
                a.trim().parse::<f64>(),
                b.trim().parse::<f64>(),
            ),
            _ => {
                return Err(Error::Domain(format!(
                    "line {}: expected two comma-separated values",
                    idx + 1
                )))
            }
        };
        match (s, xi) {
            (Ok(s), Ok(xi)) => pts.push((s, xi)),
            _ => {
                return Err(Error::Domain(format!("line {}: unparseable floats", idx + 1)));
            }
        }
    }
    if pts.len() < 2 {
        return Err(Error::Domain(
            "sampled profile needs at least 2 points".into(),
        ));
    }
    Ok(XiProfile::Samples(pts))
}

/// CSV with header `t,xbar,ybar,zbar,M,class`.
pub fn write_com_trace_csv<W: io::Write>(trace: &ComTrace, out: &mut W) -> io::Result<()> {
    writeln!(out, "t,xbar,ybar,zbar,M,class")?;
    for i in 0..trace.times.len() {
        writeln!(
            out,
            "{},{},{},{},{},{}",
            fmt_float(trace.times[i]),
            fmt_float(trace.xbar[i]),
            fmt_float(trace.ybar[i]),
            fmt_float(trace.zbar[i]),
            fmt_float(trace.volume[i]),
            trace.classification.as_str()
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

    fn hemisphere(epsilon: f64, l: u32) -> CapMode {
        CapMode::new(FRAC_PI_2, l, 2, epsilon, 1.0, XiProfile::Constant(1.0)).unwrap()
    }

    #[test]
    fn hemisphere_moments_are_exact() {
        let mode = hemisphere(0.0, 0);
        let v = cap_volume(&mode, 0.0).unwrap();
        assert!((v - 2.0 * PI / 3.0).abs() < 1e-14);
        let (m, mx, my, mz) = com_oracle_3d(&mode, 0.0, 64).unwrap();
        assert!((m - 2.0 * PI / 3.0).abs() < 1e-12);
        assert!(mx.abs() < 1e-14 && my.abs() < 1e-14);
        assert!((mz - PI / 4.0).abs() < 1e-12);
    }

    #[test]
    fn classification_follows_the_wavenumber() {
        assert_eq!(classify_mode(&hemisphere(0.01, 0)).unwrap(), ModeClass::Bouncing);
        assert_eq!(classify_mode(&hemisphere(0.01, 1)).unwrap(), ModeClass::Rocking);
        assert_eq!(classify_mode(&hemisphere(0.01, 2)).unwrap(), ModeClass::Stationary);
        assert_eq!(classify_mode(&hemisphere(0.01, 7)).unwrap(), ModeClass::Stationary);
        let bad = CapMode::new(FRAC_PI_3, 1, 1, 0.01, 1.0, XiProfile::Constant(1.0)).unwrap();
        assert!(classify_mode(&bad).is_err());
    }

    #[test]
    fn unperturbed_trace_is_static() {
        let mode = hemisphere(0.0, 3);
        let trace = com_trace(&mode, &[0.0, 0.5, 1.0]).unwrap();
        let m0 = volume_closed_form(FRAC_PI_2);
        for i in 0..3 {
            assert_eq!(trace.xbar[i], 0.0);
            assert_eq!(trace.ybar[i], 0.0);
            assert!((trace.zbar[i] - PI / (4.0 * m0)).abs() < 1e-15);
            assert!((trace.volume[i] - m0).abs() < 1e-15);
        }
    }

    #[test]
    fn constant_profile_volume_term_matches_the_analytic_integral() {
        for alpha in [FRAC_PI_3, 1.0, 2.0] {
            let mode = CapMode::new(alpha, 0, 2, 0.01, 1.3, XiProfile::Constant(0.7)).unwrap();
            let m0 = volume_closed_form(alpha);
            for t in [0.0, 0.4, 1.1] {
                let lhs = cap_volume(&mode, t).unwrap() - m0;
                let csc = 1.0 / alpha.sin();
                let rhs = 0.01
                    * (1.3 * t).cos()
                    * 2.0
                    * PI
                    * csc
                    * csc
                    * 0.7
                    * (1.0 - alpha.cos());
                assert!((lhs - rhs).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn volume_closed_form_equals_sector_minus_cone() {
        for alpha in [0.3, FRAC_PI_3, FRAC_PI_2, 2.0, 2.8] {
            let sector =
                2.0 * PI / 3.0 * (1.0 - alpha.cos()) / alpha.sin().powi(3);
            let cone = PI / 3.0 / alpha.tan();
            assert!((volume_closed_form(alpha) - (sector - cone)).abs() < 1e-12);
        }
    }

    #[test]
    fn amplitude_warning_threshold() {
        assert!(hemisphere(0.01, 0).epsilon_warning().is_none());
        assert!(hemisphere(0.06, 0).epsilon_warning().is_some());
    }

    #[test]
    fn profile_evaluation_and_validation() {
        let poly = XiProfile::Polynomial(vec![1.0, -2.0, 0.5]);
        assert!((poly.eval(0.4) - (1.0 - 0.8 + 0.08)).abs() < 1e-15);
        let cosine = XiProfile::Cosine {
            amplitude: 2.0,
            waves: 3.0,
        };
        assert!((cosine.eval(0.2) - 2.0 * 0.6f64.cos()).abs() < 1e-15);
        let samples = XiProfile::Samples(vec![(0.0, 1.0), (0.5, 2.0), (1.0, 0.0)]);
        assert!((samples.eval(0.25) - 1.5).abs() < 1e-15);
        assert_eq!(samples.eval(-0.1), 1.0);
        assert_eq!(samples.eval(2.0), 0.0);
        let unordered = XiProfile::Samples(vec![(0.5, 1.0), (0.1, 2.0)]);
        assert!(CapMode::new(1.0, 0, 2, 0.01, 1.0, unordered).is_err());
        let outside = XiProfile::Samples(vec![(0.0, 1.0), (1.5, 2.0)]);
        assert!(CapMode::new(1.0, 0, 2, 0.01, 1.0, outside).is_err());
    }

    #[test]
    fn xi_csv_round_trip_and_trace_csv_format() {
        let text = "s,xi\n0.0,1.0\n0.5,0.25\n";
        let profile = read_xi_csv(io::Cursor::new(text)).unwrap();
        match &profile {
            XiProfile::Samples(pts) => assert_eq!(pts.len(), 2),
            _ => unreachable!(),
        }
        assert!(read_xi_csv(io::Cursor::new("a,b\n1,2\n")).is_err());
        assert!(read_xi_csv(io::Cursor::new("s,xi\n1,2,3\n")).is_err());

        let mode = hemisphere(0.0, 0);
        let trace = com_trace(&mode, &[0.25]).unwrap();
        let mut buf = Vec::new();
        write_com_trace_csv(&trace, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "t,xbar,ybar,zbar,M,class");
        let row = lines.next().unwrap();
        assert!(row.starts_with("2.5000000000000000e-1,0.0000000000000000e0,"));
        assert!(row.ends_with(",bouncing"));
    }
}
