//! Equilibrium branches, closed-form Jacobian eigenvalues, stability
//! classification, and bifurcation-diagram data across the contact angle.
//!
//! Every equilibrium is an isosceles configuration (0, y) with
//! y = sqrt(tan(alpha))/3 and q(alpha) = q(alpha0). Since q attains each
//! value below its maximum at two angles, there are two branches: the
//! prescribed-angle branch and a second one found by root finding. The two
//! exchange stability transcritically at the critical angle where q peaks.

use std::io;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Params;
use crate::numerics::roots::{bisect_secant, linspace, logspace, scan_sign_changes};

/// Half-width of the window around the critical angle inside which the two
/// roots are treated as coincident and labeled degenerate.
pub const DEGENERATE_WINDOW: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    Primary,
    Secondary,
}

impl Branch {
    pub fn as_str(&self) -> &'static str {
        match self {
            Branch::Primary => "primary",
            Branch::Secondary => "secondary",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stability {
    Center,
    Saddle,
    Degenerate,
}

impl Stability {
    pub fn as_str(&self) -> &'static str {
        match self {
            Stability::Center => "center",
            Stability::Saddle => "saddle",
            Stability::Degenerate => "degenerate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Equilibrium {
    /// Height of the center of mass; the horizontal coordinate is 0.
    pub y_eq: f64,
    /// Contact angle of the isosceles configuration, arctan(9 y^2).
    pub contact_angle: f64,
    pub branch: Branch,
    pub stability: Stability,
}

/// The four Jacobian eigenvalues at an equilibrium. With f_y = h_x = 0 on
/// the axis they are exactly the two square-root pairs of the diagonal
/// partials, so each pair negates to the other bitwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenSet {
    pub lambda12: [Complex64; 2],
    pub lambda34: [Complex64; 2],
    pub fx: f64,
    pub hy: f64,
}

impl EigenSet {
    pub fn from_partials(fx: f64, hy: f64) -> Self {
        let sqrt_pair = |v: f64| {
            let root = if v >= 0.0 {
                Complex64::new(v.sqrt(), 0.0)
            } else {
                Complex64::new(0.0, (-v).sqrt())
            };
            [root, -root]
        };
        EigenSet {
            lambda12: sqrt_pair(fx),
            lambda34: sqrt_pair(hy),
            fx,
            hy,
        }
    }
}

/// Left-hand side of the secondary-equilibrium condition in terms of the
/// equilibrium height: 486 y^5 / ((81 y^4 + 1)(sqrt(81 y^4 + 1) + 4)).
/// Equal to q(arctan(9 y^2)) for every y > 0.
pub fn equilibrium_q_of_y(y: f64) -> f64 {
    let y4 = 81.0 * y.powi(4);
    486.0 * y.powi(5) / ((y4 + 1.0) * ((y4 + 1.0).sqrt() + 4.0))
}

/// Logarithmic derivative of q; q is increasing where this is positive.
fn q_log_derivative(alpha: f64) -> f64 {
    let (sin, cos) = alpha.sin_cos();
    let tan = sin / cos;
    let sec = 1.0 / cos;
    2.5 / tan + 0.5 * tan - sec * tan / (4.0 + sec)
}

/// The critical angle where q attains its maximum, found as the root of the
/// derivative of q on (0, pi/2).
pub fn critical_alpha_star(tol: f64) -> f64 {
    let grid = linspace(0.2, 1.55, 200);
    let brackets = scan_sign_changes(q_log_derivative, &grid);
    let (lo, hi) = brackets[0];
    bisect_secant(q_log_derivative, lo, hi, tol, 200)
        .expect("derivative of q changes sign exactly once on (0, pi/2)")
}

/// Closed-form diagonal Jacobian partials (f_x, h_y) in terms of the
/// equilibrium height.
pub fn jacobian_partials(y_eq: f64) -> (f64, f64) {
    let p = 81.0 * y_eq.powi(4) + 1.0;
    let root = p.sqrt();
    let fx = -1458.0 * y_eq.powi(5) / p.powf(1.5);
    let hy = 18.0 * y_eq / p.powf(1.5) * (81.0 * y_eq.powi(4) * (root - 4.0) / (root + 4.0) - 5.0);
    (fx, hy)
}

/// The same partials at the prescribed-angle equilibrium, written in the
/// contact angle instead of the height.
pub fn jacobian_partials_alpha(alpha0: f64) -> (f64, f64) {
    let (sin, cos) = alpha0.sin_cos();
    let sec = 1.0 / cos;
    let fx = -6.0 * (sin.powi(5) * cos).sqrt();
    let hy = -6.0 * alpha0.tan().sqrt() / (sec + 4.0)
        * (16.0 * cos + 3.0 * (2.0 * alpha0).cos() + 4.0 * (3.0 * alpha0).cos() + 2.0);
    (fx, hy)
}

fn stability_of(alpha0: f64, y_eq: f64) -> Stability {
    if (alpha0 - critical_alpha_star(1e-12)).abs() < DEGENERATE_WINDOW {
        return Stability::Degenerate;
    }
    let (_, hy) = jacobian_partials(y_eq);
    if hy < 0.0 {
        Stability::Center
    } else if hy > 0.0 {
        Stability::Saddle
    } else {
        Stability::Degenerate
    }
}

/// The equilibrium with the prescribed contact angle: (0, sqrt(tan a0)/3).
pub fn primary_equilibrium(params: &Params) -> Result<Equilibrium> {
    let alpha0 = params.alpha0();
    if !(alpha0 > 0.0 && alpha0 < std::f64::consts::FRAC_PI_2) {
        return Err(Error::Domain(format!(
            "alpha0 = {alpha0} outside (0, pi/2)"
        )));
    }
    let y_eq = alpha0.tan().sqrt() / 3.0;
    Ok(Equilibrium {
        y_eq,
        contact_angle: alpha0,
        branch: Branch::Primary,
        stability: stability_of(alpha0, y_eq),
    })
}

/// The second equilibrium: the other positive height at which the
/// equilibrium condition takes the value q(alpha0). Found by a sign-change
/// scan on a log-spaced height grid followed by bracketed refinement.
pub fn secondary_equilibrium(params: &Params, tol: f64) -> Result<Equilibrium> {
    let alpha0 = params.alpha0();
    let q0 = params.q();
    let y0 = alpha0.tan().sqrt() / 3.0;
    let residual = |y: f64| equilibrium_q_of_y(y) - q0;
    let grid = logspace(1e-4, 1e3, 4000);
    let brackets = scan_sign_changes(residual, &grid);
    let mut roots = Vec::new();
    for (lo, hi) in brackets {
        let r = bisect_secant(residual, lo, hi, tol, 300)?;
        if roots
            .iter()
            .all(|&seen: &f64| (seen - r).abs() > 10.0 * tol.max(1e-13))
        {
            roots.push(r);
        }
    }
    let y1 = roots
        .into_iter()
        .filter(|&r| (r - y0).abs() >= 10.0 * tol)
        .max_by(|a, b| {
            let da = (a - y0).abs();
            let db = (b - y0).abs();
            da.partial_cmp(&db).unwrap()
        })
        .ok_or_else(|| {
            Error::Numerical(format!(
                "equilibrium roots coincide near the critical angle (alpha0 = {alpha0})"
            ))
        })?;
    let contact_angle = (9.0 * y1 * y1).atan();
    Ok(Equilibrium {
        y_eq: y1,
        contact_angle,
        branch: Branch::Secondary,
        stability: stability_of(alpha0, y1),
    })
}

/// Eigenvalues at an equilibrium from the closed-form partials.
pub fn eigen_set(eq: &Equilibrium) -> EigenSet {
    let (fx, hy) = jacobian_partials(eq.y_eq);
    EigenSet::from_partials(fx, hy)
}

/// Both equilibria with stability labels. Below the critical angle the
/// prescribed branch is a center and the other a saddle; the labels swap
/// above it, and both are degenerate inside the exclusion window.
pub fn classify(params: &Params) -> Result<(Equilibrium, Equilibrium)> {
    let primary = primary_equilibrium(params)?;
    if primary.stability == Stability::Degenerate {
        return Ok((
            primary,
            Equilibrium {
                stability: Stability::Degenerate,
                branch: Branch::Secondary,
                ..primary
            },
        ));
    }
    let secondary = secondary_equilibrium(params, 1e-12)?;
    Ok((primary, secondary))
}

/// One point of the bifurcation diagram. A failed secondary root leaves the
/// second branch empty instead of aborting the scan.
#[derive(Debug, Clone, PartialEq)]
pub struct BifurcationRow {
    pub alpha0: f64,
    pub y0: f64,
    pub stab0: Stability,
    pub y1: Option<f64>,
    pub stab1: Option<Stability>,
}

/// Branch data over a grid of contact angles. The grid should avoid a small
/// window around the critical angle, where the roots coincide.
pub fn bifurcation_scan(alpha_grid: &[f64]) -> Vec<BifurcationRow> {
    alpha_grid
        .iter()
        .map(|&alpha0| {
            let params = match Params::new(alpha0) {
                Ok(p) => p,
                Err(_) => {
                    return BifurcationRow {
                        alpha0,
                        y0: f64::NAN,
                        stab0: Stability::Degenerate,
                        y1: None,
                        stab1: None,
                    }
                }
            };
            let primary = primary_equilibrium(&params).expect("validated alpha0");
            let (y1, stab1) = match secondary_equilibrium(&params, 1e-12) {
                Ok(eq) => (Some(eq.y_eq), Some(eq.stability)),
                Err(_) => (None, None),
            };
            BifurcationRow {
                alpha0,
                y0: primary.y_eq,
                stab0: primary.stability,
                y1,
                stab1,
            }
        })
        .collect()
}

/// Fixed-width float formatting used by every CSV emitter: 17 significant
/// digits, locale-independent, byte-stable across runs.
pub(crate) fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// CSV with header `alpha0,y0,y1,stab0,stab1`; failed points leave the
/// secondary columns empty.
pub fn write_bifurcation_csv<W: io::Write>(rows: &[BifurcationRow], out: &mut W) -> io::Result<()> {
    writeln!(out, "alpha0,y0,y1,stab0,stab1")?;
    for row in rows {
        let y1 = row.y1.map(fmt_float).unwrap_or_default();
        let stab1 = row.stab1.map(|s| s.as_str()).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{}",
            fmt_float(row.alpha0),
            fmt_float(row.y0),
            y1,
            row.stab0.as_str(),
            stab1
        )?;
    }
    Ok(())
}
