//! Domain types, the dimensionless pressure coefficient q, the
//! center-of-mass description of the triangle, the 4D vector field, and the
//! phase-space symmetries.
//!
//! All computation is dimensionless: lengths are scaled by the area scale and
//! time by the inertial time. The drop is a triangle with two contact points
//! on the substrate and a free apex; its state is the center of mass (x, y)
//! together with the velocities (w, z) = (xdot, ydot).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Scalar;

/// Validity domain for the height of the center of mass. Trajectories that
/// leave it are reported as structured events rather than NaN states.
pub const Y_MIN: f64 = 1e-6;
pub const Y_MAX: f64 = 1e6;

/// The single model parameter: the rest-state contact angle `alpha0` and the
/// dimensionless pressure coefficient `q` derived from it at construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params {
    alpha0: f64,
    q: f64,
}

impl Params {
    /// Primary constructor: `alpha0` must lie in (0, pi/2), where q(alpha0)
    /// is real and positive.
    pub fn new(alpha0: f64) -> Result<Self> {
        let q = q_of_alpha(alpha0)?;
        Ok(Params { alpha0, q })
    }

    /// Exploration constructor decoupling q from alpha0: accepts any angle in
    /// (0, pi) and a caller-chosen non-negative coefficient.
    pub fn with_q(alpha0: f64, q: f64) -> Result<Self> {
        if !(alpha0 > 0.0 && alpha0 < std::f64::consts::PI) {
            return Err(Error::Domain(format!(
                "alpha0 = {alpha0} outside (0, pi)"
            )));
        }
        if !(q >= 0.0 && q.is_finite()) {
            return Err(Error::Domain(format!("q = {q} must be finite and >= 0")));
        }
        Ok(Params { alpha0, q })
    }

    pub fn alpha0(&self) -> f64 {
        self.alpha0
    }

    pub fn q(&self) -> f64 {
        self.q
    }
}

/// Optional physical scales (surface tension, density, drop volume). They
/// take no part in the dynamics; they only convert dimensionless output to
/// physical units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scales {
    pub sigma: f64,
    pub rho: f64,
    pub volume: f64,
}

impl Scales {
    /// Length unit: the cube root of the volume.
    pub fn length(&self) -> f64 {
        self.volume.cbrt()
    }

    /// Time unit: the inertial time sqrt(rho V / sigma).
    pub fn time(&self) -> f64 {
        (self.rho * self.volume / self.sigma).sqrt()
    }
}

/// A point (x, w, y, z) of the 4D phase space: horizontal and vertical
/// center-of-mass coordinates and their velocities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct State {
    pub x: f64,
    pub w: f64,
    pub y: f64,
    pub z: f64,
}

impl State {
    pub fn new(x: f64, w: f64, y: f64, z: f64) -> Result<Self> {
        if !(x.is_finite() && w.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::Domain("non-finite state component".into()));
        }
        if y <= 0.0 {
            return Err(Error::Domain(format!(
                "y = {y} places the center of mass at or below the substrate"
            )));
        }
        Ok(State { x, w, y, z })
    }
}

/// Reconstructed triangle geometry for a given center of mass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriangleConfig {
    pub x_a: f64,
    pub x_b: f64,
    pub x_c: f64,
    pub y_c: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

/// Dimensionless net force components (force over sigma times the length
/// scale). By symmetry `fx` vanishes exactly at x = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForcePair {
    pub fx: f64,
    pub fy: f64,
}

/// The dimensionless pressure coefficient
/// q(alpha) = 2 sin^2(alpha) sqrt(tan(alpha)) / (4 + sec(alpha)).
pub fn q_of_alpha(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < std::f64::consts::FRAC_PI_2) {
        return Err(Error::Domain(format!(
            "alpha = {alpha} outside (0, pi/2); tan(alpha) must be positive"
        )));
    }
    let s = alpha.sin();
    Ok(2.0 * s * s * alpha.tan().sqrt() / (4.0 + 1.0 / alpha.cos()))
}

/// Triangle geometry from the center of mass: vertices
/// (-1/(3y), 0), (1/(3y), 0), (3x, 3y), side lengths, and interior angles.
/// The unit-area constraint holds for every admissible (x, y).
pub fn triangle_from_com(x: f64, y: f64) -> Result<TriangleConfig> {
    if !(y.is_finite() && y > 0.0) {
        return Err(Error::Domain(format!("y = {y} must be positive")));
    }
    let x_a = -1.0 / (3.0 * y);
    let x_b = 1.0 / (3.0 * y);
    let x_c = 3.0 * x;
    let y_c = 3.0 * y;
    let a = ((x_b - x_c).powi(2) + y_c * y_c).sqrt();
    let b = ((x_c - x_a).powi(2) + y_c * y_c).sqrt();
    let c = x_b - x_a;
    let alpha = y_c.atan2(x_c - x_a);
    let beta = y_c.atan2(x_b - x_c);
    // Apex angle from the two edge vectors, not from pi - alpha - beta, so
    // the angle-sum identity stays a genuine check.
    let (ux, uy) = (x_a - x_c, -y_c);
    let (vx, vy) = (x_b - x_c, -y_c);
    let gamma = (ux * vy - uy * vx).abs().atan2(ux * vx + uy * vy);
    Ok(TriangleConfig {
        x_a,
        x_b,
        x_c,
        y_c,
        a,
        b,
        c,
        alpha,
        beta,
        gamma,
    })
}

/// Acceleration field of the dimensionless system: returns
/// (f(x, y), h(x, y)), writable over plain numbers or truncated series.
pub(crate) fn force_field<T: Scalar>(q: f64, x: &T, y: &T) -> (T, T) {
    let one = x.lift(1.0);
    let y3 = y.scale(3.0);
    let x3 = x.scale(3.0);
    let inv3y = one.div(&y3);
    let t1 = inv3y.sub(&x3);
    let t2 = inv3y.add(&x3);
    let y3sq = y3.mul(&y3);
    let a = t1.mul(&t1).add(&y3sq).sqrt();
    let b = t2.mul(&t2).add(&y3sq).sqrt();
    let f = t1.div(&a).sub(&t2.div(&b));
    let inv_a = one.div(&a);
    let inv_b = one.div(&b);
    let spread = y3.mul(&inv_a.add(&inv_b)).scale(-1.0);
    let squeeze = inv3y
        .scale(q)
        .mul(&a.add(&b).scale(2.0).mul(&inv3y).add(&a.mul(&b)));
    let h = spread.add(&squeeze);
    (f, h)
}

/// f(x, y) and h(x, y) with the domain guard applied.
pub fn accelerations(params: &Params, x: f64, y: f64) -> Result<(f64, f64)> {
    if !(Y_MIN..=Y_MAX).contains(&y) {
        return Err(Error::Domain(format!(
            "left validity domain: y = {y} outside [{Y_MIN}, {Y_MAX}]"
        )));
    }
    let (f, h) = force_field(params.q, &x, &y);
    if !(f.is_finite() && h.is_finite()) {
        return Err(Error::Numerical(format!(
            "non-finite acceleration at (x, y) = ({x}, {y})"
        )));
    }
    Ok((f, h))
}

/// Dimensionless net force on the drop at center of mass (x, y); identical
/// to the acceleration field since the dimensionless mass is one.
pub fn net_force(params: &Params, x: f64, y: f64) -> Result<ForcePair> {
    let (f, h) = accelerations(params, x, y)?;
    Ok(ForcePair { fx: f, fy: h })
}

/// The 4D vector field (xdot, wdot, ydot, zdot) = (w, f, z, h).
pub fn rhs(state: &State, params: &Params) -> Result<[f64; 4]> {
    let (f, h) = accelerations(params, state.x, state.y)?;
    Ok([state.w, f, state.z, h])
}

/// Involution G1: (x, w, y, z) -> (-x, w, y, -z); with t -> -t it reverses
/// the flow.
pub fn apply_g1(s: &State) -> State {
    State {
        x: -s.x,
        w: s.w,
        y: s.y,
        z: -s.z,
    }
}

/// Involution G2: (x, w, y, z) -> (x, -w, y, -z); with t -> -t it reverses
/// the flow. Its fixed set {w = z = 0} seeds symmetric orbits.
pub fn apply_g2(s: &State) -> State {
    State {
        x: s.x,
        w: -s.w,
        y: s.y,
        z: -s.z,
    }
}

/// The composition S = G2 after G1: (x, w, y, z) -> (-x, -w, y, z), a
/// time-preserving symmetry of the flow.
pub fn apply_s(s: &State) -> State {
    State {
        x: -s.x,
        w: -s.w,
        y: s.y,
        z: s.z,
    }
}
