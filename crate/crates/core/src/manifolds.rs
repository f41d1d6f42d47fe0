//! The two invariant surfaces of the drop dynamics.
//!
//! On the axis x = w = 0 the motion reduces to a one-degree-of-freedom
//! Hamiltonian system in (y, z); this module tabulates its potential and
//! traces the saddle separatrix that bounds the island of bounded motion.
//!
//! Transverse to the axis there is a second invariant surface y = g(x, w)
//! through each equilibrium, computed here as a polynomial in (x, w) up to
//! quartic total degree. The coefficients are found order by order: the
//! invariance condition (the chain rule applied to z = g_x w + g_w f must
//! reproduce h on the surface) is expanded as a truncated bivariate series,
//! its degree-d slice is affine in the degree-d coefficients, and the
//! resulting small linear systems are solved in sequence. Quadratic-order
//! coefficients have closed forms used as cross-checks, and the expansion
//! breaks down at isolated contact angles where those systems lose rank.

use std::collections::BTreeMap;
use std::io;
use std::sync::OnceLock;

use serde_json::json;

use crate::equilibria::{
    classify, fmt_float, primary_equilibrium, secondary_equilibrium, Branch, Stability,
};
use crate::error::{Error, Result};
use crate::model::{accelerations, force_field, Params};
use crate::numerics::linalg::DenseMat;
use crate::numerics::poly2::Poly2;
use crate::numerics::quad::integrate_adaptive;
use crate::numerics::roots::{bisect_secant, linspace, scan_sign_changes};
use crate::numerics::Scalar;

/// Series evaluation is reliable only for |(x, w)| below this radius;
/// callers straying outside should treat results as extrapolation.
pub const TRUST_RADIUS: f64 = 0.15;

/// Half-width of the refusal window around singular contact angles.
pub const SERIES_REFUSAL_WINDOW: f64 = 1e-4;

/// Condition-number ceiling beyond which an order's linear system is
/// declared rank-deficient.
pub const SERIES_COND_LIMIT: f64 = 1e12;

const ZERO_RHS_TOL: f64 = 1e-9;

fn axis_accel(params: &Params, y: f64) -> Result<f64> {
    Ok(accelerations(params, 0.0, y)?.1)
}

/// Tabulated potential for the axial motion: U'(y) = -h(0, y), with
/// U = 0 at the prescribed equilibrium height. The total energy
/// z^2/2 + U(y) is conserved along axial trajectories.
#[derive(Debug, Clone)]
pub struct ReducedHamiltonian {
    params: Params,
    nodes: Vec<f64>,
    u_nodes: Vec<f64>,
    y_ref: f64,
    u_offset: f64,
}

impl ReducedHamiltonian {
    fn raw_potential(&self, y: f64) -> Result<f64> {
        if !(y.is_finite() && y > 0.0) {
            return Err(Error::Domain(format!("height {y} outside (0, inf)")));
        }
        let idx = match self.nodes.binary_search_by(|n| n.partial_cmp(&y).unwrap()) {
            Ok(i) => i,
            Err(i) => {
                // nearest node, to keep the remainder integral short
                if i == 0 {
                    0
                } else if i >= self.nodes.len() {
                    self.nodes.len() - 1
                } else if y - self.nodes[i - 1] < self.nodes[i] - y {
                    i - 1
                } else {
                    i
                }
            }
        };
        let mut failure = None;
        let mut integrand = |s: f64| match axis_accel(&self.params, s) {
            Ok(h) => -h,
            Err(e) => {
                failure = Some(e);
                0.0
            }
        };
        let tail = integrate_adaptive(&mut integrand, self.nodes[idx], y, 1e-13)?;
        if let Some(e) = failure {
            return Err(e);
        }
        Ok(self.u_nodes[idx] + tail)
    }

    /// U(y), normalized to 0 at the reference height.
    pub fn potential(&self, y: f64) -> Result<f64> {
        Ok(self.raw_potential(y)? - self.u_offset)
    }

    /// H(y, z) = z^2/2 + U(y).
    pub fn energy(&self, y: f64, z: f64) -> Result<f64> {
        Ok(0.5 * z * z + self.potential(y)?)
    }

    pub fn y_ref(&self) -> f64 {
        self.y_ref
    }

    pub fn alpha0(&self) -> f64 {
        self.params.alpha0()
    }
}

/// Builds the tabulated potential over a sorted positive grid by cumulative
/// adaptive quadrature of -h(0, y) between nodes.
pub fn reduced_potential(params: &Params, y_grid: &[f64]) -> Result<ReducedHamiltonian> {
    if y_grid.len() < 2 {
        return Err(Error::Domain("potential grid needs at least 2 nodes".into()));
    }
    if y_grid[0] <= 0.0 || y_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain(
            "potential grid must be strictly increasing and positive".into(),
        ));
    }
    let mut failure = None;
    let mut integrand = |s: f64| match axis_accel(params, s) {
        Ok(h) => -h,
        Err(e) => {
            failure = Some(e);
            0.0
        }
    };
    let mut u_nodes = Vec::with_capacity(y_grid.len());
    u_nodes.push(0.0);
    for w in y_grid.windows(2) {
        let panel = integrate_adaptive(&mut integrand, w[0], w[1], 1e-13)?;
        let last = *u_nodes.last().unwrap();
        u_nodes.push(last + panel);
    }
    if let Some(e) = failure {
        return Err(e);
    }
    let y_ref = primary_equilibrium(params)?.y_eq;
    let mut table = ReducedHamiltonian {
        params: *params,
        nodes: y_grid.to_vec(),
        u_nodes,
        y_ref,
        u_offset: 0.0,
    };
    table.u_offset = table.raw_potential(y_ref)?;
    Ok(table)
}

/// One traced branch of the saddle separatrix in the axial (y, z) plane,
/// stored as (z, y) pairs for plotting.
#[derive(Debug, Clone)]
pub struct SeparatrixBranch {
    pub points: Vec<(f64, f64)>,
    pub label: &'static str,
    /// The branch returned to the saddle (homoclinic loop).
    pub closed: bool,
    /// The branch left the traced region before closing.
    pub escaped: bool,
}

fn rk4_axis_step(params: &Params, y: f64, z: f64, dt: f64) -> Result<(f64, f64)> {
    let f = |y: f64, z: f64| -> Result<(f64, f64)> { Ok((z, axis_accel(params, y)?)) };
    let (k1y, k1z) = f(y, z)?;
    let (k2y, k2z) = f(y + 0.5 * dt * k1y, z + 0.5 * dt * k1z)?;
    let (k3y, k3z) = f(y + 0.5 * dt * k2y, z + 0.5 * dt * k2z)?;
    let (k4y, k4z) = f(y + dt * k3y, z + dt * k3z)?;
    Ok((
        y + dt / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y),
        z + dt / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z),
    ))
}

/// Traces the stable/unstable manifolds of the saddle of the axial system.
/// Returns two polylines: the side toward the stable equilibrium (which
/// closes into the homoclinic loop bounding the island) and the outer side
/// (which runs off to large heights and is flagged escaped, completed by its
/// mirror image so both asymptotic halves are present). `ds` is the output
/// point spacing along the curve.
pub fn separatrix(params: &Params, ds: f64) -> Result<Vec<SeparatrixBranch>> {
    if !(ds > 0.0 && ds.is_finite()) {
        return Err(Error::Domain(format!("point spacing {ds} must be positive")));
    }
    let (pri, sec) = classify(params)?;
    let (saddle, center) = match (pri.stability, sec.stability) {
        (Stability::Saddle, _) => (pri, sec),
        (_, Stability::Saddle) => (sec, pri),
        _ => {
            return Err(Error::Domain(format!(
                "no saddle at alpha0 = {} (degenerate or unclassified)",
                params.alpha0()
            )))
        }
    };
    let (_, hy) = crate::equilibria::jacobian_partials(saddle.y_eq);
    debug_assert!(hy > 0.0);
    let lambda = hy.sqrt();
    let norm = (1.0 + lambda * lambda).sqrt();
    let eps = 1e-7 * saddle.y_eq.max(1.0);
    let island_sign = (center.y_eq - saddle.y_eq).signum();
    let dt = 1e-3;
    let t_max = 500.0;
    let arm_radius = 0.01 * saddle.y_eq.max(1.0);
    let y_escape = 25.0 * saddle.y_eq.max(1.0);

    let mut out = Vec::new();
    for (label, side) in [("island", island_sign), ("outer", -island_sign)] {
        let mut y = saddle.y_eq + side * eps / norm;
        let mut z = side * eps * lambda / norm;
        let mut points = vec![(z, y)];
        let mut last = (z, y);
        let mut armed = false;
        let mut closed = false;
        let mut escaped = false;
        let mut t = 0.0;
        while t < t_max {
            match rk4_axis_step(params, y, z, dt) {
                Ok((ny, nz)) => {
                    y = ny;
                    z = nz;
                }
                Err(_) => {
                    escaped = true;
                    break;
                }
            }
            t += dt;
            let dist = ((y - saddle.y_eq).powi(2) + z * z).sqrt();
            if dist > arm_radius {
                armed = true;
            }
            if ((z - last.0).powi(2) + (y - last.1).powi(2)).sqrt() >= ds {
                points.push((z, y));
                last = (z, y);
            }
            if y > y_escape || y < 1e-4 {
                escaped = true;
                break;
            }
            if armed && dist < 1.5 * eps {
                closed = true;
                break;
            }
        }
        points.push((z, y));
        if escaped {
            // complete the pair with the time-reversed mirror branch
            let mirrored: Vec<(f64, f64)> = points.iter().rev().map(|&(z, y)| (-z, y)).collect();
            let mut full = mirrored;
            full.push((0.0, saddle.y_eq));
            full.extend(points.iter().copied());
            points = full;
        }
        out.push(SeparatrixBranch {
            points,
            label,
            closed,
            escaped,
        });
    }
    Ok(out)
}

/// CSV with header `z,y,branch`.
pub fn write_separatrix_csv<W: io::Write>(
    branches: &[SeparatrixBranch],
    out: &mut W,
) -> io::Result<()> {
    writeln!(out, "z,y,branch")?;
    for b in branches {
        for &(z, y) in &b.points {
            writeln!(out, "{},{},{}", fmt_float(z), fmt_float(y), b.label)?;
        }
    }
    Ok(())
}

/// Polynomial surface y = g(x, w) through an equilibrium, even in both
/// variables, with per-order condition numbers of the solved systems.
#[derive(Debug, Clone, PartialEq)]
pub struct ManifoldSeries {
    alpha0: f64,
    branch: Branch,
    y_center: f64,
    order: usize,
    coeffs: BTreeMap<(usize, usize), f64>,
    conditions: Vec<(usize, f64)>,
}

impl ManifoldSeries {
    pub fn alpha0(&self) -> f64 {
        self.alpha0
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn y_center(&self) -> f64 {
        self.y_center
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of x^i w^j (0 for the constant term; see `y_center`).
    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        self.coeffs.get(&(i, j)).copied().unwrap_or(0.0)
    }

    /// All stored (i, j, value) entries sorted by total degree.
    pub fn entries(&self) -> Vec<(usize, usize, f64)> {
        let mut v: Vec<_> = self.coeffs.iter().map(|(&(i, j), &c)| (i, j, c)).collect();
        v.sort_by_key(|&(i, j, _)| (i + j, j));
        v
    }

    /// Condition number of the linear system solved at each order.
    pub fn conditions(&self) -> &[(usize, f64)] {
        &self.conditions
    }

    pub fn evaluate(&self, x: f64, w: f64) -> f64 {
        let mut y = self.y_center;
        for (&(i, j), &c) in &self.coeffs {
            y += c * x.powi(i as i32) * w.powi(j as i32);
        }
        y
    }

    pub fn partial_x(&self, x: f64, w: f64) -> f64 {
        let mut d = 0.0;
        for (&(i, j), &c) in &self.coeffs {
            if i > 0 {
                d += c * i as f64 * x.powi(i as i32 - 1) * w.powi(j as i32);
            }
        }
        d
    }

    pub fn partial_w(&self, x: f64, w: f64) -> f64 {
        let mut d = 0.0;
        for (&(i, j), &c) in &self.coeffs {
            if j > 0 {
                d += c * j as f64 * x.powi(i as i32) * w.powi(j as i32 - 1);
            }
        }
        d
    }

    pub fn to_json(&self) -> serde_json::Value {
        let coeffs: Vec<_> = self
            .entries()
            .into_iter()
            .map(|(i, j, value)| json!({ "i": i, "j": j, "value": value }))
            .collect();
        json!({
            "alpha0": self.alpha0,
            "branch": self.branch.as_str(),
            "y_center": self.y_center,
            "coeffs": coeffs,
        })
    }
}

/// Surface height at (x, w). Reliable within `TRUST_RADIUS` of the center;
/// use `within_trust_radius` to decide whether to warn.
pub fn evaluate_g(series: &ManifoldSeries, x: f64, w: f64) -> f64 {
    series.evaluate(x, w)
}

pub fn within_trust_radius(x: f64, w: f64) -> bool {
    x.hypot(w) <= TRUST_RADIUS
}

/// Vertical velocity consistent with motion on the surface: the chain rule
/// gives z = g_x w + g_w f at (x, w, g(x, w)). Used to place initial
/// conditions on the surface.
pub fn manifold_zdot(params: &Params, series: &ManifoldSeries, x: f64, w: f64) -> Result<f64> {
    let y = series.evaluate(x, w);
    let (fx, _) = accelerations(params, x, y)?;
    Ok(series.partial_x(x, w) * w + series.partial_w(x, w) * fx)
}

/// Degree-d coefficient slice of the invariance residual for a candidate
/// surface polynomial g: residual = d/dt(g_x w + g_w f) - h on y = g.
fn residual_slice(q: f64, g: &Poly2, d: usize) -> Vec<f64> {
    let n = g.order();
    let x = Poly2::var_x(n);
    let w = Poly2::var_w(n);
    let (f, h) = force_field(q, &x, g);
    let z = g.deriv_x().mul(&w).add(&g.deriv_w().mul(&f));
    let zdot = z.deriv_x().mul(&w).add(&z.deriv_w().mul(&f));
    zdot.sub(&h).degree_slice(d).to_vec()
}

struct SolveOutcome {
    coeffs: BTreeMap<(usize, usize), f64>,
    conditions: Vec<(usize, f64)>,
    /// Order at which the solve hit a rank-deficient system, if any.
    stalled: Option<usize>,
}

/// Order-by-order solve. The degree-d residual slice is affine in the
/// degree-d coefficients, so each order is one dense linear system, probed
/// columnwise. The system splits exactly into parity blocks (the residual
/// operator preserves evenness in x and w separately); blocks whose
/// right-hand side is negligible get zero coefficients outright, which is
/// what annihilates every odd-degree monomial, even at contact angles where
/// such a block is itself resonant.
fn solve_series(q: f64, y_center: f64, order: usize, strict: bool) -> Result<SolveOutcome> {
    let mut g = Poly2::constant(order, y_center);
    let mut coeffs = BTreeMap::new();
    let mut conditions = Vec::new();
    let mut stalled = None;

    'orders: for d in 1..=order {
        let nd = d + 1;
        let r0 = residual_slice(q, &g, d);
        let mut m = vec![vec![0.0; nd]; nd];
        for k in 0..nd {
            let (i, j) = (d - k, k);
            let mut probe = g.clone();
            probe.set_coeff(i, j, 1.0);
            let rk = residual_slice(q, &probe, d);
            for (row, col) in m.iter_mut().enumerate() {
                col[k] = rk[row] - r0[row];
            }
        }
        let class = |k: usize| ((d - k) % 2, k % 2);
        let scale = m
            .iter()
            .flatten()
            .fold(0.0f64, |acc, v| acc.max(v.abs()));
        for (row, row_vals) in m.iter().enumerate() {
            for (col, v) in row_vals.iter().enumerate() {
                if class(row) != class(col) {
                    debug_assert!(
                        v.abs() <= 1e-9 * (1.0 + scale),
                        "parity blocks should not couple: m[{row}][{col}] = {v}"
                    );
                }
            }
        }
        let mut order_cond = 0.0f64;
        for block in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            let idx: Vec<usize> = (0..nd).filter(|&k| class(k) == block).collect();
            if idx.is_empty() {
                continue;
            }
            let nb = idx.len();
            let mut mat = DenseMat::zeros(nb);
            for (r, &kr) in idx.iter().enumerate() {
                for (c, &kc) in idx.iter().enumerate() {
                    mat.set(r, c, m[kr][kc]);
                }
            }
            let rhs_max = idx.iter().fold(0.0f64, |acc, &k| acc.max(r0[k].abs()));
            if rhs_max <= ZERO_RHS_TOL * (1.0 + mat.norm_1()) {
                for &k in &idx {
                    coeffs.insert((d - k, k), 0.0);
                }
                continue;
            }
            let cond = mat.condition_1norm();
            order_cond = order_cond.max(cond);
            if cond > SERIES_COND_LIMIT {
                if strict {
                    return Err(Error::Numerical(format!(
                        "surface expansion is rank-deficient at order {d} (condition {cond:.3e}); \
                         the contact angle sits at or near a singular value"
                    )));
                }
                conditions.push((d, cond));
                stalled = Some(d);
                break 'orders;
            }
            let neg_rhs: Vec<f64> = idx.iter().map(|&k| -r0[k]).collect();
            let sol = mat.solve(&neg_rhs)?;
            for (&k, &c) in idx.iter().zip(sol.iter()) {
                coeffs.insert((d - k, k), c);
                g.set_coeff(d - k, k, c);
            }
        }
        conditions.push((d, order_cond));
    }

    if strict {
        for d in 1..=order {
            let r = residual_slice(q, &g, d);
            let worst = r.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
            if worst > 1e-8 {
                return Err(Error::Numerical(format!(
                    "surface expansion residual {worst:.3e} at order {d} after solve"
                )));
            }
        }
    }
    Ok(SolveOutcome {
        coeffs,
        conditions,
        stalled,
    })
}

fn center_height(params: &Params, branch: Branch) -> Result<f64> {
    Ok(match branch {
        Branch::Primary => primary_equilibrium(params)?.y_eq,
        Branch::Secondary => secondary_equilibrium(params, 1e-12)?.y_eq,
    })
}

/// Polynomial surface through the chosen equilibrium, solved to the given
/// total degree (at most 4). Refuses within `SERIES_REFUSAL_WINDOW` of the
/// known singular contact angles instead of returning blown-up coefficients.
pub fn rocking_series(params: &Params, order: usize, branch: Branch) -> Result<ManifoldSeries> {
    if !(1..=4).contains(&order) {
        return Err(Error::Domain(format!("series order {order} not in 1..=4")));
    }
    let alpha0 = params.alpha0();
    let singulars = singular_alphas(if order >= 4 { 4 } else { 2 })?;
    for &s in &singulars {
        if (alpha0 - s).abs() < SERIES_REFUSAL_WINDOW {
            return Err(Error::Numerical(format!(
                "alpha0 = {alpha0} is within {SERIES_REFUSAL_WINDOW:.0e} of the singular \
                 contact angle {s:.6}; surface coefficients diverge there"
            )));
        }
    }
    let y_center = center_height(params, branch)?;
    let outcome = solve_series(params.q(), y_center, order, true)?;
    Ok(ManifoldSeries {
        alpha0,
        branch,
        y_center,
        order,
        coeffs: outcome.coeffs,
        conditions: outcome.conditions,
    })
}

/// Diagnostic: per-order condition numbers of the series solve, without the
/// refusal window. Near a singular contact angle the offending order's
/// condition number spikes and the solve stops there.
pub fn rocking_system_conditions(
    params: &Params,
    order: usize,
    branch: Branch,
) -> Result<Vec<(usize, f64)>> {
    if !(1..=4).contains(&order) {
        return Err(Error::Domain(format!("series order {order} not in 1..=4")));
    }
    let y_center = center_height(params, branch)?;
    let outcome = solve_series(params.q(), y_center, order, false)?;
    let _ = outcome.stalled;
    Ok(outcome.conditions)
}

/// Closed forms for the quadratic surface coefficients at the prescribed
/// equilibrium: the x^2 coefficient a3 and the w^2 coefficient a5.
pub fn rocking_closed_form(alpha0: f64) -> Result<(f64, f64)> {
    if !(alpha0 > 0.0 && alpha0 < std::f64::consts::FRAC_PI_2) {
        return Err(Error::Domain(format!("alpha0 = {alpha0} outside (0, pi/2)")));
    }
    let c = |k: f64| (k * alpha0).cos();
    let (c1, c2, c3) = (c(1.0), c(2.0), c(3.0));
    let (c4, c5, c6) = (c(4.0), c(5.0), c(6.0));
    let sin = alpha0.sin();
    let csc2 = 1.0 / (sin * sin);
    let cot = c1 / sin;
    let a = 14.0 * c1 + 4.0 * c2 + 6.0 * c3 + 1.0;
    let b = 8.0 * c1 + 7.0 * c2 + 8.0 * c3 + 1.0;
    let denom3 = 4.0 * (a * a * csc2 * csc2 - 4.0 * (4.0 * c1 + 1.0).powi(2));
    let denom5 = 2.0
        * (208.0 * c1 + 388.0 * c2 + 148.0 * c3 + 191.0 * c4 + 44.0 * c5 + 32.0 * c6 + 239.0);
    if denom3.abs() < 1e-12 || denom5.abs() < 1e-12 {
        return Err(Error::Numerical(format!(
            "closed-form denominator vanishes at alpha0 = {alpha0}"
        )));
    }
    let a3 = -3.0 * a * b * cot.sqrt() * csc2 / denom3;
    let a5 = sin * (4.0 * c1 + 1.0) * b / denom5;
    Ok((a3, a5))
}

fn a3_denominator(alpha: f64) -> f64 {
    let c = |k: f64| (k * alpha).cos();
    let a = 14.0 * c(1.0) + 4.0 * c(2.0) + 6.0 * c(3.0) + 1.0;
    let sin = alpha.sin();
    let csc2 = 1.0 / (sin * sin);
    a * a * csc2 * csc2 - 4.0 * (4.0 * c(1.0) + 1.0).powi(2)
}

fn order2_singulars() -> &'static [f64; 2] {
    static CELL: OnceLock<[f64; 2]> = OnceLock::new();
    CELL.get_or_init(|| {
        let grid = linspace(0.1, 1.55, 3000);
        let brackets = scan_sign_changes(a3_denominator, &grid);
        let mut roots: Vec<f64> = brackets
            .into_iter()
            .map(|(lo, hi)| {
                bisect_secant(a3_denominator, lo, hi, 1e-14, 300)
                    .expect("bracketed denominator root")
            })
            .collect();
        roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(roots.len(), 2, "quadratic order has two singular angles");
        [roots[0], roots[1]]
    })
}

fn order4_even_det(alpha: f64) -> f64 {
    let params = Params::new(alpha).expect("scan range is a valid contact angle");
    let y_center = alpha.tan().sqrt() / 3.0;
    let outcome = solve_series(params.q(), y_center, 3, true)
        .expect("cubic solve is regular on the scan range");
    let mut g = Poly2::constant(4, y_center);
    for (&(i, j), &c) in &outcome.coeffs {
        g.set_coeff(i, j, c);
    }
    let d = 4;
    let r0 = residual_slice(params.q(), &g, d);
    let even: Vec<usize> = (0..=d).filter(|&k| (d - k) % 2 == 0 && k % 2 == 0).collect();
    let mut mat = DenseMat::zeros(even.len());
    for (c, &kc) in even.iter().enumerate() {
        let mut probe = g.clone();
        probe.set_coeff(d - kc, kc, 1.0);
        let rk = residual_slice(params.q(), &probe, d);
        for (r, &kr) in even.iter().enumerate() {
            mat.set(r, c, rk[kr] - r0[kr]);
        }
    }
    mat.det()
}

fn order4_singular() -> f64 {
    static CELL: OnceLock<f64> = OnceLock::new();
    *CELL.get_or_init(|| {
        let grid = linspace(0.45, 0.58, 80);
        let brackets = scan_sign_changes(order4_even_det, &grid);
        assert_eq!(brackets.len(), 1, "one quartic singularity on the bracket");
        let (lo, hi) = brackets[0];
        bisect_secant(order4_even_det, lo, hi, 1e-13, 300)
            .expect("bracketed determinant root")
    })
}

/// Contact angles at which the series solve loses rank: the two roots of
/// the quadratic-coefficient denominator, plus (at quartic order) the root
/// of the order-4 system determinant near 0.517.
pub fn singular_alphas(order: usize) -> Result<Vec<f64>> {
    match order {
        2 => Ok(order2_singulars().to_vec()),
        4 => {
            let mut v = order2_singulars().to_vec();
            v.push(order4_singular());
            v.sort_by(|a, b| a.partial_cmp(b).unwrap());
            Ok(v)
        }
        _ => Err(Error::Domain(format!(
            "singularities are tabulated for orders 2 and 4, not {order}"
        ))),
    }
}

/// Pretty-printed JSON export of a surface series.
pub fn write_manifold_json<W: io::Write>(series: &ManifoldSeries, out: &mut W) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, &series.to_json())?;
    writeln!(out)
}
