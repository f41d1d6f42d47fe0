//! Equilibria cross-checks against independently coded references: a dense
//! argmax scan for the critical angle, a uniform-grid bisection for the
//! secondary branch, finite-difference Jacobians, and a general-purpose
//! eigensolver.

use nalgebra::DMatrix;
use std::f64::consts::FRAC_PI_4;
use tridrop::equilibria::{
    bifurcation_scan, classify, critical_alpha_star, eigen_set, jacobian_partials,
    primary_equilibrium, secondary_equilibrium, Stability,
};
use tridrop::model::{q_of_alpha, rhs, Params, State};
use tridrop::numerics::roots::linspace;

/// Reference secondary root: uniform grid plus plain interval halving,
/// sharing no code with the library path.
fn dense_scan_secondary(alpha0: f64) -> f64 {
    let q0 = q_of_alpha(alpha0).unwrap();
    let cond = |y: f64| {
        let p = 81.0 * y.powi(4) + 1.0;
        486.0 * y.powi(5) / (p * (p.sqrt() + 4.0)) - q0
    };
    let y0 = alpha0.tan().sqrt() / 3.0;
    let n = 40_000;
    let (lo, hi) = (1e-3, 20.0);
    let step = (hi - lo) / n as f64;
    let mut best: Option<f64> = None;
    for i in 0..n {
        let a = lo + i as f64 * step;
        let b = a + step;
        if cond(a) * cond(b) > 0.0 {
            continue;
        }
        let (mut a, mut b) = (a, b);
        for _ in 0..80 {
            let m = 0.5 * (a + b);
            if cond(a) * cond(m) <= 0.0 {
                b = m;
            } else {
                a = m;
            }
        }
        let root = 0.5 * (a + b);
        if (root - y0).abs() > 1e-6 {
            let better = match best {
                None => true,
                Some(seen) => (root - y0).abs() > (seen - y0).abs(),
            };
            if better {
                best = Some(root);
            }
        }
    }
    best.expect("secondary root in scan range")
}

/// Central-difference Jacobian of the vector field at a point on the axis.
fn fd_jacobian(params: &Params, y_eq: f64) -> [[f64; 4]; 4] {
    let h = 1e-5;
    let base = [0.0, 0.0, y_eq, 0.0];
    let mut jac = [[0.0; 4]; 4];
    for j in 0..4 {
        let mut up = base;
        let mut dn = base;
        up[j] += h;
        dn[j] -= h;
        let fu = rhs(&State::new(up[0], up[1], up[2], up[3]).unwrap(), params).unwrap();
        let fd = rhs(&State::new(dn[0], dn[1], dn[2], dn[3]).unwrap(), params).unwrap();
        for i in 0..4 {
            jac[i][j] = (fu[i] - fd[i]) / (2.0 * h);
        }
    }
    jac
}

#[test]
fn critical_angle_matches_dense_argmax() {
    let a_star = critical_alpha_star(1e-12);
    let grid = linspace(0.01, 1.56, 200_000);
    let (mut best_a, mut best_q) = (grid[0], f64::NEG_INFINITY);
    for &a in &grid {
        let q = q_of_alpha(a).unwrap();
        if q > best_q {
            best_q = q;
            best_a = a;
        }
    }
    let step = grid[1] - grid[0];
    assert!((a_star - best_a).abs() <= step, "{a_star} vs argmax {best_a}");
    // Parabolic vertex through the three samples around the argmax pins the
    // peak far below the grid step.
    let (qm, q0, qp) = (
        q_of_alpha(best_a - step).unwrap(),
        best_q,
        q_of_alpha(best_a + step).unwrap(),
    );
    let vertex = best_a + 0.5 * step * (qm - qp) / (qm - 2.0 * q0 + qp);
    assert!((a_star - vertex).abs() < 1e-6, "{a_star} vs vertex {vertex}");
    assert!(q_of_alpha(a_star).unwrap() >= best_q - 1e-12);
}

#[test]
fn secondary_branch_matches_dense_scan() {
    for alpha0 in [0.5, 0.9, 1.2, 1.38, 1.45] {
        let params = Params::new(alpha0).unwrap();
        let eq = secondary_equilibrium(&params, 1e-12).unwrap();
        let reference = dense_scan_secondary(alpha0);
        assert!(
            (eq.y_eq - reference).abs() < 1e-8,
            "alpha0 = {alpha0}: {} vs {reference}",
            eq.y_eq
        );
        let q_back = q_of_alpha(eq.contact_angle).unwrap();
        assert!((q_back - params.q()).abs() < 1e-10);
        let f = rhs(&State::new(0.0, 0.0, eq.y_eq, 0.0).unwrap(), &params).unwrap();
        for v in f {
            assert!(v.abs() < 1e-10, "residual field {v}");
        }
    }
}

#[test]
fn branch_order_swaps_across_critical() {
    let below = Params::new(1.2).unwrap();
    let (p, s) = classify(&below).unwrap();
    assert!(s.y_eq > p.y_eq);
    assert!((s.y_eq - 1.2515).abs() < 2e-3);
    let above = Params::new(1.45).unwrap();
    let (p, s) = classify(&above).unwrap();
    assert!(s.y_eq < p.y_eq);
    assert!((p.y_eq - 0.9567).abs() < 1e-3);
    assert!((s.y_eq - 0.6504).abs() < 1e-3);
    assert_eq!(p.stability, Stability::Saddle);
    assert_eq!(s.stability, Stability::Center);
}

#[test]
fn partials_match_finite_differences() {
    for alpha0 in [0.6, FRAC_PI_4, 1.2, 1.5] {
        let params = Params::new(alpha0).unwrap();
        for eq in [
            primary_equilibrium(&params).unwrap(),
            secondary_equilibrium(&params, 1e-12).unwrap(),
        ] {
            let jac = fd_jacobian(&params, eq.y_eq);
            let (fx, hy) = jacobian_partials(eq.y_eq);
            let scale = fx.abs().max(hy.abs()).max(1.0);
            assert!((jac[1][0] - fx).abs() < 1e-7 * scale, "fx at {alpha0}");
            assert!((jac[3][2] - hy).abs() < 1e-7 * scale, "hy at {alpha0}");
            assert!(jac[1][2].abs() < 1e-7, "fy at equilibrium");
            assert!(jac[3][0].abs() < 1e-7, "hx at equilibrium");
            assert!((jac[0][1] - 1.0).abs() < 1e-12);
            assert!((jac[2][3] - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn eigenvalues_match_general_solver() {
    let params = Params::new(1.2).unwrap();
    for eq in [
        primary_equilibrium(&params).unwrap(),
        secondary_equilibrium(&params, 1e-12).unwrap(),
    ] {
        let jac = fd_jacobian(&params, eq.y_eq);
        let flat: Vec<f64> = jac.iter().flatten().copied().collect();
        let numeric = DMatrix::from_row_slice(4, 4, &flat).complex_eigenvalues();
        let closed = eigen_set(&eq);
        for lambda in closed.lambda12.iter().chain(closed.lambda34.iter()) {
            let dist = numeric
                .iter()
                .map(|mu| (mu - lambda).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(dist < 1e-5, "eigenvalue {lambda} unmatched ({dist})");
        }
    }
}

#[test]
fn spectrum_structure_along_grid() {
    let a_star = critical_alpha_star(1e-12);
    let grid = linspace(0.15, 1.55, 200);
    let mut labels = Vec::new();
    for &alpha0 in &grid {
        if (alpha0 - a_star).abs() < 1e-3 {
            continue;
        }
        let params = Params::new(alpha0).unwrap();
        let (pri, sec) = classify(&params).unwrap();
        for eq in [&pri, &sec] {
            let eigen = eigen_set(eq);
            assert!(eigen.fx < 0.0, "horizontal pair stays oscillatory");
            assert_eq!(eigen.lambda12[0].re, 0.0);
            match eq.stability {
                Stability::Center => assert!(eigen.hy < 0.0),
                Stability::Saddle => assert!(eigen.hy > 0.0),
                Stability::Degenerate => panic!("unexpected degenerate label"),
            }
        }
        labels.push((alpha0, pri.stability, sec.stability));
    }
    let flips = labels
        .windows(2)
        .filter(|w| w[0].1 != w[1].1)
        .collect::<Vec<_>>();
    assert_eq!(flips.len(), 1, "exactly one exchange of stability");
    let (a_lo, _, _) = flips[0][0];
    let (a_hi, _, _) = flips[0][1];
    assert!(a_lo < a_star && a_star < a_hi);
    for w in labels.windows(2) {
        assert_eq!(w[0].1 != w[1].1, w[0].2 != w[1].2, "branches flip together");
    }
}

#[test]
fn scan_rows_are_consistent_and_smooth() {
    let a_star = critical_alpha_star(1e-12);
    let grid: Vec<f64> = linspace(0.2, 1.55, 300)
        .into_iter()
        .filter(|a| (a - a_star).abs() > 5e-3)
        .collect();
    let rows = bifurcation_scan(&grid);
    assert_eq!(rows.len(), grid.len());
    let mut prev_gap: Option<f64> = None;
    for w in rows.windows(2) {
        let (r0, r1) = (&w[0], &w[1]);
        assert!((r0.y0 - r0.alpha0.tan().sqrt() / 3.0).abs() < 1e-14);
        let (Some(a), Some(b)) = (r0.y1, r1.y1) else {
            panic!("secondary root missing at {}", r0.alpha0);
        };
        let gap = (b - a).abs();
        if let Some(prev) = prev_gap {
            assert!(
                gap < 4.0 * prev + 2e-2,
                "jump in secondary branch near {}",
                r1.alpha0
            );
        }
        prev_gap = Some(gap);
    }
    let flip = rows
        .windows(2)
        .position(|w| w[0].stab0 != w[1].stab0)
        .expect("stability exchange in range");
    assert!(rows[flip].alpha0 < a_star && a_star < rows[flip + 1].alpha0);
}

#[test]
fn reference_spot_values() {
    assert!((q_of_alpha(1.2).unwrap() - 0.4122).abs() < 5e-4);
    let exact = 1.0 / (4.0 + 2.0_f64.sqrt());
    assert!((q_of_alpha(FRAC_PI_4).unwrap() - exact).abs() < 1e-15);
    let params = Params::new(1.2).unwrap();
    let (pri, sec) = classify(&params).unwrap();
    let (_, hy0) = jacobian_partials(pri.y_eq);
    let (_, hy1) = jacobian_partials(sec.y_eq);
    assert!((hy0 + 2.845).abs() < 1e-2, "hy at primary: {hy0}");
    assert!((hy1 - 0.846).abs() < 1e-2, "hy at secondary: {hy1}");
}
