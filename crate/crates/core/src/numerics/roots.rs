//! Scalar root finding: sign-change scans to bracket, then bracketed
//! bisection refined by safeguarded secant steps.

use crate::error::{Error, Result};

/// Evaluate `f` on the grid and collect every bracket [grid[k], grid[k+1]]
/// across which the sign changes (or an endpoint is an exact zero).
pub fn scan_sign_changes(mut f: impl FnMut(f64) -> f64, grid: &[f64]) -> Vec<(f64, f64)> {
    let mut brackets = Vec::new();
    if grid.len() < 2 {
        return brackets;
    }
    let mut prev_x = grid[0];
    let mut prev_f = f(prev_x);
    for &x in &grid[1..] {
        let fx = f(x);
        if prev_f == 0.0 || prev_f * fx < 0.0 {
            brackets.push((prev_x, x));
        }
        prev_x = x;
        prev_f = fx;
    }
    brackets
}

/// Bisection refined by secant steps, safeguarded so the bracket always
/// shrinks: a secant candidate too close to an endpoint, or landing outside,
/// falls back to the midpoint, as does any step after the same endpoint
/// survived twice in a row.
pub fn bisect_secant(
    mut f: impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    xtol: f64,
    max_iter: usize,
) -> Result<f64> {
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a);
    if fa == 0.0 {
        return Ok(a);
    }
    let mut fb = f(b);
    if fb == 0.0 {
        return Ok(b);
    }
    if fa * fb > 0.0 {
        return Err(Error::Numerical(format!(
            "no sign change on [{a}, {b}] (f = {fa}, {fb})"
        )));
    }
    let mut kept_a = 0u32;
    let mut kept_b = 0u32;
    for _ in 0..max_iter {
        let width = b - a;
        if width <= xtol {
            return Ok(0.5 * (a + b));
        }
        let mid = 0.5 * (a + b);
        let mut x = if kept_a >= 2 || kept_b >= 2 {
            mid
        } else {
            let denom = fb - fa;
            if denom == 0.0 {
                mid
            } else {
                b - fb * width / denom
            }
        };
        if !(x > a && x < b) || (x - a).min(b - x) < 0.01 * width {
            x = mid;
        }
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fa * fx < 0.0 {
            b = x;
            fb = fx;
            kept_a += 1;
            kept_b = 0;
        } else {
            a = x;
            fa = fx;
            kept_b += 1;
            kept_a = 0;
        }
    }
    Err(Error::Numerical(format!(
        "root finder did not converge on [{lo}, {hi}] within {max_iter} iterations"
    )))
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    let step = (b - a) / (n - 1) as f64;
    (0..n).map(|i| a + step * i as f64).collect()
}

/// Logarithmically spaced grid between two positive endpoints.
pub fn logspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(a > 0.0 && b > 0.0);
    linspace(a.ln(), b.ln(), n).into_iter().map(f64::exp).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_cosine_root() {
        let r = bisect_secant(|x: f64| x.cos(), 1.0, 2.0, 1e-14, 200).unwrap();
        assert!((r - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn scan_brackets_both_parabola_roots() {
        let grid = linspace(-2.0, 2.0, 81);
        let brackets = scan_sign_changes(|x| x * x - 1.0, &grid);
        assert_eq!(brackets.len(), 2);
        let r0 = bisect_secant(|x| x * x - 1.0, brackets[0].0, brackets[0].1, 1e-13, 200).unwrap();
        let r1 = bisect_secant(|x| x * x - 1.0, brackets[1].0, brackets[1].1, 1e-13, 200).unwrap();
        assert!((r0 + 1.0).abs() < 1e-12 && (r1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bracket_without_sign_change() {
        assert!(bisect_secant(|x: f64| x * x + 1.0, -1.0, 1.0, 1e-12, 100).is_err());
    }

    #[test]
    fn handles_flat_then_steep() {
        // f stays tiny near a, steep near b; safeguard must still converge.
        let f = |x: f64| (x - 0.1).powi(7);
        let r = bisect_secant(f, -3.0, 4.0, 1e-13, 300).unwrap();
        assert!((r - 0.1).abs() < 1e-6);
    }
}
