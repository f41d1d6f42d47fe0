//! Self-contained numerical kernels: scalar/series algebra, bracketed root
//! finding, Gauss-Legendre and adaptive quadrature, and small dense solves.

pub mod linalg;
pub mod poly2;
pub mod quad;
pub mod roots;

/// Algebra shared by plain `f64` evaluation and truncated-series evaluation,
/// so the model's right-hand side is written once and reused for both.
pub trait Scalar: Clone {
    /// A constant with the same shape (truncation order) as `self`.
    fn lift(&self, v: f64) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Self;
    fn scale(&self, k: f64) -> Self;
    fn sqrt(&self) -> Self;
}

impl Scalar for f64 {
    fn lift(&self, v: f64) -> Self {
        v
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn scale(&self, k: f64) -> Self {
        self * k
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
}
