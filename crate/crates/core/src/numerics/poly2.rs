//! Truncated bivariate polynomials in (x, w), used as series jets: evaluating
//! an algebraic expression on `Poly2` arguments yields its Taylor expansion
//! through the truncation degree.
//!
//! Monomials x^(d-j) w^j of total degree d <= n are stored flat, degree block
//! by degree block, so the coefficient of x^i w^j sits at index
//! `(i+j)(i+j+1)/2 + j`.

use super::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Poly2 {
    n: usize,
    c: Vec<f64>,
}

fn len_for(n: usize) -> usize {
    (n + 1) * (n + 2) / 2
}

fn block(d: usize) -> usize {
    d * (d + 1) / 2
}

impl Poly2 {
    pub fn zero(n: usize) -> Self {
        Poly2 {
            n,
            c: vec![0.0; len_for(n)],
        }
    }

    pub fn constant(n: usize, v: f64) -> Self {
        let mut p = Self::zero(n);
        p.c[0] = v;
        p
    }

    /// The variable x.
    pub fn var_x(n: usize) -> Self {
        let mut p = Self::zero(n);
        p.c[block(1)] = 1.0;
        p
    }

    /// The variable w.
    pub fn var_w(n: usize) -> Self {
        let mut p = Self::zero(n);
        p.c[block(1) + 1] = 1.0;
        p
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Coefficient of x^i w^j.
    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        assert!(i + j <= self.n, "monomial beyond truncation order");
        self.c[block(i + j) + j]
    }

    pub fn set_coeff(&mut self, i: usize, j: usize, v: f64) {
        assert!(i + j <= self.n, "monomial beyond truncation order");
        self.c[block(i + j) + j] = v;
    }

    /// All coefficients of total degree d, ordered by increasing power of w.
    pub fn degree_slice(&self, d: usize) -> &[f64] {
        assert!(d <= self.n);
        &self.c[block(d)..block(d + 1)]
    }

    pub fn eval(&self, x: f64, w: f64) -> f64 {
        let mut acc = 0.0;
        for d in 0..=self.n {
            for j in 0..=d {
                let c = self.c[block(d) + j];
                if c != 0.0 {
                    acc += c * x.powi((d - j) as i32) * w.powi(j as i32);
                }
            }
        }
        acc
    }

    pub fn deriv_x(&self) -> Self {
        let mut out = Self::zero(self.n);
        for d in 1..=self.n {
            for j in 0..d {
                // d/dx of x^(d-j) w^j -> (d-j) x^(d-1-j) w^j
                out.c[block(d - 1) + j] = (d - j) as f64 * self.c[block(d) + j];
            }
        }
        out
    }

    pub fn deriv_w(&self) -> Self {
        let mut out = Self::zero(self.n);
        for d in 1..=self.n {
            for j in 1..=d {
                // d/dw of x^(d-j) w^j -> j x^(d-j) w^(j-1)
                out.c[block(d - 1) + j - 1] = j as f64 * self.c[block(d) + j];
            }
        }
        out
    }

    fn assert_same_order(&self, rhs: &Self) {
        assert_eq!(self.n, rhs.n, "mixed truncation orders");
    }

    /// Series inverse; the constant term must be nonzero. Newton iteration
    /// doubles the correct degree each pass.
    pub fn recip(&self) -> Self {
        assert!(
            self.c[0] != 0.0,
            "series inverse requires a nonzero constant term"
        );
        let mut r = Self::constant(self.n, 1.0 / self.c[0]);
        let two = Self::constant(self.n, 2.0);
        let mut correct = 1usize;
        while correct <= self.n {
            r = r.mul(&two.sub(&self.mul(&r)));
            correct *= 2;
        }
        r
    }
}

impl Scalar for Poly2 {
    fn lift(&self, v: f64) -> Self {
        Self::constant(self.n, v)
    }

    fn add(&self, rhs: &Self) -> Self {
        self.assert_same_order(rhs);
        let mut out = self.clone();
        for (a, b) in out.c.iter_mut().zip(rhs.c.iter()) {
            *a += b;
        }
        out
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.assert_same_order(rhs);
        let mut out = self.clone();
        for (a, b) in out.c.iter_mut().zip(rhs.c.iter()) {
            *a -= b;
        }
        out
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.assert_same_order(rhs);
        let mut out = Self::zero(self.n);
        for d1 in 0..=self.n {
            for j1 in 0..=d1 {
                let a = self.c[block(d1) + j1];
                if a == 0.0 {
                    continue;
                }
                for d2 in 0..=(self.n - d1) {
                    for j2 in 0..=d2 {
                        let b = rhs.c[block(d2) + j2];
                        if b != 0.0 {
                            out.c[block(d1 + d2) + j1 + j2] += a * b;
                        }
                    }
                }
            }
        }
        out
    }

    fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.recip())
    }

    fn scale(&self, k: f64) -> Self {
        let mut out = self.clone();
        for a in out.c.iter_mut() {
            *a *= k;
        }
        out
    }

    /// Series square root; the constant term must be positive.
    fn sqrt(&self) -> Self {
        assert!(
            self.c[0] > 0.0,
            "series square root requires a positive constant term"
        );
        let mut s = Self::constant(self.n, self.c[0].sqrt());
        let mut correct = 1usize;
        while correct <= self.n {
            s = s.add(&self.mul(&s.recip())).scale(0.5);
            correct *= 2;
        }
        s
    }
}
