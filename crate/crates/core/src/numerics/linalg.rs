//! Small dense linear algebra: LU with partial pivoting for the few-unknown
//! systems arising in the series solves, plus determinant and a 1-norm
//! condition estimate.

use crate::error::{Error, Result};

/// Row-major dense square matrix.
#[derive(Debug, Clone)]
pub struct DenseMat {
    n: usize,
    a: Vec<f64>,
}

impl DenseMat {
    pub fn zeros(n: usize) -> Self {
        DenseMat {
            n,
            a: vec![0.0; n * n],
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "non-square input");
            m.a[i * n..(i + 1) * n].copy_from_slice(row);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.a[i * self.n + j] = v;
    }

    fn lu(&self) -> (Vec<f64>, Vec<usize>, f64) {
        let n = self.n;
        let mut lu = self.a.clone();
        let mut piv: Vec<usize> = (0..n).collect();
        let mut det_sign = 1.0;
        for k in 0..n {
            let mut p = k;
            let mut max = lu[k * n + k].abs();
            for i in (k + 1)..n {
                let v = lu[i * n + k].abs();
                if v > max {
                    max = v;
                    p = i;
                }
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                piv.swap(k, p);
                det_sign = -det_sign;
            }
            let pivot = lu[k * n + k];
            if pivot == 0.0 {
                continue;
            }
            for i in (k + 1)..n {
                let factor = lu[i * n + k] / pivot;
                lu[i * n + k] = factor;
                for j in (k + 1)..n {
                    lu[i * n + j] -= factor * lu[k * n + j];
                }
            }
        }
        (lu, piv, det_sign)
    }

    pub fn det(&self) -> f64 {
        let n = self.n;
        let (lu, _, sign) = self.lu();
        let mut det = sign;
        for k in 0..n {
            det *= lu[k * n + k];
        }
        det
    }

    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.n;
        assert_eq!(b.len(), n);
        let (lu, piv, _) = self.lu();
        for k in 0..n {
            if lu[k * n + k] == 0.0 {
                return Err(Error::Numerical("singular linear system".into()));
            }
        }
        let mut x: Vec<f64> = piv.iter().map(|&p| b[p]).collect();
        for i in 1..n {
            for j in 0..i {
                x[i] -= lu[i * n + j] * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in (i + 1)..n {
                x[i] -= lu[i * n + j] * x[j];
            }
            x[i] /= lu[i * n + i];
        }
        Ok(x)
    }

    pub fn norm_1(&self) -> f64 {
        let n = self.n;
        (0..n)
            .map(|j| (0..n).map(|i| self.get(i, j).abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// 1-norm condition number via the explicit inverse; infinite when
    /// singular. Intended for the tiny systems this module serves.
    pub fn condition_1norm(&self) -> f64 {
        let n = self.n;
        let mut inv_norm: f64 = 0.0;
        let mut cols = vec![vec![0.0; n]; n];
        for j in 0..n {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            match self.solve(&e) {
                Ok(col) => cols[j].copy_from_slice(&col),
                Err(_) => return f64::INFINITY,
            }
        }
        for col in &cols {
            let s: f64 = col.iter().map(|v| v.abs()).sum();
            inv_norm = inv_norm.max(s);
        }
        let cond = self.norm_1() * inv_norm;
        if cond.is_finite() {
            cond
        } else {
            f64::INFINITY
        }
    }
}
