use super::DenseMatrix;
use crate::error::{Error, Result};

/// Reciprocal 1-norm condition number below which a system counts as singular.
pub const SINGULAR_RCOND: f64 = 1e-10;

/// `P A = L U` with partial pivoting. `L` has a unit diagonal and shares
/// storage with `U`.
#[derive(Debug, Clone)]
pub struct LuFactors {
    lu: DenseMatrix,
    perm: Vec<usize>,
    norm_1: f64,
}

impl LuFactors {
    /// Fails with `DegenerateKernel` only on an exactly zero pivot; use
    /// [`LuFactors::rcond`] to judge near-singularity.
    pub fn new(a: &DenseMatrix) -> Result<Self> {
        a.ensure_finite("matrix")?;
        let n = a.dim();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let pivot_row = (k..n)
                .max_by(|&i, &j| lu[(i, k)].abs().total_cmp(&lu[(j, k)].abs()))
                .expect("non-empty range");
            if lu[(pivot_row, k)] == 0.0 {
                return Err(Error::DegenerateKernel { rcond: 0.0 });
            }
            if pivot_row != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(pivot_row, j)];
                    lu[(pivot_row, j)] = tmp;
                }
                perm.swap(k, pivot_row);
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                if factor != 0.0 {
                    for j in k + 1..n {
                        let u = lu[(k, j)];
                        lu[(i, j)] -= factor * u;
                    }
                }
            }
        }
        Ok(Self {
            lu,
            perm,
            norm_1: a.norm_1(),
        })
    }

    pub fn dim(&self) -> usize {
        self.lu.dim()
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for k in 0..i {
                x[i] -= self.lu[(i, k)] * x[k];
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                x[i] -= self.lu[(i, k)] * x[k];
            }
            x[i] /= self.lu[(i, i)];
        }
        x
    }

    /// Solves `A^T x = b`.
    pub fn solve_transpose(&self, b: &[f64]) -> Vec<f64> {
        let n = self.dim();
        let mut w = b.to_vec();
        for i in 0..n {
            for k in 0..i {
                w[i] -= self.lu[(k, i)] * w[k];
            }
            w[i] /= self.lu[(i, i)];
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                w[i] -= self.lu[(k, i)] * w[k];
            }
        }
        let mut x = vec![0.0; n];
        for (i, &p) in self.perm.iter().enumerate() {
            x[p] = w[i];
        }
        x
    }

    /// Solves `A X = B` column by column.
    pub fn solve_matrix(&self, b: &DenseMatrix) -> DenseMatrix {
        let n = self.dim();
        let mut out = DenseMatrix::zeros(n);
        let mut col = vec![0.0; n];
        for j in 0..n {
            for i in 0..n {
                col[i] = b[(i, j)];
            }
            let x = self.solve(&col);
            for i in 0..n {
                out[(i, j)] = x[i];
            }
        }
        out
    }

    /// Hager's estimate of `‖A⁻¹‖₁` (a lower bound, usually exact for small n).
    pub fn inverse_norm_1_estimate(&self) -> f64 {
        let n = self.dim();
        let mut x = vec![1.0 / n as f64; n];
        let mut estimate = 0.0;
        for _ in 0..5 {
            let y = self.solve(&x);
            estimate = y.iter().map(|v| v.abs()).sum();
            let xi: Vec<f64> = y.iter().map(|&v| if v >= 0.0 { 1.0 } else { -1.0 }).collect();
            let z = self.solve_transpose(&xi);
            let (j, zmax) = z
                .iter()
                .enumerate()
                .map(|(i, v)| (i, v.abs()))
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .expect("non-empty");
            let ztx: f64 = z.iter().zip(&x).map(|(a, b)| a * b).sum();
            if zmax <= ztx {
                break;
            }
            x = vec![0.0; n];
            x[j] = 1.0;
        }
        // Higham's alternating-sign vector guards against the estimator being fooled.
        let alt: Vec<f64> = (0..n)
            .map(|i| {
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                sign * (1.0 + i as f64 / (n as f64 - 1.0).max(1.0))
            })
            .collect();
        let y = self.solve(&alt);
        let alt_estimate = 2.0 * y.iter().map(|v| v.abs()).sum::<f64>() / (3.0 * n as f64);
        estimate.max(alt_estimate)
    }

    /// Estimated reciprocal condition number `1/(‖A‖₁ ‖A⁻¹‖₁)`.
    pub fn rcond(&self) -> f64 {
        let inv = self.inverse_norm_1_estimate();
        if !inv.is_finite() || self.norm_1 == 0.0 {
            return 0.0;
        }
        1.0 / (self.norm_1 * inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> DenseMatrix {
        DenseMatrix::from_rows(&[
            [0.0, 2.0, 1.0, 0.5],
            [1.0, -1.0, 0.0, 3.0],
            [4.0, 0.5, -2.0, 1.0],
            [0.2, 0.0, 1.0, 1.0],
        ])
    }

    #[test]
    fn solves_and_transposed_solves() {
        let a = sample();
        let lu = LuFactors::new(&a).unwrap();
        let b = [1.0, -2.0, 0.5, 3.0];
        let x = lu.solve(&b);
        let r = a.matvec(&x);
        assert!(super::super::max_abs_diff(&r, &b) < 1e-13);
        let xt = lu.solve_transpose(&b);
        let rt = a.transpose().matvec(&xt);
        assert!(super::super::max_abs_diff(&rt, &b) < 1e-13);
    }

    #[test]
    fn condition_estimate_matches_explicit_inverse() {
        let a = sample();
        let lu = LuFactors::new(&a).unwrap();
        let inv = lu.solve_matrix(&DenseMatrix::identity(4));
        let exact = inv.norm_1();
        let est = lu.inverse_norm_1_estimate();
        assert!(est <= exact * (1.0 + 1e-12));
        assert!(est >= exact / 3.0, "{est} vs {exact}");
    }

    #[test]
    fn singular_matrix_detected() {
        let a = DenseMatrix::from_rows(&[[1.0, 2.0], [2.0, 4.0]]);
        match LuFactors::new(&a) {
            Err(_) => {}
            Ok(lu) => assert!(lu.rcond() < SINGULAR_RCOND),
        }
        let nearly = DenseMatrix::from_rows(&[[1.0, 2.0], [1.0, 2.0 + 1e-13]]);
        let lu = LuFactors::new(&nearly).unwrap();
        assert!(lu.rcond() < SINGULAR_RCOND);
    }
}
