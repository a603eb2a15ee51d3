//! Dense numerics shared by the curvature and operator modules: compensated
//! summation and a cyclic Jacobi eigensolver for symmetric matrices.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

pub fn compensated_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut acc = CompensatedSum::new();
    for v in values {
        acc.add(v);
    }
    acc.value()
}

/// Largest absolute entry difference `max |M_ij − M_ji|`.
pub fn asymmetry(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    worst
}

/// Eigen-decomposition of a symmetric matrix, eigenvalues ascending with the
/// matching unit eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
    pub sweeps: usize,
}

const MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi rotations in row-major pivot order.
///
/// Iterates until the off-diagonal Frobenius norm falls below
/// `1e-13 · ‖M‖_F`. The sweep order is fixed, so repeated calls on the same
/// input give bitwise-identical output.
pub fn symmetric_eigen(m: &DMatrix<f64>) -> Result<SymmetricEigen> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: m.ncols(),
        });
    }
    let mut a = m.clone();
    let mut v = DMatrix::<f64>::identity(n, n);
    let threshold = 1e-13 * m.norm();

    let off_norm = |a: &DMatrix<f64>| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[(i, j)] * a[(i, j)];
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while off_norm(&a) > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(Error::EigenNoConvergence {
                off_norm: off_norm(&a),
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;

                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].total_cmp(&a[(j, j)]));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let mut vectors = DMatrix::<f64>::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        vectors.set_column(col, &v.column(src));
    }
    Ok(SymmetricEigen {
        values,
        vectors,
        sweeps,
    })
}

/// `diag(d) · M · diag(e)`.
pub(crate) fn scale_rows_cols(m: &DMatrix<f64>, left: &[f64], right: &[f64]) -> DMatrix<f64> {
    DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| left[i] * m[(i, j)] * right[j])
}

pub(crate) fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
}

pub(crate) fn to_dvector(v: &[f64]) -> DVector<f64> {
    DVector::from_column_slice(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let values = [1.0, 1e100, 1.0, -1e100];
        assert_eq!(compensated_sum(values), 2.0);
        assert_ne!(values.iter().sum::<f64>(), 2.0);
    }

    #[test]
    fn jacobi_diagonal_input() {
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![5.0, 0.0, 2.0]));
        let e = symmetric_eigen(&m).unwrap();
        assert_eq!(e.values, vec![0.0, 2.0, 5.0]);
        assert_eq!(e.sweeps, 0);
    }

    #[test]
    fn jacobi_matches_reconstruction_and_reference() {
        let n = 7;
        let b = DMatrix::from_fn(n, n, |i, j| {
            ((i * 7 + j * 3) % 11) as f64 - 5.0 + 0.1 * i as f64
        });
        let m = &b + b.transpose();
        let e = symmetric_eigen(&m).unwrap();
        let lambda = DMatrix::from_diagonal(&DVector::from_vec(e.values.clone()));
        let rebuilt = &e.vectors * lambda * e.vectors.transpose();
        assert!((rebuilt - &m).norm() < 1e-11 * m.norm());
        let orth = e.vectors.transpose() * &e.vectors - DMatrix::identity(n, n);
        assert!(orth.norm() < 1e-12);

        let mut reference: Vec<f64> = nalgebra::SymmetricEigen::new(m.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        reference.sort_by(f64::total_cmp);
        for (a, b) in e.values.iter().zip(&reference) {
            assert!((a - b).abs() < 1e-11 * m.norm());
        }
    }

    #[test]
    fn jacobi_is_deterministic() {
        let m = DMatrix::from_fn(5, 5, |i, j| 1.0 / (1.0 + i as f64 + j as f64));
        let a = symmetric_eigen(&m).unwrap();
        let b = symmetric_eigen(&m).unwrap();
        assert_eq!(a.values, b.values);
        assert_eq!(a.vectors, b.vectors);
    }

    #[test]
    fn asymmetry_measure() {
        let mut m = DMatrix::<f64>::identity(3, 3);
        m[(0, 2)] = 0.5;
        assert_eq!(asymmetry(&m), 0.5);
    }
}
