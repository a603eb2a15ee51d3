//! Linearised operators around a metric: the curvature Jacobian Λ = ∂K/∂r,
//! the α-order combinatorial Laplacian built from it, the symmetric
//! operator Λ̃ that shares its spectrum, and the Jacobian of the flow field.

use nalgebra::DMatrix;

use crate::complex::{Dimension, Triangulation};
use crate::curvature::{curvature_raw, s_alpha_raw};
use crate::error::{Error, Result};
use crate::geometry::{admissibility_with_margin, Admissibility, EdgeWeights, PackingMetric};
use crate::linalg::{asymmetry, scale_rows_cols, symmetric_eigen};

/// Default relative finite-difference step.
pub const DEFAULT_RELATIVE_STEP: f64 = 1e-6;
/// Absolute floor on the finite-difference step.
pub const MIN_ABSOLUTE_STEP: f64 = 1e-9;
/// Every tetrahedron must satisfy `Q > ADMISSIBILITY_MARGIN` before differencing.
pub const ADMISSIBILITY_MARGIN: f64 = 1e-10;
/// Eigenvalues below this multiple of the spectral radius count as zero modes.
pub const ZERO_MODE_RELATIVE_THRESHOLD: f64 = 1e-8;

const STEP_RETRIES: usize = 3;

/// Finite-difference curvature Jacobian `Λ_ij = ∂K_i/∂r_j`.
///
/// In dim 3 Λ is the Hessian of `Σ K_i r_i` and is stored symmetrised; the
/// asymmetry of the raw difference quotients is kept for diagnostics. In
/// dim 2 the raw matrix is stored as is.
#[derive(Debug, Clone)]
pub struct CurvatureJacobian {
    pub matrix: DMatrix<f64>,
    pub base_metric: PackingMetric,
    /// `max |Λ_ij − Λ_ji|` before symmetrisation.
    pub asymmetry: f64,
    pub dimension: Dimension,
}

impl CurvatureJacobian {
    /// `‖Λ r‖_∞`.
    pub fn kernel_residual(&self) -> f64 {
        let r = crate::linalg::to_dvector(self.base_metric.radii());
        (&self.matrix * r).amax()
    }
}

pub fn curvature_jacobian(
    t: &Triangulation,
    r: &PackingMetric,
    w: Option<&EdgeWeights>,
) -> Result<CurvatureJacobian> {
    curvature_jacobian_with_step(t, r, w, DEFAULT_RELATIVE_STEP)
}

/// Central differences with step `h_j = max(rel_step · r_j, 1e-9)`. A step
/// whose probe leaves the admissible set is halved, up to three times.
pub fn curvature_jacobian_with_step(
    t: &Triangulation,
    r: &PackingMetric,
    w: Option<&EdgeWeights>,
    rel_step: f64,
) -> Result<CurvatureJacobian> {
    r.check_len(t)?;
    if let Admissibility::DegenerateTetrahedron { simplex, q } =
        admissibility_with_margin(t, r.radii(), w, ADMISSIBILITY_MARGIN)
    {
        return Err(Error::Inadmissible { simplex, q });
    }
    let n = t.vertex_count();
    let base = r.radii();
    let mut raw = DMatrix::<f64>::zeros(n, n);
    let mut probe = base.to_vec();
    for j in 0..n {
        let mut h = (rel_step * base[j]).max(MIN_ABSOLUTE_STEP);
        let mut column = None;
        for _ in 0..=STEP_RETRIES {
            probe[j] = base[j] + h;
            let plus = curvature_raw(t, &probe, w);
            probe[j] = base[j] - h;
            let minus = curvature_raw(t, &probe, w);
            probe[j] = base[j];
            if let (Ok(kp), Ok(km)) = (plus, minus) {
                // dividing by the realised step keeps the quotient exact in r
                let span = (base[j] + h) - (base[j] - h);
                column = Some(
                    kp.iter()
                        .zip(&km)
                        .map(|(a, b)| (a - b) / span)
                        .collect::<Vec<_>>(),
                );
                break;
            }
            h *= 0.5;
        }
        let column = column.ok_or(Error::PerturbationLeavesAdmissibleSet { vertex: j })?;
        for (i, v) in column.into_iter().enumerate() {
            raw[(i, j)] = v;
        }
    }
    let asym = asymmetry(&raw);
    let matrix = match t.dimension() {
        Dimension::Three => (&raw + raw.transpose()) * 0.5,
        Dimension::Two => raw,
    };
    Ok(CurvatureJacobian {
        matrix,
        base_metric: r.clone(),
        asymmetry: asym,
        dimension: t.dimension(),
    })
}

/// `(Δ_α f)_i = r_i^{−α} Σ_{j∼i} (−Λ_ij r_j)(f_j − f_i)`.
pub fn apply_alpha_laplacian(
    t: &Triangulation,
    r: &PackingMetric,
    lambda: &CurvatureJacobian,
    alpha: f64,
    f: &[f64],
) -> Result<Vec<f64>> {
    let n = t.vertex_count();
    for len in [f.len(), r.len(), lambda.matrix.nrows()] {
        if len != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: len,
            });
        }
    }
    let radii = r.radii();
    Ok((0..n)
        .map(|i| {
            let sum: f64 = t
                .neighbors(i)
                .iter()
                .map(|&j| -lambda.matrix[(i, j)] * radii[j] * (f[j] - f[i]))
                .sum();
            sum / radii[i].powf(alpha)
        })
        .collect())
}

/// Matrix form `Δ_α = −Σ^{−α} Λ Σ` with `Σ = diag(r)`.
pub fn alpha_laplacian_matrix(lambda: &CurvatureJacobian, alpha: f64) -> DMatrix<f64> {
    let r = lambda.base_metric.radii();
    let left: Vec<f64> = r.iter().map(|x| -x.powf(-alpha)).collect();
    scale_rows_cols(&lambda.matrix, &left, r)
}

/// `Λ̃ = Σ^{(1−α)/2} Λ Σ^{(1−α)/2}`, similar to `−Δ_α`.
pub fn symmetrized_operator(lambda: &CurvatureJacobian, alpha: f64) -> DMatrix<f64> {
    let d: Vec<f64> = lambda
        .base_metric
        .radii()
        .iter()
        .map(|x| x.powf(0.5 * (1.0 - alpha)))
        .collect();
    let m = scale_rows_cols(&lambda.matrix, &d, &d);
    // exact symmetry despite rounding in the two scalings
    (&m + m.transpose()) * 0.5
}

#[derive(Debug, Clone)]
pub struct SpectralReport {
    /// Smallest eigenvalue other than the zero mode.
    pub lambda1: f64,
    pub zero_eigenvalue: f64,
    /// Unit eigenvector of the zero mode.
    pub zero_mode: Vec<f64>,
    /// `|cos|` between the zero mode and the expected kernel direction.
    pub zero_mode_alignment: Option<f64>,
    pub spectral_radius: f64,
    /// Full spectrum, ascending.
    pub spectrum: Vec<f64>,
    pub alpha: Option<f64>,
}

/// Full Jacobi eigendecomposition of a symmetric operator with a single
/// kernel direction; reports the first eigenvalue past the kernel.
pub fn first_nonzero_eigenvalue(
    m: &DMatrix<f64>,
    expected_kernel: Option<&[f64]>,
) -> Result<SpectralReport> {
    let asym = asymmetry(m);
    if asym > 1e-10 * m.norm() {
        return Err(Error::NotSymmetric { asymmetry: asym });
    }
    let eig = symmetric_eigen(m)?;
    let radius = eig.values.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    let threshold = ZERO_MODE_RELATIVE_THRESHOLD * radius;
    let zeros: Vec<usize> = (0..eig.values.len())
        .filter(|&k| eig.values[k].abs() < threshold)
        .collect();
    let zero_idx = match zeros.len() {
        1 => zeros[0],
        0 => {
            let smallest = eig.values.iter().fold(f64::INFINITY, |a, x| a.min(x.abs()));
            return Err(Error::NoZeroMode {
                smallest,
                threshold,
            });
        }
        count => return Err(Error::MultipleZeroModes { count, threshold }),
    };
    let lambda1 = eig
        .values
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != zero_idx)
        .map(|(_, &v)| v)
        .fold(f64::INFINITY, f64::min);
    let zero_mode: Vec<f64> = eig.vectors.column(zero_idx).iter().copied().collect();
    let alignment = expected_kernel.map(|e| {
        let dot: f64 = e.iter().zip(&zero_mode).map(|(a, b)| a * b).sum();
        let ne: f64 = e.iter().map(|a| a * a).sum::<f64>().sqrt();
        dot.abs() / ne
    });
    Ok(SpectralReport {
        lambda1,
        zero_eigenvalue: eig.values[zero_idx],
        zero_mode,
        zero_mode_alignment: alignment,
        spectral_radius: radius,
        spectrum: eig.values,
        alpha: None,
    })
}

/// Spectrum of `−Δ_α` at `r` on a 3-manifold, computed through Λ̃.
pub fn laplacian_spectrum(
    t: &Triangulation,
    r: &PackingMetric,
    alpha: f64,
) -> Result<SpectralReport> {
    expect_three(t)?;
    let jac = curvature_jacobian(t, r, None)?;
    let sym = symmetrized_operator(&jac, alpha);
    let kernel: Vec<f64> = r
        .radii()
        .iter()
        .map(|x| x.powf(0.5 * (alpha + 1.0)))
        .collect();
    let mut report = first_nonzero_eigenvalue(&sym, Some(&kernel))?;
    report.alpha = Some(alpha);
    Ok(report)
}

/// `D_rΓ` at a metric together with the correction term `H`, which vanishes
/// at constant α-curvature metrics.
#[derive(Debug, Clone)]
pub struct FlowJacobian {
    pub matrix: DMatrix<f64>,
    pub h: DMatrix<f64>,
    pub s_alpha: f64,
    pub curvature_jacobian: CurvatureJacobian,
}

/// Analytic Jacobian of `Γ_i = s_α r_i^β − K_i r_i^{β−α}` on a 3-manifold,
/// assembled from the finite-difference Λ:
///
/// ```text
/// D_rΓ = Σ^{β−α} ( −Λ + α s_α (Σ^{α−1} − r^α (r^α)ᵀ / W) − H ),   W = Σ r_i^{α+1}
/// H    = (β−α) Σ^{−1} diag(K − s_α r^α) − r^α (K − s_α r^α)ᵀ / W
/// ```
pub fn flow_jacobian(
    t: &Triangulation,
    r: &PackingMetric,
    alpha: f64,
    beta: f64,
) -> Result<FlowJacobian> {
    expect_three(t)?;
    let jac = curvature_jacobian(t, r, None)?;
    let radii = r.radii();
    let n = radii.len();
    let k = curvature_raw(t, radii, None)?;
    let s = s_alpha_raw(&k, radii, alpha, Dimension::Three);
    let w: f64 = radii.iter().map(|x| x.powf(alpha + 1.0)).sum();
    let ra: Vec<f64> = radii.iter().map(|x| x.powf(alpha)).collect();
    let dev: Vec<f64> = k.iter().zip(&ra).map(|(ki, rai)| ki - s * rai).collect();

    let h = DMatrix::from_fn(n, n, |i, j| {
        let diag = if i == j {
            (beta - alpha) * dev[i] / radii[i]
        } else {
            0.0
        };
        diag - ra[i] * dev[j] / w
    });
    let matrix = DMatrix::from_fn(n, n, |i, j| {
        let diag = if i == j {
            radii[i].powf(alpha - 1.0)
        } else {
            0.0
        };
        let inner = -jac.matrix[(i, j)] + alpha * s * (diag - ra[i] * ra[j] / w) - h[(i, j)];
        radii[i].powf(beta - alpha) * inner
    });
    Ok(FlowJacobian {
        matrix,
        h,
        s_alpha: s,
        curvature_jacobian: jac,
    })
}

fn expect_three(t: &Triangulation) -> Result<()> {
    if t.dimension() != Dimension::Three {
        return Err(Error::WrongDimension {
            expected: 3,
            found: t.dimension().as_usize(),
        });
    }
    Ok(())
}
