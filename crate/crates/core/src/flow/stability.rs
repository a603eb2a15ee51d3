//! Local stability of constant α-curvature metrics.
//!
//! A constant α-curvature metric `r*` on a 3-manifold is an asymptotically
//! stable fixed point of every (α,β)-flow, restricted to its conserved
//! hypersurface, when `λ₁(−Δ_α) > α·s_α*`. Since `−Δ_α` is similar to the
//! symmetric `Λ̃`, λ₁ is read off a symmetric eigendecomposition.

use nalgebra::DMatrix;

use crate::complex::{Dimension, Triangulation};
use crate::curvature::CurvatureReport;
use crate::error::{Error, Result};
use crate::geometry::PackingMetric;
use crate::operators::{flow_jacobian, laplacian_spectrum, SpectralReport};

use super::ConservedExponent;

/// `max_i |R_α,i − s_α|` above which a metric is not treated as critical.
pub const CONSTANCY_TOLERANCE: f64 = 1e-6;
/// Required margin in `λ₁ > α s_α* + margin`.
pub const CERTIFICATION_MARGIN: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotCertifiedReason {
    NotConstantCurvature,
    SpectralGapTooSmall,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilityVerdict {
    StableCertified,
    NotCertified(NotCertifiedReason),
}

#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub verdict: StabilityVerdict,
    pub alpha: f64,
    pub s_alpha: f64,
    /// α · s_α*
    pub threshold: f64,
    pub constancy_residual: f64,
    /// Absent when the metric is not a constant-curvature metric.
    pub spectrum: Option<SpectralReport>,
}

impl StabilityReport {
    pub fn is_certified(&self) -> bool {
        self.verdict == StabilityVerdict::StableCertified
    }

    pub fn lambda1(&self) -> Option<f64> {
        self.spectrum.as_ref().map(|s| s.lambda1)
    }
}

pub fn check_stability(
    t: &Triangulation,
    r_star: &PackingMetric,
    alpha: f64,
) -> Result<StabilityReport> {
    if t.dimension() != Dimension::Three {
        return Err(Error::WrongDimension {
            expected: 3,
            found: t.dimension().as_usize(),
        });
    }
    let report = CurvatureReport::compute(t, r_star, None, alpha)?;
    let residual = report.constancy_residual();
    let threshold = alpha * report.s_alpha;
    if residual > CONSTANCY_TOLERANCE {
        return Ok(StabilityReport {
            verdict: StabilityVerdict::NotCertified(NotCertifiedReason::NotConstantCurvature),
            alpha,
            s_alpha: report.s_alpha,
            threshold,
            constancy_residual: residual,
            spectrum: None,
        });
    }
    let spectrum = laplacian_spectrum(t, r_star, alpha)?;
    let verdict = if spectrum.lambda1 > threshold + CERTIFICATION_MARGIN {
        StabilityVerdict::StableCertified
    } else {
        StabilityVerdict::NotCertified(NotCertifiedReason::SpectralGapTooSmall)
    };
    Ok(StabilityReport {
        verdict,
        alpha,
        s_alpha: report.s_alpha,
        threshold,
        constancy_residual: residual,
        spectrum: Some(spectrum),
    })
}

/// Eigenvalues of `−D_rΓ` compressed onto the tangent space of the conserved
/// hypersurface at `r`, as `(real part, imaginary part)` sorted by real part.
///
/// At a fixed point `D_rΓ` maps into that tangent space, so the compression
/// is its restriction.
pub fn restricted_flow_spectrum(
    t: &Triangulation,
    r: &PackingMetric,
    alpha: f64,
    beta: f64,
) -> Result<Vec<(f64, f64)>> {
    let jac = flow_jacobian(t, r, alpha, beta)?;
    let radii = r.radii();
    let n = radii.len();
    let exponent = ConservedExponent::new(alpha, beta, t.dimension());
    // gradient of the conserved quantity (or of its logarithm when δ = 0)
    let normal: Vec<f64> = radii
        .iter()
        .map(|x| {
            if exponent.delta == 0.0 {
                1.0 / x
            } else {
                x.powf(exponent.delta - 1.0)
            }
        })
        .collect();
    let basis = orthonormal_complement(&normal);
    let compressed = basis.transpose() * (-&jac.matrix) * &basis;
    let mut eig: Vec<(f64, f64)> = compressed
        .complex_eigenvalues()
        .iter()
        .map(|z| (z.re, z.im))
        .collect();
    debug_assert_eq!(eig.len(), n - 1);
    eig.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(eig)
}

/// Columns spanning the orthogonal complement of `v` (modified Gram–Schmidt
/// against `v` and the coordinate axes).
fn orthonormal_complement(v: &[f64]) -> DMatrix<f64> {
    let n = v.len();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n);
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    basis.push(v.iter().map(|x| x / norm).collect());
    for axis in 0..n {
        if basis.len() == n {
            break;
        }
        let mut u = vec![0.0; n];
        u[axis] = 1.0;
        for b in &basis {
            let d: f64 = u.iter().zip(b).map(|(a, c)| a * c).sum();
            for (ui, bi) in u.iter_mut().zip(b) {
                *ui -= d * bi;
            }
        }
        let un = u.iter().map(|x| x * x).sum::<f64>().sqrt();
        if un > 1e-8 {
            basis.push(u.iter().map(|x| x / un).collect());
        }
    }
    DMatrix::from_fn(n, n - 1, |i, j| basis[j + 1][i])
}
