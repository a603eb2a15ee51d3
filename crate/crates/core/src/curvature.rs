//! Vertex curvatures of packing metrics.
//!
//! Surfaces use the angle-deficit Gauss curvature `K_i = 2π − Σ θ_i`; 3-manifolds
//! use the Cooper–Rivin solid-angle deficit `K_i = 4π − Σ α_i`. Neither is
//! wrapped into a fundamental range.

use std::f64::consts::PI;

use crate::complex::{Dimension, Triangulation};
use crate::error::{Error, Result};
use crate::geometry::{
    admissibility_with_margin, tetra_solid_angles, triangle_angles, triangle_edge_lengths,
    Admissibility, EdgeWeights, PackingMetric,
};
use crate::linalg::{compensated_sum, CompensatedSum};

/// Discrete Gauss curvature of a circle-packed surface.
pub fn gauss_curvature(
    t: &Triangulation,
    r: &PackingMetric,
    w: Option<&EdgeWeights>,
) -> Result<Vec<f64>> {
    expect_dim(t, Dimension::Two)?;
    r.check_len(t)?;
    gauss_curvature_raw(t, r.radii(), w)
}

/// Cooper–Rivin curvature of a ball-packed 3-manifold.
pub fn cr_curvature(t: &Triangulation, r: &PackingMetric) -> Result<Vec<f64>> {
    expect_dim(t, Dimension::Three)?;
    r.check_len(t)?;
    cr_curvature_raw(t, r.radii())
}

/// Dispatches on the dimension of `t`. Weights are ignored in dim 3.
pub fn curvature(
    t: &Triangulation,
    r: &PackingMetric,
    w: Option<&EdgeWeights>,
) -> Result<Vec<f64>> {
    r.check_len(t)?;
    curvature_raw(t, r.radii(), w)
}

/// Curvature on an unchecked radius slice of the right length. Used on the
/// hot paths (finite differences, flow stages) where a metric may be probed
/// just outside the admissible set; such probes return an error.
pub(crate) fn curvature_raw(
    t: &Triangulation,
    radii: &[f64],
    w: Option<&EdgeWeights>,
) -> Result<Vec<f64>> {
    match t.dimension() {
        Dimension::Two => gauss_curvature_raw(t, radii, w),
        Dimension::Three => cr_curvature_raw(t, radii),
    }
}

fn gauss_curvature_raw(
    t: &Triangulation,
    radii: &[f64],
    w: Option<&EdgeWeights>,
) -> Result<Vec<f64>> {
    let mut angle_sums = vec![CompensatedSum::new(); t.vertex_count()];
    for tri in t.triangles() {
        let [l_ij, l_jk, l_ik] = triangle_edge_lengths(t, radii, w, tri)?;
        let (at_i, at_j, at_k) = triangle_angles(l_ij, l_jk, l_ik)?;
        angle_sums[tri[0]].add(at_i);
        angle_sums[tri[1]].add(at_j);
        angle_sums[tri[2]].add(at_k);
    }
    Ok(angle_sums.iter().map(|s| 2.0 * PI - s.value()).collect())
}

fn cr_curvature_raw(t: &Triangulation, radii: &[f64]) -> Result<Vec<f64>> {
    if let Admissibility::DegenerateTetrahedron { simplex, q } =
        admissibility_with_margin(t, radii, None, 0.0)
    {
        if let Some(v) = simplex
            .iter()
            .copied()
            .find(|&v| radii[v].is_nan() || radii[v] <= 0.0)
        {
            return Err(Error::NonPositiveRadius {
                vertex: v,
                value: radii[v],
            });
        }
        return Err(Error::Inadmissible { simplex, q });
    }
    let mut angle_sums = vec![CompensatedSum::new(); t.vertex_count()];
    for tet in t.tetrahedra() {
        let angles = tetra_solid_angles(radii[tet[0]], radii[tet[1]], radii[tet[2]], radii[tet[3]])
            .map_err(|_| Error::Inadmissible {
                simplex: *tet,
                q: f64::NAN,
            })?;
        for (v, a) in tet.iter().zip(angles) {
            angle_sums[*v].add(a);
        }
    }
    Ok(angle_sums.iter().map(|s| 4.0 * PI - s.value()).collect())
}

fn expect_dim(t: &Triangulation, d: Dimension) -> Result<()> {
    if t.dimension() != d {
        return Err(Error::WrongDimension {
            expected: d.as_usize(),
            found: t.dimension().as_usize(),
        });
    }
    Ok(())
}

/// `R_α,i = K_i / r_i^α`.
pub fn alpha_curvature(k: &[f64], r: &PackingMetric, alpha: f64) -> Result<Vec<f64>> {
    check_lengths(k, r)?;
    Ok(k.iter()
        .zip(r.radii())
        .map(|(ki, ri)| ki / ri.powf(alpha))
        .collect())
}

/// The normaliser `s_α = Σ K_i r_i^{n−2} / Σ r_i^{α+n−2}`.
pub fn s_alpha(k: &[f64], r: &PackingMetric, alpha: f64, dim: Dimension) -> Result<f64> {
    check_lengths(k, r)?;
    Ok(s_alpha_raw(k, r.radii(), alpha, dim))
}

pub(crate) fn s_alpha_raw(k: &[f64], radii: &[f64], alpha: f64, dim: Dimension) -> f64 {
    match dim {
        Dimension::Two => {
            compensated_sum(k.iter().copied())
                / compensated_sum(radii.iter().map(|r| r.powf(alpha)))
        }
        Dimension::Three => {
            compensated_sum(k.iter().zip(radii).map(|(ki, ri)| ki * ri))
                / compensated_sum(radii.iter().map(|r| r.powf(alpha + 1.0)))
        }
    }
}

/// Einstein–Hilbert–Regge functional `Σ K_i r_i`.
pub fn ehr_functional(k: &[f64], r: &PackingMetric) -> Result<f64> {
    check_lengths(k, r)?;
    Ok(compensated_sum(
        k.iter().zip(r.radii()).map(|(ki, ri)| ki * ri),
    ))
}

fn check_lengths(k: &[f64], r: &PackingMetric) -> Result<()> {
    if k.len() != r.len() {
        return Err(Error::DimensionMismatch {
            expected: r.len(),
            found: k.len(),
        });
    }
    Ok(())
}

/// Curvature summary of one metric at a chosen α.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureReport {
    pub curvature: Vec<f64>,
    pub alpha_curvature: Vec<f64>,
    pub s_alpha: f64,
    pub alpha: f64,
    /// `Σ K_i − 2πχ`; `None` in dim 3.
    pub gauss_bonnet_defect: Option<f64>,
}

impl CurvatureReport {
    pub fn compute(
        t: &Triangulation,
        r: &PackingMetric,
        w: Option<&EdgeWeights>,
        alpha: f64,
    ) -> Result<Self> {
        let k = curvature(t, r, w)?;
        let r_alpha = alpha_curvature(&k, r, alpha)?;
        let s = s_alpha(&k, r, alpha, t.dimension())?;
        let defect = match t.dimension() {
            Dimension::Two => {
                let chi = t.euler_characteristic()? as f64;
                Some(compensated_sum(k.iter().copied()) - 2.0 * PI * chi)
            }
            Dimension::Three => None,
        };
        Ok(CurvatureReport {
            curvature: k,
            alpha_curvature: r_alpha,
            s_alpha: s,
            alpha,
            gauss_bonnet_defect: defect,
        })
    }

    /// `max_i |R_α,i − s_α|`.
    pub fn constancy_residual(&self) -> f64 {
        self.alpha_curvature
            .iter()
            .fold(0.0f64, |acc, x| acc.max((x - self.s_alpha).abs()))
    }
}
