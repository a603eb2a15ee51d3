//! Packing metrics and the Euclidean data they induce: edge lengths,
//! triangle angles, tetrahedron non-degeneracy and solid angles.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::complex::{Dimension, Triangulation};
use crate::error::{Error, Result};

/// A positive radius per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct PackingMetric {
    radii: Vec<f64>,
}

impl PackingMetric {
    pub fn new(radii: Vec<f64>) -> Result<Self> {
        for (vertex, &value) in radii.iter().enumerate() {
            check_radius(vertex, value)?;
        }
        Ok(PackingMetric { radii })
    }

    pub fn uniform(vertex_count: usize, value: f64) -> Result<Self> {
        Self::new(vec![value; vertex_count])
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.radii.iter().map(|r| r * c).collect())
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.radii
    }

    pub(crate) fn check_len(&self, t: &Triangulation) -> Result<()> {
        if self.radii.len() != t.vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: t.vertex_count(),
                found: self.radii.len(),
            });
        }
        Ok(())
    }
}

fn check_radius(vertex: usize, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveRadius { vertex, value })
    }
}

/// Per-edge intersection-angle weights Φ for surfaces, indexed like
/// [`Triangulation::edges`].
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeWeights {
    phi: Vec<f64>,
}

impl EdgeWeights {
    /// Φ ≡ 0 (tangent circles).
    pub fn zeros(t: &Triangulation) -> Self {
        EdgeWeights {
            phi: vec![0.0; t.edges().len()],
        }
    }

    pub fn new(t: &Triangulation, phi: Vec<f64>) -> Result<Self> {
        if phi.len() != t.edges().len() {
            return Err(Error::DimensionMismatch {
                expected: t.edges().len(),
                found: phi.len(),
            });
        }
        for &p in &phi {
            check_weight(p)?;
        }
        Ok(EdgeWeights { phi })
    }

    /// Weights given for some edges; the rest default to 0.
    pub fn from_pairs(t: &Triangulation, pairs: &[(usize, usize, f64)]) -> Result<Self> {
        let mut phi = vec![0.0; t.edges().len()];
        for &(i, j, p) in pairs {
            check_weight(p)?;
            let bound = t.vertex_count();
            for v in [i, j] {
                if v >= bound {
                    return Err(Error::IndexOutOfRange { index: v, bound });
                }
            }
            let e = t
                .edge_index(i, j)
                .ok_or(Error::IndexOutOfRange { index: j, bound })?;
            phi[e] = p;
        }
        Ok(EdgeWeights { phi })
    }

    pub fn values(&self) -> &[f64] {
        &self.phi
    }

    pub fn get(&self, edge: usize) -> f64 {
        self.phi[edge]
    }
}

fn check_weight(phi: f64) -> Result<()> {
    if (0.0..=FRAC_PI_2).contains(&phi) {
        Ok(())
    } else {
        Err(Error::WeightOutOfRange { value: phi })
    }
}

/// Circle-packing edge length `sqrt(ri² + rj² + 2 ri rj cos φ)`.
pub fn edge_length_2d(r_i: f64, r_j: f64, phi: f64) -> Result<f64> {
    check_radius(0, r_i)?;
    check_radius(1, r_j)?;
    check_weight(phi)?;
    Ok((r_i * r_i + r_j * r_j + 2.0 * r_i * r_j * phi.cos()).sqrt())
}

/// Ball-packing edge length `ri + rj`.
pub fn edge_length_3d(r_i: f64, r_j: f64) -> Result<f64> {
    check_radius(0, r_i)?;
    check_radius(1, r_j)?;
    Ok(r_i + r_j)
}

/// Inner angles of a Euclidean triangle, returned as (at i, at j, at k).
/// The angle at a vertex is opposite the side not touching it, so the
/// angle at i is opposite `l_jk`.
pub fn triangle_angles(l_ij: f64, l_jk: f64, l_ik: f64) -> Result<(f64, f64, f64)> {
    let ok = l_ij > 0.0
        && l_jk > 0.0
        && l_ik > 0.0
        && l_ij < l_jk + l_ik
        && l_jk < l_ij + l_ik
        && l_ik < l_ij + l_jk;
    if !ok {
        return Err(Error::TriangleInequalityViolated(l_ij, l_jk, l_ik));
    }
    let at_i = angle_opposite(l_jk, l_ij, l_ik);
    let at_j = angle_opposite(l_ik, l_ij, l_jk);
    let at_k = angle_opposite(l_ij, l_ik, l_jk);
    Ok((at_i, at_j, at_k))
}

/// Angle opposite side `a` in a triangle with the other sides `b`, `c`.
fn angle_opposite(a: f64, b: f64, c: f64) -> f64 {
    ((b * b + c * c - a * a) / (2.0 * b * c))
        .clamp(-1.0, 1.0)
        .acos()
}

/// `Q = (Σ 1/r)² − 2 Σ 1/r²`; positive exactly when the four tangent balls
/// span a non-degenerate Euclidean tetrahedron.
pub fn tetra_nondegeneracy(r_i: f64, r_j: f64, r_k: f64, r_l: f64) -> Result<f64> {
    let radii = [r_i, r_j, r_k, r_l];
    for (v, &r) in radii.iter().enumerate() {
        check_radius(v, r)?;
    }
    Ok(q_unchecked(&radii))
}

fn q_unchecked(radii: &[f64; 4]) -> f64 {
    let (mut s1, mut s2) = (0.0, 0.0);
    for &r in radii {
        let k = 1.0 / r;
        s1 += k;
        s2 += k * k;
    }
    s1 * s1 - 2.0 * s2
}

/// Solid angles at the four vertices of the tetrahedron spanned by four
/// mutually tangent balls, in the order of the given radii.
///
/// Each solid angle is the spherical excess of the vertex link: the three
/// face angles at the vertex are the side arcs of a spherical triangle,
/// whose area comes from l'Huilier's theorem.
pub fn tetra_solid_angles(r_i: f64, r_j: f64, r_k: f64, r_l: f64) -> Result<[f64; 4]> {
    let radii = [r_i, r_j, r_k, r_l];
    let q = tetra_nondegeneracy(r_i, r_j, r_k, r_l)?;
    let degenerate = || Error::DegenerateTetrahedron { radii, q };
    if q <= 0.0 {
        return Err(degenerate());
    }
    let len = |a: usize, b: usize| radii[a] + radii[b];
    let mut out = [0.0; 4];
    for (v, slot) in out.iter_mut().enumerate() {
        let others: Vec<usize> = (0..4).filter(|&w| w != v).collect();
        let (a, b, c) = (others[0], others[1], others[2]);
        // face angle at v in each face (v, x, y) is opposite edge xy
        let arc_bc = angle_opposite(len(b, c), len(v, b), len(v, c));
        let arc_ac = angle_opposite(len(a, c), len(v, a), len(v, c));
        let arc_ab = angle_opposite(len(a, b), len(v, a), len(v, b));
        *slot = spherical_excess(arc_bc, arc_ac, arc_ab).ok_or_else(degenerate)?;
    }
    Ok(out)
}

/// Area of a spherical triangle with side arcs `a`, `b`, `c` by l'Huilier's
/// formula, or `None` when the arcs violate the spherical triangle
/// inequalities.
pub fn spherical_excess(a: f64, b: f64, c: f64) -> Option<f64> {
    let s = 0.5 * (a + b + c);
    let (sa, sb, sc) = (s - a, s - b, s - c);
    if sa <= 0.0 || sb <= 0.0 || sc <= 0.0 || s >= PI {
        return None;
    }
    let prod = (0.5 * s).tan() * (0.5 * sa).tan() * (0.5 * sb).tan() * (0.5 * sc).tan();
    if prod <= 0.0 || !prod.is_finite() {
        return None;
    }
    Some(4.0 * prod.sqrt().atan())
}

/// Outcome of [`is_admissible`].
#[derive(Debug, Clone, PartialEq)]
pub enum Admissibility {
    Admissible,
    /// First tetrahedron (in storage order) with `Q ≤ 0`.
    DegenerateTetrahedron {
        simplex: [usize; 4],
        q: f64,
    },
    /// First triangle whose edge lengths fail the triangle inequality. This
    /// never happens for weights in [0, π/2] and is kept as a consistency check.
    TriangleInequality {
        simplex: [usize; 3],
    },
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Admissibility::Admissible)
    }
}

/// Membership of `r` in the admissible metric space of `t`. The metric's
/// length must match the vertex count.
pub fn is_admissible(
    t: &Triangulation,
    r: &PackingMetric,
    w: Option<&EdgeWeights>,
) -> Result<Admissibility> {
    r.check_len(t)?;
    Ok(admissibility_with_margin(t, r.radii(), w, 0.0))
}

/// Like [`is_admissible`] on a raw radius slice, additionally requiring
/// `Q > margin` for every tetrahedron. Non-positive radii are reported
/// through `NonPositive` checks upstream; here they are treated as degenerate.
pub(crate) fn admissibility_with_margin(
    t: &Triangulation,
    radii: &[f64],
    w: Option<&EdgeWeights>,
    margin: f64,
) -> Admissibility {
    match t.dimension() {
        Dimension::Three => {
            for tet in t.tetrahedra() {
                let rr = [radii[tet[0]], radii[tet[1]], radii[tet[2]], radii[tet[3]]];
                let q = if rr.iter().all(|&x| x > 0.0 && x.is_finite()) {
                    q_unchecked(&rr)
                } else {
                    f64::NEG_INFINITY
                };
                // `!(q > margin)` also catches NaN
                if q.is_nan() || q <= margin {
                    return Admissibility::DegenerateTetrahedron { simplex: *tet, q };
                }
            }
            Admissibility::Admissible
        }
        Dimension::Two => {
            for tri in t.triangles() {
                let lengths = triangle_edge_lengths(t, radii, w, tri);
                let ok = match lengths {
                    Ok([a, b, c]) => triangle_angles(a, b, c).is_ok(),
                    Err(_) => false,
                };
                if !ok {
                    return Admissibility::TriangleInequality { simplex: *tri };
                }
            }
            Admissibility::Admissible
        }
    }
}

/// Edge lengths `[l_ij, l_jk, l_ik]` of triangle `[i, j, k]` in a surface.
pub(crate) fn triangle_edge_lengths(
    t: &Triangulation,
    radii: &[f64],
    w: Option<&EdgeWeights>,
    tri: &[usize; 3],
) -> Result<[f64; 3]> {
    let [i, j, k] = *tri;
    let phi = |a: usize, b: usize| -> f64 {
        match w {
            Some(w) => w.get(t.edge_index(a, b).expect("triangle edge exists")),
            None => 0.0,
        }
    };
    let length = |a: usize, b: usize| -> Result<f64> {
        check_radius(a, radii[a])?;
        check_radius(b, radii[b])?;
        edge_length_2d(radii[a], radii[b], phi(a, b))
    };
    Ok([length(i, j)?, length(j, k)?, length(i, k)?])
}
