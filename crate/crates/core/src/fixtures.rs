//! Reference metrics with closed-form curvature, used by tests, examples and
//! the command-line tool.

use std::f64::consts::PI;

use crate::geometry::PackingMetric;

/// Two-value constant 1-curvature metric on the built-in `sixteen_cell`:
/// radius 1/12 on the A and B vertices (indices 0–3) and 1/6 on the C and D
/// vertices (indices 4–7).
pub fn quasi_einstein_metric() -> PackingMetric {
    let a = 1.0 / 12.0;
    let c = 1.0 / 6.0;
    PackingMetric::new(vec![a, a, a, a, c, c, c, c]).expect("positive radii")
}

/// Curvature at the A/B vertices of [`quasi_einstein_metric`]:
/// `8π − 16·arccos(1/√10)`.
pub fn k_ab() -> f64 {
    8.0 * PI - 16.0 * (1.0 / 10f64.sqrt()).acos()
}

/// Curvature at the C/D vertices of [`quasi_einstein_metric`]:
/// `12π − 8·arccos(3/5) − 16·arccos(1/√10)`.
pub fn k_cd() -> f64 {
    12.0 * PI - 8.0 * 0.6f64.acos() - 16.0 * (1.0 / 10f64.sqrt()).acos()
}

/// The common value of `K_i / r_i` at [`quasi_einstein_metric`]:
/// `12·(8π − 16·arccos(1/√10))`, about 61.776.
pub fn quasi_einstein_alpha_curvature() -> f64 {
    12.0 * k_ab()
}
