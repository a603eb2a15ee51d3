//! Numerical test of whether the normalised flow is a rescaling of the
//! unnormalised one: integrate both from the same start and measure how far
//! `r̃_i(t) / r_i(t)` is from being vertex-independent.

use crate::complex::Triangulation;
use crate::error::{Error, Result};
use crate::geometry::PackingMetric;

use super::{integrate, FlowConfig, Verdict};

const SAMPLE_COUNT: usize = 10;

#[derive(Debug, Clone)]
pub struct NormalizationReport {
    pub alpha: f64,
    pub beta: f64,
    pub times: Vec<f64>,
    /// Coefficient of variation of `r̃_i / r_i` across vertices at each time.
    pub ratio_cov: Vec<f64>,
    pub normalized_verdict: Verdict,
    pub unnormalized_verdict: Verdict,
}

impl NormalizationReport {
    pub fn max_cov(&self) -> f64 {
        self.ratio_cov.iter().copied().fold(0.0, f64::max)
    }
}

/// The (0,1) case, where the two flows differ only by a spatial scale.
pub fn normalization_equivalence_check(
    t: &Triangulation,
    initial: &PackingMetric,
    t_max: f64,
) -> Result<NormalizationReport> {
    normalization_equivalence_check_with(t, initial, 0.0, 1.0, t_max)
}

pub fn normalization_equivalence_check_with(
    t: &Triangulation,
    initial: &PackingMetric,
    alpha: f64,
    beta: f64,
    t_max: f64,
) -> Result<NormalizationReport> {
    if t.dimension() != crate::complex::Dimension::Three {
        return Err(Error::WrongDimension {
            expected: 3,
            found: t.dimension().as_usize(),
        });
    }
    let times: Vec<f64> = (1..SAMPLE_COUNT)
        .map(|k| t_max * k as f64 / SAMPLE_COUNT as f64)
        .collect();
    let mut cfg = FlowConfig::new(alpha, beta, initial.clone(), t_max);
    cfg.sample_times = times;
    // disable early stopping; both runs must cover the same time grid
    cfg.convergence_tol = f64::MIN_POSITIVE;
    cfg.abs_tol = 1e-13;
    cfg.rel_tol = 1e-11;
    let normalized = integrate(t, None, &cfg)?;
    cfg.normalized = false;
    let unnormalized = integrate(t, None, &cfg)?;

    let mut times = Vec::new();
    let mut covs = Vec::new();
    for (a, b) in normalized.samples.iter().zip(&unnormalized.samples) {
        if a.t != b.t {
            break;
        }
        let ratios: Vec<f64> = a.radii.iter().zip(&b.radii).map(|(x, y)| x / y).collect();
        times.push(a.t);
        covs.push(coefficient_of_variation(&ratios));
    }
    Ok(NormalizationReport {
        alpha,
        beta,
        times,
        ratio_cov: covs,
        normalized_verdict: normalized.verdict,
        unnormalized_verdict: unnormalized.verdict,
    })
}

fn coefficient_of_variation(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let var = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    var.sqrt() / mean.abs()
}
