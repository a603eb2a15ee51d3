//! The unified (α,β)-flow `ṙ_i = s_α r_i^β − K_i r_i^{β−α}`, its
//! unnormalised companion `ṙ_i = −K_i r_i^{β−α}`, and the machinery around
//! them: conserved quantities, adaptive integration, stability certificates
//! and the registry of named special cases.

mod normalization;
pub mod ode;
mod registry;
mod stability;

pub use normalization::{
    normalization_equivalence_check, normalization_equivalence_check_with, NormalizationReport,
};
pub use registry::{
    registry, specialization, AlphaRule, BetaRule, FlowFamily, NativeRate, NativeVariable,
    RescaleRule, Specialization,
};
pub use stability::{
    check_stability, restricted_flow_spectrum, NotCertifiedReason, StabilityReport,
    StabilityVerdict,
};

use crate::complex::{Dimension, Triangulation};
use crate::curvature::{curvature_raw, s_alpha_raw};
use crate::error::{Error, Result};
use crate::geometry::{admissibility_with_margin, Admissibility, EdgeWeights, PackingMetric};
use crate::linalg::{compensated_sum, inf_norm};

/// Which vector field to integrate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowParams {
    pub alpha: f64,
    pub beta: f64,
    pub normalized: bool,
}

impl FlowParams {
    pub fn normalized(alpha: f64, beta: f64) -> Self {
        FlowParams {
            alpha,
            beta,
            normalized: true,
        }
    }

    pub fn unnormalized(alpha: f64, beta: f64) -> Self {
        FlowParams {
            alpha,
            beta,
            normalized: false,
        }
    }
}

/// The flow field Γ(r).
pub fn flow_field(
    t: &Triangulation,
    w: Option<&EdgeWeights>,
    r: &PackingMetric,
    params: FlowParams,
) -> Result<Vec<f64>> {
    r.check_len(t)?;
    flow_field_raw(t, w, r.radii(), params).map(|(g, _, _)| g)
}

/// Returns `(Γ, K, s_α)`.
pub(crate) fn flow_field_raw(
    t: &Triangulation,
    w: Option<&EdgeWeights>,
    radii: &[f64],
    params: FlowParams,
) -> Result<(Vec<f64>, Vec<f64>, f64)> {
    if let Some(v) = radii.iter().position(|&x| !(x > 0.0 && x.is_finite())) {
        return Err(Error::NonPositiveRadius {
            vertex: v,
            value: radii[v],
        });
    }
    let k = curvature_raw(t, radii, w)?;
    let s = s_alpha_raw(&k, radii, params.alpha, t.dimension());
    let FlowParams { alpha, beta, .. } = params;
    let gamma = radii
        .iter()
        .zip(&k)
        .map(|(&ri, &ki)| {
            let pull = -ki * ri.powf(beta - alpha);
            if params.normalized {
                s * ri.powf(beta) + pull
            } else {
                pull
            }
        })
        .collect();
    Ok((gamma, k, s))
}

/// The exponent `δ = α − β + n − 1` of the conserved quantity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservedExponent {
    pub delta: f64,
    pub mode: ConservedMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConservedMode {
    /// `Σ r_i^δ`
    PowerSum,
    /// `Π r_i`
    Product,
}

impl ConservedExponent {
    pub fn new(alpha: f64, beta: f64, dim: Dimension) -> Self {
        let delta = alpha - beta + dim.as_usize() as f64 - 1.0;
        let mode = if delta == 0.0 {
            ConservedMode::Product
        } else {
            ConservedMode::PowerSum
        };
        ConservedExponent { delta, mode }
    }
}

/// `Σ r_i^δ`, or `Π r_i` when δ = 0. Only the normalised flow conserves it.
pub fn conserved_quantity(r: &[f64], exponent: ConservedExponent) -> f64 {
    match exponent.mode {
        ConservedMode::PowerSum => compensated_sum(r.iter().map(|x| x.powf(exponent.delta))),
        ConservedMode::Product => compensated_sum(r.iter().map(|x| x.ln())).exp(),
    }
}

#[derive(Debug, Clone)]
pub struct FlowConfig {
    pub alpha: f64,
    pub beta: f64,
    pub initial_metric: PackingMetric,
    pub t_max: f64,
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Stop once `‖Γ‖_∞` falls below this.
    pub convergence_tol: f64,
    pub min_step: f64,
    pub normalized: bool,
    /// Record every `sample_stride`-th accepted step (ignored when
    /// `sample_times` is non-empty).
    pub sample_stride: usize,
    /// Record exactly at these times; steps are shortened to land on them.
    pub sample_times: Vec<f64>,
}

impl FlowConfig {
    pub fn new(alpha: f64, beta: f64, initial_metric: PackingMetric, t_max: f64) -> Self {
        FlowConfig {
            alpha,
            beta,
            initial_metric,
            t_max,
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            convergence_tol: 1e-9,
            min_step: 1e-14,
            normalized: true,
            sample_stride: 1,
            sample_times: Vec::new(),
        }
    }

    pub fn params(&self) -> FlowParams {
        FlowParams {
            alpha: self.alpha,
            beta: self.beta,
            normalized: self.normalized,
        }
    }

    fn validate(&self) -> Result<()> {
        let positive = [
            ("t_max", self.t_max),
            ("abs_tol", self.abs_tol),
            ("rel_tol", self.rel_tol),
            ("convergence_tol", self.convergence_tol),
            ("min_step", self.min_step),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidConfig(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if !self.alpha.is_finite() || !self.beta.is_finite() {
            return Err(Error::InvalidConfig("alpha and beta must be finite".into()));
        }
        if self.sample_stride == 0 {
            return Err(Error::InvalidConfig(
                "sample_stride must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Converged,
    MaxTimeReached,
    /// Every step from the current point leaves the admissible set, down to
    /// the minimum step.
    Degenerated,
    /// Error control drove the step below the minimum step.
    StepUnderflow,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlowSample {
    pub t: f64,
    pub radii: Vec<f64>,
    pub curvature: Vec<f64>,
    pub s_alpha: f64,
    pub conserved: f64,
    /// `max_i |R_α,i − s_α|`
    pub max_curvature_deviation: f64,
    /// `‖Γ‖_∞`
    pub field_norm: f64,
}

#[derive(Debug, Clone)]
pub struct FlowTrace {
    pub samples: Vec<FlowSample>,
    pub verdict: Verdict,
    pub final_metric: PackingMetric,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
    pub exponent: ConservedExponent,
}

impl FlowTrace {
    pub fn final_sample(&self) -> &FlowSample {
        self.samples.last().expect("trace holds the initial sample")
    }

    pub fn final_time(&self) -> f64 {
        self.final_sample().t
    }

    /// Largest `|c(t) − c(0)| / |c(0)|` over the recorded samples.
    pub fn conserved_drift(&self) -> f64 {
        let c0 = self.samples[0].conserved;
        self.samples
            .iter()
            .map(|s| ((s.conserved - c0) / c0).abs())
            .fold(0.0, f64::max)
    }
}

fn is_valid_point(t: &Triangulation, w: Option<&EdgeWeights>, y: &[f64]) -> bool {
    y.iter().all(|&x| x > 0.0 && x.is_finite())
        && admissibility_with_margin(t, y, w, 0.0) == Admissibility::Admissible
}

fn make_sample(
    t_now: f64,
    y: &[f64],
    gamma: &[f64],
    k: Vec<f64>,
    s: f64,
    params: FlowParams,
    exponent: ConservedExponent,
) -> FlowSample {
    let dev = y
        .iter()
        .zip(&k)
        .map(|(ri, ki)| (ki / ri.powf(params.alpha) - s).abs())
        .fold(0.0, f64::max);
    FlowSample {
        t: t_now,
        radii: y.to_vec(),
        curvature: k,
        s_alpha: s,
        conserved: conserved_quantity(y, exponent),
        max_curvature_deviation: dev,
        field_norm: inf_norm(gamma),
    }
}

/// Integrates the configured flow with adaptive Dormand–Prince 5(4) steps.
///
/// Every accepted step ends inside the admissible set: a step whose stages
/// or endpoint leave it is rejected and halved.
pub fn integrate(
    t: &Triangulation,
    w: Option<&EdgeWeights>,
    config: &FlowConfig,
) -> Result<FlowTrace> {
    config.validate()?;
    config.initial_metric.check_len(t)?;
    let params = config.params();
    let exponent = ConservedExponent::new(config.alpha, config.beta, t.dimension());
    let mut y = config.initial_metric.radii().to_vec();
    if !is_valid_point(t, w, &y) {
        let detail = match admissibility_with_margin(t, &y, w, 0.0) {
            Admissibility::DegenerateTetrahedron { simplex, q } => {
                format!("tetrahedron {simplex:?} has Q = {q}")
            }
            Admissibility::TriangleInequality { simplex } => {
                format!("triangle {simplex:?} violates the triangle inequality")
            }
            Admissibility::Admissible => "non-finite radius".to_string(),
        };
        return Err(Error::InadmissibleInitialMetric(detail));
    }

    let mut field = |x: &[f64]| flow_field_raw(t, w, x, params).map(|(g, _, _)| g);
    let (mut f0, k0, s0) = flow_field_raw(t, w, &y, params)?;

    let mut stops: Vec<f64> = config
        .sample_times
        .iter()
        .copied()
        .filter(|&s| s > 0.0 && s < config.t_max)
        .collect();
    stops.sort_by(f64::total_cmp);
    stops.dedup();
    stops.push(config.t_max);
    let use_stops = !config.sample_times.is_empty();
    let mut next_stop = 0usize;

    let mut samples = vec![make_sample(0.0, &y, &f0, k0, s0, params, exponent)];
    let mut time = 0.0;
    let mut accepted = 0usize;
    let mut rejected = 0usize;

    let scale_y = inf_norm(&y);
    let scale_f = inf_norm(&f0);
    let mut h = if scale_f > 0.0 {
        (0.01 * scale_y / scale_f).min(config.t_max)
    } else {
        config.t_max
    };

    let verdict = loop {
        if inf_norm(&f0) < config.convergence_tol {
            break Verdict::Converged;
        }
        if next_stop >= stops.len() {
            break Verdict::MaxTimeReached;
        }
        let stop = stops[next_stop];
        let remaining = stop - time;
        let clipped = h >= remaining;
        let h_try = if clipped { remaining } else { h };

        let step = match ode::dopri5_step(&mut field, &y, &f0, h_try) {
            Ok(s) if is_valid_point(t, w, &s.y) => s,
            _ => {
                rejected += 1;
                h = 0.5 * h_try;
                if h < config.min_step {
                    break Verdict::Degenerated;
                }
                continue;
            }
        };
        let err = ode::error_norm(&step.error, &y, &step.y, config.abs_tol, config.rel_tol);
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        if err <= 1.0 {
            accepted += 1;
            time = if clipped { stop } else { time + h_try };
            y = step.y;
            f0 = step.f_new;
            let proposal = h_try * factor;
            h = if clipped { h.max(proposal) } else { proposal };
            let reached_stop = clipped;
            if reached_stop {
                next_stop += 1;
            }
            let record = if use_stops {
                reached_stop
            } else {
                accepted.is_multiple_of(config.sample_stride) || reached_stop
            };
            let finished = inf_norm(&f0) < config.convergence_tol || next_stop >= stops.len();
            if record || finished {
                let (_, k, s) = flow_field_raw(t, w, &y, params)?;
                samples.push(make_sample(time, &y, &f0, k, s, params, exponent));
            }
        } else {
            rejected += 1;
            h = h_try * factor.min(1.0);
            if h < config.min_step {
                break Verdict::StepUnderflow;
            }
        }
    };

    if samples.last().map(|s| s.t) != Some(time) {
        let (_, k, s) = flow_field_raw(t, w, &y, params)?;
        samples.push(make_sample(time, &y, &f0, k, s, params, exponent));
    }
    Ok(FlowTrace {
        samples,
        verdict,
        final_metric: PackingMetric::new(y)?,
        accepted_steps: accepted,
        rejected_steps: rejected,
        exponent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::builtin_mesh;
    use crate::fixtures::quasi_einstein_metric;

    fn ones(n: usize) -> PackingMetric {
        PackingMetric::uniform(n, 1.0).unwrap()
    }

    #[test]
    fn uniform_sixteen_cell_is_critical() {
        let t = builtin_mesh("sixteen_cell").unwrap();
        for (alpha, beta) in [(0.0, 1.0), (1.0, 1.0), (2.0, -1.0), (-1.5, 0.3)] {
            let g = flow_field(&t, None, &ones(8), FlowParams::normalized(alpha, beta)).unwrap();
            assert!(inf_norm(&g) < 1e-12);
        }
    }

    #[test]
    fn quasi_einstein_metric_is_critical() {
        let t = builtin_mesh("sixteen_cell").unwrap();
        let r = quasi_einstein_metric();
        let g = flow_field(&t, None, &r, FlowParams::normalized(1.0, 2.0)).unwrap();
        assert!(inf_norm(&g) < 1e-12);
        for c in [0.5, 2.0] {
            let g = flow_field(
                &t,
                None,
                &r.scaled(c).unwrap(),
                FlowParams::normalized(1.0, 1.0),
            )
            .unwrap();
            assert!(inf_norm(&g) < 1e-9);
        }
    }

    #[test]
    fn unnormalized_field_on_boundary_simplex() {
        let t = builtin_mesh("boundary_4_simplex").unwrap();
        let g = flow_field(&t, None, &ones(5), FlowParams::unnormalized(0.0, 1.0)).unwrap();
        for x in g {
            assert!((x + 10.3612282).abs() < 1e-7);
        }
    }

    #[test]
    fn conserved_quantity_examples() {
        let e = ConservedExponent::new(0.0, 1.0, Dimension::Three);
        assert_eq!((e.delta, e.mode), (1.0, ConservedMode::PowerSum));
        assert!((conserved_quantity(&[1.0; 8], e) - 8.0).abs() < 1e-15);

        let e = ConservedExponent::new(0.0, 1.0, Dimension::Two);
        assert_eq!(e.mode, ConservedMode::Product);
        assert!((conserved_quantity(&[2.0, 0.5, 3.0], e) - 3.0).abs() < 1e-14);

        let e = ConservedExponent::new(1.0, 1.0, Dimension::Three);
        assert_eq!(e.delta, 2.0);
        let q = conserved_quantity(quasi_einstein_metric().radii(), e);
        assert!((q - (4.0 / 144.0 + 4.0 / 36.0)).abs() < 1e-15);
        assert!((q - 0.138889).abs() < 1e-6);
    }

    #[test]
    fn critical_start_converges_immediately() {
        let t = builtin_mesh("sixteen_cell").unwrap();
        let cfg = FlowConfig::new(1.0, 2.0, quasi_einstein_metric(), 10.0);
        let trace = integrate(&t, None, &cfg).unwrap();
        assert_eq!(trace.verdict, Verdict::Converged);
        assert_eq!(trace.final_time(), 0.0);
        assert_eq!(trace.samples.len(), 1);
    }

    #[test]
    fn inadmissible_start_is_rejected() {
        let t = builtin_mesh("boundary_4_simplex").unwrap();
        let r = PackingMetric::new(vec![1.0, 1.0, 1.0, 1.0, 0.15]).unwrap();
        let cfg = FlowConfig::new(0.0, 1.0, r, 1.0);
        assert!(matches!(
            integrate(&t, None, &cfg),
            Err(Error::InadmissibleInitialMetric(_))
        ));
    }

    #[test]
    fn invalid_config_is_rejected() {
        let t = builtin_mesh("sixteen_cell").unwrap();
        let mut cfg = FlowConfig::new(0.0, 1.0, ones(8), 1.0);
        cfg.rel_tol = 0.0;
        assert!(matches!(
            integrate(&t, None, &cfg),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn sample_times_are_hit_exactly() {
        let t = builtin_mesh("octa_surface").unwrap();
        let r = PackingMetric::new(vec![1.0, 1.2, 0.9, 1.1, 0.8, 1.0]).unwrap();
        let mut cfg = FlowConfig::new(0.0, 1.0, r, 0.5);
        cfg.sample_times = vec![0.1, 0.2, 0.3, 0.4];
        let trace = integrate(&t, None, &cfg).unwrap();
        let times: Vec<f64> = trace.samples.iter().map(|s| s.t).collect();
        assert_eq!(times, vec![0.0, 0.1, 0.2, 0.3, 0.4, 0.5]);
        assert_eq!(trace.verdict, Verdict::MaxTimeReached);
    }

    #[test]
    fn unnormalized_collapse_degenerates() {
        // ṙ = −K with K > 0 drives every radius to zero in finite time
        let t = builtin_mesh("sixteen_cell").unwrap();
        let mut cfg = FlowConfig::new(1.0, 1.0, ones(8), 10.0);
        cfg.normalized = false;
        let trace = integrate(&t, None, &cfg).unwrap();
        assert_eq!(trace.verdict, Verdict::Degenerated);
        assert!(trace.final_time() < 0.2);
        for w in trace.samples.windows(2) {
            assert!(w[1].t > w[0].t);
        }
    }
}
