//! Named curvature flows from the literature and their (α,β) identification.
//!
//! Each entry is stored twice over: once in its own variable and right-hand
//! side (`NativeVariable`, `NativeRate`), and once as the unified-flow
//! parameters it reduces to. [`Specialization::radius_rate`] converts the
//! first by the chain rule, so the identification can be checked pointwise.

use std::f64::consts::PI;

use crate::complex::{Dimension, Triangulation};
use crate::curvature::{curvature_raw, s_alpha_raw};
use crate::error::{Error, Result};
use crate::geometry::{EdgeWeights, PackingMetric};

use super::FlowParams;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaRule {
    Fixed(f64),
    /// Any real α.
    Free,
    /// Any real α except 0.
    NonZero,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BetaRule {
    Fixed(f64),
    /// β = α + c
    AlphaPlus(f64),
}

/// The constant `c` with `c · ṙ_named = Γ_unified`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RescaleRule {
    One,
    Alpha,
    Constant(f64),
}

/// Variable in which a named flow is written.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NativeVariable {
    /// r
    Radius,
    /// u = ln r
    LogRadius,
    /// u = α ln r
    LogRadiusPower,
    /// u = r^α
    RadiusPower,
    /// g = r²
    SquaredRadius,
}

/// Right-hand side of a named flow in its own variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NativeRate {
    /// K_av − K_i with K_av = 2πχ/N
    AverageMinusK,
    /// s_α r_i^α − K_i
    ScaledAverageMinusK,
    /// s_α − K_i / r_i^α
    AverageMinusAlphaCurvature,
    /// −K_i
    MinusK,
    /// (s_0 − K_i) r_i
    ZeroAverageMinusKTimesR,
    /// (s_2 − K_i / r_i²) g_i
    QuadraticAverageMinusRTimesG,
}

/// A registry entry before α is fixed.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowFamily {
    pub name: &'static str,
    pub dimension: Dimension,
    pub alpha: AlphaRule,
    pub beta: BetaRule,
    pub rescale: RescaleRule,
    pub normalized: bool,
    pub variable: NativeVariable,
    pub rate: NativeRate,
    pub formula: &'static str,
}

/// A named flow at a concrete α.
#[derive(Debug, Clone, PartialEq)]
pub struct Specialization {
    pub name: &'static str,
    pub dimension: Dimension,
    pub alpha: f64,
    pub beta: f64,
    pub time_rescale: f64,
    pub normalized: bool,
    pub variable: NativeVariable,
    pub rate: NativeRate,
}

impl FlowFamily {
    /// Fixes α. Families with a free α need `Some`; fixed-α families accept
    /// `None` or their own value.
    pub fn resolve(&self, alpha: Option<f64>) -> Result<Specialization> {
        let alpha = match (self.alpha, alpha) {
            (AlphaRule::Fixed(a), None) => a,
            (AlphaRule::Fixed(a), Some(b)) if a == b => a,
            (AlphaRule::Fixed(a), Some(b)) => {
                return Err(Error::InvalidSpecializationParameter(format!(
                    "{} has fixed alpha = {a}, got {b}",
                    self.name
                )))
            }
            (AlphaRule::Free | AlphaRule::NonZero, None) => {
                return Err(Error::InvalidSpecializationParameter(format!(
                    "{} needs a value of alpha",
                    self.name
                )))
            }
            (AlphaRule::NonZero, Some(0.0)) => {
                return Err(Error::InvalidSpecializationParameter(format!(
                    "{} requires alpha != 0",
                    self.name
                )))
            }
            (_, Some(a)) => a,
        };
        let beta = match self.beta {
            BetaRule::Fixed(b) => b,
            BetaRule::AlphaPlus(c) => alpha + c,
        };
        let time_rescale = match self.rescale {
            RescaleRule::One => 1.0,
            RescaleRule::Alpha => alpha,
            RescaleRule::Constant(c) => c,
        };
        Ok(Specialization {
            name: self.name,
            dimension: self.dimension,
            alpha,
            beta,
            time_rescale,
            normalized: self.normalized,
            variable: self.variable,
            rate: self.rate,
        })
    }
}

impl Specialization {
    pub fn params(&self) -> FlowParams {
        FlowParams {
            alpha: self.alpha,
            beta: self.beta,
            normalized: self.normalized,
        }
    }

    /// The named flow's right-hand side in its own variable.
    pub fn native_rate(
        &self,
        t: &Triangulation,
        w: Option<&EdgeWeights>,
        r: &PackingMetric,
    ) -> Result<Vec<f64>> {
        if t.dimension() != self.dimension {
            return Err(Error::WrongDimension {
                expected: self.dimension.as_usize(),
                found: t.dimension().as_usize(),
            });
        }
        r.check_len(t)?;
        let radii = r.radii();
        let k = curvature_raw(t, radii, w)?;
        let dim = t.dimension();
        let a = self.alpha;
        let out = match self.rate {
            NativeRate::AverageMinusK => {
                let chi = t.euler_characteristic()? as f64;
                let k_av = 2.0 * PI * chi / t.vertex_count() as f64;
                k.iter().map(|ki| k_av - ki).collect()
            }
            NativeRate::ScaledAverageMinusK => {
                let s = s_alpha_raw(&k, radii, a, dim);
                radii
                    .iter()
                    .zip(&k)
                    .map(|(ri, ki)| s * ri.powf(a) - ki)
                    .collect()
            }
            NativeRate::AverageMinusAlphaCurvature => {
                let s = s_alpha_raw(&k, radii, a, dim);
                radii
                    .iter()
                    .zip(&k)
                    .map(|(ri, ki)| s - ki / ri.powf(a))
                    .collect()
            }
            NativeRate::MinusK => k.iter().map(|ki| -ki).collect(),
            NativeRate::ZeroAverageMinusKTimesR => {
                let s0 = s_alpha_raw(&k, radii, 0.0, dim);
                radii
                    .iter()
                    .zip(&k)
                    .map(|(ri, ki)| (s0 - ki) * ri)
                    .collect()
            }
            NativeRate::QuadraticAverageMinusRTimesG => {
                let s2 = s_alpha_raw(&k, radii, 2.0, dim);
                radii
                    .iter()
                    .zip(&k)
                    .map(|(ri, ki)| (s2 - ki / (ri * ri)) * ri * ri)
                    .collect()
            }
        };
        Ok(out)
    }

    /// `ṙ` of the named flow: the native rate divided by `du/dr`.
    pub fn radius_rate(
        &self,
        t: &Triangulation,
        w: Option<&EdgeWeights>,
        r: &PackingMetric,
    ) -> Result<Vec<f64>> {
        let native = self.native_rate(t, w, r)?;
        let a = self.alpha;
        Ok(native
            .iter()
            .zip(r.radii())
            .map(|(u_dot, &ri)| {
                let du_dr = match self.variable {
                    NativeVariable::Radius => 1.0,
                    NativeVariable::LogRadius => 1.0 / ri,
                    NativeVariable::LogRadiusPower => a / ri,
                    NativeVariable::RadiusPower => a * ri.powf(a - 1.0),
                    NativeVariable::SquaredRadius => 2.0 * ri,
                };
                u_dot / du_dr
            })
            .collect())
    }
}

const REGISTRY: &[FlowFamily] = &[
    FlowFamily {
        name: "chow_luo",
        dimension: Dimension::Two,
        alpha: AlphaRule::Fixed(0.0),
        beta: BetaRule::Fixed(1.0),
        rescale: RescaleRule::One,
        normalized: true,
        variable: NativeVariable::LogRadius,
        rate: NativeRate::AverageMinusK,
        formula: "du/dt = K_av - K, u = ln r",
    },
    FlowFamily {
        name: "ge_xu_alpha",
        dimension: Dimension::Two,
        alpha: AlphaRule::Free,
        beta: BetaRule::AlphaPlus(1.0),
        rescale: RescaleRule::One,
        normalized: true,
        variable: NativeVariable::LogRadius,
        rate: NativeRate::ScaledAverageMinusK,
        formula: "du/dt = s_a r^a - K, u = ln r",
    },
    FlowFamily {
        name: "ge_xu_alpha_prime",
        dimension: Dimension::Two,
        alpha: AlphaRule::NonZero,
        beta: BetaRule::AlphaPlus(1.0),
        rescale: RescaleRule::Alpha,
        normalized: true,
        variable: NativeVariable::LogRadiusPower,
        rate: NativeRate::ScaledAverageMinusK,
        formula: "du/dt = s_a r^a - K, u = a ln r",
    },
    FlowFamily {
        name: "ge_xu_quadratic",
        dimension: Dimension::Two,
        alpha: AlphaRule::Fixed(2.0),
        beta: BetaRule::Fixed(1.0),
        rescale: RescaleRule::Constant(2.0),
        normalized: true,
        variable: NativeVariable::SquaredRadius,
        rate: NativeRate::QuadraticAverageMinusRTimesG,
        formula: "dg/dt = (s_2 - K/r^2) g, g = r^2",
    },
    FlowFamily {
        name: "alpha_order_yamabe",
        dimension: Dimension::Two,
        alpha: AlphaRule::Free,
        beta: BetaRule::Fixed(1.0),
        rescale: RescaleRule::One,
        normalized: true,
        variable: NativeVariable::LogRadius,
        rate: NativeRate::AverageMinusAlphaCurvature,
        formula: "du/dt = s_a - K/r^a, u = ln r",
    },
    FlowFamily {
        name: "alpha_order_yamabe_prime",
        dimension: Dimension::Two,
        alpha: AlphaRule::NonZero,
        beta: BetaRule::Fixed(1.0),
        rescale: RescaleRule::Alpha,
        normalized: true,
        variable: NativeVariable::LogRadiusPower,
        rate: NativeRate::AverageMinusAlphaCurvature,
        formula: "du/dt = s_a - K/r^a, u = a ln r",
    },
    FlowFamily {
        name: "glickenstein",
        dimension: Dimension::Three,
        alpha: AlphaRule::Fixed(0.0),
        beta: BetaRule::Fixed(1.0),
        rescale: RescaleRule::One,
        normalized: false,
        variable: NativeVariable::LogRadius,
        rate: NativeRate::MinusK,
        formula: "du/dt = -K, u = ln r",
    },
    FlowFamily {
        name: "glickenstein_normalized",
        dimension: Dimension::Three,
        alpha: AlphaRule::Fixed(0.0),
        beta: BetaRule::Fixed(1.0),
        rescale: RescaleRule::One,
        normalized: true,
        variable: NativeVariable::Radius,
        rate: NativeRate::ZeroAverageMinusKTimesR,
        formula: "dr/dt = (s_0 - K) r",
    },
    FlowFamily {
        name: "lambda_flow",
        dimension: Dimension::Three,
        alpha: AlphaRule::Free,
        beta: BetaRule::AlphaPlus(0.0),
        rescale: RescaleRule::One,
        normalized: true,
        variable: NativeVariable::Radius,
        rate: NativeRate::ScaledAverageMinusK,
        formula: "dr/dt = s_a r^a - K (at a = 1: dr/dt = s_1 r - K)",
    },
    FlowFamily {
        name: "alpha_flow",
        dimension: Dimension::Three,
        alpha: AlphaRule::Free,
        beta: BetaRule::Fixed(1.0),
        rescale: RescaleRule::One,
        normalized: true,
        variable: NativeVariable::LogRadius,
        rate: NativeRate::AverageMinusAlphaCurvature,
        formula: "du/dt = s_a - K/r^a, u = ln r",
    },
    FlowFamily {
        name: "alpha_flow_prime",
        dimension: Dimension::Three,
        alpha: AlphaRule::NonZero,
        beta: BetaRule::Fixed(1.0),
        rescale: RescaleRule::Alpha,
        normalized: true,
        variable: NativeVariable::RadiusPower,
        rate: NativeRate::ScaledAverageMinusK,
        formula: "du/dt = s_a r^a - K, u = r^a",
    },
    FlowFamily {
        name: "quadratic_yamabe",
        dimension: Dimension::Three,
        alpha: AlphaRule::Fixed(2.0),
        beta: BetaRule::Fixed(1.0),
        rescale: RescaleRule::Constant(2.0),
        normalized: true,
        variable: NativeVariable::SquaredRadius,
        rate: NativeRate::QuadraticAverageMinusRTimesG,
        formula: "dg/dt = (s_2 - K/r^2) g, g = r^2",
    },
    FlowFamily {
        name: "alpha_plus_one",
        dimension: Dimension::Three,
        alpha: AlphaRule::Free,
        beta: BetaRule::AlphaPlus(1.0),
        rescale: RescaleRule::One,
        normalized: true,
        variable: NativeVariable::LogRadius,
        rate: NativeRate::ScaledAverageMinusK,
        formula: "du/dt = s_a r^a - K, u = ln r",
    },
    FlowFamily {
        name: "alpha_plus_one_prime",
        dimension: Dimension::Three,
        alpha: AlphaRule::NonZero,
        beta: BetaRule::AlphaPlus(1.0),
        rescale: RescaleRule::Alpha,
        normalized: true,
        variable: NativeVariable::LogRadiusPower,
        rate: NativeRate::ScaledAverageMinusK,
        formula: "du/dt = s_a r^a - K, u = a ln r",
    },
];

/// All registered named flows.
pub fn registry() -> &'static [FlowFamily] {
    REGISTRY
}

pub fn specialization(name: &str) -> Result<&'static FlowFamily> {
    REGISTRY
        .iter()
        .find(|f| f.name == name)
        .ok_or_else(|| Error::UnknownSpecialization(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::builtin_mesh;
    use crate::flow::flow_field;

    #[test]
    fn chow_luo_is_zero_one() {
        let s = specialization("chow_luo").unwrap().resolve(None).unwrap();
        assert_eq!(s.dimension, Dimension::Two);
        assert_eq!((s.alpha, s.beta, s.time_rescale), (0.0, 1.0, 1.0));
    }

    #[test]
    fn alpha_flow_coincides_with_lambda_flow_at_one() {
        let a = specialization("alpha_flow")
            .unwrap()
            .resolve(Some(1.0))
            .unwrap();
        let l = specialization("lambda_flow")
            .unwrap()
            .resolve(Some(1.0))
            .unwrap();
        assert_eq!((a.alpha, a.beta, a.time_rescale), (1.0, 1.0, 1.0));
        assert_eq!((l.alpha, l.beta), (1.0, 1.0));
        let t = builtin_mesh("sixteen_cell").unwrap();
        let r = PackingMetric::new(vec![1.0, 1.1, 0.9, 1.05, 0.95, 1.02, 0.98, 1.08]).unwrap();
        let ra = a.radius_rate(&t, None, &r).unwrap();
        let rl = l.radius_rate(&t, None, &r).unwrap();
        for (x, y) in ra.iter().zip(&rl) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn unknown_and_invalid_parameters() {
        assert!(matches!(
            specialization("ricci_deturck"),
            Err(Error::UnknownSpecialization(_))
        ));
        let prime = specialization("alpha_flow_prime").unwrap();
        assert!(prime.resolve(Some(0.0)).is_err());
        assert!(prime.resolve(None).is_err());
        assert_eq!(prime.resolve(Some(3.0)).unwrap().time_rescale, 3.0);
        assert!(specialization("chow_luo")
            .unwrap()
            .resolve(Some(1.0))
            .is_err());
    }

    #[test]
    fn names_are_unique() {
        let mut names: Vec<_> = registry().iter().map(|f| f.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), registry().len());
    }

    #[test]
    fn glickenstein_is_unnormalized_zero_one() {
        let s = specialization("glickenstein")
            .unwrap()
            .resolve(None)
            .unwrap();
        assert!(!s.normalized);
        let t = builtin_mesh("boundary_4_simplex").unwrap();
        let r = PackingMetric::new(vec![1.0, 1.1, 0.9, 1.05, 0.95]).unwrap();
        let named = s.radius_rate(&t, None, &r).unwrap();
        let unified = flow_field(&t, None, &r, s.params()).unwrap();
        for (a, b) in named.iter().zip(&unified) {
            assert!((a - b).abs() < 1e-12 * b.abs().max(1.0));
        }
    }
}
