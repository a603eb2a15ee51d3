use abflow::complex::builtin_mesh;
use abflow::curvature::{alpha_curvature, curvature};
use abflow::fixtures::quasi_einstein_metric;
use abflow::flow::{flow_field, integrate, FlowConfig, FlowParams};
use abflow::geometry::{is_admissible, PackingMetric};
use proptest::prelude::*;

fn inf(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |a, x| a.max(x.abs()))
}

#[test]
fn two_value_metric_stays_critical_under_scaling() {
    let t = builtin_mesh("sixteen_cell").unwrap();
    let r = quasi_einstein_metric();
    for c in [0.5, 1.0, 2.0] {
        let g = flow_field(
            &t,
            None,
            &r.scaled(c).unwrap(),
            FlowParams::normalized(1.0, 1.0),
        )
        .unwrap();
        assert!(inf(&g) < 1e-9, "c = {c}: {g:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_vanishes_exactly_where_alpha_curvature_is_constant(
        radii in proptest::collection::vec(0.8f64..1.25, 8),
        alpha in -1.5f64..2.5,
        beta in -1.0f64..2.0,
    ) {
        let t = builtin_mesh("sixteen_cell").unwrap();
        let r = PackingMetric::new(radii).unwrap();
        prop_assume!(is_admissible(&t, &r, None).unwrap().is_admissible());
        let g = flow_field(&t, None, &r, FlowParams::normalized(alpha, beta)).unwrap();
        let k = curvature(&t, &r, None).unwrap();
        let ra = alpha_curvature(&k, &r, alpha).unwrap();
        let s = abflow::curvature::s_alpha(&k, &r, alpha, t.dimension()).unwrap();
        for i in 0..8 {
            let expected = (s - ra[i]) * r.radii()[i].powf(beta);
            prop_assert!((g[i] - expected).abs() <= 1e-12 * (1.0 + expected.abs()));
        }
    }

    #[test]
    fn short_flows_conserve_their_quantity(
        jitter in proptest::collection::vec(-0.04f64..0.04, 6),
        alpha in -1.0f64..2.0,
        beta in -1.0f64..2.0,
    ) {
        let t = builtin_mesh("octa_surface").unwrap();
        let r = PackingMetric::new(jitter.iter().map(|j| 1.0 + j).collect()).unwrap();
        let cfg = FlowConfig::new(alpha, beta, r, 0.5);
        let trace = integrate(&t, None, &cfg).unwrap();
        prop_assert!(trace.conserved_drift() < 10.0 * cfg.rel_tol, "{}", trace.conserved_drift());
    }
}
