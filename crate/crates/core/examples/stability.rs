//! Spectral stability test at constant α-curvature metrics of the 16-cell.
//!
//! The uniform metric is critical for every α; the two-value metric only for
//! α = 1. The restricted spectrum of −D_rΓ gives an independent reading:
//! its eigenvalues are positive exactly when the test certifies.

use abflow::complex::builtin_mesh;
use abflow::fixtures::quasi_einstein_metric;
use abflow::flow::{check_stability, restricted_flow_spectrum};
use abflow::geometry::PackingMetric;

fn main() -> abflow::Result<()> {
    let t = builtin_mesh("sixteen_cell")?;
    let metrics = [
        ("uniform", PackingMetric::uniform(8, 1.0)?),
        ("two-value", quasi_einstein_metric()),
    ];
    for (label, r) in &metrics {
        for alpha in [-1.0, 0.0, 1.0, 2.0] {
            let rep = check_stability(&t, r, alpha)?;
            let lambda1 = rep.lambda1().map_or("-".to_string(), |l| format!("{l:.6}"));
            print!(
                "{label:>9} alpha {alpha:>4}: lambda1 {lambda1:>10}, alpha s {:>11.6}, {:?}",
                rep.threshold, rep.verdict
            );
            if rep.spectrum.is_some() {
                let eig = restricted_flow_spectrum(&t, r, alpha, 1.0)?;
                print!(", min Re eig(-D Gamma) at beta=1: {:.6}", eig[0].0);
            }
            println!();
        }
    }
    Ok(())
}
