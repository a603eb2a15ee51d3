//! The assembled Jacobian D_rΓ against central differences of Γ, and the
//! correction term H at a critical and a non-critical metric.

use abflow::complex::builtin_mesh;
use abflow::fixtures::quasi_einstein_metric;
use abflow::flow::{flow_field, FlowParams};
use abflow::geometry::PackingMetric;
use abflow::operators::flow_jacobian;
use nalgebra::DMatrix;

fn fd_jacobian(
    t: &abflow::complex::Triangulation,
    r: &PackingMetric,
    params: FlowParams,
) -> abflow::Result<DMatrix<f64>> {
    let n = r.len();
    let mut m = DMatrix::zeros(n, n);
    for j in 0..n {
        let h = 1e-6 * r.radii()[j];
        let mut plus = r.radii().to_vec();
        let mut minus = plus.clone();
        plus[j] += h;
        minus[j] -= h;
        let gp = flow_field(t, None, &PackingMetric::new(plus)?, params)?;
        let gm = flow_field(t, None, &PackingMetric::new(minus)?, params)?;
        for i in 0..n {
            m[(i, j)] = (gp[i] - gm[i]) / (2.0 * h);
        }
    }
    Ok(m)
}

fn main() -> abflow::Result<()> {
    let t = builtin_mesh("sixteen_cell")?;
    let cases = [
        ("two-value", quasi_einstein_metric(), 1.0, 1.0),
        ("two-value", quasi_einstein_metric(), 1.0, 2.5),
        (
            "perturbed",
            PackingMetric::new(vec![0.9, 1.1, 1.0, 1.05, 0.95, 1.2, 0.85, 1.0])?,
            0.5,
            1.5,
        ),
    ];
    for (label, r, alpha, beta) in cases {
        let jac = flow_jacobian(&t, &r, alpha, beta)?;
        let fd = fd_jacobian(&t, &r, FlowParams::normalized(alpha, beta))?;
        println!(
            "{label:>9} ({alpha}, {beta}): |D - FD| / |FD| = {:.2e}, |H| = {:.3e}, s_alpha = {:.6}",
            (&jac.matrix - &fd).amax() / fd.amax(),
            jac.h.norm(),
            jac.s_alpha
        );
    }
    Ok(())
}
