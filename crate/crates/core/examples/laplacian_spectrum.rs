//! The curvature Jacobian Λ = ∂K/∂r and the α-Laplacian spectrum on a
//! non-uniform 16-cell metric.

use abflow::complex::builtin_mesh;
use abflow::geometry::PackingMetric;
use abflow::operators::{curvature_jacobian, laplacian_spectrum};

fn main() -> abflow::Result<()> {
    let t = builtin_mesh("sixteen_cell")?;
    let r = PackingMetric::new(vec![0.9, 1.1, 1.0, 1.05, 0.95, 1.2, 0.85, 1.0])?;
    let jac = curvature_jacobian(&t, &r, None)?;
    println!(
        "Lambda (row 0): {:?}",
        jac.matrix
            .row(0)
            .iter()
            .map(|x| (x * 1e4).round() / 1e4)
            .collect::<Vec<_>>()
    );
    println!(
        "|Lambda r|_inf = {:.2e}, raw asymmetry = {:.2e}",
        jac.kernel_residual(),
        jac.asymmetry
    );
    for alpha in [-1.0, 0.0, 1.0, 2.0] {
        let rep = laplacian_spectrum(&t, &r, alpha)?;
        let spectrum: Vec<String> = rep.spectrum.iter().map(|x| format!("{x:.5}")).collect();
        println!(
            "alpha {alpha:>4}: lambda1 = {:.6}, zero-mode alignment {:.12}, spectrum [{}]",
            rep.lambda1,
            rep.zero_mode_alignment.unwrap(),
            spectrum.join(", ")
        );
    }
    Ok(())
}
