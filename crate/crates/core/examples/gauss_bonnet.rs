//! Discrete Gauss–Bonnet on the built-in spheres: Σ K_i = 2πχ for any radii
//! and any intersection angles in [0, π/2].

use std::f64::consts::{FRAC_PI_2, PI};

use abflow::complex::builtin_mesh;
use abflow::curvature::CurvatureReport;
use abflow::geometry::{EdgeWeights, PackingMetric};

fn main() -> abflow::Result<()> {
    for name in ["tetra_surface", "octa_surface", "icosa_surface"] {
        let t = builtin_mesh(name)?;
        let n = t.vertex_count();
        // a deterministic spread of radii and weights
        let r = PackingMetric::new(
            (0..n)
                .map(|i| 0.5 + (i as f64 * 0.73).sin().abs() * 2.0)
                .collect(),
        )?;
        let phi = (0..t.edges().len())
            .map(|e| FRAC_PI_2 * (e as f64 * 0.41).cos().abs())
            .collect();
        let w = EdgeWeights::new(&t, phi)?;
        let rep = CurvatureReport::compute(&t, &r, Some(&w), 0.0)?;
        let chi = t.euler_characteristic()?;
        println!(
            "{name:>14}: chi = {chi}, sum K = {:.15}, 2 pi chi = {:.15}, defect = {:.2e}",
            rep.curvature.iter().sum::<f64>(),
            2.0 * PI * chi as f64,
            rep.gauss_bonnet_defect.unwrap()
        );
    }
    Ok(())
}
