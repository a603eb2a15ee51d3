//! Cooper–Rivin curvature on the 16-cell at the two-value metric
//! (1/12 on A/B vertices, 1/6 on C/D), where K_i / r_i is constant.

use abflow::complex::builtin_mesh;
use abflow::curvature::CurvatureReport;
use abflow::fixtures::{k_ab, k_cd, quasi_einstein_metric};

fn main() -> abflow::Result<()> {
    let t = builtin_mesh("sixteen_cell")?;
    println!(
        "16-cell: {} vertices, {} edges, {} triangles, {} tetrahedra",
        t.vertex_count(),
        t.edges().len(),
        t.triangles().len(),
        t.tetrahedra().len()
    );
    let r = quasi_einstein_metric();
    let rep = CurvatureReport::compute(&t, &r, None, 1.0)?;
    let labels = ["A1", "A2", "B1", "B2", "C1", "C2", "D1", "D2"];
    println!("{:>4} {:>10} {:>14} {:>14}", "v", "r", "K", "K/r");
    for (i, label) in labels.iter().enumerate() {
        println!(
            "{label:>4} {:>10.6} {:>14.10} {:>14.10}",
            r.radii()[i],
            rep.curvature[i],
            rep.alpha_curvature[i]
        );
    }
    println!("closed forms: K_AB = {:.10}, K_CD = {:.10}", k_ab(), k_cd());
    println!(
        "s_1 = {:.10}, spread of K/r = {:.2e}",
        rep.s_alpha,
        rep.constancy_residual()
    );
    Ok(())
}
