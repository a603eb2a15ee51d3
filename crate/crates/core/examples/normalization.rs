//! The normalised and unnormalised flows differ by a spatial rescaling only
//! for (α,β) = (0,1): the ratio r̃_i(t)/r_i(t) is then vertex-independent.

use abflow::complex::builtin_mesh;
use abflow::flow::normalization_equivalence_check_with;
use abflow::geometry::PackingMetric;

fn main() -> abflow::Result<()> {
    let t = builtin_mesh("sixteen_cell")?;
    let start = PackingMetric::new(vec![1.02, 0.99, 0.97, 1.01, 1.03, 0.98, 1.0, 0.995])?;
    for (alpha, beta) in [(0.0, 1.0), (1.0, 1.0), (0.0, 2.0), (-1.0, 0.0)] {
        let rep = normalization_equivalence_check_with(&t, &start, alpha, beta, 0.1)?;
        let covs: Vec<String> = rep.ratio_cov.iter().map(|c| format!("{c:.1e}")).collect();
        println!(
            "({alpha:>4}, {beta}) max CoV {:.3e}  [{}]",
            rep.max_cov(),
            covs.join(" ")
        );
    }
    Ok(())
}
