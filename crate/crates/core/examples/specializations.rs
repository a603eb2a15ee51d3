//! Every named flow in the registry, written in its own variable, agrees with
//! the unified field after the chain rule and the time rescaling.

use abflow::complex::builtin_mesh;
use abflow::flow::{flow_field, registry, AlphaRule};
use abflow::geometry::PackingMetric;

fn main() -> abflow::Result<()> {
    let surface = builtin_mesh("icosa_surface")?;
    let solid = builtin_mesh("sixteen_cell")?;
    for family in registry() {
        let t = if family.dimension.as_usize() == 2 {
            &surface
        } else {
            &solid
        };
        let alpha = match family.alpha {
            AlphaRule::Fixed(_) => None,
            _ => Some(0.7),
        };
        let flow = family.resolve(alpha)?;
        let n = t.vertex_count();
        let r = PackingMetric::new((0..n).map(|i| 1.0 + 0.1 * (i as f64).sin()).collect())?;
        let named = flow.radius_rate(t, None, &r)?;
        let unified = flow_field(t, None, &r, flow.params())?;
        let mismatch = named
            .iter()
            .zip(&unified)
            .map(|(a, b)| (flow.time_rescale * a - b).abs())
            .fold(0.0, f64::max);
        println!(
            "{:>26}  dim {}  (alpha, beta) = ({:>4}, {:>4})  rescale {:>4}  {:<12} mismatch {:.1e}   {}",
            flow.name,
            flow.dimension.as_usize(),
            flow.alpha,
            flow.beta,
            flow.time_rescale,
            if flow.normalized { "normalized" } else { "unnormalized" },
            mismatch,
            family.formula
        );
    }
    Ok(())
}
