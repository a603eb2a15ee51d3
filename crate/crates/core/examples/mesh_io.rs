//! Mesh and metric files, and the CSV flow trace.

use abflow::complex::builtin_mesh;
use abflow::flow::{integrate, FlowConfig};
use abflow::geometry::PackingMetric;
use abflow::io::{parse_mesh, parse_metric, write_mesh, write_metric, write_trace_csv};

fn main() -> abflow::Result<()> {
    let text = write_mesh(&builtin_mesh("boundary_4_simplex")?);
    print!("{text}");
    let t = parse_mesh(&text)?;

    let r = PackingMetric::new(vec![1.0, 0.9, 1.1, 1.05, 0.95])?;
    let metric_text = write_metric(&r);
    print!("{metric_text}");
    assert_eq!(parse_metric(&metric_text, 5)?, r);

    let mut cfg = FlowConfig::new(0.0, 1.0, r, 0.2);
    cfg.sample_times = vec![0.05, 0.1, 0.15];
    let trace = integrate(&t, None, &cfg)?;
    write_trace_csv(&trace, std::io::stdout().lock())?;
    Ok(())
}
