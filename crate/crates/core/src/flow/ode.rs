//! Dormand–Prince 5(4) embedded Runge–Kutta step for autonomous systems.

// Butcher tableau (the field is autonomous, so the nodes c_i never enter)
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// b - b*, fifth-order weights minus the embedded fourth-order ones
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Result of one step: the fifth-order solution, the field at it (first
/// stage of the next step), and the local error estimate.
#[derive(Debug, Clone)]
pub struct Dopri5Step {
    pub y: Vec<f64>,
    pub f_new: Vec<f64>,
    pub error: Vec<f64>,
}

/// One Dormand–Prince step of size `h` from `y`, with `f0 = f(y)` supplied
/// by the caller. A failing field evaluation aborts the step.
pub fn dopri5_step<F, E>(f: &mut F, y: &[f64], f0: &[f64], h: f64) -> Result<Dopri5Step, E>
where
    F: FnMut(&[f64]) -> Result<Vec<f64>, E>,
{
    let n = y.len();
    let stage = |coeffs: &[(f64, &[f64])]| -> Vec<f64> {
        (0..n)
            .map(|i| y[i] + h * coeffs.iter().map(|(a, k)| a * k[i]).sum::<f64>())
            .collect()
    };
    let k1 = f0;
    let k2 = f(&stage(&[(A21, k1)]))?;
    let k3 = f(&stage(&[(A31, k1), (A32, &k2)]))?;
    let k4 = f(&stage(&[(A41, k1), (A42, &k2), (A43, &k3)]))?;
    let k5 = f(&stage(&[(A51, k1), (A52, &k2), (A53, &k3), (A54, &k4)]))?;
    let k6 = f(&stage(&[
        (A61, k1),
        (A62, &k2),
        (A63, &k3),
        (A64, &k4),
        (A65, &k5),
    ]))?;
    let y_new = stage(&[(A71, k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)]);
    let k7 = f(&y_new)?;
    let error = (0..n)
        .map(|i| h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]))
        .collect();
    Ok(Dopri5Step {
        y: y_new,
        f_new: k7,
        error,
    })
}

/// Weighted RMS norm used for step acceptance.
pub fn error_norm(err: &[f64], y_old: &[f64], y_new: &[f64], abs_tol: f64, rel_tol: f64) -> f64 {
    let n = err.len().max(1) as f64;
    let sum: f64 = err
        .iter()
        .zip(y_old.iter().zip(y_new))
        .map(|(e, (a, b))| {
            let scale = abs_tol + rel_tol * a.abs().max(b.abs());
            (e / scale).powi(2)
        })
        .sum();
    (sum / n).sqrt()
}
