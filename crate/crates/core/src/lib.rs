//! Discrete curvature flows of circle and ball packing metrics on closed
//! triangulated surfaces and 3-manifolds.
//!
//! The central object is the (α,β)-flow
//! `ṙ_i = s_α r_i^β − K_i r_i^{β−α}` on a [`complex::Triangulation`], with
//! `K` the discrete Gauss curvature on surfaces and the Cooper–Rivin
//! curvature on 3-manifolds. Around it sit curvature evaluation, the
//! curvature Jacobian and α-Laplacian, an adaptive integrator, and a
//! spectral stability test for constant α-curvature metrics.
//!
//! ```
//! use abflow::complex::builtin_mesh;
//! use abflow::curvature::curvature;
//! use abflow::geometry::PackingMetric;
//!
//! let t = builtin_mesh("octa_surface").unwrap();
//! let r = PackingMetric::uniform(6, 1.0).unwrap();
//! let k = curvature(&t, &r, None).unwrap();
//! assert!((k[0] - 2.0 * std::f64::consts::PI / 3.0).abs() < 1e-12);
//! ```

pub mod cli;
pub mod complex;
pub mod curvature;
pub mod error;
pub mod fixtures;
pub mod flow;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod operators;

pub use error::{Error, Result};
