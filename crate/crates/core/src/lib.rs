//! Analysis toolkit for difference inclusions `x_{k+1} ∈ H(x_k)` driven by
//! polyhedral convex processes: cone algebra with exact double-description
//! conversion, dual processes, feasible/reachable sets, degree-2 homogeneous
//! candidate functions with convex conjugation, and Lyapunov verification
//! with duality pipelines.
//!
//! The math core is generic over the scalar type (any [`scalar::Scalar`],
//! typically `f64`); the aliases below fix the default precision used by the
//! CLI and the file formats.

pub mod cli;
pub mod config;
pub mod functions;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod lyapunov;
pub mod numerics;
pub mod oracle;
pub mod process;
pub mod report;
pub mod sampling;
pub mod scalar;

/// Default-precision polyhedral cone.
pub type Cone = geometry::PolyCone<f64>;
/// Default-precision affine-inequality set.
pub type Poly = geometry::Polyhedron<f64>;
/// Default-precision convex process.
pub type Candidate = functions::ConeFunction<f64>;
pub type Process = process::ConvexProcess<f64>;
/// Default-precision candidate function.
/// Default-precision solver configuration.
pub type Config = config::NumericsConfig<f64>;
