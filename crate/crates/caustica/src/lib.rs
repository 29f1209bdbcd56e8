//! Classification of singularities on parallel and focal surfaces of regular
//! parametrized surfaces, with the geometric invariants (limiting normal
//! curvature, singular curvature, Gaussian-curvature behavior) at the
//! resulting cuspidal edges.
//!
//! The computational substrate is truncated bivariate Taylor arithmetic
//! ([`jet`]); surfaces enter as parsed expression trees ([`expr`]) and every
//! derivative a curvature formula consumes is read off a jet coefficient.
//!
//! Start with the runnable programs in `examples/` — one per capability —
//! or the `caustica` binary for file-driven jobs.

pub mod config;
pub mod edge;
pub mod error;
pub mod expr;
pub mod focal;
pub mod geometry;
pub mod germ;
pub mod jet;
pub mod mesh;
pub mod parallel;
pub mod report;

pub use config::{Config, Tolerances};
pub use error::{Error, Result};
pub use expr::{parse_surface, SurfaceExpr};
pub use jet::{Jet, JetVec3, Point};
