//! Computational geometry of the special linear group SL(2,R) equipped with
//! the one-parameter family of left-invariant semi-Riemannian metrics
//!
//! ```text
//! g[nu] = (dx^2 + dy^2) / (4 y^2) + nu (dtheta + dx / (2y))^2
//! ```
//!
//! in Iwasawa coordinates `(x, y, theta)`. `nu > 0` gives the canonical
//! Riemannian (Sasakian) metric, `nu = -1` the biinvariant Lorentz metric of
//! constant curvature `-1`, i.e. anti-de Sitter 3-space.
//!
//! Every closed-form table in the crate is paired with an independent
//! numerical route (finite differences, ODE integration, intrinsic curvature
//! of the induced metric) so that claims can be certified rather than
//! assumed.
//!
//! Module map:
//!
//! * [`group`]: matrices, the Iwasawa chart, the Lie algebra and both scalar
//!   products, the adjoint action, orbit classification, the AdS embedding.
//! * [`metric`]: the metric family, orthonormal frame, connection and
//!   curvature tables, the canonical Sasaki structure; [`metric::oracle`]
//!   recomputes everything from the coordinate metric by finite differences.
//! * [`surface`]: immersed surfaces, jets, fundamental forms, unit normal,
//!   shape operator invariants, intrinsic Gauss curvature.
//! * [`families`]: Hopf cylinders, conoids, helicoidal motions, lightcone
//!   surfaces, complex circles and the profile ODE layer.
//! * [`gauss`]: tangential and normal Gauss maps and the curvature-component
//!   criteria for (vertical) harmonicity.
//! * [`suite`]: reproducible verification suites and report rendering.

// `!(x > 0.0)` style guards are used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod families;
pub mod fd;
pub mod gauss;
pub mod group;
pub mod metric;
pub mod ode;
pub mod suite;
pub mod surface;

pub use error::{GeomError, Result};
pub use group::{AdSPoint, ChartPoint, GroupElement, LieVector, MetricSign, OrbitClass};
pub use metric::{CoordinateVector, Frame, MetricParam, TangentVector};
pub use surface::{FundamentalForm, Immersion, ShapeData, SurfaceJet};

/// Frame components `(v1, v2, v3)` with respect to `(e1, e2, e3)`.
pub type Vec3 = nalgebra::Vector3<f64>;
/// 3x3 real matrix; used for coordinate metrics and frame operators.
pub type Mat3 = nalgebra::Matrix3<f64>;
