//! Surface families with closed-form data: Hopf cylinders over curves in
//! `H^2(1/2)`, conoids and helicoidal motions, lightcone surfaces with their
//! profile ODEs, and complex circles in `H^3_1`.

pub mod circle;
pub mod conoid;
pub mod curve;
pub mod hopf;
pub mod lightcone;

pub use circle::ComplexCircle;
pub use conoid::{helicoidal_motion, Conoid, Pitch};
pub use curve::{geodesic_curvature, CurveKind, HyperbolicCurve, PlaneJet};
pub use hopf::HopfCylinder;
pub use lightcone::{
    lightcone_mean_curvature, minimal_ode_residual, minimal_profile, riccati_residual, riccati_substitution,
    umbilic_ode_residual, umbilic_profile, LightconeSurface, ProfileFunction, ProfileKind,
};
