//! Conoids `N(x(u)) A(v) K(u)` and helicoidal motions.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::group::{ChartPoint, GroupElement};
use crate::surface::{CoordJet, Domain, Immersion};
use crate::Vec3;

/// Pitch `mu` of a helicoidal motion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pitch(pub f64);

/// `sigma^mu_t(g) = N(mu t) g K(t)`.
pub fn helicoidal_motion(mu: Pitch, t: f64, g: &GroupElement) -> GroupElement {
    GroupElement::nilpotent(mu.0 * t) * *g * GroupElement::rotation(t)
}

type ProfileFn = dyn Fn(f64) -> (f64, f64, f64) + Send + Sync;

/// `phi(u, v) = N(x(u)) A(v) K(u)`, chart point `(x(u), v, u)`, `v > 0`.
#[derive(Clone)]
pub struct Conoid {
    pub pitch: Option<Pitch>,
    pub offset: f64,
    domain: Domain,
    x: Arc<ProfileFn>,
}

impl fmt::Debug for Conoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Conoid")
            .field("pitch", &self.pitch)
            .field("offset", &self.offset)
            .field("domain", &self.domain)
            .finish()
    }
}

pub const DEFAULT_CONOID_DOMAIN: ((f64, f64), (f64, f64)) = ((-3.0, 3.0), (0.25, 4.0));

impl Conoid {
    /// General conoid from `u -> (x, x', x'')`.
    pub fn new(domain: Domain, x: impl Fn(f64) -> (f64, f64, f64) + Send + Sync + 'static) -> Result<Self> {
        if !(domain.v.0 > 0.0) {
            return Err(GeomError::NonPositiveY { y: domain.v.0 });
        }
        Ok(Self { pitch: None, offset: 0.0, domain, x: Arc::new(x) })
    }

    /// `x(u) = mu u + a`: the orbit surface of `sigma^mu`.
    pub fn helicoidal(mu: Pitch, a: f64) -> Result<Self> {
        let (u, v) = DEFAULT_CONOID_DOMAIN;
        Self::helicoidal_on(mu, a, Domain::new(u, v)?)
    }

    pub fn helicoidal_on(mu: Pitch, a: f64, domain: Domain) -> Result<Self> {
        let m = mu.0;
        let mut c = Self::new(domain, move |u| (m * u + a, m, 0.0))?;
        c.pitch = Some(mu);
        c.offset = a;
        Ok(c)
    }

    /// Largest matrix discrepancy between `sigma^mu_t(phi(u, v))` and
    /// `phi(u + t, v)` at the given sample, or `None` for non-helicoidal conoids.
    pub fn invariance_residual(&self, u: f64, v: f64, t: f64) -> Option<Result<f64>> {
        let mu = self.pitch?;
        Some((|| {
            let g = self.eval(u, v)?.to_group();
            let moved = helicoidal_motion(mu, t, &g);
            Ok(moved.max_abs_diff(&self.eval(u + t, v)?.to_group()))
        })())
    }
}

impl Immersion for Conoid {
    fn domain(&self) -> Domain {
        self.domain
    }

    fn eval(&self, u: f64, v: f64) -> Result<ChartPoint> {
        ChartPoint::new((self.x)(u).0, v, u)
    }

    fn coord_jet(&self, u: f64, v: f64) -> Option<Result<CoordJet>> {
        let (x, dx, ddx) = (self.x)(u);
        Some(ChartPoint::new(x, v, u).map(|point| CoordJet {
            point,
            pu: Vec3::new(dx, 0.0, 1.0),
            pv: Vec3::new(0.0, 1.0, 0.0),
            puu: Vec3::new(ddx, 0.0, 0.0),
            puv: Vec3::zeros(),
            pvv: Vec3::zeros(),
        }))
    }
}
