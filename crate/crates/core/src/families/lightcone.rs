//! Lightcone surfaces `N(v) A(y(u)) K(u)` and their profile ODEs.
//!
//! With `q = y'/2y` the partials are `phi_u = q e2 + e3` and
//! `phi_v = (e1 + e3) / 2y`. Minimality for `nu = 1` is `y'' = -2y`;
//! umbilicity for `nu = -1` is `y'' - y'^2 / 2y + 2y = 0`, which the
//! substitution `T = (log y)'` turns into the Riccati equation
//! `T' + T^2 / 2 + 2 = 0`.

use std::f64::consts::{FRAC_PI_2, SQRT_2};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::fd;
use crate::group::{ChartPoint, GroupElement};
use crate::metric::MetricParam;
use crate::surface::{CoordJet, Domain, Immersion};
use crate::Vec3;

/// Profiles are trimmed to where `y >= Y_MIN_RELATIVE * max y`.
pub const Y_MIN_RELATIVE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ProfileKind {
    /// `A cos(sqrt2 u) + B sin(sqrt2 u)`.
    Minimal {
        a: f64,
        b: f64,
    },
    /// `A cos^2(u + u0)`.
    Umbilic {
        a: f64,
        u0: f64,
    },
    /// `c0 exp(c1 u + c2 sin(c3 u + c4))`, positive everywhere.
    ExpSine {
        c: [f64; 5],
    },
    Custom(String),
}

impl fmt::Display for ProfileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileKind::Minimal { a, b } => write!(f, "minimal(A={a},B={b})"),
            ProfileKind::Umbilic { a, u0 } => write!(f, "umbilic(A={a},u0={u0})"),
            ProfileKind::ExpSine { c } => {
                write!(f, "exp_sine(c0={},c1={},c2={},c3={},c4={})", c[0], c[1], c[2], c[3], c[4])
            }
            ProfileKind::Custom(s) => write!(f, "{s}"),
        }
    }
}

type ProfileFn = dyn Fn(f64) -> (f64, f64, f64) + Send + Sync;

/// A positive function `y(u)` on an interval with access to `y'` and `y''`.
#[derive(Clone)]
pub struct ProfileFunction {
    pub kind: ProfileKind,
    pub domain: (f64, f64),
    f: Arc<ProfileFn>,
}

impl fmt::Debug for ProfileFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProfileFunction").field("kind", &self.kind).field("domain", &self.domain).finish()
    }
}

impl ProfileFunction {
    /// Closed-form profile `u -> (y, y', y'')`; positivity is checked on a
    /// sample of the interval.
    pub fn closed_form(
        name: impl Into<String>,
        domain: (f64, f64),
        f: impl Fn(f64) -> (f64, f64, f64) + Send + Sync + 'static,
    ) -> Result<Self> {
        Self::build(ProfileKind::Custom(name.into()), domain, Arc::new(f))
    }

    /// Profile known only by value; derivatives by central differences.
    pub fn numeric(
        name: impl Into<String>,
        domain: (f64, f64),
        y: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        let y = Arc::new(y);
        Self::build(
            ProfileKind::Custom(name.into()),
            domain,
            Arc::new(move |u| (y(u), fd::d1(|t| y(t), u, 1e-4), fd::d2(|t| y(t), u, 1e-3))),
        )
    }

    pub fn exp_sine(c: [f64; 5], domain: (f64, f64)) -> Result<Self> {
        if !(c[0] > 0.0) {
            return Err(GeomError::NonPositiveY { y: c[0] });
        }
        Self::build(
            ProfileKind::ExpSine { c },
            domain,
            Arc::new(move |u| {
                let (s, co) = (c[3] * u + c[4]).sin_cos();
                let l1 = c[1] + c[2] * c[3] * co;
                let l2 = -c[2] * c[3] * c[3] * s;
                let y = c[0] * (c[1] * u + c[2] * s).exp();
                (y, y * l1, y * (l1 * l1 + l2))
            }),
        )
    }

    fn build(kind: ProfileKind, domain: (f64, f64), f: Arc<ProfileFn>) -> Result<Self> {
        if !(domain.1 > domain.0) {
            return Err(GeomError::EmptyInterval);
        }
        for k in 0..=128 {
            let y = f(domain.0 + (domain.1 - domain.0) * k as f64 / 128.0).0;
            if !(y > 0.0) {
                return Err(GeomError::NonPositiveY { y });
            }
        }
        Ok(Self { kind, domain, f })
    }

    /// `(y, y', y'')` at `u`.
    pub fn eval(&self, u: f64) -> (f64, f64, f64) {
        (self.f)(u)
    }

    pub fn with_domain(&self, domain: (f64, f64)) -> Result<Self> {
        Self::build(self.kind.clone(), domain, self.f.clone())
    }

    /// Sub-interval `[a + s (b - a), b - s (b - a)]`.
    pub fn shrunk(&self, s: f64) -> Result<Self> {
        let (a, b) = self.domain;
        self.with_domain((a + s * (b - a), b - s * (b - a)))
    }
}

/// `A cos(sqrt2 u) + B sin(sqrt2 u) = R cos(sqrt2 u - delta)` on the interval
/// of positivity around `u = delta / sqrt2`, trimmed at `y = 1e-6 R`.
pub fn minimal_profile(a: f64, b: f64) -> Result<ProfileFunction> {
    let r = a.hypot(b);
    if !(r > 0.0) {
        return Err(GeomError::EmptyInterval);
    }
    let delta = b.atan2(a);
    let w = Y_MIN_RELATIVE.acos();
    let domain = ((delta - w) / SQRT_2, (delta + w) / SQRT_2);
    ProfileFunction::build(
        ProfileKind::Minimal { a, b },
        domain,
        Arc::new(move |u| {
            let (s, c) = (SQRT_2 * u).sin_cos();
            let y = a * c + b * s;
            (y, SQRT_2 * (b * c - a * s), -2.0 * y)
        }),
    )
}

/// `A cos^2(u + u0)` on `|u + u0| < pi/2`, trimmed at `y = 1e-6 A`.
pub fn umbilic_profile(a: f64, u0: f64) -> Result<ProfileFunction> {
    if !(a > 0.0) {
        return Err(GeomError::InvalidArgument(format!("umbilic profile amplitude {a} must be positive")));
    }
    let w = Y_MIN_RELATIVE.sqrt().acos();
    debug_assert!(w < FRAC_PI_2);
    ProfileFunction::build(
        ProfileKind::Umbilic { a, u0 },
        (-u0 - w, -u0 + w),
        Arc::new(move |u| {
            let c = (u + u0).cos();
            let (s2, c2) = (2.0 * (u + u0)).sin_cos();
            (a * c * c, -a * s2, -2.0 * a * c2)
        }),
    )
}

/// `y'' - y'^2 / 2y + 2y`, the umbilicity equation for `nu = -1`.
pub fn umbilic_ode_residual(y: &ProfileFunction, u: f64) -> Result<f64> {
    let (y0, y1, y2) = checked(y, u)?;
    Ok(y2 - y1 * y1 / (2.0 * y0) + 2.0 * y0)
}

/// `y'' + 2y`, the minimality equation for `nu = 1`.
pub fn minimal_ode_residual(y: &ProfileFunction, u: f64) -> Result<f64> {
    let (y0, _, y2) = checked(y, u)?;
    Ok(y2 + 2.0 * y0)
}

/// `T(u) = y'(u) / y(u)`.
pub fn riccati_substitution(y: &ProfileFunction, u: f64) -> Result<f64> {
    let (y0, y1, _) = checked(y, u)?;
    Ok(y1 / y0)
}

/// `T' + T^2 / 2 + 2` with `T'` by central differences of [`riccati_substitution`].
pub fn riccati_residual(y: &ProfileFunction, u: f64) -> Result<f64> {
    let t = riccati_substitution(y, u)?;
    let dt = fd::d1(|s| riccati_substitution(y, s).unwrap_or(f64::NAN), u, 1e-4);
    let r = dt + 0.5 * t * t + 2.0;
    if !r.is_finite() {
        return Err(GeomError::NonFinite("Riccati residual"));
    }
    Ok(r)
}

fn checked(y: &ProfileFunction, u: f64) -> Result<(f64, f64, f64)> {
    let v = y.eval(u);
    if !(v.0 > 0.0) {
        return Err(GeomError::NonPositiveY { y: v.0 });
    }
    Ok(v)
}

/// Closed-form mean curvature
///
/// ```text
/// H = ((1 + nu) y'' y + 4 y^2) / (4 alpha^3 y^2),   alpha = sqrt(1 + (1 + nu)(y'/2y)^2)
/// ```
pub fn lightcone_mean_curvature(y: f64, dy: f64, ddy: f64, nu: MetricParam) -> Result<f64> {
    if !(y > 0.0) {
        return Err(GeomError::NonPositiveY { y });
    }
    let n1 = 1.0 + nu.value();
    let q = dy / (2.0 * y);
    let alpha = (1.0 + n1 * q * q).sqrt();
    Ok((n1 * ddy * y + 4.0 * y * y) / (4.0 * alpha.powi(3) * y * y))
}

/// `phi(u, v) = N(v) A(y(u)) K(u)`, chart point `(v, y(u), u)`.
#[derive(Debug, Clone)]
pub struct LightconeSurface {
    pub profile: ProfileFunction,
    pub v_range: (f64, f64),
}

impl LightconeSurface {
    pub fn new(profile: ProfileFunction) -> Self {
        Self { profile, v_range: (-1.0, 1.0) }
    }

    /// Matrix discrepancy between `N(t) phi(u, v)` and `phi(u, v + t)`.
    pub fn invariance_residual(&self, u: f64, v: f64, t: f64) -> Result<f64> {
        let g = GroupElement::nilpotent(t) * self.eval(u, v)?.to_group();
        Ok(g.max_abs_diff(&self.eval(u, v + t)?.to_group()))
    }
}

impl Immersion for LightconeSurface {
    fn domain(&self) -> Domain {
        Domain { u: self.profile.domain, v: self.v_range, periodic_u: false, periodic_v: false }
    }

    fn eval(&self, u: f64, v: f64) -> Result<ChartPoint> {
        ChartPoint::new(v, self.profile.eval(u).0, u)
    }

    fn coord_jet(&self, u: f64, v: f64) -> Option<Result<CoordJet>> {
        let (y, dy, ddy) = self.profile.eval(u);
        Some(ChartPoint::new(v, y, u).map(|point| CoordJet {
            point,
            pu: Vec3::new(0.0, dy, 1.0),
            pv: Vec3::new(1.0, 0.0, 0.0),
            puu: Vec3::new(0.0, ddy, 0.0),
            puv: Vec3::zeros(),
            pvv: Vec3::zeros(),
        }))
    }
}
