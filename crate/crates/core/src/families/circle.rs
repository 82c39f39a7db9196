//! Complex circles in anti-de Sitter space `H^3_1` as explicit maps of the
//! Minkowski plane.

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::group::{embed_ads, AdSPoint, GroupElement, LieVector};

pub const TOL_CONSTRAINT: f64 = 1e-10;

/// Parameters `(a, b)` with `a^2 - b^2 = -1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexCircle {
    pub a: f64,
    pub b: f64,
    pub minimal: bool,
}

impl ComplexCircle {
    /// Non-minimal complex circle. `ab = 0` is allowed by the constructor but
    /// lies outside the family proper (the surface is then minimal).
    pub fn new(a: f64, b: f64) -> Result<Self> {
        let r = a * a - b * b + 1.0;
        if !(r.abs() <= TOL_CONSTRAINT) {
            return Err(GeomError::Constraint(format!("a^2 - b^2 = {} instead of -1", r - 1.0)));
        }
        Ok(Self { a, b, minimal: false })
    }

    /// Minimal variant with `b = cosh t`, `a = sinh t`.
    pub fn minimal(t: f64) -> Self {
        Self { a: t.sinh(), b: t.cosh(), minimal: true }
    }

    /// Parameter `t` of the minimal variant.
    pub fn t(&self) -> f64 {
        self.a.asinh()
    }

    pub fn eval(&self, u: f64, v: f64) -> AdSPoint {
        let (a, b) = (self.a, self.b);
        let (su, cu) = u.sin_cos();
        let (sh, ch) = (v.sinh(), v.cosh());
        let s = if self.minimal { -1.0 } else { 1.0 };
        AdSPoint {
            x0: b * ch * cu - a * sh * su,
            x1: a * sh * cu + b * ch * su,
            x2: a * ch * cu + s * b * sh * su,
            x3: a * ch * su - s * b * sh * cu,
        }
    }

    /// `exp(u i) exp(v k') exp(t j')` embedded in AdS.
    pub fn exponential_form(t: f64, u: f64, v: f64) -> Result<AdSPoint> {
        let g = GroupElement::exp(&(LieVector::I * u))
            * GroupElement::exp(&(LieVector::K * v))
            * GroupElement::exp(&(LieVector::J * t));
        embed_ads(&g)
    }
}
