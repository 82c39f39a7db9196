//! Curves in the hyperbolic plane `H^2(1/2)`: the upper half plane with
//! metric `(dx^2 + dy^2) / (4 y^2)`, of constant curvature `-4`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use nalgebra::Complex;

use crate::error::{GeomError, Result};

/// Tolerance of the unit-speed invariant.
pub const TOL_UNIT_SPEED: f64 = 1e-8;
/// Absolute tolerance of the adaptive Simpson arclength quadrature.
pub const ARCLENGTH_TOL: f64 = 1e-12;

/// Position and first two derivatives of a plane curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneJet {
    pub x: f64,
    pub y: f64,
    pub dx: f64,
    pub dy: f64,
    pub ddx: f64,
    pub ddy: f64,
}

impl PlaneJet {
    /// Speed in `H^2(1/2)`.
    pub fn speed(&self) -> f64 {
        self.dx.hypot(self.dy) / (2.0 * self.y)
    }
}

type JetFn = dyn Fn(f64) -> PlaneJet + Send + Sync;

#[derive(Debug, Clone, PartialEq)]
pub enum CurveKind {
    /// `(0, e^{2v})`.
    Geodesic,
    /// `(2 y0 v, y0)`.
    Horocycle {
        y0: f64,
    },
    /// Euclidean ray from the origin at angle `alpha`; an equidistant curve.
    Ray {
        alpha: f64,
    },
    /// Geodesic circle of radius `rho` (in the curvature `-1` normalisation)
    /// about `i`.
    Circle {
        rho: f64,
    },
    Custom(String),
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveKind::Geodesic => write!(f, "geodesic"),
            CurveKind::Horocycle { y0 } => write!(f, "horocycle(y0={y0})"),
            CurveKind::Ray { alpha } => write!(f, "ray(alpha={alpha})"),
            CurveKind::Circle { rho } => write!(f, "circle(rho={rho})"),
            CurveKind::Custom(s) => write!(f, "{s}"),
        }
    }
}

/// A regular curve `v -> (x(v), y(v))` with `y > 0`.
#[derive(Clone)]
pub struct HyperbolicCurve {
    pub kind: CurveKind,
    pub domain: (f64, f64),
    pub periodic: bool,
    unit_speed: bool,
    reversed: bool,
    jet: Arc<JetFn>,
}

impl fmt::Debug for HyperbolicCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HyperbolicCurve")
            .field("kind", &self.kind)
            .field("domain", &self.domain)
            .field("unit_speed", &self.unit_speed)
            .field("reversed", &self.reversed)
            .finish()
    }
}

impl HyperbolicCurve {
    pub fn custom(
        name: impl Into<String>,
        domain: (f64, f64),
        unit_speed: bool,
        jet: impl Fn(f64) -> PlaneJet + Send + Sync + 'static,
    ) -> Result<Self> {
        let c = Self {
            kind: CurveKind::Custom(name.into()),
            domain,
            periodic: false,
            unit_speed,
            reversed: false,
            jet: Arc::new(jet),
        };
        c.validate()?;
        Ok(c)
    }

    pub fn geodesic() -> Self {
        Self::builtin(CurveKind::Geodesic, (-1.0, 1.0), false, |v| {
            let e = (2.0 * v).exp();
            PlaneJet { x: 0.0, y: e, dx: 0.0, dy: 2.0 * e, ddx: 0.0, ddy: 4.0 * e }
        })
    }

    pub fn horocycle(y0: f64) -> Result<Self> {
        if !(y0 > 0.0) {
            return Err(GeomError::NonPositiveY { y: y0 });
        }
        Ok(Self::builtin(CurveKind::Horocycle { y0 }, (-1.0, 1.0), false, move |v| PlaneJet {
            x: 2.0 * y0 * v,
            y: y0,
            dx: 2.0 * y0,
            dy: 0.0,
            ddx: 0.0,
            ddy: 0.0,
        }))
    }

    /// `r(v) (cos alpha, sin alpha)` with `r = e^{2 v sin alpha}`, `0 < alpha < pi`.
    pub fn ray(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < PI) {
            return Err(GeomError::InvalidArgument(format!("ray angle {alpha} outside (0, pi)")));
        }
        let (s, c) = alpha.sin_cos();
        Ok(Self::builtin(CurveKind::Ray { alpha }, (-1.0, 1.0), false, move |v| {
            let r = (2.0 * s * v).exp();
            let (dr, ddr) = (2.0 * s * r, 4.0 * s * s * r);
            PlaneJet { x: r * c, y: r * s, dx: dr * c, dy: dr * s, ddx: ddr * c, ddy: ddr * s }
        }))
    }

    /// Circle through `i e^rho` rotated about `i` by the elliptic flow
    /// `z' = (1 + z^2) / 2`, run at unit speed. One period is `pi sinh(rho)`.
    pub fn circle(rho: f64) -> Result<Self> {
        if !(rho > 0.0 && rho.is_finite()) {
            return Err(GeomError::InvalidArgument(format!("circle radius {rho} must be positive")));
        }
        let k = 2.0 / rho.sinh();
        let z0 = Complex::new(0.0, rho.exp());
        let mut c = Self::builtin(CurveKind::Circle { rho }, (0.0, PI * rho.sinh()), false, move |v| {
            let (s, co) = (0.5 * k * v).sin_cos();
            let z = (z0 * co + s) / (-z0 * s + co);
            let dz = (z * z + 1.0) * (0.5 * k);
            let ddz = z * dz * k;
            PlaneJet { x: z.re, y: z.im, dx: dz.re, dy: dz.im, ddx: ddz.re, ddy: ddz.im }
        });
        c.periodic = true;
        Ok(c)
    }

    /// Unit-speed curve of constant geodesic curvature `kappa`:
    /// geodesic, equidistant ray, horocycle or circle by `|kappa|` against 2.
    pub fn with_curvature(kappa: f64) -> Result<Self> {
        if !kappa.is_finite() {
            return Err(GeomError::NonFinite("curvature"));
        }
        let a = kappa.abs();
        let c = if a == 0.0 {
            Self::geodesic()
        } else if (a - 2.0).abs() < 1e-12 {
            Self::horocycle(1.0)?
        } else if a < 2.0 {
            return Self::ray((0.5 * kappa).acos());
        } else {
            Self::circle((2.0 / a).atanh())?
        };
        let k0 = geodesic_curvature(&c, 0.5 * (c.domain.0 + c.domain.1))?;
        Ok(if k0 * kappa < 0.0 { c.reversed() } else { c })
    }

    fn builtin(
        kind: CurveKind,
        domain: (f64, f64),
        periodic: bool,
        jet: impl Fn(f64) -> PlaneJet + Send + Sync + 'static,
    ) -> Self {
        Self { kind, domain, periodic, unit_speed: true, reversed: false, jet: Arc::new(jet) }
    }

    fn validate(&self) -> Result<()> {
        let (a, b) = self.domain;
        if !(b > a) {
            return Err(GeomError::InvalidArgument(format!("empty curve domain {:?}", self.domain)));
        }
        for k in 0..=64 {
            let j = self.jet(a + (b - a) * k as f64 / 64.0);
            if !(j.y > 0.0) {
                return Err(GeomError::NonPositiveY { y: j.y });
            }
        }
        Ok(())
    }

    pub fn jet(&self, v: f64) -> PlaneJet {
        if self.reversed {
            let j = (self.jet)(self.domain.0 + self.domain.1 - v);
            PlaneJet { dx: -j.dx, dy: -j.dy, ..j }
        } else {
            (self.jet)(v)
        }
    }

    pub fn is_unit_speed(&self) -> bool {
        self.unit_speed
    }

    /// Same trace with the opposite orientation on the same domain.
    pub fn reversed(&self) -> Self {
        Self { reversed: !self.reversed, ..self.clone() }
    }

    pub fn with_domain(&self, domain: (f64, f64)) -> Result<Self> {
        let c = Self { domain, periodic: false, ..self.clone() };
        c.validate()?;
        Ok(c)
    }

    /// Largest deviation of the speed from 1 over `n + 1` equispaced samples.
    pub fn unit_speed_defect(&self, n: usize) -> f64 {
        let (a, b) = self.domain;
        (0..=n).map(|k| (self.jet(a + (b - a) * k as f64 / n as f64).speed() - 1.0).abs()).fold(0.0, f64::max)
    }

    /// Arclength reparametrisation, `s` starting at 0.
    pub fn to_unit_speed(&self) -> Result<Self> {
        if self.unit_speed {
            return Ok(self.clone());
        }
        let arc = Arclength::new(self.clone())?;
        let total = arc.total();
        let label = format!("arclength({})", self.kind);
        let periodic = self.periodic;
        let mut c = Self::custom(label, (0.0, total), true, move |s| arc.jet(s))?;
        c.periodic = periodic;
        Ok(c)
    }
}

/// Signed geodesic curvature with respect to the left normal, so that
/// horocycles `y = const` traversed with `x` increasing have `kappa = 2`:
///
/// ```text
/// kappa = x'/y + (x' y'' - y' x'') / (4 y^2)
/// ```
pub fn geodesic_curvature(c: &HyperbolicCurve, v: f64) -> Result<f64> {
    let j = c.jet(v);
    let speed = j.speed();
    if (speed - 1.0).abs() > TOL_UNIT_SPEED {
        return Err(GeomError::NotUnitSpeed { speed });
    }
    Ok(j.dx / j.y + (j.dx * j.ddy - j.dy * j.ddx) / (4.0 * j.y * j.y))
}

/// Adaptive Simpson quadrature of `f` on `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn step(
        f: &impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 48)
}

/// Arclength table of a regular curve with Newton inversion. Derivatives of
/// the reparametrised curve come from the chain rule with `t' = 1 / sigma(t)`,
/// so the result is unit speed to rounding regardless of the inversion error.
struct Arclength {
    curve: HyperbolicCurve,
    nodes: Vec<(f64, f64)>,
}

const ARC_NODES: usize = 256;

impl Arclength {
    fn new(curve: HyperbolicCurve) -> Result<Self> {
        let (a, b) = curve.domain;
        let sigma = |t: f64| curve.jet(t).speed();
        let mut nodes = Vec::with_capacity(ARC_NODES + 1);
        let mut s = 0.0;
        nodes.push((a, 0.0));
        for k in 0..ARC_NODES {
            let t0 = a + (b - a) * k as f64 / ARC_NODES as f64;
            let t1 = a + (b - a) * (k + 1) as f64 / ARC_NODES as f64;
            s += adaptive_simpson(&sigma, t0, t1, ARCLENGTH_TOL / ARC_NODES as f64);
            nodes.push((t1, s));
        }
        if !nodes.windows(2).all(|w| w[1].1 > w[0].1) || !s.is_finite() {
            return Err(GeomError::InvalidArgument("curve is not regular".into()));
        }
        Ok(Self { curve, nodes })
    }

    fn total(&self) -> f64 {
        self.nodes.last().map(|n| n.1).unwrap_or(0.0)
    }

    fn param(&self, s: f64) -> f64 {
        let k = self.nodes.partition_point(|n| n.1 <= s).clamp(1, self.nodes.len() - 1) - 1;
        let (t0, s0) = self.nodes[k];
        let (t1, s1) = self.nodes[k + 1];
        let sigma = |t: f64| self.curve.jet(t).speed();
        let mut t = t0 + (t1 - t0) * (s - s0) / (s1 - s0);
        for _ in 0..8 {
            let err = s0 + adaptive_simpson(&sigma, t0, t, ARCLENGTH_TOL / ARC_NODES as f64) - s;
            let dt = err / sigma(t);
            t -= dt;
            if dt.abs() < 1e-15 * (1.0 + t.abs()) {
                break;
            }
        }
        t
    }

    fn jet(&self, s: f64) -> PlaneJet {
        let t = self.param(s);
        let j = self.curve.jet(t);
        let n = j.dx.hypot(j.dy);
        let sigma = n / (2.0 * j.y);
        let dsigma = (j.dx * j.ddx + j.dy * j.ddy) / (2.0 * j.y * n) - n * j.dy / (2.0 * j.y * j.y);
        let tp = 1.0 / sigma;
        let tpp = -dsigma / sigma.powi(3);
        PlaneJet {
            x: j.x,
            y: j.y,
            dx: j.dx * tp,
            dy: j.dy * tp,
            ddx: j.ddx * tp * tp + j.dx * tpp,
            ddy: j.ddy * tp * tp + j.dy * tpp,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fd;

    fn samples(c: &HyperbolicCurve) -> impl Iterator<Item = f64> + '_ {
        let (a, b) = c.domain;
        (1..20).map(move |k| a + (b - a) * k as f64 / 20.0)
    }

    #[test]
    fn builtin_curves_are_unit_speed() {
        for c in [
            HyperbolicCurve::geodesic(),
            HyperbolicCurve::horocycle(0.7).unwrap(),
            HyperbolicCurve::ray(1.1).unwrap(),
            HyperbolicCurve::circle(0.8).unwrap(),
        ] {
            assert!(c.unit_speed_defect(200) < 1e-12, "{}", c.kind);
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        for c in [HyperbolicCurve::ray(2.0).unwrap(), HyperbolicCurve::circle(1.3).unwrap()] {
            for v in samples(&c) {
                let j = c.jet(v);
                let dx = fd::d1(|t| c.jet(t).x, v, 1e-4);
                let ddy = fd::d2(|t| c.jet(t).y, v, 1e-3);
                assert!((j.dx - dx).abs() < 1e-8);
                assert!((j.ddy - ddy).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn curvature_examples() {
        let g = HyperbolicCurve::geodesic();
        assert!(geodesic_curvature(&g, 0.3).unwrap().abs() < 1e-15);
        let h = HyperbolicCurve::horocycle(2.5).unwrap();
        assert!((geodesic_curvature(&h, 0.1).unwrap() - 2.0).abs() < 1e-15);
        let h = h.reversed();
        assert!((geodesic_curvature(&h, 0.1).unwrap() + 2.0).abs() < 1e-15);
    }

    #[test]
    fn circle_curvature_is_constant() {
        let rho: f64 = 0.9;
        let c = HyperbolicCurve::circle(rho).unwrap();
        for v in samples(&c) {
            assert!((geodesic_curvature(&c, v).unwrap() - 2.0 / rho.tanh()).abs() < 1e-8);
        }
    }

    #[test]
    fn curvature_oracle_by_turning_of_the_tangent() {
        // kappa ds = d(angle of tangent in the orthonormal frame (2y dx, 2y dy))
        // plus the frame's own rotation, which is dx / y along the curve.
        let c = HyperbolicCurve::circle(0.6).unwrap();
        for v in samples(&c) {
            let angle = |t: f64| {
                let j = c.jet(t);
                j.dy.atan2(j.dx)
            };
            let j = c.jet(v);
            let oracle = fd::d1(angle, v, 1e-4) + j.dx / j.y;
            assert!((geodesic_curvature(&c, v).unwrap() - oracle).abs() < 1e-8);
        }
    }

    #[test]
    fn constant_curvature_constructor() {
        for kappa in [-3.0, -2.0, -1.0, 0.0, 0.5, 1.0, 2.0, 3.0, 7.5] {
            let c = HyperbolicCurve::with_curvature(kappa).unwrap();
            for v in samples(&c) {
                assert!((geodesic_curvature(&c, v).unwrap() - kappa).abs() < 1e-9, "kappa {kappa}");
            }
        }
    }

    #[test]
    fn non_unit_speed_rejected_and_repaired() {
        let c = HyperbolicCurve::custom("parabola", (-1.0, 1.0), false, |t| PlaneJet {
            x: t,
            y: 1.0 + t * t,
            dx: 1.0,
            dy: 2.0 * t,
            ddx: 0.0,
            ddy: 2.0,
        })
        .unwrap();
        assert!(matches!(geodesic_curvature(&c, 0.2), Err(GeomError::NotUnitSpeed { .. })));
        let u = c.to_unit_speed().unwrap();
        assert!(u.is_unit_speed());
        assert!(u.unit_speed_defect(100) < 1e-12);
        let (a, b) = u.domain;
        let s = a + 0.37 * (b - a);
        let j = u.jet(s);
        assert!((j.x * j.x + 1.0 - j.y).abs() < 1e-12);
        let dx = fd::d1(|t| u.jet(t).x, s, 1e-4);
        assert!((dx - j.dx).abs() < 1e-8);
    }

    #[test]
    fn simpson_is_accurate() {
        let v = adaptive_simpson(&|t: f64| t.exp(), 0.0, 1.0, 1e-12);
        assert!((v - (1f64.exp() - 1.0)).abs() < 1e-12);
    }
}
