//! Central finite differences on the `(x, y, theta)` chart.
//!
//! Steps are `h = 1e-5 * max(1, |y|)`; along the `y` axis the step is clamped
//! so every stencil point keeps `y - offset > y / 2`.

use std::ops::{Add, Mul, Sub};

use crate::group::ChartPoint;

pub const BASE_STEP: f64 = 1e-5;

/// Values that finite differences can be taken of.
pub trait Linear: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {}
impl<T> Linear for T where T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T> {}

pub fn step_at(p: &ChartPoint) -> f64 {
    BASE_STEP * p.y.abs().max(1.0)
}

/// Step along `axis` honouring the `y` clamp for a stencil reaching `reach * h`.
pub fn axis_step(p: &ChartPoint, axis: usize, h: f64, reach: f64) -> f64 {
    if axis == 1 {
        h.min(0.49 * p.y / reach)
    } else {
        h
    }
}

pub fn shift(p: &ChartPoint, axis: usize, t: f64) -> ChartPoint {
    let mut q = *p;
    match axis {
        0 => q.x += t,
        1 => q.y += t,
        _ => q.theta += t,
    }
    q
}

/// Fourth-order central difference of `f` along chart axis `axis`.
pub fn partial<T: Linear>(f: impl Fn(&ChartPoint) -> T, p: &ChartPoint, axis: usize, h: f64) -> T {
    let h = axis_step(p, axis, h, 2.0);
    let f1 = f(&shift(p, axis, h));
    let fm1 = f(&shift(p, axis, -h));
    let f2 = f(&shift(p, axis, 2.0 * h));
    let fm2 = f(&shift(p, axis, -2.0 * h));
    ((f1 - fm1) * 8.0 - (f2 - fm2)) * (1.0 / (12.0 * h))
}

/// Derivative of `f` along the coordinate vector `dir` at `p`, assembled from
/// the three axis partials.
pub fn directional<T: Linear>(f: impl Fn(&ChartPoint) -> T, p: &ChartPoint, dir: [f64; 3], h: f64) -> T {
    let mut acc = partial(&f, p, 0, h) * dir[0];
    acc = acc + partial(&f, p, 1, h) * dir[1];
    acc + partial(&f, p, 2, h) * dir[2]
}

/// Fourth-order central first derivative of a function of one variable.
pub fn d1<T: Linear>(f: impl Fn(f64) -> T, t: f64, h: f64) -> T {
    ((f(t + h) - f(t - h)) * 8.0 - (f(t + 2.0 * h) - f(t - 2.0 * h))) * (1.0 / (12.0 * h))
}

/// Fourth-order central second derivative of a function of one variable.
pub fn d2<T: Linear>(f: impl Fn(f64) -> T, t: f64, h: f64) -> T {
    let c = f(t);
    ((f(t + h) + f(t - h)) * 16.0 - (f(t + 2.0 * h) + f(t - 2.0 * h)) - c * 30.0) * (1.0 / (12.0 * h * h))
}
