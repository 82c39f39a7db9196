//! Classical fixed-step Runge-Kutta integration; used only as an independent
//! check of closed-form profile solutions.

use nalgebra::SVector;

/// Fixed step of the profile oracle.
pub const RK4_STEP: f64 = 1e-3;

/// Integrates `s' = f(t, s)` from `t0` to `t1` with steps no larger than `h`
/// and returns the samples `(t_k, s_k)` including both endpoints.
pub fn rk4<const N: usize>(
    f: impl Fn(f64, &SVector<f64, N>) -> SVector<f64, N>,
    t0: f64,
    s0: SVector<f64, N>,
    t1: f64,
    h: f64,
) -> Vec<(f64, SVector<f64, N>)> {
    let steps = ((t1 - t0).abs() / h).ceil().max(1.0) as usize;
    let dt = (t1 - t0) / steps as f64;
    let mut out = Vec::with_capacity(steps + 1);
    let mut s = s0;
    out.push((t0, s));
    for k in 0..steps {
        let t = t0 + k as f64 * dt;
        let k1 = f(t, &s);
        let k2 = f(t + 0.5 * dt, &(s + k1 * (0.5 * dt)));
        let k3 = f(t + 0.5 * dt, &(s + k2 * (0.5 * dt)));
        let k4 = f(t + dt, &(s + k3 * dt));
        s += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
        out.push((t0 + (k + 1) as f64 * dt, s));
    }
    out
}

/// Second-order scalar equation `y'' = g(t, y, y')` as a first-order system.
pub fn rk4_second_order(
    g: impl Fn(f64, f64, f64) -> f64,
    t0: f64,
    y0: f64,
    dy0: f64,
    t1: f64,
    h: f64,
) -> Vec<(f64, f64, f64)> {
    rk4(
        |t, s: &SVector<f64, 2>| SVector::<f64, 2>::new(s[1], g(t, s[0], s[1])),
        t0,
        SVector::<f64, 2>::new(y0, dy0),
        t1,
        h,
    )
    .into_iter()
    .map(|(t, s)| (t, s[0], s[1]))
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator() {
        let path = rk4_second_order(|_, y, _| -y, 0.0, 1.0, 0.0, 3.0, RK4_STEP);
        let (t, y, dy) = *path.last().unwrap();
        assert_eq!(t, 3.0);
        assert!((y - 3f64.cos()).abs() < 1e-12);
        assert!((dy + 3f64.sin()).abs() < 1e-12);
    }

    #[test]
    fn integrates_backwards() {
        let path = rk4(|_, s: &SVector<f64, 1>| *s, 0.0, SVector::<f64, 1>::new(1.0), -1.0, 1e-2);
        assert!((path.last().unwrap().1[0] - (-1f64).exp()).abs() < 1e-9);
    }
}
