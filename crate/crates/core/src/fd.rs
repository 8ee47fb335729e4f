//! Uniform grids and finite-difference stencils used by the residual oracles.

use crate::error::{Error, Result};

/// Uniform grid over `[a, b]` with spacing as close to `dt` as possible while
/// hitting both endpoints exactly: `round((b-a)/dt) + 1` points.
pub fn uniform_grid(a: f64, b: f64, dt: f64) -> Result<Vec<f64>> {
    if !(b > a) || !(dt > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!(
            "invalid grid request: [{a}, {b}] with spacing {dt}"
        )));
    }
    let steps = ((b - a) / dt).round().max(1.0) as usize;
    let h = (b - a) / steps as f64;
    let mut ts: Vec<f64> = (0..=steps).map(|i| a + h * i as f64).collect();
    *ts.last_mut().unwrap() = b;
    Ok(ts)
}

/// Spacing of a uniform grid; errors if the grid is not uniform to 1 part in 1e6.
pub fn grid_spacing(ts: &[f64]) -> Result<f64> {
    if ts.len() < 2 {
        return Err(Error::Domain("grid needs at least 2 points".into()));
    }
    let h = ts[1] - ts[0];
    if !(h > 0.0) {
        return Err(Error::Domain("grid must be strictly increasing".into()));
    }
    for w in ts.windows(2) {
        let hi = w[1] - w[0];
        if (hi - h).abs() > 1e-6 * h.abs().max(1e-300) {
            return Err(Error::Domain("grid is not uniform".into()));
        }
    }
    Ok(h)
}

/// First derivative on a uniform grid, O(h^4): 5-point central stencils in the
/// interior, one-sided 5-point stencils at the edges.
pub fn derivative_grid(values: &[f64], h: f64) -> Result<Vec<f64>> {
    let n = values.len();
    if n < 5 {
        return Err(Error::Domain("derivative needs at least 5 points".into()));
    }
    let v = values;
    let mut out = vec![0.0; n];
    out[0] = (-25.0 * v[0] + 48.0 * v[1] - 36.0 * v[2] + 16.0 * v[3] - 3.0 * v[4]) / (12.0 * h);
    out[1] = (-3.0 * v[0] - 10.0 * v[1] + 18.0 * v[2] - 6.0 * v[3] + v[4]) / (12.0 * h);
    for i in 2..n - 2 {
        out[i] = (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) / (12.0 * h);
    }
    out[n - 2] =
        (3.0 * v[n - 1] + 10.0 * v[n - 2] - 18.0 * v[n - 3] + 6.0 * v[n - 4] - v[n - 5])
            / (12.0 * h);
    out[n - 1] = (25.0 * v[n - 1] - 48.0 * v[n - 2] + 36.0 * v[n - 3] - 16.0 * v[n - 4]
        + 3.0 * v[n - 5])
        / (12.0 * h);
    Ok(out)
}

/// Second derivative on a uniform grid, O(h^4): 5-point central interior,
/// 6-point one-sided edges.
pub fn second_derivative_grid(values: &[f64], h: f64) -> Result<Vec<f64>> {
    let n = values.len();
    if n < 6 {
        return Err(Error::Domain(
            "second derivative needs at least 6 points".into(),
        ));
    }
    let v = values;
    let h2 = h * h;
    let mut out = vec![0.0; n];
    out[0] = (45.0 * v[0] - 154.0 * v[1] + 214.0 * v[2] - 156.0 * v[3] + 61.0 * v[4]
        - 10.0 * v[5])
        / (12.0 * h2);
    out[1] = (10.0 * v[0] - 15.0 * v[1] - 4.0 * v[2] + 14.0 * v[3] - 6.0 * v[4] + v[5])
        / (12.0 * h2);
    for i in 2..n - 2 {
        out[i] = second_derivative_at(v, i, h);
    }
    out[n - 2] = (10.0 * v[n - 1] - 15.0 * v[n - 2] - 4.0 * v[n - 3] + 14.0 * v[n - 4]
        - 6.0 * v[n - 5]
        + v[n - 6])
        / (12.0 * h2);
    out[n - 1] = (45.0 * v[n - 1] - 154.0 * v[n - 2] + 214.0 * v[n - 3] - 156.0 * v[n - 4]
        + 61.0 * v[n - 5]
        - 10.0 * v[n - 6])
        / (12.0 * h2);
    Ok(out)
}

/// 5-point central second derivative at interior index `i` (needs i±2).
pub fn second_derivative_at(v: &[f64], i: usize, h: f64) -> f64 {
    (-v[i - 2] + 16.0 * v[i - 1] - 30.0 * v[i] + 16.0 * v[i + 1] - v[i + 2]) / (12.0 * h * h)
}

/// 5-point central first derivative at interior index `i` (needs i±2).
pub fn derivative_at(v: &[f64], i: usize, h: f64) -> f64 {
    (v[i - 2] - 8.0 * v[i - 1] + 8.0 * v[i + 1] - v[i + 2]) / (12.0 * h)
}

/// 7-point central third derivative at interior index `i` (needs i±3), O(h^4).
pub fn third_derivative_at(v: &[f64], i: usize, h: f64) -> f64 {
    (v[i - 3] - 8.0 * v[i - 2] + 13.0 * v[i - 1] - 13.0 * v[i + 1] + 8.0 * v[i + 2] - v[i + 3])
        / (8.0 * h * h * h)
}

/// Relative difference of two doubles in units in the last place.
pub fn ulp_diff(a: f64, b: f64) -> u64 {
    if a == b {
        return 0;
    }
    if !a.is_finite() || !b.is_finite() || a.signum() != b.signum() {
        return u64::MAX;
    }
    let ia = a.abs().to_bits();
    let ib = b.abs().to_bits();
    ia.abs_diff(ib)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(t: f64) -> f64 {
        t * t * t * t + 2.0 * t * t * t - t + 0.5
    }
    fn poly_d1(t: f64) -> f64 {
        4.0 * t * t * t + 6.0 * t * t - 1.0
    }
    fn poly_d2(t: f64) -> f64 {
        12.0 * t * t + 12.0 * t
    }

    // The 5/6-point stencils are exact for quartics, so any coefficient typo
    // shows up as an O(1) failure here.
    #[test]
    fn stencils_exact_on_quartic() {
        let ts = uniform_grid(-1.0, 1.0, 0.1).unwrap();
        let vs: Vec<f64> = ts.iter().map(|&t| poly(t)).collect();
        let h = grid_spacing(&ts).unwrap();
        let d1 = derivative_grid(&vs, h).unwrap();
        let d2 = second_derivative_grid(&vs, h).unwrap();
        for (i, &t) in ts.iter().enumerate() {
            assert!((d1[i] - poly_d1(t)).abs() < 1e-10, "d1 at {t}: {}", d1[i]);
            assert!((d2[i] - poly_d2(t)).abs() < 1e-9, "d2 at {t}: {}", d2[i]);
        }
    }

    #[test]
    fn third_derivative_exact_on_cubic_and_quintic_zero() {
        let ts = uniform_grid(-1.0, 1.0, 0.05).unwrap();
        let h = grid_spacing(&ts).unwrap();
        let cubic: Vec<f64> = ts.iter().map(|&t| t * t * t).collect();
        for i in 3..ts.len() - 3 {
            assert!((third_derivative_at(&cubic, i, h) - 6.0).abs() < 1e-8);
        }
        // sin has d3 = -cos; check O(h^4) accuracy
        let s: Vec<f64> = ts.iter().map(|&t| t.sin()).collect();
        for i in 3..ts.len() - 3 {
            let exact = -ts[i].cos();
            assert!((third_derivative_at(&s, i, h) - exact).abs() < 1e-5 * h.powi(2));
        }
    }

    #[test]
    fn grid_hits_endpoints() {
        let ts = uniform_grid(0.0, 2.0 * std::f64::consts::PI, 1e-3).unwrap();
        assert_eq!(ts.len(), 6284);
        assert_eq!(ts[0], 0.0);
        assert_eq!(*ts.last().unwrap(), 2.0 * std::f64::consts::PI);
    }

    #[test]
    fn ulp_diff_counts() {
        assert_eq!(ulp_diff(1.0, 1.0), 0);
        assert_eq!(ulp_diff(1.0, 1.0 + f64::EPSILON), 1);
        assert!(ulp_diff(1.0, -1.0) == u64::MAX);
    }
}
