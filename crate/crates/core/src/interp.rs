//! Interpolation for tabulated frequency data: monotone cubic
//! (Fritsch-Carlson) and piecewise linear.
//!
//! The monotone-cubic rule never overshoots the data, so an interpolated
//! omega²(t) cannot change sign between samples that do not.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InterpKind {
    Linear,
    MonotoneCubic,
}

#[derive(Debug, Clone)]
pub struct Interpolant {
    ts: Vec<f64>,
    ys: Vec<f64>,
    /// Knot slopes; empty for the linear rule.
    slopes: Vec<f64>,
    kind: InterpKind,
}

impl Interpolant {
    pub fn new(ts: Vec<f64>, ys: Vec<f64>, kind: InterpKind) -> Result<Self> {
        if ts.len() != ys.len() {
            return Err(Error::Model(format!(
                "time grid has {} samples but data has {}",
                ts.len(),
                ys.len()
            )));
        }
        if ts.len() < 2 {
            return Err(Error::Model("tabulated data needs at least 2 samples".into()));
        }
        if ts.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Model("time grid must be strictly increasing".into()));
        }
        if ts.iter().chain(ys.iter()).any(|v| !v.is_finite()) {
            return Err(Error::Model("tabulated data must be finite".into()));
        }
        let slopes = match kind {
            InterpKind::Linear => Vec::new(),
            InterpKind::MonotoneCubic => fritsch_carlson_slopes(&ts, &ys),
        };
        Ok(Interpolant { ts, ys, slopes, kind })
    }

    pub fn t_min(&self) -> f64 {
        self.ts[0]
    }

    pub fn t_max(&self) -> f64 {
        *self.ts.last().unwrap()
    }

    pub fn kind(&self) -> InterpKind {
        self.kind
    }

    pub fn times(&self) -> &[f64] {
        &self.ts
    }

    pub fn values(&self) -> &[f64] {
        &self.ys
    }

    fn segment(&self, t: f64) -> usize {
        match self.ts.binary_search_by(|x| x.partial_cmp(&t).unwrap()) {
            Ok(i) => i.min(self.ts.len() - 2),
            Err(i) => i.saturating_sub(1).min(self.ts.len() - 2),
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        let i = self.segment(t);
        let h = self.ts[i + 1] - self.ts[i];
        let s = (t - self.ts[i]) / h;
        match self.kind {
            InterpKind::Linear => self.ys[i] + s * (self.ys[i + 1] - self.ys[i]),
            InterpKind::MonotoneCubic => {
                let (y0, y1) = (self.ys[i], self.ys[i + 1]);
                let (m0, m1) = (self.slopes[i] * h, self.slopes[i + 1] * h);
                let s2 = s * s;
                let s3 = s2 * s;
                (2.0 * s3 - 3.0 * s2 + 1.0) * y0
                    + (s3 - 2.0 * s2 + s) * m0
                    + (-2.0 * s3 + 3.0 * s2) * y1
                    + (s3 - s2) * m1
            }
        }
    }

    pub fn derivative(&self, t: f64) -> f64 {
        let i = self.segment(t);
        let h = self.ts[i + 1] - self.ts[i];
        let s = (t - self.ts[i]) / h;
        match self.kind {
            InterpKind::Linear => (self.ys[i + 1] - self.ys[i]) / h,
            InterpKind::MonotoneCubic => {
                let (y0, y1) = (self.ys[i], self.ys[i + 1]);
                let (m0, m1) = (self.slopes[i] * h, self.slopes[i + 1] * h);
                let s2 = s * s;
                ((6.0 * s2 - 6.0 * s) * y0
                    + (3.0 * s2 - 4.0 * s + 1.0) * m0
                    + (-6.0 * s2 + 6.0 * s) * y1
                    + (3.0 * s2 - 2.0 * s) * m1)
                    / h
            }
        }
    }
}

/// Fritsch-Carlson shape-preserving slopes on a (possibly nonuniform) grid.
fn fritsch_carlson_slopes(ts: &[f64], ys: &[f64]) -> Vec<f64> {
    let n = ts.len();
    let h: Vec<f64> = ts.windows(2).map(|w| w[1] - w[0]).collect();
    let d: Vec<f64> = (0..n - 1).map(|i| (ys[i + 1] - ys[i]) / h[i]).collect();
    let mut m = vec![0.0; n];
    for i in 1..n - 1 {
        if d[i - 1] * d[i] <= 0.0 {
            m[i] = 0.0;
        } else {
            let w1 = 2.0 * h[i] + h[i - 1];
            let w2 = h[i] + 2.0 * h[i - 1];
            m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
        }
    }
    m[0] = edge_slope(h[0], h.get(1).copied().unwrap_or(h[0]), d[0], d.get(1).copied().unwrap_or(d[0]));
    m[n - 1] = edge_slope(
        h[n - 2],
        if n > 2 { h[n - 3] } else { h[n - 2] },
        d[n - 2],
        if n > 2 { d[n - 3] } else { d[n - 2] },
    );
    m
}

/// Non-centred three-point end slope with the usual monotonicity clamps.
fn edge_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if m * d0 <= 0.0 {
        0.0
    } else if d0 * d1 < 0.0 && m.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_knots() {
        let ts = vec![0.0, 0.5, 1.3, 2.0];
        let ys = vec![1.0, -0.5, 2.0, 2.0];
        for kind in [InterpKind::Linear, InterpKind::MonotoneCubic] {
            let it = Interpolant::new(ts.clone(), ys.clone(), kind).unwrap();
            for (t, y) in ts.iter().zip(ys.iter()) {
                assert!((it.value(*t) - y).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn monotone_data_stays_monotone() {
        let ts: Vec<f64> = (0..20).map(|i| i as f64 * 0.3).collect();
        let ys: Vec<f64> = ts.iter().map(|t| t.tanh()).collect();
        let it = Interpolant::new(ts.clone(), ys, InterpKind::MonotoneCubic).unwrap();
        let mut prev = it.value(ts[0]);
        let mut t = ts[0];
        while t < *ts.last().unwrap() {
            t += 0.01;
            let v = it.value(t.min(*ts.last().unwrap()));
            assert!(v + 1e-12 >= prev, "overshoot at t = {t}");
            prev = v;
        }
    }

    #[test]
    fn no_sign_flip_on_positive_data() {
        // coarse samples of a positive function must interpolate positive
        let ts: Vec<f64> = (0..15).map(|i| i as f64 * 0.5).collect();
        let ys: Vec<f64> = ts.iter().map(|t| 0.1 + (t * 1.3).sin().powi(2)).collect();
        let it = Interpolant::new(ts.clone(), ys, InterpKind::MonotoneCubic).unwrap();
        let mut t = ts[0];
        while t <= *ts.last().unwrap() {
            assert!(it.value(t) > 0.0, "sign flip at t = {t}");
            t += 0.013;
        }
    }

    #[test]
    fn derivative_matches_fd() {
        let ts: Vec<f64> = (0..30).map(|i| i as f64 * 0.2).collect();
        let ys: Vec<f64> = ts.iter().map(|t| (0.7 * t).cos()).collect();
        let it = Interpolant::new(ts, ys, InterpKind::MonotoneCubic).unwrap();
        for &t in &[0.31, 1.7, 4.23, 5.5] {
            let h = 1e-6;
            let fd = (it.value(t + h) - it.value(t - h)) / (2.0 * h);
            assert!((it.derivative(t) - fd).abs() < 1e-7);
        }
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(Interpolant::new(vec![0.0, 0.0], vec![1.0, 2.0], InterpKind::Linear).is_err());
        assert!(Interpolant::new(vec![0.0], vec![1.0], InterpKind::Linear).is_err());
        assert!(Interpolant::new(vec![0.0, 1.0], vec![1.0], InterpKind::Linear).is_err());
    }
}
