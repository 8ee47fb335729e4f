//! Adaptive Dormand-Prince 5(4) integration with continuous (dense) output.
//!
//! The solver is fixed to small state vectors (`[f64; N]`), which is all the
//! oscillator equations here need: a single real solution is N = 2 and a
//! solution pair advanced in lockstep is N = 4.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Local error control for the embedded pair.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Tolerances {
    pub rel: f64,
    pub abs: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { rel: 1e-10, abs: 1e-12 }
    }
}

impl Tolerances {
    pub fn new(rel: f64, abs: f64) -> Result<Self> {
        if !(rel > 0.0) || !(abs > 0.0) {
            return Err(Error::Domain("tolerances must be positive".into()));
        }
        Ok(Tolerances { rel, abs })
    }
}

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
// fifth-order minus embedded fourth-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
// dense-output weights
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

#[derive(Debug, Clone)]
pub struct DenseSegment<const N: usize> {
    pub t0: f64,
    pub h: f64,
    cont: [[f64; N]; 5],
}

impl<const N: usize> DenseSegment<N> {
    fn eval(&self, t: f64) -> [f64; N] {
        let s = (t - self.t0) / self.h;
        let s1 = 1.0 - s;
        let mut y = [0.0; N];
        for i in 0..N {
            let c = &self.cont;
            y[i] = c[0][i] + s * (c[1][i] + s1 * (c[2][i] + s * (c[3][i] + s1 * c[4][i])));
        }
        y
    }
}

/// Accepted knots plus a continuous interpolant over every step.
#[derive(Debug, Clone)]
pub struct OdeSolution<const N: usize> {
    pub ts: Vec<f64>,
    pub ys: Vec<[f64; N]>,
    segments: Vec<DenseSegment<N>>,
}

impl<const N: usize> OdeSolution<N> {
    pub fn t_start(&self) -> f64 {
        self.ts[0]
    }

    pub fn t_end(&self) -> f64 {
        *self.ts.last().unwrap()
    }

    /// Dense evaluation anywhere in the integrated span. Knot values are
    /// reproduced exactly; times outside the span are a domain error.
    pub fn sample(&self, t: f64) -> Result<[f64; N]> {
        let eps = 1e-12 * (self.t_end() - self.t_start()).abs().max(1.0);
        if t < self.t_start() - eps || t > self.t_end() + eps {
            return Err(Error::Domain(format!(
                "t = {t} outside integrated span [{}, {}]",
                self.t_start(),
                self.t_end()
            )));
        }
        // knot hits are exact by construction
        if let Ok(i) = self.ts.binary_search_by(|x| x.partial_cmp(&t).unwrap()) {
            return Ok(self.ys[i]);
        }
        let idx = match self.ts.binary_search_by(|x| x.partial_cmp(&t).unwrap()) {
            Ok(i) => i.min(self.segments.len() - 1),
            Err(i) => i.saturating_sub(1).min(self.segments.len() - 1),
        };
        Ok(self.segments[idx].eval(t))
    }

    /// Split a joint integration into per-pair solutions (components
    /// [off, off+1]); the knot grid is shared.
    pub fn extract_pair(&self, off: usize) -> OdeSolution<2> {
        assert!(off + 2 <= N);
        let ys = self.ys.iter().map(|y| [y[off], y[off + 1]]).collect();
        let segments = self
            .segments
            .iter()
            .map(|s| DenseSegment {
                t0: s.t0,
                h: s.h,
                cont: [
                    [s.cont[0][off], s.cont[0][off + 1]],
                    [s.cont[1][off], s.cont[1][off + 1]],
                    [s.cont[2][off], s.cont[2][off + 1]],
                    [s.cont[3][off], s.cont[3][off + 1]],
                    [s.cont[4][off], s.cont[4][off + 1]],
                ],
            })
            .collect();
        OdeSolution { ts: self.ts.clone(), ys, segments }
    }
}

fn wrms_norm<const N: usize>(err: &[f64; N], y0: &[f64; N], y1: &[f64; N], tol: Tolerances) -> f64 {
    let mut acc = 0.0;
    for i in 0..N {
        let sc = tol.abs + tol.rel * y0[i].abs().max(y1[i].abs());
        let r = err[i] / sc;
        acc += r * r;
    }
    (acc / N as f64).sqrt()
}

/// Hairer-style starting step size.
fn initial_step<const N: usize, F: Fn(f64, &[f64; N]) -> [f64; N]>(
    f: &F,
    t0: f64,
    y0: &[f64; N],
    k1: &[f64; N],
    t_end: f64,
    tol: Tolerances,
) -> f64 {
    let span = t_end - t0;
    let sc = |y: &[f64; N]| -> f64 {
        let mut acc = 0.0;
        for i in 0..N {
            let s = tol.abs + tol.rel * y[i].abs();
            acc += (y[i] / s) * (y[i] / s);
        }
        (acc / N as f64).sqrt()
    };
    let d0 = sc(y0);
    let d1 = sc(k1);
    let mut h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    h0 = h0.min(span.abs());
    let mut y1 = [0.0; N];
    for i in 0..N {
        y1[i] = y0[i] + h0 * k1[i];
    }
    let k2 = f(t0 + h0, &y1);
    let mut diff = [0.0; N];
    for i in 0..N {
        diff[i] = k2[i] - k1[i];
    }
    let d2 = sc(&diff) / h0;
    let h1 = if d1.max(d2) <= 1e-15 {
        (h0 * 1e-3).max(1e-6)
    } else {
        (0.01 / d1.max(d2)).powf(0.2)
    };
    h1.min(100.0 * h0).min(span.abs())
}

/// Integrate `y' = f(t, y)` forward from `t0` to `t_end` with local error
/// control and dense output on every accepted step.
pub fn solve<const N: usize, F: Fn(f64, &[f64; N]) -> [f64; N]>(
    f: F,
    t0: f64,
    y0: [f64; N],
    t_end: f64,
    tol: Tolerances,
) -> Result<OdeSolution<N>> {
    if !(t_end > t0) {
        return Err(Error::Domain(format!("integration span [{t0}, {t_end}] is empty")));
    }
    let max_steps: usize = 5_000_000;
    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);
    let mut h = initial_step(&f, t0, &y0, &k1, t_end, tol);
    let mut ts = vec![t0];
    let mut ys = vec![y0];
    let mut segments = Vec::new();

    let axpy = |y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]| -> [f64; N] {
        let mut out = *y;
        for (c, k) in terms {
            for i in 0..N {
                out[i] += h * c * k[i];
            }
        }
        out
    };

    for _step in 0..max_steps {
        if t >= t_end {
            return Ok(OdeSolution { ts, ys, segments });
        }
        h = h.min(t_end - t);
        if h <= 16.0 * f64::EPSILON * t.abs().max(1.0) {
            return Err(Error::Integration {
                reached: t,
                reason: "step size underflow".into(),
            });
        }

        let k2 = f(t + C2 * h, &axpy(&y, h, &[(A21, &k1)]));
        let k3 = f(t + C3 * h, &axpy(&y, h, &[(A31, &k1), (A32, &k2)]));
        let k4 = f(t + C4 * h, &axpy(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = f(
            t + C5 * h,
            &axpy(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
        );
        let k6 = f(
            t + h,
            &axpy(&y, h, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
        );
        let y1 = axpy(&y, h, &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)]);
        let k7 = f(t + h, &y1);

        let mut err = [0.0; N];
        for i in 0..N {
            err[i] = h
                * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
        }
        let err_norm = wrms_norm(&err, &y, &y1, tol);

        if err_norm <= 1.0 {
            let mut cont = [[0.0; N]; 5];
            for i in 0..N {
                let ydiff = y1[i] - y[i];
                let bspl = h * k1[i] - ydiff;
                cont[0][i] = y[i];
                cont[1][i] = ydiff;
                cont[2][i] = bspl;
                cont[3][i] = ydiff - h * k7[i] - bspl;
                cont[4][i] = h
                    * (D1 * k1[i] + D3 * k3[i] + D4 * k4[i] + D5 * k5[i] + D6 * k6[i]
                        + D7 * k7[i]);
            }
            segments.push(DenseSegment { t0: t, h, cont });
            t += h;
            // pin the final knot to t_end exactly
            if (t_end - t).abs() <= 4.0 * f64::EPSILON * t_end.abs().max(1.0) {
                t = t_end;
            }
            y = y1;
            k1 = k7; // first-same-as-last
            ts.push(t);
            ys.push(y);
            if !y.iter().all(|v| v.is_finite()) {
                return Err(Error::Integration {
                    reached: t,
                    reason: "state became non-finite".into(),
                });
            }
            let fac = (0.9 * err_norm.powf(-0.2)).clamp(0.2, 5.0);
            h *= fac;
        } else {
            let fac = (0.9 * err_norm.powf(-0.2)).clamp(0.2, 1.0);
            h *= fac;
        }
    }
    Err(Error::Integration {
        reached: t,
        reason: format!("exceeded {max_steps} steps"),
    })
}
