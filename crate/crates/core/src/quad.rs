//! Adaptive Gauss-Kronrod quadrature (15-point rule, bisection worklist).

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

const XGK15: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
const WG7: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];
const WGK15: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// 15-point Gauss-Kronrod rule on [a, b]: returns (integral, error estimate).
fn qk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_gauss = fc * WG7[3];
    let mut res_kron = fc * WGK15[7];
    let mut fv = [0.0_f64; 14];
    for j in 0..7 {
        let x = half * XGK15[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv[j] = f1;
        fv[j + 7] = f2;
        res_kron += WGK15[j] * (f1 + f2);
        if j % 2 == 1 {
            // odd Kronrod indices are the embedded Gauss-7 nodes
            res_gauss += WG7[j / 2] * (f1 + f2);
        }
    }
    let mean = res_kron * 0.5;
    let mut res_asc = WGK15[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK15[j] * ((fv[j] - mean).abs() + (fv[j + 7] - mean).abs());
    }
    res_asc *= half.abs();
    let mut err = ((res_kron - res_gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    (res_kron * half, err)
}

#[derive(PartialEq)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl Eq for Segment {}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.partial_cmp(&other.err).unwrap_or(Ordering::Equal)
    }
}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Integrate `f` over [a, b], bisecting the worst interval until the summed
/// error estimate meets `max(abs_tol, rel_tol * |integral|)`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let (sign, lo, hi) = if a < b { (1.0, a, b) } else { (-1.0, b, a) };
    let (v0, e0) = qk15(&f, lo, hi);
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a: lo, b: hi, value: v0, err: e0 });
    let mut total = v0;
    let mut total_err = e0;
    let max_segments = 4000;
    while total_err > abs_tol.max(rel_tol * total.abs()) {
        if heap.len() >= max_segments {
            return Err(Error::Quadrature(format!(
                "no convergence after {max_segments} subdivisions (err = {total_err:.3e})"
            )));
        }
        let worst = heap.pop().expect("heap cannot be empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            return Err(Error::Quadrature(format!(
                "interval too small near t = {mid} (probable singularity)"
            )));
        }
        let (vl, el) = qk15(&f, worst.a, mid);
        let (vr, er) = qk15(&f, mid, worst.b);
        total += vl + vr - worst.value;
        total_err += el + er - worst.err;
        heap.push(Segment { a: worst.a, b: mid, value: vl, err: el });
        heap.push(Segment { a: mid, b: worst.b, value: vr, err: er });
    }
    if !total.is_finite() {
        return Err(Error::Quadrature("integrand produced non-finite values".into()));
    }
    Ok(sign * total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_is_exact() {
        let v = integrate(|x| x * x * x - 2.0 * x + 1.0, -1.0, 3.0, 1e-12, 1e-14).unwrap();
        // antiderivative x^4/4 - x^2 + x
        let exact = (81.0 / 4.0 - 9.0 + 3.0) - (0.25 - 1.0 - 1.0);
        assert!((v - exact).abs() < 1e-12);
    }

    #[test]
    fn gaussian_integral() {
        let v = integrate(|x| (-x * x).exp(), -10.0, 10.0, 1e-12, 1e-15).unwrap();
        assert!((v - PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn oscillatory_integral() {
        let v = integrate(|x| (20.0 * x).sin(), 0.0, 1.0, 1e-12, 1e-15).unwrap();
        let exact = (1.0 - (20.0_f64).cos()) / 20.0;
        assert!((v - exact).abs() < 1e-12);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let fwd = integrate(|x| x.exp(), 0.0, 1.0, 1e-12, 1e-15).unwrap();
        let rev = integrate(|x| x.exp(), 1.0, 0.0, 1e-12, 1e-15).unwrap();
        assert!((fwd + rev).abs() < 1e-13);
    }

    #[test]
    fn hard_singularity_errors_out() {
        let r = integrate(|x| 1.0 / x, 0.0, 1.0, 1e-10, 1e-12);
        assert!(r.is_err());
    }
}
