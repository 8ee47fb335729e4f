//! Deterministic sampling helpers for the seeded validation sweeps.

/// SplitMix64. Small, fast, and identical on every platform, which keeps
/// seeded validation runs byte-reproducible.
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }
}

/// `count` quasi-random points in (a, b): a golden-ratio (Kronecker)
/// sequence, deterministic and well spread.
pub fn golden_points(a: f64, b: f64, count: usize) -> Vec<f64> {
    const PHI_FRAC: f64 = 0.618_033_988_749_894_9;
    (1..=count)
        .map(|k| {
            let frac = (k as f64 * PHI_FRAC).fract();
            a + (b - a) * frac
        })
        .collect()
}
