//! Named, counter-based random streams.
//!
//! Every stochastic component of the toolkit (weight init, shuffling,
//! augmentation, mask sampling, label corruption, ...) pulls from its own
//! named stream. A stream hands out [`Draw`]s; each draw is an independent
//! generator keyed by `(seed, stream name, draw counter)`, so any draw can be
//! replayed later from its counter alone, no matter how many values earlier
//! draws consumed.

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

#[inline]
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(GOLDEN);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn hash_name(name: &str) -> u64 {
    // FNV-1a, stable across platforms and builds.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x1000_0000_01b3);
    }
    h
}

/// A named stream of reproducible draws.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    name: String,
    name_hash: u64,
    counter: u64,
}

impl RngStream {
    pub fn new(seed: u64, name: &str) -> Self {
        RngStream {
            seed,
            name: name.to_string(),
            name_hash: hash_name(name),
            counter: 0,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of draws handed out so far.
    pub fn counter(&self) -> u64 {
        self.counter
    }

    /// Next draw in the stream; advances the counter.
    pub fn next_draw(&mut self) -> Draw {
        let d = self.draw_at(self.counter);
        self.counter += 1;
        d
    }

    /// Replay the draw that `next_draw` produced (or will produce) at
    /// `counter`, without touching the stream state.
    pub fn draw_at(&self, counter: u64) -> Draw {
        let mut s = self.seed;
        let mut key = splitmix64(&mut s) ^ self.name_hash;
        key = key.wrapping_add(GOLDEN.wrapping_mul(counter.wrapping_add(1)));
        let mut k2 = key;
        splitmix64(&mut k2);
        Draw { state: k2 }
    }
}

/// One independent generator; cheap to create, deterministic from its key.
#[derive(Debug, Clone)]
pub struct Draw {
    state: u64,
}

impl Draw {
    /// Stand-alone generator for tests and tools that do not need a stream.
    pub fn from_seed(seed: u64) -> Self {
        let mut s = seed;
        splitmix64(&mut s);
        Draw { state: s }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        splitmix64(&mut self.state)
    }

    /// Uniform in [0, 1) with 53 random bits.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [lo, hi).
    pub fn uniform_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform() < p
    }

    /// Uniform integer in [0, n) via rejection (no modulo bias).
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0, "below(0)");
        let n = n as u64;
        let zone = u64::MAX - (u64::MAX % n);
        loop {
            let x = self.next_u64();
            if x < zone {
                return (x % n) as usize;
            }
        }
    }

    /// Standard normal via Box-Muller. Draws two uniforms per call.
    pub fn normal(&mut self) -> f64 {
        let u1 = loop {
            let u = self.uniform();
            if u > 0.0 {
                break u;
            }
        };
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    }

    /// Gamma(shape, 1) via Marsaglia-Tsang, boosted for shape < 1.
    pub fn gamma(&mut self, shape: f64) -> f64 {
        assert!(shape > 0.0, "gamma shape must be positive");
        if shape < 1.0 {
            let u = loop {
                let u = self.uniform();
                if u > 0.0 {
                    break u;
                }
            };
            return self.gamma(shape + 1.0) * u.powf(1.0 / shape);
        }
        let d = shape - 1.0 / 3.0;
        let c = 1.0 / (9.0 * d).sqrt();
        loop {
            let x = self.normal();
            let v = (1.0 + c * x).powi(3);
            if v <= 0.0 {
                continue;
            }
            let u = self.uniform();
            if u < 1.0 - 0.0331 * x.powi(4) {
                return d * v;
            }
            if u > 0.0 && u.ln() < 0.5 * x * x + d * (1.0 - v + v.ln()) {
                return d * v;
            }
        }
    }

    /// Beta(alpha, alpha), the mixup coefficient distribution.
    pub fn beta_symmetric(&mut self, alpha: f64) -> f64 {
        let a = self.gamma(alpha);
        let b = self.gamma(alpha);
        if a + b == 0.0 {
            0.5
        } else {
            a / (a + b)
        }
    }

    /// In-place Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, xs: &mut [T]) {
        for i in (1..xs.len()).rev() {
            let j = self.below(i + 1);
            xs.swap(i, j);
        }
    }

    /// k distinct indices drawn uniformly from 0..n (partial Fisher-Yates).
    pub fn choose_k(&mut self, n: usize, k: usize) -> Vec<usize> {
        assert!(k <= n, "choose_k: k > n");
        let mut idx: Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = i + self.below(n - i);
            idx.swap(i, j);
        }
        idx.truncate(k);
        idx
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_replay_from_counter() {
        let mut s = RngStream::new(42, "mask");
        let mut a = s.next_draw();
        let mut b = s.next_draw();
        let (a1, b1) = (a.next_u64(), b.next_u64());
        let mut a2 = s.draw_at(0);
        let mut b2 = s.draw_at(1);
        assert_eq!(a1, a2.next_u64());
        assert_eq!(b1, b2.next_u64());
    }

    #[test]
    fn distinct_names_distinct_sequences() {
        let mut a = RngStream::new(7, "mask").next_draw();
        let mut b = RngStream::new(7, "init").next_draw();
        let xs: Vec<u64> = (0..8).map(|_| a.next_u64()).collect();
        let ys: Vec<u64> = (0..8).map(|_| b.next_u64()).collect();
        assert_ne!(xs, ys);
    }

    #[test]
    fn uniform_mean_close_to_half() {
        let mut d = Draw::from_seed(1);
        let n = 100_000;
        let mean: f64 = (0..n).map(|_| d.uniform()).sum::<f64>() / n as f64;
        assert!((mean - 0.5).abs() < 0.005, "mean {mean}");
    }

    #[test]
    fn normal_moments() {
        let mut d = Draw::from_seed(2);
        let n = 100_000;
        let xs: Vec<f64> = (0..n).map(|_| d.normal()).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
        assert!(mean.abs() < 0.02, "mean {mean}");
        assert!((var - 1.0).abs() < 0.03, "var {var}");
    }

    #[test]
    fn beta_symmetric_is_in_unit_interval_with_mean_half() {
        let mut d = Draw::from_seed(3);
        let n = 50_000;
        let xs: Vec<f64> = (0..n).map(|_| d.beta_symmetric(0.4)).collect();
        assert!(xs.iter().all(|x| (0.0..=1.0).contains(x)));
        let mean = xs.iter().sum::<f64>() / n as f64;
        assert!((mean - 0.5).abs() < 0.01, "mean {mean}");
    }

    #[test]
    fn choose_k_is_distinct_and_uniformish() {
        let mut d = Draw::from_seed(4);
        let picked = d.choose_k(10, 4);
        let mut sorted = picked.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 4);

        // Frequency of a fixed element over many draws approaches k/n.
        let mut hits = 0usize;
        let trials = 20_000;
        for _ in 0..trials {
            if d.choose_k(10, 4).contains(&3) {
                hits += 1;
            }
        }
        let freq = hits as f64 / trials as f64;
        assert!((freq - 0.4).abs() < 0.02, "freq {freq}");
    }
}
