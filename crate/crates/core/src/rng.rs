//! Small deterministic PRNG for the sampling-based checks.
//!
//! xoshiro256** seeded through splitmix64. Sampling procedures take a
//! generator by value (or a bare seed), so concurrent callers fork
//! independent streams and results stay reproducible across platforms.

use crate::C64;

#[derive(Clone, Debug)]
pub struct Rng64 {
    s: [u64; 4],
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

impl Rng64 {
    pub fn seed_from(seed: u64) -> Rng64 {
        let mut sm = seed;
        Rng64 {
            s: [
                splitmix64(&mut sm),
                splitmix64(&mut sm),
                splitmix64(&mut sm),
                splitmix64(&mut sm),
            ],
        }
    }

    /// Derive an independent child stream (per-task seeding).
    pub fn fork(&mut self) -> Rng64 {
        Rng64::seed_from(self.next_u64())
    }

    pub fn next_u64(&mut self) -> u64 {
        let result = self.s[1]
            .wrapping_mul(5)
            .rotate_left(7)
            .wrapping_mul(9);
        let t = self.s[1] << 17;
        self.s[2] ^= self.s[0];
        self.s[3] ^= self.s[1];
        self.s[1] ^= self.s[2];
        self.s[0] ^= self.s[3];
        self.s[2] ^= t;
        self.s[3] = self.s[3].rotate_left(45);
        result
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[lo, hi)`.
    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Uniform (by area) in the disk `|z| < r`.
    pub fn in_disk(&mut self, r: f64) -> C64 {
        let rad = r * libm::sqrt(self.uniform());
        let th = core::f64::consts::TAU * self.uniform();
        C64::new(rad * libm::cos(th), rad * libm::sin(th))
    }

    /// Uniform in the square `[-h, h]^2`.
    pub fn in_square(&mut self, h: f64) -> C64 {
        C64::new(self.range(-h, h), self.range(-h, h))
    }
}
