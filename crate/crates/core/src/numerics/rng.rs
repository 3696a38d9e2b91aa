use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn derive_state(master_seed: u64, key: &[u64]) -> u64 {
    let mut h = splitmix(master_seed);
    for (i, &k) in key.iter().enumerate() {
        h = splitmix(h ^ splitmix(k ^ (i as u64).wrapping_mul(GOLDEN)));
    }
    splitmix(h ^ key.len() as u64)
}

/// A seeded random stream identified by a master seed and a hierarchical key.
///
/// The generator state is a pure function of `(master_seed, stream_key)`, so
/// a stream can be rebuilt anywhere (another thread, another run) and yields
/// the same draws. Child streams are derived from the key, never from the
/// parent's consumed state.
#[derive(Clone, Debug)]
pub struct RngStream {
    master_seed: u64,
    key: Vec<u64>,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(master_seed: u64, stream_key: &[u64]) -> Self {
        let state = derive_state(master_seed, stream_key);
        let mut seed = [0u8; 32];
        for (j, chunk) in seed.chunks_exact_mut(8).enumerate() {
            chunk.copy_from_slice(&splitmix(state.wrapping_add((j as u64).wrapping_mul(GOLDEN))).to_le_bytes());
        }
        RngStream {
            master_seed,
            key: stream_key.to_vec(),
            rng: ChaCha8Rng::from_seed(seed),
        }
    }

    /// Stream whose key is this stream's key extended by `sub`.
    pub fn child(&self, sub: u64) -> Self {
        let mut key = self.key.clone();
        key.push(sub);
        RngStream::new(self.master_seed, &key)
    }

    /// A 64-bit value mixed from `(master_seed, key)`, usable as the master
    /// seed of a derived experiment.
    pub fn derive_seed(master_seed: u64, key: &[u64]) -> u64 {
        derive_state(master_seed, key)
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn stream_key(&self) -> &[u64] {
        &self.key
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on the open interval `(0, 1)`.
    pub fn uniform_open(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform() < p
    }

    /// Standard normal variate (Box-Muller, one variate per call).
    pub fn standard_normal(&mut self) -> f64 {
        let u1 = self.uniform_open();
        let u2 = self.uniform();
        libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(2.0 * core::f64::consts::PI * u2)
    }

    pub fn normal(&mut self, mean: f64, sd: f64) -> f64 {
        mean + sd * self.standard_normal()
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}
