//! Seeded random rationals. Every sampler in the crate goes through here so
//! that a `(seed, bounds)` pair fully determines its output.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::exactfield::ExactScalar;

pub type SeededRng = ChaCha8Rng;

/// Bounds on random rationals: numerators in [−max_num, max_num], denominators
/// in [1, max_den].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleBounds {
    pub max_num: i64,
    pub max_den: i64,
}

impl Default for SampleBounds {
    fn default() -> Self {
        SampleBounds {
            max_num: 20,
            max_den: 10,
        }
    }
}

impl SampleBounds {
    /// Small integers, used where coefficient growth matters most.
    pub fn small() -> Self {
        SampleBounds { max_num: 3, max_den: 1 }
    }
}

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A child seed that depends on the parent seed and a label.
pub fn derive_seed(seed: u64, label: &str, index: u64) -> u64 {
    // FNV-1a over the label, mixed with the seed and index by splitmix64.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    splitmix(seed ^ splitmix(h ^ splitmix(index)))
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn random_rational(rng: &mut SeededRng, b: SampleBounds) -> ExactScalar {
    let num = rng.random_range(-b.max_num..=b.max_num);
    let den = rng.random_range(1..=b.max_den.max(1));
    ExactScalar::from_frac(num, den).expect("denominator is positive")
}

/// A random rational that is never zero.
pub fn random_nonzero(rng: &mut SeededRng, b: SampleBounds) -> ExactScalar {
    loop {
        let v = random_rational(rng, b);
        if !v.is_zero() {
            return v;
        }
    }
}

pub fn random_vector(rng: &mut SeededRng, len: usize, b: SampleBounds) -> Vec<ExactScalar> {
    (0..len).map(|_| random_rational(rng, b)).collect()
}

/// Distinct nonzero integers a_1..a_k with a_i ≠ ±a_j, drawn from [1, max] with random signs.
pub fn distinct_nonzero_ints(rng: &mut SeededRng, k: usize, max: i64) -> Vec<i64> {
    assert!(max as usize >= k, "range too small");
    let mut out: Vec<i64> = Vec::with_capacity(k);
    while out.len() < k {
        let v = rng.random_range(1..=max);
        if out.iter().any(|a| a.abs() == v) {
            continue;
        }
        out.push(if rng.random_bool(0.5) { v } else { -v });
    }
    out
}

pub fn coin(rng: &mut SeededRng) -> bool {
    rng.random_bool(0.5)
}

pub fn pick(rng: &mut SeededRng, n: usize) -> usize {
    rng.random_range(0..n)
}
