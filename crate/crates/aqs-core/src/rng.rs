//! Seeded random streams.
//!
//! All randomness flows from one 64-bit master seed. Each experiment phase
//! draws from a named substream, and loop iterations get their own stream
//! derived from (seed, label, index), so adding parallelism or reordering
//! iterations can never change what any single iteration draws.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hilbert::{C64, SemanticState};
use crate::operators::LinearOperator;

fn fnv1a(label: &str) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in label.bytes() {
        hash ^= u64::from(byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// Stream for an experiment phase.
pub fn substream(seed: u64, label: &str) -> ChaCha8Rng {
    indexed_substream(seed, label, 0)
}

/// Stream for iteration `index` of a phase. Independent per index.
pub fn indexed_substream(seed: u64, label: &str, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(fnv1a(label).wrapping_add(index.wrapping_mul(0x9e37_79b9_7f4a_7c15)));
    rng
}

/// Standard normal draw (Box-Muller on two uniforms).
pub fn standard_normal(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Random unit state with complex-normal amplitudes.
pub fn random_state(dim: usize, rng: &mut impl Rng) -> SemanticState {
    loop {
        let raw: Vec<C64> = (0..dim)
            .map(|_| C64::new(standard_normal(rng), standard_normal(rng)))
            .collect();
        if let Ok(state) = SemanticState::from_amplitudes(&raw) {
            return state;
        }
    }
}

/// Random dense operator with entries uniform in [−1, 1]².
pub fn random_operator(dim: usize, rng: &mut impl Rng) -> LinearOperator {
    let entries: Vec<C64> = (0..dim * dim)
        .map(|_| C64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)))
        .collect();
    LinearOperator::from_fn(dim, |i, j| entries[i * dim + j]).expect("finite by construction")
}

/// Random Hermitian operator: (M + M†)/2 over the uniform ensemble.
pub fn random_hermitian(dim: usize, rng: &mut impl Rng) -> LinearOperator {
    let m = random_operator(dim, rng);
    m.add(&m.adjoint())
        .expect("same dim")
        .scale(C64::new(0.5, 0.0))
}
