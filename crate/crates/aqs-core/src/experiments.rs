//! Synthetic experiment generators built on the evolution machinery.
//!
//! Two fixed Hamiltonians applied in swapped order, from a jittered basis
//! start, produce the embedding sets the order-effect test consumes. The
//! jitter is the only randomness: when the Hamiltonians commute the two
//! orders compute the same map and the sets are exchangeable; when they do
//! not, the deterministic gap between the orders dwarfs the jitter.

use crate::analysis::EmbeddingSet;
use crate::error::{AqsError, Result};
use crate::hamiltonian::{build_hamiltonian, s_generator_step, GeneratorConfig, HamiltonianParams};
use crate::hilbert::{C64, SemanticState};
use crate::operators::{FockContext, LinearOperator};
use crate::rng::{indexed_substream, standard_normal, substream};

/// A swapped-order generation setup: apply `h1` then `h2` for one
/// condition, `h2` then `h1` for the other.
#[derive(Clone, Debug)]
pub struct OrderSynthesis {
    pub ctx: FockContext,
    pub h1: HamiltonianParams,
    pub h2: HamiltonianParams,
    pub occupation: Vec<usize>,
    pub jitter: f64,
    pub runs_per_order: usize,
    pub norm_floor: f64,
}

impl OrderSynthesis {
    /// Two-mode reference with genuinely branching orders: H1 is on-site
    /// only (ε = [1, 2]), H2 is coupling only with g = [[0,1],[1,1]]. From
    /// |01⟩ the two orders reach rays with fidelity 3/√10.
    pub fn noncommuting_reference() -> Result<Self> {
        let ctx = FockContext::new(2, 1)?;
        let zero = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        let h1 = HamiltonianParams::new(0, vec![1.0, 2.0], vec![vec![zero; 2]; 2], true)?;
        let h2 = HamiltonianParams::new(
            0,
            vec![0.0, 0.0],
            vec![vec![zero, one], vec![one, one]],
            true,
        )?;
        Ok(Self {
            ctx,
            h1,
            h2,
            occupation: vec![0, 1],
            jitter: 1e-3,
            runs_per_order: 100,
            norm_floor: 1e-10,
        })
    }

    /// Same shape but with two diagonal (hence commuting) Hamiltonians:
    /// swapping the order changes nothing beyond the jitter.
    pub fn commuting_reference() -> Result<Self> {
        let mut synth = Self::noncommuting_reference()?;
        let zero = C64::new(0.0, 0.0);
        synth.h1 = HamiltonianParams::new(0, vec![1.0, 2.0], vec![vec![zero; 2]; 2], true)?;
        synth.h2 = HamiltonianParams::new(0, vec![2.0, 1.0], vec![vec![zero; 2]; 2], true)?;
        Ok(synth)
    }

    /// Runs both orders and returns the embedding sets, labels `a-then-b`
    /// and `b-then-a`. Each run perturbs the basis start with its own
    /// jitter stream, so run r draws identically no matter how runs are
    /// scheduled.
    pub fn run(&self, seed: u64) -> Result<(EmbeddingSet, EmbeddingSet)> {
        if self.runs_per_order == 0 {
            return Err(AqsError::invalid_field("runs_per_order", "must be ≥ 1"));
        }
        let cfg = GeneratorConfig {
            norm_floor: self.norm_floor,
            ..GeneratorConfig::default()
        };
        let base = self.ctx.basis_state(&self.occupation)?;
        let h1 = build_hamiltonian(&self.h1, &self.ctx)?;
        let h2 = build_hamiltonian(&self.h2, &self.ctx)?;

        let run_order = |first: &LinearOperator,
                             second: &LinearOperator,
                             stream: &str|
         -> Result<Vec<Vec<f64>>> {
            (0..self.runs_per_order)
                .map(|run| {
                    let mut rng = indexed_substream(seed, stream, run as u64);
                    let start = jitter_state(&base, self.jitter, &mut rng)?;
                    let (mid, _) = s_generator_step(first, &start, &cfg)?;
                    let (fin, _) = s_generator_step(second, &mid, &cfg)?;
                    Ok(embed_state(&fin))
                })
                .collect()
        };

        let set_a = EmbeddingSet::new("a-then-b", run_order(&h1, &h2, "order-ab-jitter")?)?;
        let set_b = EmbeddingSet::new("b-then-a", run_order(&h2, &h1, "order-ba-jitter")?)?;
        Ok((set_a, set_b))
    }
}

/// Adds complex Gaussian noise of scale `jitter` to every amplitude and
/// renormalizes.
pub fn jitter_state(
    base: &SemanticState,
    jitter: f64,
    rng: &mut impl rand::Rng,
) -> Result<SemanticState> {
    let raw: Vec<C64> = base
        .amplitudes()
        .iter()
        .map(|z| z + C64::new(jitter * standard_normal(rng), jitter * standard_normal(rng)))
        .collect();
    SemanticState::from_amplitudes(&raw)
}

/// Real embedding of a state: concatenated real and imaginary parts.
pub fn embed_state(s: &SemanticState) -> Vec<f64> {
    s.amplitudes()
        .iter()
        .map(|z| z.re)
        .chain(s.amplitudes().iter().map(|z| z.im))
        .collect()
}

/// Seeded interference triple with sign-mixed composition: X correlates
/// with Y, and Y′ moves half its components toward X and half away. The
/// change vector decorrelates from the cause while shuffled-reference
/// surrogates stay high — the pattern the interference report detects.
pub fn sign_mixed_triple(dim: usize, seed: u64) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let mut y_rng = substream(seed, "interference-y");
    let y: Vec<f64> = (0..dim).map(|_| standard_normal(&mut y_rng)).collect();
    let mut noise_rng = substream(seed, "interference-noise");
    let x: Vec<f64> = y
        .iter()
        .map(|v| 0.8 * v + 0.6 * standard_normal(&mut noise_rng))
        .collect();
    let alpha = 0.5;
    let yp: Vec<f64> = y
        .iter()
        .zip(&x)
        .enumerate()
        .map(|(i, (a, b))| {
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            a + sign * alpha * (b - a)
        })
        .collect();
    (y, yp, x)
}
