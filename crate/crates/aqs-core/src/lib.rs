//! Numerical laboratory for noncommutative operator dynamics over
//! finite-dimensional semantic state spaces.
//!
//! The crate provides:
//!
//! - [`hilbert`]: unit-norm complex states, inner products, superposition,
//!   fidelity.
//! - [`operators`]: dense complex operators, commutators, expectations,
//!   and truncated multi-mode Fock ladders.
//! - [`creativity`]: C-values C = |⟨ψ|[A,B]|ψ⟩|, Robertson gaps
//!   σ_A·σ_B − C/2, and pairwise C-value matrices over operator portfolios.
//! - [`hamiltonian`]: the creative Hamiltonian
//!   H(k) = Σᵢ εᵢ(k)aᵢ†aᵢ + Σᵢⱼ gᵢⱼ(k)aᵢ†aⱼ and the alternating
//!   state-update / coefficient-update evolution loop.
//! - [`scheduler`]: C-value-greedy pair selection and order-sensitivity
//!   measurement.
//! - [`analysis`]: order-effect detection (PCA + permutation test),
//!   interference correlation analysis with shuffled surrogates, and
//!   co-creativity scoring with T-score normalization.
//! - [`cli`]: reproducible scenario configs and experiment runners backing
//!   the `aqslab` binary.
//!
//! Everything is deterministic for a fixed (config, seed): randomness flows
//! from a single 64-bit master seed through named substreams.

pub mod analysis;
pub mod cli;
pub mod creativity;
pub mod demo;
pub mod error;
pub mod experiments;
pub mod hamiltonian;
pub mod hilbert;
pub mod operators;
pub mod rng;
pub mod scheduler;

pub use creativity::{c_matrix, c_value, robertson_gap, CValueMatrix, OperatorPortfolio};
pub use error::{AqsError, Result};
pub use hamiltonian::{
    build_hamiltonian, canonical_portfolio, evolve, h_generator_step, s_generator_step,
    GeneratorConfig, HamiltonianParams, Trajectory,
};
pub use hilbert::{fidelity, inner_product, superpose, SemanticState, C64};
pub use operators::{FockContext, LinearOperator};
