//! C-value-driven operator selection and order-sensitivity measurement.
//!
//! Order sensitivity compares the rays reached by applying an operator list
//! forward vs reversed. Ray fidelity is blind to global phase, so a pair
//! that merely anticommutes (AB = −BA) scores exactly zero: the two
//! trajectories differ by the phase −1, which no downstream statistic can
//! observe. That is deliberate — the measured effect is about output
//! distributions, not hidden phases.

use crate::creativity::{c_value, OperatorPortfolio};
use crate::error::{AqsError, Result};
use crate::hilbert::{SemanticState, ZERO_NORM_FLOOR};
use crate::operators::LinearOperator;

/// The portfolio pair with the largest C-value at `s`, ties broken toward
/// the lexicographically smallest (i, j) with i < j.
pub fn maximize_c_pair(
    p: &OperatorPortfolio,
    s: &SemanticState,
) -> Result<(usize, usize, f64)> {
    if p.len() < 2 {
        return Err(AqsError::PortfolioTooSmall {
            need: 2,
            got: p.len(),
        });
    }
    let mut best = (0usize, 1usize, c_value(p.get(0), p.get(1), s)?);
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            if (i, j) == (0, 1) {
                continue;
            }
            let v = c_value(p.get(i), p.get(j), s)?;
            if v > best.2 {
                best = (i, j, v);
            }
        }
    }
    Ok(best)
}

fn apply_sequence<'a>(
    ops: impl Iterator<Item = &'a LinearOperator>,
    s: &SemanticState,
) -> Result<SemanticState> {
    let mut state = s.clone();
    for op in ops {
        let (raw, norm) = op.apply(&state)?;
        if norm < ZERO_NORM_FLOOR {
            return Err(AqsError::StateAnnihilated {
                norm,
                floor: ZERO_NORM_FLOOR,
            });
        }
        state = SemanticState::from_amplitudes(&raw)?;
    }
    Ok(state)
}

/// 1 − fidelity(reversed-order ray, listed-order ray) ∈ [0, 1].
///
/// The list is applied in order for one trajectory and back to front for
/// the other; states are renormalized after every application, which only
/// fixes the representative of each ray.
pub fn order_sensitivity(ops: &[LinearOperator], s: &SemanticState) -> Result<f64> {
    if ops.len() < 2 {
        return Err(AqsError::PortfolioTooSmall {
            need: 2,
            got: ops.len(),
        });
    }
    let forward = apply_sequence(ops.iter(), s)?;
    let reversed = apply_sequence(ops.iter().rev(), s)?;
    let f = crate::hilbert::fidelity(&forward, &reversed)?;
    Ok((1.0 - f).clamp(0.0, 1.0))
}

/// True iff every pairwise commutator of the portfolio has max-entry
/// magnitude ≤ `tol`. Passing certifies the deterministic regime in which
/// application order cannot matter.
pub fn commuting_collapse_check(p: &OperatorPortfolio, tol: f64) -> bool {
    for i in 0..p.len() {
        for j in (i + 1)..p.len() {
            let comm = p
                .get(i)
                .commutator(p.get(j))
                .expect("portfolio operators share a dimension");
            if comm.max_abs() > tol {
                return false;
            }
        }
    }
    true
}
