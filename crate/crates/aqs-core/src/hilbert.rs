//! Finite-dimensional complex state space.
//!
//! A [`SemanticState`] is a unit-norm vector of complex amplitudes. All
//! constructors normalize, so a state is a ray representative by the time
//! anything else sees it. Complex scalars are kept as explicit (re, im)
//! pairs of reals; this keeps commutators of ladder operators exact instead
//! of tracking phases by hand.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{AqsError, Result};

pub type C64 = Complex64;

/// Norm tolerance for stored states (invariant checks).
pub const UNIT_NORM_TOL: f64 = 1e-9;
/// Below this a vector has no usable direction.
pub const ZERO_NORM_FLOOR: f64 = 1e-12;

/// Unit-norm complex amplitude vector.
#[derive(Clone, Debug, PartialEq)]
pub struct SemanticState {
    amplitudes: Vec<C64>,
}

impl SemanticState {
    /// Normalizes `raw` to unit norm.
    ///
    /// Fails with `NonFinite` if any component is NaN/Inf and with
    /// `ZeroNorm` if the norm is below [`ZERO_NORM_FLOOR`].
    pub fn from_amplitudes(raw: &[C64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(AqsError::invalid_field("amplitudes", "must be nonempty"));
        }
        for (index, z) in raw.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(AqsError::NonFinite { index });
            }
        }
        let norm = vec_norm(raw);
        if norm < ZERO_NORM_FLOOR {
            return Err(AqsError::ZeroNorm {
                norm,
                floor: ZERO_NORM_FLOOR,
            });
        }
        let amplitudes = raw.iter().map(|z| z / norm).collect();
        Ok(Self { amplitudes })
    }

    /// The computational basis state |index⟩ in `dim` dimensions.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if dim == 0 {
            return Err(AqsError::invalid_field("dim", "must be ≥ 1"));
        }
        if index >= dim {
            return Err(AqsError::invalid_field(
                "index",
                format!("basis index {index} out of range for dim {dim}"),
            ));
        }
        let mut amplitudes = vec![C64::new(0.0, 0.0); dim];
        amplitudes[index] = C64::new(1.0, 0.0);
        Ok(Self { amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        vec_norm(&self.amplitudes)
    }
}

pub(crate) fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn check_dims(a: &SemanticState, b: &SemanticState) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(AqsError::DimMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(())
}

/// ⟨a|b⟩ = Σᵢ conj(aᵢ)·bᵢ. Conjugate-symmetric in its arguments.
pub fn inner_product(a: &SemanticState, b: &SemanticState) -> Result<C64> {
    check_dims(a, b)?;
    Ok(a.amplitudes
        .iter()
        .zip(&b.amplitudes)
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// Normalized weighted sum Σᵢ wᵢ|ψᵢ⟩.
pub fn superpose(states: &[SemanticState], weights: &[C64]) -> Result<SemanticState> {
    if states.is_empty() || states.len() != weights.len() {
        return Err(AqsError::invalid_field(
            "weights",
            format!(
                "need equal nonempty lists, got {} states and {} weights",
                states.len(),
                weights.len()
            ),
        ));
    }
    let dim = states[0].dim();
    for s in states {
        if s.dim() != dim {
            return Err(AqsError::DimMismatch {
                left: dim,
                right: s.dim(),
            });
        }
    }
    let mut sum = vec![C64::new(0.0, 0.0); dim];
    for (s, w) in states.iter().zip(weights) {
        for (acc, z) in sum.iter_mut().zip(&s.amplitudes) {
            *acc += w * z;
        }
    }
    SemanticState::from_amplitudes(&sum)
}

/// |⟨a|b⟩| ∈ [0, 1]. Invariant under a global phase on either state.
pub fn fidelity(a: &SemanticState, b: &SemanticState) -> Result<f64> {
    Ok(inner_product(a, b)?.norm())
}

#[derive(Serialize, Deserialize)]
struct StateRepr {
    dim: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl Serialize for SemanticState {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        StateRepr {
            dim: self.dim(),
            re: self.amplitudes.iter().map(|z| z.re).collect(),
            im: self.amplitudes.iter().map(|z| z.im).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SemanticState {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = StateRepr::deserialize(deserializer)?;
        if repr.re.len() != repr.dim || repr.im.len() != repr.dim {
            return Err(serde::de::Error::custom(format!(
                "state arrays must have length dim={}, got re={} im={}",
                repr.dim,
                repr.re.len(),
                repr.im.len()
            )));
        }
        let raw: Vec<C64> = repr
            .re
            .iter()
            .zip(&repr.im)
            .map(|(&re, &im)| C64::new(re, im))
            .collect();
        SemanticState::from_amplitudes(&raw).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn construction_normalizes_basis_scaling() {
        let s = SemanticState::from_amplitudes(&[c(2.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(s.amplitudes(), &[c(1.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn construction_normalizes_equal_superposition() {
        let s = SemanticState::from_amplitudes(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let r = 1.0 / 2.0_f64.sqrt();
        assert!((s.amplitudes()[0].re - r).abs() < 1e-12);
        assert!((s.amplitudes()[1].re - r).abs() < 1e-12);
        assert!((s.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn null_vector_is_rejected() {
        let err = SemanticState::from_amplitudes(&[c(0.0, 0.0), c(0.0, 0.0)]).unwrap_err();
        assert!(matches!(err, AqsError::ZeroNorm { .. }));
    }

    #[test]
    fn non_finite_is_rejected() {
        let err = SemanticState::from_amplitudes(&[c(f64::NAN, 0.0)]).unwrap_err();
        assert_eq!(err, AqsError::NonFinite { index: 0 });
        let err = SemanticState::from_amplitudes(&[c(1.0, 0.0), c(0.0, f64::INFINITY)]).unwrap_err();
        assert_eq!(err, AqsError::NonFinite { index: 1 });
    }

    #[test]
    fn inner_product_on_basis_states() {
        let e0 = SemanticState::basis(2, 0).unwrap();
        let e1 = SemanticState::basis(2, 1).unwrap();
        assert_eq!(inner_product(&e0, &e0).unwrap(), c(1.0, 0.0));
        assert_eq!(inner_product(&e0, &e1).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn inner_product_projects_equal_superposition() {
        let e0 = SemanticState::basis(2, 0).unwrap();
        let plus = SemanticState::from_amplitudes(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let p = inner_product(&plus, &e0).unwrap();
        assert!((p.re - 1.0 / 2.0_f64.sqrt()).abs() < 1e-12);
        assert!(p.im.abs() < 1e-15);
    }

    #[test]
    fn inner_product_is_conjugate_symmetric() {
        let a = SemanticState::from_amplitudes(&[c(0.3, 0.4), c(-0.2, 0.9)]).unwrap();
        let b = SemanticState::from_amplitudes(&[c(-0.5, 0.1), c(0.7, 0.2)]).unwrap();
        let ab = inner_product(&a, &b).unwrap();
        let ba = inner_product(&b, &a).unwrap();
        assert!((ab - ba.conj()).norm() < 1e-15);
    }

    #[test]
    fn inner_product_rejects_dim_mismatch() {
        let a = SemanticState::basis(2, 0).unwrap();
        let b = SemanticState::basis(3, 0).unwrap();
        assert!(matches!(
            inner_product(&a, &b).unwrap_err(),
            AqsError::DimMismatch { left: 2, right: 3 }
        ));
    }

    #[test]
    fn superpose_single_term_renormalizes() {
        let e0 = SemanticState::basis(2, 0).unwrap();
        let s = superpose(&[e0.clone()], &[c(5.0, 0.0)]).unwrap();
        assert_eq!(s, e0);
    }

    #[test]
    fn superpose_equal_weights() {
        let e0 = SemanticState::basis(2, 0).unwrap();
        let e1 = SemanticState::basis(2, 1).unwrap();
        let s = superpose(&[e0, e1], &[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        let r = 1.0 / 2.0_f64.sqrt();
        assert!((s.amplitudes()[0].re - r).abs() < 1e-12);
        assert!((s.amplitudes()[1].re - r).abs() < 1e-12);
    }

    #[test]
    fn superpose_destructive_cancellation() {
        let e0 = SemanticState::basis(2, 0).unwrap();
        let err = superpose(&[e0.clone(), e0], &[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap_err();
        assert!(matches!(err, AqsError::ZeroNorm { .. }));
    }

    #[test]
    fn fidelity_examples() {
        let e0 = SemanticState::basis(2, 0).unwrap();
        let e1 = SemanticState::basis(2, 1).unwrap();
        let psi = SemanticState::from_amplitudes(&[c(0.6, 0.3), c(-0.4, 0.1)]).unwrap();
        assert!((fidelity(&psi, &psi).unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(fidelity(&e0, &e1).unwrap(), 0.0);
        // Direct 2-dim arithmetic: |⟨e0, (e0+e1)/√2⟩| = 1/√2.
        let plus = SemanticState::from_amplitudes(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!((fidelity(&e0, &plus).unwrap() - 1.0 / 2.0_f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn fidelity_is_phase_invariant() {
        let a = SemanticState::from_amplitudes(&[c(0.6, 0.3), c(-0.4, 0.1)]).unwrap();
        let phase = C64::from_polar(1.0, 1.234);
        let rotated: Vec<C64> = a.amplitudes().iter().map(|z| z * phase).collect();
        let b = SemanticState::from_amplitudes(&rotated).unwrap();
        assert!((fidelity(&a, &b).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let s = SemanticState::from_amplitudes(&[c(1.0, 2.0), c(-0.5, 0.25), c(0.0, 1.0)]).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert!(json.contains("\"dim\":3"));
        let back: SemanticState = serde_json::from_str(&json).unwrap();
        for (x, y) in s.amplitudes().iter().zip(back.amplitudes()) {
            assert!((x - y).norm() < 1e-15);
        }
    }

    #[test]
    fn json_rejects_bad_lengths() {
        let res: std::result::Result<SemanticState, _> =
            serde_json::from_str(r#"{"dim": 3, "re": [1.0, 0.0], "im": [0.0, 0.0]}"#);
        assert!(res.is_err());
    }
}
