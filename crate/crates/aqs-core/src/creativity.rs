//! Creativity Values and Robertson lower bounds.
//!
//! The scalar C = |⟨ψ|[A,B]|ψ⟩| measures how much the application order of
//! A and B matters at the state |ψ⟩. It is zero whenever the operators
//! commute, but the converse does not hold: a noncommuting pair can still
//! score zero at particular states. For Hermitian A, B the Robertson
//! inequality σ_A·σ_B ≥ C/2 turns the C-value into a lower bound on the
//! joint dispersion the pair induces.

use serde::{Deserialize, Serialize};

use crate::error::{AqsError, Result};
use crate::hilbert::SemanticState;
use crate::operators::{LinearOperator, HERMITIAN_TOL};

/// C = |⟨ψ|[A,B]|ψ⟩|. Symmetric in (a, b): the two commutators are exact
/// entrywise negations, so the absolute expectations agree bit for bit.
pub fn c_value(a: &LinearOperator, b: &LinearOperator, s: &SemanticState) -> Result<f64> {
    Ok(a.commutator(b)?.expectation(s)?.norm())
}

/// σ_A·σ_B − C/2 for Hermitian a, b. The Robertson relation asserts this
/// is nonnegative (up to roundoff) for every state.
pub fn robertson_gap(a: &LinearOperator, b: &LinearOperator, s: &SemanticState) -> Result<f64> {
    for op in [a, b] {
        let deviation = op.hermitian_deviation();
        if deviation > HERMITIAN_TOL {
            return Err(AqsError::NotHermitian {
                deviation,
                tol: HERMITIAN_TOL,
            });
        }
    }
    let sigma_a = a.std_dev(s)?;
    let sigma_b = b.std_dev(s)?;
    Ok(sigma_a * sigma_b - c_value(a, b, s)? / 2.0)
}

/// Named set of same-dimension operators.
#[derive(Clone, Debug)]
pub struct OperatorPortfolio {
    names: Vec<String>,
    ops: Vec<LinearOperator>,
}

impl OperatorPortfolio {
    pub fn new(names: Vec<String>, ops: Vec<LinearOperator>) -> Result<Self> {
        if ops.is_empty() || names.len() != ops.len() {
            return Err(AqsError::invalid_field(
                "names",
                format!(
                    "need equal nonempty lists, got {} names and {} operators",
                    names.len(),
                    ops.len()
                ),
            ));
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(AqsError::invalid_field(
                    "names",
                    format!("duplicate operator name `{name}`"),
                ));
            }
        }
        let dim = ops[0].dim();
        for op in &ops {
            if op.dim() != dim {
                return Err(AqsError::DimMismatch {
                    left: dim,
                    right: op.dim(),
                });
            }
        }
        Ok(Self { names, ops })
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.ops[0].dim()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn ops(&self) -> &[LinearOperator] {
        &self.ops
    }

    pub fn get(&self, index: usize) -> &LinearOperator {
        &self.ops[index]
    }
}

/// Pairwise C-value landscape of a portfolio at one state: symmetric,
/// zero-diagonal, entrywise nonnegative.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CValueMatrix {
    pub names: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

impl CValueMatrix {
    pub fn size(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i][j]
    }

    /// Largest entry.
    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .flat_map(|row| row.iter().copied())
            .fold(0.0, f64::max)
    }
}

/// values[i][j] = c_value(ops[i], ops[j], s). The upper triangle is computed
/// and mirrored, so symmetry is exact by construction.
pub fn c_matrix(p: &OperatorPortfolio, s: &SemanticState) -> Result<CValueMatrix> {
    if p.dim() != s.dim() {
        return Err(AqsError::DimMismatch {
            left: p.dim(),
            right: s.dim(),
        });
    }
    let n = p.len();
    let mut values = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = c_value(p.get(i), p.get(j), s)?;
            values[i][j] = v;
            values[j][i] = v;
        }
    }
    Ok(CValueMatrix {
        names: p.names().to_vec(),
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::C64;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn pauli_x() -> LinearOperator {
        LinearOperator::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]])
            .unwrap()
    }

    fn pauli_y() -> LinearOperator {
        LinearOperator::from_rows(&[vec![c(0.0, 0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]])
            .unwrap()
    }

    fn pauli_z() -> LinearOperator {
        LinearOperator::from_rows(&[vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(-1.0, 0.0)]])
            .unwrap()
    }

    fn e0() -> SemanticState {
        SemanticState::basis(2, 0).unwrap()
    }

    fn plus() -> SemanticState {
        SemanticState::from_amplitudes(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap()
    }

    #[test]
    fn commuting_diagonals_score_zero() {
        let d1 = LinearOperator::from_fn(2, |i, j| if i == j { c(1.5 + i as f64, 0.0) } else { c(0.0, 0.0) })
            .unwrap();
        let d2 = LinearOperator::from_fn(2, |i, j| if i == j { c(-0.3 * i as f64, 0.0) } else { c(0.0, 0.0) })
            .unwrap();
        let psi = SemanticState::from_amplitudes(&[c(0.6, 0.3), c(-0.4, 0.1)]).unwrap();
        assert_eq!(c_value(&d1, &d2, &psi).unwrap(), 0.0);
    }

    #[test]
    fn pauli_c_value_oracle() {
        // [σx,σy] = 2iσz and ⟨σz⟩ = 1 at e₀, so C = 2.
        assert!((c_value(&pauli_x(), &pauli_y(), &e0()).unwrap() - 2.0).abs() < 1e-12);
        // ⟨σz⟩ = 0 on the equal superposition, so C = 0 despite [σx,σy] ≠ 0.
        assert!(c_value(&pauli_x(), &pauli_y(), &plus()).unwrap() < 1e-12);
    }

    #[test]
    fn c_value_is_exactly_symmetric() {
        let psi = SemanticState::from_amplitudes(&[c(0.6, 0.3), c(-0.4, 0.1)]).unwrap();
        let a = LinearOperator::from_rows(&[
            vec![c(0.2, 0.1), c(-1.0, 0.5)],
            vec![c(0.7, -0.3), c(0.4, 0.0)],
        ])
        .unwrap();
        let b = pauli_y();
        let ab = c_value(&a, &b, &psi).unwrap();
        let ba = c_value(&b, &a, &psi).unwrap();
        assert_eq!(ab, ba);
    }

    #[test]
    fn scale_covariance() {
        let psi = SemanticState::from_amplitudes(&[c(0.6, 0.3), c(-0.4, 0.1)]).unwrap();
        let a = pauli_x();
        let b = pauli_y();
        let base = c_value(&a, &b, &psi).unwrap();
        for alpha in [0.5, -2.0, 3.25] {
            let scaled = c_value(&a.scale(c(alpha, 0.0)), &b, &psi).unwrap();
            assert!((scaled - alpha.abs() * base).abs() < 1e-9);
        }
    }

    #[test]
    fn robertson_equality_case() {
        // σ_x = σ_y = 1 at e₀ and C = 2, so the gap closes: 1·1 − 2/2 = 0.
        let gap = robertson_gap(&pauli_x(), &pauli_y(), &e0()).unwrap();
        assert!(gap.abs() < 1e-12);
    }

    #[test]
    fn robertson_identity_case() {
        let psi = SemanticState::from_amplitudes(&[c(0.6, 0.3), c(-0.4, 0.1)]).unwrap();
        let id = LinearOperator::identity(2);
        let gap = robertson_gap(&id, &pauli_x(), &psi).unwrap();
        assert!(gap.abs() < 1e-9);
    }

    #[test]
    fn robertson_commuting_diagonals_nonnegative() {
        let d1 = LinearOperator::from_fn(3, |i, j| if i == j { c(i as f64, 0.0) } else { c(0.0, 0.0) })
            .unwrap();
        let d2 = LinearOperator::from_fn(3, |i, j| if i == j { c(2.0 - i as f64, 0.0) } else { c(0.0, 0.0) })
            .unwrap();
        let psi =
            SemanticState::from_amplitudes(&[c(0.5, 0.1), c(-0.3, 0.6), c(0.2, -0.4)]).unwrap();
        let gap = robertson_gap(&d1, &d2, &psi).unwrap();
        assert!(gap >= -1e-9);
        assert_eq!(c_value(&d1, &d2, &psi).unwrap(), 0.0);
    }

    #[test]
    fn robertson_rejects_non_hermitian() {
        let raising = LinearOperator::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert!(matches!(
            robertson_gap(&raising, &pauli_x(), &e0()).unwrap_err(),
            AqsError::NotHermitian { .. }
        ));
    }

    #[test]
    fn portfolio_validation() {
        let ops = vec![pauli_x(), pauli_y()];
        assert!(OperatorPortfolio::new(vec!["x".into(), "x".into()], ops.clone()).is_err());
        assert!(OperatorPortfolio::new(vec!["x".into()], ops.clone()).is_err());
        let p = OperatorPortfolio::new(vec!["x".into(), "y".into()], ops).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.dim(), 2);
    }

    #[test]
    fn c_matrix_pauli_landscape() {
        // At e₀: C(x,y) = 2 while ⟨[σx,σz]⟩ = ⟨−2iσy⟩ = 0 and
        // ⟨[σy,σz]⟩ = ⟨2iσx⟩ = 0.
        let p = OperatorPortfolio::new(
            vec!["x".into(), "y".into(), "z".into()],
            vec![pauli_x(), pauli_y(), pauli_z()],
        )
        .unwrap();
        let m = c_matrix(&p, &e0()).unwrap();
        assert!((m.get(0, 1) - 2.0).abs() < 1e-12);
        assert!(m.get(0, 2).abs() < 1e-12);
        assert!(m.get(1, 2).abs() < 1e-12);
        for i in 0..3 {
            assert_eq!(m.get(i, i), 0.0);
            for j in 0..3 {
                assert_eq!(m.get(i, j), m.get(j, i));
                assert!(m.get(i, j) >= 0.0);
            }
        }
    }

    #[test]
    fn c_matrix_degenerate_shapes() {
        let diag = |k: f64| {
            LinearOperator::from_fn(2, move |i, j| if i == j { c(k * (i as f64 + 1.0), 0.0) } else { c(0.0, 0.0) })
                .unwrap()
        };
        let p = OperatorPortfolio::new(
            vec!["d1".into(), "d2".into(), "d3".into()],
            vec![diag(1.0), diag(-2.0), diag(0.5)],
        )
        .unwrap();
        let m = c_matrix(&p, &e0()).unwrap();
        assert!(m.max() == 0.0);

        let single = OperatorPortfolio::new(vec!["x".into()], vec![pauli_x()]).unwrap();
        let m = c_matrix(&single, &e0()).unwrap();
        assert_eq!(m.size(), 1);
        assert_eq!(m.get(0, 0), 0.0);
    }
}
