//! Creative-Hamiltonian construction and the two-layer evolution loop.
//!
//! Each step k alternates two layers. The H-Generator turns the previous
//! coefficients, the current state, and a portfolio of observables into
//! fresh coefficients:
//!
//! ```text
//! ε_i(k) = decay·ε_i(k−1) + alpha·⟨a_i†a_i⟩ + bias_i
//! g_ij(k) = decay·g_ij(k−1) + beta·C_ij     (i ≠ j)
//! ```
//!
//! where C_ij is the pairwise C-value of the portfolio operators at the
//! current state. The S-Generator then applies the assembled operator
//!
//! ```text
//! H(k) = Σ_i ε_i(k) a_i†a_i + Σ_ij g_ij(k) a_i†a_j
//! ```
//!
//! to the state and renormalizes, recording the pre-normalization norm as a
//! diagnostic. Evolution is non-unitary in general; renormalization keeps
//! the ray, which is what every downstream statistic consumes. When the
//! image norm falls below the configured floor the run stops with an
//! explicit annihilation flag instead of injecting noise.

use serde::{Deserialize, Serialize};

use crate::creativity::{c_matrix, CValueMatrix, OperatorPortfolio};
use crate::error::{AqsError, Result};
use crate::hilbert::{C64, SemanticState};
use crate::operators::{FockContext, LinearOperator};

/// Hermiticity tolerance on stored coupling matrices.
const COUPLING_HERMITIAN_TOL: f64 = 1e-12;

/// Per-step coefficients of the creative Hamiltonian.
#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianParams {
    step: usize,
    epsilon: Vec<f64>,
    coupling: Vec<Vec<C64>>,
    hermitian_mode: bool,
}

impl HamiltonianParams {
    pub fn new(
        step: usize,
        epsilon: Vec<f64>,
        coupling: Vec<Vec<C64>>,
        hermitian_mode: bool,
    ) -> Result<Self> {
        let modes = epsilon.len();
        if modes == 0 {
            return Err(AqsError::invalid_field("epsilon", "must be nonempty"));
        }
        if epsilon.iter().any(|e| !e.is_finite()) {
            return Err(AqsError::invalid_field("epsilon", "must be finite"));
        }
        if coupling.len() != modes || coupling.iter().any(|row| row.len() != modes) {
            return Err(AqsError::invalid_field(
                "coupling",
                format!("must be a {modes}×{modes} matrix"),
            ));
        }
        for row in &coupling {
            for z in row {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(AqsError::invalid_field("coupling", "must be finite"));
                }
            }
        }
        if hermitian_mode {
            for i in 0..modes {
                for j in 0..modes {
                    if (coupling[j][i] - coupling[i][j].conj()).norm() > COUPLING_HERMITIAN_TOL {
                        return Err(AqsError::invalid_field(
                            "coupling",
                            "must be Hermitian when hermitian_mode is set",
                        ));
                    }
                }
            }
        }
        Ok(Self {
            step,
            epsilon,
            coupling,
            hermitian_mode,
        })
    }

    /// All-zero coefficients at step 0.
    pub fn zeros(modes: usize, hermitian_mode: bool) -> Result<Self> {
        Self::new(
            0,
            vec![0.0; modes],
            vec![vec![C64::new(0.0, 0.0); modes]; modes],
            hermitian_mode,
        )
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn modes(&self) -> usize {
        self.epsilon.len()
    }

    pub fn epsilon(&self) -> &[f64] {
        &self.epsilon
    }

    pub fn coupling(&self) -> &[Vec<C64>] {
        &self.coupling
    }

    pub fn hermitian_mode(&self) -> bool {
        self.hermitian_mode
    }

    /// Largest coefficient magnitude across ε and g.
    pub fn max_magnitude(&self) -> f64 {
        let eps = self.epsilon.iter().map(|e| e.abs()).fold(0.0, f64::max);
        let g = self
            .coupling
            .iter()
            .flat_map(|row| row.iter().map(|z| z.norm()))
            .fold(0.0, f64::max);
        eps.max(g)
    }
}

#[derive(Serialize, Deserialize)]
struct ParamsRepr {
    step: usize,
    epsilon: Vec<f64>,
    coupling_re: Vec<Vec<f64>>,
    coupling_im: Vec<Vec<f64>>,
    hermitian_mode: bool,
}

impl Serialize for HamiltonianParams {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ParamsRepr {
            step: self.step,
            epsilon: self.epsilon.clone(),
            coupling_re: self
                .coupling
                .iter()
                .map(|row| row.iter().map(|z| z.re).collect())
                .collect(),
            coupling_im: self
                .coupling
                .iter()
                .map(|row| row.iter().map(|z| z.im).collect())
                .collect(),
            hermitian_mode: self.hermitian_mode,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HamiltonianParams {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ParamsRepr::deserialize(deserializer)?;
        if repr.coupling_re.len() != repr.coupling_im.len()
            || repr
                .coupling_re
                .iter()
                .zip(&repr.coupling_im)
                .any(|(r, i)| r.len() != i.len())
        {
            return Err(serde::de::Error::custom("coupling grids must have equal shape"));
        }
        let coupling: Vec<Vec<C64>> = repr
            .coupling_re
            .iter()
            .zip(&repr.coupling_im)
            .map(|(rr, ri)| rr.iter().zip(ri).map(|(&a, &b)| C64::new(a, b)).collect())
            .collect();
        HamiltonianParams::new(repr.step, repr.epsilon, coupling, repr.hermitian_mode)
            .map_err(serde::de::Error::custom)
    }
}

/// Constants of the coefficient update law. The paper-level quantities the
/// feedback uses (occupations, C-values) are fixed; these gains are free.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct GeneratorConfig {
    /// Memory of the previous coefficients, in [0, 1].
    pub decay: f64,
    /// On-site feedback gain (occupation expectations into ε).
    pub alpha: f64,
    /// Coupling feedback gain (pairwise C-values into g).
    pub beta: f64,
    /// Force Hermitian coefficients (symmetrize g after each update).
    pub hermitian_mode: bool,
    /// Image norms below this stop the run as annihilated.
    pub norm_floor: f64,
    /// Optional external per-mode drive added to the ε update.
    pub bias: Option<Vec<f64>>,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self {
            decay: 0.9,
            alpha: 0.5,
            beta: 0.5,
            hermitian_mode: true,
            norm_floor: 1e-10,
            bias: None,
        }
    }
}

impl GeneratorConfig {
    pub fn validate(&self, modes: usize) -> Result<()> {
        if !(0.0..=1.0).contains(&self.decay) {
            return Err(AqsError::invalid_field("decay", "must be in [0, 1]"));
        }
        if !self.alpha.is_finite() || self.alpha < 0.0 {
            return Err(AqsError::invalid_field("alpha", "must be ≥ 0"));
        }
        if !self.beta.is_finite() || self.beta < 0.0 {
            return Err(AqsError::invalid_field("beta", "must be ≥ 0"));
        }
        if !self.norm_floor.is_finite() || self.norm_floor < 1e-12 {
            return Err(AqsError::invalid_field("norm_floor", "must be ≥ 1e-12"));
        }
        if let Some(bias) = &self.bias {
            if bias.len() != modes {
                return Err(AqsError::invalid_field(
                    "bias",
                    format!("needs one entry per mode ({modes}), got {}", bias.len()),
                ));
            }
            if bias.iter().any(|b| !b.is_finite()) {
                return Err(AqsError::invalid_field("bias", "must be finite"));
            }
        }
        Ok(())
    }
}

/// Full record of an evolution run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Trajectory {
    /// Visited states; one more than the number of completed steps.
    pub states: Vec<SemanticState>,
    /// Coefficients used at each completed step.
    pub params_history: Vec<HamiltonianParams>,
    /// Portfolio C-matrix at the state each step started from.
    pub c_history: Vec<CValueMatrix>,
    /// ‖H(k)|ψ_k⟩‖ before renormalization.
    pub prenorm: Vec<f64>,
    /// True when the run stopped early because the state image vanished.
    pub annihilated: bool,
}

impl Trajectory {
    pub fn completed_steps(&self) -> usize {
        self.prenorm.len()
    }

    pub fn final_state(&self) -> &SemanticState {
        self.states.last().expect("trajectory always has the initial state")
    }

    /// Mean over steps of the largest pairwise C-value, for offline study of
    /// how much order-dependence the run maintained.
    pub fn mean_peak_c(&self) -> f64 {
        if self.c_history.is_empty() {
            return 0.0;
        }
        self.c_history.iter().map(|m| m.max()).sum::<f64>() / self.c_history.len() as f64
    }
}

/// Assembles H = Σᵢ εᵢ·aᵢ†aᵢ + Σᵢⱼ gᵢⱼ·aᵢ†aⱼ on the context's Fock space.
///
/// The double sum is added exactly as written: a nonzero gᵢᵢ contributes
/// another aᵢ†aᵢ term on top of εᵢ. The default generator keeps gᵢᵢ = 0, so
/// the redundancy is controlled where coefficients are produced, not here.
pub fn build_hamiltonian(params: &HamiltonianParams, ctx: &FockContext) -> Result<LinearOperator> {
    if params.modes() != ctx.modes() {
        return Err(AqsError::DimMismatch {
            left: params.modes(),
            right: ctx.modes(),
        });
    }
    let dim = ctx.dim();
    let annihilations: Vec<LinearOperator> = (0..ctx.modes())
        .map(|m| ctx.annihilation(m))
        .collect::<Result<_>>()?;
    let creations: Vec<LinearOperator> = annihilations.iter().map(|a| a.adjoint()).collect();

    let mut h = nalgebra::DMatrix::<C64>::zeros(dim, dim);
    for (i, &eps) in params.epsilon().iter().enumerate() {
        if eps != 0.0 {
            let number = creations[i].matrix() * annihilations[i].matrix();
            h += number * C64::new(eps, 0.0);
        }
    }
    for (i, row) in params.coupling().iter().enumerate() {
        for (j, &g) in row.iter().enumerate() {
            if g != C64::new(0.0, 0.0) {
                let hop = creations[i].matrix() * annihilations[j].matrix();
                h += hop * g;
            }
        }
    }
    let op = LinearOperator::from_matrix(h);
    debug_assert!(!params.hermitian_mode() || op.is_hermitian(1e-9));
    Ok(op)
}

/// One state update: |ψ⟩ → normalize(H|ψ⟩), returning the image norm too.
pub fn s_generator_step(
    h: &LinearOperator,
    s: &SemanticState,
    cfg: &GeneratorConfig,
) -> Result<(SemanticState, f64)> {
    let (raw, prenorm) = h.apply(s)?;
    if prenorm < cfg.norm_floor {
        return Err(AqsError::StateAnnihilated {
            norm: prenorm,
            floor: cfg.norm_floor,
        });
    }
    Ok((SemanticState::from_amplitudes(&raw)?, prenorm))
}

fn check_portfolio(ctx: &FockContext, portfolio: &OperatorPortfolio) -> Result<()> {
    if portfolio.len() != ctx.modes() {
        return Err(AqsError::invalid_field(
            "portfolio",
            format!(
                "coupling updates need one observable per mode ({}), got {}",
                ctx.modes(),
                portfolio.len()
            ),
        ));
    }
    if portfolio.dim() != ctx.dim() {
        return Err(AqsError::DimMismatch {
            left: portfolio.dim(),
            right: ctx.dim(),
        });
    }
    Ok(())
}

fn update_params(
    prev: &HamiltonianParams,
    s: &SemanticState,
    numbers: &[LinearOperator],
    cvalues: &CValueMatrix,
    cfg: &GeneratorConfig,
) -> Result<HamiltonianParams> {
    let modes = prev.modes();
    let zero_bias = vec![0.0; modes];
    let bias = cfg.bias.as_deref().unwrap_or(&zero_bias);

    let mut epsilon = Vec::with_capacity(modes);
    for i in 0..modes {
        let occupation = numbers[i].expectation(s)?.re;
        epsilon.push(cfg.decay * prev.epsilon()[i] + cfg.alpha * occupation + bias[i]);
    }

    let mut coupling = vec![vec![C64::new(0.0, 0.0); modes]; modes];
    for i in 0..modes {
        for j in 0..modes {
            let feedback = if i != j {
                cfg.beta * cvalues.get(i, j)
            } else {
                0.0
            };
            coupling[i][j] = prev.coupling()[i][j] * cfg.decay + C64::new(feedback, 0.0);
        }
    }
    if cfg.hermitian_mode {
        // (G + G†)/2; the C feedback is already symmetric, so this only
        // touches whatever asymmetry the initial coupling carried.
        for i in 0..modes {
            for j in (i + 1)..modes {
                let upper = (coupling[i][j] + coupling[j][i].conj()) * 0.5;
                coupling[i][j] = upper;
                coupling[j][i] = upper.conj();
            }
            coupling[i][i] = C64::new(coupling[i][i].re, 0.0);
        }
    }
    HamiltonianParams::new(prev.step() + 1, epsilon, coupling, cfg.hermitian_mode)
}

/// One coefficient update: occupation expectations drive ε, pairwise
/// C-values of the portfolio drive g, both on top of the decayed previous
/// coefficients. The step counter advances by one.
pub fn h_generator_step(
    prev: &HamiltonianParams,
    s: &SemanticState,
    ctx: &FockContext,
    portfolio: &OperatorPortfolio,
    cfg: &GeneratorConfig,
) -> Result<HamiltonianParams> {
    cfg.validate(ctx.modes())?;
    check_portfolio(ctx, portfolio)?;
    let numbers: Vec<LinearOperator> = (0..ctx.modes())
        .map(|m| ctx.number(m))
        .collect::<Result<_>>()?;
    let cvalues = c_matrix(portfolio, s)?;
    update_params(prev, s, &numbers, &cvalues, cfg)
}

/// The per-mode observable set the coupling update defaults to: ladder
/// observables O_i = a_i†a_i + (a_i†a_s + a_s†a_i) with s the cyclic
/// successor of i. Adjacent observables share a mode and genuinely fail to
/// commute; for a single mode O_0 is just the number operator.
pub fn canonical_portfolio(ctx: &FockContext) -> Result<OperatorPortfolio> {
    let modes = ctx.modes();
    let mut names = Vec::with_capacity(modes);
    let mut ops = Vec::with_capacity(modes);
    for i in 0..modes {
        let mut op = ctx.number(i)?;
        if modes > 1 {
            op = op.add(&ctx.hopping(i, (i + 1) % modes)?)?;
        }
        names.push(format!("mode{i}"));
        ops.push(op);
    }
    OperatorPortfolio::new(names, ops)
}

/// Runs the two-layer loop for `steps` steps: coefficient update, operator
/// assembly, state update. Deterministic for fixed inputs. If the state
/// image vanishes the trajectory is returned truncated with `annihilated`
/// set instead of an error.
pub fn evolve(
    s0: &SemanticState,
    p0: &HamiltonianParams,
    ctx: &FockContext,
    portfolio: &OperatorPortfolio,
    cfg: &GeneratorConfig,
    steps: usize,
) -> Result<Trajectory> {
    if steps == 0 {
        return Err(AqsError::invalid_field("steps", "must be ≥ 1"));
    }
    if s0.dim() != ctx.dim() {
        return Err(AqsError::DimMismatch {
            left: s0.dim(),
            right: ctx.dim(),
        });
    }
    if p0.modes() != ctx.modes() {
        return Err(AqsError::DimMismatch {
            left: p0.modes(),
            right: ctx.modes(),
        });
    }
    cfg.validate(ctx.modes())?;
    check_portfolio(ctx, portfolio)?;

    let numbers: Vec<LinearOperator> = (0..ctx.modes())
        .map(|m| ctx.number(m))
        .collect::<Result<_>>()?;

    let mut trajectory = Trajectory {
        states: vec![s0.clone()],
        params_history: Vec::with_capacity(steps),
        c_history: Vec::with_capacity(steps),
        prenorm: Vec::with_capacity(steps),
        annihilated: false,
    };
    let mut params = p0.clone();
    let mut state = s0.clone();

    for _ in 0..steps {
        let cvalues = c_matrix(portfolio, &state)?;
        params = update_params(&params, &state, &numbers, &cvalues, cfg)?;
        let h = build_hamiltonian(&params, ctx)?;
        match s_generator_step(&h, &state, cfg) {
            Ok((next, prenorm)) => {
                trajectory.c_history.push(cvalues);
                trajectory.params_history.push(params.clone());
                trajectory.prenorm.push(prenorm);
                trajectory.states.push(next.clone());
                state = next;
            }
            Err(AqsError::StateAnnihilated { .. }) => {
                trajectory.annihilated = true;
                break;
            }
            Err(other) => return Err(other),
        }
    }
    Ok(trajectory)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::fidelity;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn frozen_cfg() -> GeneratorConfig {
        GeneratorConfig {
            decay: 1.0,
            alpha: 0.0,
            beta: 0.0,
            hermitian_mode: true,
            norm_floor: 1e-10,
            bias: None,
        }
    }

    #[test]
    fn number_hamiltonian_is_diagonal() {
        let ctx = FockContext::new(1, 2).unwrap();
        let params = HamiltonianParams::new(0, vec![1.0], vec![vec![c(0.0, 0.0)]], true).unwrap();
        let h = build_hamiltonian(&params, &ctx).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { i as f64 } else { 0.0 };
                assert!((h.entry(i, j) - c(want, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn zero_coefficients_give_zero_matrix() {
        let ctx = FockContext::new(1, 3).unwrap();
        let params = HamiltonianParams::zeros(1, true).unwrap();
        let h = build_hamiltonian(&params, &ctx).unwrap();
        assert_eq!(h.max_abs(), 0.0);
    }

    #[test]
    fn hopping_hamiltonian_matches_kronecker_oracle() {
        // M=2, cutoff=1, g = [[0,1],[0,0]]: H = a₀†a₁ maps |01⟩ → |10⟩, i.e.
        // the only nonzero entry of the 4×4 matrix is (2, 1).
        let ctx = FockContext::new(2, 1).unwrap();
        let coupling = vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]];
        let params = HamiltonianParams::new(0, vec![0.0, 0.0], coupling, false).unwrap();
        let h = build_hamiltonian(&params, &ctx).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if (i, j) == (2, 1) { 1.0 } else { 0.0 };
                assert!((h.entry(i, j) - c(want, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn hermitian_mode_yields_hermitian_hamiltonian() {
        let ctx = FockContext::new(2, 2).unwrap();
        let coupling = vec![
            vec![c(0.0, 0.0), c(0.3, 0.4)],
            vec![c(0.3, -0.4), c(0.0, 0.0)],
        ];
        let params = HamiltonianParams::new(0, vec![0.7, -1.2], coupling, true).unwrap();
        let h = build_hamiltonian(&params, &ctx).unwrap();
        assert!(h.is_hermitian(1e-9));
    }

    #[test]
    fn params_reject_non_hermitian_coupling_in_hermitian_mode() {
        let coupling = vec![
            vec![c(0.0, 0.0), c(0.3, 0.4)],
            vec![c(0.3, 0.4), c(0.0, 0.0)],
        ];
        assert!(HamiltonianParams::new(0, vec![0.0, 0.0], coupling, true).is_err());
    }

    #[test]
    fn s_generator_identity_and_eigenstate() {
        let ctx = FockContext::new(1, 2).unwrap();
        let cfg = frozen_cfg();

        let id = LinearOperator::identity(3);
        let psi = SemanticState::from_amplitudes(&[c(0.5, 0.1), c(-0.3, 0.6), c(0.2, -0.4)]).unwrap();
        let (next, prenorm) = s_generator_step(&id, &psi, &cfg).unwrap();
        assert!((prenorm - 1.0).abs() < 1e-12);
        assert!((fidelity(&next, &psi).unwrap() - 1.0).abs() < 1e-12);

        // |1⟩ is an eigenvector of the number operator with eigenvalue 1.
        let params = HamiltonianParams::new(0, vec![1.0], vec![vec![c(0.0, 0.0)]], true).unwrap();
        let h = build_hamiltonian(&params, &ctx).unwrap();
        let n1 = ctx.basis_state(&[1]).unwrap();
        let (next, prenorm) = s_generator_step(&h, &n1, &cfg).unwrap();
        assert!((prenorm - 1.0).abs() < 1e-12);
        assert_eq!(next, n1);
    }

    #[test]
    fn s_generator_annihilates_vacuum_under_number_operator() {
        let ctx = FockContext::new(1, 2).unwrap();
        let params = HamiltonianParams::new(0, vec![1.0], vec![vec![c(0.0, 0.0)]], true).unwrap();
        let h = build_hamiltonian(&params, &ctx).unwrap();
        let vacuum = ctx.basis_state(&[0]).unwrap();
        assert!(matches!(
            s_generator_step(&h, &vacuum, &frozen_cfg()).unwrap_err(),
            AqsError::StateAnnihilated { .. }
        ));
    }

    #[test]
    fn h_generator_frozen_keeps_params() {
        let ctx = FockContext::new(2, 1).unwrap();
        let portfolio = canonical_portfolio(&ctx).unwrap();
        let coupling = vec![
            vec![c(0.1, 0.0), c(0.2, 0.3)],
            vec![c(0.2, -0.3), c(-0.4, 0.0)],
        ];
        let prev = HamiltonianParams::new(3, vec![1.5, -0.5], coupling, true).unwrap();
        let state = ctx.basis_state(&[0, 1]).unwrap();
        let next = h_generator_step(&prev, &state, &ctx, &portfolio, &frozen_cfg()).unwrap();
        assert_eq!(next.step(), 4);
        assert_eq!(next.epsilon(), prev.epsilon());
        assert_eq!(next.coupling(), prev.coupling());
    }

    #[test]
    fn h_generator_occupation_feedback() {
        // decay=0, alpha=1 at |1⟩: ε becomes the occupation ⟨n⟩ = 1.
        let ctx = FockContext::new(1, 2).unwrap();
        let portfolio = canonical_portfolio(&ctx).unwrap();
        let prev = HamiltonianParams::zeros(1, true).unwrap();
        let cfg = GeneratorConfig {
            decay: 0.0,
            alpha: 1.0,
            beta: 0.0,
            ..frozen_cfg()
        };
        let state = ctx.basis_state(&[1]).unwrap();
        let next = h_generator_step(&prev, &state, &ctx, &portfolio, &cfg).unwrap();
        assert!((next.epsilon()[0] - 1.0).abs() < 1e-12);
        assert_eq!(next.coupling()[0][0], c(0.0, 0.0));
    }

    #[test]
    fn h_generator_commuting_portfolio_zeroes_coupling() {
        // Number operators commute pairwise, so every C-value vanishes and
        // with decay=0 the coupling collapses to zero.
        let ctx = FockContext::new(2, 1).unwrap();
        let numbers = OperatorPortfolio::new(
            vec!["n0".into(), "n1".into()],
            vec![ctx.number(0).unwrap(), ctx.number(1).unwrap()],
        )
        .unwrap();
        let coupling = vec![
            vec![c(0.5, 0.0), c(0.1, 0.2)],
            vec![c(0.1, -0.2), c(0.5, 0.0)],
        ];
        let prev = HamiltonianParams::new(0, vec![1.0, 1.0], coupling, true).unwrap();
        let cfg = GeneratorConfig {
            decay: 0.0,
            alpha: 0.0,
            beta: 1.0,
            ..frozen_cfg()
        };
        let state = ctx.basis_state(&[0, 1]).unwrap();
        let next = h_generator_step(&prev, &state, &ctx, &numbers, &cfg).unwrap();
        for row in next.coupling() {
            for z in row {
                assert_eq!(*z, c(0.0, 0.0));
            }
        }
    }

    #[test]
    fn h_generator_bias_drives_epsilon() {
        let ctx = FockContext::new(1, 2).unwrap();
        let portfolio = canonical_portfolio(&ctx).unwrap();
        let prev = HamiltonianParams::zeros(1, true).unwrap();
        let cfg = GeneratorConfig {
            decay: 0.0,
            alpha: 0.0,
            beta: 0.0,
            bias: Some(vec![0.7]),
            ..frozen_cfg()
        };
        let state = ctx.basis_state(&[1]).unwrap();
        let next = h_generator_step(&prev, &state, &ctx, &portfolio, &cfg).unwrap();
        assert!((next.epsilon()[0] - 0.7).abs() < 1e-15);
    }

    #[test]
    fn evolve_frozen_eigenstate_is_stationary() {
        let ctx = FockContext::new(2, 1).unwrap();
        let portfolio = canonical_portfolio(&ctx).unwrap();
        let p0 = HamiltonianParams::new(
            0,
            vec![1.0, 1.0],
            vec![vec![c(0.0, 0.0); 2]; 2],
            true,
        )
        .unwrap();
        let s0 = ctx.basis_state(&[1, 1]).unwrap();
        let t = evolve(&s0, &p0, &ctx, &portfolio, &frozen_cfg(), 5).unwrap();
        assert!(!t.annihilated);
        assert_eq!(t.states.len(), 6);
        assert_eq!(t.params_history.len(), 5);
        assert_eq!(t.c_history.len(), 5);
        for s in &t.states {
            assert!((fidelity(s, &s0).unwrap() - 1.0).abs() < 1e-12);
        }
        for &p in &t.prenorm {
            assert!(p > 0.0);
        }
    }

    #[test]
    fn evolve_single_step_equals_manual_composition() {
        let ctx = FockContext::new(2, 1).unwrap();
        let portfolio = canonical_portfolio(&ctx).unwrap();
        let cfg = GeneratorConfig {
            decay: 0.5,
            alpha: 0.3,
            beta: 0.2,
            ..frozen_cfg()
        };
        let p0 = HamiltonianParams::zeros(2, true).unwrap();
        let s0 = SemanticState::from_amplitudes(&[c(0.1, 0.0), c(0.7, 0.1), c(0.0, -0.5), c(0.2, 0.2)])
            .unwrap();

        let t = evolve(&s0, &p0, &ctx, &portfolio, &cfg, 1).unwrap();

        let p1 = h_generator_step(&p0, &s0, &ctx, &portfolio, &cfg).unwrap();
        let h = build_hamiltonian(&p1, &ctx).unwrap();
        let (s1, prenorm) = s_generator_step(&h, &s0, &cfg).unwrap();
        assert_eq!(t.params_history[0], p1);
        assert_eq!(t.states[1], s1);
        assert_eq!(t.prenorm[0], prenorm);
    }

    #[test]
    fn evolve_is_bitwise_deterministic() {
        let ctx = FockContext::new(2, 2).unwrap();
        let portfolio = canonical_portfolio(&ctx).unwrap();
        let cfg = GeneratorConfig::default();
        let p0 = HamiltonianParams::zeros(2, true).unwrap();
        let s0 = SemanticState::from_amplitudes(&[
            c(0.3, 0.1), c(0.0, 0.2), c(0.5, 0.0), c(0.1, -0.1),
            c(0.0, 0.0), c(0.2, 0.4), c(0.0, 0.0), c(0.3, 0.0), c(0.1, 0.1),
        ])
        .unwrap();
        let a = evolve(&s0, &p0, &ctx, &portfolio, &cfg, 12).unwrap();
        let b = evolve(&s0, &p0, &ctx, &portfolio, &cfg, 12).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn evolve_truncates_on_annihilation() {
        // Pure number Hamiltonian from the vacuum: first step annihilates,
        // so nothing is recorded and the flag is set.
        let ctx = FockContext::new(1, 2).unwrap();
        let portfolio = canonical_portfolio(&ctx).unwrap();
        let p0 = HamiltonianParams::new(0, vec![1.0], vec![vec![c(0.0, 0.0)]], true).unwrap();
        let s0 = ctx.basis_state(&[0]).unwrap();
        let t = evolve(&s0, &p0, &ctx, &portfolio, &frozen_cfg(), 4).unwrap();
        assert!(t.annihilated);
        assert_eq!(t.states.len(), 1);
        assert_eq!(t.completed_steps(), 0);
    }

    #[test]
    fn noncommutative_branching_from_basis_start() {
        // Frozen 4-dim oracle: H1 = diag on-site (ε = [1,2]),
        // H2 = coupling-only with g = [[0,1],[1,1]]. From |01⟩:
        //   H2·H1 |01⟩ → ray (|01⟩+|10⟩)/√2
        //   H1·H2 |01⟩ → ray (2|01⟩+|10⟩)/√5
        // fidelity = 3/√10 ≈ 0.9487 — the two orders genuinely branch.
        let ctx = FockContext::new(2, 1).unwrap();
        let cfg = frozen_cfg();
        let h1 = build_hamiltonian(
            &HamiltonianParams::new(0, vec![1.0, 2.0], vec![vec![c(0.0, 0.0); 2]; 2], true).unwrap(),
            &ctx,
        )
        .unwrap();
        let g = vec![
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(1.0, 0.0)],
        ];
        let h2 = build_hamiltonian(
            &HamiltonianParams::new(0, vec![0.0, 0.0], g, true).unwrap(),
            &ctx,
        )
        .unwrap();

        let s0 = ctx.basis_state(&[0, 1]).unwrap();
        let (after_h1, _) = s_generator_step(&h1, &s0, &cfg).unwrap();
        let (order_a, _) = s_generator_step(&h2, &after_h1, &cfg).unwrap();
        let (after_h2, _) = s_generator_step(&h2, &s0, &cfg).unwrap();
        let (order_b, _) = s_generator_step(&h1, &after_h2, &cfg).unwrap();

        let f = fidelity(&order_a, &order_b).unwrap();
        assert!((f - 3.0 / 10.0_f64.sqrt()).abs() < 1e-12);
        assert!(f < 1.0 - 1e-6);
    }

    #[test]
    fn commuting_hamiltonians_are_order_insensitive() {
        // Diagonal Hamiltonians commute; any application order of the fixed
        // multiset lands on the same ray.
        let ctx = FockContext::new(2, 1).unwrap();
        let cfg = frozen_cfg();
        let build_diag = |eps: Vec<f64>| {
            build_hamiltonian(
                &HamiltonianParams::new(0, eps, vec![vec![c(0.0, 0.0); 2]; 2], true).unwrap(),
                &ctx,
            )
            .unwrap()
        };
        let hs = [build_diag(vec![1.0, 2.0]), build_diag(vec![3.0, 0.5]), build_diag(vec![0.2, 1.7])];
        let s0 = SemanticState::from_amplitudes(&[c(0.4, 0.1), c(0.6, 0.0), c(0.2, -0.3), c(0.5, 0.2)])
            .unwrap();

        let run = |order: &[usize]| {
            let mut s = s0.clone();
            for &k in order {
                s = s_generator_step(&hs[k], &s, &cfg).unwrap().0;
            }
            s
        };
        let reference = run(&[0, 1, 2]);
        for order in [[0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let other = run(&order);
            assert!(fidelity(&reference, &other).unwrap() >= 1.0 - 1e-9);
        }
    }

    #[test]
    fn coefficients_stay_bounded_under_decay() {
        let ctx = FockContext::new(2, 2).unwrap();
        let portfolio = canonical_portfolio(&ctx).unwrap();
        let cfg = GeneratorConfig {
            decay: 0.9,
            alpha: 0.4,
            beta: 0.4,
            ..frozen_cfg()
        };
        let p0 = HamiltonianParams::new(
            0,
            vec![2.0, -1.0],
            vec![vec![c(0.0, 0.0); 2]; 2],
            true,
        )
        .unwrap();
        let s0 = SemanticState::from_amplitudes(&[
            c(0.3, 0.1), c(0.0, 0.2), c(0.5, 0.0), c(0.1, -0.1),
            c(0.0, 0.0), c(0.2, 0.4), c(0.0, 0.0), c(0.3, 0.0), c(0.1, 0.1),
        ])
        .unwrap();
        let t = evolve(&s0, &p0, &ctx, &portfolio, &cfg, 200).unwrap();
        assert!(!t.annihilated);

        // Geometric-series bound: feedback terms are bounded by
        // alpha·max⟨n⟩ + beta·maxC, occupations by the cutoff, so magnitudes
        // stay within feedback/(1−decay) plus the decayed initial value.
        let max_c = t.c_history.iter().map(|m| m.max()).fold(0.0, f64::max);
        let feedback = cfg.alpha * ctx.cutoff() as f64 + cfg.beta * max_c;
        let bound = feedback / (1.0 - cfg.decay) + p0.max_magnitude() + 1e-9;
        for params in &t.params_history {
            assert!(
                params.max_magnitude() <= bound,
                "coefficients escaped the decay bound: {} > {bound}",
                params.max_magnitude()
            );
        }
    }

    #[test]
    fn params_json_round_trip() {
        let coupling = vec![
            vec![c(0.1, 0.0), c(0.2, 0.3)],
            vec![c(0.2, -0.3), c(-0.4, 0.0)],
        ];
        let p = HamiltonianParams::new(7, vec![1.5, -0.5], coupling, true).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        let back: HamiltonianParams = serde_json::from_str(&json).unwrap();
        assert_eq!(p, back);
    }
}
