//! Scenario configuration: one JSON file per experiment, every field
//! overridable from the command line, hashed into every artifact so a run
//! can be traced back to the exact inputs that produced it.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{AqsError, Result};
use crate::experiments::OrderSynthesis;
use crate::hamiltonian::{GeneratorConfig, HamiltonianParams};
use crate::hilbert::C64;
use crate::operators::FockContext;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    Simulate,
    Cvalue,
    OrderTest,
    Interference,
    Cci,
    Demo,
}

impl std::fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            ExperimentKind::Simulate => "simulate",
            ExperimentKind::Cvalue => "cvalue",
            ExperimentKind::OrderTest => "order-test",
            ExperimentKind::Interference => "interference",
            ExperimentKind::Cci => "cci",
            ExperimentKind::Demo => "demo",
        };
        write!(f, "{name}")
    }
}

fn default_out_dir() -> PathBuf {
    PathBuf::from("out")
}

fn default_modes() -> usize {
    2
}

fn default_cutoff() -> usize {
    2
}

fn default_steps() -> usize {
    8
}

fn default_jitter() -> f64 {
    1e-3
}

fn default_runs() -> usize {
    100
}

fn default_resamples() -> usize {
    1000
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub experiment: ExperimentKind,
    /// Master seed; every stochastic phase derives a named substream.
    pub seed: u64,
    #[serde(default = "default_out_dir")]
    pub out_dir: PathBuf,
    #[serde(default = "default_modes")]
    pub modes: usize,
    #[serde(default = "default_cutoff")]
    pub cutoff: usize,
    #[serde(default = "default_steps")]
    pub steps: usize,
    /// Occupation tuple of the starting basis state; defaults to a single
    /// quantum in the last mode.
    #[serde(default)]
    pub initial_occupation: Option<Vec<usize>>,
    /// Initial on-site coefficients; default 1, 2, …, M. Doubles as the
    /// ε-only Hamiltonian of synthesized order tests.
    #[serde(default)]
    pub initial_epsilon: Option<Vec<f64>>,
    /// Initial coupling grid; default zero. Doubles as the coupling-only
    /// Hamiltonian of synthesized order tests (default: hopping chain plus
    /// one diagonal corner term).
    #[serde(default)]
    pub initial_coupling_re: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pub initial_coupling_im: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pub generator: GeneratorConfig,
    /// Scale of the complex Gaussian perturbation applied to starting
    /// states (0 for an exact basis start).
    #[serde(default = "default_jitter")]
    pub jitter: f64,
    #[serde(default = "default_runs")]
    pub runs_per_order: usize,
    #[serde(default = "default_resamples")]
    pub n_permutations: usize,
    #[serde(default = "default_resamples")]
    pub n_shuffles: usize,
    /// Embedding sets for `order-test` (JSON or CSV).
    #[serde(default)]
    pub set_a: Option<PathBuf>,
    #[serde(default)]
    pub set_b: Option<PathBuf>,
    /// Synthesize the order-test sets from swapped-order simulations
    /// instead of loading them.
    #[serde(default)]
    pub synthesize: bool,
    /// Input file: interference triples JSON, or evaluation-table CSV.
    #[serde(default)]
    pub input: Option<PathBuf>,
    /// Operator portfolio JSON for `cvalue` (default: the canonical
    /// per-mode ladder observables).
    #[serde(default)]
    pub portfolio: Option<PathBuf>,
    /// State JSON for `cvalue` (default: the starting basis state).
    #[serde(default)]
    pub state: Option<PathBuf>,
}

impl ScenarioConfig {
    pub fn new(experiment: ExperimentKind, seed: u64) -> Self {
        Self {
            experiment,
            seed,
            out_dir: default_out_dir(),
            modes: default_modes(),
            cutoff: default_cutoff(),
            steps: default_steps(),
            initial_occupation: None,
            initial_epsilon: None,
            initial_coupling_re: None,
            initial_coupling_im: None,
            generator: GeneratorConfig::default(),
            jitter: default_jitter(),
            runs_per_order: default_runs(),
            n_permutations: default_resamples(),
            n_shuffles: default_resamples(),
            set_a: None,
            set_b: None,
            synthesize: false,
            input: None,
            portfolio: None,
            state: None,
        }
    }

    pub fn from_json(content: &str) -> Result<Self> {
        serde_json::from_str(content)
            .map_err(|e| AqsError::invalid_field("config", e.to_string()))
    }

    pub fn to_pretty_json(&self) -> String {
        let mut json = serde_json::to_string_pretty(self).expect("config serializes");
        json.push('\n');
        json
    }

    /// SHA-256 of the serialized config, hex-encoded. Embedded in every
    /// artifact this run emits.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.to_pretty_json().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn validate(&self) -> Result<()> {
        self.fock()?;
        if !self.jitter.is_finite() || self.jitter < 0.0 {
            return Err(AqsError::invalid_field("jitter", "must be ≥ 0"));
        }
        self.generator.validate(self.modes)?;
        if let Some(occ) = &self.initial_occupation {
            if occ.len() != self.modes {
                return Err(AqsError::invalid_field(
                    "initial_occupation",
                    format!("needs one entry per mode ({}), got {}", self.modes, occ.len()),
                ));
            }
            if let Some(&n) = occ.iter().find(|&&n| n > self.cutoff) {
                return Err(AqsError::invalid_field(
                    "initial_occupation",
                    format!("occupation {n} exceeds cutoff {}", self.cutoff),
                ));
            }
        }
        if let Some(eps) = &self.initial_epsilon {
            if eps.len() != self.modes {
                return Err(AqsError::invalid_field(
                    "initial_epsilon",
                    format!("needs one entry per mode ({}), got {}", self.modes, eps.len()),
                ));
            }
        }
        for (field, grid) in [
            ("initial_coupling_re", &self.initial_coupling_re),
            ("initial_coupling_im", &self.initial_coupling_im),
        ] {
            if let Some(grid) = grid {
                if grid.len() != self.modes || grid.iter().any(|row| row.len() != self.modes) {
                    return Err(AqsError::invalid_field(
                        field,
                        format!("must be a {0}×{0} grid", self.modes),
                    ));
                }
            }
        }
        match self.experiment {
            ExperimentKind::Simulate => {
                if self.steps == 0 {
                    return Err(AqsError::invalid_field("steps", "must be ≥ 1"));
                }
            }
            ExperimentKind::OrderTest => {
                if self.n_permutations == 0 {
                    return Err(AqsError::invalid_field("n_permutations", "must be ≥ 1"));
                }
                if self.synthesize {
                    if self.runs_per_order < 3 {
                        return Err(AqsError::invalid_field(
                            "runs_per_order",
                            "must be ≥ 3 so each set has enough points",
                        ));
                    }
                } else if self.set_a.is_none() || self.set_b.is_none() {
                    return Err(AqsError::invalid_field(
                        "set_a/set_b",
                        "both are required unless `synthesize` is set",
                    ));
                }
            }
            ExperimentKind::Interference => {
                if self.n_shuffles == 0 {
                    return Err(AqsError::invalid_field("n_shuffles", "must be ≥ 1"));
                }
                if self.input.is_none() {
                    return Err(AqsError::invalid_field(
                        "input",
                        "interference needs a triples JSON file",
                    ));
                }
            }
            ExperimentKind::Cci => {
                if self.input.is_none() {
                    return Err(AqsError::invalid_field(
                        "input",
                        "cci needs an evaluation-table CSV file",
                    ));
                }
            }
            ExperimentKind::Cvalue | ExperimentKind::Demo => {}
        }
        Ok(())
    }

    pub fn fock(&self) -> Result<FockContext> {
        FockContext::new(self.modes, self.cutoff)
    }

    pub fn occupation(&self) -> Vec<usize> {
        self.initial_occupation.clone().unwrap_or_else(|| {
            let mut occ = vec![0; self.modes];
            occ[self.modes - 1] = 1;
            occ
        })
    }

    pub fn epsilon(&self) -> Vec<f64> {
        self.initial_epsilon
            .clone()
            .unwrap_or_else(|| (1..=self.modes).map(|k| k as f64).collect())
    }

    fn coupling_or(&self, default: Vec<Vec<C64>>) -> Vec<Vec<C64>> {
        match (&self.initial_coupling_re, &self.initial_coupling_im) {
            (None, None) => default,
            (re, im) => {
                let zero = vec![vec![0.0; self.modes]; self.modes];
                let re = re.as_ref().unwrap_or(&zero);
                let im = im.as_ref().unwrap_or(&zero);
                (0..self.modes)
                    .map(|i| (0..self.modes).map(|j| C64::new(re[i][j], im[i][j])).collect())
                    .collect()
            }
        }
    }

    /// Step-0 coefficients for `simulate`: configured ε, zero coupling
    /// unless a grid was supplied.
    pub fn initial_params(&self) -> Result<HamiltonianParams> {
        let zero = vec![vec![C64::new(0.0, 0.0); self.modes]; self.modes];
        HamiltonianParams::new(
            0,
            self.epsilon(),
            self.coupling_or(zero),
            self.generator.hermitian_mode,
        )
    }

    /// Swapped-order synthesis setup: H1 from the ε field only, H2 from the
    /// coupling field only (default: nearest-neighbour hopping chain with a
    /// diagonal corner term, which genuinely branches from a basis start).
    pub fn order_synthesis(&self) -> Result<OrderSynthesis> {
        let ctx = self.fock()?;
        let zero = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        let h1 = HamiltonianParams::new(
            0,
            self.epsilon(),
            vec![vec![zero; self.modes]; self.modes],
            true,
        )?;
        let mut default_g = vec![vec![zero; self.modes]; self.modes];
        if self.modes > 1 {
            for i in 0..self.modes - 1 {
                default_g[i][i + 1] = one;
                default_g[i + 1][i] = one;
            }
        }
        default_g[self.modes - 1][self.modes - 1] = one;
        let h2 = HamiltonianParams::new(
            0,
            vec![0.0; self.modes],
            self.coupling_or(default_g),
            self.generator.hermitian_mode,
        )?;
        Ok(OrderSynthesis {
            ctx,
            h1,
            h2,
            occupation: self.occupation(),
            jitter: self.jitter,
            runs_per_order: self.runs_per_order,
            norm_floor: self.generator.norm_floor,
        })
    }
}
