//! Experiment runners behind the `aqslab` binary.
//!
//! Every run resolves a [`ScenarioConfig`], writes it to `config.json` in
//! the output directory, and stamps its SHA-256 plus the master seed into
//! every artifact (a `meta` object in JSON files, a leading `#` comment in
//! CSV files). Identical (config, seed) reruns produce byte-identical
//! artifacts.

mod config;

pub use config::{ExperimentKind, ScenarioConfig};

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::analysis::{
    cci_scores, interference_surrogate, order_effect_test, t_scores, EmbeddingSet,
    EvaluationTable, InterferenceReport, OrderEffectReport,
};
use crate::creativity::{c_matrix, robertson_gap, CValueMatrix, OperatorPortfolio};
use crate::demo;
use crate::error::AqsError;
use crate::experiments::jitter_state;
use crate::hamiltonian::{canonical_portfolio, evolve, Trajectory};
use crate::hilbert::SemanticState;
use crate::operators::{LinearOperator, HERMITIAN_TOL};
use crate::rng::substream;

/// Failures split by exit code: validation problems (exit 1) name the
/// offending field; runtime failures (exit 2) happen after inputs were
/// accepted.
#[derive(Debug)]
pub enum RunError {
    Validation(String),
    Runtime(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Validation(_) => 1,
            RunError::Runtime(_) => 2,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Validation(msg) => write!(f, "validation error: {msg}"),
            RunError::Runtime(msg) => write!(f, "runtime error: {msg}"),
        }
    }
}

impl From<AqsError> for RunError {
    fn from(e: AqsError) -> Self {
        match e {
            AqsError::StateAnnihilated { .. } => RunError::Runtime(e.to_string()),
            _ => RunError::Validation(e.to_string()),
        }
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Runtime(e.to_string())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Meta {
    pub config_sha256: String,
    pub seed: u64,
}

/// Writes artifacts for one run and tracks what was emitted.
struct Emitter {
    out_dir: PathBuf,
    meta: Meta,
    artifacts: Vec<PathBuf>,
}

impl Emitter {
    fn new(config: &ScenarioConfig) -> Result<Self, RunError> {
        fs::create_dir_all(&config.out_dir)?;
        let meta = Meta {
            config_sha256: config.hash(),
            seed: config.seed,
        };
        let mut emitter = Emitter {
            out_dir: config.out_dir.clone(),
            meta,
            artifacts: Vec::new(),
        };
        emitter.write_raw("config.json", &config.to_pretty_json())?;
        Ok(emitter)
    }

    fn write_raw(&mut self, name: &str, content: &str) -> Result<PathBuf, RunError> {
        let path = self.out_dir.join(name);
        fs::write(&path, content)?;
        self.artifacts.push(path.clone());
        Ok(path)
    }

    fn write_json<T: Serialize>(&mut self, name: &str, body: &T) -> Result<PathBuf, RunError> {
        let mut json = serde_json::to_string_pretty(body)
            .map_err(|e| RunError::Runtime(format!("serialize {name}: {e}")))?;
        json.push('\n');
        self.write_raw(name, &json)
    }

    fn write_csv(&mut self, name: &str, header: &str, rows: &str) -> Result<PathBuf, RunError> {
        let content = format!(
            "# config_sha256={} seed={}\n{header}\n{rows}",
            self.meta.config_sha256, self.meta.seed
        );
        self.write_raw(name, &content)
    }
}

/// Runs one experiment end to end; returns the artifact paths written.
pub fn run(config: &ScenarioConfig) -> Result<Vec<PathBuf>, RunError> {
    config.validate()?;
    let mut emitter = Emitter::new(config)?;
    match config.experiment {
        ExperimentKind::Simulate => run_simulate(config, &mut emitter)?,
        ExperimentKind::Cvalue => run_cvalue(config, &mut emitter)?,
        ExperimentKind::OrderTest => run_order_test(config, &mut emitter)?,
        ExperimentKind::Interference => run_interference(config, &mut emitter)?,
        ExperimentKind::Cci => run_cci(config, &mut emitter)?,
        ExperimentKind::Demo => run_demo(config, &mut emitter)?,
    }
    Ok(emitter.artifacts)
}

#[derive(Serialize)]
struct TrajectoryArtifact<'a> {
    meta: &'a Meta,
    trajectory: &'a Trajectory,
}

fn run_simulate(config: &ScenarioConfig, emitter: &mut Emitter) -> Result<(), RunError> {
    let ctx = config.fock()?;
    let portfolio = canonical_portfolio(&ctx)?;
    let p0 = config.initial_params()?;
    let base = ctx.basis_state(&config.occupation())?;
    let s0 = if config.jitter > 0.0 {
        let mut rng = substream(config.seed, "simulate-jitter");
        jitter_state(&base, config.jitter, &mut rng)?
    } else {
        base
    };

    let trajectory = evolve(&s0, &p0, &ctx, &portfolio, &config.generator, config.steps)?;

    let meta = emitter.meta.clone();
    emitter.write_json(
        "trajectory.json",
        &TrajectoryArtifact {
            meta: &meta,
            trajectory: &trajectory,
        },
    )?;

    let mut rows = String::new();
    for (step, cm) in trajectory.c_history.iter().enumerate() {
        for i in 0..cm.size() {
            for j in (i + 1)..cm.size() {
                rows.push_str(&format!(
                    "{step},{},{},{}\n",
                    cm.names[i],
                    cm.names[j],
                    cm.get(i, j)
                ));
            }
        }
    }
    emitter.write_csv("c_history.csv", "step,op_a,op_b,c_value", &rows)?;

    if trajectory.annihilated {
        return Err(RunError::Runtime(format!(
            "state annihilated after {} of {} steps; trajectory flushed up to failure",
            trajectory.completed_steps(),
            config.steps
        )));
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct PortfolioFile {
    names: Vec<String>,
    operators: Vec<LinearOperator>,
}

fn read_to_string(path: &Path, field: &str) -> Result<String, RunError> {
    fs::read_to_string(path).map_err(|e| {
        RunError::Validation(format!("cannot read `{field}` file {}: {e}", path.display()))
    })
}

#[derive(Serialize)]
struct CMatrixArtifact<'a> {
    meta: &'a Meta,
    #[serde(flatten)]
    matrix: &'a CValueMatrix,
}

fn run_cvalue(config: &ScenarioConfig, emitter: &mut Emitter) -> Result<(), RunError> {
    let ctx = config.fock()?;
    let portfolio = match &config.portfolio {
        Some(path) => {
            let content = read_to_string(path, "portfolio")?;
            let file: PortfolioFile = serde_json::from_str(&content)
                .map_err(|e| RunError::Validation(format!("portfolio: {e}")))?;
            OperatorPortfolio::new(file.names, file.operators)?
        }
        None => canonical_portfolio(&ctx)?,
    };
    let state = match &config.state {
        Some(path) => {
            let content = read_to_string(path, "state")?;
            serde_json::from_str::<SemanticState>(&content)
                .map_err(|e| RunError::Validation(format!("state: {e}")))?
        }
        None => ctx.basis_state(&config.occupation())?,
    };

    let matrix = c_matrix(&portfolio, &state)?;
    let meta = emitter.meta.clone();
    emitter.write_json(
        "c_matrix.json",
        &CMatrixArtifact {
            meta: &meta,
            matrix: &matrix,
        },
    )?;

    let mut rows = String::new();
    for i in 0..portfolio.len() {
        for j in (i + 1)..portfolio.len() {
            let hermitian_pair = portfolio.get(i).is_hermitian(HERMITIAN_TOL)
                && portfolio.get(j).is_hermitian(HERMITIAN_TOL);
            let gap = if hermitian_pair {
                format!("{}", robertson_gap(portfolio.get(i), portfolio.get(j), &state)?)
            } else {
                String::new()
            };
            rows.push_str(&format!(
                "{},{},{},{gap}\n",
                portfolio.names()[i],
                portfolio.names()[j],
                matrix.get(i, j)
            ));
        }
    }
    emitter.write_csv("robertson.csv", "op_a,op_b,c_value,robertson_gap", &rows)?;
    Ok(())
}

fn load_embedding_set(path: &Path, field: &str) -> Result<EmbeddingSet, RunError> {
    let content = read_to_string(path, field)?;
    if path.extension().is_some_and(|e| e == "json") {
        serde_json::from_str(&content).map_err(|e| RunError::Validation(format!("{field}: {e}")))
    } else {
        let mut sets = EmbeddingSet::from_csv(&content)?;
        if sets.len() != 1 {
            return Err(RunError::Validation(format!(
                "{field}: expected exactly one label in {}, found {}",
                path.display(),
                sets.len()
            )));
        }
        Ok(sets.remove(0))
    }
}

#[derive(Serialize)]
struct OrderEffectArtifact<'a> {
    meta: &'a Meta,
    #[serde(flatten)]
    report: &'a OrderEffectReport,
}

fn run_order_test(config: &ScenarioConfig, emitter: &mut Emitter) -> Result<(), RunError> {
    let (set_a, set_b) = if config.synthesize {
        config.order_synthesis()?.run(config.seed)?
    } else {
        (
            load_embedding_set(config.set_a.as_ref().expect("validated"), "set_a")?,
            load_embedding_set(config.set_b.as_ref().expect("validated"), "set_b")?,
        )
    };

    let report = order_effect_test(&set_a, &set_b, config.n_permutations, config.seed)?;
    let meta = emitter.meta.clone();
    emitter.write_json(
        "order_effect.json",
        &OrderEffectArtifact {
            meta: &meta,
            report: &report,
        },
    )?;

    let mut rows = String::new();
    for p in &report.projected {
        rows.push_str(&format!("{},{},{}\n", p.label, p.x, p.y));
    }
    emitter.write_csv("pca_scatter.csv", "label,x,y", &rows)?;
    Ok(())
}

#[derive(Deserialize)]
struct TripleRepr {
    #[serde(default)]
    label: Option<String>,
    y: Vec<f64>,
    y_prime: Vec<f64>,
    x: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TriplesFile {
    Many { triples: Vec<TripleRepr> },
    Single(TripleRepr),
}

#[derive(Serialize)]
struct LabeledInterference {
    label: String,
    #[serde(flatten)]
    report: InterferenceReport,
}

#[derive(Serialize)]
struct InterferenceArtifact<'a> {
    meta: &'a Meta,
    reports: &'a [LabeledInterference],
}

fn run_interference(config: &ScenarioConfig, emitter: &mut Emitter) -> Result<(), RunError> {
    let path = config.input.as_ref().expect("validated");
    let content = read_to_string(path, "input")?;
    let parsed: TriplesFile = serde_json::from_str(&content)
        .map_err(|e| RunError::Validation(format!("input: {e}")))?;
    let triples = match parsed {
        TriplesFile::Many { triples } => triples,
        TriplesFile::Single(t) => vec![t],
    };
    if triples.is_empty() {
        return Err(RunError::Validation(
            "input: triples list must be nonempty".into(),
        ));
    }

    let mut reports = Vec::with_capacity(triples.len());
    for (index, t) in triples.iter().enumerate() {
        let report =
            interference_surrogate(&t.y, &t.y_prime, &t.x, config.n_shuffles, config.seed)?;
        reports.push(LabeledInterference {
            label: t.label.clone().unwrap_or_else(|| format!("triple{index}")),
            report,
        });
    }

    let meta = emitter.meta.clone();
    emitter.write_json(
        "interference.json",
        &InterferenceArtifact {
            meta: &meta,
            reports: &reports,
        },
    )?;

    let mut rows = String::new();
    for r in &reports {
        rows.push_str(&format!(
            "{},{},{},{},{}\n",
            r.label,
            r.report.r,
            r.report.r_prime,
            r.report.r_surrogate_mean,
            r.report.r_surrogate_std
        ));
    }
    emitter.write_csv(
        "interference.csv",
        "label,r,r_prime,r_surrogate_mean,r_surrogate_std",
        &rows,
    )?;
    Ok(())
}

#[derive(Serialize)]
struct ScoredModel {
    model: String,
    cx_mean: f64,
    cy_mean: f64,
    cci: f64,
    t_score: f64,
}

#[derive(Serialize)]
struct CciArtifact<'a> {
    meta: &'a Meta,
    models: &'a [ScoredModel],
}

fn run_cci(config: &ScenarioConfig, emitter: &mut Emitter) -> Result<(), RunError> {
    let path = config.input.as_ref().expect("validated");
    let content = read_to_string(path, "input")?;
    let table = EvaluationTable::from_csv(&content)?;
    let scores = cci_scores(&table);
    let cci_values: Vec<f64> = scores.iter().map(|s| s.cci).collect();
    let t = t_scores(&cci_values).map_err(|e| match e {
        AqsError::ConstantVector => RunError::Validation(
            "input: all models have identical CCI, T-scores are undefined".into(),
        ),
        other => other.into(),
    })?;

    let models: Vec<ScoredModel> = scores
        .into_iter()
        .zip(t)
        .map(|(s, t_score)| ScoredModel {
            model: s.model,
            cx_mean: s.cx_mean,
            cy_mean: s.cy_mean,
            cci: s.cci,
            t_score,
        })
        .collect();

    let meta = emitter.meta.clone();
    emitter.write_json(
        "cci.json",
        &CciArtifact {
            meta: &meta,
            models: &models,
        },
    )?;

    let mut rows = String::new();
    for m in &models {
        rows.push_str(&format!(
            "{},{},{},{},{}\n",
            m.model, m.cx_mean, m.cy_mean, m.cci, m.t_score
        ));
    }
    emitter.write_csv("cci.csv", "model,cx_mean,cy_mean,cci,t_score", &rows)?;
    Ok(())
}

#[derive(Serialize)]
struct DemoArtifact<'a> {
    meta: &'a Meta,
    checks: &'a [demo::CheckResult],
}

fn run_demo(config: &ScenarioConfig, emitter: &mut Emitter) -> Result<(), RunError> {
    let results = demo::run_all(config.seed, &config.out_dir.join("demo"));
    for r in &results {
        println!("{r}");
    }
    let meta = emitter.meta.clone();
    emitter.write_json(
        "demo_report.json",
        &DemoArtifact {
            meta: &meta,
            checks: &results,
        },
    )?;
    let failed: Vec<&str> = results
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.name)
        .collect();
    if !failed.is_empty() {
        return Err(RunError::Runtime(format!(
            "demo checks failed: {}",
            failed.join(", ")
        )));
    }
    Ok(())
}
