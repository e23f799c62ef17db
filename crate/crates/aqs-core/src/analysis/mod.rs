//! Experimental analysis procedures: order-effect detection over embedding
//! clusters, interference correlation analysis with shuffled surrogates,
//! and two-axis creativity scoring with T-score normalization.

mod embedding;
mod evaluation;
mod interference;
mod order_effect;
mod pca;
mod stats;

pub use embedding::EmbeddingSet;
pub use evaluation::{cci_scores, EvaluationRow, EvaluationTable, ModelCreativity};
pub use interference::{
    correlation_against_reference, interference_stats, interference_surrogate, InterferenceReport,
};
pub use order_effect::{
    centroid_ratio, order_effect_test, silhouette, OrderEffectReport, ProjectedPoint,
};
pub use pca::{pca_project, PcaProjection};
pub use stats::{pearson, t_scores};
