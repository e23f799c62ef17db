//! Order-effect detection: PCA projection, cluster statistics, and a
//! label-permutation test.
//!
//! The test statistic is the centroid ratio (between-centroid distance over
//! pooled within-cluster RMS spread) — simple and powerful for mean shifts.
//! The silhouette is reported alongside as the visual-separation analogue.
//! PCA is label-blind, so the projection is computed once on the pooled
//! data and labels are permuted over the fixed projected coordinates.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::error::{AqsError, Result};
use crate::rng::indexed_substream;

use super::embedding::EmbeddingSet;
use super::pca::pca_project;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProjectedPoint {
    pub label: String,
    pub x: f64,
    pub y: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrderEffectReport {
    pub silhouette: f64,
    pub centroid_ratio: f64,
    pub p_value: f64,
    pub n_permutations: usize,
    pub seed: u64,
    pub projected: Vec<ProjectedPoint>,
}

fn centroid(points: &[[f64; 2]]) -> [f64; 2] {
    let n = points.len() as f64;
    let mut c = [0.0, 0.0];
    for p in points {
        c[0] += p[0];
        c[1] += p[1];
    }
    [c[0] / n, c[1] / n]
}

fn dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

/// Between-centroid distance divided by the pooled within-cluster RMS
/// spread of the two groups.
pub fn centroid_ratio(a: &[[f64; 2]], b: &[[f64; 2]]) -> f64 {
    let ca = centroid(a);
    let cb = centroid(b);
    let within: f64 = a.iter().map(|p| dist(*p, ca).powi(2)).sum::<f64>()
        + b.iter().map(|p| dist(*p, cb).powi(2)).sum::<f64>();
    let spread = (within / (a.len() + b.len()) as f64).sqrt();
    dist(ca, cb) / spread.max(1e-300)
}

/// Mean silhouette over both clusters; singletons and all-coincident
/// points score zero.
pub fn silhouette(a: &[[f64; 2]], b: &[[f64; 2]]) -> f64 {
    let score = |own: &[[f64; 2]], other: &[[f64; 2]], p: [f64; 2]| {
        if own.len() < 2 {
            return 0.0;
        }
        let a_dist = own
            .iter()
            .map(|q| dist(p, *q))
            .sum::<f64>()
            / (own.len() - 1) as f64;
        let b_dist = other.iter().map(|q| dist(p, *q)).sum::<f64>() / other.len() as f64;
        let denom = a_dist.max(b_dist);
        if denom == 0.0 {
            0.0
        } else {
            (b_dist - a_dist) / denom
        }
    };
    let total: f64 = a.iter().map(|p| score(a, b, *p)).sum::<f64>()
        + b.iter().map(|p| score(b, a, *p)).sum::<f64>();
    total / (a.len() + b.len()) as f64
}

/// Projects the pooled sets to two dimensions, scores the labeled
/// separation, and estimates significance by random label reassignment
/// with the (k+1)/(n+1) rule.
pub fn order_effect_test(
    set_a: &EmbeddingSet,
    set_b: &EmbeddingSet,
    n_permutations: usize,
    seed: u64,
) -> Result<OrderEffectReport> {
    if set_a.dim() != set_b.dim() {
        return Err(AqsError::DimMismatch {
            left: set_a.dim(),
            right: set_b.dim(),
        });
    }
    for set in [set_a, set_b] {
        if set.len() < 3 {
            return Err(AqsError::TooFewPoints {
                need: 3,
                got: set.len(),
            });
        }
    }
    if n_permutations == 0 {
        return Err(AqsError::invalid_field("n_permutations", "must be ≥ 1"));
    }

    let pooled: Vec<Vec<f64>> = set_a
        .vectors()
        .iter()
        .chain(set_b.vectors())
        .cloned()
        .collect();
    let projection = pca_project(&pooled, 2)?;
    let coords: Vec<[f64; 2]> = projection.coords.iter().map(|c| [c[0], c[1]]).collect();

    let n_a = set_a.len();
    let group = |indices: &[usize]| -> (Vec<[f64; 2]>, Vec<[f64; 2]>) {
        let mut ga = Vec::with_capacity(n_a);
        let mut gb = Vec::with_capacity(coords.len() - n_a);
        for (pos, &idx) in indices.iter().enumerate() {
            if pos < n_a {
                ga.push(coords[idx]);
            } else {
                gb.push(coords[idx]);
            }
        }
        (ga, gb)
    };

    let identity: Vec<usize> = (0..coords.len()).collect();
    let (ga, gb) = group(&identity);
    let observed = centroid_ratio(&ga, &gb);
    let sil = silhouette(&ga, &gb);

    let mut exceeding = 0usize;
    for iter in 0..n_permutations {
        let mut rng = indexed_substream(seed, "order-effect-permutation", iter as u64);
        let mut indices = identity.clone();
        indices.shuffle(&mut rng);
        let (pa, pb) = group(&indices);
        if centroid_ratio(&pa, &pb) >= observed {
            exceeding += 1;
        }
    }
    let p_value = (exceeding as f64 + 1.0) / (n_permutations as f64 + 1.0);

    let projected = coords
        .iter()
        .enumerate()
        .map(|(i, c)| ProjectedPoint {
            label: if i < n_a {
                set_a.label().to_string()
            } else {
                set_b.label().to_string()
            },
            x: c[0],
            y: c[1],
        })
        .collect();

    Ok(OrderEffectReport {
        silhouette: sil,
        centroid_ratio: observed,
        p_value,
        n_permutations,
        seed,
        projected,
    })
}
