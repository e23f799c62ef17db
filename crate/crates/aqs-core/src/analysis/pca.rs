//! Principal component projection via SVD of the centered data matrix.
//!
//! The SVD route avoids ever forming the d×d covariance matrix, which
//! matters when points are high-dimensional embeddings (d in the
//! thousands) but few.

use nalgebra::DMatrix;

use crate::error::{AqsError, Result};

#[derive(Clone, Debug)]
pub struct PcaProjection {
    /// Per-point coordinates in the principal basis, components in
    /// descending explained-variance order.
    pub coords: Vec<Vec<f64>>,
    /// Fraction of total variance captured by each returned component.
    pub explained: Vec<f64>,
}

/// Projects mean-centered `points` onto their top principal components.
///
/// Component sign is fixed by requiring the largest-magnitude loading of
/// each principal direction to be positive, so serialized outputs are
/// reproducible across runs.
pub fn pca_project(points: &[Vec<f64>], components: usize) -> Result<PcaProjection> {
    if components == 0 {
        return Err(AqsError::invalid_field("components", "must be ≥ 1"));
    }
    let n = points.len();
    if n < components + 1 {
        return Err(AqsError::TooFewPoints {
            need: components + 1,
            got: n,
        });
    }
    let d = points[0].len();
    if d < components {
        return Err(AqsError::invalid_field(
            "components",
            format!("cannot extract {components} components from dimension {d}"),
        ));
    }
    for p in points {
        if p.len() != d {
            return Err(AqsError::DimMismatch {
                left: d,
                right: p.len(),
            });
        }
        if let Some(index) = p.iter().position(|x| !x.is_finite()) {
            return Err(AqsError::NonFinite { index });
        }
    }

    let mean: Vec<f64> = (0..d)
        .map(|j| points.iter().map(|p| p[j]).sum::<f64>() / n as f64)
        .collect();
    let centered = DMatrix::from_fn(n, d, |i, j| points[i][j] - mean[j]);

    let svd = centered.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let singular = &svd.singular_values;

    // Stable descending order by singular value; nalgebra's ordering is not
    // relied upon.
    let mut order: Vec<usize> = (0..singular.len()).collect();
    order.sort_by(|&a, &b| singular[b].partial_cmp(&singular[a]).unwrap());

    let total: f64 = singular.iter().map(|s| s * s).sum();
    let mut explained = Vec::with_capacity(components);
    let mut directions: Vec<Vec<f64>> = Vec::with_capacity(components);
    for &k in order.iter().take(components) {
        let mut dir: Vec<f64> = (0..d).map(|j| v_t[(k, j)]).collect();
        // Sign convention: largest-magnitude loading positive.
        let lead = dir
            .iter()
            .enumerate()
            .max_by(|(_, a), (_, b)| a.abs().partial_cmp(&b.abs()).unwrap())
            .map(|(j, _)| j)
            .unwrap_or(0);
        if dir[lead] < 0.0 {
            for x in dir.iter_mut() {
                *x = -*x;
            }
        }
        explained.push(if total > 0.0 {
            singular[k] * singular[k] / total
        } else {
            0.0
        });
        directions.push(dir);
    }

    let coords = (0..n)
        .map(|i| {
            directions
                .iter()
                .map(|dir| (0..d).map(|j| centered[(i, j)] * dir[j]).sum())
                .collect()
        })
        .collect();

    Ok(PcaProjection { coords, explained })
}
