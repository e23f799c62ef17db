//! Correlation and T-score primitives.

use crate::error::{AqsError, Result};

/// Pearson correlation: cosine similarity of the mean-centered vectors.
/// Clamped to [−1, 1] against roundoff.
pub fn pearson(u: &[f64], v: &[f64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(AqsError::DimMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    if u.len() < 2 {
        return Err(AqsError::TooFewPoints {
            need: 2,
            got: u.len(),
        });
    }
    let n = u.len() as f64;
    let mean_u = u.iter().sum::<f64>() / n;
    let mean_v = v.iter().sum::<f64>() / n;
    let mut ss_u = 0.0;
    let mut ss_v = 0.0;
    let mut cov = 0.0;
    for (&a, &b) in u.iter().zip(v) {
        let da = a - mean_u;
        let db = b - mean_v;
        ss_u += da * da;
        ss_v += db * db;
        cov += da * db;
    }
    if ss_u == 0.0 || ss_v == 0.0 {
        return Err(AqsError::ConstantVector);
    }
    Ok((cov / (ss_u * ss_v).sqrt()).clamp(-1.0, 1.0))
}

/// Tᵢ = 50 + 10·(vᵢ − mean)/std with mean and population standard deviation
/// taken over all supplied values, the evaluated entry included.
pub fn t_scores(values: &[f64]) -> Result<Vec<f64>> {
    if values.len() < 2 {
        return Err(AqsError::TooFewPoints {
            need: 2,
            got: values.len(),
        });
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    if var == 0.0 {
        return Err(AqsError::ConstantVector);
    }
    let std = var.sqrt();
    Ok(values.iter().map(|v| 50.0 + 10.0 * (v - mean) / std).collect())
}
